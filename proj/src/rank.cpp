#include "gcsa/rank.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "gcsa/witness.hpp"

namespace gcsa {

double RankTolerance::resolve(int m, int n, double sigma_max) const {
    if (absolute) return *absolute;
    return std::max(m, n) * std::numeric_limits<double>::epsilon() * sigma_max;
}

RankResult numerical_rank(const MatrixXd& J, RankTolerance tol) {
    if (!J.allFinite()) throw NumericalError("matrix has non-finite entries");
    const int m = static_cast<int>(J.rows());
    const int n = static_cast<int>(J.cols());
    RankResult r;
    if (m == 0 || n == 0) {
        r.tol_used = tol.resolve(m, n, 0.0);
        r.kernel_basis = MatrixXd::Identity(n, n);
        r.cokernel_basis = MatrixXd::Identity(m, m);
        return r;
    }
    Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd& sv = svd.singularValues();
    r.tol_used = tol.resolve(m, n, sv.size() > 0 ? sv[0] : 0.0);
    for (int i = 0; i < sv.size(); ++i) {
        r.singular_values.push_back(sv[i]);
        if (sv[i] > r.tol_used) ++r.rank;
    }
    r.kernel_basis = svd.matrixV().rightCols(n - r.rank);
    r.cokernel_basis = svd.matrixU().rightCols(m - r.rank);
    return r;
}

RigidGenerators rigid_generators(const GcsModel& model, const Configuration& x,
                                 const Vector3d& origin) {
    RigidGenerators g;
    g.origin = origin;
    g.vectors = MatrixXd::Zero(x.values.size(), 6);
    ParamView view{&model, &x};
    for (int gi = 0; gi < 6; ++gi) {
        Vector3d v = Vector3d::Zero();
        Vector3d w = Vector3d::Zero();
        if (gi < 3)
            v = Vector3d::Unit(gi);
        else
            w = Vector3d::Unit(gi - 3);
        for (int ei = 0; ei < static_cast<int>(model.entities().size()); ++ei) {
            const Entity& e = model.entities()[ei];
            int off = view.offset_of(ei);
            auto set3 = [&](int o, const Vector3d& val) {
                g.vectors.block<3, 1>(o, gi) = val;
            };
            switch (e.kind) {
            case EntityKind::Point:
                set3(off, v + w.cross(view.anchor(ei) - origin));
                break;
            case EntityKind::Line:
            case EntityKind::Cylinder:
                set3(off, v + w.cross(view.anchor(ei) - origin));
                set3(off + 3, w.cross(view.direction(ei)));
                break; // cylinder radius column stays zero
            case EntityKind::PlanePointNormal:
                set3(off, v + w.cross(view.anchor(ei) - origin));
                set3(off + 3, w.cross(view.direction(ei)));
                break;
            case EntityKind::PlaneHomogeneous: {
                // ndot = w x n; ddot = -n.v - (w x n).origin, from d = -n.x0
                // and the triple-product cancellation along the orbit.
                Vector3d n = view.direction(ei);
                set3(off, w.cross(n));
                g.vectors(off + 3, gi) = -n.dot(v) - (w.cross(n)).dot(origin);
                break;
            }
            }
        }
    }
    return g;
}

int dor(const GcsModel& model, const Configuration& x, const Vector3d& origin, RankTolerance tol) {
    RigidGenerators g = rigid_generators(model, x, origin);
    return numerical_rank(g.vectors, tol).rank;
}

const char* to_string(ConstraintState s) {
    switch (s) {
    case ConstraintState::Well: return "well-constrained";
    case ConstraintState::Over: return "over-constrained";
    case ConstraintState::Under: return "under-constrained";
    case ConstraintState::OverAndUnder: return "over-and-under-constrained";
    case ConstraintState::Indeterminate: return "indeterminate";
    }
    return "?";
}

ConstraintState classify_dor(int rank, int row_size, int column_size, int dor) {
    const bool over = rank < row_size;
    const bool under = column_size - rank > dor;
    if (over && under) return ConstraintState::OverAndUnder;
    if (over) return ConstraintState::Over;
    if (under) return ConstraintState::Under;
    if (column_size - rank == dor) return ConstraintState::Well;
    // Not over, not under, kernel strictly below the rigid threshold: the
    // criteria label nothing (grounded system); cannot arise at a witness of
    // rigid-invariant constraints.
    return ConstraintState::Indeterminate;
}

ConstraintState classify_plain(int rank, int row_size, int column_size) {
    return classify_dor(rank, row_size, column_size, 6);
}

ConstraintState classify_plain(const JacobianMatrix& J, RankTolerance tol) {
    RankResult r = numerical_rank(J.entries, tol);
    return classify_plain(r.rank, J.row_size(), J.reported_column_size());
}

ConstraintState classify_dor(const JacobianMatrix& J, int dor, RankTolerance tol) {
    RankResult r = numerical_rank(J.entries, tol);
    return classify_dor(r.rank, J.row_size(), J.reported_column_size(), dor);
}

AnalysisReport analyze(const GcsModel& model, const Configuration& x, AnalyzeOptions opts) {
    if (opts.check_witness) {
        WitnessReport wr = is_witness(model, x, WitnessPolicy{});
        if (!wr.ok) {
            std::ostringstream os;
            os << "configuration is not a witness; violated rows:";
            for (const auto& v : wr.violations) os << " " << v.label << "=" << v.value;
            throw NotAWitnessError(os.str());
        }
    }
    JacobianMatrix J = jacobian(model, x);
    RankResult r = numerical_rank(J.entries, opts.tol);
    AnalysisReport rep;
    rep.column_size = J.reported_column_size();
    rep.row_size = J.row_size();
    rep.rank = r.rank;
    rep.kernel_dim = rep.column_size - rep.rank;
    rep.dor = dor(model, x, opts.rotation_origin, opts.tol);
    rep.plain_state = classify_plain(rep.rank, rep.row_size, rep.column_size);
    rep.dor_state = classify_dor(rep.rank, rep.row_size, rep.column_size, rep.dor);
    rep.matched = rep.kernel_dim == rep.dor;
    rep.tol_used = r.tol_used;
    return rep;
}

std::string report_table(const std::vector<std::pair<std::string, AnalysisReport>>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(28) << "Model" << std::right << std::setw(14) << "ColumnSize(J)"
       << std::setw(9) << "Rank(J)" << std::setw(5) << "DOR" << std::setw(10) << "Matched?"
       << "\n";
    for (const auto& [name, r] : rows) {
        os << std::left << std::setw(28) << name << std::right << std::setw(14) << r.column_size
           << std::setw(9) << r.rank << std::setw(5) << r.dor << std::setw(10)
           << (r.matched ? "ok" : "x") << "\n";
    }
    return os.str();
}

} // namespace gcsa
