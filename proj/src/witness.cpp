#include "gcsa/witness.hpp"

#include <cmath>
#include <random>

namespace gcsa {

namespace {

std::vector<int> degenerate_rows(const GcsModel& model, const std::vector<RowRef>& rows,
                                 const WitnessPolicy& policy) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const Constraint& c = model.constraints()[rows[i].constraint];
        if (policy.degenerate_kinds.count(c.kind)) idx.push_back(i);
    }
    return idx;
}

} // namespace

WitnessReport is_witness(const GcsModel& model, const Configuration& x,
                         const WitnessPolicy& policy) {
    ResidualVector r = residual(model, x);
    WitnessReport rep;
    for (int i : degenerate_rows(model, r.rows, policy)) {
        if (std::abs(r.values[i]) >= policy.tol)
            rep.violations.push_back({i, r.rows[i].label, r.values[i]});
    }
    rep.ok = rep.violations.empty();
    return rep;
}

Configuration perturb_to_witness(const GcsModel& model, const Configuration& x0,
                                 const WitnessPolicy& policy, unsigned seed) {
    WitnessReport pre = is_witness(model, x0, policy);
    if (!pre.ok)
        throw NotAWitnessError("perturb_to_witness requires a witness start ('" +
                               pre.violations.front().label + "' violated)");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.1, 0.1);
    Configuration x = x0;
    for (int i = 0; i < x.values.size(); ++i) x.values[i] += dist(rng);

    ResidualVector r0 = residual(model, x);
    std::vector<int> deg = degenerate_rows(model, r0.rows, policy);
    if (deg.empty()) return x;

    auto deg_residual = [&](const Configuration& xc) {
        ResidualVector r = residual(model, xc);
        VectorXd v(deg.size());
        for (size_t i = 0; i < deg.size(); ++i) v[i] = r.values[deg[i]];
        return v;
    };

    VectorXd rd = deg_residual(x);
    for (int iter = 0; iter < policy.max_projection_iters; ++iter) {
        if (rd.cwiseAbs().maxCoeff() < policy.tol) return x;
        JacobianMatrix J = jacobian(model, x);
        MatrixXd Jd(deg.size(), J.entries.cols());
        for (size_t i = 0; i < deg.size(); ++i) Jd.row(i) = J.entries.row(deg[i]);
        VectorXd step = Jd.completeOrthogonalDecomposition().solve(-rd);

        double scale = 1.0;
        bool improved = false;
        for (int half = 0; half < 30; ++half) {
            Configuration trial = x;
            trial.values += scale * step;
            VectorXd rt = deg_residual(trial);
            if (rt.norm() < rd.norm()) {
                x = trial;
                rd = rt;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved)
            throw NonConvergenceError("witness projection stalled at residual " +
                                      std::to_string(rd.cwiseAbs().maxCoeff()));
    }
    if (rd.cwiseAbs().maxCoeff() < policy.tol) return x;
    throw NonConvergenceError("witness projection did not converge within " +
                              std::to_string(policy.max_projection_iters) + " iterations");
}

} // namespace gcsa
