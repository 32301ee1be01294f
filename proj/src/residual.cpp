#include "gcsa/residual.hpp"

#include <cmath>

namespace gcsa {

namespace {

bool is_homog_plane(const GcsModel& m, const Constraint& c, int ref) {
    return m.entity(c.refs[ref]).kind == EntityKind::PlaneHomogeneous;
}

// Representative point of an entity: the anchor, or the foot of the origin
// perpendicular for homogeneous planes (-d * n, unit normal assumed).
Vector3d representative_point(const ParamView& v, const GcsModel& m, const std::string& id) {
    int idx = m.entity_index(id);
    if (m.entities()[idx].kind == EntityKind::PlaneHomogeneous)
        return -v.plane_offset(idx) * v.direction(idx);
    return v.anchor(idx);
}

struct RowWriter {
    VectorXd* res = nullptr;    // null when assembling the Jacobian
    MatrixXd* jac = nullptr;    // null when evaluating residuals
    int row = 0;
    double weight = 1.0;

    void value(double r) {
        if (res) (*res)[row] = weight * r;
    }
    void grad3(int col_offset, const Vector3d& g) {
        if (jac) jac->block<1, 3>(row, col_offset) += weight * g.transpose();
    }
    void grad1(int col, double g) {
        if (jac) (*jac)(row, col) += weight * g;
    }
};

class Evaluator {
  public:
    Evaluator(const GcsModel& model, const Configuration& x) : model_(model), x_(x) {
        view_ = ParamView{&model_, &x_};
    }

    int row_count() const {
        int n = 0;
        for (const auto& c : model_.constraints())
            n += scalar_equation_count(c, model_.collinearity());
        return n;
    }

    std::vector<RowRef> row_refs() const {
        std::vector<RowRef> refs;
        for (int ci = 0; ci < static_cast<int>(model_.constraints().size()); ++ci) {
            const Constraint& c = model_.constraints()[ci];
            int n = scalar_equation_count(c, model_.collinearity());
            for (int k = 0; k < n; ++k) {
                RowRef r{ci, k, c.id};
                if (n > 1) r.label += "[" + std::to_string(k) + "]";
                refs.push_back(std::move(r));
            }
        }
        return refs;
    }

    void run(VectorXd* res, MatrixXd* jac) {
        int row = 0;
        for (int ci = 0; ci < static_cast<int>(model_.constraints().size()); ++ci) {
            const Constraint& c = model_.constraints()[ci];
            RowWriter w{res, jac, row, c.weight};
            emit(c, w);
            row += scalar_equation_count(c, model_.collinearity());
        }
    }

  private:
    int eidx(const Constraint& c, int ref) const { return model_.entity_index(c.refs[ref]); }
    int off(const Constraint& c, int ref) const { return view_.offset_of(eidx(c, ref)); }
    int dir_off(const Constraint& c, int ref) const {
        const Entity& e = model_.entities()[eidx(c, ref)];
        int base = view_.offset_of(eidx(c, ref));
        return e.kind == EntityKind::PlaneHomogeneous ? base : base + 3;
    }

    // Gradient of the representative point term 2*s*w for PointPointDistance,
    // where s = +1 for ref a and -1 for ref b.
    void rep_point_grads(const Constraint& c, int ref, double s, const Vector3d& w, RowWriter& rw) {
        int idx = eidx(c, ref);
        if (model_.entities()[idx].kind == EntityKind::PlaneHomogeneous) {
            double d = view_.plane_offset(idx);
            Vector3d n = view_.direction(idx);
            rw.grad3(dir_off(c, ref), -2.0 * s * d * w);
            rw.grad1(off(c, ref) + 3, -2.0 * s * w.dot(n));
        } else {
            rw.grad3(off(c, ref), 2.0 * s * w);
        }
    }

    void emit(const Constraint& c, RowWriter& rw) {
        switch (c.kind) {
        case ConstraintKind::PointPointDistance: {
            Vector3d w = representative_point(view_, model_, c.refs[0]) -
                         representative_point(view_, model_, c.refs[1]);
            rw.value(w.squaredNorm() - c.value * c.value);
            rep_point_grads(c, 0, +1.0, w, rw);
            rep_point_grads(c, 1, -1.0, w, rw);
            return;
        }
        case ConstraintKind::PointPlaneDistance:
        case ConstraintKind::PointOnPlane: {
            double v = c.kind == ConstraintKind::PointOnPlane ? 0.0 : c.value;
            Vector3d x = view_.anchor(eidx(c, 0));
            int pi = eidx(c, 1);
            Vector3d n = view_.direction(pi);
            if (model_.entities()[pi].kind == EntityKind::PlaneHomogeneous) {
                // Signed distance n.x + d, unit normal assumed.
                rw.value(n.dot(x) + view_.plane_offset(pi) - v);
                rw.grad3(off(c, 0), n);
                rw.grad3(dir_off(c, 1), x);
                rw.grad1(view_.offset_of(pi) + 3, 1.0);
            } else {
                Vector3d p = view_.anchor(pi);
                rw.value(n.dot(x - p) - v);
                rw.grad3(off(c, 0), n);
                rw.grad3(view_.offset_of(pi), -n);
                rw.grad3(dir_off(c, 1), x - p);
            }
            return;
        }
        case ConstraintKind::PointLineDistance: {
            // Squared perpendicular distance to the axis, unit direction assumed.
            Vector3d u = view_.anchor(eidx(c, 0)) - view_.anchor(eidx(c, 1));
            Vector3d d = view_.direction(eidx(c, 1));
            double ud = u.dot(d);
            rw.value(u.squaredNorm() - ud * ud - c.value * c.value);
            Vector3d gu = 2.0 * u - 2.0 * ud * d;
            rw.grad3(off(c, 0), gu);
            rw.grad3(off(c, 1), -gu);
            rw.grad3(dir_off(c, 1), -2.0 * ud * u);
            return;
        }
        case ConstraintKind::PlanePlaneDistance: {
            int a = eidx(c, 0), b = eidx(c, 1);
            if (model_.entities()[a].kind == EntityKind::PlaneHomogeneous) {
                // Offset sum; signed distance between anti-facing parallel
                // planes with unit normals. The accompanying parallelism rows
                // make the witness stay in that regime.
                rw.value(view_.plane_offset(a) + view_.plane_offset(b) - c.value);
                rw.grad1(view_.offset_of(a) + 3, 1.0);
                rw.grad1(view_.offset_of(b) + 3, 1.0);
            } else {
                // Anchor of the first plane projected on the second's normal.
                Vector3d w = view_.anchor(a) - view_.anchor(b);
                Vector3d n = view_.direction(b);
                rw.value(n.dot(w) - c.value);
                rw.grad3(view_.offset_of(a), n);
                rw.grad3(view_.offset_of(b), -n);
                rw.grad3(dir_off(c, 1), w);
            }
            return;
        }
        case ConstraintKind::LineLineDistance: {
            // Squared distance between parallel axes, unit direction assumed.
            Vector3d w = view_.anchor(eidx(c, 1)) - view_.anchor(eidx(c, 0));
            Vector3d d = view_.direction(eidx(c, 0));
            double wd = w.dot(d);
            rw.value(w.squaredNorm() - wd * wd - c.value * c.value);
            Vector3d gw = 2.0 * w - 2.0 * wd * d;
            rw.grad3(off(c, 1), gw);
            rw.grad3(off(c, 0), -gw);
            rw.grad3(dir_off(c, 0), -2.0 * wd * w);
            return;
        }
        case ConstraintKind::VectorAngle: {
            Vector3d v1 = view_.direction(eidx(c, 0));
            Vector3d v2 = view_.direction(eidx(c, 1));
            rw.value(v1.dot(v2) - c.value);
            rw.grad3(dir_off(c, 0), v2);
            rw.grad3(dir_off(c, 1), v1);
            return;
        }
        case ConstraintKind::VectorParallel: {
            Vector3d v1 = view_.direction(eidx(c, 0));
            Vector3d v2 = view_.direction(eidx(c, 1));
            if (model_.collinearity() == CollinearityForm::Cross) {
                Vector3d f = v1.cross(v2);
                for (int k = 0; k < 3; ++k) {
                    RowWriter r{rw.res, rw.jac, rw.row + k, rw.weight};
                    r.value(f[k]);
                    r.grad3(dir_off(c, 0), v2.cross(Vector3d::Unit(k)));
                    r.grad3(dir_off(c, 1), Vector3d::Unit(k).cross(v1));
                }
            } else {
                const LayoutSpan& ts = x_.span(c.id + "#t");
                double t = x_.values[ts.offset];
                for (int k = 0; k < 3; ++k) {
                    RowWriter r{rw.res, rw.jac, rw.row + k, rw.weight};
                    r.value(v1[k] + t * v2[k]);
                    r.grad1(dir_off(c, 0) + k, 1.0);
                    r.grad1(dir_off(c, 1) + k, t);
                    r.grad1(ts.offset, v2[k]);
                }
            }
            return;
        }
        case ConstraintKind::PointOnLine:
        case ConstraintKind::Coaxial: {
            int base = 0;
            if (c.kind == ConstraintKind::Coaxial) {
                // Direction collinearity via cross product.
                Vector3d v1 = view_.direction(eidx(c, 0));
                Vector3d v2 = view_.direction(eidx(c, 1));
                Vector3d f = v1.cross(v2);
                for (int k = 0; k < 3; ++k) {
                    RowWriter r{rw.res, rw.jac, rw.row + k, rw.weight};
                    r.value(f[k]);
                    r.grad3(dir_off(c, 0), v2.cross(Vector3d::Unit(k)));
                    r.grad3(dir_off(c, 1), Vector3d::Unit(k).cross(v1));
                }
                base = 3;
            }
            // Anchor-on-axis: ((q - p) x d) . c_k against the frozen frame.
            int axis_ref = c.kind == ConstraintKind::Coaxial ? 0 : 1;
            int qi = eidx(c, 1 - axis_ref);
            int ai = eidx(c, axis_ref);
            Vector3d u = view_.anchor(qi) - view_.anchor(ai);
            Vector3d d = view_.direction(ai);
            for (int k = 0; k < 2; ++k) {
                const Vector3d& fr = c.frame[k];
                RowWriter r{rw.res, rw.jac, rw.row + base + k, rw.weight};
                r.value(u.cross(d).dot(fr));
                Vector3d gq = d.cross(fr);
                r.grad3(view_.offset_of(qi), gq);
                r.grad3(view_.offset_of(ai), -gq);
                r.grad3(dir_off(c, axis_ref), fr.cross(u));
            }
            return;
        }
        case ConstraintKind::UnitNorm: {
            Vector3d v = view_.direction(eidx(c, 0));
            rw.value(v.squaredNorm() - 1.0);
            rw.grad3(dir_off(c, 0), 2.0 * v);
            return;
        }
        }
        throw UnsupportedConstraintError("constraint '" + c.id + "': unhandled kind");
    }

    const GcsModel& model_;
    const Configuration& x_;
    ParamView view_;
};

void check_layout(const GcsModel& model, const Configuration& x) {
    Configuration ref = pack_parameters(model);
    if (x.values.size() != ref.values.size())
        throw LayoutError("configuration length " + std::to_string(x.values.size()) +
                          " does not match model (" + std::to_string(ref.values.size()) + ")");
}

} // namespace

int JacobianMatrix::reported_column_size() const {
    int n = 0;
    for (const auto& s : columns)
        if (!s.auxiliary) n += s.length;
    return n;
}

int scalar_equation_count(const Constraint& c) {
    return scalar_equation_count(c, CollinearityForm::Cross);
}

int scalar_equation_count(const Constraint& c, CollinearityForm) {
    switch (c.kind) {
    case ConstraintKind::PointPointDistance:
    case ConstraintKind::PointPlaneDistance:
    case ConstraintKind::PointLineDistance:
    case ConstraintKind::PlanePlaneDistance:
    case ConstraintKind::LineLineDistance:
    case ConstraintKind::VectorAngle:
    case ConstraintKind::PointOnPlane:
    case ConstraintKind::UnitNorm: return 1;
    case ConstraintKind::PointOnLine: return 2;
    case ConstraintKind::VectorParallel: return 3;
    case ConstraintKind::Coaxial: return 5;
    }
    throw UnsupportedConstraintError("constraint '" + c.id + "': unknown kind");
}

ResidualVector residual(const GcsModel& model, const Configuration& x) {
    check_layout(model, x);
    Evaluator ev(model, x);
    ResidualVector r;
    r.rows = ev.row_refs();
    r.values = VectorXd::Zero(ev.row_count());
    ev.run(&r.values, nullptr);
    return r;
}

JacobianMatrix jacobian(const GcsModel& model, const Configuration& x) {
    check_layout(model, x);
    Evaluator ev(model, x);
    JacobianMatrix j;
    j.rows = ev.row_refs();
    j.columns = x.layout;
    j.entries = MatrixXd::Zero(ev.row_count(), x.values.size());
    ev.run(nullptr, &j.entries);
    if (!j.entries.allFinite()) throw NumericalError("non-finite Jacobian entries");
    return j;
}

JacobianMatrix fd_jacobian(const GcsModel& model, const Configuration& x, double h) {
    if (!(h > 0.0)) throw InvalidStepError("finite-difference step must be positive");
    check_layout(model, x);
    Evaluator ev(model, x);
    JacobianMatrix j;
    j.rows = ev.row_refs();
    j.columns = x.layout;
    j.entries = MatrixXd::Zero(ev.row_count(), x.values.size());
    Configuration xp = x;
    for (int col = 0; col < x.values.size(); ++col) {
        xp.values = x.values;
        xp.values[col] = x.values[col] + h;
        VectorXd plus = residual(model, xp).values;
        xp.values[col] = x.values[col] - h;
        VectorXd minus = residual(model, xp).values;
        j.entries.col(col) = (plus - minus) / (2.0 * h);
    }
    return j;
}

int residual_degree_bound(const GcsModel& model, const Constraint& c) {
    switch (c.kind) {
    case ConstraintKind::PointLineDistance:
    case ConstraintKind::LineLineDistance: return 4;
    case ConstraintKind::PointPointDistance:
        for (const auto& r : c.refs)
            if (model.entity(r).kind == EntityKind::PlaneHomogeneous) return 4;
        return 2;
    default: return 2;
    }
}

} // namespace gcsa
