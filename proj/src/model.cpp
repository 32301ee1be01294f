#include "gcsa/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gcsa {

namespace {

constexpr double kMinDirectionNorm = 1e-9;

Vector3d read3(const std::vector<double>& p, int off) {
    return Vector3d(p[off], p[off + 1], p[off + 2]);
}

// Least-aligned coordinate axis, lowest index on ties.
Vector3d least_aligned_axis(const Vector3d& d) {
    int best = 0;
    double best_abs = std::abs(d[0]);
    for (int i = 1; i < 3; ++i) {
        if (std::abs(d[i]) < best_abs) {
            best = i;
            best_abs = std::abs(d[i]);
        }
    }
    return Vector3d::Unit(best);
}

} // namespace

const char* to_string(EntityKind k) {
    switch (k) {
    case EntityKind::Point: return "point";
    case EntityKind::Line: return "line";
    case EntityKind::PlaneHomogeneous: return "plane";
    case EntityKind::PlanePointNormal: return "plane";
    case EntityKind::Cylinder: return "cylinder";
    }
    return "?";
}

const char* to_string(ConstraintKind k) {
    switch (k) {
    case ConstraintKind::PointPointDistance: return "point-point-distance";
    case ConstraintKind::PointPlaneDistance: return "point-plane-distance";
    case ConstraintKind::PointLineDistance: return "point-line-distance";
    case ConstraintKind::PlanePlaneDistance: return "plane-plane-distance";
    case ConstraintKind::LineLineDistance: return "line-line-distance";
    case ConstraintKind::VectorAngle: return "vector-angle";
    case ConstraintKind::VectorParallel: return "vector-parallel";
    case ConstraintKind::PointOnPlane: return "point-on-plane";
    case ConstraintKind::PointOnLine: return "point-on-line";
    case ConstraintKind::Coaxial: return "coaxial";
    case ConstraintKind::UnitNorm: return "unit-norm";
    }
    return "?";
}

const char* to_string(PlaneScheme s) {
    return s == PlaneScheme::Homogeneous ? "homogeneous" : "point-normal";
}

int param_count(EntityKind k) {
    switch (k) {
    case EntityKind::Point: return 3;
    case EntityKind::Line: return 6;
    case EntityKind::PlaneHomogeneous: return 4;
    case EntityKind::PlanePointNormal: return 6;
    case EntityKind::Cylinder: return 7;
    }
    return 0;
}

bool has_direction(EntityKind k) { return k != EntityKind::Point; }

bool has_anchor(EntityKind k) { return k != EntityKind::PlaneHomogeneous; }

const LayoutSpan& Configuration::span(const std::string& id) const {
    for (const auto& s : layout) {
        if (s.id == id) return s;
    }
    throw LookupError("no layout span for id '" + id + "'");
}

int Configuration::reported_length() const {
    int n = 0;
    for (const auto& s : layout) {
        if (!s.auxiliary) n += s.length;
    }
    return n;
}

namespace {

// Offset of the direction/normal block within an entity's parameters.
int direction_offset(EntityKind k) {
    switch (k) {
    case EntityKind::Line:
    case EntityKind::Cylinder:
    case EntityKind::PlanePointNormal: return 3;
    case EntityKind::PlaneHomogeneous: return 0;
    case EntityKind::Point: break;
    }
    throw UnsupportedConstraintError("entity kind has no direction");
}

Vector3d entity_direction(const Entity& e) {
    return read3(e.params, direction_offset(e.kind));
}

void check_ref_arity(const Constraint& c, size_t n) {
    if (c.refs.size() != n)
        throw ValidationError("constraint '" + c.id + "' (" + to_string(c.kind) + ") expects " +
                              std::to_string(n) + " refs, got " + std::to_string(c.refs.size()));
}

void validate_constraint_refs(const Constraint& c, const GcsModel& m) {
    for (const auto& r : c.refs) {
        if (!m.has_entity(r))
            throw ValidationError("constraint '" + c.id + "' references unknown entity '" + r + "'");
    }
    auto kind_of = [&](int i) { return m.entity(c.refs[i]).kind; };
    auto require_anchor = [&](int i) {
        if (!has_anchor(kind_of(i)))
            throw ValidationError("constraint '" + c.id + "' needs an anchored entity at ref " +
                                  std::to_string(i) + " ('" + c.refs[i] + "' has none)");
    };
    auto require_direction = [&](int i) {
        if (!has_direction(kind_of(i)))
            throw ValidationError("constraint '" + c.id + "' needs a directed entity at ref " +
                                  std::to_string(i) + " ('" + c.refs[i] + "' has none)");
    };
    auto require_plane = [&](int i) {
        if (kind_of(i) != EntityKind::PlaneHomogeneous && kind_of(i) != EntityKind::PlanePointNormal)
            throw ValidationError("constraint '" + c.id + "' needs a plane at ref " + std::to_string(i));
    };
    auto require_axis = [&](int i) {
        if (kind_of(i) != EntityKind::Line && kind_of(i) != EntityKind::Cylinder)
            throw ValidationError("constraint '" + c.id + "' needs a line or cylinder at ref " +
                                  std::to_string(i));
    };

    switch (c.kind) {
    case ConstraintKind::PointPointDistance:
        // Acts on representative points; every entity kind has one (the
        // anchor, or the origin foot for homogeneous planes).
        check_ref_arity(c, 2);
        break;
    case ConstraintKind::PointPlaneDistance:
    case ConstraintKind::PointOnPlane:
        check_ref_arity(c, 2);
        require_anchor(0);
        require_plane(1);
        break;
    case ConstraintKind::PointLineDistance:
    case ConstraintKind::PointOnLine:
        check_ref_arity(c, 2);
        require_anchor(0);
        require_axis(1);
        break;
    case ConstraintKind::PlanePlaneDistance:
        check_ref_arity(c, 2);
        require_plane(0);
        require_plane(1);
        break;
    case ConstraintKind::LineLineDistance:
    case ConstraintKind::Coaxial:
        check_ref_arity(c, 2);
        require_axis(0);
        require_axis(1);
        break;
    case ConstraintKind::VectorAngle:
    case ConstraintKind::VectorParallel:
        check_ref_arity(c, 2);
        require_direction(0);
        require_direction(1);
        break;
    case ConstraintKind::UnitNorm:
        check_ref_arity(c, 1);
        require_direction(0);
        break;
    }
}

} // namespace

GcsModel GcsModel::make(PlaneScheme scheme, std::vector<Entity> entities,
                        std::vector<Constraint> constraints, CollinearityForm collinearity) {
    GcsModel m;
    m.scheme_ = scheme;
    m.collinearity_ = collinearity;
    m.entities_ = std::move(entities);
    m.constraints_ = std::move(constraints);

    for (int i = 0; i < static_cast<int>(m.entities_.size()); ++i) {
        const Entity& e = m.entities_[i];
        if (e.id.empty()) throw ValidationError("entity with empty id");
        if (!m.entity_index_.emplace(e.id, i).second)
            throw ValidationError("duplicate entity id '" + e.id + "'");
        if (static_cast<int>(e.params.size()) != param_count(e.kind))
            throw ValidationError("entity '" + e.id + "': expected " +
                                  std::to_string(param_count(e.kind)) + " params, got " +
                                  std::to_string(e.params.size()));
        if (e.kind == EntityKind::PlaneHomogeneous && scheme != PlaneScheme::Homogeneous)
            throw ValidationError("entity '" + e.id + "': homogeneous plane in point-normal model");
        if (e.kind == EntityKind::PlanePointNormal && scheme != PlaneScheme::PointNormal)
            throw ValidationError("entity '" + e.id + "': point-normal plane in homogeneous model");
        if (has_direction(e.kind) && entity_direction(e).norm() <= kMinDirectionNorm)
            throw ValidationError("entity '" + e.id + "': direction/normal is numerically zero");
    }

    std::set<std::string> cids;
    for (const auto& c : m.constraints_) {
        if (c.id.empty()) throw ValidationError("constraint with empty id");
        if (!cids.insert(c.id).second) throw ValidationError("duplicate constraint id '" + c.id + "'");
        if (c.kind == ConstraintKind::UnitNorm && !c.auto_generated)
            throw ValidationError("constraint '" + c.id +
                                  "': implicit constraint supplied explicitly (unit-norm rows are "
                                  "auto-generated)");
        if (c.weight == 0.0) throw ValidationError("constraint '" + c.id + "': zero weight");
        validate_constraint_refs(c, m);
    }

    // One auto unit-norm row per directed entity, appended after user rows.
    for (const auto& e : m.entities_) {
        if (!has_direction(e.kind)) continue;
        Constraint un;
        un.id = "un:" + e.id;
        un.kind = ConstraintKind::UnitNorm;
        un.refs = {e.id};
        un.auto_generated = true;
        if (cids.count(un.id)) throw ValidationError("constraint id '" + un.id + "' is reserved");
        m.constraints_.push_back(std::move(un));
    }

    // Freeze anchor-row frames from the as-built direction of the axis ref.
    for (auto& c : m.constraints_) {
        if (c.kind != ConstraintKind::PointOnLine && c.kind != ConstraintKind::Coaxial) continue;
        int axis_ref = c.kind == ConstraintKind::Coaxial ? 0 : 1;
        const Entity& axis = m.entities_[m.entity_index_.at(c.refs[axis_ref])];
        Vector3d d = entity_direction(axis).normalized();
        Vector3d c1 = d.cross(least_aligned_axis(d)).normalized();
        Vector3d c2 = d.cross(c1).normalized();
        c.frame = {c1, c2};
    }
    return m;
}

const Entity& GcsModel::entity(const std::string& id) const {
    return entities_[entity_index(id)];
}

int GcsModel::entity_index(const std::string& id) const {
    auto it = entity_index_.find(id);
    if (it == entity_index_.end()) throw LookupError("unknown entity '" + id + "'");
    return it->second;
}

bool GcsModel::has_entity(const std::string& id) const { return entity_index_.count(id) > 0; }

Configuration pack_parameters(const GcsModel& model) {
    Configuration x;
    int n = 0;
    for (const auto& e : model.entities()) n += param_count(e.kind);
    int n_aux = 0;
    if (model.collinearity() == CollinearityForm::Auxiliary) {
        for (const auto& c : model.constraints())
            if (c.kind == ConstraintKind::VectorParallel) ++n_aux;
    }
    x.values.resize(n + n_aux);
    int off = 0;
    for (const auto& e : model.entities()) {
        LayoutSpan s{e.id, off, param_count(e.kind), false};
        for (int i = 0; i < s.length; ++i) x.values[off + i] = e.params[i];
        x.layout.push_back(s);
        off += s.length;
    }
    if (n_aux > 0) {
        ParamView view{&model, &x};
        for (const auto& c : model.constraints()) {
            if (c.kind != ConstraintKind::VectorParallel) continue;
            Vector3d v1 = view.direction(model.entity_index(c.refs[0]));
            Vector3d v2 = view.direction(model.entity_index(c.refs[1]));
            x.layout.push_back(LayoutSpan{c.id + "#t", off, 1, true});
            x.values[off] = -v1.dot(v2) / v2.squaredNorm();
            ++off;
        }
    }
    return x;
}

GcsModel unpack_parameters(const GcsModel& model, const Configuration& x) {
    Configuration ref = pack_parameters(model);
    if (x.values.size() != ref.values.size() || x.layout.size() != ref.layout.size())
        throw LayoutError("configuration does not match model layout (length " +
                          std::to_string(x.values.size()) + " vs " +
                          std::to_string(ref.values.size()) + ")");
    for (size_t i = 0; i < x.layout.size(); ++i) {
        if (x.layout[i].id != ref.layout[i].id || x.layout[i].offset != ref.layout[i].offset ||
            x.layout[i].length != ref.layout[i].length)
            throw LayoutError("configuration layout mismatch at span '" + ref.layout[i].id + "'");
    }
    std::vector<Entity> entities = model.entities();
    for (auto& e : entities) {
        const LayoutSpan& s = x.span(e.id);
        for (int i = 0; i < s.length; ++i) e.params[i] = x.values[s.offset + i];
    }
    std::vector<Constraint> user;
    for (const auto& c : model.constraints())
        if (!c.auto_generated) user.push_back(c);
    return GcsModel::make(model.scheme(), std::move(entities), std::move(user),
                          model.collinearity());
}

GcsModel convert_scheme(const GcsModel& model, PlaneScheme target) {
    if (model.scheme() == target) return model;
    std::vector<Entity> entities = model.entities();
    int ordinal = 0;
    for (auto& e : entities) {
        ++ordinal;
        if (target == PlaneScheme::PointNormal && e.kind == EntityKind::PlaneHomogeneous) {
            Vector3d n = read3(e.params, 0);
            double d = e.params[3];
            if (n.norm() <= kMinDirectionNorm)
                throw DegenerateEntityError("plane '" + e.id + "' has zero normal");
            n.normalize();
            // Anchor = foot of the origin perpendicular, staggered in-plane by
            // the entity ordinal so converted anchors are generic.
            Vector3d u = least_aligned_axis(n).cross(n).normalized();
            Vector3d p = -d * n + 0.5 * ordinal * u;
            e.kind = EntityKind::PlanePointNormal;
            e.params = {p.x(), p.y(), p.z(), n.x(), n.y(), n.z()};
        } else if (target == PlaneScheme::Homogeneous && e.kind == EntityKind::PlanePointNormal) {
            Vector3d p = read3(e.params, 0);
            Vector3d n = read3(e.params, 3);
            if (n.norm() <= kMinDirectionNorm)
                throw DegenerateEntityError("plane '" + e.id + "' has zero normal");
            n.normalize();
            e.kind = EntityKind::PlaneHomogeneous;
            e.params = {n.x(), n.y(), n.z(), -n.dot(p)};
        }
    }
    std::vector<Constraint> user;
    for (const auto& c : model.constraints())
        if (!c.auto_generated) user.push_back(c);
    return GcsModel::make(target, std::move(entities), std::move(user), model.collinearity());
}

Vector3d ParamView::anchor(int entity_idx) const {
    const Entity& e = model->entities()[entity_idx];
    if (!has_anchor(e.kind))
        throw UnsupportedConstraintError("entity '" + e.id + "' has no anchor point");
    int off = config->span(e.id).offset;
    return Vector3d(config->values[off], config->values[off + 1], config->values[off + 2]);
}

Vector3d ParamView::direction(int entity_idx) const {
    const Entity& e = model->entities()[entity_idx];
    int off = config->span(e.id).offset + direction_offset(e.kind);
    return Vector3d(config->values[off], config->values[off + 1], config->values[off + 2]);
}

double ParamView::plane_offset(int entity_idx) const {
    const Entity& e = model->entities()[entity_idx];
    if (e.kind != EntityKind::PlaneHomogeneous)
        throw UnsupportedConstraintError("entity '" + e.id + "' has no homogeneous offset");
    return config->values[config->span(e.id).offset + 3];
}

int ParamView::offset_of(int entity_idx) const {
    return config->span(model->entities()[entity_idx].id).offset;
}

} // namespace gcsa
