#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcsa/core.hpp"

namespace gcsa {

enum class EntityKind { Point, Line, PlaneHomogeneous, PlanePointNormal, Cylinder };

enum class ConstraintKind {
    PointPointDistance,
    PointPlaneDistance,
    PointLineDistance,
    PlanePlaneDistance,
    LineLineDistance,
    VectorAngle,
    VectorParallel,
    PointOnPlane,
    PointOnLine,
    Coaxial,
    UnitNorm,
};

enum class PlaneScheme { Homogeneous, PointNormal };

/// How collinearity (VectorParallel) is turned into scalar equations.
/// Cross is the default: v1 x v2 = 0, three rows, no extra unknowns.
/// Auxiliary is the v1 + t*v2 = 0 form; t becomes an extra packed column
/// that is flagged auxiliary and excluded from reported column counts.
enum class CollinearityForm { Cross, Auxiliary };

const char* to_string(EntityKind k);
const char* to_string(ConstraintKind k);
const char* to_string(PlaneScheme s);

int param_count(EntityKind k);
bool has_direction(EntityKind k);
bool has_anchor(EntityKind k);

struct Entity {
    std::string id;
    EntityKind kind = EntityKind::Point;
    std::vector<double> params;
};

struct Constraint {
    std::string id;
    ConstraintKind kind = ConstraintKind::PointPointDistance;
    std::vector<std::string> refs;
    double value = 0.0;
    double weight = 1.0;
    bool auto_generated = false;
    // Frame vectors frozen at model construction; used by the two
    // anchor-on-axis rows of PointOnLine and Coaxial.
    std::array<Vector3d, 2> frame{Vector3d::Zero(), Vector3d::Zero()};
};

struct LayoutSpan {
    std::string id; // entity id, or "<constraint-id>#t" for auxiliary columns
    int offset = 0;
    int length = 0;
    bool auxiliary = false;
};

/// Packed parameter vector X plus the per-entity layout into it.
struct Configuration {
    VectorXd values;
    std::vector<LayoutSpan> layout;

    const LayoutSpan& span(const std::string& id) const;
    int total_length() const { return static_cast<int>(values.size()); }
    int reported_length() const; // excludes auxiliary columns
};

class GcsModel {
  public:
    /// Validates invariants, injects one UnitNorm constraint per directed
    /// entity and freezes constraint frames. Throws ValidationError.
    static GcsModel make(PlaneScheme scheme, std::vector<Entity> entities,
                         std::vector<Constraint> constraints,
                         CollinearityForm collinearity = CollinearityForm::Cross);

    PlaneScheme scheme() const { return scheme_; }
    CollinearityForm collinearity() const { return collinearity_; }
    const std::vector<Entity>& entities() const { return entities_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    const Entity& entity(const std::string& id) const;
    int entity_index(const std::string& id) const;
    bool has_entity(const std::string& id) const;

  private:
    PlaneScheme scheme_ = PlaneScheme::Homogeneous;
    CollinearityForm collinearity_ = CollinearityForm::Cross;
    std::vector<Entity> entities_;
    std::vector<Constraint> constraints_;
    std::map<std::string, int> entity_index_;
};

Configuration pack_parameters(const GcsModel& model);
GcsModel unpack_parameters(const GcsModel& model, const Configuration& x);
GcsModel convert_scheme(const GcsModel& model, PlaneScheme target);

/// Read-only view of one entity's parameters inside a packed vector.
struct ParamView {
    const GcsModel* model = nullptr;
    const Configuration* config = nullptr;

    Vector3d anchor(int entity_idx) const;
    Vector3d direction(int entity_idx) const; // line/cylinder direction or plane normal
    double plane_offset(int entity_idx) const;
    int offset_of(int entity_idx) const;
};

} // namespace gcsa
