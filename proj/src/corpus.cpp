#include "gcsa/corpus.hpp"

#include <cmath>

namespace gcsa {

namespace {

Entity point(std::string id, Vector3d p) {
    return Entity{std::move(id), EntityKind::Point, {p.x(), p.y(), p.z()}};
}

Entity line(std::string id, Vector3d p, Vector3d d) {
    d.normalize();
    return Entity{std::move(id), EntityKind::Line, {p.x(), p.y(), p.z(), d.x(), d.y(), d.z()}};
}

Entity plane_h(std::string id, Vector3d n, double d) {
    n.normalize();
    return Entity{std::move(id), EntityKind::PlaneHomogeneous, {n.x(), n.y(), n.z(), d}};
}

Constraint cons(std::string id, ConstraintKind kind, std::vector<std::string> refs,
                double value = 0.0) {
    Constraint c;
    c.id = std::move(id);
    c.kind = kind;
    c.refs = std::move(refs);
    c.value = value;
    return c;
}

} // namespace

LinearSystem eq5_system() {
    LinearSystem s;
    s.A.resize(5, 3);
    s.A << 1, 1, 1, //
        2, 1, 1,    //
        3, 2, 1,    //
        1, 2, 3,    //
        2, 4, 3;
    s.b.resize(5);
    s.b << 0, 1, 1, 1, 2;
    return s;
}

LinearSystem eq6_system() {
    LinearSystem s = eq5_system();
    s.A.row(4) << 2, 4, 6;
    s.b[4] = 2;
    return s;
}

LinearSystem identity3_system() {
    LinearSystem s;
    s.A = MatrixXd::Identity(3, 3);
    s.b.resize(3);
    s.b << 1, 2, 3;
    return s;
}

GcsModel four_plane_model() {
    // Parallelogram tube: four planes parallel to a common axis (the z axis),
    // opposite pairs anti-parallel at fixed distances, one cross angle.
    const double c = 0.5, sqr = std::sqrt(3.0) / 2.0;
    const double a = 2.0, b = 1.5;
    std::vector<Entity> entities{
        plane_h("P1", {1, 0, 0}, 0.0),
        plane_h("P2", {c, sqr, 0}, 0.0),
        plane_h("P3", {-1, 0, 0}, a),
        plane_h("P4", {-c, -sqr, 0}, b),
    };
    std::vector<Constraint> constraints{
        cons("par13", ConstraintKind::VectorParallel, {"P1", "P3"}),
        cons("par24", ConstraintKind::VectorParallel, {"P2", "P4"}),
        cons("ang12", ConstraintKind::VectorAngle, {"P1", "P2"}, c),
        cons("dist13", ConstraintKind::PlanePlaneDistance, {"P1", "P3"}, a),
        cons("dist24", ConstraintKind::PlanePlaneDistance, {"P2", "P4"}, b),
        // Distances between the representative points of each pair. In the
        // homogeneous scheme the representative point is the foot of the
        // origin perpendicular, so these rows duplicate the offset rows; in
        // the point-normal scheme they act on the anchors instead.
        cons("span13", ConstraintKind::PointPointDistance, {"P1", "P3"}, a),
        cons("span24", ConstraintKind::PointPointDistance, {"P2", "P4"}, b),
    };
    return GcsModel::make(PlaneScheme::Homogeneous, std::move(entities), std::move(constraints));
}

GcsModel two_line_model() {
    const double r = 1.25;
    std::vector<Entity> entities{
        line("L1", {0, 0, 0}, {0, 0, 1}),
        line("L2", {r, 0, 0}, {0, 0, 1}),
    };
    std::vector<Constraint> constraints{
        cons("par", ConstraintKind::VectorParallel, {"L1", "L2"}),
        cons("dist", ConstraintKind::LineLineDistance, {"L1", "L2"}, r),
    };
    return GcsModel::make(PlaneScheme::Homogeneous, std::move(entities), std::move(constraints));
}

GcsModel crank_model() {
    // Crank assembly: shaft axis F4 welded to body planes F5/F6, face plane
    // F3 and arm plane F2 (carrying pin axis F7) each free to rotate about
    // the shaft. Two residual degrees of freedom by construction.
    const Vector3d p4(0.7, -0.4, 0.3);
    const Vector3d d4 = Vector3d(0.2, 0.5, 0.84).normalized();

    const Vector3d n5 = Vector3d(0.25, -0.4, 0.88).normalized();
    const Vector3d n6 = Vector3d(-0.55, 0.7, 0.45).normalized();
    const Vector3d n3 = Vector3d(0.8, 0.3, -0.5).normalized();

    const Vector3d radial = d4.cross(Vector3d::UnitX()).normalized();
    const double throw_r = 1.3, axial = 0.45;
    const Vector3d p7 = p4 + throw_r * radial + axial * d4;
    const Vector3d d7 = d4;

    const Vector3d w = p7 - p4;
    const Vector3d n2 = w.cross(Vector3d(0.1, 0.9, -0.3)).normalized();

    std::vector<Entity> entities{
        line("F4", p4, d4),
        plane_h("F5", n5, -n5.dot(p4)),
        plane_h("F6", n6, -n6.dot(p4)),
        plane_h("F3", n3, -n3.dot(p4)),
        line("F7", p7, d7),
        plane_h("F2", n2, -n2.dot(p4)),
    };
    std::vector<Constraint> constraints{
        cons("ang56", ConstraintKind::VectorAngle, {"F5", "F6"}, n5.dot(n6)),
        cons("ang54", ConstraintKind::VectorAngle, {"F5", "F4"}, n5.dot(d4)),
        cons("ang64", ConstraintKind::VectorAngle, {"F6", "F4"}, n6.dot(d4)),
        cons("inc45", ConstraintKind::PointOnPlane, {"F4", "F5"}),
        cons("inc46", ConstraintKind::PointOnPlane, {"F4", "F6"}),
        cons("ang34", ConstraintKind::VectorAngle, {"F3", "F4"}, n3.dot(d4)),
        cons("inc43", ConstraintKind::PointOnPlane, {"F4", "F3"}),
        cons("par74", ConstraintKind::VectorParallel, {"F7", "F4"}),
        cons("throw74", ConstraintKind::LineLineDistance, {"F7", "F4"}, throw_r),
        cons("span74", ConstraintKind::PointPointDistance, {"F7", "F4"}, w.norm()),
        cons("ang27", ConstraintKind::VectorAngle, {"F2", "F7"}, n2.dot(d7)),
        cons("inc72", ConstraintKind::PointOnPlane, {"F7", "F2"}),
        cons("inc42", ConstraintKind::PointOnPlane, {"F4", "F2"}),
    };
    return GcsModel::make(PlaneScheme::Homogeneous, std::move(entities), std::move(constraints));
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> v;
        v.push_back({"eq5", eq5_system(), std::nullopt});
        v.push_back({"eq6", eq6_system(), std::nullopt});
        v.push_back({"identity3", identity3_system(), std::nullopt});
        v.push_back({"four-plane-rep1", four_plane_model(),
                     ExpectedReport{16, 15, 11, 5, 5, true}});
        v.push_back({"four-plane-rep2",
                     convert_scheme(four_plane_model(), PlaneScheme::PointNormal),
                     ExpectedReport{24, 15, 13, 11, 6, false}});
        v.push_back({"two-line", two_line_model(), ExpectedReport{12, 6, 5, 7, 6, false}});
        v.push_back({"crank", crank_model(), ExpectedReport{28, 21, 20, 8, 6, false}});
        return v;
    }();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw LookupError("no corpus entry named '" + name + "'");
}

} // namespace gcsa
