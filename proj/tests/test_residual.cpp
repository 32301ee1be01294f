#include <doctest.h>

#include <random>

#include "gcsa/corpus.hpp"
#include "gcsa/rank.hpp"
#include "gcsa/residual.hpp"
#include "test_support.hpp"

using namespace gcsa;

namespace {

Constraint make_c(std::string id, ConstraintKind k, std::vector<std::string> refs, double v = 0) {
    Constraint c;
    c.id = std::move(id);
    c.kind = k;
    c.refs = std::move(refs);
    c.value = v;
    return c;
}

// One model exercising every constraint kind, drawn exactly satisfied.
GcsModel kitchen_sink_model(CollinearityForm form = CollinearityForm::Cross) {
    Vector3d d = Vector3d(0.3, -0.2, 0.95).normalized();
    Vector3d q = Vector3d(0.4, 1.1, -0.2);
    Vector3d on_line = q + 1.7 * d;
    Vector3d n = Vector3d(0.5, 0.8, -0.1).normalized();
    double off = -0.7;
    Vector3d on_plane = -off * n + 1.3 * n.unitOrthogonal();
    Vector3d pt = Vector3d(1.2, -0.6, 0.8);

    std::vector<Entity> es{
        {"pt", EntityKind::Point, {pt.x(), pt.y(), pt.z()}},
        {"onp", EntityKind::Point, {on_plane.x(), on_plane.y(), on_plane.z()}},
        {"onl", EntityKind::Point, {on_line.x(), on_line.y(), on_line.z()}},
        {"ln", EntityKind::Line, {q.x(), q.y(), q.z(), d.x(), d.y(), d.z()}},
        {"ln2", EntityKind::Line,
         {q.x() + 0.9, q.y() - 0.4, q.z() + 0.2, d.x(), d.y(), d.z()}},
        {"pl", EntityKind::PlaneHomogeneous, {n.x(), n.y(), n.z(), off}},
        {"pl2", EntityKind::PlaneHomogeneous, {-n.x(), -n.y(), -n.z(), 2.4}},
        {"cyl", EntityKind::Cylinder,
         {q.x() + 2 * d.x(), q.y() + 2 * d.y(), q.z() + 2 * d.z(), d.x(), d.y(), d.z(), 0.4}},
    };
    Vector3d u = pt - q;
    double pld = (u - u.dot(d) * d).norm();
    Vector3d w12 = Vector3d(q.x() + 0.9, q.y() - 0.4, q.z() + 0.2) - q;
    double lld = (w12 - w12.dot(d) * d).norm();
    std::vector<Constraint> cs{
        make_c("ppd", ConstraintKind::PointPointDistance, {"pt", "onp"}, (pt - on_plane).norm()),
        make_c("ppld", ConstraintKind::PointPlaneDistance, {"pt", "pl"}, n.dot(pt) + off),
        make_c("plld", ConstraintKind::PointLineDistance, {"pt", "ln"}, pld),
        make_c("plpl", ConstraintKind::PlanePlaneDistance, {"pl", "pl2"}, off + 2.4),
        make_c("lld", ConstraintKind::LineLineDistance, {"ln", "ln2"}, lld),
        make_c("va", ConstraintKind::VectorAngle, {"pl", "ln"}, n.dot(d)),
        make_c("vp", ConstraintKind::VectorParallel, {"ln", "ln2"}),
        make_c("pop", ConstraintKind::PointOnPlane, {"onp", "pl"}),
        make_c("pol", ConstraintKind::PointOnLine, {"onl", "ln"}),
        make_c("coax", ConstraintKind::Coaxial, {"ln", "cyl"}),
    };
    return GcsModel::make(PlaneScheme::Homogeneous, std::move(es), std::move(cs), form);
}

} // namespace

TEST_CASE("scalar equation counts per kind") {
    auto count = [](ConstraintKind k, std::vector<std::string> refs) {
        Constraint c = make_c("c", k, std::move(refs));
        return scalar_equation_count(c);
    };
    CHECK(count(ConstraintKind::PointPointDistance, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::PointPlaneDistance, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::PointLineDistance, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::PlanePlaneDistance, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::LineLineDistance, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::VectorAngle, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::VectorParallel, {"a", "b"}) == 3);
    CHECK(count(ConstraintKind::PointOnPlane, {"a", "b"}) == 1);
    CHECK(count(ConstraintKind::PointOnLine, {"a", "b"}) == 2);
    CHECK(count(ConstraintKind::Coaxial, {"a", "b"}) == 5);
    CHECK(count(ConstraintKind::UnitNorm, {"a"}) == 1);
}

TEST_CASE("point distance residuals use the squared form") {
    auto two_points = [](Vector3d a, Vector3d b, double v) {
        std::vector<Entity> es{{"a", EntityKind::Point, {a.x(), a.y(), a.z()}},
                               {"b", EntityKind::Point, {b.x(), b.y(), b.z()}}};
        std::vector<Constraint> cs{make_c("d", ConstraintKind::PointPointDistance, {"a", "b"}, v)};
        return GcsModel::make(PlaneScheme::Homogeneous, std::move(es), std::move(cs));
    };
    GcsModel sat = two_points({0, 0, 0}, {1, 0, 0}, 1.0);
    CHECK(residual(sat, pack_parameters(sat)).values[0] == doctest::Approx(0.0));
    GcsModel off = two_points({0, 0, 0}, {1, 1, 1}, 1.0);
    CHECK(residual(off, pack_parameters(off)).values[0] == doctest::Approx(2.0)); // 3 - 1
}

TEST_CASE("parallel vectors give a zero cross-product residual") {
    std::vector<Entity> es{{"a", EntityKind::Line, {0, 0, 0, 0, 0, 1}},
                           {"b", EntityKind::Line, {1, 0, 0, 0, 0, 1}}};
    std::vector<Constraint> cs{make_c("p", ConstraintKind::VectorParallel, {"a", "b"})};
    GcsModel m = GcsModel::make(PlaneScheme::Homogeneous, std::move(es), std::move(cs));
    VectorXd r = residual(m, pack_parameters(m)).values;
    for (int i = 0; i < 3; ++i) CHECK(r[i] == doctest::Approx(0.0));
}

TEST_CASE("all residual rows vanish on an exactly drawn model") {
    GcsModel m = kitchen_sink_model();
    VectorXd r = residual(m, pack_parameters(m)).values;
    for (int i = 0; i < r.size(); ++i) CHECK(std::abs(r[i]) < 1e-12);
}

TEST_CASE("rowmap covers every scalar equation in constraint order") {
    GcsModel m = kitchen_sink_model();
    ResidualVector r = residual(m, pack_parameters(m));
    int expected = 0;
    for (const auto& c : m.constraints()) expected += scalar_equation_count(c);
    CHECK(r.values.size() == expected);
    CHECK(static_cast<int>(r.rows.size()) == expected);
    int at = 0;
    for (int ci = 0; ci < static_cast<int>(m.constraints().size()); ++ci) {
        for (int k = 0; k < scalar_equation_count(m.constraints()[ci]); ++k, ++at) {
            CHECK(r.rows[at].constraint == ci);
            CHECK(r.rows[at].equation == k);
        }
    }
}

TEST_CASE("unit-norm gradient for v=(0,0,1) is (0,0,2) on its columns only") {
    std::vector<Entity> es{{"l", EntityKind::Line, {0.5, -0.25, 2, 0, 0, 1}}};
    GcsModel m = GcsModel::make(PlaneScheme::Homogeneous, std::move(es), {});
    JacobianMatrix J = jacobian(m, pack_parameters(m));
    REQUIRE(J.row_size() == 1);
    VectorXd row = J.entries.row(0);
    CHECK(row[0] == 0.0);
    CHECK(row[1] == 0.0);
    CHECK(row[2] == 0.0);
    CHECK(row[3] == 0.0);
    CHECK(row[4] == 0.0);
    CHECK(row[5] == doctest::Approx(2.0));
}

TEST_CASE("analytic and central-difference Jacobians agree on random configurations") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> bump(-0.5, 0.5);
    for (const GcsModel& m : {kitchen_sink_model(), crank_model(), four_plane_model()}) {
        Configuration x0 = pack_parameters(m);
        for (int t = 0; t < 10; ++t) {
            Configuration x = x0;
            for (int i = 0; i < x.values.size(); ++i) x.values[i] += bump(rng);
            JacobianMatrix ja = jacobian(m, x);
            JacobianMatrix jf = fd_jacobian(m, x, 1e-6);
            double scale = 1.0 + ja.entries.cwiseAbs().maxCoeff();
            CHECK((ja.entries - jf.entries).cwiseAbs().maxCoeff() / scale < 1e-6);
        }
    }
}

TEST_CASE("central differences are exact to roundoff for the quadratic rows") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> bump(-0.5, 0.5);
    GcsModel m = kitchen_sink_model();
    Configuration x = pack_parameters(m);
    for (int i = 0; i < x.values.size(); ++i) x.values[i] += bump(rng);
    JacobianMatrix ja = jacobian(m, x);
    JacobianMatrix jf = fd_jacobian(m, x, 1e-4);
    for (int r = 0; r < ja.row_size(); ++r) {
        const Constraint& c = m.constraints()[ja.rows[r].constraint];
        if (residual_degree_bound(m, c) > 2) continue;
        CHECK((ja.entries.row(r) - jf.entries.row(r)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("fd_jacobian rejects a non-positive step") {
    GcsModel m = two_line_model();
    CHECK_THROWS_AS(fd_jacobian(m, pack_parameters(m), 0.0), InvalidStepError);
}

TEST_CASE("cross-product parallel rows have rank at most 2 everywhere") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-2, 2);
    for (int t = 0; t < 40; ++t) {
        Vector3d d1(coord(rng), coord(rng), coord(rng));
        Vector3d d2(coord(rng), coord(rng), coord(rng));
        if (d1.norm() < 0.2 || d2.norm() < 0.2) continue;
        std::vector<Entity> es{{"a", EntityKind::Line, {0, 0, 0, d1.x(), d1.y(), d1.z()}},
                               {"b", EntityKind::Line, {1, 0, 0, d2.x(), d2.y(), d2.z()}}};
        std::vector<Constraint> cs{make_c("p", ConstraintKind::VectorParallel, {"a", "b"})};
        GcsModel m = GcsModel::make(PlaneScheme::Homogeneous, std::move(es), std::move(cs));
        JacobianMatrix J = jacobian(m, pack_parameters(m));
        MatrixXd vp_rows = J.entries.topRows(3);
        CHECK(numerical_rank(vp_rows).rank <= 2);
    }
}

TEST_CASE("auxiliary collinearity mode: full-rank rows, flagged extra column") {
    GcsModel m = kitchen_sink_model(CollinearityForm::Auxiliary);
    Configuration x = pack_parameters(m);
    int aux = 0;
    for (const auto& s : x.layout) aux += s.auxiliary ? 1 : 0;
    CHECK(aux == 1); // one VectorParallel constraint
    CHECK(x.reported_length() == x.total_length() - 1);

    JacobianMatrix J = jacobian(m, x);
    CHECK(J.reported_column_size() == J.column_size() - 1);
    int vp_row = -1;
    for (int r = 0; r < J.row_size(); ++r)
        if (m.constraints()[J.rows[r].constraint].kind == ConstraintKind::VectorParallel) {
            vp_row = r;
            break;
        }
    REQUIRE(vp_row >= 0);
    MatrixXd rows = J.entries.middleRows(vp_row, 3);
    CHECK(numerical_rank(rows).rank == 3);

    // The t rows vanish at the packed value of t.
    VectorXd r = residual(m, x).values;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(r[vp_row + k]) < 1e-12);
}

TEST_CASE("constraint weights scale their rows linearly") {
    GcsModel base = kitchen_sink_model();
    std::vector<Constraint> user;
    for (const auto& c : base.constraints())
        if (!c.auto_generated) user.push_back(c);
    user[0].weight = 3.5;
    GcsModel weighted =
        GcsModel::make(base.scheme(), std::vector<Entity>(base.entities()), std::move(user));
    Configuration x = pack_parameters(base);
    JacobianMatrix j0 = jacobian(base, x);
    JacobianMatrix j1 = jacobian(weighted, x);
    CHECK((j1.entries.row(0) - 3.5 * j0.entries.row(0)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((j1.entries.row(1) - j0.entries.row(1)).cwiseAbs().maxCoeff() == 0.0);
}
