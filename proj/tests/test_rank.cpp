#include <doctest.h>

#include <random>

#include "gcsa/corpus.hpp"
#include "gcsa/rank.hpp"
#include "gcsa/witness.hpp"
#include "test_support.hpp"

using namespace gcsa;

TEST_CASE("numerical rank on the worked matrices") {
    CHECK(numerical_rank(eq5_system().A).rank == 3); // frozen: elimination on rows 1..3
    CHECK(numerical_rank(eq6_system().A).rank == 3);

    RankResult id3 = numerical_rank(MatrixXd::Identity(3, 3));
    CHECK(id3.rank == 3);
    CHECK(id3.kernel_basis.cols() == 0);

    RankResult z = numerical_rank(MatrixXd::Zero(4, 4));
    CHECK(z.rank == 0);
    CHECK(z.kernel_basis.cols() == 4);
}

TEST_CASE("rank-nullity and kernel quality hold on random matrices") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        LinearSystem s = gcsa::testing::random_linear_system(rng);
        RankResult r = numerical_rank(s.A);
        CHECK(r.rank + r.kernel_basis.cols() == s.cols());
        CHECK(r.rank <= std::min(s.rows(), s.cols()));
        double jnorm = s.A.norm();
        for (int k = 0; k < r.kernel_basis.cols(); ++k)
            CHECK((s.A * r.kernel_basis.col(k)).norm() <= 10.0 * std::max(r.tol_used, 1e-15) *
                                                              std::max(jnorm, 1.0));
        for (int k = 0; k < r.cokernel_basis.cols(); ++k)
            CHECK((s.A.transpose() * r.cokernel_basis.col(k)).norm() <=
                  10.0 * std::max(r.tol_used, 1e-15) * std::max(jnorm, 1.0));
    }
}

TEST_CASE("non-finite entries are rejected") {
    MatrixXd bad = MatrixXd::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(numerical_rank(bad), NumericalError);
}

TEST_CASE("rigid generators of a single point at the origin") {
    std::vector<Entity> es{{"p", EntityKind::Point, {0, 0, 0}}};
    GcsModel m = GcsModel::make(PlaneScheme::Homogeneous, std::move(es), {});
    RigidGenerators g = rigid_generators(m, pack_parameters(m));
    for (int j = 0; j < 3; ++j) {
        CHECK(g.vectors.col(j) == VectorXd(Vector3d::Unit(j))); // translations
        CHECK(g.vectors.col(3 + j).norm() == 0.0);              // rotations about the origin
    }
    CHECK(dor(m, pack_parameters(m)) == 3);
}

TEST_CASE("homogeneous plane translation generator: ddot = -n.v") {
    std::vector<Entity> es{{"p", EntityKind::PlaneHomogeneous, {0, 0, 1, -2}}};
    GcsModel m = GcsModel::make(PlaneScheme::Homogeneous, std::move(es), {});
    RigidGenerators g = rigid_generators(m, pack_parameters(m));
    // translation v = e3 (column 2): ndot = 0, ddot = -1
    CHECK(g.vectors(0, 2) == 0.0);
    CHECK(g.vectors(1, 2) == 0.0);
    CHECK(g.vectors(2, 2) == 0.0);
    CHECK(g.vectors(3, 2) == doctest::Approx(-1.0));
}

TEST_CASE("all six rigid generators lie in the kernel at corpus witnesses") {
    for (const auto& e : corpus()) {
        if (!std::holds_alternative<GcsModel>(e.payload)) continue;
        const GcsModel& m = std::get<GcsModel>(e.payload);
        Configuration x = pack_parameters(m);
        JacobianMatrix J = jacobian(m, x);
        RigidGenerators g = rigid_generators(m, x);
        double bound = 1e-6 * (1.0 + J.entries.norm());
        for (int k = 0; k < 6; ++k) CHECK((J.entries * g.vectors.col(k)).norm() < bound);
    }
}

TEST_CASE("kernel dimension is at least the DOR on random witnesses") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        GcsModel m = gcsa::testing::random_model(rng);
        Configuration x = pack_parameters(m);
        JacobianMatrix J = jacobian(m, x);
        RankResult r = numerical_rank(J.entries);
        int d = dor(m, x);
        CHECK(d >= 0);
        CHECK(d <= 6);
        CHECK(J.column_size() - r.rank >= d);
        RigidGenerators g = rigid_generators(m, x);
        double bound = 1e-6 * (1.0 + J.entries.norm());
        for (int k = 0; k < 6; ++k) CHECK((J.entries * g.vectors.col(k)).norm() < bound);
    }
}

TEST_CASE("DOR values for the corpus reconstructions") {
    GcsModel h = four_plane_model();
    CHECK(dor(h, pack_parameters(h)) == 5);
    GcsModel pn = convert_scheme(h, PlaneScheme::PointNormal);
    CHECK(dor(pn, pack_parameters(pn)) == 6);
    GcsModel lines = two_line_model();
    CHECK(dor(lines, pack_parameters(lines)) == 6);
}

TEST_CASE("DOR is independent of the rotation origin") {
    const Vector3d other(5, -3, 2);
    for (const auto& e : corpus()) {
        if (!std::holds_alternative<GcsModel>(e.payload)) continue;
        const GcsModel& m = std::get<GcsModel>(e.payload);
        Configuration x = pack_parameters(m);
        CHECK(dor(m, x, Vector3d::Zero()) == dor(m, x, other));
    }
}

TEST_CASE("plain classification follows the fixed-six criteria") {
    // Eq. 6 coefficient matrix as J: dependent rows, kernel 0.
    CHECK(classify_plain(3, 5, 3) == ConstraintState::Over);
    CHECK(classify_plain(3, 3, 10) == ConstraintState::Under);
    CHECK(classify_plain(3, 3, 9) == ConstraintState::Well);
    CHECK(classify_plain(3, 5, 10) == ConstraintState::OverAndUnder);
    // Square invertible J: kernel 0 != 6, so anything but Well.
    CHECK(classify_plain(3, 3, 3) != ConstraintState::Well);
}

TEST_CASE("DOR classification replaces the fixed six") {
    CHECK(classify_dor(11, 11, 16, 5) == ConstraintState::Well);
    CHECK(classify_dor(11, 11, 16, 4) == ConstraintState::Under);
    CHECK(classify_dor(11, 12, 16, 5) == ConstraintState::Over);
}

TEST_CASE("plain and DOR classifications agree whenever DOR is 6") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> dims(1, 12);
    for (int t = 0; t < 200; ++t) {
        int rank = dims(rng), extra_rows = dims(rng) % 3, extra_cols = dims(rng) % 8;
        CHECK(classify_plain(rank, rank + extra_rows, rank + extra_cols) ==
              classify_dor(rank, rank + extra_rows, rank + extra_cols, 6));
    }
}

TEST_CASE("analyze reproduces the frozen corpus reports") {
    for (const auto& e : corpus()) {
        if (!e.expected) continue;
        const GcsModel& m = std::get<GcsModel>(e.payload);
        AnalysisReport r = analyze(m, pack_parameters(m));
        CAPTURE(e.name);
        CHECK(r.column_size == e.expected->column_size);
        CHECK(r.row_size == e.expected->row_size);
        CHECK(r.rank == e.expected->rank);
        CHECK(r.kernel_dim == e.expected->kernel_dim);
        CHECK(r.dor == e.expected->dor);
        CHECK(r.matched == e.expected->matched);
        CHECK(r.kernel_dim + r.rank == r.column_size);
    }
}

TEST_CASE("four-plane states: correctly matched in rep1, mismatch in rep2, not Well under plain") {
    GcsModel h = four_plane_model();
    AnalysisReport r1 = analyze(h, pack_parameters(h));
    CHECK(r1.matched);
    CHECK(r1.plain_state != ConstraintState::Well); // kernel 5 != 6
    GcsModel pn = convert_scheme(h, PlaneScheme::PointNormal);
    AnalysisReport r2 = analyze(pn, pack_parameters(pn));
    CHECK_FALSE(r2.matched);
    CHECK(r2.kernel_dim == 11);
}

TEST_CASE("analyze refuses a non-witness configuration") {
    GcsModel m = two_line_model();
    Configuration x = pack_parameters(m);
    x.values[3] += 0.5; // break the first line's direction
    CHECK_THROWS_AS(analyze(m, x), NotAWitnessError);
}

TEST_CASE("row scaling changes no classification") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::bernoulli_distribution flip;
    for (const auto& e : corpus()) {
        if (!std::holds_alternative<GcsModel>(e.payload)) continue;
        const GcsModel& m = std::get<GcsModel>(e.payload);
        Configuration x = pack_parameters(m);
        JacobianMatrix J = jacobian(m, x);
        int d = dor(m, x);
        MatrixXd scaled = J.entries;
        for (int r = 0; r < scaled.rows(); ++r)
            scaled.row(r) *= (flip(rng) ? -1.0 : 1.0) * mag(rng);
        RankResult r0 = numerical_rank(J.entries);
        RankResult r1 = numerical_rank(scaled);
        CHECK(r0.rank == r1.rank);
        CHECK(classify_plain(r0.rank, J.row_size(), J.reported_column_size()) ==
              classify_plain(r1.rank, J.row_size(), J.reported_column_size()));
        CHECK(classify_dor(r0.rank, J.row_size(), J.reported_column_size(), d) ==
              classify_dor(r1.rank, J.row_size(), J.reported_column_size(), d));
    }
}
