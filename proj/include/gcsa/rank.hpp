#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcsa/residual.hpp"

namespace gcsa {

/// Rank tolerance policy. With no absolute override the spectral default
/// max(m,n) * eps * sigma_max is used.
struct RankTolerance {
    std::optional<double> absolute;

    double resolve(int m, int n, double sigma_max) const;
};

struct RankResult {
    int rank = 0;
    std::vector<double> singular_values; // descending
    MatrixXd kernel_basis;               // n x (n - rank)
    MatrixXd cokernel_basis;             // m x (m - rank)
    double tol_used = 0.0;
};

RankResult numerical_rank(const MatrixXd& J, RankTolerance tol = {});

struct RigidGenerators {
    MatrixXd vectors; // n x 6: translations e1..e3, then rotations about origin
    Vector3d origin = Vector3d::Zero();
};

RigidGenerators rigid_generators(const GcsModel& model, const Configuration& x,
                                 const Vector3d& origin = Vector3d::Zero());

/// Degree of rigidity: rank of the six rigid-motion generator vectors.
int dor(const GcsModel& model, const Configuration& x,
        const Vector3d& origin = Vector3d::Zero(), RankTolerance tol = {});

enum class ConstraintState { Well, Over, Under, OverAndUnder, Indeterminate };

const char* to_string(ConstraintState s);

ConstraintState classify_plain(int rank, int row_size, int column_size);
ConstraintState classify_dor(int rank, int row_size, int column_size, int dor);
ConstraintState classify_plain(const JacobianMatrix& J, RankTolerance tol = {});
ConstraintState classify_dor(const JacobianMatrix& J, int dor, RankTolerance tol = {});

struct AnalysisReport {
    int column_size = 0; // reported (auxiliary columns excluded)
    int row_size = 0;
    int rank = 0;
    int kernel_dim = 0; // column_size - rank
    int dor = 0;
    ConstraintState plain_state = ConstraintState::Well;
    ConstraintState dor_state = ConstraintState::Well;
    bool matched = false; // kernel_dim == dor, the Table-1 check
    double tol_used = 0.0;
};

struct AnalyzeOptions {
    RankTolerance tol;
    Vector3d rotation_origin = Vector3d::Zero();
    bool check_witness = true;
};

/// Full constraint-state analysis at a witness configuration.
/// Throws NotAWitnessError when the configuration violates degenerate rows.
AnalysisReport analyze(const GcsModel& model, const Configuration& x, AnalyzeOptions opts = {});

std::string report_table(const std::vector<std::pair<std::string, AnalysisReport>>& rows);

} // namespace gcsa
