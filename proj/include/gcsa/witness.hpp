#pragma once

#include <set>
#include <string>
#include <vector>

#include "gcsa/residual.hpp"

namespace gcsa {

struct WitnessPolicy {
    std::set<ConstraintKind> degenerate_kinds{
        ConstraintKind::VectorParallel, ConstraintKind::PointOnPlane, ConstraintKind::PointOnLine,
        ConstraintKind::Coaxial, ConstraintKind::UnitNorm};
    double tol = 1e-8;
    int max_projection_iters = 50;
};

struct WitnessViolation {
    int row = 0;
    std::string label;
    double value = 0.0;
};

struct WitnessReport {
    bool ok = true;
    std::vector<WitnessViolation> violations;
};

/// A configuration is a witness when every residual row of a degenerate-kind
/// constraint vanishes to within the policy tolerance.
WitnessReport is_witness(const GcsModel& model, const Configuration& x, const WitnessPolicy& policy);

/// Random perturbation of a witness followed by damped Gauss-Newton
/// projection back onto the degenerate rows. Dimensional rows are free to
/// change value; the result is a generic witness of the same constraint types.
Configuration perturb_to_witness(const GcsModel& model, const Configuration& x0,
                                 const WitnessPolicy& policy, unsigned seed);

} // namespace gcsa
