#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gcsa {

using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

struct GcsaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LayoutError : GcsaError {
    using GcsaError::GcsaError;
};
struct ValidationError : GcsaError {
    using GcsaError::GcsaError;
};
struct ParseError : GcsaError {
    using GcsaError::GcsaError;
};
struct DegenerateEntityError : GcsaError {
    using GcsaError::GcsaError;
};
struct UnsupportedConstraintError : GcsaError {
    using GcsaError::GcsaError;
};
struct InvalidStepError : GcsaError {
    using GcsaError::GcsaError;
};
struct NumericalError : GcsaError {
    using GcsaError::GcsaError;
};
struct NotAWitnessError : GcsaError {
    using GcsaError::GcsaError;
};
struct NonConvergenceError : GcsaError {
    using GcsaError::GcsaError;
};
struct ScaleError : GcsaError {
    using GcsaError::GcsaError;
};
struct LookupError : GcsaError {
    using GcsaError::GcsaError;
};

} // namespace gcsa
