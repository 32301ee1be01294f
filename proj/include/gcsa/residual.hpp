#pragma once

#include <string>
#include <vector>

#include "gcsa/model.hpp"

namespace gcsa {

struct RowRef {
    int constraint = 0; // index into model.constraints()
    int equation = 0;   // scalar equation within the constraint
    std::string label;  // "<constraint-id>" or "<constraint-id>[k]"
};

struct ResidualVector {
    VectorXd values;
    std::vector<RowRef> rows;
};

struct JacobianMatrix {
    MatrixXd entries;
    std::vector<RowRef> rows;
    std::vector<LayoutSpan> columns; // copy of the configuration layout

    int row_size() const { return static_cast<int>(entries.rows()); }
    int column_size() const { return static_cast<int>(entries.cols()); }
    /// Column count excluding auxiliary columns (the reported ColumnSize).
    int reported_column_size() const;
};

int scalar_equation_count(const Constraint& c);
int scalar_equation_count(const Constraint& c, CollinearityForm form);

ResidualVector residual(const GcsModel& model, const Configuration& x);
JacobianMatrix jacobian(const GcsModel& model, const Configuration& x);

/// Central-difference approximation of the Jacobian; test oracle only.
JacobianMatrix fd_jacobian(const GcsModel& model, const Configuration& x, double h);

/// Upper bound on the polynomial degree of a constraint's residual rows in X.
/// Squared point/line distance forms and homogeneous-plane representative
/// point distances are quartic, everything else is quadratic or lower.
int residual_degree_bound(const GcsModel& model, const Constraint& c);

} // namespace gcsa
