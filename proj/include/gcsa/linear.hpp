#pragma once

#include <string>

#include "gcsa/rank.hpp"

namespace gcsa {

struct LinearSystem {
    MatrixXd A;
    VectorXd b;

    int rows() const { return static_cast<int>(A.rows()); }
    int cols() const { return static_cast<int>(A.cols()); }
};

/// Solution-space classification of A x = b per the exact definitions:
/// consistent when rank(A) = rank([A|b]); under when consistent with
/// rank < n; consistently over when consistent with rank < m; over when
/// inconsistent or consistently over; well when consistent with rank = m = n.
struct LinearClassification {
    bool consistent = false;
    bool under = false;
    bool consistently_over = false;
    bool over = false;
    bool well = false;
    int rank_a = 0;
    int rank_ab = 0;

    std::string to_string() const;
};

LinearClassification classify_linear(const LinearSystem& sys, RankTolerance tol = {});

/// Adapter so rank/decomposition machinery can consume a raw system.
JacobianMatrix as_jacobian(const LinearSystem& sys);

} // namespace gcsa
