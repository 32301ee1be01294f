#include "gcsa/linear.hpp"

namespace gcsa {

std::string LinearClassification::to_string() const {
    std::string s;
    auto add = [&](const char* label) {
        if (!s.empty()) s += ", ";
        s += label;
    };
    if (!consistent) add("inconsistent");
    if (over) add("over-constrained");
    if (under) add("under-constrained");
    if (well) add("well-constrained");
    return s;
}

LinearClassification classify_linear(const LinearSystem& sys, RankTolerance tol) {
    if (!sys.A.allFinite() || !sys.b.allFinite())
        throw NumericalError("linear system has non-finite entries");
    if (sys.b.size() != sys.A.rows())
        throw ValidationError("linear system dimensions disagree");
    LinearClassification c;
    const int m = sys.rows();
    const int n = sys.cols();
    MatrixXd Ab(m, n + 1);
    Ab << sys.A, sys.b;
    c.rank_a = numerical_rank(sys.A, tol).rank;
    c.rank_ab = numerical_rank(Ab, tol).rank;
    c.consistent = c.rank_a == c.rank_ab;
    c.under = c.consistent && c.rank_a < n;
    c.consistently_over = c.consistent && c.rank_a < m;
    c.over = !c.consistent || c.consistently_over;
    c.well = c.consistent && c.rank_a == m && c.rank_a == n;
    return c;
}

JacobianMatrix as_jacobian(const LinearSystem& sys) {
    JacobianMatrix j;
    j.entries = sys.A;
    for (int i = 0; i < sys.rows(); ++i) j.rows.push_back({i, 0, "E" + std::to_string(i + 1)});
    for (int i = 0; i < sys.cols(); ++i)
        j.columns.push_back({"x" + std::to_string(i + 1), i, 1, false});
    return j;
}

} // namespace gcsa
