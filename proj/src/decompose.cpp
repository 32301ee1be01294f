#include "gcsa/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace gcsa {

namespace {

constexpr int kMaxExactRows = 25;
constexpr int kMaxExactEntities = 12;

int rank_of_rows(const MatrixXd& J, const std::vector<int>& rows, RankTolerance tol) {
    if (rows.empty()) return 0;
    MatrixXd sub(rows.size(), J.cols());
    for (size_t i = 0; i < rows.size(); ++i) sub.row(i) = J.row(rows[i]);
    return numerical_rank(sub, tol).rank;
}

std::vector<int> natural_order_from(int seed, int m) {
    std::vector<int> order;
    for (int i = 0; i < m; ++i) order.push_back((seed + i) % m);
    return order;
}

} // namespace

std::vector<int> greedy_max_independent(const MatrixXd& J, int seed_row,
                                        const std::vector<int>& order, RankTolerance tol) {
    const int m = static_cast<int>(J.rows());
    if (seed_row < 0 || seed_row >= m) throw LookupError("seed row out of range");
    std::vector<int> scan = order.empty() ? natural_order_from(seed_row, m) : order;
    std::vector<int> basis;
    for (int row : scan) {
        std::vector<int> candidate = basis;
        candidate.push_back(row);
        if (rank_of_rows(J, candidate, tol) == static_cast<int>(candidate.size()))
            basis = std::move(candidate);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

std::vector<DependencyGroup> greedy_dependency_groups(const MatrixXd& J, int seed_row,
                                                      GroupMode mode,
                                                      const std::vector<int>& order,
                                                      RankTolerance tol) {
    const int m = static_cast<int>(J.rows());
    std::vector<int> basis = greedy_max_independent(J, seed_row, order, tol);
    std::vector<bool> in_basis(m, false);
    for (int r : basis) in_basis[r] = true;

    MatrixXd B(basis.size(), J.cols());
    for (size_t i = 0; i < basis.size(); ++i) B.row(i) = J.row(basis[i]);

    std::vector<DependencyGroup> groups;
    for (int row = 0; row < m; ++row) {
        if (in_basis[row]) continue;
        DependencyGroup g;
        if (mode == GroupMode::FullBasis) {
            g.kind = DependencyGroup::Kind::FullBasis;
            g.rows = basis;
            g.rows.push_back(row);
        } else {
            g.kind = DependencyGroup::Kind::Support;
            VectorXd coeff =
                B.transpose().completeOrthogonalDecomposition().solve(J.row(row).transpose());
            double scale = std::max(1.0, coeff.cwiseAbs().maxCoeff());
            for (size_t i = 0; i < basis.size(); ++i)
                if (std::abs(coeff[i]) > 1e-8 * scale) g.rows.push_back(basis[i]);
            g.rows.push_back(row);
        }
        std::sort(g.rows.begin(), g.rows.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

std::vector<DependencyGroup> exact_minimal_dependency_groups(const MatrixXd& J, int max_size,
                                                             RankTolerance tol) {
    const int m = static_cast<int>(J.rows());
    if (m > kMaxExactRows)
        throw ScaleError("exact circuit enumeration limited to " + std::to_string(kMaxExactRows) +
                         " rows, got " + std::to_string(m));
    std::vector<DependencyGroup> circuits;
    std::vector<std::vector<int>> found;

    std::vector<int> subset;
    auto is_superset_of_found = [&](const std::vector<int>& s) {
        for (const auto& c : found)
            if (std::includes(s.begin(), s.end(), c.begin(), c.end())) return true;
        return false;
    };

    // Enumerate subsets of fixed size k in lexicographic order.
    for (int k = 2; k <= std::min(max_size, m); ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            if (!is_superset_of_found(idx) && rank_of_rows(J, idx, tol) < k) {
                found.push_back(idx);
                DependencyGroup g;
                g.kind = DependencyGroup::Kind::Circuit;
                g.rows = idx;
                circuits.push_back(std::move(g));
            }
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return circuits;
}

GcsModel induced_subsystem(const GcsModel& model, const std::set<std::string>& entities) {
    std::vector<Entity> sub_entities;
    for (const auto& id : entities) model.entity_index(id); // throws LookupError when unknown
    for (const auto& e : model.entities())
        if (entities.count(e.id)) sub_entities.push_back(e);
    std::vector<Constraint> sub_constraints;
    for (const auto& c : model.constraints()) {
        if (c.auto_generated) continue; // re-injected by make()
        bool inside = true;
        for (const auto& r : c.refs) inside = inside && entities.count(r) > 0;
        if (inside) sub_constraints.push_back(c);
    }
    return GcsModel::make(model.scheme(), std::move(sub_entities), std::move(sub_constraints),
                          model.collinearity());
}

Configuration restrict_configuration(const GcsModel& model, const Configuration& x,
                                     const GcsModel& sub) {
    Configuration xs = pack_parameters(sub);
    for (const auto& span : xs.layout) {
        const LayoutSpan& src = x.span(span.id);
        if (src.length != span.length) throw LayoutError("span length mismatch for '" + span.id + "'");
        xs.values.segment(span.offset, span.length) = x.values.segment(src.offset, src.length);
    }
    return xs;
}

bool subset_is_well(const GcsModel& model, const Configuration& x,
                    const std::set<std::string>& entities, RankTolerance tol) {
    GcsModel sub = induced_subsystem(model, entities);
    Configuration xs = restrict_configuration(model, x, sub);
    JacobianMatrix J = jacobian(sub, xs);
    RankResult r = numerical_rank(J.entries, tol);
    int d = dor(sub, xs, Vector3d::Zero(), tol);
    return classify_dor(r.rank, J.row_size(), J.reported_column_size(), d) ==
           ConstraintState::Well;
}

WcPartition greedy_wc_parts(const GcsModel& model, const Configuration& x,
                            const std::vector<std::string>& seed_order, RankTolerance tol) {
    std::vector<std::string> decl;
    for (const auto& e : model.entities()) decl.push_back(e.id);
    std::set<std::string> remaining(decl.begin(), decl.end());

    auto next_seed = [&]() -> std::string {
        for (const auto& id : seed_order)
            if (remaining.count(id)) return id;
        for (const auto& id : decl)
            if (remaining.count(id)) return id;
        return {};
    };
    for (const auto& id : seed_order) model.entity_index(id);

    WcPartition part;
    while (!remaining.empty()) {
        std::string seed = next_seed();
        std::set<std::string> grown{seed};
        if (!subset_is_well(model, x, grown, tol)) {
            part.leftover.push_back(seed);
            remaining.erase(seed);
            continue;
        }
        for (const auto& id : decl) {
            if (!remaining.count(id) || grown.count(id)) continue;
            std::set<std::string> candidate = grown;
            candidate.insert(id);
            if (subset_is_well(model, x, candidate, tol)) grown = std::move(candidate);
        }
        part.parts.emplace_back(grown.begin(), grown.end());
        for (const auto& id : grown) remaining.erase(id);
    }
    std::sort(part.leftover.begin(), part.leftover.end());
    return part;
}

WcPartition exact_max_wc_parts(const GcsModel& model, const Configuration& x, RankTolerance tol) {
    const int n = static_cast<int>(model.entities().size());
    if (n > kMaxExactEntities)
        throw ScaleError("exact part enumeration limited to " + std::to_string(kMaxExactEntities) +
                         " entities, got " + std::to_string(n));
    std::vector<std::string> decl;
    for (const auto& e : model.entities()) decl.push_back(e.id);

    std::set<std::string> remaining(decl.begin(), decl.end());
    WcPartition part;
    while (!remaining.empty()) {
        std::vector<std::string> pool(remaining.begin(), remaining.end());
        const int p = static_cast<int>(pool.size());
        std::vector<unsigned> masks;
        for (unsigned mask = 1; mask < (1u << p); ++mask) masks.push_back(mask);
        std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
            return __builtin_popcount(a) > __builtin_popcount(b);
        });
        bool committed = false;
        for (unsigned mask : masks) {
            std::set<std::string> subset;
            for (int i = 0; i < p; ++i)
                if (mask & (1u << i)) subset.insert(pool[i]);
            if (subset_is_well(model, x, subset, tol)) {
                part.parts.emplace_back(subset.begin(), subset.end());
                for (const auto& id : subset) remaining.erase(id);
                committed = true;
                break;
            }
        }
        if (!committed) {
            part.leftover.insert(part.leftover.end(), remaining.begin(), remaining.end());
            break;
        }
    }
    std::sort(part.leftover.begin(), part.leftover.end());
    return part;
}

} // namespace gcsa
