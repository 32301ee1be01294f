#pragma once

#include <set>
#include <string>
#include <vector>

#include "gcsa/rank.hpp"

namespace gcsa {

enum class GroupMode { FullBasis, Support };

struct DependencyGroup {
    std::vector<int> rows; // sorted ascending
    enum class Kind { FullBasis, Support, Circuit } kind = Kind::FullBasis;
};

/// Maximal independent row set grown greedily from the seed, scanning rows in
/// the given order (default: natural order wrapping around from the seed).
std::vector<int> greedy_max_independent(const MatrixXd& J, int seed_row,
                                        const std::vector<int>& order = {},
                                        RankTolerance tol = {});

/// One dependency group per row outside the greedy basis. FullBasis mode
/// reports the whole basis plus the dependent row; Support mode keeps only
/// basis rows with non-negligible combination coefficients.
std::vector<DependencyGroup> greedy_dependency_groups(const MatrixXd& J, int seed_row,
                                                      GroupMode mode,
                                                      const std::vector<int>& order = {},
                                                      RankTolerance tol = {});

/// Complete enumeration of circuits (minimal dependent row sets) of size up
/// to max_size, by increasing subset size with superset pruning.
std::vector<DependencyGroup> exact_minimal_dependency_groups(const MatrixXd& J, int max_size,
                                                             RankTolerance tol = {});

/// Sub-model induced by an entity subset: those entities plus every
/// constraint whose refs all lie inside the subset.
GcsModel induced_subsystem(const GcsModel& model, const std::set<std::string>& entities);

/// Restriction of a packed configuration to an induced sub-model's columns.
Configuration restrict_configuration(const GcsModel& model, const Configuration& x,
                                     const GcsModel& sub);

struct WcPartition {
    std::vector<std::vector<std::string>> parts; // each sorted; construction order
    std::vector<std::string> leftover;           // entities in no well-constrained part
};

/// Greedy maximal well-constrained part detection. Seeds are taken from
/// seed_order (falling back to declaration order); growth tries entities in
/// declaration order and keeps those whose induced subsystem stays
/// well-constrained under the DOR criteria.
WcPartition greedy_wc_parts(const GcsModel& model, const Configuration& x,
                            const std::vector<std::string>& seed_order = {},
                            RankTolerance tol = {});

/// Exact oracle: enumerates entity subsets in decreasing size, committing the
/// largest well-constrained subset among the remaining entities each round.
WcPartition exact_max_wc_parts(const GcsModel& model, const Configuration& x,
                               RankTolerance tol = {});

/// Well-constrainedness of an induced subsystem at the restricted witness.
bool subset_is_well(const GcsModel& model, const Configuration& x,
                    const std::set<std::string>& entities, RankTolerance tol = {});

} // namespace gcsa
