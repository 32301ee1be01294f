#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcsa/linear.hpp"
#include "gcsa/model.hpp"

namespace gcsa {

struct ExpectedReport {
    int column_size = 0;
    int row_size = 0;
    int rank = 0;
    int kernel_dim = 0;
    int dor = 0;
    bool matched = false;
};

struct CorpusEntry {
    std::string name;
    std::variant<GcsModel, LinearSystem> payload;
    std::optional<ExpectedReport> expected;
};

/// Built-in example models and linear systems, with frozen expectations.
const std::vector<CorpusEntry>& corpus();

const CorpusEntry& corpus_entry(const std::string& name);

LinearSystem eq5_system();
LinearSystem eq6_system();
LinearSystem identity3_system();
GcsModel four_plane_model();      // homogeneous scheme
GcsModel two_line_model();
GcsModel crank_model();

} // namespace gcsa
