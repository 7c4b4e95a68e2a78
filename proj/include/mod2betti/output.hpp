#pragma once

// Tables rendered as markdown, csv or json.

#include <string>
#include <vector>

#include "mod2betti/betti.hpp"

namespace mod2betti {

enum class Format { markdown, csv, json };
Format parse_format(const std::string& s);

/// Cells are kept as text; json emits integer-looking cells as numbers.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

std::string render(const std::vector<Table>& tables, Format f);

/// Degree-per-row table of one Betti vector.
Table betti_rows(const BettiTable& t, const std::string& title);

/// Side-by-side columns for g = 1..max_genus. Half columns (degrees
/// 0..3g-2) unless `full`; the remaining degrees follow by duality.
Table half_column_table(int max_genus, Field f, bool full);

}  // namespace mod2betti
