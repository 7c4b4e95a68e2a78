#pragma once

// Values as printed in the source tables, kept verbatim for golden
// comparisons. Nothing here is computed.

#include <cstddef>
#include <vector>

#include "mod2betti/betti.hpp"

namespace mod2betti {

/// Half columns of the framed Betti tables for g = 1..6, degrees 0..3g-2.
std::vector<std::vector<std::size_t>> printed_half_columns(Field f);

/// Rows of the 2+2 table, r = 0..21.
struct PrintedSplitRow {
  long r = 0;
  std::size_t h = 0;
  std::size_t coker = 0;
  std::size_t ker = 0;
};
std::vector<PrintedSplitRow> printed_split22_table();

}  // namespace mod2betti
