#include "mod2betti/printed.hpp"

namespace mod2betti {

std::vector<std::vector<std::size_t>> printed_half_columns(Field f) {
  if (f == Field::F2) {
    return {
        {1, 1},
        {1, 0, 1, 5, 5},
        {1, 0, 1, 6, 1, 7, 22, 22},
        {1, 0, 1, 8, 1, 8, 29, 9, 37, 93, 93},
        {1, 0, 1, 10, 1, 10, 46, 10, 46, 131, 56, 176, 386, 386},
        {1, 0, 1, 12, 1, 12, 67, 12, 67, 232, 67, 233, 574, 299, 794, 1586, 1586},
    };
  }
  return {
      {1, 0},
      {1, 0, 1, 4, 0},
      {1, 0, 1, 6, 1, 6, 15, 0},
      {1, 0, 1, 8, 1, 8, 29, 8, 28, 56, 0},
      {1, 0, 1, 10, 1, 10, 46, 10, 46, 130, 45, 120, 210, 0},
      {1, 0, 1, 12, 1, 12, 67, 12, 67, 232, 67, 232, 561, 220, 495, 792, 0},
  };
}

std::vector<PrintedSplitRow> printed_split22_table() {
  const std::size_t h[] = {1, 0, 1, 8, 1, 8, 29, 9, 37, 93, 93, 93, 93, 37, 9, 29, 8, 1, 8, 1, 0, 1};
  const std::size_t cok[] = {1, 0, 1, 8, 1, 8, 29, 8, 29, 68, 85, 68, 85, 20, 1, 12, 0, 0, 0, 0, 0, 0};
  const std::size_t ker[] = {0, 0, 0, 0, 0, 0, 1, 8, 25, 8, 25, 8, 17, 8, 17, 8, 1, 8, 1, 0, 1, 0};
  std::vector<PrintedSplitRow> out;
  for (long r = 0; r < 22; ++r) {
    const auto i = static_cast<std::size_t>(r);
    out.push_back({r, h[i], cok[i], ker[i]});
  }
  return out;
}

}  // namespace mod2betti
