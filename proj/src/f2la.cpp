#include "mod2betti/f2la.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <string>

namespace mod2betti {

using Word = BitMatrix::Word;

namespace {

// Below this many words touched per pivot step the OpenMP fork costs more
// than the XORs it spreads out.
constexpr std::size_t kParallelWords = std::size_t{1} << 12;

Word tail_mask(std::size_t cols) {
  const std::size_t rem = cols % BitMatrix::kWordBits;
  return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
}

void xor_into(std::span<Word> dst, std::span<const Word> src, std::size_t from) {
  for (std::size_t w = from; w < dst.size(); ++w) dst[w] ^= src[w];
}

// Gaussian elimination restricted to pivots among the first `pivot_cols`
// columns. With `full` set, rows above each pivot are cleared as well
// (reduced echelon form). Returns the pivot columns in order.
std::vector<std::size_t> row_reduce(BitMatrix& m, std::size_t pivot_cols, bool full,
                                    bool parallel) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  std::size_t prow = 0;
  for (std::size_t c = 0; c < pivot_cols && prow < rows; ++c) {
    std::size_t found = prow;
    while (found < rows && !m.get(found, c)) ++found;
    if (found == rows) continue;
    if (found != prow) {
      auto a = m.row(prow);
      auto b = m.row(found);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const std::size_t w0 = c / BitMatrix::kWordBits;
    const std::span<const Word> pivot_row = m.row(prow);
    const std::size_t begin = full ? 0 : prow + 1;
    const auto n = static_cast<std::ptrdiff_t>(rows);
    const bool fork = parallel && (rows - begin) * (m.stride() - w0) >= kParallelWords;
#pragma omp parallel for schedule(static) if (fork)
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(begin); i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (ui != prow && m.get(ui, c)) xor_into(m.row(ui), pivot_row, w0);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      stride_((cols + kWordBits - 1) / kWordBits),
      data_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  if (m.stride_ == 0) return m;
  const Word mask = tail_mask(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = m.row(r);
    for (auto& w : row) w = rng();
    row.back() &= mask;
  }
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw StructuralError("row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " entries, expected " +
                            std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) {
        throw ValidationError("entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") is not 0 or 1");
      }
      m.set(r, c, v == 1);
    }
  }
  return m;
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

std::size_t BitMatrix::popcount() const noexcept {
  std::size_t n = 0;
  for (Word w : data_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix BitMatrix::slice(std::size_t r0, std::size_t nr, std::size_t c0,
                           std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw StructuralError("slice out of range");
  }
  BitMatrix s(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c)
      if (get(r0 + r, c0 + c)) s.set(r, c, true);
  return s;
}

std::vector<std::vector<int>> BitMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = get(r, c) ? 1 : 0;
  return out;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError("sum of " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()));
  }
  BitMatrix s = a;
  for (std::size_t r = 0; r < a.rows(); ++r) xor_into(s.row(r), b.row(r), 0);
  return s;
}

std::size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  return row_reduce(work, work.cols(), false, true).size();
}

std::size_t rank_serial(const BitMatrix& m) {
  BitMatrix work = m;
  return row_reduce(work, work.cols(), false, false).size();
}

std::size_t kernel_dim(const BitMatrix& m) { return m.cols() - rank(m); }

BitMatrix compose(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw StructuralError("compose: " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()));
  }
  BitMatrix out(a.rows(), b.cols());
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
  const bool fork = a.rows() * b.stride() * a.cols() >= kParallelWords * 64;
#pragma omp parallel for schedule(static) if (fork)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    auto dst = out.row(ui);
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.get(ui, k)) xor_into(dst, b.row(k), 0);
  }
  return out;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.get(i, j)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b.get(k, l)) out.set(i * b.rows() + k, j * b.cols() + l, true);
    }
  return out;
}

BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw StructuralError("vstack: column counts differ");
  BitMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) xor_into(out.row(r), top.row(r), 0);
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    xor_into(out.row(top.rows() + r), bottom.row(r), 0);
  return out;
}

BitMatrix hstack(const BitMatrix& left, const BitMatrix& right) {
  if (left.rows() != right.rows()) throw StructuralError("hstack: row counts differ");
  return vstack(left.transpose(), right.transpose()).transpose();
}

BitMatrix block_assemble(const BlockGrid& blocks, std::span<const std::size_t> row_dims,
                         std::span<const std::size_t> col_dims) {
  if (blocks.size() != row_dims.size()) {
    throw StructuralError("block grid has " + std::to_string(blocks.size()) +
                          " block rows, expected " + std::to_string(row_dims.size()));
  }
  std::vector<std::size_t> row_off(row_dims.size() + 1, 0);
  std::vector<std::size_t> col_off(col_dims.size() + 1, 0);
  for (std::size_t i = 0; i < row_dims.size(); ++i) row_off[i + 1] = row_off[i] + row_dims[i];
  for (std::size_t j = 0; j < col_dims.size(); ++j) col_off[j + 1] = col_off[j] + col_dims[j];

  BitMatrix out(row_off.back(), col_off.back());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != col_dims.size()) {
      throw StructuralError("block row " + std::to_string(i) + " has " +
                            std::to_string(blocks[i].size()) + " slots, expected " +
                            std::to_string(col_dims.size()));
    }
    for (std::size_t j = 0; j < col_dims.size(); ++j) {
      if (!blocks[i][j]) continue;
      const BitMatrix& b = *blocks[i][j];
      if (b.rows() != row_dims[i] || b.cols() != col_dims[j]) {
        throw StructuralError("block (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()) + ", slot is " +
                              std::to_string(row_dims[i]) + "x" + std::to_string(col_dims[j]));
      }
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (b.get(r, c)) out.set(row_off[i] + r, col_off[j] + c, true);
    }
  }
  return out;
}

BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    BitMatrix m = BitMatrix::random(n, n, rng);
    if (rank(m) == n) return m;
  }
}

BitMatrix synth_with_rank(std::size_t rows, std::size_t cols, std::size_t r,
                          std::uint64_t seed) {
  if (r > std::min(rows, cols)) {
    throw ValidationError("rank " + std::to_string(r) + " exceeds min(" +
                          std::to_string(rows) + "," + std::to_string(cols) + ")");
  }
  BitMatrix canonical(rows, cols);
  for (std::size_t i = 0; i < r; ++i) canonical.set(i, i, true);
  if (seed == 0) return canonical;
  std::mt19937_64 rng(seed);
  const BitMatrix p = random_invertible(rows, rng);
  const BitMatrix q = random_invertible(cols, rng);
  return compose(compose(p, canonical), q);
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  BitMatrix aug = hstack(m, BitMatrix::identity(n));
  if (row_reduce(aug, n, true, true).size() != n) return std::nullopt;
  return aug.slice(0, n, n, n);
}

Echelon reduced_echelon(const BitMatrix& m) {
  Echelon e{m, {}};
  e.pivot_cols = row_reduce(e.reduced, m.cols(), true, true);
  return e;
}

RankNormalForm rank_normal_form(const BitMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  BitMatrix aug = hstack(m, BitMatrix::identity(rows));
  const auto pivots = row_reduce(aug, cols, true, true);
  const std::size_t k = pivots.size();

  RankNormalForm out;
  out.rank = k;
  out.row_transform = aug.slice(0, rows, cols, rows);

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  BitMatrix q(cols, cols);
  for (std::size_t j = 0; j < k; ++j) q.set(pivots[j], j, true);
  std::size_t j = k;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    q.set(c, j, true);
    for (std::size_t i = 0; i < k; ++i)
      if (aug.get(i, c)) q.set(pivots[i], j, true);
    ++j;
  }
  out.col_transform = std::move(q);
  return out;
}

BitMatrix kernel_basis(const BitMatrix& m) {
  const RankNormalForm nf = rank_normal_form(m);
  return nf.col_transform.slice(0, m.cols(), nf.rank, m.cols() - nf.rank);
}

}  // namespace mod2betti
