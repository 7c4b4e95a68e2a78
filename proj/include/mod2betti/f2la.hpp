#pragma once

// Dense linear algebra over the two-element field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mod2betti/errors.hpp"

namespace mod2betti {

/// Row-major, bit-packed matrix over GF(2). Bits past `cols()` in the last
/// word of every row are kept zero.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static BitMatrix identity(std::size_t n);
  static BitMatrix random(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
  /// Rows given as 0/1 integers; all rows must have the same length.
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t stride() const noexcept { return stride_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  [[nodiscard]] bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept {
    Word& w = data_[r * stride_ + c / kWordBits];
    const Word bit = Word{1} << (c % kWordBits);
    w = v ? (w | bit) : (w & ~bit);
  }

  [[nodiscard]] std::span<const Word> row(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  [[nodiscard]] std::span<Word> row(std::size_t r) noexcept {
    return {data_.data() + r * stride_, stride_};
  }

  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] std::size_t popcount() const noexcept;
  [[nodiscard]] BitMatrix transpose() const;
  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  [[nodiscard]] BitMatrix slice(std::size_t r0, std::size_t nr, std::size_t c0,
                                std::size_t nc) const;
  [[nodiscard]] std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);

/// Rank by row reduction. Rows below the pivot are cleared in parallel
/// once the matrix is large enough to amortize the fork.
std::size_t rank(const BitMatrix& m);

/// Serial reference for `rank`, same pivot order, no threading.
std::size_t rank_serial(const BitMatrix& m);

std::size_t kernel_dim(const BitMatrix& m);

/// Matrix product a*b over GF(2).
BitMatrix compose(const BitMatrix& a, const BitMatrix& b);

/// Kronecker product a (x) b.
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom);
BitMatrix hstack(const BitMatrix& left, const BitMatrix& right);

/// Grid of blocks; an empty optional is a zero block. blocks[i][j] occupies
/// row slot i and column slot j.
using BlockGrid = std::vector<std::vector<std::optional<BitMatrix>>>;
BitMatrix block_assemble(const BlockGrid& blocks, std::span<const std::size_t> row_dims,
                         std::span<const std::size_t> col_dims);

/// Matrix with exactly `r` independent columns. seed 0 is the canonical form
/// (identity block top-left); other seeds scramble it by random invertible
/// row and column transforms.
BitMatrix synth_with_rank(std::size_t rows, std::size_t cols, std::size_t r,
                          std::uint64_t seed);

std::optional<BitMatrix> inverse(const BitMatrix& m);

BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng);

/// Reduced row echelon form. Pivots are chosen leftmost column first,
/// topmost available row.
struct Echelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};
Echelon reduced_echelon(const BitMatrix& m);

/// Invertible P (rows x rows) and Q (cols x cols) such that
/// P * m * Q = [[I_rank, 0], [0, 0]].
struct RankNormalForm {
  BitMatrix row_transform;
  BitMatrix col_transform;
  std::size_t rank = 0;
};
RankNormalForm rank_normal_form(const BitMatrix& m);

/// Columns spanning the null space of m (cols x kernel_dim).
BitMatrix kernel_basis(const BitMatrix& m);

}  // namespace mod2betti
