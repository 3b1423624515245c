#include <bit>

#include "suzuki/field.hpp"

namespace suzuki {

BinMat::BinMat(int rows, int cols)
    : rows_(rows), cols_(cols), rows_bits_(static_cast<std::size_t>(rows)) {
  if (rows < 0 || cols < 0 || cols > 64) throw FieldError("bad BinMat shape");
}

BinMat BinMat::identity(int n) {
  BinMat m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BinMat::set(int r, int c, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << c;
  auto& row = rows_bits_[static_cast<std::size_t>(r)];
  row = v ? (row | bit) : (row & ~bit);
}

void BinMat::set_row(int r, std::uint64_t bits) {
  const std::uint64_t mask = cols_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cols_) - 1;
  rows_bits_[static_cast<std::size_t>(r)] = bits & mask;
}

BinMat operator*(const BinMat& a, const BinMat& b) {
  if (a.cols_ != b.rows_) throw FieldError("BinMat shape mismatch");
  BinMat out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) out.rows_bits_[static_cast<std::size_t>(i)] = b.left_apply(a.row(i));
  return out;
}

std::uint64_t BinMat::left_apply(std::uint64_t v) const {
  std::uint64_t out = 0;
  for (; v; v &= v - 1) out ^= rows_bits_[static_cast<std::size_t>(std::countr_zero(v))];
  return out;
}

std::uint64_t BinMat::right_apply(std::uint64_t v) const {
  std::uint64_t out = 0;
  for (int i = 0; i < rows_; ++i) {
    if (std::popcount(row(i) & v) & 1) out |= std::uint64_t{1} << i;
  }
  return out;
}

BinMat bin_invert(const BinMat& m) {
  if (m.rows() != m.cols()) throw FieldError("inverting a non-square matrix");
  const int n = m.rows();
  BinMat work = m;
  BinMat inv = BinMat::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && !work.get(pivot, col)) ++pivot;
    if (pivot == n) throw FieldError("singular binary matrix");
    if (pivot != col) {
      const auto wr = work.row(pivot), ir = inv.row(pivot);
      work.set_row(pivot, work.row(col));
      inv.set_row(pivot, inv.row(col));
      work.set_row(col, wr);
      inv.set_row(col, ir);
    }
    for (int r = 0; r < n; ++r) {
      if (r != col && work.get(r, col)) {
        work.set_row(r, work.row(r) ^ work.row(col));
        inv.set_row(r, inv.row(r) ^ inv.row(col));
      }
    }
  }
  return inv;
}

std::uint64_t bin_solve(const BinMat& m, std::uint64_t v) {
  return bin_invert(m).right_apply(v);
}

}  // namespace suzuki
