#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kchow/rat.hpp"

namespace kchow::exact {

/// Dense row-major matrix of canonical rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
  static RatMatrix from_rows(const std::vector<RatVec>& rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  RatVec row(std::size_t i) const;
  RatVec column(std::size_t j) const;
  void append_row(const RatVec& r);

  RatVec operator*(const RatVec& v) const;
  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<RatVec> kernel_basis;
};

/// Rank and a kernel basis read off the reduced row echelon form: one vector per
/// free column, with a 1 in that column.
RankKernel rank_kernel(const RatMatrix& m);

/// Reduced row echelon form; pivot columns are written to `pivots` when given.
RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);

/// Fraction-free elimination over the integers after clearing row denominators.
/// Visits columns in the given order and returns the positions (indices into
/// `order`) that carry a pivot: the greedy, lexicographically first column basis.
/// The rank of every prefix of `order` is the number of returned positions in it.
std::vector<std::size_t> column_rank_profile(const RatMatrix& m, std::span<const std::size_t> order);

std::size_t rank(const RatMatrix& m);

/// Canonical basis (nonzero RREF rows) of the span of the vectors.
std::vector<RatVec> span_basis(const std::vector<RatVec>& vectors, std::size_t dim);
bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t dim);
bool in_span(const std::vector<RatVec>& basis, const RatVec& v);

/// Throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& m);

}  // namespace kchow::exact
