#include "kchow/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kchow::exact {

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVec RatMatrix::row(std::size_t i) const {
  return RatVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVec RatMatrix::column(std::size_t j) const {
  RatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void RatMatrix::append_row(const RatVec& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector: size mismatch");
  RatVec out(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots) {
  std::vector<std::size_t> piv;
  std::size_t lead_row = 0;
  for (std::size_t j = 0; j < m.cols() && lead_row < m.rows(); ++j) {
    std::size_t p = lead_row;
    while (p < m.rows() && sgn(m(p, j)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    Rat inv = 1 / m(lead_row, j);
    for (std::size_t k = j; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || sgn(m(i, j)) == 0) continue;
      Rat f = m(i, j);
      for (std::size_t k = j; k < m.cols(); ++k)
        if (sgn(m(lead_row, k)) != 0) m(i, k) -= f * m(lead_row, k);
    }
    piv.push_back(j);
    ++lead_row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

RankKernel rank_kernel(const RatMatrix& m) {
  std::vector<std::size_t> pivots;
  RatMatrix r = rref(m, &pivots);
  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

namespace {

void remove_content(std::vector<Int>& row, std::size_t from) {
  Int g = 0;
  for (std::size_t k = from; k < row.size(); ++k) {
    if (sgn(row[k]) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[k].get_mpz_t());
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (std::size_t k = from; k < row.size(); ++k)
    if (sgn(row[k]) != 0) mpz_divexact(row[k].get_mpz_t(), row[k].get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::vector<std::size_t> column_rank_profile(const RatMatrix& m, std::span<const std::size_t> order) {
  const std::size_t ncols = order.size();
  std::vector<std::vector<Int>> active;
  active.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    bool nonzero = false;
    for (std::size_t j = 0; j < ncols; ++j) {
      const Rat& x = m(i, order[j]);
      if (sgn(x) == 0) continue;
      nonzero = true;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    if (!nonzero) continue;
    std::vector<Int> r(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      const Rat& x = m(i, order[j]);
      if (sgn(x) == 0) continue;
      r[j] = x.get_num() * (l / x.get_den());
    }
    remove_content(r, 0);
    active.push_back(std::move(r));
  }

  // Invariant: every active row vanishes on all columns before j.
  std::vector<std::size_t> pivots;
  Int a, b;
  for (std::size_t j = 0; j < ncols && !active.empty(); ++j) {
    std::size_t best = active.size();
    std::size_t best_bits = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (sgn(active[i][j]) == 0) continue;
      std::size_t bits = mpz_sizeinbase(active[i][j].get_mpz_t(), 2);
      if (best == active.size() || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (best == active.size()) continue;
    pivots.push_back(j);
    std::swap(active[best], active.back());
    std::vector<Int> pivot = std::move(active.back());
    active.pop_back();

    std::vector<std::vector<Int>> next;
    next.reserve(active.size());
    for (auto& r : active) {
      if (sgn(r[j]) != 0) {
        // r <- (p/g) r - (r_j/g) pivot, g = gcd(p, r_j)
        Int g;
        mpz_gcd(g.get_mpz_t(), pivot[j].get_mpz_t(), r[j].get_mpz_t());
        mpz_divexact(a.get_mpz_t(), pivot[j].get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), r[j].get_mpz_t(), g.get_mpz_t());
        for (std::size_t k = j; k < ncols; ++k) {
          if (sgn(pivot[k]) == 0) {
            if (sgn(r[k]) != 0) r[k] *= a;
            continue;
          }
          r[k] *= a;
          mpz_submul(r[k].get_mpz_t(), b.get_mpz_t(), pivot[k].get_mpz_t());
        }
        remove_content(r, j + 1);
      }
      bool zero = std::all_of(r.begin() + static_cast<std::ptrdiff_t>(j), r.end(), [](const Int& x) { return sgn(x) == 0; });
      if (!zero) next.push_back(std::move(r));
    }
    active = std::move(next);
  }
  return pivots;
}

std::size_t rank(const RatMatrix& m) {
  std::vector<std::size_t> order(m.cols());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return column_rank_profile(m, order).size();
}

std::vector<RatVec> span_basis(const std::vector<RatVec>& vectors, std::size_t dim) {
  std::vector<std::size_t> pivots;
  RatMatrix r = rref(RatMatrix::from_rows(vectors, dim), &pivots);
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(r.row(i));
  return out;
}

bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t dim) {
  return span_basis(a, dim) == span_basis(b, dim);
}

bool in_span(const std::vector<RatVec>& basis, const RatVec& v) {
  if (basis.empty()) return is_zero(v);
  std::vector<RatVec> ext = basis;
  ext.push_back(v);
  return rank(RatMatrix::from_rows(ext, v.size())) == rank(RatMatrix::from_rows(basis, v.size()));
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::domain_error("inverse: not square");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots;
  RatMatrix r = rref(aug, &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

}  // namespace kchow::exact
