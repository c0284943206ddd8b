#pragma once

// Jet conditions shared by the constant (Q) and moving (Q[t]) section spaces.

#include <cstddef>
#include <vector>

#include "kchow/hilbert.hpp"

namespace kchow::hilbert::detail {

/// All multi-indices of length `vars` with total degree < `order`, by total degree.
std::vector<Exponent> multi_indices_below(std::size_t vars, std::size_t order);

/// Hasse-derivative rows at the affine point whose local coordinates are `local`
/// (ambient indices `local_index`, chart coordinate set to 1).
template <class Scalar>
std::vector<std::vector<Scalar>> jet_rows(const std::vector<Scalar>& local, const std::vector<std::size_t>& local_index,
                                          const MonomialBasis& basis, std::size_t order) {
  const std::size_t d = basis.degree();
  const std::size_t vars = local.size();
  std::vector<std::vector<Scalar>> powers(vars, std::vector<Scalar>(d + 1));
  for (std::size_t l = 0; l < vars; ++l) {
    powers[l][0] = Scalar(Rat(1));
    for (std::size_t e = 1; e <= d; ++e) powers[l][e] = powers[l][e - 1] * local[l];
  }
  std::vector<std::vector<Rat>> binom(d + 1, std::vector<Rat>(d + 1));
  for (std::size_t a = 0; a <= d; ++a)
    for (std::size_t b = 0; b <= a; ++b) binom[a][b] = Rat(binomial(static_cast<long>(a), static_cast<long>(b)));

  std::vector<std::vector<Scalar>> rows;
  for (const auto& beta : multi_indices_below(vars, order)) {
    std::vector<Scalar> row(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const Exponent& m = basis[c];
      bool vanishes = false;
      for (std::size_t l = 0; l < vars; ++l)
        if (m[local_index[l]] < beta[l]) vanishes = true;
      if (vanishes) continue;
      Rat coeff = 1;
      for (std::size_t l = 0; l < vars; ++l) coeff *= binom[static_cast<std::size_t>(m[local_index[l]])][static_cast<std::size_t>(beta[l])];
      Scalar entry = Scalar(coeff);
      for (std::size_t l = 0; l < vars; ++l)
        entry = entry * powers[l][static_cast<std::size_t>(m[local_index[l]] - beta[l])];
      row[c] = entry;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kchow::hilbert::detail
