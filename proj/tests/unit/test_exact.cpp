#include <doctest.h>

#include <algorithm>
#include <random>

#include "kchow/errors.hpp"
#include "kchow/exact.hpp"

using namespace kchow;
using namespace kchow::exact;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

PolyT poly(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.push_back(Rat(c));
  return PolyT(v);
}

RatMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int rank_cap) {
  std::uniform_int_distribution<int> d(-3, 3);
  RatMatrix a(r, static_cast<std::size_t>(rank_cap)), b(static_cast<std::size_t>(rank_cap), c);
  for (std::size_t i = 0; i < r; ++i)
    for (int j = 0; j < rank_cap; ++j) a(i, static_cast<std::size_t>(j)) = d(rng);
  for (int i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < c; ++j) b(static_cast<std::size_t>(i), j) = make_rat(d(rng), 1 + std::abs(d(rng)));
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (int k = 0; k < rank_cap; ++k) m(i, j) += a(i, static_cast<std::size_t>(k)) * b(static_cast<std::size_t>(k), j);
  return m;
}

}  // namespace

TEST_CASE("rationals print and parse canonically") {
  CHECK(to_string(make_rat(6, -4)) == "-3/2");
  CHECK(to_string(Rat(5)) == "5");
  CHECK(parse_rat("3/2") == make_rat(3, 2));
  CHECK(parse_rat("0.5") == make_rat(1, 2));
  CHECK(parse_rat("-1.25e-3") == make_rat(-1, 800));
  CHECK(parse_rat(" 4 ") == Rat(4));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}

TEST_CASE("polynomials in t") {
  PolyT a = poly({0, 1, 1});  // t + t^2
  CHECK(a.degree() == 2);
  CHECK(a.valuation() == 1);
  CHECK(a.divide_by_t_power(1) == poly({1, 1}));
  CHECK_THROWS_AS(a.divide_by_t_power(2), std::domain_error);
  auto [q, r] = PolyT::divmod(poly({-1, 0, 1}), poly({-1, 1}));
  CHECK(q == poly({1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(poly({-1, 0, 1}), poly({1, 2, 1})) == poly({1, 1}));
  CHECK(primitive({poly({0, 2}), poly({0, 0, 4})}) == PolyVec{poly({1}), poly({0, 2})});
}

TEST_CASE("rank_kernel examples") {
  auto id = rank_kernel(RatMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.kernel_basis.empty());

  auto z = rank_kernel(RatMatrix(2, 3));
  CHECK(z.rank == 0);
  CHECK(z.kernel_basis.size() == 3);

  auto k = rank_kernel(RatMatrix::from_rows({rv({1, 2}), rv({2, 4})}, 2));
  CHECK(k.rank == 1);
  REQUIRE(k.kernel_basis.size() == 1);
  const RatVec& v = k.kernel_basis[0];
  CHECK(v[0] * -1 == v[1] * 2);  // proportional to (2, -1)
}

TEST_CASE("rank_kernel contract and permutation invariance (randomized)") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + trial % 5, c = 3 + trial % 6;
    const int cap = 1 + trial % 4;
    RatMatrix m = random_matrix(rng, r, c, cap);
    auto rk = rank_kernel(m);
    CHECK(rk.rank + rk.kernel_basis.size() == c);
    CHECK(rk.rank <= static_cast<std::size_t>(cap));
    for (const auto& v : rk.kernel_basis) CHECK(is_zero(m * v));
    CHECK(rank(RatMatrix::from_rows(rk.kernel_basis, c)) == rk.kernel_basis.size());

    std::vector<std::size_t> rows(r), cols(c);
    for (std::size_t i = 0; i < r; ++i) rows[i] = i;
    for (std::size_t j = 0; j < c; ++j) cols[j] = j;
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    RatMatrix p(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) p(i, j) = m(rows[i], cols[j]);
    CHECK(rank(p) == rk.rank);

    // Prefix ranks from the fraction-free profile agree with plain RREF.
    auto prof = column_rank_profile(m, cols);
    for (std::size_t len = 0; len <= c; ++len) {
      RatMatrix sub(r, len);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < len; ++j) sub(i, j) = m(i, cols[j]);
      const auto in_prefix = std::count_if(prof.begin(), prof.end(), [&](std::size_t x) { return x < len; });
      CHECK(rank(sub) == static_cast<std::size_t>(in_prefix));
    }
  }
}

TEST_CASE("inverse and spans") {
  RatMatrix a = RatMatrix::from_rows({rv({2, 1}), rv({1, 1})}, 2);
  RatMatrix inv = inverse(a);
  CHECK(inv * rv({2, 1}) == rv({1, 0}));
  CHECK_THROWS_AS(inverse(RatMatrix::from_rows({rv({1, 2}), rv({2, 4})}, 2)), std::domain_error);
  CHECK(same_span({rv({1, 1, 0}), rv({0, 1, 0})}, {rv({1, 0, 0}), rv({3, 2, 0})}, 3));
  CHECK_FALSE(same_span({rv({1, 1, 0})}, {rv({1, 0, 0})}, 3));
  CHECK(in_span({rv({1, 1, 0}), rv({0, 1, 0})}, rv({5, 0, 0})));
}

TEST_CASE("limit_subspace examples") {
  // span{(1, t)} -> span{(1, 0)}
  auto a = limit_subspace({{poly({1}), poly({0, 1})}});
  CHECK(same_span(a, {rv({1, 0})}, 2));

  // span{(1,1), (1,1+t)} -> whole plane
  auto b = limit_subspace({{poly({1}), poly({1})}, {poly({1}), poly({1, 1})}});
  CHECK(b.size() == 2);
  CHECK(same_span(b, {rv({1, 1}), rv({0, 1})}, 2));

  // x(x - t), xy, y(y - t) over the monomials (x^2, xy, y^2, x, y, 1)
  std::vector<PolyVec> c = {
      {poly({1}), poly({}), poly({}), poly({0, -1}), poly({}), poly({})},
      {poly({}), poly({1}), poly({}), poly({}), poly({}), poly({})},
      {poly({}), poly({}), poly({1}), poly({}), poly({0, -1}), poly({})},
  };
  auto lim = limit_subspace(c);
  CHECK(same_span(lim, {rv({1, 0, 0, 0, 0, 0}), rv({0, 1, 0, 0, 0, 0}), rv({0, 0, 1, 0, 0, 0})}, 6));

  // A relation that only appears after one division.
  auto d = limit_subspace({{poly({1}), poly({0, 1}), poly({})}, {poly({1}), poly({0, 1}), poly({0, 0, 1})}});
  CHECK(same_span(d, {rv({1, 0, 0}), rv({0, 0, 1})}, 3));

  CHECK_THROWS_AS(limit_subspace({{poly({1}), poly({0, 1})}, {poly({0, 1}), poly({0, 0, 1})}}), MalformedInput);
}

TEST_CASE("limit_subspace keeps dimension and ignores the Q(t)-basis (randomized)") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t dim = 2 + trial % 3, m = dim + 2;
    std::vector<PolyVec> basis(dim, PolyVec(m));
    for (auto& v : basis)
      for (auto& e : v) e = poly({d(rng), d(rng), d(rng)});
    if (rank(RatMatrix::from_rows({eval(basis[0], 5), eval(basis[1], 5)}, m)) < 2) continue;
    bool independent = true;
    {
      std::vector<RatVec> at;
      for (const auto& v : basis) at.push_back(eval(v, 7));
      independent = rank(RatMatrix::from_rows(at, m)) == dim;
    }
    if (!independent) continue;
    auto lim = limit_subspace(basis);
    CHECK(lim.size() == dim);

    // Mix with an invertible matrix over Q[t] (unit upper triangular).
    std::vector<PolyVec> mixed = basis;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        PolyT c = poly({d(rng), d(rng)});
        for (std::size_t k = 0; k < m; ++k) mixed[i][k] += c * basis[j][k];
      }
    CHECK(same_span(limit_subspace(mixed), lim, m));
  }
}

TEST_CASE("rational_function_kernel of the moved jets") {
  // Points (0,0), (t,0), (0,t) against z^2, zx, zy, x^2, xy, y^2.
  PolyT t = PolyT::t();
  PolyT t2 = t * t;
  std::vector<PolyVec> rows = {
      {poly({1}), poly({}), poly({}), poly({}), poly({}), poly({})},
      {poly({1}), t, poly({}), t2, poly({}), poly({})},
      {poly({1}), poly({}), t, poly({}), poly({}), t2},
  };
  auto k = rational_function_kernel(rows, 6);
  REQUIRE(k.size() == 3);
  for (const auto& v : k) {
    for (const auto& row : rows) {
      PolyT s;
      for (std::size_t j = 0; j < 6; ++j) s += row[j] * v[j];
      CHECK(s.is_zero());
    }
    CHECK(v == primitive(v));
  }
}

TEST_CASE("interpolate_poly examples") {
  std::vector<Sample> sq = {{1, 1}, {2, 4}, {3, 9}}, sq_v = {{4, 16}};
  CHECK(interpolate_poly(sq, 2, sq_v) == rv({0, 0, 1}));

  std::vector<Sample> lin = {{2, 3}, {3, 4}}, lin_v = {{5, 6}};
  CHECK(interpolate_poly(lin, 1, lin_v) == rv({1, 1}));

  std::vector<Sample> h = {{1, 3}, {2, 6}, {3, 10}}, h_v = {{4, 15}};
  CHECK(interpolate_poly(h, 2, h_v) == RatVec{Rat(1), make_rat(3, 2), make_rat(1, 2)});

  std::vector<Sample> bad_v = {{4, 17}};
  CHECK_THROWS_AS(interpolate_poly(sq, 2, bad_v), VerificationFailed);
  std::vector<Sample> none;
  CHECK_THROWS_AS(interpolate_poly(sq, 2, none), std::invalid_argument);
  std::vector<Sample> dup = {{1, 1}, {1, 1}, {3, 9}};
  CHECK_THROWS_AS(interpolate_poly(dup, 2, sq_v), std::invalid_argument);
}

TEST_CASE("interpolation reproduces every sample (randomized)") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t deg = 1 + trial % 4;
    RatVec coeffs;
    for (std::size_t i = 0; i <= deg; ++i) coeffs.push_back(make_rat(d(rng), 1 + std::abs(d(rng))));
    std::vector<Sample> s, v;
    for (long r = 1; r <= static_cast<long>(deg) + 1; ++r) s.push_back({r, eval_poly(coeffs, Rat(r))});
    v.push_back({static_cast<long>(deg) + 3, eval_poly(coeffs, Rat(static_cast<long>(deg) + 3))});
    RatVec got = interpolate_poly(s, deg, v);
    for (const auto& x : s) CHECK(eval_poly(got, Rat(x.r)) == x.value);
  }
}

TEST_CASE("least squares recovers an exact fit") {
  std::vector<Sample> s = {{1, 2}, {2, 5}, {3, 10}, {4, 17}};  // r^2 + 1
  CHECK(least_squares_poly(s, 2) == rv({1, 0, 1}));
  auto line = least_squares_poly(s, 1);
  CHECK(line == RatVec{Rat(-4), Rat(5)});
}

TEST_CASE("interpolate_quasi_poly") {
  // r^2 + 3 (-1)^r
  std::vector<Sample> s, v;
  for (long r = 1; r <= 4; ++r) s.push_back({r, Rat(r * r + (r % 2 ? -3 : 3))});
  for (long r = 5; r <= 6; ++r) v.push_back({r, Rat(r * r + (r % 2 ? -3 : 3))});
  auto q = interpolate_quasi_poly(s, 2, 0, v);
  CHECK(q.poly == RatVec{0, 0, 1});
  CHECK(q.alternating == RatVec{3});
  CHECK(eval_quasi_poly(q, 7) == 46);
  v.push_back({7, Rat(0)});
  CHECK_THROWS_AS(interpolate_quasi_poly(s, 2, 0, v), VerificationFailed);
  std::vector<Sample> even{{2, Rat(1)}, {4, Rat(2)}, {6, Rat(3)}, {8, Rat(4)}};
  CHECK_THROWS_AS(interpolate_quasi_poly(even, 2, 0, v), std::invalid_argument);
}
