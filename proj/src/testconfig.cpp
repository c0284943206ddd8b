#include "kchow/testconfig.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "kchow/detail/jets.hpp"
#include "kchow/errors.hpp"
#include "kchow/stability.hpp"

namespace kchow::testconfig {

using exact::PolyT;
using exact::RatMatrix;
using hilbert::MonomialBasis;

namespace {

std::size_t projective_dim(const WeightedCycle& z, const DiagonalOnePS& alpha) {
  if (!z.ambient.is_projective()) throw InputError("test configurations are built on P^n only");
  const std::size_t n = z.ambient.n1;
  if (alpha.size() != n + 1) throw DimensionMismatch("1-PS must have n+1 = " + std::to_string(n + 1) + " weights");
  return n;
}

std::vector<PolyVec> moving_jet_rows(const FatPointSpec& spec, const DiagonalOnePS& alpha, const MonomialBasis& basis) {
  const std::size_t n = basis.n();
  std::vector<PolyVec> rows;
  for (const auto& wp : spec.cycle.points) {
    const auto& p = wp.point();
    const std::int64_t mu = geometry::min_weight(p, alpha);
    std::size_t chart = 0;
    while (alpha[chart] != mu || sgn(p[chart]) == 0) ++chart;
    std::vector<PolyT> local;
    std::vector<std::size_t> local_index;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == chart) continue;
      local.push_back(sgn(p[i]) == 0 ? PolyT() : PolyT::monomial(p[i] / p[chart], static_cast<std::size_t>(alpha[i] - mu)));
      local_index.push_back(i);
    }
    const std::size_t order = spec.order_multiplier * static_cast<std::size_t>(wp.mult);
    for (auto& row : hilbert::detail::jet_rows<PolyT>(local, local_index, basis, order)) rows.push_back(std::move(row));
  }
  return rows;
}

// A fixed, reproducible "random" specialisation away from 0 and 1.
Rat probe_t() {
  std::mt19937_64 rng(0x6b63686f77ULL);
  std::uniform_int_distribution<long> num(2, 997), den(1, 991);
  const long p = num(rng), q = den(rng);
  return exact::make_rat(p, q) + 2;
}

std::int64_t pairing_of(const DiagonalOnePS& alpha, const hilbert::Exponent& m) { return hilbert::pairing(alpha, m); }

}  // namespace

SectionFamily moving_section_family(const FatPointSpec& spec, const DiagonalOnePS& alpha) {
  const std::size_t n = projective_dim(spec.cycle, alpha);
  if (spec.order_multiplier < 1) throw InputError("order multiplier r must be at least 1");
  MonomialBasis basis(n, spec.degree);
  auto rows = moving_jet_rows(spec, alpha, basis);

  SectionFamily f{n, spec.degree, alpha, exact::rational_function_kernel(rows, basis.size())};

  const std::size_t at_one = hilbert::h0_with_vanishing(spec);
  const Rat t = probe_t();
  RatMatrix m(0, basis.size());
  for (const auto& row : rows) m.append_row(exact::eval(row, t));
  const std::size_t at_t = basis.size() - exact::rank(m);
  if (f.basis.size() != at_one || f.basis.size() != at_t)
    throw RankDrop("generic dimension " + std::to_string(f.basis.size()) + ", at t=1: " + std::to_string(at_one) +
                   ", at t=" + exact::to_string(t) + ": " + std::to_string(at_t));
  return f;
}

std::vector<RatVec> central_fibre_sections(const SectionFamily& family) {
  std::vector<RatVec> u0 = exact::limit_subspace(family.basis);
  if (u0.size() != family.basis.size())
    throw VerificationFailed("limit has dimension " + std::to_string(u0.size()) + ", family has " +
                             std::to_string(family.basis.size()));
  try {
    hilbert::weight_block_dims(family.alpha, MonomialBasis(family.n, family.degree), u0);
  } catch (const SubspaceNotWeightHomogeneous& e) {
    throw NotWeightHomogeneous(std::string("central fibre sections: ") + e.what());
  }
  return u0;
}

WeightProfile initial_weight_profile(const FatPointSpec& spec, const DiagonalOnePS& alpha) {
  projective_dim(spec.cycle, alpha);
  MonomialBasis basis(spec.cycle.ambient.n1, spec.degree);
  RatMatrix j = hilbert::jet_vanishing_matrix(spec);

  std::vector<std::size_t> order(basis.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairing_of(alpha, basis[a]) < pairing_of(alpha, basis[b]);
  });
  const auto pivots = exact::column_rank_profile(j, order);
  std::set<std::size_t> pivot_set(pivots.begin(), pivots.end());

  WeightProfile out;
  for (std::size_t pos = 0; pos < order.size();) {
    const std::int64_t k = pairing_of(alpha, basis[order[pos]]);
    std::size_t free_cols = 0;
    for (; pos < order.size() && pairing_of(alpha, basis[order[pos]]) == k; ++pos)
      if (!pivot_set.count(pos)) ++free_cols;
    if (free_cols > 0) out[k] = free_cols;
  }
  return out;
}

WeightProfile limit_weight_profile(const FatPointSpec& spec, const DiagonalOnePS& alpha) {
  auto family = moving_section_family(spec, alpha);
  auto u0 = central_fibre_sections(family);
  return hilbert::weight_block_dims(alpha, MonomialBasis(family.n, family.degree), u0);
}

std::size_t profile_dimension(const WeightProfile& p) {
  std::size_t s = 0;
  for (const auto& [k, d] : p) s += d;
  return s;
}

Rat profile_trace(const WeightProfile& p) {
  Rat s = 0;
  for (const auto& [k, d] : p) s += Rat(hilbert::kSectionWeightSign * k) * static_cast<long>(d);
  return s;
}

std::vector<long> default_r_samples(std::size_t n) {
  std::vector<long> r;
  for (long k = 2; k <= static_cast<long>(n) + 5; ++k) r.push_back(k);
  return r;
}

DFResult df_invariant(const TestConfigSpec& spec) {
  const std::size_t n = projective_dim(spec.z, spec.alpha);
  if (spec.gamma < 1) throw InputError("gamma must be at least 1");
  std::vector<long> rs = spec.r_samples.empty() ? default_r_samples(n) : spec.r_samples;
  if (std::set<long>(rs.begin(), rs.end()).size() != rs.size()) throw InputError("r samples must be distinct");
  if (*std::min_element(rs.begin(), rs.end()) < 1) throw InputError("r samples must be positive");
  if (rs.size() < n + 4)
    throw InputError("need at least n+4 = " + std::to_string(n + 4) +
                     " r samples (n+2 to fit the traces, 2 held out)");

  DFResult res;
  res.gamma = spec.gamma;
  std::vector<exact::Sample> dims, traces;
  for (long r : rs) {
    FatPointSpec fp{spec.z, static_cast<std::size_t>(spec.gamma * r), static_cast<std::size_t>(r)};
    WeightProfile prof = initial_weight_profile(fp, spec.alpha);
    const std::size_t cols = MonomialBasis(n, fp.degree).size();
    const std::size_t conditions = hilbert::jet_condition_count(fp);
    const std::size_t dim = profile_dimension(prof);
    if (dim + conditions != cols)
      throw JetsNotSeparated("degree " + std::to_string(fp.degree) + " does not separate the order-" +
                             std::to_string(r) + " jets at Z: " + std::to_string(cols - dim) + " of " +
                             std::to_string(conditions) + " conditions independent");
    RSample s{r, fp.degree, dim, profile_trace(prof)};
    dims.push_back({r, Rat(static_cast<long>(dim))});
    traces.push_back({r, s.trace});
    res.samples.push_back(std::move(s));
  }

  std::span<const exact::Sample> d(dims), t(traces);
  RatVec h, tr;
  try {
    h = exact::interpolate_poly(d.first(n + 1), n, d.subspan(n + 1));
  } catch (const VerificationFailed& e) {
    throw PolynomialityFailed(std::string(e.what()) + " (dimensions, gamma=" + std::to_string(spec.gamma) + ")");
  }
  res.dimension_checks = dims.size() - (n + 1);
  try {
    tr = exact::interpolate_poly(t.first(n + 2), n + 1, t.subspan(n + 2));
    res.trace_checks = traces.size() - (n + 2);
  } catch (const VerificationFailed& e) {
    std::string why = e.what();
    bool fitted = false;
    for (std::size_t s = 0; s < n && !fitted && n + s + 4 <= traces.size(); ++s) {
      try {
        auto q = exact::interpolate_quasi_poly(t.first(n + s + 3), n + 1, s, t.subspan(n + s + 3));
        tr = q.poly;
        res.alternating_trace = q.alternating;
        res.trace_checks = traces.size() - (n + s + 3);
        fitted = true;
      } catch (const VerificationFailed& e2) {
        why = e2.what();
      } catch (const std::invalid_argument& e2) {
        why = e2.what();
      }
    }
    if (!fitted)
      throw PolynomialityFailed(why + " (traces, gamma=" + std::to_string(spec.gamma) +
                                "; enlarge gamma or the r range)");
  }
  res.central = ExpansionCoeffs{h[n], h[n - 1], tr[n + 1], tr[n]};

  const auto g = static_cast<std::size_t>(spec.gamma);
  res.lambda_gamma = -hilbert::section_trace(spec.alpha, n, g) /
                     (Rat(spec.gamma) * Rat(hilbert::binomial(static_cast<long>(g + n), static_cast<long>(n))));
  res.normalized = hilbert::lifting_shift(res.central, res.lambda_gamma * spec.gamma);
  res.F_exact = hilbert::futaki_from_coeffs(res.normalized);
  res.chow_weight = stability::chow_weight(geometry::chow_multiplicities(spec.z), spec.alpha);

  if (n >= 2) {
    const ExpansionCoeffs base = hilbert::base_coeffs(n, spec.alpha);
    res.predicted_central = hilbert::predicted_central_coeffs(spec.z, spec.alpha, spec.gamma, base).coeffs;
    const Rat shift = base.b0 / base.c0;
    Rat corr = 0;
    for (const auto& [q, members] : geometry::collision_clusters(spec.z, spec.alpha)) {
      Rat mass = 0;
      for (const auto& p : members) {
        Rat a = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) a *= p.mult;
        mass += a;
      }
      corr += (hilbert::fibre_weight(q, spec.alpha) - shift) * mass;
    }
    Rat gn = 1;
    for (std::size_t i = 0; i < n; ++i) gn *= spec.gamma;
    res.F_predicted_leading =
        hilbert::futaki_from_coeffs(base) * gn + corr * spec.gamma / (2 * hilbert::factorial(n - 2));
  }
  return res;
}

ExpansionReport expansion_comparison(const WeightedCycle& z, const DiagonalOnePS& alpha,
                                     const std::vector<long>& gammas, const std::vector<long>& r_samples) {
  const std::size_t n = projective_dim(z, alpha);
  if (n < 2) throw InputError("the expansion is stated for n >= 2");
  if (gammas.size() < 4) throw InputError("need at least 4 gamma values");

  ExpansionReport rep;
  std::vector<exact::Sample> fs;
  for (long g : gammas) {
    rep.results.push_back(df_invariant(TestConfigSpec{z, alpha, g, r_samples}));
    const DFResult& r = rep.results.back();
    fs.push_back({g, r.F_exact});
    CoeffDeviation dev{g, r.central, *r.predicted_central, {}};
    dev.deviation = ExpansionCoeffs{dev.fitted.c0 - dev.explicit_terms.c0, dev.fitted.c1 - dev.explicit_terms.c1,
                                    dev.fitted.b0 - dev.explicit_terms.b0, dev.fitted.b1 - dev.explicit_terms.b1};
    rep.deviations.push_back(std::move(dev));
  }
  rep.fit_degree = n;
  rep.fit = exact::least_squares_poly(fs, n);
  for (const auto& s : fs) rep.residuals.push_back(s.value - exact::eval_poly(rep.fit, Rat(s.r)));
  rep.leading_coefficient = rep.fit[n];
  const Rat ch = rep.results.front().chow_weight;
  // Reading the Chow term at level gamma (gamma * CH) puts it on gamma^n for n = 2.
  rep.expected_leading = -ch / (2 * hilbert::factorial(n - 2));
  rep.linear_fit = exact::least_squares_poly(fs, 1);
  rep.expected_slope = -ch / (2 * hilbert::factorial(n - 2));
  return rep;
}

ProbeDegree central_fibre_piece(const WeightedCycle& z, const DiagonalOnePS& alpha, std::size_t degree) {
  const std::size_t n = projective_dim(z, alpha);
  ProbeDegree out;
  out.degree = degree;
  const std::size_t cols = MonomialBasis(n, degree).size();
  out.sections = exact::span_basis(central_fibre_sections(moving_section_family(FatPointSpec{z, degree, 1}, alpha)), cols);

  auto annihilates = [&](const ProjectivePoint& q, std::size_t order) {
    WeightedCycle single{geometry::Ambient::projective(n), {geometry::WeightedPoint{{q}, static_cast<std::int64_t>(order)}}};
    RatMatrix j = hilbert::jet_vanishing_matrix(FatPointSpec{single, degree, 1});
    for (std::size_t i = 0; i < j.rows(); ++i)
      for (const auto& v : out.sections)
        if (sgn(exact::dot(j.row(i), v)) != 0) return false;
    return true;
  };

  WeightedCycle fat{geometry::Ambient::projective(n), {}};
  for (const auto& [q, members] : geometry::collision_clusters(z, alpha)) {
    ClusterDiagnostic c{q, members.size(), 0, 0};
    for (const auto& p : members) c.length += hilbert::fat_point_length(n, static_cast<std::size_t>(p.mult));
    while (c.vanishing_order <= degree && annihilates(q, c.vanishing_order + 1)) ++c.vanishing_order;
    if (c.vanishing_order > 0)
      fat.points.push_back(geometry::WeightedPoint{{q}, static_cast<std::int64_t>(c.vanishing_order)});
    out.clusters.push_back(std::move(c));
  }
  auto expected = exact::rank_kernel(hilbert::jet_vanishing_matrix(FatPointSpec{fat, degree, 1})).kernel_basis;
  out.fat_point_system = exact::same_span(expected, out.sections, cols);
  return out;
}

std::vector<ProbeDegree> central_fibre_cycle(const WeightedCycle& z, const DiagonalOnePS& alpha,
                                             const std::vector<std::size_t>& degrees) {
  std::vector<ProbeDegree> out;
  for (auto d : degrees) out.push_back(central_fibre_piece(z, alpha, d));
  return out;
}

}  // namespace kchow::testconfig
