// Acceptance checks. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "kchow/balance.hpp"
#include "kchow/errors.hpp"
#include "kchow/hilbert.hpp"
#include "kchow/matrix.hpp"
#include "kchow/stability.hpp"
#include "kchow/testconfig.hpp"
#include "oracles.hpp"

using namespace kchow;
using exact::make_rat;
using exact::Rat;
using geometry::as_chow_cycle;
using geometry::DiagonalOnePS;
using geometry::make_cycle;
using geometry::ProjectivePoint;

namespace {

using Pts = std::vector<std::pair<std::vector<long>, std::int64_t>>;

struct Outcome {
  bool pass = false;
  std::string detail;
};


std::vector<std::vector<long>> seven_points() {
  return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
}

// Certificates produced in criterion 1, checked in criterion 2.
std::vector<stability::InstabilityCertificate> g_certificates;

Outcome criterion_search() {
  const auto pts = seven_points();
  std::size_t cases = 0, agree = 0;
  std::string first_bad;
  for (unsigned mask = 1; mask < (1u << pts.size()); ++mask) {
    if (__builtin_popcount(mask) > 4) continue;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (mask & (1u << i)) chosen.push_back(i);
    for (unsigned mults = 0; mults < (1u << chosen.size()); ++mults) {
      Pts z;
      for (std::size_t j = 0; j < chosen.size(); ++j) z.push_back({pts[chosen[j]], (mults >> j & 1u) ? 2 : 1});
      auto c = as_chow_cycle(make_cycle(2, z));
      auto verdict = stability::classify(c);
      auto search = stability::exhaustive_ops_search(c, 3);
      ++cases;
      if ((verdict.status == stability::Status::unstable) == (search.max_weight > 0)) {
        ++agree;
      } else if (first_bad.empty()) {
        first_bad = " first disagreement at mask " + std::to_string(mask) + "/" + std::to_string(mults);
      }
      if (verdict.certificate) g_certificates.push_back(*verdict.certificate);
    }
  }
  return {agree == cases, std::to_string(agree) + "/" + std::to_string(cases) + " configurations agree, " +
                              std::to_string(g_certificates.size()) + " unstable" + first_bad};
}

Outcome criterion_identity() {
  std::size_t ok = 0;
  for (const auto& c : g_certificates) {
    const long k = static_cast<long>(c.violation.subspace.dim);
    const Rat expected(static_cast<long>(c.n + 1) * c.violation.mass - c.total_mass * (k + 1));
    if (c.destabilizer.chow_weight == expected) ++ok;
  }
  return {!g_certificates.empty() && ok == g_certificates.size(),
          std::to_string(ok) + "/" + std::to_string(g_certificates.size()) + " certificates"};
}

// Unit points on the line x2 = 0 and on the conic x0 x2 = x1^2; no line through
// two conic points meets the first line at one of its points.
Outcome criterion_two_thirds() {
  const std::vector<std::pair<long, long>> above{{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1},
                                                 {6, 2}, {7, 1}, {7, 2}, {7, 3}, {8, 3}};
  const std::vector<std::pair<long, long>> below{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4},
                                                 {4, 3}, {4, 4}, {4, 5}, {5, 3}, {5, 4}};
  std::size_t ok = 0, total = 0;
  auto build = [](long on_line, long off_line) {
    Pts z;
    for (long b = 1; b <= on_line; ++b) z.push_back({{1, -b, 0}, 1});
    for (long a = 1; a <= off_line; ++a) z.push_back({{1, a, a * a}, 1});
    return as_chow_cycle(make_cycle(2, z));
  };
  const stability::Subspace line{{ProjectivePoint::of({1, -1, 0}), ProjectivePoint::of({1, -2, 0})}, {}, 1};
  auto line_weight = [&](const geometry::ChowCycle& c) {
    stability::Subspace v = line;
    for (std::size_t i = 0; i < c.points.size(); ++i)
      for (const auto& s : v.spanning)
        if (c.points[i].point == s) v.support_indices.push_back(i);
    return stability::destabilizer_from_subspace(c, v).chow_weight;
  };
  for (auto [l, o] : above) {
    auto c = build(l, o);
    ++total;
    if (stability::classify(c).status == stability::Status::unstable && line_weight(c) > 0) ++ok;
  }
  for (auto [l, o] : below) {
    auto c = build(l, o);
    ++total;
    if (stability::classify(c).status != stability::Status::unstable && line_weight(c) < 0) ++ok;
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " cases"};
}

Outcome criterion_hilbert() {
  std::size_t ok = 0, total = 0;
  for (long m = 1; m <= 6; ++m)
    for (long d = m - 1; d <= 15; ++d) {
      auto z = make_cycle(2, {{{1, 2, 3}, m}});
      const auto h = hilbert::h0_with_vanishing({z, static_cast<std::size_t>(d), 1});
      ++total;
      if (Rat(static_cast<long>(h)) == oracle::binom(d + 2, 2) - oracle::binom(m + 1, 2)) ++ok;
    }
  std::size_t coeff_ok = 0, coeff_total = 0;
  auto general = make_cycle(2, {{{1, 1, 1}, 1}, {{1, 2, 3}, 1}, {{1, -1, 2}, 1}});
  for (long g : {4L, 5L, 6L}) {
    auto r = testconfig::df_invariant({general, DiagonalOnePS{{1, 1, -2}}, g, {2, 3, 4, 5, 6, 7}});
    ++coeff_total;
    if (r.predicted_central && r.central.c0 == r.predicted_central->c0 && r.central.c1 == r.predicted_central->c1)
      ++coeff_ok;
  }
  return {ok == total && coeff_ok == coeff_total,
          std::to_string(ok) + "/" + std::to_string(total) + " single-point h0, " + std::to_string(coeff_ok) + "/" +
              std::to_string(coeff_total) + " gammas with exact c0', c1'"};
}

Outcome criterion_flat_limit() {
  auto z = make_cycle(2, {{{0, 0, 1}, 1}, {{1, 0, 1}, 1}, {{0, 1, 1}, 1}});
  const DiagonalOnePS w{{1, 1, 0}};
  hilbert::MonomialBasis b(2, 2);
  std::vector<exact::RatVec> target;
  for (hilbert::Exponent m : {hilbert::Exponent{2, 0, 0}, hilbert::Exponent{1, 1, 0}, hilbert::Exponent{0, 2, 0}}) {
    exact::RatVec v(b.size());
    v[b.index_of(m)] = 1;
    target.push_back(v);
  }
  auto limit = testconfig::central_fibre_sections(testconfig::moving_section_family({z, 2, 1}, w));
  const bool sections = exact::same_span(limit, target, b.size());
  auto pieces = testconfig::central_fibre_cycle(z, w, {2, 3});
  bool neighbourhood = pieces.size() == 2;
  for (const auto& p : pieces) {
    neighbourhood = neighbourhood && p.fat_point_system && p.clusters.size() == 1 &&
                    p.clusters[0].vanishing_order == 2 && p.clusters[0].limit == ProjectivePoint::of({0, 0, 1});
  }
  return {sections && neighbourhood, std::string("degree-2 limit ") + (sections ? "= " : "!= ") +
                                         "span{x^2, xy, y^2}; limit scheme " +
                                         (neighbourhood ? "is" : "is not") + " the first neighbourhood of [0:0:1]"};
}

Outcome criterion_lifting() {
  struct Case {
    std::size_t n;
    Pts pts;
    DiagonalOnePS w;
    long gamma;
  };
  const std::vector<Case> cases{
      {2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{1, 1, 0}, 1}}, DiagonalOnePS{{1, 1, -2}}, 4},
      {2, {{{1, 0, 0}, 2}}, DiagonalOnePS{{2, -1, -1}}, 4},
      {2, {{{0, 0, 1}, 1}, {{1, 0, 1}, 1}, {{0, 1, 1}, 1}}, DiagonalOnePS{{1, 1, 0}}, 3},
      {2, {{{1, 1, 1}, 1}, {{1, 2, 0}, 1}}, DiagonalOnePS{{1, 0, -1}}, 3},
      {1, {{{1, 0}, 1}, {{1, 1}, 1}}, DiagonalOnePS{{1, 0}}, 3},
  };
  std::size_t ok = 0;
  for (const auto& c : cases) {
    auto z = make_cycle(c.n, c.pts);
    const Rat base = testconfig::df_invariant({z, c.w, c.gamma, {}}).F_exact;
    bool same = true;
    for (std::int64_t s = -2; s <= 2; ++s)
      same = same && testconfig::df_invariant({z, c.w.shifted(s), c.gamma, {}}).F_exact == base;
    if (same) ++ok;
  }
  return {ok == cases.size(), std::to_string(ok) + "/" + std::to_string(cases.size()) + " cases invariant for c in -2..2"};
}

Outcome criterion_empty() {
  geometry::WeightedCycle empty{geometry::Ambient::projective(2), {}};
  const Rat a = testconfig::df_invariant({empty, DiagonalOnePS{{1, 1, -2}}, 1, {}}).F_exact;
  const Rat b = testconfig::df_invariant({empty, DiagonalOnePS{{2, -1, -1}}, 1, {}}).F_exact;
  return {a == 0 && b == 0, "F = " + exact::to_string(a) + ", " + exact::to_string(b)};
}

testconfig::ExpansionReport g_expansion;

Outcome criterion_expansion() {
  auto z = make_cycle(2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{1, 1, 0}, 1}});
  g_expansion = testconfig::expansion_comparison(z, DiagonalOnePS{{1, 1, -2}}, {4, 5, 6, 7, 8}, {});
  bool negative = true;
  std::ostringstream d;
  d << "F =";
  for (const auto& r : g_expansion.results) {
    negative = negative && r.F_exact < 0;
    d << " " << exact::to_string(r.F_exact);
  }
  const double lead = exact::to_double(g_expansion.leading_coefficient);
  const double want = exact::to_double(g_expansion.expected_leading);
  const bool close = std::abs(lead - want) <= 0.15 * std::abs(want);
  d << "; degree-2 fit gamma^2 coefficient " << lead << " vs " << want << " (15%)";
  d << "; line fit slope " << exact::to_double(g_expansion.linear_fit.at(1)) << " vs "
    << exact::to_double(g_expansion.expected_slope);
  return {negative && close, d.str()};
}

Outcome criterion_slack() {
  const auto& devs = g_expansion.deviations;
  if (devs.empty() || devs.front().gamma != 4) return {false, "no deviations"};
  const Rat bound = 2 * abs(devs.front().deviation.b0);
  bool ok = true;
  std::ostringstream d;
  d << "b0' deviations:";
  for (const auto& x : devs) {
    ok = ok && abs(x.deviation.b0) <= bound;
    d << " " << exact::to_string(x.deviation.b0);
  }
  return {ok, d.str()};
}

Outcome criterion_balance() {
  const std::vector<std::pair<std::size_t, Pts>> corpus{
      {1, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}},
      {1, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{1, -1}, 1}}},
      {1, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{1, -1}, 1}, {{1, 2}, 1}}},
      {2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{1, 1, 1}, 1}}},
      {2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{1, 1, 1}, 1}, {{1, 2, 3}, 1}}},
      {2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{1, 1, 1}, 1}, {{1, 2, 3}, 1}, {{1, -1, 2}, 1}}},
      {3, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, 1}, {{0, 0, 1, 0}, 1}, {{0, 0, 0, 1}, 1}, {{1, 1, 1, 1}, 1}}},
      {2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{1, 1, 0}, 1}}},
      {2, {{{1, 0, 0}, 3}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}}},
      {1, {{{1, 0}, 2}, {{0, 1}, 1}}},
      {2, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{1, 1, 0}, 1}, {{1, 2, 0}, 1}, {{0, 0, 1}, 1}}},
      {3, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, 1}, {{1, 1, 0, 0}, 1}, {{1, 2, 0, 0}, 1}, {{0, 0, 1, 0}, 1}}},
  };
  std::size_t stable = 0, unstable = 0, ok = 0, other = 0;
  std::string bad;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto c = as_chow_cycle(make_cycle(corpus[i].first, corpus[i].second));
    const auto status = stability::classify(c).status;
    auto flow = balance::balance_flow(balance::from_chow_cycle(c));
    bool good = false;
    if (status == stability::Status::stable) {
      ++stable;
      good = flow.report.status == balance::FlowStatus::converged && flow.report.residual_norm < 1e-8;
    } else if (status == stability::Status::unstable) {
      ++unstable;
      good = flow.report.status == balance::FlowStatus::diverged;
    } else {
      ++other;
      good = true;
    }
    if (good) ++ok;
    else bad += " item " + std::to_string(i) + " " + stability::to_string(status) + "/" + balance::to_string(flow.report.status);
  }
  std::size_t lengths = 0, length_total = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t a = 1; a <= 5; ++a) {
      ++length_total;
      if (hilbert::fat_point_length(n, a) == oracle::count_monomials_below(n, static_cast<int>(a))) ++lengths;
    }
  return {ok == corpus.size() && lengths == length_total,
          std::to_string(ok) + "/" + std::to_string(corpus.size()) + " items consistent (" + std::to_string(stable) +
              " stable, " + std::to_string(unstable) + " unstable, " + std::to_string(other) + " other);" + bad + " " +
              std::to_string(lengths) + "/" + std::to_string(length_total) + " fat point lengths"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"subspace criterion agrees with 1-PS search (7-point set, B=3)", criterion_search},
      {"destabilizer weight identity", criterion_identity},
      {"collinear two-thirds rule", criterion_two_thirds},
      {"fat point h0 and central c0', c1'", criterion_hilbert},
      {"flat limit of the colliding triple", criterion_flat_limit},
      {"Futaki invariance under weight shifts", criterion_lifting},
      {"F vanishes for the empty cycle", criterion_empty},
      {"collinear triple: F < 0 and degree-2 leading coefficient near -3/2", criterion_expansion},
      {"b0' deviation stays within twice its gamma=4 value", criterion_slack},
      {"balance flow matches classification; fat point lengths", criterion_balance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
