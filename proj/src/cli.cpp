#include "kchow/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "kchow/errors.hpp"
#include "kchow/hilbert.hpp"
#include "kchow/stability.hpp"
#include "kchow/testconfig.hpp"

namespace kchow::cli {

using exact::Rat;
using exact::RatVec;
using exact::to_string;
using geometry::Ambient;
using geometry::ChowCycle;
using geometry::DiagonalOnePS;
using geometry::ProjectivePoint;
using geometry::WeightedCycle;

Command parse_command(const std::string& name) {
  static const std::pair<const char*, Command> names[] = {
      {"check", Command::check},     {"destabilize", Command::destabilize}, {"chow-weight", Command::chow_weight},
      {"df", Command::df},           {"expansion", Command::expansion},     {"limit", Command::limit},
      {"balance", Command::balance}};
  for (const auto& [s, c] : names)
    if (name == s) return c;
  throw InputError("unknown command '" + name + "'");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::check:
      return "check";
    case Command::destabilize:
      return "destabilize";
    case Command::chow_weight:
      return "chow-weight";
    case Command::df:
      return "df";
    case Command::expansion:
      return "expansion";
    case Command::limit:
      return "limit";
    case Command::balance:
      return "balance";
  }
  return "?";
}

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  long a = 0, b = 0;
  try {
    if (dots == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    a = std::stol(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    b = std::stol(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw InputError("expected a range a..b, got '" + text + "'");
  }
  if (a > b) throw InputError("empty range '" + text + "'");
  return {a, b};
}

// ---------------------------------------------------------------- parsing

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw SchemaError("input " + (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string line_col(const std::string& doc, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

long get_int(const Json& v, const std::string& where, long min) {
  if (!v.is_number_integer()) schema(where, "expected an integer");
  const long x = v.get<long>();
  if (x < min) schema(where, "must be at least " + std::to_string(min));
  return x;
}

Rat parse_coord(const Json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      return exact::parse_rat(s);
    } catch (const std::invalid_argument&) {
      throw NonRationalCoordinate("input " + where + ": not a rational number: \"" + s + "\"");
    }
  }
  if (v.is_number_integer()) return Rat(exact::Int(v.dump()));
  if (v.is_number_float())
    throw NonRationalCoordinate("input " + where + ": write non-integer coordinates as strings such as \"3/2\"");
  schema(where, "expected a rational string");
}

bool is_complex_pair(const Json& v) { return v.is_array() && v.size() == 2; }

RatVec parse_coords(const Json& v, std::size_t expected, const std::string& where) {
  if (!v.is_array()) schema(where, "expected an array of coordinates");
  if (v.size() != expected)
    throw DimensionMismatch("input " + where + ": expected " + std::to_string(expected) + " coordinates, got " +
                            std::to_string(v.size()));
  RatVec out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    if (is_complex_pair(v[i])) throw NonRationalCoordinate("input " + w + ": complex coordinate outside `balance`");
    out.push_back(parse_coord(v[i], w));
  }
  return out;
}

Ambient parse_ambient(const Json& doc) {
  if (!doc.contains("ambient")) schema("/ambient", "missing");
  const Json& a = doc["ambient"];
  if (!a.is_object() || a.size() != 1) schema("/ambient", "expected {\"projective\": n} or {\"product\": [n1, n2]}");
  if (a.contains("projective")) return Ambient::projective(static_cast<std::size_t>(get_int(a["projective"], "/ambient/projective", 1)));
  if (a.contains("product")) {
    const Json& p = a["product"];
    if (!p.is_array() || p.size() != 2) schema("/ambient/product", "expected [n1, n2]");
    return Ambient::product(static_cast<std::size_t>(get_int(p[0], "/ambient/product/0", 1)),
                            static_cast<std::size_t>(get_int(p[1], "/ambient/product/1", 1)));
  }
  schema("/ambient", "expected key \"projective\" or \"product\"");
}

DiagonalOnePS parse_weights(const Json& doc, const Ambient& amb) {
  Json w = doc["weights"];
  if (w.is_string()) {
    try {
      w = Json::parse(w.get<std::string>());
    } catch (const Json::parse_error&) {
      schema("/weights", "string does not hold a JSON array of integers");
    }
  }
  if (!w.is_array()) schema("/weights", "expected an array of integers");
  DiagonalOnePS out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string where = "/weights/" + std::to_string(i);
    if (!w[i].is_number_integer()) schema(where, "expected an integer");
    out.weights.push_back(w[i].get<std::int64_t>());
  }
  const std::size_t expected = amb.is_projective() ? amb.n1 + 1 : amb.n1 + amb.n2 + 2;
  if (out.size() != expected)
    throw DimensionMismatch("input /weights: expected " + std::to_string(expected) + " weights, got " +
                            std::to_string(out.size()));
  return out;
}

balance::Cycle parse_complex(const Json& pts, std::size_t n) {
  balance::Cycle c{n, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "/points/" + std::to_string(i) + "/coords";
    const Json& coords = pts[i]["coords"];
    if (!coords.is_array() || coords.size() != n + 1)
      throw DimensionMismatch("input " + where + ": expected " + std::to_string(n + 1) + " coordinates");
    balance::CVec v(static_cast<Eigen::Index>(n + 1));
    for (std::size_t j = 0; j <= n; ++j) {
      const std::string w = where + "/" + std::to_string(j);
      if (is_complex_pair(coords[j]))
        v(static_cast<Eigen::Index>(j)) = {exact::to_double(parse_coord(coords[j][0], w + "/0")),
                                           exact::to_double(parse_coord(coords[j][1], w + "/1"))};
      else
        v(static_cast<Eigen::Index>(j)) = exact::to_double(parse_coord(coords[j], w));
    }
    if (v.norm() == 0) throw ZeroPoint("input " + where + ": zero vector");
    const long mult = pts[i].contains("mult") ? get_int(pts[i]["mult"], "/points/" + std::to_string(i) + "/mult", 1) : 1;
    c.points.push_back({v, static_cast<double>(mult)});
  }
  return c;
}

}  // namespace

ParsedInput parse_input(const std::string& document, bool allow_complex) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw SchemaError("input is not valid JSON (" + line_col(document, e.byte) + ")");
  }
  if (!doc.is_object()) schema("", "expected a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "ambient" && key != "points" && key != "weights") schema("/" + key, "unknown field");

  ParsedInput out;
  const Ambient amb = parse_ambient(doc);
  out.cycle.ambient = amb;
  if (!doc.contains("points")) schema("/points", "missing");
  const Json& pts = doc["points"];
  if (!pts.is_array()) schema("/points", "expected an array");

  bool complex = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "/points/" + std::to_string(i);
    if (!pts[i].is_object()) schema(where, "expected {\"coords\": [...], \"mult\": k}");
    for (const auto& [key, value] : pts[i].items())
      if (key != "coords" && key != "mult") schema(where + "/" + key, "unknown field");
    if (!pts[i].contains("coords")) schema(where + "/coords", "missing");
    if (amb.is_projective() && pts[i]["coords"].is_array())
      for (const auto& c : pts[i]["coords"]) complex = complex || is_complex_pair(c);
  }
  if (complex) {
    if (!allow_complex) throw NonRationalCoordinate("complex coordinates are accepted by `balance` only");
    out.complex_points = parse_complex(pts, amb.n1);
  } else {
    std::vector<geometry::RawPoint> raw;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string where = "/points/" + std::to_string(i);
      geometry::RawPoint rp;
      rp.mult = pts[i].contains("mult") ? get_int(pts[i]["mult"], where + "/mult", 1) : 1;
      const Json& c = pts[i]["coords"];
      if (amb.is_projective()) {
        rp.factors.push_back(parse_coords(c, amb.n1 + 1, where + "/coords"));
      } else {
        if (!c.is_array() || c.size() != 2 || !c[0].is_array())
          schema(where + "/coords", "expected [[first factor], [second factor]]");
        rp.factors.push_back(parse_coords(c[0], amb.n1 + 1, where + "/coords/0"));
        rp.factors.push_back(parse_coords(c[1], amb.n2 + 1, where + "/coords/1"));
      }
      for (const auto& f : rp.factors)
        if (exact::is_zero(f)) throw ZeroPoint("input " + where + ": zero vector");
      raw.push_back(std::move(rp));
    }
    out.cycle = geometry::normalize_cycle(amb, raw);
  }
  if (doc.contains("weights")) out.weights = parse_weights(doc, amb);
  return out;
}

// ---------------------------------------------------------------- emitting

namespace {

Json rat_list(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json int_list(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json coeffs_json(const hilbert::ExpansionCoeffs& e) {
  return Json{{"c0", to_string(e.c0)}, {"c1", to_string(e.c1)}, {"b0", to_string(e.b0)}, {"b1", to_string(e.b1)}};
}

Json chow_cycle_json(const ChowCycle& z) {
  Json a = Json::array();
  for (const auto& p : z.points) a.push_back(Json{{"coords", rat_list(p.point.coords())}, {"mass", p.mass}});
  return a;
}

Json subspace_json(const stability::SubspaceRatio& s) {
  Json span = Json::array();
  for (const auto& p : s.subspace.spanning) span.push_back(rat_list(p.coords()));
  return Json{{"dim", s.subspace.dim}, {"spanning", span}, {"mass", s.mass}, {"ratio", to_string(s.ratio)}};
}

Json matrix_columns(const exact::RatMatrix& m) {
  Json cols = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(rat_list(m.column(c)));
  return cols;
}

Json certificate_json(const stability::InstabilityCertificate& c, const ChowCycle& z) {
  const auto& v = c.violation;
  const Rat identity = Rat(static_cast<long>(c.n + 1) * v.mass - c.total_mass * static_cast<long>(v.subspace.dim + 1));
  Json span = Json::array();
  for (const auto& p : v.subspace.spanning) span.push_back(rat_list(p.coords()));
  return Json{{"n", c.n},
              {"factor", c.factor},
              {"V", Json{{"dim", v.subspace.dim}, {"spanning", span}}},
              {"mass_on_V", v.mass},
              {"total_mass", c.total_mass},
              {"ratio", to_string(v.ratio)},
              {"threshold", to_string(c.threshold)},
              {"cycle", chow_cycle_json(z)},
              {"destabilizer",
               Json{{"basis", matrix_columns(c.destabilizer.basis)},
                    {"weights", int_list(c.destabilizer.ops.weights)},
                    {"chow_weight", to_string(c.destabilizer.chow_weight)},
                    {"identity", to_string(identity)}}}};
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string polynomial(const RatVec& v, const hilbert::MonomialBasis& basis) {
  std::string out;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (sgn(v[c]) == 0) continue;
    Rat a = abs(v[c]);
    std::string mono;
    for (std::size_t i = 0; i < basis[c].size(); ++i) {
      if (basis[c][i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (basis[c][i] > 1) mono += "^" + std::to_string(basis[c][i]);
    }
    std::string term = mono.empty() ? to_string(a) : (a == 1 ? mono : to_string(a) + "*" + mono);
    if (out.empty())
      out = (sgn(v[c]) < 0 ? "-" : "") + term;
    else
      out += (sgn(v[c]) < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

ChowCycle chow_cycle_of(const WeightedCycle& z, bool blowup) {
  if (!z.ambient.is_projective()) throw InputError("this command needs a projective ambient");
  return blowup ? geometry::chow_multiplicities(z) : geometry::as_chow_cycle(z);
}

const DiagonalOnePS& need_weights(const ParsedInput& in) {
  if (!in.weights) throw SchemaError("input /weights: required by this command");
  return *in.weights;
}

std::vector<long> range_list(const std::optional<Range>& r) {
  std::vector<long> out;
  if (r)
    for (long k = r->first; k <= r->second; ++k) out.push_back(k);
  return out;
}

const char* error_kind(const std::exception& e) {
#define KCHOW_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  KCHOW_KIND(ZeroPoint)
  KCHOW_KIND(DimensionMismatch)
  KCHOW_KIND(SchemaError)
  KCHOW_KIND(NonRationalCoordinate)
  KCHOW_KIND(SubspaceNotSpannedBySupport)
  KCHOW_KIND(SubspaceNotWeightHomogeneous)
  KCHOW_KIND(ZeroLeadingCoefficient)
  KCHOW_KIND(JetsNotSeparated)
  KCHOW_KIND(MalformedInput)
  KCHOW_KIND(PolynomialityFailed)
  KCHOW_KIND(VerificationFailed)
  KCHOW_KIND(RankDrop)
  KCHOW_KIND(NotWeightHomogeneous)
  KCHOW_KIND(InputError)
  KCHOW_KIND(VerificationError)
#undef KCHOW_KIND
  return "InternalError";
}

// Each command fills `report` (the JSON form) and `text` (the human form).
struct Report {
  Json json = Json::object();
  std::ostringstream text;
  int exit_code = 0;
};

std::string point_text(const RatVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + to_string(v[i]);
  return s + "]";
}

void run_check(const JobSpec& job, const ParsedInput& in, Report& rep) {
  const WeightedCycle& z = in.cycle;
  stability::StabilityVerdict v;
  ChowCycle cz;
  if (z.ambient.is_projective()) {
    cz = chow_cycle_of(z, job.blowup);
    v = stability::classify(cz);
  } else {
    if (job.blowup) throw InputError("--blowup applies to projective ambients only");
    v = stability::classify(z);
    if (v.certificate) cz = geometry::as_chow_cycle(geometry::project_cycle(z, v.certificate->factor));
  }
  rep.json["status"] = stability::to_string(v.status);
  if (v.certificate) rep.json["certificate"] = certificate_json(*v.certificate, cz);
  Json w = Json::array();
  for (const auto& s : v.witness_ratios) w.push_back(subspace_json(s));
  rep.json["witness_ratios"] = w;
  Json values = Json::object();
  if (z.ambient.is_projective()) {
    values["n"] = cz.n;
    values["total_mass"] = cz.total_mass();
    values["threshold"] = to_string(Rat(cz.total_mass()) / static_cast<long>(cz.n + 1));
  }
  rep.json["values"] = values;

  rep.text << "status: " << stability::to_string(v.status) << "\n";
  if (v.certificate) {
    const auto& c = *v.certificate;
    rep.text << "subspace V (dim " << c.violation.subspace.dim << ") spanned by";
    for (const auto& p : c.violation.subspace.spanning) rep.text << " " << point_text(p.coords());
    rep.text << "\nmass on V: " << c.violation.mass << " of " << c.total_mass << "\n";
    rep.text << "ratio " << to_string(c.violation.ratio) << " > " << to_string(c.threshold) << "\n";
    rep.text << "destabilizing weights (adapted basis):";
    for (auto x : c.destabilizer.ops.weights) rep.text << " " << x;
    rep.text << "\nchow weight: " << to_string(c.destabilizer.chow_weight) << "\n";
  }
  for (const auto& s : v.witness_ratios) {
    rep.text << "boundary subspace (dim " << s.subspace.dim << "):";
    for (const auto& p : s.subspace.spanning) rep.text << " " << point_text(p.coords());
    rep.text << " ratio " << to_string(s.ratio) << "\n";
  }
  if (v.status == stability::Status::unstable) rep.exit_code = 1;
}

void run_destabilize(const JobSpec& job, const ParsedInput& in, Report& rep) {
  const ChowCycle cz = chow_cycle_of(in.cycle, job.blowup);
  auto v = stability::classify(cz);
  rep.json["status"] = stability::to_string(v.status);
  rep.json["certificate"] = v.certificate ? certificate_json(*v.certificate, cz) : Json(nullptr);
  rep.text << "status: " << stability::to_string(v.status) << "\n";
  if (v.certificate) {
    rep.text << "weights:";
    for (auto x : v.certificate->destabilizer.ops.weights) rep.text << " " << x;
    rep.text << "\nbasis columns:";
    for (std::size_t c = 0; c <= cz.n; ++c)
      rep.text << " " << point_text(v.certificate->destabilizer.basis.column(c));
    rep.text << "\nchow weight: " << to_string(v.certificate->destabilizer.chow_weight) << "\n";
  }
  if (cz.n <= 3 && cz.points.size() <= 5 && job.bound >= 0 && job.bound <= 4) {
    auto s = stability::exhaustive_ops_search(cz, job.bound);
    rep.json["search"] = Json{{"bound", job.bound},
                              {"max_weight", to_string(s.max_weight)},
                              {"weights", int_list(s.ops.weights)},
                              {"basis", matrix_columns(s.basis)}};
    rep.text << "search (B=" << job.bound << "): max chow weight " << to_string(s.max_weight) << " at weights";
    for (auto x : s.ops.weights) rep.text << " " << x;
    rep.text << "\n";
  }
}

void run_chow_weight(const JobSpec& job, const ParsedInput& in, Report& rep) {
  const DiagonalOnePS& w = need_weights(in);
  Rat value;
  Json per_point = Json::array();
  if (in.cycle.ambient.is_projective()) {
    const ChowCycle cz = chow_cycle_of(in.cycle, job.blowup);
    value = stability::chow_weight(cz, w);
    for (const auto& p : cz.points) per_point.push_back(to_string(stability::mumford_weight(p.point, w)));
  } else {
    value = stability::chow_weight(in.cycle, w);
  }
  rep.json["value"] = to_string(value);
  if (!per_point.empty()) rep.json["mumford_weights"] = per_point;
  rep.text << "chow weight: " << to_string(value) << "\n";
  if (job.gamma && in.cycle.ambient.is_projective()) {
    const Rat lv = stability::chow_weight_at_level(chow_cycle_of(in.cycle, job.blowup), w, *job.gamma);
    rep.json["level"] = Json{{"gamma", *job.gamma}, {"value", to_string(lv)}};
    rep.text << "at level " << *job.gamma << ": " << to_string(lv) << "\n";
  }
}

Json df_json(const testconfig::DFResult& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back(Json{{"r", s.r}, {"degree", s.degree}, {"dim", s.dimension}, {"trace", to_string(s.trace)}});
  Json dim_res = Json::array(), tr_res = Json::array();
  for (std::size_t i = 0; i < r.dimension_checks; ++i) dim_res.push_back("0");
  for (std::size_t i = 0; i < r.trace_checks; ++i) tr_res.push_back("0");
  Json alternating = Json::array();
  for (const auto& c : r.alternating_trace) alternating.push_back(to_string(c));
  Json pred = Json{{"ch_weight", to_string(r.chow_weight)}};
  pred["leading"] = r.F_predicted_leading ? Json(to_string(*r.F_predicted_leading)) : Json(nullptr);
  if (r.predicted_central) pred["central"] = coeffs_json(*r.predicted_central);
  return Json{{"gamma", r.gamma},
              {"F", to_string(r.F_exact)},
              {"F_decimal", exact::to_double(r.F_exact)},
              {"fit",
               Json{{"coeffs", coeffs_json(r.central)},
                    {"normalized", coeffs_json(r.normalized)},
                    {"lambda_gamma", to_string(r.lambda_gamma)},
                    {"alternating_trace", alternating},
                    {"samples", samples},
                    {"residuals", Json{{"dimension", dim_res}, {"trace", tr_res}}}}},
              {"prediction", pred}};
}

void run_df(const JobSpec& job, const ParsedInput& in, Report& rep) {
  const long gamma = job.gamma.value_or(4);
  auto r = testconfig::df_invariant({in.cycle, need_weights(in), gamma, range_list(job.r_samples)});
  rep.json = df_json(r);
  rep.text << "gamma: " << gamma << "\n";
  rep.text << "F: " << to_string(r.F_exact) << " (" << decimal(exact::to_double(r.F_exact)) << ")\n";
  rep.text << "central coefficients: c0'=" << to_string(r.central.c0) << " c1'=" << to_string(r.central.c1)
           << " b0'=" << to_string(r.central.b0) << " b1'=" << to_string(r.central.b1) << "\n";
  rep.text << "lambda_gamma: " << to_string(r.lambda_gamma) << "\n";
  rep.text << "chow weight: " << to_string(r.chow_weight) << "\n";
  if (r.F_predicted_leading) rep.text << "predicted leading terms: " << to_string(*r.F_predicted_leading) << "\n";
  if (!r.alternating_trace.empty()) {
    rep.text << "trace has a (-1)^r part:";
    for (const auto& c : r.alternating_trace) rep.text << " " << to_string(c);
    rep.text << "\n";
  }
  rep.text << "held-out checks: " << r.dimension_checks << " dimension, " << r.trace_checks << " trace\n";
}

void run_expansion(const JobSpec& job, const ParsedInput& in, Report& rep) {
  const Range g = job.gamma_range.value_or(Range{4, 8});
  auto e = testconfig::expansion_comparison(in.cycle, need_weights(in), range_list(g), range_list(job.r_samples));
  Json per = Json::array();
  for (const auto& r : e.results) per.push_back(df_json(r));
  Json devs = Json::array();
  for (const auto& d : e.deviations) {
    Json j = coeffs_json(d.deviation);
    j["gamma"] = d.gamma;
    devs.push_back(j);
  }
  rep.json["results"] = per;
  rep.json["fit"] = Json{{"degree", e.fit_degree},
                         {"coeffs", rat_list(e.fit)},
                         {"residuals", rat_list(e.residuals)},
                         {"leading", to_string(e.leading_coefficient)},
                         {"expected_leading", to_string(e.expected_leading)}};
  rep.json["linear_fit"] = Json{{"coeffs", rat_list(e.linear_fit)}, {"expected_slope", to_string(e.expected_slope)}};
  rep.json["deviations"] = devs;

  for (const auto& r : e.results)
    rep.text << "gamma " << r.gamma << ": F = " << to_string(r.F_exact) << " (" << decimal(exact::to_double(r.F_exact))
             << ")\n";
  rep.text << "degree-" << e.fit_degree << " fit, leading coefficient " << decimal(exact::to_double(e.leading_coefficient))
           << " (expected " << to_string(e.expected_leading) << ")\n";
  rep.text << "linear fit slope " << decimal(exact::to_double(e.linear_fit[1])) << " (expected "
           << to_string(e.expected_slope) << ")\n";
  for (const auto& d : e.deviations)
    rep.text << "gamma " << d.gamma << ": b0' - explicit = " << to_string(d.deviation.b0)
             << ", b1' - explicit = " << to_string(d.deviation.b1) << "\n";
}

void run_limit(const JobSpec& job, const ParsedInput& in, Report& rep) {
  const Range d = job.degrees.value_or(Range{1, 3});
  if (d.first < 0) throw InputError("degrees must be nonnegative");
  std::vector<std::size_t> degrees;
  for (long k = d.first; k <= d.second; ++k) degrees.push_back(static_cast<std::size_t>(k));
  const auto pieces = testconfig::central_fibre_cycle(in.cycle, need_weights(in), degrees);
  Json out = Json::array();
  for (const auto& p : pieces) {
    hilbert::MonomialBasis basis(in.cycle.ambient.n1, p.degree);
    Json secs = Json::array();
    for (const auto& v : p.sections) secs.push_back(polynomial(v, basis));
    Json cl = Json::array();
    for (const auto& c : p.clusters)
      cl.push_back(Json{{"limit", rat_list(c.limit.coords())},
                        {"members", c.members},
                        {"length", c.length},
                        {"vanishing_order", c.vanishing_order}});
    out.push_back(Json{{"degree", p.degree},
                       {"dim", p.sections.size()},
                       {"sections", secs},
                       {"clusters", cl},
                       {"fat_point_system", p.fat_point_system}});
    rep.text << "degree " << p.degree << ": dim " << p.sections.size() << "\n";
    for (const auto& s : secs) rep.text << "  " << s.get<std::string>() << "\n";
    for (const auto& c : p.clusters)
      rep.text << "  limit " << point_text(c.limit.coords()) << ": " << c.members << " point(s), length " << c.length
               << ", sections vanish to order " << c.vanishing_order << "\n";
    rep.text << "  equals the fat-point system of those orders: " << (p.fat_point_system ? "yes" : "no") << "\n";
  }
  rep.json["degrees"] = out;
}

void run_balance(const JobSpec& job, const ParsedInput& in, Report& rep) {
  if (!in.cycle.ambient.is_projective()) throw InputError("balance needs a projective ambient");
  balance::Cycle c;
  std::optional<ChowCycle> exact_cycle;
  if (in.complex_points) {
    c = *in.complex_points;
    if (job.blowup)
      for (auto& p : c.points) p.mass = std::pow(p.mass, static_cast<double>(c.n) - 1);
  } else {
    exact_cycle = chow_cycle_of(in.cycle, job.blowup);
    c = balance::from_chow_cycle(*exact_cycle);
  }
  if (c.points.empty()) throw InputError("balance needs at least one point");
  balance::FlowOptions opts;
  opts.step = job.step;
  opts.tol = job.tol;
  opts.max_iter = job.max_iter;
  const double initial = balance::balance_residual(c);
  auto f = balance::balance_flow(c, opts);
  rep.json["flow"] = Json{{"status", balance::to_string(f.report.status)},
                          {"residual_norm", f.report.residual_norm},
                          {"group_element_norm", f.report.group_element_norm},
                          {"iterations", f.report.iterations}};
  rep.json["initial_residual"] = initial;
  Json checks = Json{{"spanning", balance::check_spanning(c)}};
  checks["no_common_zero"] = exact_cycle ? Json(balance::check_no_common_zero(*exact_cycle)) : Json(nullptr);
  rep.json["checks"] = checks;
  if (exact_cycle) rep.json["classify"] = stability::to_string(stability::classify(*exact_cycle).status);

  rep.text << "flow: " << balance::to_string(f.report.status) << " after " << f.report.iterations << " iterations\n";
  rep.text << "residual: " << decimal(initial) << " -> " << decimal(f.report.residual_norm) << "\n";
  rep.text << "|g|: " << decimal(f.report.group_element_norm) << "\n";
  rep.text << "moment maps span: " << (checks["spanning"].get<bool>() ? "yes" : "no") << "\n";
  if (exact_cycle)
    rep.text << "no common zero: " << (checks["no_common_zero"].get<bool>() ? "yes" : "no") << "\n"
             << "exact classification: " << rep.json["classify"].get<std::string>() << "\n";
}

}  // namespace

Json emit_cycle(const WeightedCycle& z, const std::optional<DiagonalOnePS>& weights) {
  Json amb = z.ambient.is_projective() ? Json{{"projective", z.ambient.n1}}
                                       : Json{{"product", Json::array({z.ambient.n1, z.ambient.n2})}};
  Json pts = Json::array();
  for (const auto& p : z.points) {
    Json coords;
    if (z.ambient.is_projective()) {
      coords = rat_list(p.point().coords());
    } else {
      coords = Json::array({rat_list(p.factors[0].coords()), rat_list(p.factors[1].coords())});
    }
    pts.push_back(Json{{"coords", coords}, {"mult", p.mult}});
  }
  Json out{{"ambient", amb}, {"points", pts}};
  if (weights) out["weights"] = int_list(weights->weights);
  return out;
}

bool verify_certificate(const Json& cert) {
  try {
    const std::size_t n = cert.at("n").get<std::size_t>();
    auto vec = [](const Json& a) {
      RatVec v;
      for (const auto& x : a) v.push_back(exact::parse_rat(x.get<std::string>()));
      return v;
    };
    std::vector<RatVec> pts;
    std::vector<std::int64_t> masses;
    std::int64_t total = 0;
    for (const auto& p : cert.at("cycle")) {
      pts.push_back(vec(p.at("coords")));
      masses.push_back(p.at("mass").get<std::int64_t>());
      total += masses.back();
    }
    const std::size_t k = cert.at("V").at("dim").get<std::size_t>();
    std::vector<RatVec> span;
    for (const auto& s : cert.at("V").at("spanning")) {
      span.push_back(vec(s));
      if (std::find(pts.begin(), pts.end(), span.back()) == pts.end()) return false;
    }
    if (span.size() != k + 1 || k >= n || exact::rank(exact::RatMatrix::from_rows(span, n + 1)) != k + 1) return false;
    std::int64_t on_v = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (exact::in_span(exact::span_basis(span, n + 1), pts[i])) on_v += masses[i];
    if (on_v != cert.at("mass_on_V").get<std::int64_t>() || total != cert.at("total_mass").get<std::int64_t>())
      return false;
    if (!(on_v * static_cast<std::int64_t>(n + 1) > total * static_cast<std::int64_t>(k + 1))) return false;

    const auto& d = cert.at("destabilizer");
    exact::RatMatrix basis(n + 1, n + 1);
    std::size_t col = 0;
    for (const auto& c : d.at("basis")) {
      RatVec v = vec(c);
      for (std::size_t r = 0; r <= n; ++r) basis(r, col) = v[r];
      ++col;
    }
    std::vector<RatVec> first;
    for (std::size_t c = 0; c <= k; ++c) first.push_back(basis.column(c));
    if (!exact::same_span(first, span, n + 1)) return false;
    DiagonalOnePS w{d.at("weights").get<std::vector<std::int64_t>>()};
    ChowCycle z{n, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) z.points.push_back({ProjectivePoint(pts[i]), masses[i]});
    const Rat cw = stability::chow_weight_in_basis(z, basis, w);
    const Rat identity = Rat(static_cast<long>(n + 1) * on_v - total * static_cast<long>(k + 1));
    return cw == identity && cw == exact::parse_rat(d.at("chow_weight").get<std::string>()) && sgn(cw) > 0;
  } catch (const std::exception&) {
    return false;
  }
}

RunResult run(const JobSpec& job, const std::string& document) {
  Report rep;
  try {
    const ParsedInput in = parse_input(document, job.command == Command::balance);
    switch (job.command) {
      case Command::check:
        run_check(job, in, rep);
        break;
      case Command::destabilize:
        run_destabilize(job, in, rep);
        break;
      case Command::chow_weight:
        run_chow_weight(job, in, rep);
        break;
      case Command::df:
        run_df(job, in, rep);
        break;
      case Command::expansion:
        run_expansion(job, in, rep);
        break;
      case Command::limit:
        run_limit(job, in, rep);
        break;
      case Command::balance:
        run_balance(job, in, rep);
        break;
    }
  } catch (const std::exception& e) {
    const int code = dynamic_cast<const InputError*>(&e) ? 2 : 3;
    if (job.format == Format::json)
      return {code, Json{{"error", Json{{"kind", error_kind(e)}, {"message", e.what()}}}}.dump(2) + "\n"};
    return {code, std::string("error (") + error_kind(e) + "): " + e.what() + "\n"};
  }
  if (job.format == Format::json) return {rep.exit_code, rep.json.dump(2) + "\n"};
  return {rep.exit_code, rep.text.str()};
}

}  // namespace kchow::cli
