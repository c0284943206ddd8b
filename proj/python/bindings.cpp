#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "kchow/balance.hpp"
#include "kchow/cli.hpp"
#include "kchow/errors.hpp"
#include "kchow/hilbert.hpp"
#include "kchow/stability.hpp"
#include "kchow/testconfig.hpp"

namespace py = pybind11;
using namespace kchow;

namespace {

using PyPoints = std::vector<std::pair<std::vector<std::string>, std::int64_t>>;

geometry::WeightedCycle cycle_of(std::size_t n, const PyPoints& pts) {
  std::vector<geometry::RawPoint> raw;
  for (const auto& [coords, mult] : pts) {
    exact::RatVec v;
    for (const auto& c : coords) {
      try {
        v.push_back(exact::parse_rat(c));
      } catch (const std::invalid_argument&) {
        throw NonRationalCoordinate("not a rational number: \"" + c + "\"");
      }
    }
    raw.push_back({{v}, mult});
  }
  return geometry::normalize_cycle(geometry::Ambient::projective(n), raw);
}

std::string str(const exact::Rat& q) { return exact::to_string(q); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Chow stability and Donaldson-Futaki computations for weighted points on P^n";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<VerificationError>(m, "VerificationError", base.ptr());

  m.def("fat_point_length", &hilbert::fat_point_length, py::arg("n"), py::arg("a"));

  m.def(
      "h0_with_vanishing",
      [](std::size_t n, const PyPoints& pts, std::size_t degree, std::size_t r) {
        return hilbert::h0_with_vanishing({cycle_of(n, pts), degree, r});
      },
      py::arg("n"), py::arg("points"), py::arg("degree"), py::arg("r") = 1);

  m.def(
      "mumford_weight",
      [](const std::vector<std::string>& coords, const std::vector<std::int64_t>& w) {
        auto z = cycle_of(coords.size() - 1, {{coords, 1}});
        return str(stability::mumford_weight(z.points.at(0).point(), {w}));
      },
      py::arg("coords"), py::arg("weights"));

  m.def(
      "chow_weight",
      [](std::size_t n, const PyPoints& pts, const std::vector<std::int64_t>& w) {
        return str(stability::chow_weight(cycle_of(n, pts), {w}));
      },
      py::arg("n"), py::arg("points"), py::arg("weights"), "Masses are the given multiplicities.");

  m.def(
      "classify",
      [](std::size_t n, const PyPoints& pts) {
        return std::string(stability::to_string(stability::classify(cycle_of(n, pts)).status));
      },
      py::arg("n"), py::arg("points"));

  m.def(
      "futaki_from_coeffs",
      [](const std::string& c0, const std::string& c1, const std::string& b0, const std::string& b1) {
        using exact::parse_rat;
        return str(hilbert::futaki_from_coeffs({parse_rat(c0), parse_rat(c1), parse_rat(b0), parse_rat(b1)}));
      },
      py::arg("c0"), py::arg("c1"), py::arg("b0"), py::arg("b1"));

  m.def(
      "df_invariant",
      [](std::size_t n, const PyPoints& pts, const std::vector<std::int64_t>& w, long gamma,
         const std::vector<long>& r_samples) {
        auto z = pts.empty() ? geometry::WeightedCycle{geometry::Ambient::projective(n), {}} : cycle_of(n, pts);
        return str(testconfig::df_invariant({z, {w}, gamma, r_samples}).F_exact);
      },
      py::arg("n"), py::arg("points"), py::arg("weights"), py::arg("gamma"),
      py::arg("r_samples") = std::vector<long>{});

  m.def(
      "balance_flow",
      [](std::size_t n, const std::vector<std::pair<std::vector<std::complex<double>>, double>>& pts, double step,
         double tol, std::size_t max_iter) {
        balance::Cycle c{n, {}};
        for (const auto& [coords, mass] : pts) {
          balance::CVec v(static_cast<Eigen::Index>(coords.size()));
          for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
          c.points.push_back({v, mass});
        }
        auto f = balance::balance_flow(c, {step, tol, max_iter, 1e3});
        py::dict d;
        d["status"] = balance::to_string(f.report.status);
        d["residual_norm"] = f.report.residual_norm;
        d["group_element_norm"] = f.report.group_element_norm;
        d["iterations"] = f.report.iterations;
        return d;
      },
      py::arg("n"), py::arg("points"), py::arg("step") = 0.5, py::arg("tol") = 1e-9, py::arg("max_iter") = 100000);

  m.def(
      "run",
      [](const std::string& command, const std::string& document, const std::vector<std::string>& options) {
        cli::JobSpec job;
        job.command = cli::parse_command(command);
        job.format = cli::Format::json;
        for (std::size_t i = 0; i + 1 < options.size(); i += 2) {
          const auto& k = options[i];
          const auto& v = options[i + 1];
          if (k == "gamma")
            job.gamma = std::stol(v);
          else if (k == "gamma_range")
            job.gamma_range = cli::parse_range(v);
          else if (k == "r_samples")
            job.r_samples = cli::parse_range(v);
          else if (k == "degrees")
            job.degrees = cli::parse_range(v);
          else if (k == "bound")
            job.bound = std::stoi(v);
          else
            throw InputError("unknown option '" + k + "'");
        }
        auto r = cli::run(job, document);
        return std::make_pair(r.exit_code, r.output);
      },
      py::arg("command"), py::arg("document"), py::arg("options") = std::vector<std::string>{},
      "Runs one CLI job with JSON output; options alternate name, value.");
}
