#pragma once

// Floating-point Kempf-Ness balancing of point masses on P^n with the
// Fubini-Study moment map. Nothing here feeds back into the exact modules.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "kchow/geometry.hpp"

namespace kchow::balance {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct MassPoint {
  CVec coords;
  double mass = 1.0;
};

struct Cycle {
  std::size_t n = 1;
  std::vector<MassPoint> points;
};

/// Masses as given by the Chow cycle.
Cycle from_chow_cycle(const geometry::ChowCycle& z);

/// p p* / |p|^2 - I/(n+1).
CMat moment_map(const CVec& p);

/// sum m_i mu(p_i).
CMat total_moment(const Cycle& z);

/// Frobenius norm of total_moment.
double balance_residual(const Cycle& z);

enum class FlowStatus { converged, diverged, max_iter };
const char* to_string(FlowStatus s);

struct FlowOptions {
  double step = 0.5;
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  /// Frobenius norm of g beyond which the flow is declared divergent.
  double divergence_norm = 1e3;
};

struct FlowReport {
  FlowStatus status = FlowStatus::max_iter;
  double residual_norm = 0;
  double group_element_norm = 0;
  std::size_t iterations = 0;
};

struct FlowResult {
  FlowReport report;
  CMat g;
  Cycle transformed;
  /// Residual after each accepted step, starting with the initial one.
  std::vector<double> residual_history;
};

/// g <- exp(-step * sum m_i mu(g p_i)) g. A step that raises the residual by
/// more than 1e-12 (relative) is rejected and the step halved.
FlowResult balance_flow(const Cycle& z, const FlowOptions& opts = {});

/// The mu(p_i) span the traceless Hermitian matrices (singular values of the
/// real coordinate matrix above 1e-8 relative to the largest).
bool check_spanning(const Cycle& z);

/// Exact: no nonzero traceless A with A p_i proportional to p_i for all i.
bool check_no_common_zero(const geometry::ChowCycle& z);

}  // namespace kchow::balance
