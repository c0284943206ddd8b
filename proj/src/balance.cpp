#include "kchow/balance.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>

#include "kchow/errors.hpp"
#include "kchow/matrix.hpp"

namespace kchow::balance {

Cycle from_chow_cycle(const geometry::ChowCycle& z) {
  Cycle c{z.n, {}};
  for (const auto& p : z.points) {
    CVec v(static_cast<Eigen::Index>(z.n + 1));
    for (std::size_t i = 0; i <= z.n; ++i) v(static_cast<Eigen::Index>(i)) = exact::to_double(p.point[i]);
    c.points.push_back({v, static_cast<double>(p.mass)});
  }
  return c;
}

CMat moment_map(const CVec& p) {
  const double norm2 = p.squaredNorm();
  if (norm2 == 0) throw ZeroPoint("moment map of the zero vector");
  const auto k = p.size();
  return p * p.adjoint() / norm2 - CMat::Identity(k, k) / static_cast<double>(k);
}

CMat total_moment(const Cycle& z) {
  const auto k = static_cast<Eigen::Index>(z.n + 1);
  CMat m = CMat::Zero(k, k);
  for (const auto& p : z.points) {
    if (p.coords.size() != k) throw DimensionMismatch("point has the wrong number of coordinates");
    m += p.mass * moment_map(p.coords);
  }
  return m;
}

double balance_residual(const Cycle& z) { return total_moment(z).norm(); }

const char* to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::converged:
      return "converged";
    case FlowStatus::diverged:
      return "diverged";
    case FlowStatus::max_iter:
      return "max_iter";
  }
  return "?";
}

namespace {

CMat hermitian_exp(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().adjoint();
}

Cycle act(const CMat& g, const Cycle& z) {
  Cycle out{z.n, {}};
  for (const auto& p : z.points) {
    CVec v = g * p.coords;
    out.points.push_back({v / v.norm(), p.mass});
  }
  return out;
}

}  // namespace

FlowResult balance_flow(const Cycle& z, const FlowOptions& opts) {
  if (!(opts.step > 0)) throw InputError("flow step must be positive");
  const auto k = static_cast<Eigen::Index>(z.n + 1);
  FlowResult res;
  res.g = CMat::Identity(k, k);
  res.transformed = act(res.g, z);
  CMat m = total_moment(res.transformed);
  double residual = m.norm();
  res.residual_history.push_back(residual);
  double step = opts.step;

  auto finish = [&](FlowStatus s) {
    res.report = FlowReport{s, residual, res.g.norm(), res.report.iterations};
    return res;
  };

  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    if (residual < opts.tol) return finish(FlowStatus::converged);
    res.report.iterations = it + 1;
    CMat g = hermitian_exp(-step * m) * res.g;
    Cycle moved = act(g, z);
    CMat m_new = total_moment(moved);
    const double r_new = m_new.norm();
    // Round-off slack: along a destabilising direction the residual is flat.
    if (r_new > residual + 1e-12 * std::max(1.0, residual)) {
      step /= 2;
      continue;
    }
    res.g = g;
    res.transformed = std::move(moved);
    m = m_new;
    residual = r_new;
    res.residual_history.push_back(residual);
    if (res.g.norm() > opts.divergence_norm) return finish(FlowStatus::diverged);
  }
  return finish(residual < opts.tol ? FlowStatus::converged : FlowStatus::max_iter);
}

bool check_spanning(const Cycle& z) {
  const auto k = static_cast<Eigen::Index>(z.n + 1);
  if (z.points.empty()) return false;
  // Real coordinates of a Hermitian matrix: diagonal, then Re and Im above it.
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(z.points.size()), k * k);
  for (std::size_t i = 0; i < z.points.size(); ++i) {
    CMat mu = moment_map(z.points[i].coords);
    Eigen::Index c = 0;
    for (Eigen::Index a = 0; a < k; ++a) rows(static_cast<Eigen::Index>(i), c++) = mu(a, a).real();
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = a + 1; b < k; ++b) {
        rows(static_cast<Eigen::Index>(i), c++) = mu(a, b).real();
        rows(static_cast<Eigen::Index>(i), c++) = mu(a, b).imag();
      }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return false;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-8 * s(0)) ++rank;
  return rank == k * k - 1;
}

bool check_no_common_zero(const geometry::ChowCycle& z) {
  const std::size_t k = z.n + 1;
  const std::size_t pts = z.points.size();
  // Unknowns: the entries of A (row-major), then one eigenvalue c_i per point.
  exact::RatMatrix sys(pts * k, k * k + pts);
  for (std::size_t i = 0; i < pts; ++i) {
    const auto& p = z.points[i].point;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t row = i * k + a;
      for (std::size_t b = 0; b < k; ++b) sys(row, a * k + b) = p[b];
      sys(row, k * k + i) = -p[a];
    }
  }
  // A = I always solves the system; anything beyond it is a common zero.
  return exact::rank_kernel(sys).kernel_basis.size() <= 1;
}

}  // namespace kchow::balance
