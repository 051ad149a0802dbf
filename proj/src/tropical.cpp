#include "secular/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "secular/eigen.hpp"
#include "secular/errors.hpp"
#include "secular/rng.hpp"

namespace secular {

const char* to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::Infinity: return "inf";
    case NormKind::Frobenius: return "fro";
    case NormKind::Two: return "two";
  }
  return "inf";
}

NormKind parse_norm_kind(const std::string& text) {
  if (text == "inf") return NormKind::Infinity;
  if (text == "fro") return NormKind::Frobenius;
  if (text == "two") return NormKind::Two;
  throw InvalidArgument("unknown norm '" + text + "' (expected inf, fro or two)");
}

double matrix_norm(const ComplexMatrix& a, NormKind kind) {
  switch (kind) {
    case NormKind::Infinity: return a.norm_inf();
    case NormKind::Frobenius: return a.norm_fro();
    case NormKind::Two: return spectral_norm(a);
  }
  return a.norm_inf();
}

int TropicalRoots::total_multiplicity() const noexcept {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

TropicalRoots tropical_roots(const MatrixPolynomial& p, NormKind norm) {
  struct Point {
    double x, y;
  };
  std::vector<Point> pts;
  for (std::size_t i = 0; i < p.coeff_count(); ++i) {
    const double a = matrix_norm(p.coeffs()[i], norm);
    if (a > 0.0) pts.push_back({static_cast<double>(i), std::log(a)});
  }
  if (pts.size() < 2)
    throw InvalidArgument("tropical roots need at least two nonzero coefficients");

  std::vector<Point> hull;
  for (const Point& c : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(c);
  }

  TropicalRoots out;
  out.norm = norm;
  out.low = static_cast<int>(hull.front().x);
  out.high = static_cast<int>(hull.back().x);
  for (std::size_t k = hull.size() - 1; k > 0; --k) {
    const Point& a = hull[k - 1];
    const Point& b = hull[k];
    const double dx = b.x - a.x;
    out.roots.push_back({std::exp((a.y - b.y) / dx), static_cast<int>(dx)});
  }
  return out;
}

namespace {

// log sum_i exp(c_i + i t) over the given (index, log coefficient) pairs.
double log_sum(const std::vector<std::pair<int, double>>& terms, double t) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [i, c] : terms) best = std::max(best, c + i * t);
  if (!std::isfinite(best)) return best;
  double s = 0.0;
  for (const auto& [i, c] : terms) s += std::exp(c + i * t - best);
  return best + std::log(s);
}

// Root of an increasing function of t by bisection on [-lim, lim].
template <class F>
double bisect_increasing(F f) {
  double lo = -1500.0, hi = 1500.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double inverse_norm_bound(const ComplexMatrix& a) {
  LuDecomposition lu(a);
  if (a.is_zero() || lu.singular(kSingularPivotTolerance)) return 0.0;
  return 1.0 / lu.inverse().norm_inf();
}

}  // namespace

std::optional<std::pair<double, double>> pellet_annulus(const MatrixPolynomial& p) {
  const int n = p.degree();
  if (n < 1) return std::nullopt;
  const double s0 = inverse_norm_bound(p.coeff(0));
  const double sn = inverse_norm_bound(p.coeff(static_cast<std::size_t>(n)));
  if (s0 <= 0.0 || sn <= 0.0) return std::nullopt;

  std::vector<std::pair<int, double>> upper_terms, lower_terms;
  for (int i = 0; i <= n; ++i) {
    const double a = p.coeff(static_cast<std::size_t>(i)).norm_inf();
    if (a <= 0.0) continue;
    if (i > 0) upper_terms.emplace_back(i, std::log(a));
    if (i < n) lower_terms.emplace_back(i - n, std::log(a));
  }
  // t = log r; both differences increase with t.
  const double t_low = bisect_increasing([&](double t) { return log_sum(upper_terms, t) - std::log(s0); });
  const double t_up = bisect_increasing([&](double t) { return std::log(sn) - log_sum(lower_terms, t); });
  return std::make_pair(std::exp(t_low), std::exp(t_up));
}

const char* to_string(NodeStrategy s) noexcept {
  switch (s) {
    case NodeStrategy::Fourier: return "fourier";
    case NodeStrategy::Tropical: return "tropical";
    case NodeStrategy::Manual: return "manual";
  }
  return "manual";
}

bool nodes_distinct(std::span<const cplx> betas) noexcept {
  for (std::size_t i = 0; i < betas.size(); ++i)
    for (std::size_t j = i + 1; j < betas.size(); ++j)
      if (std::abs(betas[i] - betas[j]) <= 1e-12 * std::max(std::abs(betas[i]), std::abs(betas[j])))
        return false;
  return true;
}

NodePlan plan_fourier(std::size_t n, cplx alpha) {
  if (n == 0) throw InvalidArgument("node count must be positive");
  if (alpha == cplx{}) throw InvalidArgument("Fourier scale must be nonzero");
  NodePlan plan;
  plan.strategy = NodeStrategy::Fourier;
  plan.alpha = alpha;
  for (std::size_t j = 1; j <= n; ++j) {
    const double turns = static_cast<double>(j % n) / static_cast<double>(n);
    plan.betas.push_back(alpha * std::polar(1.0, 2.0 * std::numbers::pi * turns));
  }
  return plan;
}

NodePlan plan_tropical(const TropicalRoots& t, std::size_t n, PhaseMode mode, std::uint64_t seed) {
  if (t.total_multiplicity() != static_cast<int>(n))
    throw Error(ErrorCode::MultiplicityMismatch,
                "tropical multiplicities add up to " + std::to_string(t.total_multiplicity()) +
                    ", expected " + std::to_string(n));
  Pcg64 rng(seed);
  NodePlan plan;
  plan.strategy = NodeStrategy::Tropical;
  for (std::size_t g = 0; g < t.roots.size(); ++g) {
    const auto [mag, k] = t.roots[g];
    const double phi = mode == PhaseMode::Random
                           ? 2.0 * std::numbers::pi * rng.uniform()
                           : std::numbers::pi / (2.0 * k) * static_cast<double>(g);
    for (int j = 0; j < k; ++j)
      plan.betas.push_back(std::polar(mag, 2.0 * std::numbers::pi * j / k + phi));
  }
  if (!nodes_distinct(plan.betas))
    throw Error(ErrorCode::NodeCollision, "tropical node placement produced coinciding nodes");
  return plan;
}

NodePlan plan_manual(std::vector<cplx> betas) {
  if (betas.empty()) throw InvalidArgument("node list is empty");
  if (!nodes_distinct(betas)) throw Error(ErrorCode::NodeCollision, "manual nodes coincide");
  NodePlan plan;
  plan.strategy = NodeStrategy::Manual;
  plan.betas = std::move(betas);
  return plan;
}

}  // namespace secular
