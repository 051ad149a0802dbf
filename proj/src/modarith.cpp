#include "secular/modarith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "secular/eigen.hpp"
#include "secular/errors.hpp"

namespace secular {

namespace {

double norm_or_one(const ScalarPolynomial& p) {
  double n = p.norm_inf();
  return n > 0.0 ? n : 1.0;
}

// Drops leading coefficients that are negligible relative to tol.
ScalarPolynomial chop(const ScalarPolynomial& p, double tol) {
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  while (!c.empty() && std::abs(c.back()) < tol) c.pop_back();
  return ScalarPolynomial(std::move(c));
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT computing y_i = sum_j x_j exp(sign * 2 pi i ij / n).
void fft(std::vector<cplx>& a, double sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1u;
    for (; j & bit; bit >>= 1u) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1u) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx w = std::polar(1.0, ang * static_cast<double>(k));
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
  }
}

}  // namespace

ExtGcdResult ext_gcd(const ScalarPolynomial& u, const ScalarPolynomial& v, double cutoff) {
  if (u.is_zero() && v.is_zero()) throw InvalidArgument("ext_gcd of two zero polynomials");
  const double tol = cutoff * norm_or_one(u) * norm_or_one(v);

  ScalarPolynomial r0 = u, r1 = v;
  ScalarPolynomial s0 = ScalarPolynomial::constant(1.0), s1;
  ScalarPolynomial t0, t1 = ScalarPolynomial::constant(1.0);
  r1 = chop(r1, tol);
  while (!r1.is_zero()) {
    // Keep the divisor monic; scale its cofactors alongside.
    cplx lead = r1.leading();
    r1 = r1.monic();
    s1 *= 1.0 / lead;
    t1 *= 1.0 / lead;

    auto [q, r] = divmod(r0, r1);
    ScalarPolynomial s2 = s0 - q * s1;
    ScalarPolynomial t2 = t0 - q * t1;
    r0 = std::move(r1);
    s0 = std::move(s1);
    t0 = std::move(t1);
    r1 = chop(r, tol);
    s1 = std::move(s2);
    t1 = std::move(t2);
  }
  cplx lead = r0.leading();
  return {r0.monic(), s0 * (1.0 / lead), t0 * (1.0 / lead)};
}

ScalarPolynomial remainder(const ScalarPolynomial& p, const ScalarPolynomial& b) {
  return divmod(p, b).second;
}

ScalarPolynomial mod_inverse(const ScalarPolynomial& v, const ScalarPolynomial& b) {
  if (b.degree() < 1) throw InvalidArgument("mod_inverse needs a nonconstant modulus");
  ScalarPolynomial vr = remainder(v, b);
  if (vr.is_zero()) {
    const ScalarPolynomial g = b.monic();
    throw NotCoprime("polynomial is divisible by the modulus",
                     std::vector<cplx>(g.coeffs().begin(), g.coeffs().end()));
  }
  ExtGcdResult e = ext_gcd(vr, b);
  if (e.g.degree() > 0)
    throw NotCoprime("polynomials share a factor of degree " + std::to_string(e.g.degree()),
                     std::vector<cplx>(e.g.coeffs().begin(), e.g.coeffs().end()));
  return remainder(e.s, b);
}

// ---------------------------------------------------------------------------

NodeSet::NodeSet(std::vector<cplx> nodes) : nodes_(std::move(nodes)) {
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    for (std::size_t k = j + 1; k < nodes_.size(); ++k)
      if (nodes_[j] == nodes_[k]) throw InvalidArgument("repeated interpolation node");
}

double NodeSet::min_gap() const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    for (std::size_t k = j + 1; k < nodes_.size(); ++k)
      best = std::min(best, std::abs(nodes_[j] - nodes_[k]));
  return best;
}

double NodeSet::min_relative_gap() const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    for (std::size_t k = j + 1; k < nodes_.size(); ++k) {
      double scale = std::max(std::abs(nodes_[j]), std::abs(nodes_[k]));
      best = std::min(best, std::abs(nodes_[j] - nodes_[k]) / scale);
    }
  return best;
}

NodeSet roots(const ScalarPolynomial& b) {
  if (b.degree() < 1) throw InvalidArgument("roots of a constant polynomial");
  ScalarPolynomial p = b.monic();
  const auto d = static_cast<std::size_t>(p.degree());
  if (d == 1) return NodeSet({-p[0]});

  ComplexMatrix companion(d, d);
  for (std::size_t i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) companion(i, d - 1) = -p[i];
  std::vector<cplx> z = eigenvalues(companion);

  ScalarPolynomial dp = p.derivative();
  for (cplx& x : z) {
    for (int it = 0; it < 2; ++it) {
      cplx fx = p(x);
      cplx dfx = dp(x);
      if (dfx == cplx{}) break;
      cplx next = x - fx / dfx;
      if (!(std::abs(p(next)) < std::abs(fx))) break;
      x = next;
    }
  }
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t k = j + 1; k < z.size(); ++k)
      if (z[j] == z[k]) throw InvalidArgument("polynomial has a numerically repeated root");
  return NodeSet(std::move(z));
}

ScalarPolynomial interpolate_lagrange(const NodeSet& nodes, std::span<const cplx> values) {
  const std::size_t d = nodes.size();
  if (values.size() != d) throw InvalidArgument("interpolate: node/value count mismatch");
  std::vector<cplx> coeffs(d);
  std::vector<cplx> basis;
  for (std::size_t k = 0; k < d; ++k) {
    if (values[k] == cplx{}) continue;
    // basis = prod_{j != k} (x - x_j), weight = 1 / basis(x_k).
    basis.assign(1, 1.0);
    cplx denom = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == k) continue;
      basis.push_back(0.0);
      for (std::size_t i = basis.size() - 1; i > 0; --i) basis[i] = basis[i - 1] - nodes[j] * basis[i];
      basis[0] = -nodes[j] * basis[0];
      denom *= nodes[k] - nodes[j];
    }
    cplx f = values[k] / denom;
    for (std::size_t i = 0; i < d; ++i) coeffs[i] += f * basis[i];
  }
  return ScalarPolynomial(std::move(coeffs));
}

std::optional<ScalarPolynomial> interpolate_fourier(const NodeSet& nodes,
                                                    std::span<const cplx> values) {
  const std::size_t d = nodes.size();
  if (values.size() != d) throw InvalidArgument("interpolate: node/value count mismatch");
  if (d < 2 || nodes[0] == cplx{}) return std::nullopt;

  // nodes[k] = alpha * w^{j_k}; alpha is taken as nodes[0] so j_0 = 0.
  const cplx alpha = nodes[0];
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(d);
  std::vector<cplx> ordered(d);
  std::vector<bool> seen(d, false);
  for (std::size_t k = 0; k < d; ++k) {
    cplx r = nodes[k] / alpha;
    double turns = std::arg(r) / (2.0 * std::numbers::pi) * static_cast<double>(d);
    auto j = static_cast<long long>(std::llround(turns));
    j = ((j % static_cast<long long>(d)) + static_cast<long long>(d)) % static_cast<long long>(d);
    cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
    if (std::abs(r - w) > tol || seen[static_cast<std::size_t>(j)]) return std::nullopt;
    seen[static_cast<std::size_t>(j)] = true;
    ordered[static_cast<std::size_t>(j)] = values[k];
  }

  // c_i alpha^i = (1/d) sum_j y_j w^{-ij}
  std::vector<cplx> c = ordered;
  if (is_power_of_two(d)) {
    fft(c, -1.0);
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      cplx s{};
      for (std::size_t j = 0; j < d; ++j)
        s += ordered[j] * std::polar(1.0, -2.0 * std::numbers::pi *
                                              static_cast<double>((i * j) % d) /
                                              static_cast<double>(d));
      c[i] = s;
    }
  }
  cplx inv_alpha_power = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    c[i] *= inv_alpha_power / static_cast<double>(d);
    inv_alpha_power /= alpha;
  }
  return ScalarPolynomial(std::move(c));
}

ScalarPolynomial interpolate(const NodeSet& nodes, std::span<const cplx> values) {
  if (auto f = interpolate_fourier(nodes, values)) return *std::move(f);
  return interpolate_lagrange(nodes, values);
}

std::vector<ComplexMatrix> inverse_at_nodes(const MatrixPolynomial& v, const NodeSet& nodes) {
  std::vector<ComplexMatrix> out;
  out.reserve(nodes.size());
  for (cplx xi : nodes.nodes()) {
    ComplexMatrix vx = eval(v, xi);
    LuDecomposition lu(vx);
    if (vx.is_zero() || lu.singular(kSingularPivotTolerance))
      throw SingularAtNode("matrix polynomial is singular at node (" + std::to_string(xi.real()) +
                               ", " + std::to_string(xi.imag()) + ")",
                           xi);
    out.push_back(lu.inverse());
  }
  return out;
}

MatrixPolynomial interpolate_matrix(const NodeSet& nodes, std::span<const ComplexMatrix> values) {
  if (values.size() != nodes.size() || values.empty())
    throw InvalidArgument("interpolate_matrix: node/value count mismatch");
  const std::size_t m = values[0].rows();
  std::vector<ScalarPolynomial> entries;
  entries.reserve(m * m);
  std::vector<cplx> y(nodes.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < nodes.size(); ++k) y[k] = values[k](i, j);
      entries.push_back(interpolate(nodes, y));
    }
  MatrixPolynomial p = MatrixPolynomial::from_entries(m, entries);
  // Pad to exactly nodes.size() coefficients so deg F < d is visible in storage.
  std::vector<ComplexMatrix> c(p.coeffs().begin(), p.coeffs().end());
  c.resize(nodes.size(), ComplexMatrix(m, m));
  return MatrixPolynomial(m, std::move(c));
}

MatrixPolynomial matrix_mod_inverse(const MatrixPolynomial& v, const ScalarPolynomial& b) {
  NodeSet xi = roots(b);
  std::vector<ComplexMatrix> y = inverse_at_nodes(v, xi);
  return interpolate_matrix(xi, y);
}

}  // namespace secular
