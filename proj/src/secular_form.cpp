#include "secular/secular_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "secular/eigen.hpp"
#include "secular/errors.hpp"
#include "secular/modarith.hpp"
#include "secular/rng.hpp"

namespace secular {

int BlockSpec::total_degree() const noexcept {
  int d = 0;
  for (const auto& b : blocks) d += b.degree();
  return d;
}

int BlockSpec::max_degree() const noexcept {
  int d = 0;
  for (const auto& b : blocks) d = std::max(d, b.degree());
  return d;
}

namespace {

void check_blocks(std::span<const ScalarPolynomial> blocks) {
  if (blocks.empty()) throw InvalidArgument("block list is empty");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].degree() < 1)
      throw InvalidArgument("block b_" + std::to_string(i + 1) + " must have positive degree");
    if (!blocks[i].is_monic())
      throw InvalidArgument("block b_" + std::to_string(i + 1) + " must be monic");
  }
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string node_text(cplx z) { return "(" + sci(z.real()) + ", " + sci(z.imag()) + ")"; }

struct ShiftScan {
  ShiftReport report;
  cplx worst_node{};
};

ShiftScan scan_shift(const ComplexMatrix& leading, std::span<const ScalarPolynomial> blocks,
                     cplx s) {
  ShiftScan out;
  ShiftReport& rep = out.report;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.min_relative_margin = std::numeric_limits<double>::infinity();
  const std::size_t q = blocks.size();
  if (q < 2) {
    rep.acceptable = true;
    return out;
  }
  const std::vector<cplx> lambdas = eigenvalues(leading);
  const double pn = leading.norm_inf();
  const ScalarPolynomial& bq = blocks[q - 1];
  for (std::size_t i = 0; i + 1 < q; ++i) {
    NodeSet xi = roots(blocks[i]);
    for (cplx x : xi.nodes()) {
      const cplx bx = bq(x);
      const double scale = pn * std::abs(bx) + std::abs(s);
      for (cplx l : lambdas) {
        const double margin = std::abs(l * bx + s);
        rep.margins.push_back(margin);
        rep.min_margin = std::min(rep.min_margin, margin);
        const double rel = scale > 0.0 ? margin / scale : 0.0;
        if (rel < rep.min_relative_margin) {
          rep.min_relative_margin = rel;
          out.worst_node = x;
        }
      }
    }
  }
  rep.acceptable = rep.min_relative_margin >= kShiftMarginTolerance;
  return out;
}

double sampling_radius(const SecularForm& s) {
  double r = 1.0;
  for (const auto& b : s.spec().blocks) {
    try {
      const NodeSet xi = roots(b);
      for (cplx z : xi.nodes()) r = std::max(r, std::abs(z));
    } catch (const InvalidArgument&) {
      // Repeated roots: Cauchy bound.
      double bound = 0.0;
      for (std::size_t k = 0; k + 1 < b.coeffs().size(); ++k)
        bound = std::max(bound, std::abs(b[k]));
      r = std::max(r, 1.0 + bound);
    }
  }
  return r;
}

// Mantissa/exponent pair value = m * 2^e with |m| kept near 1.
struct Scaled {
  cplx m = 1.0;
  long e = 0;

  void normalize() {
    const double a = std::max(std::abs(m.real()), std::abs(m.imag()));
    if (a == 0.0 || !std::isfinite(a)) return;
    int k = 0;
    std::frexp(a, &k);
    m = cplx(std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k));
    e += k;
  }
  void mul(cplx z) {
    m *= z;
    normalize();
  }
};

struct ScaledMatrix {
  ComplexMatrix m;
  long e = 0;

  void normalize() {
    const double a = m.max_abs();
    if (a == 0.0 || !std::isfinite(a)) return;
    int k = 0;
    std::frexp(a, &k);
    for (cplx& z : m.entries()) z = cplx(std::ldexp(z.real(), -k), std::ldexp(z.imag(), -k));
    e += k;
  }
};

cplx ldexp_c(cplx z, long k) {
  const int ki = static_cast<int>(std::clamp(k, -100000L, 100000L));
  return {std::ldexp(z.real(), ki), std::ldexp(z.imag(), ki)};
}

// P(x) as mantissa * 2^e, Horner with renormalization at every step.
ScaledMatrix scaled_eval(const MatrixPolynomial& p, cplx x) {
  const std::size_t m = p.size();
  ScaledMatrix acc{ComplexMatrix(m, m), 0};
  for (std::size_t k = p.coeff_count(); k-- > 0;) {
    acc.m *= x;
    acc.normalize();
    const ComplexMatrix& c = p.coeffs()[k];
    const double cmax = c.max_abs();
    if (cmax == 0.0) continue;
    int kc = 0;
    std::frexp(cmax, &kc);
    const double amax = acc.m.max_abs();
    const long target = amax == 0.0 ? kc : std::max(acc.e, static_cast<long>(kc));
    ComplexMatrix sum(m, m);
    for (std::size_t i = 0; i < m * m; ++i)
      sum.entries()[i] = ldexp_c(acc.m.entries()[i], acc.e - target) +
                         ldexp_c(c.entries()[i], -target);
    acc.m = std::move(sum);
    acc.e = target;
    acc.normalize();
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------

SecularForm::SecularForm(BlockSpec spec, ComplexMatrix leading, std::vector<MatrixPolynomial> weights)
    : spec_(std::move(spec)), leading_(std::move(leading)), weights_(std::move(weights)) {
  check_blocks(spec_.blocks);
  if (!leading_.is_square() || leading_.empty())
    throw InvalidArgument("leading coefficient must be a nonempty square matrix");
  if (weights_.size() != spec_.count())
    throw InvalidArgument("expected " + std::to_string(spec_.count()) + " weights, got " +
                          std::to_string(weights_.size()));
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].size() != leading_.rows())
      throw InvalidArgument("weight W_" + std::to_string(i + 1) + " has the wrong size");
    if (weights_[i].degree() >= spec_.blocks[i].degree())
      throw InvalidArgument("weight W_" + std::to_string(i + 1) + " has degree " +
                            std::to_string(weights_[i].degree()) + " >= " +
                            std::to_string(spec_.blocks[i].degree()));
  }
}

bool SecularForm::is_linear() const noexcept {
  return std::all_of(spec_.blocks.begin(), spec_.blocks.end(),
                     [](const ScalarPolynomial& b) { return b.degree() == 1; });
}

MatrixPolynomial SecularForm::block(std::size_t i) const {
  const std::size_t m = size();
  const ScalarPolynomial& b = spec_.blocks.at(i);
  const bool last = i + 1 == block_count();
  const ComplexMatrix id = ComplexMatrix::identity(m);
  std::vector<ComplexMatrix> c;
  for (std::size_t k = 0; k < b.coeffs().size(); ++k) {
    ComplexMatrix ck = b[k] * (last ? leading_ : id);
    if (last && k == 0) ck += spec_.shift * id;
    c.push_back(std::move(ck));
  }
  return MatrixPolynomial(m, std::move(c));
}

ComplexMatrix SecularForm::block_at(std::size_t i, cplx x) const {
  const ScalarPolynomial& b = spec_.blocks.at(i);
  const ComplexMatrix id = ComplexMatrix::identity(size());
  if (i + 1 < block_count()) return b(x) * id;
  return b(x) * leading_ + spec_.shift * id;
}

ComplexMatrix SecularForm::weight_at(std::size_t i, cplx x) const { return eval(weights_.at(i), x); }

ComplexMatrix SecularForm::assembled_at(cplx x) const {
  const std::size_t m = size(), q = block_count();
  ComplexMatrix a(m * q, m * q);
  for (std::size_t j = 0; j < q; ++j) {
    a.add_block(j * m, j * m, block_at(j, x));
    const ComplexMatrix w = weight_at(j, x);
    for (std::size_t i = 0; i < q; ++i) a.add_block(i * m, j * m, w);
  }
  return a;
}

// ---------------------------------------------------------------------------

ShiftReport validate_shift(const ComplexMatrix& leading, const BlockSpec& spec) {
  check_blocks(spec.blocks);
  return scan_shift(leading, spec.blocks, spec.shift).report;
}

cplx default_shift(const ComplexMatrix& leading, std::span<const ScalarPolynomial> blocks) {
  check_blocks(blocks);
  if (scan_shift(leading, blocks, 0.0).report.acceptable) return 0.0;
  const cplx s = 1.0 + leading.norm_inf();
  ShiftScan scan = scan_shift(leading, blocks, s);
  if (!scan.report.acceptable)
    throw SingularAtNode("no acceptable shift: b_q(xi) P_n + s I is singular near node " +
                             node_text(scan.worst_node),
                         scan.worst_node);
  return s;
}

SecularForm build_ellification(const MatrixPolynomial& p, const BlockSpec& spec) {
  check_blocks(spec.blocks);
  const int n = p.degree();
  if (n < 1) throw InvalidArgument("polynomial must have degree at least 1");
  if (spec.total_degree() != n)
    throw Error(ErrorCode::DegreeMismatch, "block degrees add up to " +
                                               std::to_string(spec.total_degree()) +
                                               ", polynomial degree is " + std::to_string(n));
  const std::size_t q = spec.count(), m = p.size();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      ExtGcdResult g = ext_gcd(spec.blocks[i], spec.blocks[j]);
      if (g.g.degree() > 0)
        throw NotCoprime("blocks b_" + std::to_string(i + 1) + " and b_" + std::to_string(j + 1) +
                             " share a factor of degree " + std::to_string(g.g.degree()),
                         std::vector<cplx>(g.g.coeffs().begin(), g.g.coeffs().end()));
    }

  const ComplexMatrix leading = p.leading();
  ShiftScan scan = scan_shift(leading, spec.blocks, spec.shift);
  if (!scan.report.acceptable)
    throw SingularAtNode("shift margin violated at node " + node_text(scan.worst_node) +
                             " (relative margin " +
                             std::to_string(scan.report.min_relative_margin) + ")",
                         scan.worst_node);

  const ScalarPolynomial& bq = spec.blocks[q - 1];
  const ComplexMatrix id = ComplexMatrix::identity(m);
  std::vector<MatrixPolynomial> weights(q);

  for (std::size_t i = 0; i + 1 < q; ++i) {
    NodeSet xi = roots(spec.blocks[i]);
    std::vector<ComplexMatrix> values;
    values.reserve(xi.size());
    for (cplx x : xi.nodes()) {
      cplx prod = 1.0;
      for (std::size_t j = 0; j + 1 < q; ++j)
        if (j != i) prod *= spec.blocks[j](x);
      ComplexMatrix c = bq(x) * leading + spec.shift * id;
      LuDecomposition lu(c);
      if (c.is_zero() || lu.singular(kSingularPivotTolerance))
        throw SingularAtNode("b_q(xi) P_n + s I is singular at node " + node_text(x), x);
      // W_i(xi) = P(xi) C_i(xi)^{-1}
      ComplexMatrix w = lu.inverse();
      values.push_back(eval(p, x) * w * (1.0 / prod));
    }
    weights[i] = interpolate_matrix(xi, values);
  }

  // W_q = [alpha P - s I - s sum_j alpha_j W_j] mod b_q with alpha = (prod_{j<q} b_j)^{-1} and
  // alpha_j = b_j^{-1} mod b_q, taken at the roots of b_q and interpolated.
  {
    NodeSet xi = roots(bq);
    std::vector<ComplexMatrix> values;
    values.reserve(xi.size());
    for (cplx x : xi.nodes()) {
      cplx prod = 1.0;
      for (std::size_t j = 0; j + 1 < q; ++j) prod *= spec.blocks[j](x);
      ComplexMatrix w = eval(p, x) * (1.0 / prod) - spec.shift * id;
      if (spec.shift != cplx{})
        for (std::size_t j = 0; j + 1 < q; ++j)
          w -= eval(weights[j], x) * (spec.shift / spec.blocks[j](x));
      values.push_back(std::move(w));
    }
    weights[q - 1] = interpolate_matrix(xi, values);
  }

  SecularForm form(spec, leading, std::move(weights));
  const double res =
      verify_reconstruction(p, form, 2 * static_cast<std::size_t>(n) + 2, 0x5ec0ULL);
  if (!(res <= kReconstructionTolerance))
    throw Error(ErrorCode::NumericalFailure,
                "reconstruction residual " + sci(res) + " exceeds tolerance");
  return form;
}

SecularForm build_ellification(const MatrixPolynomial& p, std::vector<ScalarPolynomial> blocks) {
  check_blocks(blocks);
  BlockSpec spec{std::move(blocks), 0.0};
  spec.shift = default_shift(p.leading(), spec.blocks);
  return build_ellification(p, spec);
}

SecularForm build_linear(const MatrixPolynomial& p, std::span<const cplx> betas,
                         std::optional<cplx> shift) {
  const int deg = p.degree();
  if (deg < 1) throw InvalidArgument("polynomial must have degree at least 1");
  const std::size_t n = static_cast<std::size_t>(deg), m = p.size();
  if (betas.size() != n)
    throw Error(ErrorCode::DegreeMismatch, "expected " + std::to_string(n) + " nodes, got " +
                                               std::to_string(betas.size()));
  for (cplx b : betas)
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
      throw InvalidArgument("nodes must be finite");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(betas[i] - betas[j]) <=
          1e-12 * std::max(std::abs(betas[i]), std::abs(betas[j])))
        throw Error(ErrorCode::DuplicateNode, "nodes " + std::to_string(i + 1) + " and " +
                                                  std::to_string(j + 1) + " coincide");

  BlockSpec spec;
  for (cplx b : betas) spec.blocks.push_back(ScalarPolynomial::linear(b));
  const ComplexMatrix leading = p.leading();
  if (shift) {
    spec.shift = *shift;
    ShiftScan scan = scan_shift(leading, spec.blocks, spec.shift);
    if (!scan.report.acceptable)
      throw SingularAtNode("shift margin violated at node " + node_text(scan.worst_node),
                           scan.worst_node);
  } else {
    spec.shift = default_shift(leading, spec.blocks);
  }
  const cplx s = spec.shift;
  const cplx bn = betas[n - 1];
  const ComplexMatrix id = ComplexMatrix::identity(m);

  // P(beta_i) / prod_{j != i, j < n} (beta_i - beta_j), kept as mantissa * 2^e.
  auto scaled_ratio = [&](std::size_t i) {
    ScaledMatrix v = scaled_eval(p, betas[i]);
    Scaled d;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (j != i) d.mul(betas[i] - betas[j]);
    v.m *= 1.0 / d.m;
    v.e -= d.e;
    return v;
  };
  auto unscale = [](const ScaledMatrix& v) {
    ComplexMatrix out = v.m;
    for (cplx& z : out.entries()) z = ldexp_c(z, v.e);
    return out;
  };

  std::vector<MatrixPolynomial> weights;
  weights.reserve(n);
  ComplexMatrix correction(m, m);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ComplexMatrix c = (betas[i] - bn) * leading + s * id;
    LuDecomposition lu(c);
    if (c.is_zero() || lu.singular(kSingularPivotTolerance))
      throw SingularAtNode("(beta_i - beta_n) P_n + s I is singular at node " +
                               node_text(betas[i]),
                           betas[i]);
    ScaledMatrix v = scaled_ratio(i);
    v.m = v.m * lu.inverse();
    ComplexMatrix w = unscale(v);
    if (s != cplx{}) correction.add_block(0, 0, w, s / (bn - betas[i]));
    weights.push_back(MatrixPolynomial::constant(w));
  }
  {
    ComplexMatrix w = unscale(scaled_ratio(n - 1));
    w -= s * id;
    w -= correction;
    weights.push_back(MatrixPolynomial::constant(w));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!weights[i].coeff(0).all_finite())
      throw Error(ErrorCode::NumericalFailure,
                  "weight W_" + std::to_string(i + 1) + " is not representable");
  return SecularForm(std::move(spec), leading, std::move(weights));
}

// ---------------------------------------------------------------------------

MatrixPolynomial assemble_dense(const SecularForm& s) {
  const std::size_t m = s.size(), q = s.block_count();
  const std::size_t dim = m * q;
  std::vector<ComplexMatrix> c(static_cast<std::size_t>(s.degree()) + 1, ComplexMatrix(dim, dim));
  for (std::size_t j = 0; j < q; ++j) {
    MatrixPolynomial b = s.block(j);
    for (std::size_t k = 0; k < b.coeff_count(); ++k) c[k].add_block(j * m, j * m, b.coeffs()[k]);
    const MatrixPolynomial& w = s.weights()[j];
    for (std::size_t k = 0; k < w.coeff_count(); ++k)
      for (std::size_t i = 0; i < q; ++i) c[k].add_block(i * m, j * m, w.coeffs()[k]);
  }
  return MatrixPolynomial(dim, std::move(c));
}

MatrixPolynomial assemble_sparse(const SecularForm& s) {
  const std::size_t m = s.size(), q = s.block_count();
  const std::size_t dim = m * q;
  std::vector<ComplexMatrix> c(static_cast<std::size_t>(s.degree()) + 1, ComplexMatrix(dim, dim));
  for (std::size_t j = 0; j < q; ++j) {
    const MatrixPolynomial& w = s.weights()[j];
    for (std::size_t k = 0; k < w.coeff_count(); ++k) c[k].add_block(0, j * m, w.coeffs()[k]);
    MatrixPolynomial b = s.block(j);
    for (std::size_t k = 0; k < b.coeff_count(); ++k) {
      c[k].add_block(j * m, j * m, b.coeffs()[k]);
      if (j + 1 < q) c[k].add_block((j + 1) * m, j * m, b.coeffs()[k], -1.0);
    }
  }
  return MatrixPolynomial(dim, std::move(c));
}

double verify_reconstruction(const MatrixPolynomial& p, const SecularForm& s, std::size_t samples,
                             std::uint64_t seed) {
  if (samples < static_cast<std::size_t>(std::max(p.degree(), 0)) + 1)
    throw InvalidArgument("verify_reconstruction needs at least deg P + 1 samples");
  if (p.size() != s.size()) throw InvalidArgument("polynomial and secular form sizes differ");
  const std::size_t q = s.block_count();
  const double radius = sampling_radius(s);
  Pcg64 rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < samples; ++t) {
    const cplx x = std::polar(radius, 2.0 * std::numbers::pi * rng.uniform());
    const ComplexMatrix px = eval(p, x);
    std::vector<ComplexMatrix> b(q);
    for (std::size_t i = 0; i < q; ++i) b[i] = s.block_at(i, x);
    ComplexMatrix r = px;
    ComplexMatrix prod = ComplexMatrix::identity(s.size());
    for (const auto& bi : b) prod = prod * bi;
    r -= prod;
    for (std::size_t i = 0; i < q; ++i) {
      ComplexMatrix ci = ComplexMatrix::identity(s.size());
      for (std::size_t k = 0; k < q; ++k)
        if (k != i) ci = ci * b[k];
      r -= s.weight_at(i, x) * ci;
    }
    const double res = r.norm_inf() / (1.0 + px.norm_inf());
    if (!std::isfinite(res)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, res);
  }
  return worst;
}

StrongnessReport check_strong(const SecularForm& s) {
  StrongnessReport rep;
  const auto& blocks = s.spec().blocks;
  const std::size_t q = blocks.size();
  const int d = blocks.front().degree();
  rep.equal_degrees = std::all_of(blocks.begin(), blocks.end(),
                                  [d](const ScalarPolynomial& b) { return b.degree() == d; });
  rep.nonzero_constants = std::all_of(blocks.begin(), blocks.end(),
                                      [](const ScalarPolynomial& b) { return std::abs(b[0]) > 1e-12; });

  rep.reversed_margin = std::numeric_limits<double>::infinity();
  rep.reversed_coprime = true;
  if (q > 1) {
    const std::vector<cplx> lambdas = eigenvalues(s.leading());
    const double pn = s.leading().norm_inf();
    const ScalarPolynomial& bq = blocks[q - 1];
    const ScalarPolynomial bq_rev = bq.reversed(static_cast<std::size_t>(bq.degree()));
    const int dd = s.degree();
    for (std::size_t i = 0; i + 1 < q; ++i) {
      const ScalarPolynomial rev = blocks[i].reversed(static_cast<std::size_t>(blocks[i].degree()));
      if (rev.degree() < 1) continue;
      const NodeSet etas = roots(rev);
      for (cplx eta : etas.nodes()) {
        const cplx br = bq_rev(eta);
        const cplx seta = s.shift() * std::pow(eta, dd);
        const double scale = pn * std::abs(br) + std::abs(seta);
        for (cplx l : lambdas) {
          const double margin = std::abs(br * l + seta);
          rep.reversed_margin = std::min(rep.reversed_margin, margin);
          if (!(scale > 0.0) || margin < kShiftMarginTolerance * scale) rep.reversed_coprime = false;
        }
      }
    }
  }
  rep.strong = rep.equal_degrees && rep.nonzero_constants && rep.reversed_coprime;
  if (!rep.equal_degrees)
    rep.note = "block degrees differ: infinite eigenvalues may be artificially introduced";
  else if (!rep.nonzero_constants)
    rep.note = "some block vanishes at zero";
  else if (!rep.reversed_coprime)
    rep.note = "reversed blocks are not coprime";
  return rep;
}

double determinant_ratio_spread(const MatrixPolynomial& p, const SecularForm& s,
                                std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("determinant_ratio_spread needs at least two samples");
  const double radius = sampling_radius(s);
  Pcg64 rng(seed);
  std::vector<cplx> ratios;
  for (std::size_t t = 0; t < samples; ++t) {
    const double r = radius * (0.5 + rng.uniform());
    const cplx x = std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
    const cplx da = LuDecomposition(s.assembled_at(x)).determinant();
    const cplx dp = LuDecomposition(eval(p, x)).determinant();
    ratios.push_back(da / dp);
  }
  cplx mean{};
  for (cplx z : ratios) mean += z;
  mean /= static_cast<double>(ratios.size());
  double spread = 0.0;
  for (cplx z : ratios) spread = std::max(spread, std::abs(z - mean));
  return spread / std::abs(mean);
}

}  // namespace secular
