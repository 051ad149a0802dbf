#include "secular/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "secular/errors.hpp"

namespace secular {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

double abs1(cplx z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

// Diagonal similarity D^{-1} A D with power-of-two entries so that row and
// column norms are comparable. Returns D.
std::vector<double> balance(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> d(n, 1.0);
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  for (int sweep = 0; !done && sweep < 200; ++sweep) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d[i] *= f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return d;
}

// Householder reduction to upper Hessenberg form; accumulates Q when given.
void hessenberg(ComplexMatrix& h, ComplexMatrix* q) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  ComplexVector v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    v.assign(len, cplx{});
    for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
    double tail = 0.0;
    for (std::size_t i = 1; i < len; ++i) tail = std::max(tail, std::abs(v[i]));
    if (tail == 0.0) continue;
    const double xnorm = norm2(v);
    const cplx x0 = v[0];
    const cplx phase = x0 == cplx{} ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;
    v[0] -= alpha;
    normalize(v);

    for (std::size_t j = k; j < n; ++j) {
      cplx s{};
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      s *= 2.0;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * s;
    }
    auto apply_right = [&](ComplexMatrix& m) {
      for (std::size_t i = 0; i < n; ++i) {
        cplx s{};
        for (std::size_t j = 0; j < len; ++j) s += m(i, k + 1 + j) * v[j];
        s *= 2.0;
        for (std::size_t j = 0; j < len; ++j) m(i, k + 1 + j) -= s * std::conj(v[j]);
      }
    };
    apply_right(h);
    if (q) apply_right(*q);
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// G = [c s; -conj(s) c] with G [a; b] = [r; 0].
struct Givens {
  double c = 1.0;
  cplx s{};
};

Givens make_givens(cplx a, cplx b) {
  Givens g;
  if (b == cplx{}) return g;
  if (a == cplx{}) {
    g.c = 0.0;
    g.s = std::conj(b) / std::abs(b);
    return g;
  }
  const double aa = std::abs(a);
  const double r = std::hypot(aa, std::abs(b));
  g.c = aa / r;
  g.s = (a / aa) * std::conj(b) / r;
  return g;
}

void rotate_rows(ComplexMatrix& h, const Givens& g, std::size_t p, std::size_t q,
                 std::size_t col_begin, std::size_t col_end) {
  for (std::size_t j = col_begin; j < col_end; ++j) {
    cplx x = h(p, j), y = h(q, j);
    h(p, j) = g.c * x + g.s * y;
    h(q, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// M <- M G^*
void rotate_cols(ComplexMatrix& h, const Givens& g, std::size_t p, std::size_t q,
                 std::size_t row_end) {
  for (std::size_t i = 0; i < row_end; ++i) {
    cplx x = h(i, p), y = h(i, q);
    h(i, p) = g.c * x + std::conj(g.s) * y;
    h(i, q) = -g.s * x + g.c * y;
  }
}

// Eigenvalue of the trailing 2x2 block closest to its bottom-right entry.
cplx wilkinson_shift(const ComplexMatrix& h, std::size_t iu) {
  cplx a = h(iu - 1, iu - 1), b = h(iu - 1, iu), c = h(iu, iu - 1), d = h(iu, iu);
  const double scale = abs1(a) + abs1(b) + abs1(c) + abs1(d);
  if (scale == 0.0) return d;
  a /= scale;
  b /= scale;
  c /= scale;
  d /= scale;
  const cplx tr = a + d;
  const cplx det = a * d - b * c;
  const cplx disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
  cplx e1 = 0.5 * (tr + disc);
  cplx e2 = 0.5 * (tr - disc);
  if (std::abs(e1) > std::abs(e2)) {
    if (e1 != cplx{}) e2 = det / e1;
  } else if (e2 != cplx{}) {
    e1 = det / e2;
  }
  cplx pick = std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
  return pick * scale;
}

// Single-shift QR on an upper Hessenberg matrix. On return h is upper
// triangular; z (when given) accumulates the unitary transformations.
void schur(ComplexMatrix& h, ComplexMatrix* z) {
  const std::size_t n = h.rows();
  if (n < 2) return;
  const double hnorm = std::max(h.norm_fro(), kSafeMin);
  const std::size_t max_iter = 30 * n;
  std::size_t iu = n - 1;
  std::size_t iter = 0, total = 0;

  auto negligible = [&](std::size_t k) {
    double tst = abs1(h(k - 1, k - 1)) + abs1(h(k, k));
    if (tst == 0.0) tst = hnorm;
    return abs1(h(k, k - 1)) <= kEps * tst || abs1(h(k, k - 1)) < kSafeMin;
  };

  while (true) {
    while (iu > 0 && negligible(iu)) {
      h(iu, iu - 1) = 0.0;
      --iu;
      iter = 0;
    }
    if (iu == 0) break;
    std::size_t il = iu - 1;
    while (il > 0 && !negligible(il)) --il;
    if (il > 0) h(il, il - 1) = 0.0;

    ++iter;
    if (++total > max_iter) {
      std::vector<std::size_t> deflated(n - iu - 1);
      std::iota(deflated.begin(), deflated.end(), iu + 1);
      throw ConvergenceError("QR iteration did not converge after " + std::to_string(max_iter) +
                                 " iterations",
                             std::move(deflated));
    }

    cplx shift;
    if (iter == 10 || iter == 20) {
      shift = std::abs(h(iu, iu - 1).real()) +
              (iu >= 2 ? std::abs(h(iu - 1, iu - 2).real()) : 0.0);
    } else if (iter > 20 && iter % 8 == 0) {
      shift = h(iu, iu) + cplx(0.75, 0.4375) * std::abs(h(iu, iu - 1));
    } else {
      shift = wilkinson_shift(h, iu);
    }

    Givens g = make_givens(h(il, il) - shift, h(il + 1, il));
    rotate_rows(h, g, il, il + 1, il, n);
    rotate_cols(h, g, il, il + 1, std::min(il + 2, iu) + 1);
    if (z) rotate_cols(*z, g, il, il + 1, n);
    for (std::size_t i = il + 1; i < iu; ++i) {
      g = make_givens(h(i, i - 1), h(i + 1, i - 1));
      rotate_rows(h, g, i, i + 1, i - 1, n);
      h(i + 1, i - 1) = 0.0;
      rotate_cols(h, g, i, i + 1, std::min(i + 2, iu) + 1);
      if (z) rotate_cols(*z, g, i, i + 1, n);
    }
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) h(i, j) = 0.0;
}

// Right eigenvector of upper triangular t for the k-th diagonal entry.
ComplexVector triangular_right(const ComplexMatrix& t, std::size_t k) {
  ComplexVector x(k + 1);
  x[k] = 1.0;
  const cplx lambda = t(k, k);
  const double smin = std::max(kEps * std::abs(lambda), kSafeMin * 1e3);
  for (std::size_t i = k; i-- > 0;) {
    cplx s = t(i, k);
    for (std::size_t j = i + 1; j < k; ++j) s += t(i, j) * x[j];
    cplx d = t(i, i) - lambda;
    if (std::abs(d) < smin) d = smin;
    x[i] = -s / d;
    const double big = std::abs(x[i]);
    if (big > 1e150) {
      for (std::size_t j = i; j <= k; ++j) x[j] /= big;
    }
  }
  return x;
}

// z with z^T t = t(k,k) z^T, z_j = 0 for j < k.
ComplexVector triangular_left(const ComplexMatrix& t, std::size_t k) {
  const std::size_t n = t.rows();
  ComplexVector z(n);
  z[k] = 1.0;
  const cplx lambda = t(k, k);
  const double smin = std::max(kEps * std::abs(lambda), kSafeMin * 1e3);
  for (std::size_t j = k + 1; j < n; ++j) {
    cplx s{};
    for (std::size_t i = k; i < j; ++i) s += z[i] * t(i, j);
    cplx d = lambda - t(j, j);
    if (std::abs(d) < smin) d = smin;
    z[j] = s / d;
    const double big = std::abs(z[j]);
    if (big > 1e150) {
      for (std::size_t i = k; i <= j; ++i) z[i] /= big;
    }
  }
  return z;
}

std::vector<std::size_t> modulus_order(const std::vector<cplx>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double ma = std::abs(values[a]), mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    return std::arg(values[a]) < std::arg(values[b]);
  });
  return order;
}

double pencil_residual(const ComplexMatrix& a1, const ComplexMatrix& a0, double n1, double n0,
                       cplx lambda, const ComplexVector& v) {
  ComplexVector r = matvec(a0, v);
  ComplexVector r1 = matvec(a1, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = lambda * r1[i] - r[i];
  const double denom = (std::abs(lambda) * n1 + n0) * norm2(v);
  return denom > 0.0 ? norm2(r) / denom : norm2(r);
}

void check_input(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("eigenproblem needs a square matrix");
  if (!m.all_finite()) throw InvalidArgument("eigenproblem input has non-finite entries");
}

}  // namespace

Pencil::Pencil(ComplexMatrix a1, ComplexMatrix a0) : A1(std::move(a1)), A0(std::move(a0)) {
  if (!A1.is_square() || !A0.is_square() || A1.rows() != A0.rows())
    throw InvalidArgument("pencil matrices must be square and of equal size");
}

std::vector<cplx> eigenvalues(const ComplexMatrix& m) {
  check_input(m);
  ComplexMatrix h = m;
  balance(h);
  hessenberg(h, nullptr);
  schur(h, nullptr);
  std::vector<cplx> out(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) out[i] = h(i, i);
  return out;
}

EigenReport eig_dense(const ComplexMatrix& m) {
  check_input(m);
  const std::size_t n = m.rows();
  ComplexMatrix t = m;
  std::vector<double> d = balance(t);
  ComplexMatrix z = ComplexMatrix::identity(n);
  hessenberg(t, &z);
  schur(t, &z);

  std::vector<cplx> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = t(i, i);

  EigenReport rep;
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const double n1 = id.norm_fro(), n0 = m.norm_fro();
  for (std::size_t k : modulus_order(values)) {
    ComplexVector x = triangular_right(t, k);
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx s{};
      for (std::size_t j = 0; j <= k; ++j) s += z(i, j) * x[j];
      v[i] = s * d[i];
    }
    normalize(v);

    ComplexVector zl = triangular_left(t, k);
    ComplexVector w(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx s{};
      for (std::size_t j = k; j < n; ++j) s += z(i, j) * std::conj(zl[j]);
      w[i] = s / d[i];
    }
    normalize(w);

    const double denom = std::abs(dot(w, v));
    rep.eigenvalues.push_back(values[k]);
    rep.residuals.push_back(pencil_residual(id, m, n1, n0, values[k], v));
    rep.cond.push_back(denom < 1e-300 ? std::numeric_limits<double>::infinity() : 1.0 / denom);
    rep.right.push_back(std::move(v));
    rep.left.push_back(std::move(w));
  }
  return rep;
}

EigenReport eig_pencil(const Pencil& pencil) {
  check_input(pencil.A1);
  check_input(pencil.A0);
  LuDecomposition lu(pencil.A1);
  if (lu.singular(kSingularPivotTolerance))
    throw Error(ErrorCode::LeadingBlockSingular, "leading matrix of the pencil is singular");
  ComplexMatrix inv = lu.inverse();
  const double cond = pencil.A1.norm_one() * inv.norm_one();
  if (!(cond < kMaxLeadingCondition))
    throw Error(ErrorCode::LeadingBlockSingular,
                "leading matrix of the pencil is ill conditioned (cond_1 = " +
                    std::to_string(cond) + ")");

  EigenReport rep = eig_dense(inv * pencil.A0);
  const double n1 = pencil.A1.norm_fro(), n0 = pencil.A0.norm_fro();
  for (std::size_t k = 0; k < rep.size(); ++k) {
    // y^* A1^{-1} A0 = lambda y^*  =>  w = A1^{-*} y satisfies w^* (lambda A1 - A0) = 0.
    rep.left[k] = lu.solve_adjoint(rep.left[k]);
    normalize(rep.left[k]);
    rep.residuals[k] =
        pencil_residual(pencil.A1, pencil.A0, n1, n0, rep.eigenvalues[k], rep.right[k]);
  }
  rep.cond = cond_pencil(pencil, rep);
  return rep;
}

std::vector<double> cond_pencil(const Pencil& pencil, const EigenReport& report) {
  if (report.right.size() != report.size() || report.left.size() != report.size())
    throw InvalidArgument("eigen report lacks eigenvectors");
  std::vector<double> out;
  out.reserve(report.size());
  for (std::size_t k = 0; k < report.size(); ++k) {
    const auto& v = report.right[k];
    const auto& w = report.left[k];
    const double denom = std::abs(dot(w, matvec(pencil.A1, v)));
    out.push_back(denom < 1e-300 ? std::numeric_limits<double>::infinity()
                                 : norm2(v) * norm2(w) / denom);
  }
  return out;
}

double cond_poly(const MatrixPolynomial& p, cplx lambda, std::span<const cplx> v,
                 std::span<const cplx> w) {
  if (norm2(v) == 0.0 || norm2(w) == 0.0) throw InvalidArgument("cond_poly needs nonzero vectors");
  ComplexMatrix dp = eval(p.derivative(), lambda);
  const double denom = std::abs(dot(w, matvec(dp, v)));
  if (denom < 1e-300) return std::numeric_limits<double>::infinity();
  return norm2(v) * norm2(w) / denom;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  const double scale = a.max_abs();
  if (scale == 0.0) return 0.0;
  ComplexMatrix b = a * (1.0 / scale);
  double best = 0.0;
  for (cplx ev : eigenvalues(b.adjoint() * b)) best = std::max(best, ev.real());
  return scale * std::sqrt(std::max(best, 0.0));
}

// ---------------------------------------------------------------------------
// Secular pencil and eigenvector maps

Pencil secular_pencil(const SecularForm& s) {
  if (!s.is_linear()) throw InvalidArgument("secular_pencil needs linear blocks");
  const std::size_t m = s.size(), q = s.block_count();
  const std::size_t n = m * q;
  ComplexMatrix a1(n, n), a0(n, n);
  const ComplexMatrix id = ComplexMatrix::identity(m);
  for (std::size_t i = 0; i < q; ++i) {
    const cplx beta = -s.spec().blocks[i][0];
    if (i + 1 < q) {
      a1.set_block(i * m, i * m, id);
      a0.set_block(i * m, i * m, beta * id);
    } else {
      a1.set_block(i * m, i * m, s.leading());
      a0.set_block(i * m, i * m, beta * s.leading() - s.shift() * id);
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    const ComplexMatrix w = s.weights()[j].coeff(0);
    for (std::size_t i = 0; i < q; ++i) a0.add_block(i * m, j * m, w, -1.0);
  }
  return Pencil(std::move(a1), std::move(a0));
}

namespace {

constexpr double kBlockSingularTolerance = 1e-12;

std::vector<LuDecomposition> factor_blocks(const SecularForm& s, cplx lambda) {
  std::vector<LuDecomposition> out;
  out.reserve(s.block_count());
  for (std::size_t i = 0; i < s.block_count(); ++i) {
    ComplexMatrix b = s.block_at(i, lambda);
    LuDecomposition lu(b);
    if (b.is_zero() || lu.singular(kBlockSingularTolerance))
      throw Error(ErrorCode::BlockSingularAtEigenvalue,
                  "block B_" + std::to_string(i + 1) + " is singular at the eigenvalue");
    out.push_back(std::move(lu));
  }
  return out;
}

void check_stacked(const SecularForm& s, std::span<const cplx> x) {
  if (x.size() != s.size() * s.block_count())
    throw InvalidArgument("stacked vector has length " + std::to_string(x.size()) + ", expected " +
                          std::to_string(s.size() * s.block_count()));
}

double relative_to_poly(const MatrixPolynomial& p, cplx lambda, const ComplexVector& r,
                        const ComplexVector& v) {
  const double denom = p.norm_sum(std::abs(lambda)) * norm2(v);
  return denom > 0.0 ? norm2(r) / denom : norm2(r);
}

}  // namespace

MappedVector map_right_vector(const MatrixPolynomial& p, const SecularForm& s, cplx lambda,
                              std::span<const cplx> va) {
  check_stacked(s, va);
  const std::size_t m = s.size(), q = s.block_count();
  auto lus = factor_blocks(s, lambda);
  ComplexVector acc(m);
  for (std::size_t j = 0; j < q; ++j) {
    ComplexVector wj = matvec(s.weight_at(j, lambda), va.subspan(j * m, m));
    for (std::size_t i = 0; i < m; ++i) acc[i] += wj[i];
  }
  for (const auto& lu : lus) acc = lu.solve(acc);
  for (cplx& z : acc) z = -z;
  if (norm2(acc) == 0.0)
    throw Error(ErrorCode::DegenerateLift, "mapped right eigenvector is zero");
  normalize(acc);
  MappedVector out;
  out.residual = relative_to_poly(p, lambda, matvec(eval(p, lambda), acc), acc);
  out.vector = std::move(acc);
  return out;
}

MappedVector lift_right_vector(const SecularForm& s, cplx lambda, std::span<const cplx> v) {
  const std::size_t m = s.size(), q = s.block_count();
  if (v.size() != m) throw InvalidArgument("vector length does not match the polynomial size");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < q; ++i) blocks.push_back(s.block_at(i, lambda));
  ComplexVector va(m * q);
  for (std::size_t i = 0; i < q; ++i) {
    ComplexVector x(v.begin(), v.end());
    for (std::size_t j = 0; j < q; ++j)
      if (j != i) x = matvec(blocks[j], x);
    std::copy(x.begin(), x.end(), va.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  if (norm2(va) == 0.0) throw Error(ErrorCode::DegenerateLift, "lifted eigenvector is zero");
  normalize(va);
  ComplexMatrix a = s.assembled_at(lambda);
  const double an = a.norm_inf();
  const double r = norm2(matvec(a, va));
  return {std::move(va), an > 0.0 ? r / an : r};
}

MappedVector map_left_vector(const MatrixPolynomial& p, const SecularForm& s, cplx lambda,
                             std::span<const cplx> ua) {
  check_stacked(s, ua);
  const std::size_t m = s.size(), q = s.block_count();
  factor_blocks(s, lambda);
  ComplexVector u(m);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t k = 0; k < m; ++k) u[k] += ua[i * m + k];
  if (norm2(u) == 0.0) throw Error(ErrorCode::DegenerateLift, "mapped left eigenvector is zero");
  normalize(u);
  MappedVector out;
  out.residual = relative_to_poly(p, lambda, adjoint_matvec(eval(p, lambda), u), u);
  out.vector = std::move(u);
  return out;
}

MappedVector lift_left_vector(const SecularForm& s, cplx lambda, std::span<const cplx> u) {
  const std::size_t m = s.size(), q = s.block_count();
  if (u.size() != m) throw InvalidArgument("vector length does not match the polynomial size");
  auto lus = factor_blocks(s, lambda);
  ComplexVector ua(m * q);
  for (std::size_t i = 0; i < q; ++i) {
    ComplexVector x = lus[i].solve_adjoint(adjoint_matvec(s.weight_at(i, lambda), u));
    for (std::size_t k = 0; k < m; ++k) ua[i * m + k] = -x[k];
  }
  if (norm2(ua) == 0.0) throw Error(ErrorCode::DegenerateLift, "lifted left eigenvector is zero");
  normalize(ua);
  ComplexMatrix a = s.assembled_at(lambda);
  const double an = a.norm_inf();
  const double r = norm2(adjoint_matvec(a, ua));
  return {std::move(ua), an > 0.0 ? r / an : r};
}

double collinearity(std::span<const cplx> a, std::span<const cplx> b) noexcept {
  const double na = norm2(a), nb = norm2(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(dot(a, b)) / (na * nb);
}

}  // namespace secular
