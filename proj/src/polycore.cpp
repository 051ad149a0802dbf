#include "secular/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "secular/errors.hpp"
#include "secular/rng.hpp"

namespace secular {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw InvalidArgument("matrix entry count " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  if (!all_finite()) throw InvalidArgument("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw InvalidArgument("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix d(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
  return d;
}

bool ComplexMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](cplx z) { return z == cplx{}; });
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidArgument("block out of range");
  ComplexMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw InvalidArgument("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void ComplexMatrix::add_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b,
                              cplx scale) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw InvalidArgument("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) += scale * b(i, j);
}

double ComplexMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::norm_one() const noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::norm_fro() const noexcept {
  double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (cplx z : data_) s += std::norm(z / scale);
  return scale * std::sqrt(s);
}

double ComplexMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (cplx z : data_) best = std::max(best, std::abs(z));
  return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix size mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix size mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix size mismatch in *");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector size mismatch");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexVector adjoint_matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.rows() != x.size()) throw InvalidArgument("matrix-vector size mismatch");
  ComplexVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += std::conj(a(i, j)) * x[i];
  return y;
}

double norm2(std::span<const cplx> x) noexcept {
  double scale = 0.0;
  for (cplx z : x) scale = std::max(scale, std::abs(z));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (cplx z : x) s += std::norm(z / scale);
  return scale * std::sqrt(s);
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) noexcept {
  cplx s{};
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void normalize(ComplexVector& x) noexcept {
  double n = norm2(x);
  if (n == 0.0) return;
  for (cplx& z : x) z /= n;
}

// ---------------------------------------------------------------------------
// LuDecomposition

LuDecomposition::LuDecomposition(const ComplexMatrix& a) : lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw InvalidArgument("LU requires a square matrix");
  const std::size_t n = a.rows();
  input_norm_ = a.norm_inf();
  min_pivot_ = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    cplx pivot = lu_(k, k);
    if (pivot == cplx{}) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

bool LuDecomposition::singular(double rel_tol) const noexcept {
  if (size() == 0) return false;
  return !(min_pivot_ > rel_tol * input_norm_);
}

cplx LuDecomposition::determinant() const noexcept {
  cplx d = static_cast<double>(sign_);
  for (std::size_t i = 0; i < size(); ++i) d *= lu_(i, i);
  return d;
}

ComplexVector LuDecomposition::solve(std::span<const cplx> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw InvalidArgument("LU solve size mismatch");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw InvalidArgument("LU solve size mismatch");
  ComplexMatrix x(n, b.cols());
  ComplexVector col(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, c);
    ComplexVector s = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, c) = s[i];
  }
  return x;
}

ComplexVector LuDecomposition::solve_adjoint(std::span<const cplx> b) const {
  // P A = L U  =>  A^* = U^* L^* P, so solve U^* y = b, L^* z = y, x = P^T z.
  const std::size_t n = size();
  if (b.size() != n) throw InvalidArgument("LU solve size mismatch");
  ComplexVector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i] -= std::conj(lu_(j, i)) * y[j];
    y[i] /= std::conj(lu_(i, i));
  }
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j < n; ++j) y[i] -= std::conj(lu_(j, i)) * y[j];
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
  return x;
}

ComplexMatrix LuDecomposition::inverse() const {
  return solve(ComplexMatrix::identity(size()));
}

// ---------------------------------------------------------------------------
// ScalarPolynomial

ScalarPolynomial::ScalarPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

ScalarPolynomial::ScalarPolynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) {
  trim();
}

void ScalarPolynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

ScalarPolynomial ScalarPolynomial::constant(cplx c) { return ScalarPolynomial({c}); }

ScalarPolynomial ScalarPolynomial::linear(cplx root) { return ScalarPolynomial({-root, 1.0}); }

ScalarPolynomial ScalarPolynomial::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (cplx r : roots) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return ScalarPolynomial(std::move(c));
}

cplx ScalarPolynomial::operator()(cplx x) const noexcept {
  cplx acc{};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

ScalarPolynomial ScalarPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return ScalarPolynomial(std::move(d));
}

ScalarPolynomial ScalarPolynomial::monic() const {
  if (is_zero()) throw InvalidArgument("the zero polynomial has no monic normalization");
  std::vector<cplx> c(coeffs_);
  cplx lead = c.back();
  for (cplx& z : c) z /= lead;
  c.back() = 1.0;
  return ScalarPolynomial(std::move(c));
}

ScalarPolynomial ScalarPolynomial::reversed(std::size_t k) const {
  if (degree() > static_cast<int>(k)) throw InvalidArgument("reversal order below degree");
  std::vector<cplx> c(k + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[k - i] = coeffs_[i];
  return ScalarPolynomial(std::move(c));
}

double ScalarPolynomial::norm_inf() const noexcept {
  double best = 0.0;
  for (cplx z : coeffs_) best = std::max(best, std::abs(z));
  return best;
}

ScalarPolynomial& ScalarPolynomial::operator+=(const ScalarPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

ScalarPolynomial& ScalarPolynomial::operator-=(const ScalarPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

ScalarPolynomial& ScalarPolynomial::operator*=(cplx s) {
  for (cplx& z : coeffs_) z *= s;
  trim();
  return *this;
}

ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ScalarPolynomial(std::move(c));
}

std::pair<ScalarPolynomial, ScalarPolynomial> divmod(const ScalarPolynomial& a,
                                                     const ScalarPolynomial& b) {
  if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {ScalarPolynomial{}, a};
  std::vector<cplx> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<cplx> q(static_cast<std::size_t>(a.degree() - db + 1));
  const cplx lead = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    cplx f = r[static_cast<std::size_t>(k + db)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(k + db)] = 0.0;
  }
  r.resize(static_cast<std::size_t>(db));
  return {ScalarPolynomial(std::move(q)), ScalarPolynomial(std::move(r))};
}

// ---------------------------------------------------------------------------
// MatrixPolynomial

MatrixPolynomial::MatrixPolynomial(std::size_t m, std::vector<ComplexMatrix> coeffs)
    : m_(m), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.rows() != m_ || c.cols() != m_)
      throw InvalidArgument("matrix polynomial coefficient is " + std::to_string(c.rows()) + "x" +
                            std::to_string(c.cols()) + ", expected " + std::to_string(m_) + "x" +
                            std::to_string(m_));
    if (!c.all_finite()) throw InvalidArgument("matrix polynomial coefficients must be finite");
  }
}

MatrixPolynomial MatrixPolynomial::constant(const ComplexMatrix& c) {
  return MatrixPolynomial(c.rows(), {c});
}

MatrixPolynomial MatrixPolynomial::from_entries(std::size_t m,
                                                std::span<const ScalarPolynomial> entries) {
  if (entries.size() != m * m) throw InvalidArgument("entry grid size mismatch");
  int deg = -1;
  for (const auto& e : entries) deg = std::max(deg, e.degree());
  std::vector<ComplexMatrix> coeffs(static_cast<std::size_t>(std::max(deg, 0) + 1),
                                    ComplexMatrix(m, m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& e = entries[i * m + j];
      for (std::size_t k = 0; k < e.coeffs().size(); ++k) coeffs[k](i, j) = e.coeffs()[k];
    }
  return MatrixPolynomial(m, std::move(coeffs));
}

ComplexMatrix MatrixPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : ComplexMatrix(m_, m_);
}

int MatrixPolynomial::degree() const noexcept {
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

ComplexMatrix MatrixPolynomial::leading() const {
  int d = degree();
  return d < 0 ? ComplexMatrix(m_, m_) : coeffs_[static_cast<std::size_t>(d)];
}

ComplexMatrix MatrixPolynomial::operator()(cplx x) const { return eval(*this, x); }

MatrixPolynomial MatrixPolynomial::derivative() const {
  std::vector<ComplexMatrix> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<double>(i));
  if (d.empty()) d.emplace_back(m_, m_);
  return MatrixPolynomial(m_, std::move(d));
}

ScalarPolynomial MatrixPolynomial::entry(std::size_t i, std::size_t j) const {
  std::vector<cplx> c(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](i, j);
  return ScalarPolynomial(std::move(c));
}

double MatrixPolynomial::norm_sum(double abs_x) const noexcept {
  double s = 0.0;
  double power = 1.0;
  for (const auto& c : coeffs_) {
    s += c.norm_inf() * power;
    power *= abs_x;
  }
  return s;
}

ComplexMatrix eval(const MatrixPolynomial& p, cplx x) {
  const std::size_t m = p.size();
  ComplexMatrix acc(m, m);
  auto coeffs = p.coeffs();
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs[i];
  }
  return acc;
}

MatrixPolynomial reverse(const MatrixPolynomial& p, std::size_t k) {
  if (p.degree() > static_cast<int>(k))
    throw InvalidArgument("reverse: k = " + std::to_string(k) + " is below the degree " +
                          std::to_string(p.degree()));
  std::vector<ComplexMatrix> c(k + 1, ComplexMatrix(p.size(), p.size()));
  for (std::size_t i = 0; i <= k; ++i) c[k - i] = p.coeff(i);
  return MatrixPolynomial(p.size(), std::move(c));
}

bool is_regular(const MatrixPolynomial& p, std::size_t trials, std::uint64_t seed) {
  const std::size_t need = static_cast<std::size_t>(std::max(p.degree(), 0)) * p.size() + 1;
  if (trials < need)
    throw InvalidArgument("is_regular needs at least " + std::to_string(need) + " trials");
  if (p.degree() < 0) return false;
  Pcg64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    cplx x = 0.0;
    if (t > 0) x = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    ComplexMatrix v = eval(p, x);
    if (v.is_zero()) continue;
    LuDecomposition lu(v);
    if (!lu.singular(kSingularPivotTolerance)) return true;
  }
  return false;
}

}  // namespace secular
