#include "torus_lab/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torus_lab {

namespace {
constexpr double kZeroCoeff = 0.0;
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(long deg, double a) {
  if (deg < 0) throw InvalidParameterError("monomial degree must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
  c.back() = a;
  return Polynomial(std::move(c));
}

long Polynomial::degree() const {
  return coeffs_.empty() ? 0 : static_cast<long>(coeffs_.size()) - 1;
}

bool Polynomial::is_zero() const { return coeffs_.empty(); }

double Polynomial::coeff(long j) const {
  if (j < 0 || j >= static_cast<long>(coeffs_.size())) return kZeroCoeff;
  return coeffs_[static_cast<std::size_t>(j)];
}

double Polynomial::operator()(double y) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * y + *it;
  return acc;
}

long double Polynomial::eval_ld(long double y) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * y + static_cast<long double>(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    d[j - 1] = static_cast<double>(j) * coeffs_[j];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] += coeffs_[j];
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
    c[j] -= other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

double Polynomial::derivative_sup_bound(double N) const {
  double acc = 0.0;
  double pw = 1.0;  // N^{j-1}
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    acc += static_cast<double>(j) * std::abs(coeffs_[j]) * pw;
    pw *= N;
  }
  return acc;
}

bool Polynomial::is_integer_linear() const {
  if (degree() != 1 || coeffs_.size() != 2) return false;
  if (coeffs_[0] != 0.0) return false;
  const double a = coeffs_[1];
  return a != 0.0 && a == std::floor(a) && std::abs(a) <= 1e6;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0.0) continue;
    if (!first) os << " + ";
    os << coeffs_[j];
    if (j >= 1) os << "*y";
    if (j >= 2) os << "^" << j;
    first = false;
  }
  return os.str();
}

PolynomialFamily PolynomialFamily::validate(
    const std::vector<std::vector<double>>& raw) {
  if (raw.empty()) {
    throw InvalidParameterError("polynomial family must be nonempty");
  }
  std::vector<Polynomial> polys;
  polys.reserve(raw.size());
  for (const auto& c : raw) {
    Polynomial p{c};
    if (p.coeff(0) != 0.0) {
      throw DegenerateFamilyError("family polynomial " + p.to_string() +
                                  " has a nonzero constant term");
    }
    if (p.is_zero() || p.degree() < 1) {
      throw DegenerateFamilyError("family polynomial must have degree >= 1");
    }
    polys.push_back(std::move(p));
  }
  std::sort(polys.begin(), polys.end(),
            [](const Polynomial& a, const Polynomial& b) {
              return a.degree() < b.degree();
            });
  for (std::size_t i = 1; i < polys.size(); ++i) {
    if (polys[i].degree() == polys[i - 1].degree()) {
      throw DegenerateFamilyError("family degrees must be pairwise distinct (" +
                                  polys[i - 1].to_string() + " vs " +
                                  polys[i].to_string() + ")");
    }
  }
  return PolynomialFamily(std::move(polys));
}

long PolynomialFamily::max_degree() const {
  long d = 0;
  for (const auto& p : polys_) d = std::max(d, p.degree());
  return d;
}

std::vector<std::vector<double>> PolynomialFamily::coeff_matrix() const {
  const long d = max_degree();
  std::vector<std::vector<double>> a(static_cast<std::size_t>(d),
                                     std::vector<double>(polys_.size(), 0.0));
  for (std::size_t i = 0; i < polys_.size(); ++i)
    for (long j = 1; j <= d; ++j)
      a[static_cast<std::size_t>(j - 1)][i] = polys_[i].coeff(j);
  return a;
}

std::string PolynomialFamily::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    if (i) s += ", ";
    s += polys_[i].to_string();
  }
  return s + "}";
}

namespace {

// |det| and max-abs-entry of the inverse for a small dense matrix, via
// Gauss-Jordan with partial pivoting. Returns det = 0 for singular input.
void invert_small(std::vector<std::vector<double>> m, double* det_out,
                  double* inv_inf_out) {
  const std::size_t k = m.size();
  std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
  double det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-12) {
      *det_out = 0.0;
      *inv_inf_out = 0.0;
      return;
    }
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(inv[piv], inv[col]);
      det = -det;
    }
    det *= m[col][col];
    const double s = 1.0 / m[col][col];
    for (std::size_t c = 0; c < k; ++c) {
      m[col][c] *= s;
      inv[col][c] *= s;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  double inf = 0.0;
  for (const auto& row : inv)
    for (double v : row) inf = std::max(inf, std::abs(v));
  *det_out = det;
  *inv_inf_out = inf;
}

}  // namespace

FrequencyControl frequency_control(const PolynomialFamily& family) {
  const auto a = family.coeff_matrix();
  const std::size_t d = a.size();
  const std::size_t k = family.k();
  if (d > 8 || k > 8) {
    throw InvalidParameterError(
        "frequency_control supports d, k <= 8 (got d=" + std::to_string(d) +
        ", k=" + std::to_string(k) + ")");
  }
  FrequencyControl best{{}, 0.0, 0.0, 0.0};
  std::vector<std::size_t> idx(k);
  // Enumerate k-subsets of {0..d-1} via bitmasks.
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::size_t t = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (mask & (1u << j)) idx[t++] = j;
    std::vector<std::vector<double>> sub(k, std::vector<double>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r][c] = a[idx[r]][c];
    double det = 0.0, inv_inf = 0.0;
    invert_small(sub, &det, &inv_inf);
    if (std::abs(det) > std::abs(best.det)) {
      best.rows = idx;
      best.det = det;
      best.a_inv_inf = inv_inf;
    }
  }
  if (best.rows.empty() || std::abs(best.det) < 1e-12) {
    throw DegenerateFamilyError(
        "coefficient matrix has rank < k; no invertible row subset");
  }
  best.bound_const =
      static_cast<double>(k) * static_cast<double>(k) * best.a_inv_inf;
  return best;
}

}  // namespace torus_lab
