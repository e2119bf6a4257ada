#include "tmassey/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tmassey/errors.hpp"

namespace tmassey::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix gram(const Matrix& a, const Matrix& b, std::span<const double> w) {
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double wk = w.empty() ? 1.0 : w[k];
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += wk * aki * b(k, j);
    }
  }
  return c;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double max_abs_offdiag(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

namespace {

// Returns false if the matrix is not numerically positive definite.
bool cholesky_solve(const Matrix& a, std::span<const double> b, std::vector<double>& x) {
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 1e-14 * std::max(1.0, std::abs(a(j, j))))) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  x.assign(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
    x[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= l(k, i) * x[k];
    x[i] /= l(i, i);
  }
  return true;
}

class LuFactor {
 public:
  explicit LuFactor(const Matrix& a) : lu_(a), perm_(a.rows()) {
    const std::size_t n = a.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
      if (std::abs(lu_(p, k)) <= 1e-13 * std::max(1.0, scale)) {
        throw SingularSystem("matrix is singular to working precision");
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
        std::swap(perm_[p], perm_[k]);
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        lu_(i, k) /= lu_(k, k);
        const double f = lu_(i, k);
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  std::vector<double> solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) x[i] -= lu_(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x[i] -= lu_(i, k) * x[k];
      x[i] /= lu_(i, i);
    }
    return x;
  }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

}  // namespace

std::vector<double> solve(const Matrix& a, std::span<const double> b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw SingularSystem("dimension mismatch in solve");
  std::vector<double> x;
  if (a.is_symmetric() && cholesky_solve(a, b, x)) {
    // SPD path is already backward stable.
    return x;
  }
  LuFactor lu(a);
  x = lu.solve(b);
  auto ax = multiply(a, x);
  std::vector<double> residual(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) residual[i] = b[i] - ax[i];
  auto dx = lu.solve(residual);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

EigenResult symmetric_eigen(const Matrix& input, double tol, int max_sweeps) {
  const std::size_t n = input.rows();
  Matrix a = input;
  EigenResult out;
  out.vectors = Matrix::identity(n);
  Matrix& v = out.vectors;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  while (out.sweeps < max_sweeps && off_norm() >= tol) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p,q); stable tangent form.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  Matrix sorted(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    for (std::size_t r = 0; r < n; ++r) sorted(r, k) = v(r, idx[k]);
  }
  out.vectors = std::move(sorted);
  return out;
}

}  // namespace tmassey::linalg
