#include "cliquescope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cliquescope/errors.hpp"

namespace cliquescope {
namespace {

constexpr double kSignEpsilon = 1e-12;
constexpr std::size_t kSvdMaxSweeps = 100;

}  // namespace

RowMatrix RowMatrix::identity(std::size_t n) {
  RowMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RowMatrix RowMatrix::transpose() const {
  RowMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RowMatrix operator*(const RowMatrix& a, const RowMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shapes do not conform");
  RowMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double x = a(i, l);
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += x * b(l, j);
    }
  }
  return out;
}

EigenDecomposition symmetric_eigen(const DenseMatrix& input, const JacobiOptions& options) {
  const std::size_t n = input.size();
  RowMatrix a(n, n);
  double frobenius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = input(i, j);
      frobenius += input(i, j) * input(i, j);
    }
  }
  const double limit = options.threshold * std::max(1.0, std::sqrt(frobenius));
  RowMatrix v = RowMatrix::identity(n);

  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
  };

  EigenDecomposition out;
  while (off_norm() >= limit) {
    if (out.sweeps == options.max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge within " +
                             std::to_string(options.max_sweeps) + " sweeps");
    }
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  out.vectors = RowMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a(src, src);
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::fabs(v(k, src)) > kSignEpsilon) {
        sign = v(k, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = sign * v(k, src);
  }
  return out;
}

SvdResult square_svd(const RowMatrix& input) {
  if (input.rows() != input.cols()) throw InvalidArgument("square_svd needs a square matrix");
  const std::size_t n = input.rows();
  RowMatrix a = input;
  RowMatrix v = RowMatrix::identity(n);

  for (std::size_t sweep = 0; sweep < kSvdMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0.0 || std::fabs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    if (!rotated) break;
  }

  SvdResult out;
  out.singular_values.resize(n);
  out.u = RowMatrix(n, n);
  double largest = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += a(i, j) * a(i, j);
    out.singular_values[j] = std::sqrt(norm);
    largest = std::max(largest, out.singular_values[j]);
  }
  const double tiny = 1e-12 * std::max(1.0, largest);
  std::vector<bool> filled(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (out.singular_values[j] <= tiny) continue;
    for (std::size_t i = 0; i < n; ++i) out.u(i, j) = a(i, j) / out.singular_values[j];
    filled[j] = true;
  }
  // Complete the basis with Gram-Schmidt on unit vectors.
  std::size_t candidate = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (filled[j]) continue;
    out.singular_values[j] = 0.0;
    while (candidate < n) {
      std::vector<double> w(n, 0.0);
      w[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!filled[c]) continue;
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += w[i] * out.u(i, c);
          for (std::size_t i = 0; i < n; ++i) w[i] -= dot * out.u(i, c);
        }
      }
      double norm = 0.0;
      for (const double x : w) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) out.u(i, j) = w[i] / norm;
        filled[j] = true;
        break;
      }
    }
  }
  out.v = std::move(v);
  return out;
}

}  // namespace cliquescope
