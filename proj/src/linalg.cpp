#include "catchkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace catchkit {

namespace {

// Householder QR with column pivoting, LAPACK storage: R in the upper
// triangle, reflector tails below the diagonal (leading 1 implicit).
struct QrCore {
  Matrix a;
  std::vector<double> tau;
  std::vector<std::size_t> perm;
};

double tail_norm2(const Matrix& a, std::size_t col, std::size_t from) {
  auto c = a.col(col);
  return norm2(c.subspan(from));
}

QrCore householder_qr_pivoted(Matrix a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> tau(k, 0.0);

  // Residual column norms, downdated per step and recomputed when the
  // downdate loses too much accuracy.
  std::vector<double> rnorm(n), rnorm_ref(n);
  for (std::size_t j = 0; j < n; ++j) rnorm[j] = rnorm_ref[j] = norm2(a.col(j));

  for (std::size_t step = 0; step < k; ++step) {
    std::size_t piv = step;
    for (std::size_t j = step + 1; j < n; ++j) {
      if (rnorm[j] > rnorm[piv]) piv = j;
    }
    if (piv != step) {
      auto cp = a.col(piv);
      auto cs = a.col(step);
      std::swap_ranges(cp.begin(), cp.end(), cs.begin());
      std::swap(perm[piv], perm[step]);
      std::swap(rnorm[piv], rnorm[step]);
      std::swap(rnorm_ref[piv], rnorm_ref[step]);
    }

    auto cs = a.col(step);
    const double sigma = norm2(cs.subspan(step));
    if (sigma == 0.0) {
      tau[step] = 0.0;  // remaining block is zero in these rows
      continue;
    }
    const double alpha = cs[step];
    const double beta = -std::copysign(sigma, alpha);
    const double v0 = alpha - beta;
    for (std::size_t i = step + 1; i < m; ++i) cs[i] /= v0;
    tau[step] = (beta - alpha) / beta;
    cs[step] = beta;

    for (std::size_t j = step + 1; j < n; ++j) {
      auto cj = a.col(j);
      double w = cj[step];
      for (std::size_t i = step + 1; i < m; ++i) w += cs[i] * cj[i];
      w *= tau[step];
      cj[step] -= w;
      for (std::size_t i = step + 1; i < m; ++i) cj[i] -= w * cs[i];

      // Downdate the residual norm; fall back to an exact recompute
      // once cancellation eats the square.
      const double t = std::abs(cj[step]) / (rnorm[j] > 0 ? rnorm[j] : 1.0);
      double rest = 1.0 - t * t;
      if (rnorm[j] == 0.0) {
        rest = 0.0;
      }
      if (rest <= 1e-10 ||
          rnorm[j] * std::sqrt(std::max(rest, 0.0)) <= 1e-7 * rnorm_ref[j]) {
        rnorm[j] = tail_norm2(a, j, step + 1);
        rnorm_ref[j] = rnorm[j];
      } else {
        rnorm[j] *= std::sqrt(rest);
      }
    }
    rnorm[step] = 0.0;
  }
  return {std::move(a), std::move(tau), std::move(perm)};
}

Matrix accumulate_thin_q(const QrCore& core) {
  const std::size_t m = core.a.rows();
  const std::size_t k = std::min(m, core.a.cols());
  Matrix q(m, k);
  for (std::size_t j = 0; j < k; ++j) q(j, j) = 1.0;
  for (std::size_t step = k; step-- > 0;) {
    if (core.tau[step] == 0.0) continue;
    auto v = core.a.col(step);
    for (std::size_t c = 0; c < k; ++c) {
      auto qc = q.col(c);
      double w = qc[step];
      for (std::size_t i = step + 1; i < m; ++i) w += v[i] * qc[i];
      w *= core.tau[step];
      qc[step] -= w;
      for (std::size_t i = step + 1; i < m; ++i) qc[i] -= w * v[i];
    }
  }
  return q;
}

Matrix extract_r(const QrCore& core) {
  const std::size_t n = core.a.cols();
  const std::size_t k = std::min(core.a.rows(), n);
  Matrix r(k, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= std::min(j, k - 1); ++i) {
      r(i, j) = core.a(i, j);
    }
  }
  return r;
}

// One-sided Jacobi: orthogonalize column pairs until every pair is
// numerically orthogonal; singular values are the final column norms.
std::vector<double> jacobi_singular_values(Matrix b) {
  const std::size_t n = b.cols();
  const double tol = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        auto ci = b.col(i);
        auto cj = b.col(j);
        const double aa = dot(ci, ci);
        const double bb = dot(cj, cj);
        const double g = dot(ci, cj);
        if (aa == 0.0 || bb == 0.0) continue;
        if (std::abs(g) <= tol * std::sqrt(aa * bb)) continue;
        rotated = true;
        const double zeta = (bb - aa) / (2.0 * g);
        const double t =
            std::copysign(1.0, zeta) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t row = 0; row < b.rows(); ++row) {
          const double x = ci[row];
          const double y = cj[row];
          ci[row] = c * x - s * y;
          cj[row] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(b.col(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace

PivotedQR pivoted_qr(const Matrix& a) {
  a.require_finite("pivoted_qr");
  QrCore core = householder_qr_pivoted(a);
  Matrix q = accumulate_thin_q(core);
  Matrix r = extract_r(core);
  // Normalize reflector signs so the diagonal of r is nonnegative.
  const std::size_t k = r.rows();
  for (std::size_t i = 0; i < k; ++i) {
    if (r(i, i) < 0.0) {
      for (std::size_t j = i; j < r.cols(); ++j) r(i, j) = -r(i, j);
      auto qi = q.col(i);
      for (double& v : qi) v = -v;
    }
  }
  return {std::move(q), std::move(r), std::move(core.perm)};
}

std::vector<double> singular_values(const Matrix& a) {
  a.require_finite("singular_values");
  // Pivoted QR first: Jacobi on the small triangular factor is both
  // cheaper and better conditioned than on the original columns.
  const bool tall = a.rows() >= a.cols();
  QrCore core = householder_qr_pivoted(tall ? a : a.transposed());
  return jacobi_singular_values(extract_r(core));
}

std::size_t numerical_rank(const Matrix& a, double rtol) {
  const std::vector<double> sv = singular_values(a);
  if (sv.empty() || sv.front() == 0.0) return 0;
  if (rtol <= 0.0) {
    rtol = static_cast<double>(std::max(a.rows(), a.cols())) *
           std::numeric_limits<double>::epsilon();
  }
  const double tol = rtol * sv.front();
  std::size_t rank = 0;
  for (double s : sv) {
    if (s > tol) ++rank;
  }
  return rank;
}

std::vector<double> solve_upper_triangular(const Matrix& r,
                                           std::span<const double> rhs) {
  const std::size_t n = r.rows();
  if (r.cols() != n) {
    throw InvalidInputError("solve_upper_triangular: matrix must be square");
  }
  if (rhs.size() != n) {
    throw InvalidInputError("solve_upper_triangular: rhs size mismatch");
  }
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, std::abs(r(i, i)));
  }
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
    const double d = r(ii, ii);
    if (std::abs(d) <= 1e-14 * max_diag) {
      throw SingularSystemError(
          "solve_upper_triangular: zero or near-zero diagonal at index " +
          std::to_string(ii));
    }
    x[ii] = s / d;
  }
  return x;
}

std::vector<double> solve_least_squares(const Matrix& a,
                                        std::span<const double> rhs) {
  if (rhs.size() != a.rows()) {
    throw InvalidInputError("solve_least_squares: rhs size mismatch");
  }
  PivotedQR f = pivoted_qr(a);
  const std::size_t k = f.q.cols();
  std::vector<double> qtb(k);
  for (std::size_t j = 0; j < k; ++j) qtb[j] = dot(f.q.col(j), rhs);
  Matrix rk(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i <= j; ++i) rk(i, j) = f.r(i, j);
  }
  std::vector<double> y = solve_upper_triangular(rk, qtb);
  std::vector<double> x(a.cols(), 0.0);
  for (std::size_t j = 0; j < k; ++j) x[f.perm[j]] = y[j];
  return x;
}

}  // namespace catchkit
