#include "catchkit/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace catchkit {

namespace {

// Householder reflector on rows [pivot, rows) of a column, classic
// Lawson-Hanson storage: the pivot entry is replaced by the new
// diagonal, the tail is kept as the raw reflector vector, and the
// scalar `up` completes it.
struct Reflector {
  double up = 0.0;
  bool active = false;
};

Reflector build_reflector(std::span<double> column, std::size_t pivot) {
  const std::size_t m = column.size();
  double cl = 0.0;
  for (std::size_t i = pivot; i < m; ++i) {
    cl = std::max(cl, std::abs(column[i]));
  }
  if (cl <= 0.0) return {};
  double sm = 0.0;
  for (std::size_t i = pivot; i < m; ++i) {
    const double t = column[i] / cl;
    sm += t * t;
  }
  cl *= std::sqrt(sm);
  if (column[pivot] > 0.0) cl = -cl;
  Reflector h;
  h.up = column[pivot] - cl;
  h.active = true;
  column[pivot] = cl;
  return h;
}

void apply_reflector(std::span<const double> column, std::size_t pivot,
                     const Reflector& h, std::span<double> target) {
  if (!h.active) return;
  const double b = h.up * column[pivot];
  if (b >= 0.0) return;
  const std::size_t m = column.size();
  double sm = target[pivot] * h.up;
  for (std::size_t i = pivot + 1; i < m; ++i) sm += target[i] * column[i];
  if (sm == 0.0) return;
  sm /= b;
  target[pivot] += sm * h.up;
  for (std::size_t i = pivot + 1; i < m; ++i) target[i] += sm * column[i];
}

// Givens rotation zeroing b in (a, b); returns (c, s, r).
struct Givens {
  double c = 1.0, s = 0.0, r = 0.0;
};

Givens make_givens(double a, double b) {
  Givens g;
  if (std::abs(a) > std::abs(b)) {
    const double xr = b / a;
    const double yr = std::sqrt(1.0 + xr * xr);
    g.c = std::copysign(1.0 / yr, a);
    g.s = g.c * xr;
    g.r = std::abs(a) * yr;
  } else if (b != 0.0) {
    const double xr = a / b;
    const double yr = std::sqrt(1.0 + xr * xr);
    g.s = std::copysign(1.0 / yr, b);
    g.c = g.s * xr;
    g.r = std::abs(b) * yr;
  }
  return g;
}

double matrix_norm1(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (double v : a.col(j)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

NnlsResult nnls(const Matrix& a, std::span<const double> b,
                const NnlsOptions& options) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  a.require_finite("nnls");
  if (b.size() != n) {
    throw InvalidInputError("nnls: rhs size mismatch");
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw InvalidInputError("nnls: non-finite rhs");
  }

  const double ktol = options.ktol > 0.0
                          ? options.ktol
                          : 10.0 * std::numeric_limits<double>::epsilon() *
                                matrix_norm1(a) * norm2(b);
  const std::size_t max_iter =
      options.max_iterations > 0 ? options.max_iterations : 10 * m;

  Matrix work = a;                       // transformed in place
  std::vector<double> bt(b.begin(), b.end());
  std::vector<double> x(m, 0.0);
  std::vector<double> w(m, 0.0);
  std::vector<double> zz(n, 0.0);
  std::vector<std::size_t> index(m);
  std::iota(index.begin(), index.end(), 0);

  std::size_t nsetp = 0;   // passive-set size; positions [0, nsetp)
  std::size_t iz1 = 0;     // zero set occupies positions [iz1, m)
  std::size_t iterations = 0;

  auto solve_triangular_into_zz = [&] {
    for (std::size_t i = 0; i < nsetp; ++i) zz[i] = bt[i];
    for (std::size_t ip = nsetp; ip-- > 0;) {
      auto col = work.col(index[ip]);
      zz[ip] /= col[ip];
      for (std::size_t i = 0; i < ip; ++i) zz[i] -= col[i] * zz[ip];
    }
  };

  auto finish = [&](bool converged) {
    NnlsResult result;
    result.u = x;
    result.iterations = iterations;
    std::vector<double> residual(b.begin(), b.end());
    for (std::size_t j = 0; j < m; ++j) {
      if (x[j] == 0.0) continue;
      auto col = a.col(j);
      for (std::size_t i = 0; i < n; ++i) residual[i] -= col[i] * x[j];
    }
    result.residual_norm = norm2(residual);
    for (std::size_t j = 0; j < m; ++j) {
      if (x[j] > 0.0) result.support.push_back(j);
    }
    if (!converged) {
      throw NnlsNoConvergence(
          "nnls: iteration cap " + std::to_string(max_iter) +
              " exceeded (residual " + std::to_string(result.residual_norm) +
              ")",
          std::move(result));
    }
    return result;
  };

  while (iz1 < m && nsetp < n) {
    // Dual vector on the zero set from the transformed tail rows.
    for (std::size_t iz = iz1; iz < m; ++iz) {
      const std::size_t j = index[iz];
      auto col = work.col(j);
      double sm = 0.0;
      for (std::size_t l = nsetp; l < n; ++l) sm += col[l] * bt[l];
      w[j] = sm;
    }

    // Select the most violated dual; candidates failing the linear
    // independence or sign test are zeroed out and skipped.
    std::size_t izmax = 0;
    Reflector h;
    bool found = false;
    while (true) {
      double wmax = ktol;
      bool have = false;
      for (std::size_t iz = iz1; iz < m; ++iz) {
        const std::size_t j = index[iz];
        if (w[j] > wmax) {
          wmax = w[j];
          izmax = iz;
          have = true;
        }
      }
      if (!have) break;

      const std::size_t j = index[izmax];
      auto col = work.col(j);
      const double asave = col[nsetp];
      h = build_reflector(col, nsetp);
      double unorm = norm2(std::span<const double>(col).subspan(0, nsetp));
      const double d = unorm + std::abs(col[nsetp]) * 0.01;
      if (d - unorm > 0.0) {
        for (std::size_t i = 0; i < n; ++i) zz[i] = bt[i];
        apply_reflector(col, nsetp, h, zz);
        const double ztest = zz[nsetp] / col[nsetp];
        if (ztest > 0.0) {
          found = true;
          break;
        }
      }
      col[nsetp] = asave;
      w[j] = 0.0;
    }
    if (!found) break;  // Kuhn-Tucker conditions satisfied

    // Move index[izmax] into the passive set and push the reflector
    // through the right-hand side and the remaining zero-set columns.
    const std::size_t j = index[izmax];
    bt = zz;
    index[izmax] = index[iz1];
    index[iz1] = j;
    ++iz1;
    ++nsetp;
    {
      auto col = work.col(j);
      for (std::size_t iz = iz1; iz < m; ++iz) {
        apply_reflector(col, nsetp - 1, h, work.col(index[iz]));
      }
      for (std::size_t l = nsetp; l < n; ++l) col[l] = 0.0;
    }
    w[j] = 0.0;

    solve_triangular_into_zz();

    // Inner loop: back off along the segment to the nearest bound
    // until the triangular solution is strictly feasible.
    while (true) {
      ++iterations;
      if (iterations > max_iter) {
        for (std::size_t ip = 0; ip < nsetp; ++ip) {
          x[index[ip]] = std::max(zz[ip], 0.0);
        }
        finish(false);
      }

      double alpha = 2.0;
      std::size_t hit = 0;
      for (std::size_t ip = 0; ip < nsetp; ++ip) {
        if (zz[ip] <= 0.0) {
          const std::size_t l = index[ip];
          const double t = -x[l] / (zz[ip] - x[l]);
          if (t < alpha) {
            alpha = t;
            hit = ip;
          }
        }
      }
      if (alpha == 2.0) {
        for (std::size_t ip = 0; ip < nsetp; ++ip) x[index[ip]] = zz[ip];
        break;
      }

      for (std::size_t ip = 0; ip < nsetp; ++ip) {
        const std::size_t l = index[ip];
        x[l] += alpha * (zz[ip] - x[l]);
      }

      // Remove the variable that hit its bound; repair the triangle
      // with Givens rotations and sweep out any stragglers pinned to
      // zero by roundoff.
      std::size_t out_pos = hit;
      while (true) {
        const std::size_t out_col = index[out_pos];
        x[out_col] = 0.0;
        for (std::size_t pos = out_pos + 1; pos < nsetp; ++pos) {
          const std::size_t col_id = index[pos];
          index[pos - 1] = col_id;
          auto col = work.col(col_id);
          const Givens g = make_givens(col[pos - 1], col[pos]);
          col[pos - 1] = g.r;
          col[pos] = 0.0;
          for (std::size_t l = 0; l < m; ++l) {
            if (l == col_id) continue;
            auto cl = work.col(l);
            const double t = cl[pos - 1];
            cl[pos - 1] = g.c * t + g.s * cl[pos];
            cl[pos] = -g.s * t + g.c * cl[pos];
          }
          const double t = bt[pos - 1];
          bt[pos - 1] = g.c * t + g.s * bt[pos];
          bt[pos] = -g.s * t + g.c * bt[pos];
        }
        --nsetp;
        --iz1;
        index[iz1] = out_col;

        bool all_positive = true;
        for (std::size_t ip = 0; ip < nsetp; ++ip) {
          if (x[index[ip]] <= 0.0) {
            out_pos = ip;
            all_positive = false;
            break;
          }
        }
        if (all_positive) break;
      }

      solve_triangular_into_zz();
    }
  }

  return finish(true);
}

}  // namespace catchkit
