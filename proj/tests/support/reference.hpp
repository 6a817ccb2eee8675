#pragma once

// Reference values computed without the library: explicit polynomial
// coefficient sums, determinant scans for small tridiagonals and plain
// central differences.  Tests compare library output against these.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ref {

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double binomial(double n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (n - k + i) / i;
  return r;
}

/// H_n(x) = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!)
inline double hermite(int n, double x) {
  double s = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    s += std::pow(-1.0, m) * std::pow(2.0 * x, n - 2 * m) / (factorial(m) * factorial(n - 2 * m));
  }
  return factorial(n) * s;
}

/// L_n^nu(x) = sum_i (-1)^i C(n+nu, n-i) x^i / i!
inline double laguerre(int n, double nu, double x) {
  double s = 0.0;
  for (int i = 0; i <= n; ++i) s += std::pow(-1.0, i) * binomial(n + nu, n - i) * std::pow(x, i) / factorial(i);
  return s;
}

/// Terminating 1F1(-n; c; x) by its defining sum.
inline double hyp1f1(int n, double c, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    double poch_a = 1.0, poch_c = 1.0;
    for (int j = 0; j < k; ++j) {
      poch_a *= (-n + j);
      poch_c *= (c + j);
    }
    s += poch_a / poch_c * std::pow(x, k) / factorial(k);
  }
  return s;
}

/// P_l^m(x) with Condon-Shortley phase, m >= 0:
/// (-1)^m (1-x^2)^{m/2} d^m/dx^m P_l(x), P_l from its explicit coefficients.
inline double legendre(int l, int m, double x) {
  if (m < 0) {
    const int am = -m;
    return std::pow(-1.0, am) * factorial(l - am) / factorial(l + am) * legendre(l, am, x);
  }
  // P_l(x) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k, l) x^{l-2k}
  std::vector<double> coef(l + 1, 0.0);
  for (int k = 0; 2 * k <= l; ++k) {
    coef[l - 2 * k] = std::pow(-1.0, k) * binomial(l, k) * binomial(2 * l - 2 * k, l) / std::pow(2.0, l);
  }
  for (int d = 0; d < m; ++d) {
    for (std::size_t p = 0; p + 1 < coef.size(); ++p) coef[p] = coef[p + 1] * (p + 1);
    coef.back() = 0.0;
  }
  double s = 0.0;
  for (int p = l; p >= 0; --p) s = s * x + coef[p];
  return std::pow(-1.0, m) * std::pow(1.0 - x * x, 0.5 * m) * s;
}

/// det(T - lambda I) by the continuant recurrence.  Grows fast, so the
/// sign is tracked on a rescaled value.
inline double tridiagonal_det_sign(const std::vector<double> &d, const std::vector<double> &e,
                                   double lambda) {
  double p0 = 1.0, p1 = d[0] - lambda;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double p2 = (d[i] - lambda) * p1 - e[i - 1] * e[i - 1] * p0;
    p0 = p1;
    p1 = p2;
    const double s = std::max(std::abs(p0), std::abs(p1));
    if (s > 1e100 || (s < 1e-100 && s > 0.0)) {
      p0 /= s;
      p1 /= s;
    }
  }
  return p1;
}

/// Roots of the characteristic polynomial by a fine scan for sign changes,
/// each refined by bisection on the determinant.
inline std::vector<double> charpoly_roots(const std::vector<double> &d, const std::vector<double> &e,
                                          double lo, double hi, std::size_t steps) {
  std::vector<double> roots;
  auto f = [&](double x) { return tridiagonal_det_sign(d, e, x); };
  double xa = lo, fa = f(lo);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double xb = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    const double fb = f(xb);
    if (fb == 0.0) {
      roots.push_back(xb);
    } else if ((fa < 0.0) != (fb < 0.0) && fa != 0.0) {
      double a = xa, b = xb, fa2 = fa;
      for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0.0) == (fa2 < 0.0)) {
          a = m;
          fa2 = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    xa = xb;
    fa = fb;
  }
  return roots;
}

inline double d1(const std::function<double(double)> &f, double x, double h = 1e-4) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)> &f, double x, double h = 1e-3) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

/// B^{-1}(A B - B') written out by hand for B = [[g,0],[g',g]].
struct M2 {
  double a11, a12, a21, a22;
};
inline M2 c_by_inverse(double g, double gp, double gpp, double b, double k2) {
  // A B
  const double ab11 = gp, ab12 = g;
  const double ab21 = -k2 * g + b * gp, ab22 = b * g;
  // A B - B'
  const double r11 = ab11 - gp, r12 = ab12;
  const double r21 = ab21 - gpp, r22 = ab22 - gp;
  // B^{-1} = [[1/g, 0], [-g'/g^2, 1/g]]
  const double i11 = 1.0 / g, i21 = -gp / (g * g), i22 = 1.0 / g;
  return {i11 * r11, i11 * r12, i21 * r11 + i22 * r21, i21 * r12 + i22 * r22};
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

} // namespace ref
