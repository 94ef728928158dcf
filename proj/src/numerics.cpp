#include "hplane/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

#include "hplane/error.hpp"

namespace hplane {

Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const double> v) {
  if (h.size() != v.size() || h.empty()) throw InputError("extrapolate_to_zero: size mismatch");
  const std::size_t n = h.size();
  // t[j] holds the Neville entry built on samples j..i after row i.
  std::vector<double> t(v.begin(), v.end());
  std::vector<double> diagonal{t[0]};
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      // P_{j..i}(0) from P_{j+1..i}(0) and P_{j..i-1}(0).
      t[j] = (h[j] * t[j + 1] - h[i] * t[j]) / (h[j] - h[i]);
    }
    diagonal.push_back(t[0]);
  }
  Extrapolated out;
  out.value = diagonal.back();
  out.error = n > 1 ? std::abs(diagonal[n - 1] - diagonal[n - 2]) : 0.0;
  return out;
}

std::vector<double> default_eps_ladder() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

double bisect(const std::function<double(double)>& f, double lo, double hi, BisectOptions opts) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw ConvergenceError("bisect: no sign change on bracket");
  for (int it = 0; it < opts.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= opts.tol * std::max(1.0, std::abs(mid))) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

std::vector<std::complex<double>> halton_box(std::size_t n, double re_lo, double re_hi, double im_lo,
                                             double im_hi) {
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double u = radical_inverse(i, 2);
    const double w = radical_inverse(i, 3);
    // 1 - w lies in (0, 1], so Im stays strictly above im_lo.
    out.emplace_back(re_lo + (re_hi - re_lo) * u, im_lo + (im_hi - im_lo) * (1.0 - w));
  }
  return out;
}

Integral integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                   double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kMaxDepth = 20;
  double err_re = 0.0;
  double err_im = 0.0;
  const double re =
      gauss_kronrod<double, 31>::integrate([&](double t) { return f(t).real(); }, a, b, kMaxDepth, rel_tol, &err_re);
  const double im =
      gauss_kronrod<double, 31>::integrate([&](double t) { return f(t).imag(); }, a, b, kMaxDepth, rel_tol, &err_im);
  return {{re, im}, std::hypot(err_re, err_im)};
}

}  // namespace hplane
