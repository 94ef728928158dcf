#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hplane {

struct Extrapolated {
  double value = 0.0;
  double error = 0.0;  // |last diagonal - previous diagonal| of the tableau
};

// Polynomial (Neville) extrapolation of samples v(h) to h = 0.
Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const double> v);

// ε-ladder used for boundary limits: 1e-1, 1e-2, ..., 1e-6.
std::vector<double> default_eps_ladder();

struct BisectOptions {
  int max_iter = 200;
  double tol = 1e-12;  // relative to max(1, |x|)
};

// Root of a function whose sign changes on [lo, hi]; sign(f(lo)) must differ
// from sign(f(hi)). Stops at the tolerance or when the bracket cannot shrink.
double bisect(const std::function<double(double)>& f, double lo, double hi, BisectOptions opts = {});

// i-th element (1-based) of the van der Corput sequence in the given base.
double radical_inverse(std::size_t i, unsigned base);

// Deterministic quasi-random points in [re_lo, re_hi] x (im_lo, im_hi].
std::vector<std::complex<double>> halton_box(std::size_t n, double re_lo, double re_hi, double im_lo,
                                             double im_hi);

struct Integral {
  std::complex<double> value;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on a finite interval for a complex integrand.
Integral integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                   double rel_tol = 1e-11);

}  // namespace hplane
