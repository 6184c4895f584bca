#include "fracperim/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fracperim/errors.hpp"

namespace fracperim::specfun {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639L;

// Largest x with Gamma(x) < DBL_MAX.
constexpr double kGammaOverflow = 171.61447887182298;

// Lanczos approximation, g = 7, nine terms.
constexpr long double kLanczosG = 7.0L;
constexpr std::array<long double, 9> kLanczos = {
    0.99999999999980993227684700473478L,  676.520368121885098567009190444019L,
    -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
    -176.61502916214059906584551354L,     12.507343278686904814458936853L,
    -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
    1.50563273514931155834e-7L};

bool is_nonpositive_integer(long double x) { return x <= 0 && x == std::floor(x); }

long double sin_pi_long(long double x) {
  long double r = std::fmod(x, 2.0L);
  if (r < 0) r += 2.0L;
  long double sign = 1.0L;
  if (r >= 1.0L) {
    sign = -1.0L;
    r -= 1.0L;
  }
  if (r > 0.5L) r = 1.0L - r;
  if (r == 0.0L) return 0.0L;
  return sign * std::sin(kPi * r);
}

const std::array<long double, 172>& factorial_table() {
  static const std::array<long double, 172> table = [] {
    std::array<long double, 172> t{};
    t[0] = 1.0L;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  return table;
}

long double ln_gamma_stirling(long double x);

// Gamma for x >= 0.5 in extended precision. The truncated Lanczos
// coefficients lose accuracy past x ~ 20, so larger arguments go through
// the Stirling series instead.
long double gamma_positive(long double x) {
  if (x == std::floor(x) && x <= 172.0L) return factorial_table()[static_cast<std::size_t>(x) - 1];
  if (x >= 15.0L) return std::exp(ln_gamma_stirling(x));
  const long double z = x - 1.0L;
  long double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<long double>(i));
  const long double t = z + kLanczosG + 0.5L;
  return std::sqrt(2.0L * kPi) * std::pow(t, z + 0.5L) * std::exp(-t) * sum;
}

// Gamma for any non-pole x in extended precision; reflection below 0.5.
long double gamma_long(long double x) {
  if (x >= 0.5L) return gamma_positive(x);
  return kPi / (sin_pi_long(x) * gamma_positive(1.0L - x));
}

long double rgamma_long(long double x) {
  if (is_nonpositive_integer(x)) return 0.0L;
  if (x >= 0.5L) return 1.0L / gamma_positive(x);
  return sin_pi_long(x) * gamma_positive(1.0L - x) / kPi;
}

// zeta(k) for k = 2..40 by Euler-Maclaurin with cutoff M = 50.
const std::array<long double, 41>& zeta_table() {
  static const std::array<long double, 41> table = [] {
    std::array<long double, 41> z{};
    constexpr int kM = 50;
    const long double m = kM;
    for (int k = 2; k <= 40; ++k) {
      const long double kk = k;
      long double sum = 0.0L;
      for (int n = kM - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -kk);
      sum += std::pow(m, 1.0L - kk) / (kk - 1.0L);
      sum += 0.5L * std::pow(m, -kk);
      sum += kk / 12.0L * std::pow(m, -kk - 1.0L);
      sum -= kk * (kk + 1) * (kk + 2) / 720.0L * std::pow(m, -kk - 3.0L);
      sum += kk * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4) / 30240.0L * std::pow(m, -kk - 5.0L);
      sum -= kk * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4) * (kk + 5) * (kk + 6) / 1209600.0L *
             std::pow(m, -kk - 7.0L);
      z[static_cast<std::size_t>(k)] = sum;
    }
    return z;
  }();
  return table;
}

// log Gamma(1 + z) for |z| <= 0.2 from its Taylor series about 1.
long double ln_gamma_1p(long double z) {
  const auto& zeta = zeta_table();
  long double sum = -kEulerGamma * z;
  long double power = -z;
  for (int k = 2; k <= 40; ++k) {
    power *= -z;
    const long double term = zeta[static_cast<std::size_t>(k)] * power / k;
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return sum;
}

long double ln_gamma_stirling(long double x) {
  // B_2k / (2k (2k - 1))
  constexpr std::array<long double, 8> kCoeffs = {
      1.0L / 12.0L,        -1.0L / 360.0L,          1.0L / 1260.0L,        -1.0L / 1680.0L,
      1.0L / 1188.0L,      -691.0L / 360360.0L,     1.0L / 156.0L,         -3617.0L / 122400.0L};
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  long double power = inv;
  long double series = 0.0L;
  for (long double c : kCoeffs) {
    series += c * power;
    power *= inv2;
  }
  return (x - 0.5L) * std::log(x) - x + kHalfLog2Pi + series;
}

long double ln_gamma_long(long double x) {
  if (std::fabs(x - 1.0L) <= 0.2L) return ln_gamma_1p(x - 1.0L);
  if (std::fabs(x - 2.0L) <= 0.2L) return std::log1p(x - 2.0L) + ln_gamma_1p(x - 2.0L);
  if (x < 15.0L) return std::log(gamma_positive(x < 0.5L ? x + 1.0L : x)) - (x < 0.5L ? std::log(x) : 0.0L);
  return ln_gamma_stirling(x);
}

// Ascending series; sums in extended precision so that the cancellation
// up to z = 16 costs at most ~1e-13 absolute.
double bessel_j_series(double nu, double z) {
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double half = 0.5L * z;
  const long double q = -half * half;
  long double term = std::pow(half, static_cast<long double>(nu)) * rgamma_long(nu + 1.0L);
  long double sum = term;
  long double largest = std::fabs(term);
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<long double>(k) * (k + static_cast<long double>(nu)));
    sum += term;
    largest = std::max(largest, std::fabs(term));
    if (k > half && std::fabs(term) <= 1e-21L * largest) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion in amplitude/phase form, truncated at the
// smallest term. Used only for small orders (< 2) and z >= 16.
long double bessel_j_hankel(long double nu, long double z) {
  const long double mu = 4.0L * nu * nu;
  long double p = 1.0L;
  long double q = 0.0L;
  long double a = 1.0L;
  long double prev = 1.0L;
  for (int k = 1; k <= 60; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    const long double next = a * (mu - odd * odd) / (k * 8.0L * z);
    if (next == 0.0L) break;
    if (k > 2 && std::fabs(next) > std::fabs(prev)) break;
    a = next;
    prev = next;
    if (k % 2 == 1) {
      q += ((k - 1) / 2) % 2 == 0 ? a : -a;
    } else {
      p += (k / 2) % 2 == 1 ? -a : a;
    }
    if (std::fabs(a) < 1e-24L) break;
  }
  const long double chi = z - (0.5L * nu + 0.25L) * kPi;
  return std::sqrt(2.0L / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Below this argument (or below the order) the ascending series is used.
constexpr double kSeriesLimit = 16.0;

double bessel_j_impl(double nu, double z) {
  if (z < std::max(kSeriesLimit, nu)) return bessel_j_series(nu, z);
  const double whole = std::floor(nu);
  const long double base = nu - whole;
  long double j0 = bessel_j_hankel(base, z);
  if (whole == 0.0) return static_cast<double>(j0);
  long double j1 = bessel_j_hankel(base + 1.0L, z);
  // Upward recurrence is stable while the order stays below z.
  for (int k = 1; k < static_cast<int>(whole); ++k) {
    const long double j2 = 2.0L * (base + k) / z * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return static_cast<double>(j1);
}

double bessel_j_derivative(double nu, double z) {
  return nu / z * bessel_j_impl(nu, z) - bessel_j_impl(nu + 1.0, z);
}

// Safeguarded Newton inside a sign-change bracket.
double refine_zero(double nu, double lo, double hi) {
  double flo = bessel_j_impl(nu, lo);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = bessel_j_impl(nu, x);
    if (fx == 0.0) return x;
    if ((fx < 0) == (flo < 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double dfx = bessel_j_derivative(nu, x);
    double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) return next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

double scan_for_sign_change(double nu, double start, double step, double limit, double& lo) {
  double a = start;
  double fa = bessel_j_impl(nu, a);
  for (double b = a + step; b <= limit; b += step) {
    const double fb = bessel_j_impl(nu, b);
    if ((fa < 0) != (fb < 0) || fb == 0.0) {
      lo = a;
      return b;
    }
    a = b;
    fa = fb;
  }
  throw DomainError("bessel_j_zero: no sign change found");
}

double mcmahon_guess(double nu, int k) {
  const double mu = 4.0 * nu * nu;
  const double beta = (k + 0.5 * nu - 0.25) * static_cast<double>(kPi);
  const double e = 8.0 * beta;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

}  // namespace

double sin_pi(double x) { return static_cast<double>(sin_pi_long(x)); }

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at " + std::to_string(x));
  if (x > kGammaOverflow) throw OverflowError("gamma: overflow for x = " + std::to_string(x));
  const long double value = gamma_long(x);
  if (std::fabs(value) > std::numeric_limits<double>::max())
    throw OverflowError("gamma: overflow for x = " + std::to_string(x));
  return static_cast<double>(value);
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: requires x > 0");
  if (std::isinf(x)) return x;
  return static_cast<double>(ln_gamma_long(x));
}

double rgamma(double x) { return static_cast<double>(rgamma_long(x)); }

SignedLogGamma signed_ln_gamma(double x) {
  if (std::isnan(x)) throw DomainError("signed_ln_gamma: NaN argument");
  if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at " + std::to_string(x));
  if (x > 0.0) return {ln_gamma(x), 1};
  const long double s = sin_pi_long(x);
  const long double value = std::log(kPi) - std::log(std::fabs(s)) - ln_gamma_long(1.0L - x);
  return {static_cast<double>(value), s < 0 ? -1 : 1};
}

double gamma_ratio(std::span<const double> num, std::span<const double> den) {
  for (double x : num)
    if (is_nonpositive_integer(x)) throw PoleError("gamma_ratio: numerator pole at " + std::to_string(x));
  for (double x : den)
    if (is_nonpositive_integer(x)) return 0.0;

  const auto moderate = [](double x) { return x >= -5.0 && x <= 30.0; };
  if (std::all_of(num.begin(), num.end(), moderate) && std::all_of(den.begin(), den.end(), moderate)) {
    long double value = 1.0L;
    for (double x : num) value *= gamma_long(x);
    for (double x : den) value *= rgamma_long(x);
    return static_cast<double>(value);
  }
  double log_sum = 0.0;
  int sign = 1;
  for (double x : num) {
    const auto g = signed_ln_gamma(x);
    log_sum += g.log_abs;
    sign *= g.sign;
  }
  for (double x : den) {
    const auto g = signed_ln_gamma(x);
    log_sum -= g.log_abs;
    sign *= g.sign;
  }
  return sign * std::exp(log_sum);
}

double bessel_j(double nu, double z) {
  if (!(nu >= 0.0) || !(z >= 0.0)) throw DomainError("bessel_j: requires nu >= 0 and z >= 0");
  if (std::isinf(z)) return 0.0;
  return bessel_j_impl(nu, z);
}

std::vector<double> bessel_j_zeros(double nu, int count) {
  if (!(nu >= 0.0) || std::isinf(nu)) throw DomainError("bessel_j_zeros: requires nu >= 0");
  if (count < 1) throw DomainError("bessel_j_zeros: requires count >= 1");
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(count));

  // j_{nu,1} > nu, and J_nu is positive on (0, j_{nu,1}).
  double lo = 0.0;
  const double start = nu > 0.5 ? nu : 0.5;
  double hi = scan_for_sign_change(nu, start, 0.1, start + 50.0, lo);
  zeros.push_back(refine_zero(nu, lo, hi));

  // Consecutive zeros are more than 3.1 apart for every nu >= 0, so a
  // bracket of width 1 inside (prev, prev + 6) holds exactly the next zero.
  for (int k = 2; k <= count; ++k) {
    const double prev = zeros.back();
    const double guess = mcmahon_guess(nu, k);
    const double a = guess - 0.5;
    const double b = guess + 0.5;
    if (a > prev + 0.5 && b < prev + 6.0) {
      const double fa = bessel_j_impl(nu, a);
      const double fb = bessel_j_impl(nu, b);
      if ((fa < 0) != (fb < 0)) {
        zeros.push_back(refine_zero(nu, a, b));
        continue;
      }
    }
    hi = scan_for_sign_change(nu, prev + 2.9, 0.1, prev + 20.0, lo);
    zeros.push_back(refine_zero(nu, lo, hi));
  }
  return zeros;
}

double bessel_j_zero(double nu, int k) {
  if (k < 1) throw DomainError("bessel_j_zero: requires k >= 1");
  return bessel_j_zeros(nu, k).back();
}

double weber_schafheitlin(const WsParams& p) {
  const bool finite = std::isfinite(p.nu) && std::isfinite(p.mu) && std::isfinite(p.lambda) && std::isfinite(p.alpha);
  if (!finite || !(p.alpha > 0.0) || !(p.lambda > 0.0) || !(p.nu + p.mu + 1.0 > p.lambda))
    throw DomainError("weber_schafheitlin: requires nu + mu + 1 > lambda > 0 and alpha > 0");
  const std::array<double, 2> num = {p.lambda, 0.5 * (p.nu + p.mu - p.lambda + 1.0)};
  const std::array<double, 3> den = {0.5 * (p.mu - p.nu + p.lambda + 1.0), 0.5 * (p.nu + p.mu + p.lambda + 1.0),
                                     0.5 * (p.nu - p.mu + p.lambda + 1.0)};
  return std::pow(p.alpha, p.lambda - 1.0) * std::exp2(-p.lambda) * gamma_ratio(num, den);
}

double unit_sphere_measure(int k) {
  if (k < 0) throw DomainError("unit_sphere_measure: requires k >= 0");
  const double half = 0.5 * (k + 1);
  if (half <= 30.0)
    return static_cast<double>(2.0L * std::pow(kPi, static_cast<long double>(half)) / gamma_long(half));
  return std::exp(std::log(2.0) + half * std::log(static_cast<double>(kPi)) - ln_gamma(half));
}

double sphere_area(int dim) {
  if (dim < 2) throw DomainError("sphere_area: requires dimension >= 2");
  return unit_sphere_measure(dim - 1);
}

double ball_volume(int dim) { return sphere_area(dim) / dim; }

double angular_projection_constant(int dim) {
  if (dim < 2) throw DomainError("angular_projection_constant: requires dimension >= 2");
  const double half = 0.5 * (dim + 1);
  if (half <= 30.0)
    return static_cast<double>(2.0L * std::pow(kPi, static_cast<long double>(half - 1.0)) / gamma_long(half));
  return std::exp(std::log(2.0) + (half - 1.0) * std::log(static_cast<double>(kPi)) - ln_gamma(half));
}

}  // namespace fracperim::specfun
