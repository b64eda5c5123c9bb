#include "radonlab/weyl.hpp"

#include <cmath>
#include <numbers>

#include "radonlab/errors.hpp"

namespace radonlab {

TorusPoint::TorusPoint(std::vector<double> coords) : t_(std::move(coords)) {
  if (t_.empty()) throw InvalidArgument("torus point needs d >= 1");
  for (auto& c : t_) {
    if (!std::isfinite(c)) throw InvalidArgument("torus coordinate is not finite");
    c -= std::floor(c);
    if (c >= 1.0) c = 0.0;
  }
}

namespace {

// frac(K * t) where K = k^j is known modulo 2^128 (as `power`) and exactly as a
// long double (`power_ld`, used only for very small t).
long double frac_product(u128 power, long double power_ld, double t) {
  if (t == 0.0) return 0.0L;
  int exp2 = 0;
  const double mant = std::frexp(t, &exp2);  // t = mant * 2^exp2, mant in [0.5, 1)
  const u128 M = static_cast<u128>(std::ldexp(mant, 53));
  const int s = 53 - exp2;  // t = M / 2^s
  if (s <= 127) {
    const u128 mask = (u128(1) << s) - 1;
    const u128 r = (power * M) & mask;  // wraps mod 2^128, exact mod 2^s
    return std::ldexp(static_cast<long double>(r), -s);
  }
  const long double prod = power_ld * static_cast<long double>(t);
  return prod - std::floor(prod);
}

}  // namespace

std::complex<double> weyl_sum(std::int64_t N, const TorusPoint& t) {
  if (N < 1) throw InvalidArgument("N must be positive");
  const int d = t.dims();
  long double re = 0.0L, im = 0.0L;
  for (std::int64_t k = 1; k <= N; ++k) {
    u128 power = 1;
    long double power_ld = 1.0L;
    long double phase = 0.0L;
    for (int j = 0; j < d; ++j) {
      power *= static_cast<u128>(k);
      power_ld *= static_cast<long double>(k);
      phase += frac_product(power, power_ld, t[j]);
    }
    phase -= std::floor(phase);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * phase;
    re += std::cos(angle);
    im += std::sin(angle);
  }
  return {static_cast<double>(re / N), static_cast<double>(im / N)};
}

double mean_value_main_exponent(int d, int m) {
  return std::max(static_cast<double>(m), 2.0 * m - d * (d + 1) / 2.0);
}

LineFit exponent_fit(std::span<const MeanValueRecord> records) {
  if (records.size() < 4) throw DegenerateFit("exponent fit needs at least four records");
  std::vector<double> n, j;
  for (const auto& r : records) {
    if (r.d != records.front().d || r.m != records.front().m)
      throw InvalidArgument("exponent fit needs records with equal (d, m)");
    n.push_back(static_cast<double>(r.N));
    j.push_back(static_cast<double>(r.J));
  }
  return fit_loglog(n, j);
}

}  // namespace radonlab
