#include "carnot/special.hpp"

#include <array>
#include <cmath>
#include <cstddef>

namespace carnot::special {
namespace {

constexpr double kSeriesCut = 1.0;
constexpr int kTerms = 11;

// sum_{n<kTerms} coef(n) * (-u2)^n, coefficients from a recurrence.
template <class Coef>
double alt_series(double u2, Coef coef) {
  double acc = 0.0;
  for (int n = kTerms - 1; n >= 0; --n) acc = coef(n) - u2 * acc;
  return acc;
}

constexpr std::array<double, 2 * kTerms + 4> make_inv_fact() {
  std::array<double, 2 * kTerms + 4> t{};
  double r = 1.0;
  t[0] = 1.0;
  for (int i = 1; i < 2 * kTerms + 4; ++i) {
    r /= i;
    t[static_cast<std::size_t>(i)] = r;
  }
  return t;
}

constexpr auto kInvFact = make_inv_fact();

constexpr double inv_fact(int n) { return kInvFact[static_cast<std::size_t>(n)]; }

}  // namespace

double sinc(double u) {
  if (std::abs(u) < kSeriesCut)
    return alt_series(u * u, [](int n) { return inv_fact(2 * n + 1); });
  return std::sin(u) / u;
}

double cfun(double u) {
  if (std::abs(u) < kSeriesCut)
    return alt_series(u * u, [](int n) { return (2 * n + 2) * inv_fact(2 * n + 3); });
  return (std::sin(u) - u * std::cos(u)) / (u * u * u);
}

double kfun(double w) {
  if (std::abs(w) < kSeriesCut)
    return alt_series(w * w, [](int n) { return inv_fact(2 * n + 3); });
  return (w - std::sin(w)) / (w * w * w);
}

double kfun_prime(double w) {
  if (std::abs(w) < kSeriesCut) {
    // sum_{n>=1} (-1)^n 2n w^{2n-1} / (2n+3)!
    const double w2 = w * w;
    double acc = 0.0;
    for (int n = kTerms; n >= 1; --n) acc = 2 * n * inv_fact(2 * n + 3) - w2 * acc;
    return -w * acc;
  }
  return (1.0 - std::cos(w)) / (w * w * w) - 3.0 * kfun(w) / w;
}

}  // namespace carnot::special
