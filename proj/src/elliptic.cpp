#include "meanlab/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "meanlab/calculus.hpp"

namespace meanlab::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAgmSteps = 64;

void require_k_modulus(double z) {
  if (!(z >= 0.0 && z <= kModulusCap))
    throw std::domain_error("elliptic modulus must lie in [0, 1-1e-12]");
}

// Complementary modulus sqrt(1 - z^2) without squaring z first.
double complementary(double z) { return std::sqrt((1.0 - z) * (1.0 + z)); }

struct AgmState {
  double a;
  double b;
};

AgmState iterate(double a, double b) {
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > 1e-15 * a; ++i) {
    double next = 0.5 * (a + b);
    b = std::sqrt(a) * std::sqrt(b);  // a*b can under- or overflow
    a = next;
  }
  return {a, b};
}

double k_agm(double z) {
  auto s = iterate(1.0, complementary(z));
  return kPi / (s.a + s.b);
}

double k_series(double z, const SeriesBudget& budget) {
  // pi/2 (1 + sum [(2m-1)!!/(2m)!!]^2 z^{2m})
  double z2 = z * z;
  double ratio = 1.0;  // (2m-1)!!/(2m)!!
  double power = 1.0;
  double sum = 1.0;
  double compensation = 0.0;
  for (std::size_t m = 1; m <= budget.max_terms; ++m) {
    ratio *= static_cast<double>(2 * m - 1) / static_cast<double>(2 * m);
    power *= z2;
    double term = ratio * ratio * power;
    // Kahan summation
    double y = term - compensation;
    double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    if (term < budget.term_tolerance * sum) return 0.5 * kPi * sum;
  }
  // Terms decrease, so the tail is below last * z^2 / (1 - z^2).
  double last = ratio * ratio * power;
  throw calculus::NonConvergence("K power series exceeded its term budget",
                                 0.5 * kPi * sum,
                                 0.5 * kPi * last * z2 / ((1.0 - z) * (1.0 + z)));
}

double k_quadrature(double z) {
  double z2 = z * z;
  return calculus::integrate(
      [z2](double phi) {
        double s = std::sin(phi);
        return 1.0 / std::sqrt(1.0 - z2 * s * s);
      },
      0.0, 0.5 * kPi, {1e-14, 60});
}

std::optional<double> f_agm_prime_series(double z, const SeriesBudget& budget,
                                         double* partial, double* tail) {
  double z2 = z * z;
  double c = 0.75;
  double power = z2;
  double sum = 1.0;
  for (std::size_t m = 1; m <= budget.max_terms; ++m) {
    double term = c * power;
    sum += term;
    if (term < budget.term_tolerance * sum) return sum;
    double dm = static_cast<double>(m);
    c *= (2.0 * dm + 1.0) * (2.0 * dm + 3.0) / ((2.0 * dm + 2.0) * (2.0 * dm + 2.0));
    power *= z2;
  }
  if (partial) *partial = sum;
  // c_m < 1, so the tail is below z^{2(M+1)} / (1 - z^2).
  if (tail) *tail = power / ((1.0 - z) * (1.0 + z));
  return std::nullopt;
}

}  // namespace

double agm(const PositivePair& p) {
  if (p.x() == p.y()) return p.x();
  auto s = iterate(p.hi(), p.lo());
  return 0.5 * (s.a + s.b);
}

double ellip_k(double z, KMethod method, SeriesBudget budget) {
  require_k_modulus(z);
  switch (method) {
    case KMethod::agm:
      return k_agm(z);
    case KMethod::series:
      return k_series(z, budget);
    case KMethod::quadrature:
      return k_quadrature(z);
  }
  throw std::invalid_argument("unknown K method");
}

double ellip_e(double z) {
  if (!(z >= 0.0 && z <= 1.0))
    throw std::domain_error("elliptic modulus must lie in [0, 1]");
  if (z == 1.0) return 1.0;
  if (z == 0.0) return 0.5 * kPi;
  // E = K (1 - sum_{n>=0} 2^{n-1} c_n^2), c_0 = z, c_{n+1} = c_n^2 / (4 a_{n+1}).
  double a = 1.0;
  double b = complementary(z);
  double c = z;
  double weight = 0.5;
  double sum = weight * c * c;
  for (int i = 0; i < kMaxAgmSteps; ++i) {
    double next = 0.5 * (a + b);
    b = std::sqrt(a) * std::sqrt(b);  // a*b can under- or overflow
    a = next;
    c = c * c / (4.0 * a);
    weight *= 2.0;
    double term = weight * c * c;
    sum += term;
    if (term <= 1e-17 * sum && std::abs(a - b) <= 1e-15 * a) break;
  }
  double k = kPi / (2.0 * a);
  return k * (1.0 - sum);
}

double ellip_e_quadrature(double z) {
  if (!(z >= 0.0 && z <= 1.0))
    throw std::domain_error("elliptic modulus must lie in [0, 1]");
  double z2 = z * z;
  return calculus::integrate(
      [z2](double phi) {
        double s = std::sin(phi);
        return std::sqrt(1.0 - z2 * s * s);
      },
      0.0, 0.5 * kPi, {1e-14, 60});
}

double ellip_k_prime(double z) {
  require_k_modulus(z);
  if (z == 0.0) return 0.0;
  if (z < 0.05) {
    // Termwise derivative of the power series; the closed form cancels here.
    double z2 = z * z;
    double ratio = 1.0;
    double power = z;  // z^{2m-1}
    double sum = 0.0;
    for (std::size_t m = 1; m < 200; ++m) {
      ratio *= static_cast<double>(2 * m - 1) / static_cast<double>(2 * m);
      double term = 2.0 * static_cast<double>(m) * ratio * ratio * power;
      sum += term;
      if (term < 1e-17 * sum) break;
      power *= z2;
    }
    return 0.5 * kPi * sum;
  }
  double k = k_agm(z);
  double e = ellip_e(z);
  return e / (z * (1.0 - z) * (1.0 + z)) - k / z;
}

double agm_coefficient(std::size_t m) {
  if (m == 0) throw std::domain_error("coefficient index starts at 1");
  double c = 0.75;
  for (std::size_t j = 1; j < m; ++j) {
    double dj = static_cast<double>(j);
    c *= (2.0 * dj + 1.0) * (2.0 * dj + 3.0) / ((2.0 * dj + 2.0) * (2.0 * dj + 2.0));
  }
  return c;
}

mpq_class agm_coefficient_exact(std::size_t m) {
  if (m == 0) throw std::domain_error("coefficient index starts at 1");
  mpz_class odd = 1;   // (2m-1)!!
  mpz_class even = 1;  // (2m)!!
  for (std::size_t j = 1; j <= m; ++j) {
    odd *= static_cast<unsigned long>(2 * j - 1);
    even *= static_cast<unsigned long>(2 * j);
  }
  mpq_class c(mpz_class(static_cast<unsigned long>(2 * m + 1)) * odd * odd,
              even * even);
  c.canonicalize();
  return c;
}

mpq_class agm_coefficient_ratio(std::size_t m) {
  if (m == 0) throw std::domain_error("coefficient index starts at 1");
  mpz_class two_m(static_cast<unsigned long>(2 * m));
  mpq_class r((two_m + 1) * (two_m + 3), (two_m + 2) * (two_m + 2));
  r.canonicalize();
  return r;
}

double agm_seiffert(double z) {
  if (z == 0.0) return 0.0;
  return 2.0 / kPi * z * ellip_k(z);
}

double agm_seiffert_prime_series(double z, SeriesBudget budget) {
  if (!(z >= 0.0 && z < 1.0))
    throw std::domain_error("argument must lie in [0,1)");
  double partial = 0.0;
  double tail = 0.0;
  auto s = f_agm_prime_series(z, budget, &partial, &tail);
  if (!s)
    throw calculus::NonConvergence("f'_AGM series exceeded its term budget",
                                   partial, tail);
  return *s;
}

double agm_seiffert_prime(double z, SeriesBudget budget) {
  if (!(z >= 0.0 && z < 1.0))
    throw std::domain_error("argument must lie in [0,1)");
  if (auto s = f_agm_prime_series(z, budget, nullptr, nullptr)) return *s;
  return 2.0 / kPi * ellip_e(z) / ((1.0 - z) * (1.0 + z));
}

SeiffertFunction agm_seiffert_function() {
  return {"f_AGM", [](double z) { return agm_seiffert(z); },
          ScalarFn([](double z) { return agm_seiffert_prime(z); })};
}

double v_mean(const PositivePair& p) {
  if (p.x() == p.y()) return p.x();
  double lo = p.lo();
  double hi = p.hi();
  double h = 2.0 * lo * (hi / (lo + hi));
  return kPi * h / (2.0 * ellip_e(relative_half_spread(p)));
}

double v_seiffert(double z) {
  if (z == 0.0) return 0.0;
  return 2.0 / kPi * z * ellip_e(z) / ((1.0 - z) * (1.0 + z));
}

double v_seiffert_prime(double z) {
  double w = (1.0 - z) * (1.0 + z);
  double e = ellip_e(z);
  double k = ellip_k(z);
  return 2.0 / kPi * ((2.0 * e - k) / w + 2.0 * z * z * e / (w * w));
}

}  // namespace meanlab::elliptic
