#pragma once

// Arithmetic-geometric mean and complete elliptic integrals.
//
// K(z) = int_0^{pi/2} dphi / sqrt(1 - z^2 sin^2 phi)
// E(z) = int_0^{pi/2} sqrt(1 - z^2 sin^2 phi) dphi
//
// Gauss: AGM(1-z, 1+z) = pi / (2 K(z)), so the Seiffert function of the AGM is
// (2/pi) z K(z).

#include <gmpxx.h>

#include <cstddef>

#include "meanlab/means.hpp"

namespace meanlab::elliptic {

/// Largest modulus accepted by ellip_k.
inline constexpr double kModulusCap = 1.0 - 1e-12;

struct SeriesBudget {
  double term_tolerance = 1e-16;
  std::size_t max_terms = 10000;
};

enum class KMethod { agm, series, quadrature };

double agm(const PositivePair& p);

/// Throws std::domain_error for z outside [0, 1 - 1e-12]; series throws
/// calculus::NonConvergence when the budget runs out.
double ellip_k(double z, KMethod method = KMethod::agm,
               SeriesBudget budget = {});

/// E(z) on [0,1] via the AGM with the sum of 2^{n-1} c_n^2.
double ellip_e(double z);
/// E(z) by adaptive quadrature; used as an oracle.
double ellip_e_quadrature(double z);

/// K'(z) = E(z)/(z(1-z^2)) - K(z)/z; returns 0 at z = 0.
double ellip_k_prime(double z);

/// m-th coefficient of f'_AGM: (2m+1) [(2m-1)!!/(2m)!!]^2, m >= 1.
double agm_coefficient(std::size_t m);

/// Same coefficient in exact arithmetic, built from the double factorials.
mpq_class agm_coefficient_exact(std::size_t m);

/// (2m+1)(2m+3)/(2m+2)^2, the claimed ratio c(m+1)/c(m).
mpq_class agm_coefficient_ratio(std::size_t m);

/// f_AGM(z) = (2/pi) z K(z).
double agm_seiffert(double z);

/// 1 + sum_m c_m z^{2m}. Falls back to (2/pi) E(z)/(1-z^2) when the series
/// does not reach the budget tolerance.
double agm_seiffert_prime(double z, SeriesBudget budget = {});

/// The pure series; throws calculus::NonConvergence on budget exhaustion.
double agm_seiffert_prime_series(double z, SeriesBudget budget = {});

SeiffertFunction agm_seiffert_function();

/// V(x,y) = pi H(x,y) / (2 E(z)).
double v_mean(const PositivePair& p);

/// v(z) = (2/pi) z E(z) / (1-z^2), the Seiffert function of V, and v'(z).
double v_seiffert(double z);
double v_seiffert_prime(double z);

}  // namespace meanlab::elliptic
