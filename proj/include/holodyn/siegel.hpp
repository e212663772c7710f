#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "holodyn/power_series.hpp"

namespace holodyn {

struct RationalInput : std::runtime_error {
    explicit RationalInput(const std::string& what) : std::runtime_error(what) {}
};
struct SmallDivisorOverflow : std::runtime_error {
    explicit SmallDivisorOverflow(int n)
        : std::runtime_error("small divisor |lambda^n - lambda| underflows at n = " +
                             std::to_string(n)),
          order(n) {}
    int order;
};
struct CotPole : std::runtime_error {
    explicit CotPole(int nu)
        : std::runtime_error("(nu+1) theta within tolerance of an integer at nu = " +
                             std::to_string(nu)),
          nu(nu) {}
    int nu;
};
struct InsufficientOrder : std::runtime_error {
    explicit InsufficientOrder(const std::string& what) : std::runtime_error(what) {}
};

/// Rotation number with its continued-fraction expansion.
struct RotationArithmetic {
    double theta = 0.0;
    std::vector<long long> partial_quotients;
    std::vector<std::pair<long long, long long>> convergents;  // (p_k, q_k)
    long long bounded_type_bound = 0;  // max partial quotient seen
    double diophantine_exponent = 0.0;  // gamma fit from |theta - p/q| ~ q^-gamma
};

/// Continued-fraction expansion by the Gauss map (k terms).  Throws
/// RationalInput when the expansion terminates within working precision.
RotationArithmetic continued_fraction(double theta, int k);

/// Golden mean (sqrt 5 - 1)/2.
double golden_mean();

struct SiegelFamily {
    Complex rho{1.0, 0.0};  // Re(rho) > 0
    double theta = 0.0;     // lambda = e^(2 pi i theta)
    Complex lambda() const;
};

/// Coefficients of P_rho with P'_rho = lambda (1 - z)^rho, P_rho(0) = 0,
/// through order N (termwise integration of the binomial series).
PowerSeries series_P_rho(const SiegelFamily& family, int N);

struct Linearization {
    PowerSeries h;          // normalized h(0) = 0, h'(0) = 1
    double conformal_radius_estimate = 0.0;  // root test with Cesaro smoothing
    double max_residual = 0.0;  // conjugacy residual coefficient scale
};

/// Conjugacy h(lambda z) = P_rho(h(z)) solved by the O(N^2) coefficient
/// recursion through the auxiliary series u = (1 - h)^rho.  Scans the small
/// divisors |lambda^n - lambda| up front (SmallDivisorOverflow below 1e-12).
Linearization linearize(const SiegelFamily& family, int N);

/// f = h'/(1 - h) as a series quotient through the truncation order.
PowerSeries f_from_h(const PowerSeries& h);

/// Coefficients a_nu of f from the order-by-order recursion
///   f' - f^2 = rho f g,   g_nu = a_nu / (1 - lambda^(nu+1)),
/// where 1/(1 - lambda^(nu+1)) = 1/2 + (i/2) cot((nu+1) pi theta).
/// a_0 defaults to the f_0 normalization 1/(1 + rho/2).
PowerSeries carleson_recursion(double theta, Complex rho, int N,
                               std::optional<Complex> a0_override = std::nullopt);

/// Same recursion with the imaginary cotangent part dropped; reproduces
/// f_0 = 1/((1 + rho/2)(1 - z)) exactly.
PowerSeries carleson_recursion_real_part_only(Complex rho, int N,
                                              std::optional<Complex> a0_override = std::nullopt);

/// Normalization a_0 for which the recursion's coefficient sequence stays
/// bounded away from both growth and decay: modulus by bisection on the
/// tail ratio, phase by cancelling the mean per-order drift.  This is the
/// sharp estimate of the boundary preimage of the critical point (its
/// modulus is the conformal radius).
Complex balanced_normalization(double theta, Complex rho, int N);

struct AngleProbe {
    double angle_degrees = 0.0;
    double band_degrees = 0.0;  // reported uncertainty half-width
    std::vector<double> per_radius_estimates;
};

/// Opening angle of the image boundary corner at the critical point:
/// exponent beta fitted from d log |h'(r)| / d log (1 - r) along real radii
/// approaching 1, angle = 180 beta degrees.  Throws InsufficientOrder when
/// the truncation tail dominates at a requested radius.
AngleProbe boundary_angle_probe(const PowerSeries& h, const std::vector<double>& radii);

}  // namespace holodyn
