#include "holodyn/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace holodyn {

double golden_mean() { return (std::sqrt(5.0) - 1.0) / 2.0; }

Complex SiegelFamily::lambda() const {
    return std::polar(1.0, 2.0 * std::numbers::pi * theta);
}

RotationArithmetic continued_fraction(double theta, int k) {
    if (k < 1 || k > 40) throw std::invalid_argument("continued_fraction: need 1 <= k <= 40");
    if (theta <= 0.0 || theta >= 1.0)
        throw std::invalid_argument("continued_fraction: theta must lie in (0, 1)");
    RotationArithmetic out;
    out.theta = theta;

    long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p/q convergents of [0; a1, a2, ...]
    double x = theta;
    for (int i = 0; i < k; ++i) {
        const double inv = 1.0 / x;
        const long long a = static_cast<long long>(std::floor(inv));
        if (a < 1) throw RationalInput("expansion terminated");
        out.partial_quotients.push_back(a);
        out.bounded_type_bound = std::max(out.bounded_type_bound, a);
        const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        out.convergents.emplace_back(p1, q1);
        const double frac = inv - double(a);
        if (frac < 1e-12) {
            if (i + 1 < k) throw RationalInput("expansion terminated after " +
                                               std::to_string(i + 1) + " quotients");
            break;
        }
        x = frac;
    }

    // Diophantine exponent gamma from |theta - p/q| ~ q^-gamma over the
    // last few convergents.
    double gamma = 0.0;
    int used = 0;
    for (size_t i = out.convergents.size() >= 3 ? out.convergents.size() - 3 : 0;
         i < out.convergents.size(); ++i) {
        const auto [p, q] = out.convergents[i];
        const double err = std::abs(theta - double(p) / double(q));
        if (err > 0.0 && q > 1) {
            gamma += -std::log(err) / std::log(double(q));
            ++used;
        }
    }
    out.diophantine_exponent = used > 0 ? gamma / used : 0.0;
    return out;
}

PowerSeries series_P_rho(const SiegelFamily& family, int N) {
    if (N < 1) throw std::invalid_argument("series_P_rho: N must be >= 1");
    if (family.rho.real() <= 0.0) throw std::invalid_argument("series_P_rho: need Re(rho) > 0");
    const Complex lambda = family.lambda();
    // b_k: coefficients of lambda (1 - z)^rho.
    PowerSeries p = PowerSeries::zero(N);
    Complex b = lambda;
    for (int k = 0; k < N; ++k) {
        p.at(k + 1) = b / double(k + 1);
        b *= (double(k) - family.rho) / double(k + 1);
    }
    return p;
}

Linearization linearize(const SiegelFamily& family, int N) {
    if (N < 2) throw std::invalid_argument("linearize: N must be >= 2");
    const Complex lambda = family.lambda();
    const Complex rho = family.rho;

    for (int n = 2; n <= N; ++n) {
        const Complex div = std::pow(lambda, n) - lambda;
        if (std::abs(div) < 1e-12) throw SmallDivisorOverflow(n);
    }

    // h from h'(lambda z) = u(z) h'(z) with u = (1 - h)^rho, via
    //   (1 - h) u' = -rho u h'.
    PowerSeries h = PowerSeries::zero(N);
    PowerSeries u = PowerSeries::zero(N);
    h.at(1) = Complex{1.0};
    u.at(0) = Complex{1.0};
    if (N >= 1) u.at(1) = -rho;
    std::vector<Complex> lambda_pow(static_cast<size_t>(N) + 1);
    lambda_pow[0] = Complex{1.0};
    for (int n = 1; n <= N; ++n) lambda_pow[static_cast<size_t>(n)] = lambda_pow[static_cast<size_t>(n) - 1] * lambda;

    for (int n = 2; n <= N; ++n) {
        Complex acc{0.0};
        for (int k = 1; k <= n - 1; ++k) acc += u[k] * double(n - k) * h[n - k];
        h.at(n) = acc / (double(n) * (lambda_pow[static_cast<size_t>(n) - 1] - 1.0));
        Complex b{0.0};
        for (int j = 1; j <= n - 1; ++j) b += h[j] * double(n - j) * u[n - j];
        Complex c{0.0};
        for (int k = 0; k <= n - 1; ++k) c += u[k] * double(n - k) * h[n - k];
        u.at(n) = (b - rho * c) / double(n);
    }

    Linearization out;
    out.h = h;

    // Conjugacy residual: h(lambda z) - P(h(z)), with P(h) integrated from
    // (P . h)' = lambda u h'.
    PowerSeries ph = (u * h.derivative() * lambda).antiderivative().truncated(N);
    double resid = 0.0;
    const double scale = std::max(1.0, h.coefficient_scale());
    for (int m = 0; m <= N; ++m)
        resid = std::max(resid, std::abs(h[m] * lambda_pow[static_cast<size_t>(m)] - ph[m]));
    out.max_residual = resid / scale;

    // Smoothed root test: least-squares fit of log |h_n| against
    // {n, log n, 1} over the top half of the coefficients.  The log n
    // regressor absorbs the polynomial prefactor that biases the plain
    // |h_n|^(1/n) average.
    {
        double s_nn = 0, s_nl = 0, s_n1 = 0, s_ll = 0, s_l1 = 0, s_11 = 0;
        double b_n = 0, b_l = 0, b_1 = 0;
        for (int n = N / 2; n <= N; ++n) {
            const double a = std::abs(h[n]);
            if (a <= 0.0) continue;
            const double y = std::log(a), x1 = double(n), x2 = std::log(double(n));
            s_nn += x1 * x1; s_nl += x1 * x2; s_n1 += x1;
            s_ll += x2 * x2; s_l1 += x2; s_11 += 1.0;
            b_n += x1 * y; b_l += x2 * y; b_1 += y;
        }
        // 3x3 normal equations by Cramer's rule.
        const double det = s_nn * (s_ll * s_11 - s_l1 * s_l1) - s_nl * (s_nl * s_11 - s_l1 * s_n1) +
                           s_n1 * (s_nl * s_l1 - s_ll * s_n1);
        if (std::abs(det) > 1e-30 && s_11 >= 8.0) {
            const double det_a = b_n * (s_ll * s_11 - s_l1 * s_l1) -
                                 s_nl * (b_l * s_11 - s_l1 * b_1) +
                                 s_n1 * (b_l * s_l1 - s_ll * b_1);
            out.conformal_radius_estimate = std::exp(-det_a / det);
        }
    }
    return out;
}

PowerSeries f_from_h(const PowerSeries& h) {
    if (h[0] != Complex{0.0}) throw std::invalid_argument("f_from_h: need h(0) = 0");
    PowerSeries one_minus_h = h * Complex{-1.0};
    one_minus_h.at(0) = Complex{1.0};
    return (h.derivative() * one_minus_h.truncated(h.truncation() - 1).reciprocal())
        .truncated(h.truncation() - 1);
}

namespace {

PowerSeries run_recursion(Complex rho, int N, Complex a0,
                          const std::function<Complex(int)>& small_divisor_weight) {
    PowerSeries f = PowerSeries::zero(N);
    f.at(0) = a0;
    // (n+1) a_{n+1} = [f^2 + rho f g]_n with g_m = a_m * weight(m).
    for (int n = 0; n < N; ++n) {
        Complex acc{0.0};
        for (int j = 0; j <= n; ++j)
            acc += f[j] * f[n - j] * (1.0 + rho * small_divisor_weight(n - j));
        f.at(n + 1) = acc / double(n + 1);
    }
    return f;
}

}  // namespace

PowerSeries carleson_recursion(double theta, Complex rho, int N,
                               std::optional<Complex> a0_override) {
    if (N < 1) throw std::invalid_argument("carleson_recursion: N must be >= 1");
    // Pole guard and precomputed weights 1/2 + (i/2) cot((m+1) pi theta),
    // argument reduced to the fractional part before the cotangent.
    std::vector<Complex> weights(static_cast<size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
        double frac = std::fmod(double(m + 1) * theta, 1.0);
        if (frac < 0.0) frac += 1.0;
        if (std::min(frac, 1.0 - frac) < 1e-10) throw CotPole(m);
        const double cot = std::cos(std::numbers::pi * frac) / std::sin(std::numbers::pi * frac);
        weights[static_cast<size_t>(m)] = Complex{0.5, 0.5 * cot};
    }
    const Complex a0 = a0_override.value_or(1.0 / (1.0 + rho / 2.0));
    return run_recursion(rho, N, a0,
                         [&weights](int m) { return weights[static_cast<size_t>(m)]; });
}

PowerSeries carleson_recursion_real_part_only(Complex rho, int N,
                                              std::optional<Complex> a0_override) {
    if (N < 1) throw std::invalid_argument("carleson_recursion: N must be >= 1");
    const Complex a0 = a0_override.value_or(1.0 / (1.0 + rho / 2.0));
    return run_recursion(rho, N, a0, [](int) { return Complex{0.5}; });
}

Complex balanced_normalization(double theta, Complex rho, int N) {
    // Start from the f_0 constant and alternate modulus bisection with a
    // phase-drift fit on the tail.
    Complex s = 1.0 / (1.0 + rho / 2.0);
    for (int round = 0; round < 3; ++round) {
        PowerSeries f = carleson_recursion(theta, rho, N, s);
        double prev = std::arg(f[N / 4]);
        double total = 0.0;
        int count = 0;
        for (int k = N / 4 + 1; k <= N; ++k) {
            double d = std::arg(f[k]) - prev;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            total += d;
            ++count;
            prev = std::arg(f[k]);
        }
        if (count > 0) s *= std::polar(1.0, -total / count);

        double lo = std::abs(s) * 0.9, hi = std::abs(s) * 1.1;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            PowerSeries g = carleson_recursion(theta, rho, N, std::polar(mid, std::arg(s)));
            const double ratio = std::abs(g[N]) / (std::abs(g[N / 2]) + 1e-300);
            (ratio > 1.0 ? hi : lo) = mid;
        }
        s = std::polar(0.5 * (lo + hi), std::arg(s));
    }
    return s;
}

AngleProbe boundary_angle_probe(const PowerSeries& h, const std::vector<double>& radii) {
    if (h.truncation() < 200) throw std::invalid_argument("boundary_angle_probe: need order >= 200");
    if (radii.size() < 3)
        throw std::invalid_argument("boundary_angle_probe: need at least three radii");
    for (size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1] && radii[i + 1] < 1.0))
            throw std::invalid_argument("boundary_angle_probe: radii must increase toward 1");

    const PowerSeries dh = h.derivative();
    const int N = dh.truncation();

    // The corner sits at the boundary preimage of the critical point,
    // which need not be on the positive real axis; aim the radial probe
    // at the direction where |h'| grows fastest.
    double corner_arg = 0.0;
    {
        const double r = radii.back();
        double best = -1.0;
        const int scan = 1024;
        for (int a = 0; a < scan; ++a) {
            const double phi = 2.0 * std::numbers::pi * a / scan;
            const double m = std::abs(dh.eval(std::polar(r, phi)));
            if (m > best) {
                best = m;
                corner_arg = phi;
            }
        }
    }

    std::vector<double> logs(radii.size());
    for (size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const Complex v = dh.eval(std::polar(r, corner_arg));
        // Tail bound: |a_N| r^N / (1 - r) against the evaluated magnitude.
        const double tail = std::abs(dh[N]) * std::pow(r, N) / (1.0 - r);
        if (tail > 0.05 * std::abs(v))
            throw InsufficientOrder("series tail dominates at radius " + std::to_string(r));
        logs[i] = std::log(std::abs(v));
    }

    AngleProbe out;
    for (size_t i = 0; i + 1 < radii.size(); ++i) {
        const double dlog = (logs[i + 1] - logs[i]) /
                            (std::log(1.0 - radii[i + 1]) - std::log(1.0 - radii[i]));
        out.per_radius_estimates.push_back(180.0 * (1.0 + dlog));
    }
    // Linear extrapolation of the last two estimates toward r = 1, with the
    // spread of the tail estimates as the uncertainty band.
    const size_t m = out.per_radius_estimates.size();
    double estimate = out.per_radius_estimates.back();
    if (m >= 2) {
        const double x1 = 1.0 - radii[m - 1], x2 = 1.0 - radii[m];
        const double y1 = out.per_radius_estimates[m - 2], y2 = out.per_radius_estimates[m - 1];
        const double xm1 = 0.5 * (x1 + (1.0 - radii[m - 2]));
        const double xm2 = 0.5 * (x2 + x1);
        if (xm1 != xm2) estimate = y2 + (y1 - y2) * (0.0 - xm2) / (xm1 - xm2);
    }
    double spread = 0.0;
    for (size_t i = m >= 3 ? m - 3 : 0; i < m; ++i)
        spread = std::max(spread, std::abs(out.per_radius_estimates[i] - estimate));
    out.angle_degrees = estimate;
    out.band_degrees = std::max(2.0, 1.5 * spread);
    return out;
}

}  // namespace holodyn
