#include "holodyn/external_ray.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace holodyn {

namespace {

/// f^n(z) and the orbit derivative, with a magnitude bailout.
struct IterateResult {
    Complex value;
    Complex derivative;
    bool ok = true;
};

IterateResult iterate_with_derivative(const Polynomial& f, Complex z, int n) {
    Complex value = z, deriv{1.0};
    for (int k = 0; k < n; ++k) {
        auto [v, d] = f.eval_with_derivative(value);
        deriv *= d;
        value = v;
        if (!isfinite(value) || std::abs(value) > 1e120 || !isfinite(deriv))
            return {value, deriv, false};
    }
    return {value, deriv, true};
}

}  // namespace

RayPath trace_external_ray(const Polynomial& f, const RationalAngle& angle, RayOptions opts) {
    const int d = f.degree();
    if (d < 2) throw std::invalid_argument("trace_external_ray: degree must be >= 2");
    if (std::abs(std::abs(f.leading()) - 1.0) > 1e-12)
        throw std::invalid_argument("trace_external_ray: polynomial must be monic");
    if (angle.den <= 0) throw std::invalid_argument("trace_external_ray: bad angle");
    if (std::gcd(angle.num < 0 ? -angle.num : angle.num, angle.den) != 1 && angle.num != 0)
        throw std::invalid_argument("trace_external_ray: angle not in lowest terms");

    for (const auto& rep : classify_critical_orbits(DynMap{f})) {
        if (rep.critical_point.at_infinity) continue;
        if (rep.fate == CriticalFate::Escaping) throw NotConnected();
    }

    RayPath path;
    path.angle = angle;

    const double ref_radius = opts.reference_radius > 0.0
                                  ? opts.reference_radius
                                  : std::max(25.0, 2.0 * escape_radius(f));
    const double t0 = std::log(ref_radius);
    // Angle orbit under t -> d t (mod 1), exact on the rational numerator.
    long long num = ((angle.num % angle.den) + angle.den) % angle.den;

    Complex z = std::polar(ref_radius, 2.0 * std::numbers::pi *
                                           (double(num) / double(angle.den)));
    path.points.push_back(z);
    path.potentials.push_back(t0);

    double t = t0;
    long long level_num = num;
    for (int k = 1;; ++k) {
        const double t_prev = t;
        t /= double(d);
        if (t < opts.potential_floor) break;
        // Reference target for f^k: modulus R_ref, angle d^k theta.
        level_num = (level_num * d) % angle.den;
        const Complex ref = std::polar(ref_radius, 2.0 * std::numbers::pi *
                                                       (double(level_num) / double(angle.den)));
        // Radial seed adjustment, valid while still in the far zone where
        // the Boettcher coordinate is close to the identity; deeper levels
        // reuse the previous point, which is already close.
        if (t_prev > 0.75 * t0) z *= std::exp(t - t_prev);
        bool converged = false;
        for (int step = 0; step < opts.newton_cap; ++step) {
            IterateResult it = iterate_with_derivative(f, z, k);
            if (!it.ok) throw RayBlocked("iterate overflow during ray continuation");
            const Complex g = it.value - ref;
            if (std::abs(g) < 1e-11 * ref_radius) {
                converged = true;
                break;
            }
            if (std::abs(it.derivative) < 1e-280) throw RayBlocked("vanishing orbit derivative");
            const Complex delta = g / it.derivative;
            z -= delta;
            if (!isfinite(z)) throw RayBlocked("ray continuation left the plane");
            if (std::abs(delta) < 1e-15 * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw RayBlocked("Newton continuation failed at level " + std::to_string(k));
        path.points.push_back(z);
        path.potentials.push_back(t);
        // Once the point stops moving at double resolution the ray has
        // landed as far as this precision can tell; deeper levels would
        // only iterate rounding noise.
        const size_t n = path.points.size();
        if (n >= 3) {
            const double eps_here = 8.0 * 2.220446049250313e-16 * (1.0 + std::abs(z));
            if (std::abs(path.points[n - 1] - path.points[n - 2]) <= eps_here &&
                std::abs(path.points[n - 2] - path.points[n - 3]) <= eps_here)
                break;
        }
    }

    // Landing verdict: the last five levels must have settled.
    const size_t n = path.points.size();
    if (n >= 5) {
        double diam = 0.0;
        for (size_t a = n - 5; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b)
                diam = std::max(diam, std::abs(path.points[a] - path.points[b]));
        if (diam < opts.landing_tol) {
            path.landed = true;
            path.landing = path.points.back();
        }
    }
    return path;
}

}  // namespace holodyn
