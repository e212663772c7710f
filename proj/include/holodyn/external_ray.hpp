#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "holodyn/orbits.hpp"

namespace holodyn {

struct RayBlocked : std::runtime_error {
    explicit RayBlocked(const std::string& what) : std::runtime_error(what) {}
};
struct NotConnected : std::runtime_error {
    NotConnected() : std::runtime_error("a critical orbit escapes; external rays undefined") {}
};

struct RayPath {
    RationalAngle angle;
    std::vector<Complex> points;
    std::vector<double> potentials;  // strictly decreasing Green potentials
    std::optional<Complex> landing;
    bool landed = false;
};

struct RayOptions {
    /// Reference modulus where the Boettcher coordinate is read off as the
    /// identity; 0 = auto (max(25, 2 * escape radius)).  Reference
    /// distortion at level k enters the ray position as O(1/(f^k)'), so the
    /// landing limit is unaffected; a moderate radius keeps the per-level
    /// Newton walk short.
    double reference_radius = 0.0;
    /// Descend levels until the potential drops below this floor
    /// (~ double precision at 1e-17).
    double potential_floor = 1e-17;
    int newton_cap = 20;  // Newton steps per level
    double landing_tol = 1e-5;
};

/// External ray of a monic polynomial with connected Julia set (verified
/// through the critical orbits; throws NotConnected otherwise).  Descends
/// potential levels t_k = t_0 / d^k, solving the Boettcher equation
/// f^k(z) = R_ref * e^(2 pi i d^k theta) by Newton continuation from the
/// previous level.  Throws RayBlocked when continuation fails.
RayPath trace_external_ray(const Polynomial& f, const RationalAngle& angle,
                           RayOptions opts = {});

}  // namespace holodyn
