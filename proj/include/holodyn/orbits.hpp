#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "holodyn/rational_map.hpp"

namespace holodyn {

struct OrbitRecord {
    ExtComplex start;
    std::vector<ExtComplex> points;  // points[0] == start
    bool escaped = false;
    std::optional<int> escape_index;
};

enum class CycleKind {
    Superattracting,
    Attracting,
    Repelling,
    RationallyIndifferent,
    IrrationallyIndifferent,
};

struct CycleRecord {
    int period = 1;
    std::vector<ExtComplex> points;
    Complex multiplier{0.0};
    CycleKind kind = CycleKind::Attracting;
};

const char* cycle_kind_name(CycleKind k);

struct CollapsedToLowerPeriod : std::runtime_error {
    CollapsedToLowerPeriod(int divisor)
        : std::runtime_error("cycle collapsed to exact period " + std::to_string(divisor)),
          exact_period(divisor) {}
    int exact_period;
};

/// Record up to n iterates of f starting at z0.  `escaped` is set as soon
/// as an iterate leaves the disk of the given radius (finite maps never
/// fault: poles route through the extended plane).
OrbitRecord orbit(const DynMap& f, const ExtComplex& z0, int n, double escape_radius);

/// Newton iteration on f^period(z) - z.  The returned record has the exact
/// period (divisor periods are rejected with CollapsedToLowerPeriod) and
/// multiplier = product of chart derivatives over the cycle.  Seeds at
/// infinity are solved in the w = 1/z chart.
CycleRecord find_cycle(const DynMap& f, int period, const ExtComplex& seed,
                       double tolerance = 1e-12);

/// Multiplier and classification for an already-known cycle through the
/// given points, in cyclic order.
CycleRecord make_cycle_record(const DynMap& f, const std::vector<ExtComplex>& points,
                              double residual_tol = 1e-9);

enum class CriticalFate { Periodic, Preperiodic, Escaping, Undecided };

struct CriticalOrbitReport {
    ExtComplex critical_point;
    CriticalFate fate = CriticalFate::Undecided;
    int preperiod = 0;  // tail length (0 for periodic)
    int period = 0;
    std::optional<CycleRecord> cycle;  // polished cycle when landed
    int iterations_used = 0;
};

/// Classify the forward orbit of every critical point of f: lands on a
/// cycle (tolerance detection with Brent-style probing on the tail),
/// escapes, or remains undecided after max_iter.
std::vector<CriticalOrbitReport> classify_critical_orbits(const DynMap& f, int max_iter = 2000,
                                                          double tolerance = 1e-9);

/// Attracting / superattracting cycles discovered by the classification,
/// deduplicated.  Every attracting cycle of a rational map shows up this
/// way (each one attracts a critical orbit).
std::vector<CycleRecord> attracting_cycles(const DynMap& f, int max_iter = 2000,
                                           double tolerance = 1e-9);

/// Closest approach of each critical orbit to the repelling fixed points
/// over the given number of iterates (diagnostic; not a certification).
double closest_approach_to_repelling_fixed_points(const DynMap& f, int iterates);

struct NeedsRays : std::runtime_error {
    NeedsRays() : std::runtime_error("combinatorial rotation number requires landing rays") {}
};

struct RationalAngle {
    long long num = 0;
    long long den = 1;
    double value() const { return double(num) / double(den); }
};

struct RotationNumber {
    bool rational = false;
    RationalAngle ratio;     // when rational
    double estimate = 0.0;   // always filled
};

/// Rotation number at a fixed point.  Indifferent points: arg(multiplier)
/// / 2 pi with a continued-fraction rationality test.  Repelling points:
/// combinatorial rotation number from the cyclic order of the landing-ray
/// angles (doubling map action); throws NeedsRays when absent.
RotationNumber rotation_number_at(const DynMap& f, Complex fixed_point,
                                  const std::vector<RationalAngle>& landing_rays = {});

}  // namespace holodyn
