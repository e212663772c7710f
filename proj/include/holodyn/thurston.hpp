#pragma once

#include <vector>

#include "holodyn/interval_map.hpp"
#include "holodyn/polynomial.hpp"

namespace holodyn {

struct InfeasibleTargets : std::runtime_error {
    explicit InfeasibleTargets(const std::string& what) : std::runtime_error(what) {}
};
struct RangeMismatch : std::runtime_error {
    explicit RangeMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Real polynomial interval map of degree d with its d-1 interior critical
/// points and values, as produced by the critical-value solver.
struct IntervalPolynomial {
    Polynomial poly;  // real coefficients
    std::vector<double> critical_points;  // strictly inside (0, 1)
    std::vector<double> critical_values;

    double eval(double x) const { return poly.eval_real(x); }
    int laps() const { return static_cast<int>(critical_points.size()) + 1; }
    /// Lap j runs between consecutive critical points (with 0 and 1 at the
    /// ends); the restriction is strictly monotone and invertible.
    double lap_inverse(int lap, double y) const;
    int lap_of(double x) const;
};

/// The unique degree-d polynomial with p(0), p(1) matching the boundary
/// pair, d-1 interior critical points, and prescribed critical values in
/// lap order: Newton iteration on the critical points (c_i) with
/// p' = A prod (x - c_i).  Residual below 1e-12.
IntervalPolynomial solve_critical_values(int d, std::pair<double, double> boundary,
                                         const std::vector<double>& targets);

/// Strictly increasing homeomorphism of [0, 1] fixing the endpoints,
/// stored as a dense sample table.
struct IntervalHomeo {
    MonotoneTable table;
    double eval(double x) const { return table.eval(x); }
    double inverse(double y) const { return table.inverse(y); }
};

struct ThurstonStep {
    IntervalHomeo h;
    IntervalPolynomial p;
    PiecewiseMonotoneMap f_next;
    double sup_h_minus_id = 0.0;
    double conjugacy_residual = 0.0;  // sup |p(x) - f(h(x))| on the probe grid
};

/// One pullback step: p solves the critical-value problem of f, h is the
/// lap-wise (f|_lap)^-1 . p, and f_next = h^-1 . p = h^-1 . f . h.
ThurstonStep thurston_step(const PiecewiseMonotoneMap& f);

struct ThurstonRun {
    std::vector<PiecewiseMonotoneMap> maps;    // f_0, f_1, ...
    std::vector<IntervalPolynomial> polys;     // p_0, p_1, ...
    std::vector<double> h_norms;               // sup |h_n - id|
    std::vector<double> p_deltas;              // sup |p_n - p_{n-1}| on the grid
    std::vector<double> conjugacy_residuals;
    MonotoneTable phi;                         // (h_0 . ... . h_n)^-1 on the grid
    bool converged = false;
    int steps = 0;
};

/// Iterate thurston_step until sup |h_n - id| < tol or max_steps; reports
/// non-convergence as converged = false (a valid outcome).
ThurstonRun thurston_run(const PiecewiseMonotoneMap& f0, int max_steps, double tol);

/// Sup distance of two interval maps on a uniform probe grid.
double sup_distance(const PiecewiseMonotoneMap& a, const PiecewiseMonotoneMap& b,
                    int probes = 16384);
double sup_distance(const PiecewiseMonotoneMap& a, const IntervalPolynomial& b,
                    int probes = 16384);

}  // namespace holodyn
