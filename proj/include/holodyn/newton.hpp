#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "holodyn/grid.hpp"
#include "holodyn/orbits.hpp"

namespace holodyn {

struct NearSingularity : std::runtime_error {
    explicit NearSingularity(Complex z);
    Complex where;
};
struct StepFailure : std::runtime_error {
    StepFailure(const std::string& what, Complex last, double t)
        : std::runtime_error(what), last_good(last), at_time(t) {}
    Complex last_good;
    double at_time;
};

/// Relaxed Newton map N_{h,f}(z) = z - h f(z)/f'(z) with cached roots.
class NewtonMap {
public:
    NewtonMap(Polynomial f, double h);

    const Polynomial& f() const { return f_; }
    double relaxation() const { return h_; }
    const std::vector<RootWithMultiplicity>& roots() const { return roots_; }

    /// Map value; the removable singularity at every root is filled with
    /// the root itself.  Throws NearSingularity at free critical points of
    /// f (poles of the Newton vector field).
    Complex eval(Complex z) const;

    /// Index of the root within tol, or -1.
    int root_index_near(Complex z, double tol = 1e-8) const;

    /// The map as a rational map (z f' - h f) / f'.
    RationalMap as_rational_map() const;

private:
    Polynomial f_, df_;
    double h_;
    std::vector<RootWithMultiplicity> roots_;
};

/// Attracting cycles of N_{h,f} that contain no root of f: every critical
/// point of the map (zeros of (1-h) f'^2 + h f f'') is iterated and
/// attracting landings away from the roots are collected.  Empty result is
/// a valid outcome.
std::vector<CycleRecord> find_bad_cycles(const Polynomial& f, double h, int max_period = 8,
                                         int max_iter = 4000);

enum class FlowField { Raw, Desingularized };
enum class FlowTerminal { ReachedRoot, ReachedSingularity, TimeBudget };

struct FlowSample {
    double t;
    Complex z;
};

struct FlowTrajectory {
    std::vector<FlowSample> samples;
    FlowTerminal terminal = FlowTerminal::TimeBudget;
    int root_index = -1;              // when terminal == ReachedRoot
    double max_arg_drift = 0.0;       // radians, against arg f(z0)
    double max_exactness_error = 0.0; // raw field: relative |f(z(t)) - e^-t f(z0)|
};

struct FlowOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double root_capture = 1e-9;         // |f(z)| threshold
    double singularity_threshold = 1e-8; // |f'(z)| threshold (raw field)
    double initial_step = 1e-3;
    int max_steps = 200000;
};

/// Newton flow integration: raw field dz/dt = -f/f', or the desingularized
/// field dz/dt = -f conj(f') (time-rescaled, same trajectories).  Adaptive
/// embedded Runge-Kutta (Dormand-Prince 5(4) via odeint); |f| decrease and
/// arg f drift are checked per accepted step.
FlowTrajectory newton_flow(const Polynomial& f, Complex z0, double t_max, FlowField field,
                           FlowOptions opts = {});

struct DegeneracyReport {
    bool degenerate = false;
    std::vector<std::pair<int, int>> pairs;  // indices into critical_values
    std::vector<Complex> critical_values;    // at distinct finite critical points
    std::vector<int> zero_value_indices;     // critical points that are roots
};

/// Two critical values sharing an argument make the flow degenerate
/// (saddle connections); zero critical values are flagged separately.
DegeneracyReport detect_degenerate(const Polynomial& f, double tol = 1e-9);

/// Per-pixel Newton basins: class = root index, kClassBadCycle for orbits
/// landing on a bad cycle, kClassUndecided otherwise; value = iterations
/// used; aux = 1 on the immediate basin (connected component of the root).
ClassifiedGrid basin_grid(const Polynomial& f, double h, const Window& window, int max_iter,
                          const std::vector<CycleRecord>* bad_cycles = nullptr);

struct ArcReport {
    double radius = 3.0;
    int root_index = 0;
    std::vector<double> h_samples;
    std::vector<std::pair<double, double>> arcs;  // [start, end) angle intervals
    double total_length = 0.0;
    double fitted_c = 0.0;  // from total = 2 pi R / (c d)
    int angular_samples = 0;
    int grid_resolution = 0;
};

/// Empirical common basin: angles on |z| = R whose point lies in the
/// immediate basin of the chosen root for every h sample; arcs assembled
/// from consecutive in-set samples.
ArcReport common_basin_arcs(const Polynomial& f, int root_index,
                            const std::vector<double>& h_samples, double radius = 3.0,
                            int angular_resolution = 384, int grid_resolution = 384,
                            int max_iter = 400);

/// Default 16 logarithmically spaced h values in (0, m].
std::vector<double> default_h_samples(double m, int count = 16);

/// Mean discrepancy between one N_{h,f} step and a flow step of time h
/// from the same points (the map is the Euler scheme of the flow).
double euler_step_discrepancy(const Polynomial& f, double h, const Window& window, int samples);

}  // namespace holodyn
