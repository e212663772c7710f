#pragma once

#include <cstdint>
#include <optional>

#include "holodyn/grid.hpp"
#include "holodyn/orbits.hpp"

namespace holodyn {

/// Escape-time render.  Polynomials: class 0 = bounded, 1 = escaped with
/// smooth iteration count in `value`.  Rational maps: basins of the
/// attracting cycles found through the critical orbits, class = cycle
/// index, undecided pixels get kClassUndecided.  Schedule-deterministic.
ClassifiedGrid render_escape(const DynMap& f, const Window& window, int max_iter);

/// Smooth (continuous) escape count for one polynomial orbit; bounded
/// orbits return max_iter.  Exposed for point probes and tests.
double smooth_escape_count(const Polynomial& p, Complex z0, int max_iter);

/// Inverse-iteration sampler: leaves of a coding tree rooted at a
/// repelling fixed point (chosen automatically when absent).
std::vector<Complex> render_inverse(const DynMap& f, int depth, std::int64_t sample_budget,
                                    std::optional<Complex> root = std::nullopt);

/// Pixels of the boundary band of an escape render: bounded cells with an
/// escaped neighbour, dilated `dilate` cells outward (cross-check target
/// for inverse-iteration clouds).
std::vector<std::uint8_t> boundary_band(const ClassifiedGrid& grid, int dilate);

ClassifiedGrid render_mandelbrot(const Window& window, int max_iter);
/// Dwell of the Mandelbrot critical orbit at c: iterations to escape, or
/// -1 when still bounded after max_iter.
int mandelbrot_dwell(Complex c, int max_iter);

ClassifiedGrid render_tricorn(const Window& window, int max_iter);
int tricorn_dwell(Complex c, int max_iter);

/// McMullen cubic family f_lambda(z) = lambda z^2 + z^3: class = number of
/// finite critical points whose orbit reaches the certified contraction
/// disk of 0 within max_iter (2 approximates the component U).
ClassifiedGrid render_cubic_u(const Window& window, int max_iter);
int cubic_u_class(Complex lambda, int max_iter);

struct YoccozDisk {
    Complex center;  // 2 pi i p / q in the log-multiplier plane
    double radius;   // log(2) / q
    int p = 0, q = 1;
};
YoccozDisk yoccoz_disk(int p, int q);

/// Log-multiplier-plane figure: all disks for p/q in lowest terms,
/// 0 < p/q < 1, q <= q_max.  In-disk pixels carry class = q of the
/// smallest-q covering disk.
ClassifiedGrid yoccoz_disks_figure(int q_max, const Window& window);

struct LimbReport {
    int p = 0, q = 1;
    Complex root;
    double diameter_estimate = 0.0;  // a lower estimate by construction
    double k_estimate = 0.0;         // diameter * q^2
    int rays = 0;
    double bisection_tol = 0.0;
};

/// Empirical diameter of the p/q limb of the Mandelbrot set: rays from the
/// cardioid root point in the outward cone, bisecting the outermost
/// bounded/escaped transition per ray with the standard dwell test.
LimbReport limb_diameter(int p, int q, int sampling = 64, int max_iter = 2000);

/// Area of the pixels still undecided after max_iter: an upper bound for
/// the area of the non-escaping boundary band.  `refinement` is the sample
/// count per axis.
double julia_area_bound(const DynMap& f, const Window& window, int max_iter, int refinement);

}  // namespace holodyn
