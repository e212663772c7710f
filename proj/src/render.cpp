#include "holodyn/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "holodyn/coding_tree.hpp"
#include "holodyn/parallel.hpp"

namespace holodyn {

namespace {
constexpr double kCaptureTol = 1e-6;  // chordal capture distance for basin renders
}

double smooth_escape_count(const Polynomial& p, Complex z0, int max_iter) {
    const double radius = escape_radius(p);
    const double logd = std::log(double(p.degree()));
    Complex z = z0;
    for (int n = 0; n < max_iter; ++n) {
        if (!isfinite(z) || std::abs(z) > radius) {
            const double az = std::clamp(std::abs(z), radius * 1.0000001, 1e290);
            return n + 1.0 - std::log(std::log(az) / std::log(radius)) / logd;
        }
        z = p.eval(z);
    }
    return double(max_iter);
}

ClassifiedGrid render_escape(const DynMap& f, const Window& window, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("render_escape: max_iter must be >= 1");
    ClassifiedGrid grid(window);

    if (const auto* p = std::get_if<Polynomial>(&f)) {
        const double radius = escape_radius(*p);
        const double logd = std::log(double(p->degree()));
        parallel_for(window.rows, [&](int i) {
            for (int j = 0; j < window.columns; ++j) {
                Complex z = window.point_at(i, j);
                Cell& cell = grid.at(i, j);
                cell.cls = kClassBounded;
                cell.value = double(max_iter);
                for (int n = 0; n < max_iter; ++n) {
                    if (!isfinite(z) || std::abs(z) > radius) {
                        const double az = std::clamp(std::abs(z), radius * 1.0000001, 1e290);
                        cell.cls = kClassEscaped;
                        cell.value = n + 1.0 - std::log(std::log(az) / std::log(radius)) / logd;
                        cell.aux = n;
                        break;
                    }
                    z = p->eval(z);
                }
            }
        });
        return grid;
    }

    const RationalMap& r = std::get<RationalMap>(f);
    const auto cycles = attracting_cycles(f);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            ExtComplex z{window.point_at(i, j)};
            Cell& cell = grid.at(i, j);
            cell.cls = kClassUndecided;
            cell.value = double(max_iter);
            for (int n = 0; n < max_iter && cell.cls == kClassUndecided; ++n) {
                for (size_t k = 0; k < cycles.size(); ++k) {
                    for (const auto& pt : cycles[k].points) {
                        if (chordal(z, pt) < kCaptureTol) {
                            cell.cls = static_cast<std::int32_t>(k);
                            cell.value = double(n);
                            break;
                        }
                    }
                    if (cell.cls != kClassUndecided) break;
                }
                if (cell.cls == kClassUndecided) z = r.eval_ext(z);
            }
        }
    });
    return grid;
}

std::vector<Complex> render_inverse(const DynMap& f, int depth, std::int64_t sample_budget,
                                    std::optional<Complex> root) {
    Complex base;
    if (root) {
        base = *root;
    } else {
        // Default root: a repelling fixed point.
        RationalMap r = as_rational(f);
        Polynomial fixed_eq = r.numerator() - Polynomial::identity() * r.denominator();
        std::optional<Complex> found;
        for (const auto& fp : poly_roots(fixed_eq)) {
            if (std::abs(map_derivative(f, fp.value)) > 1.0 + 1e-9) {
                found = fp.value;
                break;
            }
        }
        if (!found) throw std::invalid_argument("render_inverse: no repelling fixed point found");
        base = *found;
    }
    return inverse_iteration_cloud(f, base, depth, sample_budget);
}

std::vector<std::uint8_t> boundary_band(const ClassifiedGrid& grid, int dilate) {
    const int rows = grid.window.rows, cols = grid.window.columns;
    std::vector<std::uint8_t> band(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0);
    auto idx = [cols](int i, int j) {
        return static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j);
    };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (grid.at(i, j).cls != kClassBounded) continue;
            bool edge = false;
            for (int di = -1; di <= 1 && !edge; ++di)
                for (int dj = -1; dj <= 1 && !edge; ++dj) {
                    int ni = i + di, nj = j + dj;
                    if (ni < 0 || nj < 0 || ni >= rows || nj >= cols)
                        edge = true;  // bounded cell at the window rim counts
                    else if (grid.at(ni, nj).cls == kClassEscaped)
                        edge = true;
                }
            if (edge) band[idx(i, j)] = 1;
        }
    for (int pass = 0; pass < dilate; ++pass) {
        std::vector<std::uint8_t> grown = band;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                if (band[idx(i, j)]) continue;
                for (int di = -1; di <= 1; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        int ni = i + di, nj = j + dj;
                        if (ni >= 0 && nj >= 0 && ni < rows && nj < cols && band[idx(ni, nj)])
                            grown[idx(i, j)] = 1;
                    }
            }
        band.swap(grown);
    }
    return band;
}

namespace {

struct DwellResult {
    int dwell = -1;       // -1: still bounded after max_iter
    double smooth = 0.0;  // continuous count at escape
};

template <bool Conjugate>
DwellResult parameter_orbit_dwell(Complex c, int max_iter) {
    const double radius = std::max(2.0, std::abs(c));
    Complex z{0.0};
    for (int n = 0; n < max_iter; ++n) {
        if constexpr (Conjugate)
            z = std::conj(z) * std::conj(z) + c;
        else
            z = z * z + c;
        if (std::abs(z) > radius) {
            const double az = std::clamp(std::abs(z), radius * 1.0000001, 1e290);
            return {n + 1,
                    n + 2.0 - std::log(std::log(az) / std::log(radius)) / std::numbers::ln2};
        }
    }
    return {-1, double(max_iter)};
}

ClassifiedGrid render_parameter_dwell(const Window& window, int max_iter,
                                      DwellResult (*probe)(Complex, int)) {
    ClassifiedGrid grid(window);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            const DwellResult r = probe(window.point_at(i, j), max_iter);
            Cell& cell = grid.at(i, j);
            if (r.dwell < 0) {
                cell.cls = kClassBounded;
                cell.value = double(max_iter);
            } else {
                cell.cls = kClassEscaped;
                cell.value = r.smooth;
                cell.aux = r.dwell;
            }
        }
    });
    return grid;
}

}  // namespace

int mandelbrot_dwell(Complex c, int max_iter) {
    return parameter_orbit_dwell<false>(c, max_iter).dwell;
}

int tricorn_dwell(Complex c, int max_iter) {
    return parameter_orbit_dwell<true>(c, max_iter).dwell;
}

ClassifiedGrid render_mandelbrot(const Window& window, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("render_mandelbrot: max_iter must be >= 1");
    return render_parameter_dwell(window, max_iter, &parameter_orbit_dwell<false>);
}

ClassifiedGrid render_tricorn(const Window& window, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("render_tricorn: max_iter must be >= 1");
    return render_parameter_dwell(window, max_iter, &parameter_orbit_dwell<true>);
}

int cubic_u_class(Complex lambda, int max_iter) {
    const double contraction = 0.5 / (1.0 + std::abs(lambda));
    const double radius = std::max(2.0, 1.0 + std::abs(lambda));
    const Complex crits[2] = {Complex{0.0}, -2.0 * lambda / 3.0};
    int count = 0;
    for (const Complex& c0 : crits) {
        Complex z = c0;
        for (int n = 0; n < max_iter; ++n) {
            if (std::abs(z) < contraction) {
                ++count;
                break;
            }
            if (!isfinite(z) || std::abs(z) > radius) break;
            z = lambda * z * z + z * z * z;
        }
    }
    return count;
}

ClassifiedGrid render_cubic_u(const Window& window, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("render_cubic_u: max_iter must be >= 1");
    ClassifiedGrid grid(window);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            const int k = cubic_u_class(window.point_at(i, j), max_iter);
            Cell& cell = grid.at(i, j);
            cell.cls = k;
            cell.value = double(k);
        }
    });
    return grid;
}

YoccozDisk yoccoz_disk(int p, int q) {
    if (q < 1) throw std::invalid_argument("yoccoz_disk: q must be >= 1");
    YoccozDisk d;
    d.p = p;
    d.q = q;
    d.center = Complex{0.0, 2.0 * std::numbers::pi * double(p) / double(q)};
    d.radius = std::log(2.0) / double(q);
    return d;
}

ClassifiedGrid yoccoz_disks_figure(int q_max, const Window& window) {
    if (q_max < 2) throw std::invalid_argument("yoccoz_disks_figure: q_max must be >= 2");
    std::vector<YoccozDisk> disks;
    for (int q = 2; q <= q_max; ++q)
        for (int p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) disks.push_back(yoccoz_disk(p, q));

    ClassifiedGrid grid(window);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            const Complex w = window.point_at(i, j);
            Cell& cell = grid.at(i, j);
            cell.cls = kClassBounded;
            for (const auto& d : disks) {
                if (std::abs(w - d.center) <= d.radius) {
                    if (cell.cls == kClassBounded || d.q < cell.cls) {
                        cell.cls = d.q;
                        cell.value = double(d.p) / double(d.q);
                    }
                }
            }
        }
    });
    return grid;
}

LimbReport limb_diameter(int p, int q, int sampling, int max_iter) {
    if (std::gcd(p, q) != 1 || p <= 0 || p >= q)
        throw std::invalid_argument("limb_diameter: need 0 < p/q < 1 in lowest terms");
    LimbReport rep;
    rep.p = p;
    rep.q = q;
    rep.rays = sampling;
    rep.bisection_tol = 1e-4;

    const double theta = 2.0 * std::numbers::pi * double(p) / double(q);
    const Complex lambda = std::polar(1.0, theta);
    rep.root = lambda / 2.0 - lambda * lambda / 4.0;

    // Outward normal of the cardioid at the root point.
    const Complex tangent = Complex{0.0, 0.5} * lambda * (1.0 - lambda);
    const Complex normal = Complex{0.0, -1.0} * (tangent / std::abs(tangent));
    const double base_angle = std::arg(normal);

    const double cone = 1.2;  // radians to each side of the normal
    const double r_max = 3.0;
    double best = 0.0;
    std::vector<double> extents(static_cast<size_t>(sampling), 0.0);
    parallel_for(sampling, [&](int s) {
        const double phi =
            base_angle + cone * (sampling == 1 ? 0.0 : (2.0 * s / double(sampling - 1) - 1.0));
        const Complex dir = std::polar(1.0, phi);
        auto bounded_at = [&](double r) {
            return mandelbrot_dwell(rep.root + r * dir, max_iter) < 0;
        };
        // Outermost bounded sample along the ray: coarse scan from the
        // outside, then bisect the outermost transition found.
        const double coarse = 0.01;
        double hi = -1.0, lo = -1.0;
        for (double r = r_max; r > 0.0; r -= coarse) {
            if (bounded_at(r)) {
                lo = r;
                hi = std::min(r + coarse, r_max);
                break;
            }
        }
        if (lo < 0.0) {
            extents[static_cast<size_t>(s)] = 0.0;
            return;
        }
        while (hi - lo > 1e-4) {
            double mid = 0.5 * (hi + lo);
            (bounded_at(mid) ? lo : hi) = mid;
        }
        extents[static_cast<size_t>(s)] = lo;
    });
    for (double e : extents) best = std::max(best, e);
    rep.diameter_estimate = best;
    rep.k_estimate = best * double(q) * double(q);
    return rep;
}

double julia_area_bound(const DynMap& f, const Window& window, int max_iter, int refinement) {
    if (refinement < 2) throw std::invalid_argument("julia_area_bound: refinement too small");
    if (const auto* p = std::get_if<Polynomial>(&f)) {
        const double r = escape_radius(*p);
        if (!(window.contains(Complex{r, r}) && window.contains(Complex{-r, -r})))
            throw std::invalid_argument("julia_area_bound: window does not cover the Julia set");
    }
    Window w = window;
    w.columns = w.rows = refinement;
    const auto cycles = attracting_cycles(f);
    const double capture = 1e-3;

    std::vector<std::int64_t> undecided_per_row(static_cast<size_t>(w.rows), 0);
    const bool poly = std::holds_alternative<Polynomial>(f);
    const double radius = poly ? escape_radius(std::get<Polynomial>(f)) : 0.0;
    parallel_for(w.rows, [&](int i) {
        std::int64_t count = 0;
        for (int j = 0; j < w.columns; ++j) {
            ExtComplex z{w.point_at(i, j)};
            bool decided = false;
            for (int n = 0; n < max_iter && !decided; ++n) {
                if (poly && (z.at_infinity || std::abs(z.value) > radius)) {
                    decided = true;
                    break;
                }
                for (const auto& cyc : cycles) {
                    for (const auto& pt : cyc.points)
                        if (chordal(z, pt) < capture) {
                            decided = true;
                            break;
                        }
                    if (decided) break;
                }
                if (!decided) z = map_eval_ext(f, z);
            }
            if (!decided) ++count;
        }
        undecided_per_row[static_cast<size_t>(i)] = count;
    });
    const std::int64_t undecided =
        std::accumulate(undecided_per_row.begin(), undecided_per_row.end(), std::int64_t{0});
    return double(undecided) * w.pixel_area();
}

}  // namespace holodyn
