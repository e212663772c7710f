#include "holodyn/newton.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "holodyn/parallel.hpp"
#include "holodyn/parameter.hpp"

namespace holodyn {

namespace {
constexpr double kRootCaptureClass = 1e-8;  // basin classification capture

Polynomial newton_critical_equation(const Polynomial& f, double h) {
    const Polynomial df = f.derivative();
    const Polynomial ddf = df.derivative();
    return df * df * Complex{1.0 - h} + f * ddf * Complex{h};
}

/// Cancel shared roots (multiple roots of f make z f' - h f and f' share
/// factors).
std::pair<Polynomial, Polynomial> cancel_common_roots(const Polynomial& num,
                                                      const Polynomial& den) {
    if (num.degree() == 0 || den.degree() == 0) return {num, den};
    auto nroots = poly_roots_flat(num);
    auto droots = poly_roots_flat(den);
    bool cancelled = false;
    for (auto it = nroots.begin(); it != nroots.end();) {
        auto match = std::find_if(droots.begin(), droots.end(), [&](Complex d) {
            return std::abs(d - *it) <= 1e-8 * (1.0 + std::abs(*it));
        });
        if (match != droots.end()) {
            droots.erase(match);
            it = nroots.erase(it);
            cancelled = true;
        } else {
            ++it;
        }
    }
    if (!cancelled) return {num, den};
    return {Polynomial::from_roots(nroots, num.leading()),
            Polynomial::from_roots(droots, den.leading())};
}

}  // namespace

NearSingularity::NearSingularity(Complex z)
    : std::runtime_error([z] {
          std::ostringstream os;
          os << "Newton map evaluated at a free critical point near " << z.real() << "+"
             << z.imag() << "i";
          return os.str();
      }()),
      where(z) {}

NewtonMap::NewtonMap(Polynomial f, double h) : f_(std::move(f)), df_(f_.derivative()), h_(h) {
    if (f_.degree() < 1) throw std::invalid_argument("NewtonMap: degree must be >= 1");
    if (!(h_ > 0.0) || h_ > double(f_.degree()))
        throw std::invalid_argument("NewtonMap: need 0 < h <= deg f");
    roots_ = poly_roots(f_);
}

Complex NewtonMap::eval(Complex z) const {
    auto [v, d] = f_.eval_with_derivative(z);
    const double fscale = std::max(1.0, root_residual_scale(f_, z));
    if (std::abs(v) <= 1e-14 * fscale) return z;  // removable at the roots
    if (std::abs(d) <= 1e-12 * std::max(1.0, df_.coefficient_scale() *
                                                 std::pow(std::max(1.0, std::abs(z)),
                                                          df_.degree())))
        throw NearSingularity(z);
    return z - h_ * v / d;
}

int NewtonMap::root_index_near(Complex z, double tol) const {
    for (size_t k = 0; k < roots_.size(); ++k)
        if (std::abs(z - roots_[k].value) < tol * (1.0 + std::abs(roots_[k].value)))
            return static_cast<int>(k);
    return -1;
}

RationalMap NewtonMap::as_rational_map() const {
    Polynomial num = Polynomial::identity() * df_ - f_ * Complex{h_};
    auto [n, d] = cancel_common_roots(num, df_);
    return RationalMap(std::move(n), std::move(d));
}

std::vector<CycleRecord> find_bad_cycles(const Polynomial& f, double h, int max_period,
                                         int max_iter) {
    if (f.degree() < 3) return {};  // degree-2 Newton maps have none
    NewtonMap nm(f, h);
    const RationalMap N = nm.as_rational_map();
    const DynMap dyn{N};

    Polynomial crit_eq = newton_critical_equation(f, h);
    std::vector<Complex> candidates;
    if (crit_eq.degree() >= 1)
        for (const auto& r : poly_roots(crit_eq)) candidates.push_back(r.value);

    std::vector<CycleRecord> bad;
    for (Complex c0 : candidates) {
        if (nm.root_index_near(c0, 1e-7) >= 0) continue;  // superattracting root itself
        ExtComplex z{c0};
        std::vector<ExtComplex> trace{z};
        size_t anchor = 0, next_anchor = 1;
        std::optional<int> found_at;
        int candidate_period = 0;
        for (int i = 1; i <= max_iter; ++i) {
            z = map_eval_ext(dyn, z);
            trace.push_back(z);
            if (z.finite() && nm.root_index_near(z.value, 1e-9) >= 0) break;  // fell into a root
            const size_t cur = trace.size() - 1;
            if (cur == next_anchor) {
                anchor = cur;
                next_anchor *= 2;
                continue;
            }
            if (chordal(trace[cur], trace[anchor]) < 1e-9) {
                candidate_period = static_cast<int>(cur - anchor);
                for (int q = 1; q < candidate_period; ++q)
                    if (candidate_period % q == 0 &&
                        chordal(trace[cur], trace[cur - static_cast<size_t>(q)]) < 1e-8) {
                        candidate_period = q;
                        break;
                    }
                found_at = static_cast<int>(cur);
                break;
            }
        }
        if (!found_at || candidate_period == 0 || candidate_period > max_period) continue;

        CycleRecord cycle;
        try {
            cycle = find_cycle(dyn, candidate_period, trace[static_cast<size_t>(*found_at)], 1e-13);
        } catch (const CollapsedToLowerPeriod& col) {
            cycle = find_cycle(dyn, col.exact_period, trace[static_cast<size_t>(*found_at)], 1e-13);
        } catch (const std::exception&) {
            continue;
        }
        if (std::abs(cycle.multiplier) >= 1.0) continue;
        bool contains_root = false;
        for (const auto& pt : cycle.points) {
            if (pt.at_infinity) contains_root = true;  // infinity is never a bad sink
            else if (nm.root_index_near(pt.value, 1e-6) >= 0) contains_root = true;
        }
        if (contains_root) continue;
        bool duplicate = false;
        for (const auto& known : bad) {
            if (known.period != cycle.period) continue;
            for (const auto& p : cycle.points)
                for (const auto& q : known.points)
                    if (chordal(p, q) < 1e-7) duplicate = true;
        }
        if (!duplicate) bad.push_back(std::move(cycle));
    }
    return bad;
}

FlowTrajectory newton_flow(const Polynomial& f, Complex z0, double t_max, FlowField field,
                           FlowOptions opts) {
    if (!(t_max > 0.0)) throw std::invalid_argument("newton_flow: t_max must be > 0");
    const Polynomial df = f.derivative();
    const auto roots = poly_roots(f);

    using State = std::array<double, 2>;
    auto rhs = [&](const State& s, State& dsdt, double) {
        const Complex z{s[0], s[1]};
        auto [v, d] = f.eval_with_derivative(z);
        const Complex w = field == FlowField::Raw ? -v / d : -v * std::conj(d);
        dsdt[0] = w.real();
        dsdt[1] = w.imag();
    };

    namespace ode = boost::numeric::odeint;
    auto controlled = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                           ode::runge_kutta_dopri5<State>());

    FlowTrajectory out;
    const Complex f0 = f.eval(z0);
    if (std::abs(f0) < opts.root_capture)
        throw std::invalid_argument("newton_flow: z0 is already a root");
    const double arg0 = std::arg(f0);

    State s{z0.real(), z0.imag()};
    double t = 0.0, dt = opts.initial_step;
    out.samples.push_back({0.0, z0});
    double prev_abs = std::abs(f0);

    for (int step = 0; step < opts.max_steps && t < t_max; ++step) {
        if (t + dt > t_max) dt = t_max - t;
        const auto result = controlled.try_step(rhs, s, t, dt);
        if (result == ode::fail) {
            if (dt < 1e-14) {
                const Complex z{s[0], s[1]};
                if (std::abs(df.eval(z)) < 10.0 * opts.singularity_threshold) {
                    out.terminal = FlowTerminal::ReachedSingularity;
                    return out;
                }
                throw StepFailure("step size underflow", z, t);
            }
            continue;
        }
        const Complex z{s[0], s[1]};
        out.samples.push_back({t, z});

        const Complex fz = f.eval(z);
        const double a = std::abs(fz);
        // Invariant telemetry per accepted step.
        double drift = std::remainder(std::arg(fz) - arg0, 2.0 * std::numbers::pi);
        out.max_arg_drift = std::max(out.max_arg_drift, std::abs(drift));
        if (field == FlowField::Raw) {
            const Complex expected = std::exp(-t) * f0;
            out.max_exactness_error =
                std::max(out.max_exactness_error, std::abs(fz - expected) / std::abs(expected));
        }
        if (a > prev_abs * (1.0 + 1e-9))
            throw StepFailure("|f| increased along the flow", z, t);
        prev_abs = a;

        if (a < opts.root_capture) {
            out.terminal = FlowTerminal::ReachedRoot;
            double best = 1e300;
            for (size_t k = 0; k < roots.size(); ++k) {
                const double dd = std::abs(z - roots[k].value);
                if (dd < best) {
                    best = dd;
                    out.root_index = static_cast<int>(k);
                }
            }
            return out;
        }
        // Saddle event: a free critical point is a pole of the raw field
        // and an equilibrium of the desingularized one.
        if (std::abs(df.eval(z)) < opts.singularity_threshold) {
            out.terminal = FlowTerminal::ReachedSingularity;
            return out;
        }
    }
    out.terminal = FlowTerminal::TimeBudget;
    return out;
}

DegeneracyReport detect_degenerate(const Polynomial& f, double tol) {
    if (f.degree() < 3) throw std::invalid_argument("detect_degenerate: degree must be >= 3");
    DegeneracyReport rep;
    const double vscale = std::max(1.0, f.coefficient_scale());
    for (const auto& cp : poly_roots(f.derivative())) {
        rep.critical_values.push_back(f.eval(cp.value));
    }
    for (size_t i = 0; i < rep.critical_values.size(); ++i)
        if (std::abs(rep.critical_values[i]) < 1e-10 * vscale)
            rep.zero_value_indices.push_back(static_cast<int>(i));
    for (size_t i = 0; i < rep.critical_values.size(); ++i) {
        if (std::abs(rep.critical_values[i]) < 1e-10 * vscale) continue;
        for (size_t j = i + 1; j < rep.critical_values.size(); ++j) {
            if (std::abs(rep.critical_values[j]) < 1e-10 * vscale) continue;
            const double diff = std::remainder(
                std::arg(rep.critical_values[i]) - std::arg(rep.critical_values[j]),
                2.0 * std::numbers::pi);
            if (std::abs(diff) < tol) {
                rep.degenerate = true;
                rep.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return rep;
}

ClassifiedGrid basin_grid(const Polynomial& f, double h, const Window& window, int max_iter,
                          const std::vector<CycleRecord>* bad_cycles) {
    NewtonMap nm(f, h);
    const RationalMap N = nm.as_rational_map();
    ClassifiedGrid grid(window);

    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            ExtComplex z{window.point_at(i, j)};
            Cell& cell = grid.at(i, j);
            cell.cls = kClassUndecided;
            cell.value = double(max_iter);
            for (int n = 0; n < max_iter; ++n) {
                if (z.finite()) {
                    const int r = nm.root_index_near(z.value, kRootCaptureClass);
                    if (r >= 0) {
                        cell.cls = r;
                        cell.value = double(n);
                        break;
                    }
                }
                if (bad_cycles) {
                    bool onbad = false;
                    for (const auto& cyc : *bad_cycles)
                        for (const auto& pt : cyc.points)
                            if (chordal(z, pt) < 1e-6) onbad = true;
                    if (onbad) {
                        cell.cls = kClassBadCycle;
                        cell.value = double(n);
                        break;
                    }
                }
                z = N.eval_ext(z);
            }
        }
    });

    // Immediate basin: connected component (4-neighbour) of each root's cell.
    std::vector<std::uint8_t> seen(grid.cells.size(), 0);
    for (size_t r = 0; r < nm.roots().size(); ++r) {
        const Complex root = nm.roots()[r].value;
        if (!window.contains(root)) continue;
        auto [ri, rj] = window.pixel_of(root);
        if (grid.at(ri, rj).cls != static_cast<std::int32_t>(r)) continue;
        std::deque<std::pair<int, int>> queue{{ri, rj}};
        while (!queue.empty()) {
            auto [i, j] = queue.front();
            queue.pop_front();
            const size_t idx = static_cast<size_t>(i) * static_cast<size_t>(window.columns) +
                               static_cast<size_t>(j);
            if (seen[idx]) continue;
            seen[idx] = 1;
            if (grid.at(i, j).cls != static_cast<std::int32_t>(r)) continue;
            grid.at(i, j).aux = 1;
            if (i > 0) queue.emplace_back(i - 1, j);
            if (j > 0) queue.emplace_back(i, j - 1);
            if (i + 1 < window.rows) queue.emplace_back(i + 1, j);
            if (j + 1 < window.columns) queue.emplace_back(i, j + 1);
        }
    }
    return grid;
}

std::vector<double> default_h_samples(double m, int count) {
    std::vector<double> hs(static_cast<size_t>(count));
    const double lo = m / 20.0;
    for (int i = 0; i < count; ++i)
        hs[static_cast<size_t>(i)] =
            lo * std::pow(m / lo, count == 1 ? 1.0 : double(i) / double(count - 1));
    return hs;
}

ArcReport common_basin_arcs(const Polynomial& f, int root_index,
                            const std::vector<double>& h_samples, double radius,
                            int angular_resolution, int grid_resolution, int max_iter) {
    if (radius < 3.0) throw std::invalid_argument("common_basin_arcs: need R >= 3");
    const auto roots = poly_roots(f);
    if (root_index < 0 || root_index >= static_cast<int>(roots.size()))
        throw std::invalid_argument("common_basin_arcs: bad root index");
    for (const auto& r : roots)
        if (std::abs(r.value) > 1.0 + 1e-9)
            throw std::invalid_argument("common_basin_arcs: roots must lie in the unit disk");

    ArcReport rep;
    rep.radius = radius;
    rep.root_index = root_index;
    rep.h_samples = h_samples;
    rep.angular_samples = angular_resolution;
    rep.grid_resolution = grid_resolution;

    Window window;
    window.center = Complex{0.0, 0.0};
    window.width = window.height = 2.0 * (radius + 0.6);
    window.columns = window.rows = grid_resolution;

    std::vector<std::uint8_t> in_set(static_cast<size_t>(angular_resolution), 1);
    for (double h : h_samples) {
        ClassifiedGrid grid = basin_grid(f, h, window, max_iter);
        for (int k = 0; k < angular_resolution; ++k) {
            if (!in_set[static_cast<size_t>(k)]) continue;
            const double theta = 2.0 * std::numbers::pi * k / angular_resolution;
            const Complex z = std::polar(radius, theta);
            auto [i, j] = window.pixel_of(z);
            const Cell& cell = grid.at(i, j);
            if (cell.cls != root_index || cell.aux != 1) in_set[static_cast<size_t>(k)] = 0;
        }
    }

    // Assemble maximal circular runs.
    const double width = 2.0 * std::numbers::pi / angular_resolution;
    int k = 0;
    while (k < angular_resolution) {
        if (!in_set[static_cast<size_t>(k)]) {
            ++k;
            continue;
        }
        int len = 0;
        while (len < angular_resolution && in_set[static_cast<size_t>((k + len) % angular_resolution)])
            ++len;
        if (k == 0 && len < angular_resolution) {
            // Merge a wrap-around run into the last arc instead.
            int back = angular_resolution - 1;
            while (back > 0 && in_set[static_cast<size_t>(back)]) --back;
            if (!in_set[static_cast<size_t>(back)]) {
                int head = 0;
                while (head < angular_resolution && in_set[static_cast<size_t>(head)]) ++head;
                rep.arcs.emplace_back(0.0, head * width);
                k = head;
                continue;
            }
        }
        rep.arcs.emplace_back(k * width, (k + len) * width);
        k += len;
    }
    for (const auto& [a, b] : rep.arcs) rep.total_length += radius * (b - a);
    const int d = f.degree();
    rep.fitted_c = rep.total_length > 0.0
                       ? 2.0 * std::numbers::pi * radius / (double(d) * rep.total_length)
                       : 0.0;
    return rep;
}

double euler_step_discrepancy(const Polynomial& f, double h, const Window& window, int samples) {
    NewtonMap nm(f, h);
    const Polynomial df = f.derivative();
    double total = 0.0;
    int used = 0;
    const int side = std::max(2, static_cast<int>(std::sqrt(double(samples))));
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
            const Complex z = window.point_at(i * window.rows / side, j * window.columns / side);
            auto [v, d] = f.eval_with_derivative(z);
            if (std::abs(v) < 1e-6 || std::abs(d) < 1e-3) continue;
            Complex mapped;
            try {
                mapped = nm.eval(z);
            } catch (const NearSingularity&) {
                continue;
            }
            try {
                FlowOptions opts;
                opts.initial_step = h / 8.0;
                FlowTrajectory traj = newton_flow(f, z, h, FlowField::Raw, opts);
                if (traj.samples.empty()) continue;
                total += std::abs(mapped - traj.samples.back().z);
                ++used;
            } catch (const std::exception&) {
                continue;
            }
        }
    }
    return used > 0 ? total / used : 0.0;
}

}  // namespace holodyn
