#include "holodyn/thurston.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Real antiderivative of prod (x - c_i) with value 0 at 0.
Polynomial monic_product_antiderivative(const std::vector<double>& c) {
    std::vector<Complex> roots(c.begin(), c.end());
    return Polynomial::from_roots(roots).antiderivative();
}

bool alternates(const std::vector<double>& v) {
    for (size_t k = 0; k + 1 < v.size(); ++k) {
        const double d0 = v[k + 1] - v[k];
        if (d0 == 0.0) return false;
        if (k + 2 < v.size()) {
            const double d1 = v[k + 2] - v[k + 1];
            if (d0 * d1 >= 0.0) return false;
        }
    }
    return true;
}

}  // namespace

int IntervalPolynomial::lap_of(double x) const {
    int j = 0;
    while (j < static_cast<int>(critical_points.size()) &&
           x > critical_points[static_cast<size_t>(j)])
        ++j;
    return j;
}

double IntervalPolynomial::lap_inverse(int lap, double y) const {
    const int d = laps();
    if (lap < 0 || lap >= d) throw std::out_of_range("lap index");
    double lo = lap == 0 ? 0.0 : critical_points[static_cast<size_t>(lap) - 1];
    double hi = lap == d - 1 ? 1.0 : critical_points[static_cast<size_t>(lap)];
    const double ylo = poly.eval_real(lo), yhi = poly.eval_real(hi);
    const bool up = yhi > ylo;
    const double ymin = up ? ylo : yhi, ymax = up ? yhi : ylo;
    y = std::clamp(y, ymin, ymax);
    for (int iter = 0; iter < 52 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double v = poly.eval_real(mid);
        const bool right = up ? (v < y) : (v > y);
        (right ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int polish = 0; polish < 2; ++polish) {
        auto [v, dv] = poly.eval_with_derivative(Complex{x, 0.0});
        if (std::abs(dv) < 1e-12) break;
        const double step = (v.real() - y) / dv.real();
        const double nx = x - step;
        if (nx < lo - 1e-12 || nx > hi + 1e-12) break;
        x = nx;
    }
    return x;
}

IntervalPolynomial solve_critical_values(int d, std::pair<double, double> boundary,
                                         const std::vector<double>& targets) {
    if (d < 2) throw std::invalid_argument("solve_critical_values: degree must be >= 2");
    if (static_cast<int>(targets.size()) != d - 1)
        throw std::invalid_argument("solve_critical_values: need d-1 targets");
    const double b0 = boundary.first, b1 = boundary.second;
    for (double t : targets)
        if (t < 0.0 || t > 1.0) throw InfeasibleTargets("target outside [0, 1]");
    std::vector<double> seq{b0};
    seq.insert(seq.end(), targets.begin(), targets.end());
    seq.push_back(b1);
    if (!alternates(seq)) throw InfeasibleTargets("critical values must strictly alternate");

    const int n = d;  // unknowns: c_1..c_{d-1}, A
    std::mt19937 rng(20230517);
    std::uniform_real_distribution<double> jitter(-0.35, 0.35);

    for (int attempt = 0; attempt < 9; ++attempt) {
        std::vector<double> c(static_cast<size_t>(d - 1));
        for (int i = 0; i < d - 1; ++i) {
            double base = double(i + 1) / d;
            if (attempt > 0) base = std::clamp(base + jitter(rng) / d, 0.02, 0.98);
            c[static_cast<size_t>(i)] = base;
        }
        std::sort(c.begin(), c.end());

        Polynomial q = monic_product_antiderivative(c);
        // Seed A from the best-conditioned equation.
        double A = 0.0, bestq = 0.0;
        for (int i = 0; i < d - 1; ++i) {
            const double qi = q.eval_real(c[static_cast<size_t>(i)]);
            if (std::abs(qi) > bestq) {
                bestq = std::abs(qi);
                A = (targets[static_cast<size_t>(i)] - b0) / qi;
            }
        }
        const double q1 = q.eval_real(1.0);
        if (std::abs(q1) > bestq) {
            bestq = std::abs(q1);
            A = (b1 - b0) / q1;
        }
        if (A == 0.0) A = 1.0;

        bool ok = false;
        for (int iter = 0; iter < 80; ++iter) {
            q = monic_product_antiderivative(c);
            Eigen::VectorXd resid(n);
            for (int i = 0; i < d - 1; ++i)
                resid(i) = b0 + A * q.eval_real(c[static_cast<size_t>(i)]) -
                           targets[static_cast<size_t>(i)];
            resid(d - 1) = b0 + A * q.eval_real(1.0) - b1;
            if (resid.lpNorm<Eigen::Infinity>() < 1e-13) {
                ok = true;
                break;
            }

            Eigen::MatrixXd jac(n, n);
            // dQ/dc_j = -integral of prod_{k != j} (s - c_k).
            std::vector<Polynomial> dq;
            for (int j = 0; j < d - 1; ++j) {
                std::vector<Complex> others;
                for (int k = 0; k < d - 1; ++k)
                    if (k != j) others.emplace_back(c[static_cast<size_t>(k)], 0.0);
                dq.push_back(Polynomial::from_roots(others).antiderivative() * Complex{-1.0});
            }
            for (int i = 0; i < d - 1; ++i) {
                for (int j = 0; j < d - 1; ++j)
                    jac(i, j) = A * dq[static_cast<size_t>(j)].eval_real(c[static_cast<size_t>(i)]);
                jac(i, d - 1) = q.eval_real(c[static_cast<size_t>(i)]);
            }
            for (int j = 0; j < d - 1; ++j)
                jac(d - 1, j) = A * dq[static_cast<size_t>(j)].eval_real(1.0);
            jac(d - 1, d - 1) = q.eval_real(1.0);

            Eigen::VectorXd step = jac.partialPivLu().solve(resid);
            if (!step.allFinite()) break;
            for (int j = 0; j < d - 1; ++j) c[static_cast<size_t>(j)] -= step(j);
            A -= step(d - 1);
            bool inside = true;
            for (double ci : c) inside = inside && ci > 0.0 && ci < 1.0;
            if (!inside || !std::isfinite(A)) break;
            std::sort(c.begin(), c.end());
        }
        if (!ok) continue;
        for (size_t j = 0; j + 1 < c.size(); ++j)
            if (c[j + 1] - c[j] < 1e-10) ok = false;
        if (!ok) continue;

        IntervalPolynomial out;
        out.poly = monic_product_antiderivative(c) * Complex{A} +
                   Polynomial::constant(Complex{b0});
        out.critical_points = c;
        out.critical_values.clear();
        for (double ci : c) out.critical_values.push_back(out.poly.eval_real(ci));
        return out;
    }
    throw NoConvergence(80);
}

ThurstonStep thurston_step(const PiecewiseMonotoneMap& f) {
    const int d = f.laps();
    const double b0 = std::abs(f.boundary0()) < 0.5 ? 0.0 : 1.0;
    const double b1 = std::abs(f.boundary1()) < 0.5 ? 0.0 : 1.0;
    const std::vector<double> targets = f.critical_values();

    const IntervalPolynomial p = solve_critical_values(d, {b0, b1}, targets);

    // Lap ranges of p equal lap ranges of f by the solver postcondition.
    for (int j = 0; j < d; ++j) {
        const double pl = j == 0 ? b0 : p.critical_values[static_cast<size_t>(j) - 1];
        const double pr = j == d - 1 ? b1 : p.critical_values[static_cast<size_t>(j)];
        const double fl = j == 0 ? f.boundary0() : targets[static_cast<size_t>(j) - 1];
        const double fr = j == d - 1 ? f.boundary1() : targets[static_cast<size_t>(j)];
        if (std::abs(pl - fl) > 1e-8 || std::abs(pr - fr) > 1e-8)
            throw RangeMismatch("lap " + std::to_string(j));
    }

    // h = (f|_lap)^-1 . p lap-by-lap; h^-1 = (p|_lap)^-1 . f.
    auto h_eval = [&](double x) {
        x = clamp01(x);
        const int j = p.lap_of(x);
        const auto& lap = f.lap(j);
        return f.lap_inverse(j, std::clamp(p.eval(x), lap.y_min(), lap.y_max()));
    };
    auto h_inv = [&](double y) {
        y = clamp01(y);
        const int j = f.lap_of(y);
        return clamp01(p.lap_inverse(j, f.eval(y)));
    };

    // Probe norms.
    const int probes = 8192;
    double sup_h = 0.0, sup_conj = 0.0;
    for (int i = 0; i <= probes; ++i) {
        const double x = double(i) / probes;
        const double hx = h_eval(x);
        sup_h = std::max(sup_h, std::abs(hx - x));
        sup_conj = std::max(sup_conj, std::abs(p.eval(x) - f.eval(hx)));
    }

    // Sampled record of h (endpoints pinned exactly).
    const int hsamples = 4097;
    std::vector<double> hy(static_cast<size_t>(hsamples));
    for (int i = 0; i < hsamples; ++i)
        hy[static_cast<size_t>(i)] = h_eval(double(i) / (hsamples - 1));
    hy.front() = 0.0;
    hy.back() = 1.0;
    for (size_t i = 0; i + 1 < hy.size(); ++i)  // guard against rounding ties
        if (hy[i + 1] <= hy[i]) hy[i + 1] = std::nextafter(hy[i], 2.0);
    IntervalHomeo h{MonotoneTable(0.0, 1.0, std::move(hy))};

    // f_next = h^-1 . p, with breakpoints at p's critical points.
    std::vector<double> breaks{0.0};
    breaks.insert(breaks.end(), p.critical_points.begin(), p.critical_points.end());
    breaks.push_back(1.0);
    PiecewiseMonotoneMap f_next = PiecewiseMonotoneMap::from_function(
        breaks, [&](double x) { return h_inv(p.eval(x)); });
    return ThurstonStep{std::move(h), p, std::move(f_next), sup_h, sup_conj};
}

ThurstonRun thurston_run(const PiecewiseMonotoneMap& f0, int max_steps, double tol) {
    if (max_steps < 1) throw std::invalid_argument("thurston_run: max_steps must be >= 1");
    ThurstonRun run;
    run.maps.push_back(f0);

    const int phin = 4097;
    std::vector<double> phi(static_cast<size_t>(phin));
    for (int i = 0; i < phin; ++i) phi[static_cast<size_t>(i)] = double(i) / (phin - 1);

    for (int n = 0; n < max_steps; ++n) {
        const PiecewiseMonotoneMap& fn = run.maps.back();
        ThurstonStep step = thurston_step(fn);
        run.polys.push_back(step.p);
        run.h_norms.push_back(step.sup_h_minus_id);
        run.conjugacy_residuals.push_back(step.conjugacy_residual);
        if (n > 0) {
            double delta = 0.0;
            const auto& prev = run.polys[static_cast<size_t>(n) - 1];
            for (int i = 0; i <= 2048; ++i) {
                const double x = double(i) / 2048;
                delta = std::max(delta, std::abs(step.p.eval(x) - prev.eval(x)));
            }
            run.p_deltas.push_back(delta);
        }
        // phi_n = h_n^-1 . phi_{n-1} on the grid.
        for (double& v : phi) {
            const int j = fn.lap_of(v);
            v = clamp01(step.p.lap_inverse(j, fn.eval(v)));
        }
        run.maps.push_back(step.f_next);
        run.steps = n + 1;
        if (step.sup_h_minus_id < tol) {
            run.converged = true;
            break;
        }
    }

    phi.front() = 0.0;
    phi.back() = 1.0;
    for (size_t i = 0; i + 1 < phi.size(); ++i)
        if (phi[i + 1] <= phi[i]) phi[i + 1] = std::nextafter(phi[i], 2.0);
    run.phi = MonotoneTable(0.0, 1.0, std::move(phi));
    return run;
}

double sup_distance(const PiecewiseMonotoneMap& a, const PiecewiseMonotoneMap& b, int probes) {
    double sup = 0.0;
    for (int i = 0; i <= probes; ++i) {
        const double x = double(i) / probes;
        sup = std::max(sup, std::abs(a.eval(x) - b.eval(x)));
    }
    return sup;
}

double sup_distance(const PiecewiseMonotoneMap& a, const IntervalPolynomial& b, int probes) {
    double sup = 0.0;
    for (int i = 0; i <= probes; ++i) {
        const double x = double(i) / probes;
        sup = std::max(sup, std::abs(a.eval(x) - b.eval(x)));
    }
    return sup;
}

}  // namespace holodyn
