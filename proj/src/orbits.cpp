#include "holodyn/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "holodyn/parameter.hpp"

namespace holodyn {

namespace {

constexpr double kSuperattractingTol = 1e-8;
constexpr double kIndifferentTol = 1e-8;

ExtComplex iterate_n(const DynMap& f, ExtComplex z, int n) {
    for (int k = 0; k < n; ++k) z = map_eval_ext(f, z);
    return z;
}

std::vector<int> proper_divisors(int p) {
    std::vector<int> d;
    for (int q = 1; q < p; ++q)
        if (p % q == 0) d.push_back(q);
    return d;
}

/// Continued-fraction rationality probe for a number in [0, 1).
std::optional<RationalAngle> as_rational(double theta, double tol = 1e-9,
                                         long long max_den = 1'000'000) {
    theta -= std::floor(theta);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = theta;
    for (int i = 0; i < 48; ++i) {
        double a = std::floor(x);
        long long ai = static_cast<long long>(a);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) return std::nullopt;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > 0 && std::abs(theta - double(p1) / double(q1)) < tol) {
            long long g = std::gcd(p1 < 0 ? -p1 : p1, q1);
            if (g == 0) g = 1;
            return RationalAngle{p1 / g, q1 / g};
        }
        double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace

const char* cycle_kind_name(CycleKind k) {
    switch (k) {
        case CycleKind::Superattracting: return "superattracting";
        case CycleKind::Attracting: return "attracting";
        case CycleKind::Repelling: return "repelling";
        case CycleKind::RationallyIndifferent: return "rationally-indifferent";
        case CycleKind::IrrationallyIndifferent: return "irrationally-indifferent";
    }
    return "?";
}

OrbitRecord orbit(const DynMap& f, const ExtComplex& z0, int n, double escape_radius) {
    if (n < 1) throw std::invalid_argument("orbit: n must be >= 1");
    OrbitRecord rec;
    rec.start = z0;
    rec.points.push_back(z0);
    ExtComplex z = z0;
    for (int k = 0; k < n; ++k) {
        z = map_eval_ext(f, z);
        rec.points.push_back(z);
        const bool out = z.at_infinity || std::abs(z.value) > escape_radius;
        if (out && std::holds_alternative<Polynomial>(f)) {
            rec.escaped = true;
            rec.escape_index = k + 1;
            break;
        }
    }
    return rec;
}

CycleRecord make_cycle_record(const DynMap& f, const std::vector<ExtComplex>& points,
                              double residual_tol) {
    if (points.empty()) throw std::invalid_argument("empty cycle");
    const int p = static_cast<int>(points.size());
    // Re-walk the cycle so stored points are forward-consistent.
    std::vector<ExtComplex> cyc{points[0]};
    for (int k = 1; k < p; ++k) cyc.push_back(map_eval_ext(f, cyc.back()));
    const double residual = chordal(map_eval_ext(f, cyc.back()), cyc[0]);
    if (residual > residual_tol)
        throw std::invalid_argument("make_cycle_record: points do not close up");

    Complex multiplier{1.0};
    for (const auto& z : cyc) multiplier *= map_chart_derivative(f, z);

    CycleRecord rec;
    rec.period = p;
    rec.points = cyc;
    rec.multiplier = multiplier;
    const double m = std::abs(multiplier);
    if (m < kSuperattractingTol) {
        rec.kind = CycleKind::Superattracting;
    } else if (std::abs(m - 1.0) <= kIndifferentTol) {
        double theta = std::arg(multiplier) / (2.0 * std::numbers::pi);
        rec.kind = as_rational(theta) ? CycleKind::RationallyIndifferent
                                      : CycleKind::IrrationallyIndifferent;
    } else if (m < 1.0) {
        rec.kind = CycleKind::Attracting;
    } else {
        rec.kind = CycleKind::Repelling;
    }
    return rec;
}

CycleRecord find_cycle(const DynMap& f, int period, const ExtComplex& seed, double tolerance) {
    if (period < 1) throw std::invalid_argument("find_cycle: period must be >= 1");

    if (seed.at_infinity || (seed.finite() && std::abs(seed.value) > 1e8)) {
        // Solve in the w = 1/z chart and pull the cycle back.
        RationalMap g = as_rational(f).conjugate_by_inversion();
        Complex w0 = seed.at_infinity ? Complex{0.0} : 1.0 / seed.value;
        CycleRecord chart = find_cycle(DynMap{g}, period, ExtComplex{w0}, tolerance);
        std::vector<ExtComplex> points;
        for (const auto& w : chart.points) points.push_back(invert(w));
        return make_cycle_record(f, points, std::max(tolerance * 10.0, 1e-9));
    }

    Complex z = seed.value;
    bool ok = false;
    for (int iter = 0; iter < 120; ++iter) {
        Complex value = z;
        Complex deriv{1.0};
        bool fault = false;
        for (int k = 0; k < period; ++k) {
            try {
                Complex d = map_derivative(f, value);
                ExtComplex next = map_eval_ext(f, ExtComplex{value});
                if (next.at_infinity || !isfinite(next.value) || !isfinite(d)) {
                    fault = true;
                    break;
                }
                deriv *= d;
                value = next.value;
            } catch (const PoleAt&) {
                fault = true;
                break;
            }
        }
        if (fault) throw Diverged("cycle Newton passed through a pole");
        Complex g = value - z;
        if (std::abs(g) < tolerance) { ok = true; break; }
        Complex dg = deriv - 1.0;
        if (std::abs(dg) < 1e-300) throw Diverged("cycle Newton: singular derivative");
        Complex step = g / dg;
        z -= step;
        if (!isfinite(z) || std::abs(z) > 1e12) throw Diverged("cycle Newton diverged");
    }
    if (!ok) throw Diverged("cycle Newton did not converge");

    for (int q : proper_divisors(period)) {
        ExtComplex back = iterate_n(f, ExtComplex{z}, q);
        if (chordal(back, ExtComplex{z}) < std::max(tolerance * 100.0, 1e-10))
            throw CollapsedToLowerPeriod(q);
    }

    std::vector<ExtComplex> points{ExtComplex{z}};
    for (int k = 1; k < period; ++k) points.push_back(map_eval_ext(f, points.back()));
    return make_cycle_record(f, points, std::max(tolerance * 100.0, 1e-9));
}

namespace {

struct TailDetection {
    int period = 0;
    int preperiod = 0;
    int at_index = 0;
    bool escaped = false;
};

/// Brent-style probing: compare against anchors at power-of-two indices.
/// With a positive escape radius (polynomial case) the walk stops as soon
/// as an iterate leaves that disk.
std::optional<TailDetection> detect_cycle_tail(const DynMap& f, const ExtComplex& start,
                                               int max_iter, double tol, double escape_r,
                                               std::vector<ExtComplex>& trace) {
    trace.clear();
    trace.push_back(start);
    size_t anchor = 0;
    size_t next_anchor = 1;
    for (int i = 1; i <= max_iter; ++i) {
        trace.push_back(map_eval_ext(f, trace.back()));
        const size_t cur = trace.size() - 1;
        const ExtComplex& z = trace[cur];
        if (escape_r > 0.0 && (z.at_infinity || std::abs(z.value) > escape_r))
            return TailDetection{0, 0, static_cast<int>(cur), true};
        if (cur == next_anchor) {
            anchor = cur;
            next_anchor *= 2;
            continue;
        }
        if (chordal(trace[cur], trace[anchor]) < tol) {
            int candidate = static_cast<int>(cur - anchor);
            // Exact period: smallest divisor still within tolerance.
            int exact = candidate;
            for (int q : proper_divisors(candidate)) {
                if (chordal(trace[cur], trace[cur - static_cast<size_t>(q)]) < tol * 10.0) {
                    exact = q;
                    break;
                }
            }
            // Preperiod: first index already within tolerance of its shift.
            int pre = static_cast<int>(cur);
            for (size_t l = 0; l + static_cast<size_t>(exact) <= cur; ++l) {
                if (chordal(trace[l + static_cast<size_t>(exact)], trace[l]) < tol * 10.0) {
                    pre = static_cast<int>(l);
                    break;
                }
            }
            return TailDetection{exact, pre, static_cast<int>(cur), false};
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<CriticalOrbitReport> classify_critical_orbits(const DynMap& f, int max_iter,
                                                          double tolerance) {
    if (map_degree(f) < 2)
        throw std::invalid_argument("classify_critical_orbits: degree must be >= 2");
    const bool poly = std::holds_alternative<Polynomial>(f);
    const double radius = poly ? escape_radius(std::get<Polynomial>(f)) : 0.0;

    std::vector<CriticalOrbitReport> reports;
    for (const auto& cp : critical_points(f)) {
        CriticalOrbitReport rep;
        rep.critical_point = cp.point;

        if (poly && cp.point.at_infinity) {
            // Infinity is a superattracting fixed point of every polynomial.
            rep.fate = CriticalFate::Periodic;
            rep.period = 1;
            rep.cycle = make_cycle_record(f, {ExtComplex::infinity()});
            reports.push_back(std::move(rep));
            continue;
        }

        std::vector<ExtComplex> trace;
        auto det = detect_cycle_tail(f, cp.point, max_iter, tolerance, radius, trace);
        rep.iterations_used = det ? det->at_index : max_iter;
        if (det && det->escaped) {
            rep.fate = CriticalFate::Escaping;
        } else if (det) {
            rep.period = det->period;
            rep.preperiod = det->preperiod;
            rep.fate = det->preperiod == 0 ? CriticalFate::Periodic : CriticalFate::Preperiodic;
            try {
                rep.cycle =
                    find_cycle(f, det->period, trace[static_cast<size_t>(det->at_index)], 1e-13);
            } catch (const CollapsedToLowerPeriod& c) {
                rep.period = c.exact_period;
                rep.cycle = find_cycle(f, c.exact_period,
                                       trace[static_cast<size_t>(det->at_index)], 1e-13);
            } catch (const Diverged&) {
                // Keep the tolerance-level detection without Newton polish.
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<CycleRecord> attracting_cycles(const DynMap& f, int max_iter, double tolerance) {
    std::vector<CycleRecord> cycles;
    for (const auto& rep : classify_critical_orbits(f, max_iter, tolerance)) {
        if (!rep.cycle) continue;
        const auto& c = *rep.cycle;
        if (c.kind != CycleKind::Superattracting && c.kind != CycleKind::Attracting) continue;
        bool duplicate = false;
        for (const auto& known : cycles) {
            if (known.period != c.period) continue;
            for (const auto& p : c.points)
                for (const auto& q : known.points)
                    if (chordal(p, q) < 1e-6) duplicate = true;
        }
        if (!duplicate) cycles.push_back(c);
    }
    return cycles;
}

double closest_approach_to_repelling_fixed_points(const DynMap& f, int iterates) {
    RationalMap r = as_rational(f);
    Polynomial fixed_eq = r.numerator() - Polynomial::identity() * r.denominator();
    std::vector<ExtComplex> repelling;
    for (const auto& root : poly_roots(fixed_eq)) {
        Complex d = map_derivative(f, root.value);
        if (std::abs(d) > 1.0 + 1e-9) repelling.push_back(ExtComplex{root.value});
    }
    if (repelling.empty()) return std::numeric_limits<double>::infinity();

    double best = std::numeric_limits<double>::infinity();
    for (const auto& cp : critical_points(f)) {
        if (cp.point.at_infinity) continue;
        ExtComplex z = cp.point;
        for (int k = 0; k < iterates; ++k) {
            z = map_eval_ext(f, z);
            for (const auto& fp : repelling) best = std::min(best, chordal(z, fp));
        }
    }
    return best;
}

RotationNumber rotation_number_at(const DynMap& f, Complex fixed_point,
                                  const std::vector<RationalAngle>& landing_rays) {
    const Complex lambda = map_derivative(f, fixed_point);
    const double m = std::abs(lambda);
    RotationNumber out;

    if (std::abs(m - 1.0) <= 1e-6) {
        double theta = std::arg(lambda) / (2.0 * std::numbers::pi);
        theta -= std::floor(theta);
        out.estimate = theta;
        if (auto r = as_rational(theta)) {
            out.rational = true;
            out.ratio = *r;
        }
        return out;
    }
    if (m <= 1.0) throw std::invalid_argument("rotation number needs a repelling or indifferent point");

    if (landing_rays.empty()) throw NeedsRays();
    const int d = map_degree(f);
    std::vector<RationalAngle> sorted = landing_rays;
    std::sort(sorted.begin(), sorted.end(),
              [](const RationalAngle& a, const RationalAngle& b) {
                  return a.num * b.den < b.num * a.den;
              });
    const long long q = static_cast<long long>(sorted.size());
    // Image of the first angle under t -> d t (mod 1).
    const RationalAngle& a0 = sorted[0];
    long long in = (static_cast<long long>(d) * a0.num) % a0.den;
    long long shift = -1;
    for (long long j = 0; j < q; ++j) {
        if (sorted[static_cast<size_t>(j)].den == a0.den &&
            sorted[static_cast<size_t>(j)].num == in) {
            shift = j;
            break;
        }
        // Allow different reduced denominators: compare as cross products.
        if (sorted[static_cast<size_t>(j)].num * a0.den == in * sorted[static_cast<size_t>(j)].den) {
            shift = j;
            break;
        }
    }
    if (shift < 0) throw std::invalid_argument("landing rays are not forward invariant");
    long long g = std::gcd(shift, q);
    if (g == 0) g = 1;
    out.rational = true;
    out.ratio = RationalAngle{shift / g, q / g};
    out.estimate = double(shift) / double(q);
    return out;
}

}  // namespace holodyn
