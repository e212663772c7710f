#include "holodyn/entire.hpp"

#include <cmath>

#include "holodyn/parallel.hpp"

namespace holodyn {

namespace {

constexpr double kLogCap = 690.0;  // ln(1e300) ~ 690.77, with margin

Complex unit_or(Complex z, Complex fallback) {
    const double a = std::abs(z);
    if (!(a > 0.0) || !std::isfinite(a)) return fallback;
    return z / a;
}

Complex entire_derivative(const EntireFamily& fam, Complex z) {
    switch (fam.kind) {
        case EntireKind::Exp: return fam.lambda * std::exp(z);
        case EntireKind::Sin: return fam.lambda * std::cos(z);
        case EntireKind::Cos: return -fam.lambda * std::sin(z);
        case EntireKind::ExpSin: return fam.lambda * std::exp(z) * (std::sin(z) + std::cos(z));
        case EntireKind::ExpCos: return fam.lambda * std::exp(z) * (std::cos(z) - std::sin(z));
    }
    throw std::logic_error("unknown entire kind");
}

}  // namespace

const char* entire_kind_name(EntireKind k) {
    switch (k) {
        case EntireKind::Exp: return "exp";
        case EntireKind::Sin: return "sin";
        case EntireKind::Cos: return "cos";
        case EntireKind::ExpSin: return "expsin";
        case EntireKind::ExpCos: return "expcos";
    }
    return "?";
}

std::optional<EntireKind> entire_kind_from_name(const std::string& name) {
    if (name == "exp") return EntireKind::Exp;
    if (name == "sin") return EntireKind::Sin;
    if (name == "cos") return EntireKind::Cos;
    if (name == "expsin") return EntireKind::ExpSin;
    if (name == "expcos") return EntireKind::ExpCos;
    return std::nullopt;
}

std::vector<Complex> EntireFamily::singular_values() const {
    switch (kind) {
        case EntireKind::Exp:
        case EntireKind::ExpSin:
        case EntireKind::ExpCos:
            return {Complex{0.0}};  // asymptotic value
        case EntireKind::Sin:
        case EntireKind::Cos:
            return {lambda, -lambda};  // critical values
    }
    throw std::logic_error("unknown entire kind");
}

double exp_escape_threshold(const EntireFamily& family) {
    return kLogCap - std::log(std::abs(family.lambda));
}

EntireStep entire_step(const EntireFamily& fam, Complex z) {
    const double loglam = std::log(std::abs(fam.lambda));
    const Complex lam_dir = unit_or(fam.lambda, Complex{1.0});
    EntireStep out;
    switch (fam.kind) {
        case EntireKind::Exp: {
            if (z.real() + loglam > kLogCap) {
                out.overflow = true;
                out.direction = unit_or(lam_dir * std::polar(1.0, z.imag()), lam_dir);
                return out;
            }
            out.value = fam.lambda * std::exp(z);
            break;
        }
        case EntireKind::Sin:
        case EntireKind::Cos: {
            const double ay = std::abs(z.imag());
            if (ay + loglam > kLogCap) {
                out.overflow = true;
                const bool upper = z.imag() > 0.0;
                const Complex phase = fam.kind == EntireKind::Sin
                                          ? (upper ? Complex{0.0, 1.0} * std::polar(1.0, -z.real())
                                                   : Complex{0.0, -1.0} * std::polar(1.0, z.real()))
                                          : (upper ? std::polar(1.0, -z.real())
                                                   : std::polar(1.0, z.real()));
                out.direction = unit_or(lam_dir * phase, lam_dir);
                return out;
            }
            out.value = fam.kind == EntireKind::Sin ? fam.lambda * std::sin(z)
                                                    : fam.lambda * std::cos(z);
            break;
        }
        case EntireKind::ExpSin:
        case EntireKind::ExpCos: {
            if (z.real() + std::abs(z.imag()) + loglam > kLogCap - 2.0) {
                out.overflow = true;
                out.direction = lam_dir;
                return out;
            }
            const Complex trig = fam.kind == EntireKind::ExpSin ? std::sin(z) : std::cos(z);
            out.value = fam.lambda * std::exp(z) * trig;
            break;
        }
    }
    if (!isfinite(out.value) || std::abs(out.value) > 1e300) {
        out.overflow = true;
        out.direction = unit_or(out.value, lam_dir);
        out.value = Complex{0.0};
    }
    return out;
}

namespace {

bool exp_type(EntireKind k) {
    return k == EntireKind::Exp || k == EntireKind::ExpSin || k == EntireKind::ExpCos;
}

/// Newton polish of an entire-map cycle; returns the multiplier with the
/// refined start, or nullopt on failure.
std::optional<std::pair<Complex, Complex>> polish_entire_cycle(const EntireFamily& fam, Complex z,
                                                               int period) {
    for (int iter = 0; iter < 80; ++iter) {
        Complex value = z, deriv{1.0};
        for (int k = 0; k < period; ++k) {
            const Complex d = entire_derivative(fam, value);
            const EntireStep s = entire_step(fam, value);
            if (s.overflow || !isfinite(d)) return std::nullopt;
            deriv *= d;
            value = s.value;
        }
        const Complex g = value - z;
        if (std::abs(g) < 1e-12 * (1.0 + std::abs(z))) {
            Complex mult{1.0};
            Complex w = z;
            for (int k = 0; k < period; ++k) {
                mult *= entire_derivative(fam, w);
                w = entire_step(fam, w).value;
            }
            return std::make_pair(z, mult);
        }
        const Complex dg = deriv - 1.0;
        if (std::abs(dg) < 1e-14) return std::nullopt;
        z -= g / dg;
        if (!isfinite(z) || std::abs(z) > 1e12) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::vector<SingularOrbitReport> singular_orbit_classify(const EntireFamily& fam, int max_iter,
                                                         double tolerance) {
    if (max_iter < 1) throw std::invalid_argument("singular_orbit_classify: max_iter must be >= 1");
    std::vector<SingularOrbitReport> reports;
    const double threshold = exp_escape_threshold(fam);

    for (Complex v : fam.singular_values()) {
        SingularOrbitReport rep;
        rep.singular_value = v;

        std::vector<Complex> trace{v};
        size_t anchor = 0, next_anchor = 1;
        for (int i = 1; i <= max_iter; ++i) {
            const EntireStep s = entire_step(fam, trace.back());
            if (s.overflow || (exp_type(fam.kind) && s.value.real() > threshold)) {
                rep.fate = SingularFate::Escaping;
                rep.iterations_used = i;
                break;
            }
            trace.push_back(s.value);
            const size_t cur = trace.size() - 1;
            if (cur == next_anchor) {
                anchor = cur;
                next_anchor *= 2;
                continue;
            }
            if (std::abs(trace[cur] - trace[anchor]) <
                tolerance * (1.0 + std::abs(trace[anchor]))) {
                int period = static_cast<int>(cur - anchor);
                for (int q = 1; q < period; ++q)
                    if (period % q == 0 &&
                        std::abs(trace[cur] - trace[cur - static_cast<size_t>(q)]) <
                            tolerance * 10.0 * (1.0 + std::abs(trace[cur]))) {
                        period = q;
                        break;
                    }
                rep.iterations_used = i;
                auto polished = polish_entire_cycle(fam, trace[cur], period);
                if (polished) {
                    const auto [start, mult] = *polished;
                    const double m = std::abs(mult);
                    if (std::abs(m - 1.0) <= 1e-6) {
                        rep.fate = SingularFate::Undecided;
                        rep.parabolic_suspect = true;
                    } else if (m < 1.0) {
                        rep.fate = SingularFate::Attracted;
                        CycleRecord cyc;
                        cyc.period = period;
                        cyc.multiplier = mult;
                        cyc.kind = m < 1e-8 ? CycleKind::Superattracting : CycleKind::Attracting;
                        Complex w = start;
                        for (int k = 0; k < period; ++k) {
                            cyc.points.push_back(ExtComplex{w});
                            w = entire_step(fam, w).value;
                        }
                        rep.cycle = cyc;
                    }
                }
                break;
            }
        }
        if (rep.iterations_used == 0) rep.iterations_used = max_iter;
        reports.push_back(std::move(rep));
    }
    return reports;
}

SingularFate exp_real_slice_fate(double lambda, int max_iter) {
    EntireFamily fam{EntireKind::Exp, Complex{lambda, 0.0}};
    return singular_orbit_classify(fam, max_iter).front().fate;
}

ClassifiedGrid render_exp_dynamic(const EntireFamily& fam, const Window& window, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("render_exp_dynamic: max_iter must be >= 1");
    const auto reports = singular_orbit_classify(fam, std::max(2000, max_iter));
    std::vector<CycleRecord> cycles;
    for (const auto& r : reports)
        if (r.cycle) cycles.push_back(*r.cycle);
    const double threshold = exp_escape_threshold(fam);

    ClassifiedGrid grid(window);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            Complex z = window.point_at(i, j);
            Cell& cell = grid.at(i, j);
            cell.cls = kClassUndecided;
            cell.value = double(max_iter);
            for (int n = 0; n < max_iter; ++n) {
                bool done = false;
                for (size_t k = 0; k < cycles.size(); ++k) {
                    for (const auto& pt : cycles[k].points) {
                        if (pt.finite() &&
                            std::abs(z - pt.value) < 1e-6 * (1.0 + std::abs(pt.value))) {
                            cell.cls = 2 + static_cast<std::int32_t>(k);
                            cell.value = double(n);
                            done = true;
                            break;
                        }
                    }
                    if (done) break;
                }
                if (done) break;
                const EntireStep s = entire_step(fam, z);
                if (s.overflow || (exp_type(fam.kind) && s.value.real() > threshold)) {
                    cell.cls = kClassEscaped;
                    cell.value = double(n + 1);
                    cell.aux = n + 1;
                    break;
                }
                z = s.value;
            }
        }
    });
    return grid;
}

ClassifiedGrid render_exp_param(EntireKind kind, const Window& window, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("render_exp_param: max_iter must be >= 1");
    ClassifiedGrid grid(window);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            const EntireFamily fam{kind, window.point_at(i, j)};
            Cell& cell = grid.at(i, j);
            if (std::abs(fam.lambda) == 0.0) {
                cell.cls = kClassUndecided;
                continue;
            }
            const auto reports = singular_orbit_classify(fam, max_iter);
            const auto& r = reports.front();
            if (r.fate == SingularFate::Escaping) {
                cell.cls = kClassEscaped;
                cell.value = double(r.iterations_used);
                cell.aux = r.iterations_used;
            } else if (r.fate == SingularFate::Attracted) {
                cell.cls = 2 + std::min(200, r.cycle ? r.cycle->period : 0);
                cell.value = double(r.cycle ? r.cycle->period : 0);
            } else {
                cell.cls = kClassUndecided;
                cell.value = double(max_iter);
            }
        }
    });
    return grid;
}

ClassifiedGrid strip_invariant_set(double lambda, const Window& window, int N) {
    if (!(lambda > 1.0 / std::numbers::e))
        throw std::invalid_argument("strip_invariant_set: need real lambda > 1/e");
    const double top = window.center.imag() + window.height / 2.0;
    const double bottom = window.center.imag() - window.height / 2.0;
    if (bottom < -1e-9 || top > std::numbers::pi + 1e-9)
        throw std::invalid_argument("strip_invariant_set: window must lie in 0 <= Im z <= pi");

    const EntireFamily fam{EntireKind::Exp, Complex{lambda, 0.0}};
    ClassifiedGrid grid(window);
    parallel_for(window.rows, [&](int i) {
        for (int j = 0; j < window.columns; ++j) {
            Complex z = window.point_at(i, j);
            Cell& cell = grid.at(i, j);
            cell.cls = 1;  // in-set until shown otherwise
            cell.value = double(N);
            for (int n = 0; n < N; ++n) {
                if (z.imag() < -1e-12 || z.imag() > std::numbers::pi + 1e-12) {
                    cell.cls = 0;
                    cell.value = double(n);
                    break;
                }
                const EntireStep s = entire_step(fam, z);
                if (s.overflow) {
                    cell.cls = kClassFlagged;  // undecided-in: escaped with in-strip history
                    cell.value = double(n + 1);
                    break;
                }
                z = s.value;
            }
            if (cell.cls == 1 &&
                (z.imag() < -1e-12 || z.imag() > std::numbers::pi + 1e-12)) {
                cell.cls = 0;
                cell.value = double(N);
            }
        }
    });
    return grid;
}

}  // namespace holodyn
