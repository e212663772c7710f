#include "holodyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace holodyn {

namespace {

// Strip roots at the origin (zero trailing coefficients) before iterating.
Polynomial deflate_origin(const Polynomial& p, int& zero_roots) {
    const auto& c = p.coefficients();
    size_t k = 0;
    while (k + 1 < c.size() && c[k] == Complex{0.0}) ++k;
    zero_roots = static_cast<int>(k);
    if (k == 0) return p;
    return Polynomial(std::vector<Complex>(c.begin() + static_cast<long>(k), c.end()));
}

}  // namespace

double root_residual_scale(const Polynomial& p, Complex root) {
    return p.coefficient_scale() * std::pow(std::max(1.0, std::abs(root)), p.degree());
}

std::vector<RootWithMultiplicity> poly_roots(const Polynomial& p, RootOptions opts) {
    if (p.degree() < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");

    int zero_roots = 0;
    const Polynomial q = deflate_origin(p, zero_roots);
    const int n = q.degree();
    const bool real_input = p.is_real(1e-14);

    std::vector<Complex> z;
    if (n > 0) {
        // Initial guesses on a circle enclosing all roots; the fixed angular
        // offset avoids symmetric stalls on z^n - a inputs.
        double radius = 0.0;
        for (int k = 0; k < n; ++k)
            radius = std::max(radius, std::abs(q.coefficient(k) / q.leading()));
        radius = 1.0 + radius;
        z.resize(static_cast<size_t>(n));
        const double offset = 0.3785;
        for (int k = 0; k < n; ++k) {
            double a = 2.0 * std::numbers::pi * k / n + offset;
            z[static_cast<size_t>(k)] = radius * Complex{std::cos(a), std::sin(a)};
        }

        bool converged = false;
        for (int iter = 0; iter < opts.max_iterations && !converged; ++iter) {
            double max_step = 0.0;
            for (int i = 0; i < n; ++i) {
                auto [val, der] = q.eval_with_derivative(z[static_cast<size_t>(i)]);
                if (val == Complex{0.0}) continue;
                Complex newton = (der == Complex{0.0}) ? Complex{0.0} : val / der;
                Complex sum{0.0};
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    Complex d = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
                    if (std::abs(d) < 1e-300) d = Complex{1e-300, 0.0};
                    sum += 1.0 / d;
                }
                Complex denom = 1.0 - newton * sum;
                Complex step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
                z[static_cast<size_t>(i)] -= step;
                max_step = std::max(max_step,
                                    std::abs(step) / (1.0 + std::abs(z[static_cast<size_t>(i)])));
            }
            converged = max_step < 1e-15;
        }
        if (!converged) {
            // Accept anyway if every residual already meets the contract.
            for (const Complex& r : z)
                if (std::abs(q.eval(r)) > 1e-11 * root_residual_scale(q, r))
                    throw NoConvergence(opts.max_iterations);
        }

        if (real_input) {
            // Snap near-real roots and enforce conjugate pairing.
            for (Complex& r : z)
                if (std::abs(r.imag()) <= opts.realness_tol * (1.0 + std::abs(r)))
                    r = Complex{r.real(), 0.0};
            std::vector<bool> used(z.size(), false);
            for (size_t i = 0; i < z.size(); ++i) {
                if (used[i] || z[i].imag() == 0.0) continue;
                size_t best = i;
                double best_d = 1e300;
                for (size_t j = 0; j < z.size(); ++j) {
                    if (j == i || used[j]) continue;
                    double d = std::abs(z[j] - std::conj(z[i]));
                    if (d < best_d) { best_d = d; best = j; }
                }
                if (best != i && best_d <= 1e-6 * (1.0 + std::abs(z[i]))) {
                    Complex mean = 0.5 * (z[i] + std::conj(z[best]));
                    z[i] = mean;
                    z[best] = std::conj(mean);
                    used[i] = used[best] = true;
                }
            }
        }
    }

    // Cluster coincident iterates into multiple roots.
    std::vector<RootWithMultiplicity> out;
    std::vector<bool> taken(z.size(), false);
    for (size_t i = 0; i < z.size(); ++i) {
        if (taken[i]) continue;
        Complex sum = z[i];
        int count = 1;
        taken[i] = true;
        for (size_t j = i + 1; j < z.size(); ++j) {
            if (taken[j]) continue;
            if (std::abs(z[j] - z[i]) <= opts.cluster_tol * (1.0 + std::abs(z[i]))) {
                sum += z[j];
                ++count;
                taken[j] = true;
            }
        }
        Complex center = sum / double(count);
        if (real_input && std::abs(center.imag()) <= opts.realness_tol * (1.0 + std::abs(center)))
            center = Complex{center.real(), 0.0};
        out.push_back({center, count});
    }
    if (zero_roots > 0) out.push_back({Complex{0.0}, zero_roots});

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<Complex> poly_roots_flat(const Polynomial& p, RootOptions opts) {
    std::vector<Complex> flat;
    for (const auto& r : poly_roots(p, opts))
        flat.insert(flat.end(), static_cast<size_t>(r.multiplicity), r.value);
    return flat;
}

}  // namespace holodyn
