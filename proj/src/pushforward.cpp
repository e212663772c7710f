#include "holodyn/pushforward.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/roots.hpp"

namespace holodyn {

namespace {

Polynomial negate_argument(const Polynomial& p) {
    std::vector<Complex> c = p.coefficients();
    for (size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return Polynomial(std::move(c));
}

/// For an even polynomial P(w), the polynomial A with A(w^2) = P(w).
Polynomial even_part_as_poly(const Polynomial& p) {
    const auto& c = p.coefficients();
    const double scale = std::max(1.0, p.coefficient_scale());
    std::vector<Complex> even;
    for (size_t k = 0; k < c.size(); ++k) {
        if (k % 2 == 0) {
            even.push_back(c[k]);
        } else if (std::abs(c[k]) > 1e-10 * scale) {
            throw std::logic_error("pushforward: expected even polynomial");
        }
    }
    return Polynomial(std::move(even));
}

/// Cancel shared roots of numerator and denominator within tolerance.
RationalFunction reduce(Polynomial num, Polynomial den) {
    if (num.is_zero()) return {Polynomial{}, Polynomial::constant(Complex{1.0})};
    if (num.degree() == 0 || den.degree() == 0) return {std::move(num), std::move(den)};
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
    if (!cancelled) return {std::move(num), std::move(den)};
    Polynomial rn = Polynomial::from_roots(nroots, num.leading());
    Polynomial rd = Polynomial::from_roots(droots, den.leading());
    return {std::move(rn), std::move(rd)};
}

}  // namespace

PushforwardResult pushforward_qd(const RationalFunction& q) {
    const Polynomial& n = q.numerator;
    const Polynomial& d = q.denominator;
    if (d.is_zero()) throw std::invalid_argument("pushforward: zero denominator");

    if (d.degree() >= 1) {
        for (const auto& r : poly_roots(d))
            if (r.multiplicity >= 2)
                throw UnsupportedInput("pushforward requires at most simple poles");
    }

    // q(w) + q(-w) = [N(w)D(-w) + N(-w)D(w)] / [D(w)D(-w)], both parts even.
    Polynomial nm = negate_argument(n);
    Polynomial dm = negate_argument(d);
    Polynomial top = n * dm + nm * d;
    Polynomial bottom = d * dm;

    Polynomial a = even_part_as_poly(top);
    Polynomial b = even_part_as_poly(bottom);

    // (q(w)+q(-w)) / (4 w^2) = A(z) / (4 z B(z)).
    std::vector<Complex> shifted{Complex{0.0}};
    for (const Complex& c : b.coefficients()) shifted.push_back(4.0 * c);
    Polynomial den4zb(std::move(shifted));

    PushforwardResult out;
    out.value = reduce(std::move(a), std::move(den4zb));
    out.formal_only = d.degree() == 0;
    return out;
}

}  // namespace holodyn
