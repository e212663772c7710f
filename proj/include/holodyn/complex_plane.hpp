#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace holodyn {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex value or the point at
/// infinity.  Infinity is an explicit flag so that maps with critical
/// points or cycles through infinity can be computed in the w = 1/z chart
/// instead of being special-cased away.
struct ExtComplex {
    Complex value{0.0, 0.0};
    bool at_infinity = false;

    ExtComplex() = default;
    ExtComplex(Complex v) : value(v) {}  // NOLINT: implicit by design
    ExtComplex(double re, double im) : value(re, im) {}

    static ExtComplex infinity() { return ExtComplex{Complex{}, true}; }

    bool finite() const { return !at_infinity; }

private:
    ExtComplex(Complex v, bool inf) : value(v), at_infinity(inf) {}
};

inline bool isfinite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Chordal (spherical) distance, range [0, 2].
inline double chordal(const ExtComplex& a, const ExtComplex& b) {
    const auto lift = [](const ExtComplex& p) {
        return std::sqrt(1.0 + std::norm(p.value));
    };
    if (a.at_infinity && b.at_infinity) return 0.0;
    if (a.at_infinity) return 2.0 / lift(b);
    if (b.at_infinity) return 2.0 / lift(a);
    return 2.0 * std::abs(a.value - b.value) / (lift(a) * lift(b));
}

inline ExtComplex invert(const ExtComplex& z) {
    if (z.at_infinity) return ExtComplex{0.0, 0.0};
    if (std::abs(z.value) == 0.0) return ExtComplex::infinity();
    return ExtComplex{1.0 / z.value};
}

std::ostream& operator<<(std::ostream& os, const ExtComplex& z);

}  // namespace holodyn
