#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "holodyn/polynomial.hpp"
#include "holodyn/roots.hpp"

namespace holodyn {

struct PoleAt : std::runtime_error {
    explicit PoleAt(Complex z);
    Complex where;
};

/// Rational map N/D on the Riemann sphere.  Construction rejects pairs
/// whose normalized resultant magnitude is below 1e-12 (shared root).
class RationalMap {
public:
    RationalMap(Polynomial numerator, Polynomial denominator);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    /// Finite-chart evaluation; throws PoleAt when the denominator
    /// vanishes within tolerance while the numerator does not.
    Complex eval(Complex z) const;
    std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

    /// Total map on the sphere (poles and the point at infinity resolved).
    ExtComplex eval_ext(const ExtComplex& z) const;

    /// Derivative of the map written in source/target charts, the factor a
    /// cycle multiplier picks up at z.  Charts are identity near finite
    /// points and w = 1/z at infinity.
    Complex chart_derivative(const ExtComplex& z) const;

    /// Conjugation by z -> 1/z; the result is the map in the chart at
    /// infinity.
    RationalMap conjugate_by_inversion() const;

    /// N'D - ND', zeros of which are the finite critical points.
    Polynomial wronskian() const;

    bool is_polynomial() const { return den_.degree() == 0; }

private:
    Polynomial num_, den_;
};

/// |resultant(N, D)| / (|N|^degD * |D|^degN); zero iff common root.
double normalized_resultant(const Polynomial& a, const Polynomial& b);

/// A dynamical map: polynomial or rational.
using DynMap = std::variant<Polynomial, RationalMap>;

int map_degree(const DynMap& f);
ExtComplex map_eval_ext(const DynMap& f, const ExtComplex& z);
Complex map_derivative(const DynMap& f, Complex z);
Complex map_chart_derivative(const DynMap& f, const ExtComplex& z);
RationalMap as_rational(const DynMap& f);

/// Critical points (with multiplicity) of a degree >= 2 map, including the
/// point at infinity when it is critical.  Multiplicities total 2 deg - 2.
struct CriticalPoint {
    ExtComplex point;
    int multiplicity = 1;
};
std::vector<CriticalPoint> critical_points(const DynMap& f);

/// Guaranteed escape radius for a polynomial: R = max(2, (1 + max|a_i|)/|a_d|).
double escape_radius(const Polynomial& p);

}  // namespace holodyn
