#pragma once

#include <stdexcept>

#include "holodyn/polynomial.hpp"

namespace holodyn {

struct UnsupportedInput : std::runtime_error {
    explicit UnsupportedInput(const std::string& what) : std::runtime_error(what) {}
};

/// Rational function (quotient of polynomials, zero numerator allowed, so
/// weaker invariants than RationalMap).
struct RationalFunction {
    Polynomial numerator;
    Polynomial denominator;

    Complex eval(Complex z) const {
        return numerator.eval(z) / denominator.eval(z);
    }
    bool is_zero() const { return numerator.is_zero(); }
};

struct PushforwardResult {
    RationalFunction value;
    /// Set when the input had no poles at all; the formula still applies
    /// but the simple-pole contract did not.
    bool formal_only = false;
};

/// Pushforward of a quadratic-differential density q under s(z) = z^2:
///   (s_* q)(z) = sum over s(w) = z of q(w) / s'(w)^2
///             = (q(w) + q(-w)) / (4 w^2),  w^2 = z,
/// reduced to a rational function of z.  Requires q to have at most simple
/// poles (throws UnsupportedInput otherwise).
PushforwardResult pushforward_qd(const RationalFunction& q);

}  // namespace holodyn
