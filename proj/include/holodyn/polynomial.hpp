#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "holodyn/complex_plane.hpp"

namespace holodyn {

/// Complex polynomial, coefficients stored in ascending degree order.
/// The leading coefficient is nonzero unless the polynomial is constant.
class Polynomial {
public:
    Polynomial() : coeffs_{Complex{0.0}} {}
    explicit Polynomial(std::vector<Complex> coeffs);
    Polynomial(std::initializer_list<Complex> coeffs)
        : Polynomial(std::vector<Complex>(coeffs)) {}

    static Polynomial constant(Complex c) { return Polynomial{{c}}; }
    static Polynomial identity() { return Polynomial{{Complex{0.0}, Complex{1.0}}}; }
    /// Monic product of (z - r) over the given roots, times `leading`.
    static Polynomial from_roots(std::span<const Complex> roots,
                                 Complex leading = Complex{1.0});

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coefficients() const { return coeffs_; }
    Complex coefficient(int k) const {
        return (k >= 0 && k <= degree()) ? coeffs_[static_cast<size_t>(k)] : Complex{0.0};
    }
    Complex leading() const { return coeffs_.back(); }
    bool is_zero() const { return degree() == 0 && coeffs_[0] == Complex{0.0}; }
    /// True when every coefficient has |Im| <= tol * coefficient scale.
    bool is_real(double tol = 0.0) const;

    Complex eval(Complex z) const;
    double eval_real(double x) const;
    /// Simultaneous Horner recurrence for value and first derivative.
    std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

    Polynomial derivative() const;
    /// Antiderivative with constant term zero.
    Polynomial antiderivative() const;
    /// Coefficients reversed: z^deg * p(1/z).
    Polynomial reversed() const;
    /// Coefficients conjugated (for real-axis symmetry arguments).
    Polynomial conjugated() const;
    Polynomial compose(const Polynomial& inner) const;

    double coefficient_scale() const;  // max |a_k|

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(Complex s) const;
    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

    std::string str() const;

private:
    std::vector<Complex> coeffs_;
};

inline Polynomial operator*(Complex s, const Polynomial& p) { return p * s; }

/// Plain-text form: one "re,im" line per coefficient, ascending degree.
std::string to_text(const Polynomial& p);
Polynomial polynomial_from_text(const std::string& text);

}  // namespace holodyn
