#pragma once

#include <vector>

#include "holodyn/complex_plane.hpp"

namespace holodyn {

/// Truncated complex power series: coefficients a_0..a_N, all arithmetic
/// exact through the truncation order.
class PowerSeries {
public:
    PowerSeries() : coeffs_{Complex{0.0}} {}
    explicit PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(Complex{0.0});
    }
    static PowerSeries zero(int truncation) {
        return PowerSeries(std::vector<Complex>(static_cast<size_t>(truncation) + 1));
    }
    /// The identity series z, truncated at the given order.
    static PowerSeries identity(int truncation);

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex operator[](int k) const {
        return (k >= 0 && k <= truncation()) ? coeffs_[static_cast<size_t>(k)] : Complex{0.0};
    }
    Complex& at(int k) { return coeffs_.at(static_cast<size_t>(k)); }
    const std::vector<Complex>& coefficients() const { return coeffs_; }

    PowerSeries truncated(int order) const;
    PowerSeries operator+(const PowerSeries& rhs) const;
    PowerSeries operator-(const PowerSeries& rhs) const;
    /// Cauchy product through min truncation order.
    PowerSeries operator*(const PowerSeries& rhs) const;
    PowerSeries operator*(Complex s) const;
    PowerSeries derivative() const;
    PowerSeries antiderivative() const;  // constant term 0, one order higher
    /// 1 / this; requires nonzero constant term.
    PowerSeries reciprocal() const;
    /// this(inner), requires inner(0) = 0.
    PowerSeries compose(const PowerSeries& inner) const;
    /// this(s z): coefficient k scaled by s^k.
    PowerSeries scale_argument(Complex s) const;

    Complex eval(Complex z) const;  // truncated Horner sum
    double coefficient_scale() const;

private:
    std::vector<Complex> coeffs_;
};

inline PowerSeries operator*(Complex s, const PowerSeries& f) { return f * s; }

}  // namespace holodyn
