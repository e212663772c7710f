#include "holodyn/power_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace holodyn {

PowerSeries PowerSeries::identity(int truncation) {
    PowerSeries s = zero(truncation);
    if (truncation >= 1) s.at(1) = Complex{1.0};
    return s;
}

PowerSeries PowerSeries::truncated(int order) const {
    std::vector<Complex> c(static_cast<size_t>(order) + 1, Complex{0.0});
    for (int k = 0; k <= order && k <= truncation(); ++k)
        c[static_cast<size_t>(k)] = coeffs_[static_cast<size_t>(k)];
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator+(const PowerSeries& rhs) const {
    const int n = std::min(truncation(), rhs.truncation());
    PowerSeries out = zero(n);
    for (int k = 0; k <= n; ++k) out.at(k) = (*this)[k] + rhs[k];
    return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& rhs) const {
    const int n = std::min(truncation(), rhs.truncation());
    PowerSeries out = zero(n);
    for (int k = 0; k <= n; ++k) out.at(k) = (*this)[k] - rhs[k];
    return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& rhs) const {
    const int n = std::min(truncation(), rhs.truncation());
    PowerSeries out = zero(n);
    for (int i = 0; i <= n; ++i) {
        const Complex a = (*this)[i];
        if (a == Complex{0.0}) continue;
        for (int j = 0; i + j <= n; ++j) out.at(i + j) += a * rhs[j];
    }
    return out;
}

PowerSeries PowerSeries::operator*(Complex s) const {
    PowerSeries out = *this;
    for (Complex& c : out.coeffs_) c *= s;
    return out;
}

PowerSeries PowerSeries::derivative() const {
    if (truncation() == 0) return zero(0);
    PowerSeries out = zero(truncation() - 1);
    for (int k = 1; k <= truncation(); ++k) out.at(k - 1) = (*this)[k] * double(k);
    return out;
}

PowerSeries PowerSeries::antiderivative() const {
    PowerSeries out = zero(truncation() + 1);
    for (int k = 0; k <= truncation(); ++k) out.at(k + 1) = (*this)[k] / double(k + 1);
    return out;
}

PowerSeries PowerSeries::reciprocal() const {
    if ((*this)[0] == Complex{0.0})
        throw std::invalid_argument("series reciprocal needs nonzero constant term");
    PowerSeries out = zero(truncation());
    out.at(0) = 1.0 / (*this)[0];
    for (int k = 1; k <= truncation(); ++k) {
        Complex acc{0.0};
        for (int j = 1; j <= k; ++j) acc += (*this)[j] * out[k - j];
        out.at(k) = -acc / (*this)[0];
    }
    return out;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
    if (inner[0] != Complex{0.0})
        throw std::invalid_argument("series composition needs inner(0) = 0");
    const int n = std::min(truncation(), inner.truncation());
    // Horner over the outer coefficients.
    PowerSeries acc = zero(n);
    for (int k = truncation(); k >= 0; --k) {
        acc = acc * inner.truncated(n);
        acc.at(0) += (*this)[k];
    }
    return acc;
}

PowerSeries PowerSeries::scale_argument(Complex s) const {
    PowerSeries out = *this;
    Complex pw{1.0};
    for (int k = 1; k <= truncation(); ++k) {
        pw *= s;
        out.at(k) *= pw;
    }
    return out;
}

Complex PowerSeries::eval(Complex z) const {
    Complex acc = coeffs_.back();
    for (size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

double PowerSeries::coefficient_scale() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace holodyn
