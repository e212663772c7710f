#include "holodyn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace holodyn {

std::ostream& operator<<(std::ostream& os, const ExtComplex& z) {
    if (z.at_infinity) return os << "inf";
    return os << z.value.real() << (z.value.imag() < 0 ? "" : "+") << z.value.imag() << "i";
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{0.0});
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0}) coeffs_.pop_back();
    for (const Complex& c : coeffs_)
        if (!isfinite(c)) throw std::invalid_argument("polynomial coefficient not finite");
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Complex leading) {
    // Ascending-order convolution by (x - r) per root.
    std::vector<Complex> c{leading};
    for (Complex r : roots) {
        c.push_back(Complex{0.0});
        for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
}

bool Polynomial::is_real(double tol) const {
    const double bound = tol * std::max(1.0, coefficient_scale());
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [bound](Complex c) { return std::abs(c.imag()) <= bound; });
}

Complex Polynomial::eval(Complex z) const {
    Complex acc = coeffs_.back();
    for (size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

double Polynomial::eval_real(double x) const {
    double acc = coeffs_.back().real();
    for (size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k].real();
    return acc;
}

std::pair<Complex, Complex> Polynomial::eval_with_derivative(Complex z) const {
    Complex p = coeffs_.back();
    Complex dp{0.0};
    for (size_t k = coeffs_.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + coeffs_[k];
    }
    return {p, dp};
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial{};
    std::vector<Complex> c(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * double(k);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<Complex> c(coeffs_.size() + 1, Complex{0.0});
    for (size_t k = 0; k < coeffs_.size(); ++k) c[k + 1] = coeffs_[k] / double(k + 1);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::reversed() const {
    std::vector<Complex> c(coeffs_.rbegin(), coeffs_.rend());
    return Polynomial(std::move(c));
}

Polynomial Polynomial::conjugated() const {
    std::vector<Complex> c(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), c.begin(),
                   [](Complex a) { return std::conj(a); });
    return Polynomial(std::move(c));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    Polynomial acc = Polynomial::constant(coeffs_.back());
    for (size_t k = coeffs_.size() - 1; k-- > 0;)
        acc = acc * inner + Polynomial::constant(coeffs_[k]);
    return acc;
}

double Polynomial::coefficient_scale() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex{0.0});
    for (size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) c[k] += rhs.coeffs_[k];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    return *this + rhs * Complex{-1.0};
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1, Complex{0.0});
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex s) const {
    std::vector<Complex> c(coeffs_);
    for (Complex& a : c) a *= s;
    return Polynomial(std::move(c));
}

std::string Polynomial::str() const {
    std::ostringstream os;
    os.precision(15);
    for (int k = degree(); k >= 0; --k) {
        Complex a = coefficient(k);
        if (a == Complex{0.0} && degree() > 0) continue;
        os << "(" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i)";
        if (k > 0) os << "z^" << k << " + ";
    }
    return os.str();
}

std::string to_text(const Polynomial& p) {
    std::ostringstream os;
    os.precision(17);
    for (const Complex& c : p.coefficients()) os << c.real() << "," << c.imag() << "\n";
    return os.str();
}

Polynomial polynomial_from_text(const std::string& text) {
    std::vector<Complex> coeffs;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        double re = 0.0, im = 0.0;
        char comma = 0;
        std::istringstream ls(line);
        if (!(ls >> re)) throw std::invalid_argument("bad polynomial line: " + line);
        if (ls >> comma) {
            if (comma != ',') throw std::invalid_argument("bad polynomial line: " + line);
            if (!(ls >> im)) throw std::invalid_argument("bad polynomial line: " + line);
        }
        coeffs.emplace_back(re, im);
    }
    if (coeffs.empty()) throw std::invalid_argument("empty polynomial file");
    return Polynomial(std::move(coeffs));
}

}  // namespace holodyn
