#include "holodyn/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace holodyn {

namespace {
constexpr double kPoleTol = 1e-13;
constexpr double kCoprimeTol = 1e-12;
}  // namespace

PoleAt::PoleAt(Complex z)
    : std::runtime_error([z] {
          std::ostringstream os;
          os << "pole at " << z.real() << "+" << z.imag() << "i";
          return os.str();
      }()),
      where(z) {}

double normalized_resultant(const Polynomial& a, const Polynomial& b) {
    const int m = a.degree(), n = b.degree();
    if (m == 0 || n == 0) {
        // Nonzero constants share no root with anything.
        if (m == 0 && a.coefficient(0) == Complex{0.0}) return 0.0;
        if (n == 0 && b.coefficient(0) == Complex{0.0}) return 0.0;
        return 1.0;
    }
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s(i, i + m - k) = a.coefficient(k);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) s(n + i, i + n - k) = b.coefficient(k);
    const double res = std::abs(s.determinant());
    const double scale = std::pow(a.coefficient_scale(), n) * std::pow(b.coefficient_scale(), m);
    return scale > 0.0 ? res / scale : 0.0;
}

RationalMap::RationalMap(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw std::invalid_argument("rational map: zero denominator");
    if (degree() < 1) throw std::invalid_argument("rational map: degree must be >= 1");
    if (normalized_resultant(num_, den_) < kCoprimeTol)
        throw std::invalid_argument("rational map: numerator and denominator share a root");
}

Complex RationalMap::eval(Complex z) const {
    Complex n = num_.eval(z), d = den_.eval(z);
    if (std::abs(d) <= kPoleTol * std::max(1.0, den_.coefficient_scale() *
                                                     std::pow(std::max(1.0, std::abs(z)),
                                                              den_.degree())))
        throw PoleAt(z);
    return n / d;
}

std::pair<Complex, Complex> RationalMap::eval_with_derivative(Complex z) const {
    auto [n, dn] = num_.eval_with_derivative(z);
    auto [d, dd] = den_.eval_with_derivative(z);
    if (std::abs(d) <= kPoleTol * std::max(1.0, den_.coefficient_scale() *
                                                     std::pow(std::max(1.0, std::abs(z)),
                                                              den_.degree())))
        throw PoleAt(z);
    return {n / d, (dn * d - n * dd) / (d * d)};
}

ExtComplex RationalMap::eval_ext(const ExtComplex& z) const {
    if (z.at_infinity) {
        const int dn = num_.degree(), dd = den_.degree();
        if (dn > dd) return ExtComplex::infinity();
        if (dn < dd) return ExtComplex{0.0, 0.0};
        return ExtComplex{num_.leading() / den_.leading()};
    }
    Complex n = num_.eval(z.value), d = den_.eval(z.value);
    double dscale = std::max(1.0, den_.coefficient_scale() *
                                      std::pow(std::max(1.0, std::abs(z.value)), den_.degree()));
    double nscale = std::max(1.0, num_.coefficient_scale() *
                                      std::pow(std::max(1.0, std::abs(z.value)), num_.degree()));
    if (std::abs(d) <= kPoleTol * dscale) {
        if (std::abs(n) <= kPoleTol * nscale) {
            // Common near-zero should not happen for coprime inputs; fall
            // through to the quotient which is then O(1).
        } else {
            return ExtComplex::infinity();
        }
    }
    Complex q = n / d;
    if (!isfinite(q)) return ExtComplex::infinity();
    return ExtComplex{q};
}

RationalMap RationalMap::conjugate_by_inversion() const {
    const int dn = num_.degree(), dd = den_.degree();
    Polynomial nrev = num_.reversed();
    Polynomial drev = den_.reversed();
    // 1/f(1/w) = w^(dn-dd) * Drev(w) / Nrev(w)
    if (dn >= dd) {
        std::vector<Complex> shifted(static_cast<size_t>(dn - dd), Complex{0.0});
        for (const Complex& c : drev.coefficients()) shifted.push_back(c);
        return RationalMap(Polynomial(std::move(shifted)), nrev);
    }
    std::vector<Complex> shifted(static_cast<size_t>(dd - dn), Complex{0.0});
    for (const Complex& c : nrev.coefficients()) shifted.push_back(c);
    return RationalMap(drev, Polynomial(std::move(shifted)));
}

Polynomial RationalMap::wronskian() const {
    return num_.derivative() * den_ - num_ * den_.derivative();
}

Complex RationalMap::chart_derivative(const ExtComplex& z) const {
    const ExtComplex image = eval_ext(z);
    if (!z.at_infinity && !image.at_infinity) {
        return eval_with_derivative(z.value).second;
    }
    if (!z.at_infinity && image.at_infinity) {
        // d/dz of 1/f = (D/N)' at the pole; N is nonzero there.
        auto [n, dn] = num_.eval_with_derivative(z.value);
        auto [d, dd] = den_.eval_with_derivative(z.value);
        return (dd * n - d * dn) / (n * n);
    }
    // Source at infinity: differentiate in the w = 1/z chart.
    RationalMap g = conjugate_by_inversion();
    if (image.at_infinity) {
        // Target also at infinity: g fixes 0.
        return g.eval_with_derivative(Complex{0.0}).second;
    }
    // Target finite: derivative of f(1/w) at w = 0 equals -(1/g)'(0) ... use
    // the direct quotient w^(dd-dn) Nrev/Drev instead.
    const int dn = num_.degree(), dd = den_.degree();
    Polynomial nrev = num_.reversed();
    Polynomial drev = den_.reversed();
    Polynomial top = nrev, bot = drev;
    if (dd >= dn) {
        std::vector<Complex> shifted(static_cast<size_t>(dd - dn), Complex{0.0});
        for (const Complex& c : nrev.coefficients()) shifted.push_back(c);
        top = Polynomial(std::move(shifted));
    } else {
        std::vector<Complex> shifted(static_cast<size_t>(dn - dd), Complex{0.0});
        for (const Complex& c : drev.coefficients()) shifted.push_back(c);
        bot = Polynomial(std::move(shifted));
    }
    auto [n, dns] = top.eval_with_derivative(Complex{0.0});
    auto [d, dds] = bot.eval_with_derivative(Complex{0.0});
    return (dns * d - n * dds) / (d * d);
}

int map_degree(const DynMap& f) {
    return std::visit([](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Polynomial>)
            return m.degree();
        else
            return m.degree();
    }, f);
}

ExtComplex map_eval_ext(const DynMap& f, const ExtComplex& z) {
    if (const auto* p = std::get_if<Polynomial>(&f)) {
        if (z.at_infinity) return p->degree() >= 1 ? ExtComplex::infinity() : ExtComplex{p->coefficient(0)};
        Complex v = p->eval(z.value);
        return isfinite(v) ? ExtComplex{v} : ExtComplex::infinity();
    }
    return std::get<RationalMap>(f).eval_ext(z);
}

Complex map_derivative(const DynMap& f, Complex z) {
    if (const auto* p = std::get_if<Polynomial>(&f)) return p->eval_with_derivative(z).second;
    return std::get<RationalMap>(f).eval_with_derivative(z).second;
}

Complex map_chart_derivative(const DynMap& f, const ExtComplex& z) {
    if (const auto* p = std::get_if<Polynomial>(&f)) {
        if (!z.at_infinity) {
            ExtComplex img = map_eval_ext(f, z);
            if (!img.at_infinity) return p->eval_with_derivative(z.value).second;
            return Complex{0.0};  // finite point mapping to infinity cannot happen for polynomials
        }
        // Infinity is a superattracting fixed point for deg >= 2, multiplier 0;
        // for degree 1 the chart derivative is 1/a.
        if (p->degree() >= 2) return Complex{0.0};
        return 1.0 / p->coefficient(1);
    }
    return std::get<RationalMap>(f).chart_derivative(z);
}

RationalMap as_rational(const DynMap& f) {
    if (const auto* p = std::get_if<Polynomial>(&f))
        return RationalMap(*p, Polynomial::constant(Complex{1.0}));
    return std::get<RationalMap>(f);
}

std::vector<CriticalPoint> critical_points(const DynMap& f) {
    const int d = map_degree(f);
    if (d < 2) throw std::invalid_argument("critical_points: degree must be >= 2");

    Polynomial w = std::visit([](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Polynomial>)
            return m.derivative();
        else
            return m.wronskian();
    }, f);

    std::vector<CriticalPoint> out;
    if (w.degree() >= 1) {
        for (const auto& r : poly_roots(w)) out.push_back({ExtComplex{r.value}, r.multiplicity});
    } else if (w.is_zero()) {
        throw std::invalid_argument("critical_points: derivative vanishes identically");
    }
    const int finite_count = w.degree() >= 1 ? w.degree() : 0;
    const int at_infinity = 2 * d - 2 - finite_count;
    if (at_infinity > 0) out.push_back({ExtComplex::infinity(), at_infinity});
    return out;
}

double escape_radius(const Polynomial& p) {
    if (p.degree() < 1) return 2.0;
    double m = 0.0;
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coefficient(k)));
    return std::max(2.0, (1.0 + m) / std::abs(p.leading()));
}

}  // namespace holodyn
