#include "holodyn/parameter.hpp"

#include <cmath>

namespace holodyn {

namespace {

struct FamilyPartials {
    Complex f, fz, fc, fzz, fzc;
};

FamilyPartials partials(FamilyKind family, Complex z, Complex c) {
    switch (family) {
        case FamilyKind::QuadraticC:
            return {z * z + c, 2.0 * z, 1.0, 2.0, 0.0};
        case FamilyKind::CubicOddA:
            return {z * z * z + c * z, 3.0 * z * z + c, z, 6.0 * z, 1.0};
        case FamilyKind::McMullenLambda:
            return {c * z * z + z * z * z, 2.0 * c * z + 3.0 * z * z, z * z,
                    2.0 * c + 6.0 * z, 2.0 * z};
    }
    throw std::logic_error("unknown family");
}

Complex critical_point_derivative(FamilyKind family, Complex c) {
    switch (family) {
        case FamilyKind::QuadraticC:
            return 0.0;
        case FamilyKind::CubicOddA: {
            Complex crit = std::sqrt(-c / 3.0);
            return crit == Complex{0.0} ? Complex{0.0} : -1.0 / (6.0 * crit);
        }
        case FamilyKind::McMullenLambda:
            return Complex{-2.0 / 3.0};
    }
    throw std::logic_error("unknown family");
}

/// f^k(crit(c)) together with its c-derivative via forward recurrence.
struct OrbitWithDerivative {
    std::vector<Complex> z;   // z[k] = f^k(crit)
    std::vector<Complex> dz;  // dz[k] = d/dc z[k]
};

OrbitWithDerivative critical_orbit(FamilyKind family, Complex c, int steps) {
    OrbitWithDerivative o;
    o.z.reserve(static_cast<size_t>(steps) + 1);
    o.dz.reserve(static_cast<size_t>(steps) + 1);
    o.z.push_back(family_critical_point(family, c));
    o.dz.push_back(critical_point_derivative(family, c));
    for (int k = 0; k < steps; ++k) {
        auto p = partials(family, o.z.back(), c);
        o.dz.push_back(p.fz * o.dz.back() + p.fc);
        o.z.push_back(p.f);
    }
    return o;
}

Complex solve_multiplier(const ParameterProblem& prob, double tolerance) {
    Complex c = prob.seed;
    const Complex lambda = prob.condition.lambda;
    // Seed the fixed point near the multiplier target where that helps.
    Complex z = prob.family == FamilyKind::QuadraticC ? lambda / 2.0 : Complex{0.0};
    for (int iter = 0; iter < 200; ++iter) {
        auto p = partials(prob.family, z, c);
        Complex r1 = p.f - z;
        Complex r2 = p.fz - lambda;
        if (std::abs(r1) < tolerance && std::abs(r2) < tolerance) return c;
        Complex a = p.fz - 1.0, b = p.fc;
        Complex d = p.fzz, e = p.fzc;
        Complex det = a * e - b * d;
        if (std::abs(det) < 1e-300) throw Diverged("multiplier solve: singular Jacobian");
        Complex dz = (r1 * e - b * r2) / det;
        Complex dc = (a * r2 - r1 * d) / det;
        z -= dz;
        c -= dc;
        if (std::abs(c - prob.seed) > prob.search_radius)
            throw Diverged("multiplier solve left the search disk");
    }
    throw Diverged("multiplier solve did not converge");
}

}  // namespace

Polynomial family_map(FamilyKind family, Complex parameter) {
    switch (family) {
        case FamilyKind::QuadraticC:
            return Polynomial{{parameter, Complex{0.0}, Complex{1.0}}};
        case FamilyKind::CubicOddA:
            return Polynomial{{Complex{0.0}, parameter, Complex{0.0}, Complex{1.0}}};
        case FamilyKind::McMullenLambda:
            return Polynomial{{Complex{0.0}, Complex{0.0}, parameter, Complex{1.0}}};
    }
    throw std::logic_error("unknown family");
}

Complex family_critical_point(FamilyKind family, Complex parameter) {
    switch (family) {
        case FamilyKind::QuadraticC:
            return Complex{0.0};
        case FamilyKind::CubicOddA:
            return std::sqrt(-parameter / 3.0);
        case FamilyKind::McMullenLambda:
            return -2.0 * parameter / 3.0;
    }
    throw std::logic_error("unknown family");
}

double parameter_residual(const ParameterProblem& prob, Complex c) {
    const auto& cond = prob.condition;
    switch (cond.kind) {
        case ParameterCondition::Kind::CritPeriodic: {
            auto o = critical_orbit(prob.family, c, cond.m);
            return std::abs(o.z.back());
        }
        case ParameterCondition::Kind::CritOrbitCoincidence: {
            auto o = critical_orbit(prob.family, c, cond.m);
            return std::abs(o.z[static_cast<size_t>(cond.m)] - o.z[static_cast<size_t>(cond.n)]);
        }
        case ParameterCondition::Kind::FixedPointMultiplier: {
            // Residual via the nearest fixed point of the solved system.
            Complex z = prob.family == FamilyKind::QuadraticC ? cond.lambda / 2.0 : Complex{0.0};
            for (int i = 0; i < 60; ++i) {
                auto p = partials(prob.family, z, c);
                Complex r = p.f - z;
                Complex d = p.fz - 1.0;
                if (std::abs(d) < 1e-300) break;
                z -= r / d;
            }
            auto p = partials(prob.family, z, c);
            return std::abs(p.f - z) + std::abs(p.fz - cond.lambda);
        }
    }
    throw std::logic_error("unknown condition");
}

Complex solve_parameter(const ParameterProblem& prob, double tolerance) {
    const auto& cond = prob.condition;
    if (tolerance <= 0.0) throw std::invalid_argument("solve_parameter: tolerance must be > 0");

    if (cond.kind == ParameterCondition::Kind::FixedPointMultiplier)
        return solve_multiplier(prob, tolerance);

    if (cond.m <= 0) throw std::invalid_argument("solve_parameter: iterate index must be positive");
    if (cond.kind == ParameterCondition::Kind::CritOrbitCoincidence && cond.m <= cond.n)
        throw std::invalid_argument("solve_parameter: need m > n");

    Complex c = prob.seed;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        auto o = critical_orbit(prob.family, c, cond.m);
        Complex g, dg;
        if (cond.kind == ParameterCondition::Kind::CritPeriodic) {
            g = o.z.back();
            dg = o.dz.back();
        } else {
            g = o.z[static_cast<size_t>(cond.m)] - o.z[static_cast<size_t>(cond.n)];
            dg = o.dz[static_cast<size_t>(cond.m)] - o.dz[static_cast<size_t>(cond.n)];
        }
        if (std::abs(g) < tolerance) { converged = true; break; }
        if (std::abs(dg) < 1e-300) throw Diverged("parameter Newton: vanishing derivative");
        c -= g / dg;
        if (std::abs(c - prob.seed) > prob.search_radius)
            throw Diverged("parameter Newton left the search disk");
    }
    if (!converged && parameter_residual(prob, c) >= tolerance)
        throw Diverged("parameter Newton did not converge");

    // Reject solutions where the condition trivializes.
    const double triviality = 1e-6;
    auto o = critical_orbit(prob.family, c, cond.m);
    if (cond.kind == ParameterCondition::Kind::CritPeriodic) {
        for (int j = 1; j < cond.m; ++j)
            if (std::abs(o.z[static_cast<size_t>(j)]) < triviality)
                throw DegenerateCondition("critical orbit closes up before iterate " +
                                          std::to_string(cond.m));
    } else {
        // The solution must not satisfy the same coincidence one period
        // earlier (the condition would then have been solvable with a
        // smaller n, e.g. f^6(0) = f^3(0) instead of f^9(0) = f^6(0)).
        const int period = cond.m - cond.n;
        const int j0 = cond.n - period;
        if (j0 >= 0 &&
            std::abs(o.z[static_cast<size_t>(cond.n)] - o.z[static_cast<size_t>(j0)]) < triviality)
            throw DegenerateCondition("coincidence already holds at iterate " + std::to_string(j0));
    }
    return c;
}

}  // namespace holodyn
