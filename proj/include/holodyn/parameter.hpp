#pragma once

#include <stdexcept>
#include <string>

#include "holodyn/polynomial.hpp"

namespace holodyn {

struct Diverged : std::runtime_error {
    explicit Diverged(const std::string& what) : std::runtime_error(what) {}
};
struct DegenerateCondition : std::runtime_error {
    explicit DegenerateCondition(const std::string& what) : std::runtime_error(what) {}
};

/// One-parameter families with a single free complex slot.
enum class FamilyKind {
    QuadraticC,      // z^2 + c, critical point 0
    CubicOddA,       // z^3 + a z, critical points +-sqrt(-a/3); orbit of +sqrt used
    McMullenLambda,  // lambda z^2 + z^3, free critical point -2 lambda / 3
};

/// Critical-orbit equation on the family parameter.
struct ParameterCondition {
    enum class Kind {
        CritPeriodic,          // f^n(crit) = crit-value-zero equation: f^n(crit) = 0 target orbit point
        CritOrbitCoincidence,  // f^m(crit) = f^n(crit), m > n
        FixedPointMultiplier,  // exists z: f(z) = z, f'(z) = lambda
    };
    Kind kind = Kind::CritPeriodic;
    int m = 0;               // outer iterate
    int n = 0;               // inner iterate (coincidence only)
    Complex lambda{0.0};     // multiplier target
};

struct ParameterProblem {
    FamilyKind family = FamilyKind::QuadraticC;
    ParameterCondition condition;
    Complex seed{0.0};
    double search_radius = 8.0;  // Newton declared Diverged outside this disk
};

/// Family polynomial for a concrete parameter value.
Polynomial family_map(FamilyKind family, Complex parameter);
Complex family_critical_point(FamilyKind family, Complex parameter);

/// Newton iteration on the parameter; derivative of f^n(crit) with respect
/// to the parameter by forward recurrence.  The returned parameter has
/// condition residual below `tolerance`.
Complex solve_parameter(const ParameterProblem& problem, double tolerance = 1e-13);

/// Residual of the condition at a given parameter (used for idempotence checks).
double parameter_residual(const ParameterProblem& problem, Complex parameter);

}  // namespace holodyn
