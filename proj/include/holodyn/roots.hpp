#pragma once

#include <stdexcept>
#include <vector>

#include "holodyn/polynomial.hpp"

namespace holodyn {

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(int iterations)
        : std::runtime_error("root refinement did not converge after " +
                             std::to_string(iterations) + " iterations"),
          max_iterations(iterations) {}
    int max_iterations;
};

struct RootWithMultiplicity {
    Complex value;
    int multiplicity = 1;
};

struct RootOptions {
    int max_iterations = 400;
    /// Relative cluster radius used to merge nearby iterates into one
    /// multiple root.
    double cluster_tol = 2e-6;
    /// Imaginary parts below this relative threshold are snapped to the
    /// real axis for real-coefficient inputs.
    double realness_tol = 1e-12;
};

/// All complex roots of p, counted with multiplicity (Aberth–Ehrlich
/// simultaneous iteration; initial guesses on a circle of radius
/// 1 + max|a_i / a_d|).  Real-coefficient inputs come back closed under
/// conjugation.  Throws NoConvergence if the parallel iteration stalls.
std::vector<RootWithMultiplicity> poly_roots(const Polynomial& p, RootOptions opts = {});

/// Convenience: roots flattened with multiplicity, size == deg p.
std::vector<Complex> poly_roots_flat(const Polynomial& p, RootOptions opts = {});

/// Scale-aware residual bound used by the postcondition checks:
/// |p(r)| <= eps * max|a| * max(1, |r|)^deg.
double root_residual_scale(const Polynomial& p, Complex root);

}  // namespace holodyn
