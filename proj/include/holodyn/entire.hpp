#pragma once

#include <optional>
#include <vector>

#include "holodyn/grid.hpp"
#include "holodyn/orbits.hpp"

namespace holodyn {

enum class EntireKind { Exp, Sin, Cos, ExpSin, ExpCos };

const char* entire_kind_name(EntireKind k);
std::optional<EntireKind> entire_kind_from_name(const std::string& name);

/// One-parameter entire family: lambda e^z, lambda sin z, lambda cos z,
/// lambda e^z sin z, lambda e^z cos z.
struct EntireFamily {
    EntireKind kind = EntireKind::Exp;
    Complex lambda{1.0, 0.0};

    /// Singular values driving the dynamics: the asymptotic value 0 for
    /// the exp-type kinds, the critical values +-lambda for sin/cos.
    std::vector<Complex> singular_values() const;
};

/// Evaluation result: either a finite value or a certified-escape token
/// carrying the growth direction.  Never a non-finite number.
struct EntireStep {
    bool overflow = false;
    Complex value{0.0};
    Complex direction{1.0};  // unit growth direction when overflow
};

/// Overflow-safe evaluation: magnitudes beyond 1e300 become tokens.  The
/// certificates are kind-aware: Re z for exp type, |Im z| for sin/cos
/// (|sin z| >= sinh |Im z|).
EntireStep entire_step(const EntireFamily& family, Complex z);

/// Certified escape threshold on Re z for exp-type members: beyond it the
/// real part grows monotonically and the next steps overflow.
double exp_escape_threshold(const EntireFamily& family);

enum class SingularFate { Escaping, Attracted, Undecided };

struct SingularOrbitReport {
    Complex singular_value{0.0};
    SingularFate fate = SingularFate::Undecided;
    std::optional<CycleRecord> cycle;  // when attracted (finite cycle data)
    int iterations_used = 0;
    bool parabolic_suspect = false;  // detected cycle with |multiplier| ~ 1
};

/// Iterate the singular value(s): escaping on a certified overflow or
/// threshold crossing, attracted on cycle detection with |multiplier| < 1,
/// undecided otherwise (including the neutral boundary cases).
std::vector<SingularOrbitReport> singular_orbit_classify(const EntireFamily& family,
                                                         int max_iter = 10000,
                                                         double tolerance = 1e-9);

/// Dynamic-plane render: class kClassEscaped with dwell in `value` for
/// certified escape, cycle index for attraction, undecided otherwise.
ClassifiedGrid render_exp_dynamic(const EntireFamily& family, const Window& window, int max_iter);

/// Parameter-plane render for the family kind: per-lambda classification
/// of the singular orbit (escape dwell / attracted period / undecided).
ClassifiedGrid render_exp_param(EntireKind kind, const Window& window, int max_iter);

/// Invariant strip set for E_lambda with real lambda > 1/e: pixels whose
/// first N iterates keep 0 <= Im <= pi.  Class 1 = in for all N, class
/// kClassFlagged = overflow with in-strip history (reported separately),
/// class 0 = left the strip, value = exit index.
ClassifiedGrid strip_invariant_set(double lambda, const Window& window, int N);

/// Classification of one lambda on the real slice (used to bracket the
/// 1/e transition).
SingularFate exp_real_slice_fate(double lambda, int max_iter);

}  // namespace holodyn
