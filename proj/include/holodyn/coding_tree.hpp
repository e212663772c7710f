#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "holodyn/rational_map.hpp"

namespace holodyn {

struct CriticalValueHit : std::runtime_error {
    explicit CriticalValueHit(Complex where)
        : std::runtime_error("coding tree vertex too close to a critical value"), at(where) {}
    Complex at;
};

struct TreeBudgetExceeded : std::runtime_error {
    TreeBudgetExceeded() : std::runtime_error("coding tree budget exceeded") {}
};

/// Geometric coding tree: iterated preimages of a root point, labeled by
/// symbol words.  Level n stores all d^n preimages z_n(w) for words w of
/// length n, indexed by the base-d encoding with the first symbol as the
/// most significant digit.  The defining relation is
///     f(z_{n+1}(a w)) = z_n(w),
/// and labels are assigned by Newton continuation from the previous level
/// (never by re-sorting), which keeps the shift relation intact.
class CodingTree {
public:
    CodingTree(DynMap f, Complex root, int preimage_count);

    /// Build all levels up to the given depth.  Throws CriticalValueHit
    /// when a target vertex comes within tolerance of a critical value,
    /// TreeBudgetExceeded when depth * d^depth exceeds the budget.
    void extend_to_depth(int depth, std::int64_t budget = (std::int64_t{1} << 26));

    int depth() const { return static_cast<int>(levels_.size()) - 1; }
    int preimage_count() const { return d_; }
    Complex root() const { return root_; }
    const DynMap& map() const { return f_; }

    /// Vertex for a word given as digits (first symbol first).
    Complex vertex(std::span<const int> word) const;
    const std::vector<Complex>& level(int n) const { return levels_.at(static_cast<size_t>(n)); }

    /// Word index helpers (first symbol = most significant digit).
    std::int64_t word_index(std::span<const int> word) const;

    /// Newton continuation of f(w) = target seeded at a nearby known
    /// preimage; the primitive behind both level building and branch walks.
    Complex solve_preimage(Complex target, Complex seed) const;

private:
    void check_not_critical_value(Complex target) const;

    DynMap f_;
    Complex root_;
    int d_;
    std::vector<Complex> critical_values_;
    std::vector<std::vector<Complex>> levels_;  // levels_[n][index]
};

struct BranchResult {
    Complex point;
    bool converged = false;
    double tail_diameter = 0.0;
};

/// Limit of the branch along an infinite word (symbols supplied by the
/// generator, called with the position).  Only the contiguous-subword
/// vertices needed for the single branch are computed, O(depth^2) solves;
/// the tree itself is extended lazily to level 1 for the symbol labels.
BranchResult branch_limit(CodingTree& tree, const std::function<int(int)>& word, int depth,
                          double tolerance = 1e-9);

/// Leaves of the depth-level of a coding tree rooted at a repelling fixed
/// point, capped at sample_budget points: the inverse-iteration sampler.
std::vector<Complex> inverse_iteration_cloud(const DynMap& f, Complex repelling_root, int depth,
                                             std::int64_t sample_budget);

}  // namespace holodyn
