#include "holodyn/coding_tree.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/parameter.hpp"

namespace holodyn {

namespace {
constexpr double kCriticalValueTol = 1e-9;
constexpr double kNewtonTol = 5e-14;
}  // namespace

CodingTree::CodingTree(DynMap f, Complex root, int preimage_count)
    : f_(std::move(f)), root_(root), d_(preimage_count) {
    if (d_ < 2) throw std::invalid_argument("coding tree needs d >= 2");
    if (d_ != map_degree(f_))
        throw std::invalid_argument("preimage count must match the map degree");
    for (const auto& cp : critical_points(f_)) {
        if (cp.point.at_infinity) continue;
        ExtComplex v = map_eval_ext(f_, cp.point);
        if (v.finite()) critical_values_.push_back(v.value);
    }
    check_not_critical_value(root_);
    levels_.push_back({root_});
}

void CodingTree::check_not_critical_value(Complex target) const {
    for (Complex cv : critical_values_)
        if (std::abs(target - cv) < kCriticalValueTol * (1.0 + std::abs(cv)))
            throw CriticalValueHit(target);
}

Complex CodingTree::solve_preimage(Complex target, Complex seed) const {
    Complex w = seed;
    for (int iter = 0; iter < 60; ++iter) {
        Complex val, der;
        if (const auto* p = std::get_if<Polynomial>(&f_)) {
            std::tie(val, der) = p->eval_with_derivative(w);
        } else {
            std::tie(val, der) = std::get<RationalMap>(f_).eval_with_derivative(w);
        }
        Complex g = val - target;
        if (std::abs(g) < kNewtonTol * (1.0 + std::abs(target))) return w;
        if (std::abs(der) < 1e-300) break;
        w -= g / der;
        if (!isfinite(w)) break;
    }
    throw Diverged("preimage continuation failed");
}

void CodingTree::extend_to_depth(int depth, std::int64_t budget) {
    if (depth <= this->depth()) return;
    double cost = double(depth) * std::pow(double(d_), depth);
    if (cost > double(budget)) throw TreeBudgetExceeded();

    if (this->depth() == 0 && depth >= 1) {
        // First level: the d preimages of the root, labeled once by
        // argument; all deeper labels follow by continuation.
        RationalMap r = as_rational(f_);
        Polynomial eq = r.numerator() - r.denominator() * root_;
        auto roots = poly_roots_flat(eq);
        if (static_cast<int>(roots.size()) != d_)
            throw std::invalid_argument("root has fewer than d distinct preimages");
        std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
            double aa = std::arg(a), ab = std::arg(b);
            if (aa != ab) return aa < ab;
            return std::abs(a) < std::abs(b);
        });
        for (size_t i = 0; i + 1 < roots.size(); ++i)
            if (std::abs(roots[i] - roots[i + 1]) < 1e-10 * (1.0 + std::abs(roots[i])))
                throw CriticalValueHit(root_);
        levels_.push_back(std::move(roots));
    }

    while (this->depth() < depth) {
        const int n = this->depth();
        const auto& prev = levels_.back();  // level n, size d^n
        const std::int64_t prev_size = static_cast<std::int64_t>(prev.size());
        std::vector<Complex> next(static_cast<size_t>(prev_size) * static_cast<size_t>(d_));
        for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(next.size()); ++idx) {
            const Complex target = prev[static_cast<size_t>(idx % prev_size)];  // shifted word
            const Complex seed = prev[static_cast<size_t>(idx / d_)];           // truncated word
            check_not_critical_value(target);
            next[static_cast<size_t>(idx)] = solve_preimage(target, seed);
        }
        levels_.push_back(std::move(next));
        (void)n;
    }
}

std::int64_t CodingTree::word_index(std::span<const int> word) const {
    std::int64_t idx = 0;
    for (int s : word) {
        if (s < 0 || s >= d_) throw std::invalid_argument("symbol out of range");
        idx = idx * d_ + s;
    }
    return idx;
}

Complex CodingTree::vertex(std::span<const int> word) const {
    const int n = static_cast<int>(word.size());
    if (n > depth()) throw std::invalid_argument("tree not built to that depth");
    return levels_[static_cast<size_t>(n)][static_cast<size_t>(word_index(word))];
}

BranchResult branch_limit(CodingTree& tree, const std::function<int(int)>& word, int depth,
                          double tolerance) {
    CodingTree& t = tree;
    t.extend_to_depth(1);

    std::vector<int> symbols(static_cast<size_t>(depth));
    for (int i = 0; i < depth; ++i) {
        symbols[static_cast<size_t>(i)] = word(i);
        if (symbols[static_cast<size_t>(i)] < 0 ||
            symbols[static_cast<size_t>(i)] >= tree.preimage_count())
            throw std::invalid_argument("symbol out of range");
    }

    // v[i][L] = z_L(alpha_i ... alpha_{i+L-1}); only contiguous subwords of
    // the branch word are needed.
    std::vector<std::vector<Complex>> v(static_cast<size_t>(depth) + 1);
    for (int i = 0; i <= depth; ++i)
        v[static_cast<size_t>(i)].assign(static_cast<size_t>(depth - i) + 1, tree.root());
    for (int i = 0; i < depth; ++i)
        v[static_cast<size_t>(i)][1] =
            tree.level(1)[static_cast<size_t>(symbols[static_cast<size_t>(i)])];

    for (int L = 2; L <= depth; ++L) {
        for (int i = 0; i + L <= depth; ++i) {
            const Complex target = v[static_cast<size_t>(i) + 1][static_cast<size_t>(L) - 1];
            const Complex seed = v[static_cast<size_t>(i)][static_cast<size_t>(L) - 1];
            v[static_cast<size_t>(i)][static_cast<size_t>(L)] = t.solve_preimage(target, seed);
        }
    }

    BranchResult out;
    out.point = v[0][static_cast<size_t>(depth)];
    const int tail_start = depth - std::max(1, depth / 4);
    double diam = 0.0;
    for (int a = tail_start; a <= depth; ++a)
        for (int b = a + 1; b <= depth; ++b)
            diam = std::max(diam, std::abs(v[0][static_cast<size_t>(a)] -
                                           v[0][static_cast<size_t>(b)]));
    out.tail_diameter = diam;
    out.converged = diam < tolerance;
    return out;
}

std::vector<Complex> inverse_iteration_cloud(const DynMap& f, Complex repelling_root, int depth,
                                             std::int64_t sample_budget) {
    CodingTree tree(f, repelling_root, map_degree(f));
    tree.extend_to_depth(depth);
    const auto& leaves = tree.level(depth);
    std::vector<Complex> out;
    const std::int64_t n = std::min<std::int64_t>(sample_budget,
                                                  static_cast<std::int64_t>(leaves.size()));
    out.assign(leaves.begin(), leaves.begin() + static_cast<long>(n));
    return out;
}

}  // namespace holodyn
