#include "holodyn/interval_map.hpp"

#include <algorithm>
#include <cmath>

namespace holodyn {

MonotoneTable::MonotoneTable(double a, double b, std::vector<double> values)
    : a_(a), b_(b), ys_(std::move(values)) {
    if (ys_.size() < 2) throw std::invalid_argument("monotone table needs >= 2 samples");
    if (!(b_ > a_)) throw std::invalid_argument("monotone table needs b > a");
    increasing_ = ys_.back() > ys_.front();
    for (size_t i = 0; i + 1 < ys_.size(); ++i) {
        const bool up = ys_[i + 1] > ys_[i];
        if (up != increasing_)
            throw std::invalid_argument("monotone table samples are not strictly monotone");
    }
    build_slopes();
}

MonotoneTable MonotoneTable::sample(double a, double b, const std::function<double(double)>& fn,
                                    int samples) {
    std::vector<double> ys(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        ys[static_cast<size_t>(i)] = fn(a + (b - a) * i / double(samples - 1));
    return MonotoneTable(a, b, std::move(ys));
}

void MonotoneTable::build_slopes() {
    const size_t n = ys_.size();
    const double h = (b_ - a_) / double(n - 1);
    std::vector<double> delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) delta[i] = (ys_[i + 1] - ys_[i]) / h;
    slopes_.assign(n, 0.0);
    // Second-order one-sided end slopes, limited to the monotone range.
    auto limit_end = [](double m, double d) {
        if (m * d <= 0.0) return 0.0;
        return std::abs(m) > 3.0 * std::abs(d) ? 3.0 * d : m;
    };
    slopes_[0] = n > 2 ? limit_end(1.5 * delta[0] - 0.5 * delta[1], delta[0]) : delta[0];
    slopes_[n - 1] = n > 2 ? limit_end(1.5 * delta[n - 2] - 0.5 * delta[n - 3], delta[n - 2])
                           : delta[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) slopes_[i] = 0.5 * (delta[i - 1] + delta[i]);
    // Fritsch-Carlson limiter keeps the cubic monotone on each cell.
    for (size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            slopes_[i] = slopes_[i + 1] = 0.0;
            continue;
        }
        const double alpha = slopes_[i] / delta[i];
        const double beta = slopes_[i + 1] / delta[i];
        const double s = alpha * alpha + beta * beta;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            slopes_[i] = tau * alpha * delta[i];
            slopes_[i + 1] = tau * beta * delta[i];
        }
    }
}

double MonotoneTable::eval(double x) const {
    const size_t n = ys_.size();
    const double h = (b_ - a_) / double(n - 1);
    double u = (x - a_) / h;
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, static_cast<int>(n) - 2);
    const double t = (x - (a_ + i * h)) / h;
    const double y0 = ys_[static_cast<size_t>(i)], y1 = ys_[static_cast<size_t>(i) + 1];
    const double m0 = slopes_[static_cast<size_t>(i)] * h, m1 = slopes_[static_cast<size_t>(i) + 1] * h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * m1;
}

double MonotoneTable::derivative(double x) const {
    const size_t n = ys_.size();
    const double h = (b_ - a_) / double(n - 1);
    double u = (x - a_) / h;
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, static_cast<int>(n) - 2);
    const double t = (x - (a_ + i * h)) / h;
    const double y0 = ys_[static_cast<size_t>(i)], y1 = ys_[static_cast<size_t>(i) + 1];
    const double m0 = slopes_[static_cast<size_t>(i)] * h, m1 = slopes_[static_cast<size_t>(i) + 1] * h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 +
            (3 * t2 - 2 * t) * m1) /
           h;
}

double MonotoneTable::inverse(double y) const {
    double lo = a_, hi = b_;
    const double ylo = eval(lo), yhi = eval(hi);
    if (increasing_) {
        if (y <= ylo) return lo;
        if (y >= yhi) return hi;
    } else {
        if (y >= ylo) return lo;
        if (y <= yhi) return hi;
    }
    for (int iter = 0; iter < 60 && hi - lo > 1e-14; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double v = eval(mid);
        const bool go_right = increasing_ ? (v < y) : (v > y);
        (go_right ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    const double d = derivative(x);
    if (std::abs(d) > 1e-12) {
        const double polished = x - (eval(x) - y) / d;
        if (polished >= a_ && polished <= b_) x = polished;
    }
    return x;
}

PiecewiseMonotoneMap::PiecewiseMonotoneMap(std::vector<double> breaks,
                                           std::vector<MonotoneTable> tables)
    : breaks_(std::move(breaks)), tables_(std::move(tables)) {
    validate();
}

void PiecewiseMonotoneMap::validate() const {
    if (breaks_.size() != tables_.size() + 1)
        throw std::invalid_argument("breakpoints/laps size mismatch");
    if (std::abs(breaks_.front()) > 1e-12 || std::abs(breaks_.back() - 1.0) > 1e-12)
        throw std::invalid_argument("interval map must live on [0, 1]");
    for (size_t j = 0; j + 1 < breaks_.size(); ++j)
        if (!(breaks_[j] < breaks_[j + 1]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
    for (size_t j = 0; j + 1 < tables_.size(); ++j) {
        if (tables_[j].increasing() == tables_[j + 1].increasing())
            throw std::invalid_argument("laps must alternate monotonicity");
        if (std::abs(tables_[j].back() - tables_[j + 1].front()) > 1e-9)
            throw std::invalid_argument("laps must match at breakpoints");
    }
    auto is_boundary = [](double v) {
        return std::abs(v) < 1e-9 || std::abs(v - 1.0) < 1e-9;
    };
    if (!is_boundary(boundary0()) || !is_boundary(boundary1()))
        throw std::invalid_argument("boundary values must lie in {0, 1}");
}

PiecewiseMonotoneMap PiecewiseMonotoneMap::piecewise_linear(const std::vector<double>& breakpoints,
                                                            const std::vector<double>& values,
                                                            int samples_per_lap) {
    if (breakpoints.size() != values.size())
        throw std::invalid_argument("need one value per breakpoint");
    if (breakpoints.size() < 2) throw std::invalid_argument("need at least one lap");
    std::vector<MonotoneTable> tables;
    for (size_t j = 0; j + 1 < breakpoints.size(); ++j) {
        const double x0 = breakpoints[j], x1 = breakpoints[j + 1];
        const double y0 = values[j], y1 = values[j + 1];
        tables.push_back(MonotoneTable::sample(
            x0, x1,
            [&](double x) { return y0 + (y1 - y0) * (x - x0) / (x1 - x0); }, samples_per_lap));
    }
    return PiecewiseMonotoneMap(breakpoints, std::move(tables));
}

PiecewiseMonotoneMap PiecewiseMonotoneMap::from_function(const std::vector<double>& breakpoints,
                                                         const std::function<double(double)>& fn,
                                                         int samples_per_lap) {
    std::vector<MonotoneTable> tables;
    for (size_t j = 0; j + 1 < breakpoints.size(); ++j) {
        const double x0 = breakpoints[j], x1 = breakpoints[j + 1];
        int n = samples_per_lap;
        MonotoneTable t = MonotoneTable::sample(x0, x1, fn, n);
        // One refinement doubling when midpoint interpolation error is large.
        double err = 0.0;
        for (int i = 0; i + 1 < n; i += std::max(1, n / 64)) {
            const double xm = x0 + (x1 - x0) * (i + 0.5) / double(n - 1);
            err = std::max(err, std::abs(t.eval(xm) - fn(xm)));
        }
        if (err > 1e-9) t = MonotoneTable::sample(x0, x1, fn, 2 * n);
        tables.push_back(std::move(t));
    }
    return PiecewiseMonotoneMap(breakpoints, std::move(tables));
}

int PiecewiseMonotoneMap::lap_of(double x) const {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    int j = static_cast<int>(it - breaks_.begin()) - 1;
    return std::clamp(j, 0, laps() - 1);
}

double PiecewiseMonotoneMap::eval(double x) const {
    return tables_[static_cast<size_t>(lap_of(x))].eval(x);
}

double PiecewiseMonotoneMap::lap_inverse(int j, double y) const {
    return tables_.at(static_cast<size_t>(j)).inverse(y);
}

std::vector<double> PiecewiseMonotoneMap::critical_values() const {
    std::vector<double> v;
    for (size_t j = 0; j + 1 < tables_.size(); ++j) v.push_back(tables_[j].back());
    return v;
}

std::vector<int> PiecewiseMonotoneMap::itinerary(double x, int length, double guard) const {
    std::vector<int> symbols;
    double z = x;
    for (int k = 0; k < length; ++k) {
        int lap = lap_of(z);
        bool ambiguous = false;
        for (double b : breaks_)
            if (std::abs(z - b) < guard && b != breaks_.front() && b != breaks_.back())
                ambiguous = true;
        symbols.push_back(ambiguous ? -1 : lap);
        z = std::clamp(eval(z), 0.0, 1.0);
    }
    return symbols;
}

}  // namespace holodyn
