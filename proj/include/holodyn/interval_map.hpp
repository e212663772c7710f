#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace holodyn {

/// Strictly monotone function sampled on a uniform grid over [a, b],
/// interpolated with monotone piecewise-cubic Hermite (Fritsch-Carlson
/// limited slopes).  The inverse is bisection to 1e-14 plus one Newton
/// polish; monotonicity makes the bracket certified.
class MonotoneTable {
public:
    MonotoneTable() = default;
    MonotoneTable(double a, double b, std::vector<double> values);
    static MonotoneTable sample(double a, double b, const std::function<double(double)>& fn,
                                int samples);

    double a() const { return a_; }
    double b() const { return b_; }
    bool increasing() const { return increasing_; }
    double front() const { return ys_.front(); }
    double back() const { return ys_.back(); }
    double y_min() const { return increasing_ ? ys_.front() : ys_.back(); }
    double y_max() const { return increasing_ ? ys_.back() : ys_.front(); }
    int samples() const { return static_cast<int>(ys_.size()); }
    const std::vector<double>& values() const { return ys_; }

    double eval(double x) const;
    double derivative(double x) const;
    double inverse(double y) const;

private:
    void build_slopes();
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> ys_;
    std::vector<double> slopes_;
    bool increasing_ = true;
};

/// Piecewise-monotone interval map on [0, 1]: d alternately ascending and
/// descending laps between breakpoints, boundary values in {0, 1}, stored
/// as dense per-lap monotone sample tables.
class PiecewiseMonotoneMap {
public:
    static constexpr int kDefaultSamples = 4096;

    /// Piecewise-linear map through (breakpoint, value) pairs.
    static PiecewiseMonotoneMap piecewise_linear(const std::vector<double>& breakpoints,
                                                 const std::vector<double>& values,
                                                 int samples_per_lap = kDefaultSamples);
    /// Sample an arbitrary map whose critical points are the given interior
    /// breakpoints.  Samples double (once) when the interpolation error
    /// estimate at lap midpoints exceeds 1e-9.
    static PiecewiseMonotoneMap from_function(const std::vector<double>& breakpoints,
                                              const std::function<double(double)>& fn,
                                              int samples_per_lap = kDefaultSamples);

    int laps() const { return static_cast<int>(tables_.size()); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    bool first_lap_ascending() const { return tables_.front().increasing(); }
    double boundary0() const { return tables_.front().front(); }
    double boundary1() const { return tables_.back().back(); }

    double eval(double x) const;
    int lap_of(double x) const;
    const MonotoneTable& lap(int j) const { return tables_.at(static_cast<size_t>(j)); }
    /// Inverse of the restriction to lap j.
    double lap_inverse(int j, double y) const;
    /// Values at the interior breakpoints, in lap order.
    std::vector<double> critical_values() const;

    /// Itinerary of a point: lap indices of the first `length` iterates.
    /// Symbols within `guard` of a breakpoint come back as -1 (ambiguous).
    std::vector<int> itinerary(double x, int length, double guard = 1e-6) const;

private:
    PiecewiseMonotoneMap(std::vector<double> breaks, std::vector<MonotoneTable> tables);
    void validate() const;
    std::vector<double> breaks_;
    std::vector<MonotoneTable> tables_;
};

}  // namespace holodyn
