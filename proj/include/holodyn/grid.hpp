#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "holodyn/complex_plane.hpp"

namespace holodyn {

/// Rectangular complex-plane window.  Pixel (row i, column j) maps to the
/// center of its cell; row 0 is the top of the image (largest imaginary
/// part).  The pixel->point->pixel round trip is the identity.
struct Window {
    Complex center{0.0, 0.0};
    double width = 4.0;
    double height = 4.0;
    int columns = 512;
    int rows = 512;

    Complex point_at(int i, int j) const {
        const double x = center.real() + width * ((j + 0.5) / columns - 0.5);
        const double y = center.imag() + height * (0.5 - (i + 0.5) / rows);
        return Complex{x, y};
    }
    /// Pixel whose cell contains the point (clamped to the window).
    std::pair<int, int> pixel_of(Complex z) const;
    bool contains(Complex z) const;
    double pixel_area() const { return (width / columns) * (height / rows); }
};

/// Reserved class codes shared across renderers (documented palette table):
///   0         bounded / in-set
///   1         escaped (polynomial escape renders)
///   0..199    basin / root / cycle indices for multi-basin renders
///   200..249  auxiliary bands (disk q-values, strip diagnostics)
///   250       bad-cycle basin
///   254       flagged (boundary / separately-reported)
///   255       undecided
inline constexpr std::int32_t kClassBounded = 0;
inline constexpr std::int32_t kClassEscaped = 1;
inline constexpr std::int32_t kClassBadCycle = 250;
inline constexpr std::int32_t kClassFlagged = 254;
inline constexpr std::int32_t kClassUndecided = 255;

struct Cell {
    std::int32_t cls = kClassUndecided;
    double value = 0.0;
    std::int32_t aux = 0;
};

struct ClassifiedGrid {
    Window window;
    std::vector<Cell> cells;  // row-major, rows * columns

    ClassifiedGrid() = default;
    explicit ClassifiedGrid(const Window& w)
        : window(w), cells(static_cast<size_t>(w.rows) * static_cast<size_t>(w.columns)) {}

    Cell& at(int i, int j) {
        return cells[static_cast<size_t>(i) * static_cast<size_t>(window.columns) +
                     static_cast<size_t>(j)];
    }
    const Cell& at(int i, int j) const {
        return cells[static_cast<size_t>(i) * static_cast<size_t>(window.columns) +
                     static_cast<size_t>(j)];
    }
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

/// Fixed 256-entry palette.  The repository ships the table as a data
/// file; the built-in copy is byte-identical to it.
class Palette {
public:
    static Palette builtin();
    static Palette load(const std::string& path);
    void save(const std::string& path) const;

    const Rgb& operator[](std::size_t i) const { return table_[i & 0xff]; }
    /// Deterministic cell -> palette index map used by every image writer.
    Rgb color(const Cell& c) const;

private:
    std::array<Rgb, 256> table_{};
};

}  // namespace holodyn
