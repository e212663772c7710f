#include "holodyn/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holodyn {

std::pair<int, int> Window::pixel_of(Complex z) const {
    double fj = (z.real() - center.real()) / width + 0.5;
    double fi = 0.5 - (z.imag() - center.imag()) / height;
    int j = static_cast<int>(std::floor(fj * columns));
    int i = static_cast<int>(std::floor(fi * rows));
    i = std::clamp(i, 0, rows - 1);
    j = std::clamp(j, 0, columns - 1);
    return {i, j};
}

bool Window::contains(Complex z) const {
    return std::abs(z.real() - center.real()) <= width / 2.0 &&
           std::abs(z.imag() - center.imag()) <= height / 2.0;
}

Palette Palette::builtin() {
    Palette p;
    // Entry 0: black (bounded/in-set), entry 255: white (undecided); the
    // rest a fixed wheel through blue-cyan-yellow-red.
    p.table_[0] = {0, 0, 0};
    p.table_[255] = {255, 255, 255};
    for (int i = 1; i < 255; ++i) {
        const double t = (i - 1) / 253.0;
        const double angle = 6.283185307179586 * (3.0 * t);
        const double v = 0.55 + 0.45 * std::cos(angle);
        const double w = 0.55 + 0.45 * std::cos(angle - 2.0943951023931953);
        const double u = 0.55 + 0.45 * std::cos(angle - 4.1887902047863905);
        const double ramp = 0.35 + 0.65 * t;
        p.table_[static_cast<size_t>(i)] = {
            static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v * ramp, 0.0, 1.0))),
            static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(w * ramp, 0.0, 1.0))),
            static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(u * ramp, 0.0, 1.0)))};
    }
    return p;
}

Palette Palette::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open palette file: " + path);
    Palette p;
    std::string line;
    size_t i = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (i >= 256) throw std::runtime_error("palette file has more than 256 entries");
        std::istringstream ls(line);
        int r, g, b;
        if (!(ls >> r >> g >> b)) throw std::runtime_error("bad palette line: " + line);
        p.table_[i++] = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                         static_cast<std::uint8_t>(b)};
    }
    if (i != 256) throw std::runtime_error("palette file must have exactly 256 entries");
    return p;
}

void Palette::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write palette file: " + path);
    out << "# 256-entry render palette: r g b per line\n";
    for (const Rgb& c : table_) out << int(c.r) << " " << int(c.g) << " " << int(c.b) << "\n";
}

Rgb Palette::color(const Cell& c) const {
    if (c.cls == kClassBounded) return table_[0];
    if (c.cls == kClassUndecided) return table_[255];
    // Deterministic index mix of class and value band; value is clamped to
    // keep the cast defined.
    const double v = std::isfinite(c.value) ? std::clamp(c.value, 0.0, 5.0e7) : 0.0;
    const std::uint32_t band = static_cast<std::uint32_t>(v * 8.0);
    const std::uint32_t cls = static_cast<std::uint32_t>(c.cls);
    return table_[1 + (cls * 37u + band) % 254u];
}

}  // namespace holodyn
