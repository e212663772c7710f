#pragma once

#include <string>
#include <vector>

#include "holodyn/grid.hpp"

namespace holodyn {

/// Binary P6 bytes for the grid under the palette; this is the baseline
/// format, bit-exact for a given grid and palette.
std::vector<unsigned char> encode_ppm(const ClassifiedGrid& grid, const Palette& palette);
void write_ppm(const std::string& path, const ClassifiedGrid& grid, const Palette& palette);

/// Optional PNG output (derived format, never baselined).  Throws when the
/// build has no libpng.
void write_png(const std::string& path, const ClassifiedGrid& grid, const Palette& palette);
bool png_supported();

/// CSV dump: header then one "i,j,class,value" row per cell.
std::string encode_csv(const ClassifiedGrid& grid);
void write_csv(const std::string& path, const ClassifiedGrid& grid);

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes);

}  // namespace holodyn
