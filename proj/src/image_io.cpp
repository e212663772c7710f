#include "holodyn/image_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifdef HOLODYN_HAVE_PNG
#include <png.h>
#endif

namespace holodyn {

std::vector<unsigned char> encode_ppm(const ClassifiedGrid& grid, const Palette& palette) {
    const int w = grid.window.columns, h = grid.window.rows;
    std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    std::vector<unsigned char> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + static_cast<size_t>(w) * static_cast<size_t>(h) * 3);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            Rgb c = palette.color(grid.at(i, j));
            bytes.push_back(c.r);
            bytes.push_back(c.g);
            bytes.push_back(c.b);
        }
    return bytes;
}

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void write_ppm(const std::string& path, const ClassifiedGrid& grid, const Palette& palette) {
    write_bytes(path, encode_ppm(grid, palette));
}

bool png_supported() {
#ifdef HOLODYN_HAVE_PNG
    return true;
#else
    return false;
#endif
}

#ifdef HOLODYN_HAVE_PNG
void write_png(const std::string& path, const ClassifiedGrid& grid, const Palette& palette) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot open for writing: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        throw std::runtime_error("png write failed: " + path);
    }
    png_init_io(png, fp);
    const int w = grid.window.columns, h = grid.window.rows;
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<unsigned char> row(static_cast<size_t>(w) * 3);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            Rgb c = palette.color(grid.at(i, j));
            row[static_cast<size_t>(j) * 3 + 0] = c.r;
            row[static_cast<size_t>(j) * 3 + 1] = c.g;
            row[static_cast<size_t>(j) * 3 + 2] = c.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}
#else
void write_png(const std::string&, const ClassifiedGrid&, const Palette&) {
    throw std::runtime_error("png output not available in this build");
}
#endif

std::string encode_csv(const ClassifiedGrid& grid) {
    std::ostringstream os;
    os.precision(12);
    os << "i,j,class,value\n";
    for (int i = 0; i < grid.window.rows; ++i)
        for (int j = 0; j < grid.window.columns; ++j) {
            const Cell& c = grid.at(i, j);
            os << i << "," << j << "," << c.cls << "," << c.value << "\n";
        }
    return os.str();
}

void write_csv(const std::string& path, const ClassifiedGrid& grid) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << encode_csv(grid);
}

}  // namespace holodyn
