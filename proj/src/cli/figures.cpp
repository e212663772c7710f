#include <filesystem>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "holodyn/cli.hpp"
#include "holodyn/image_io.hpp"
#include "holodyn/render.hpp"
#include "holodyn/text_io.hpp"

namespace holodyn::cli {

std::vector<FigureSpec> figure_table(const std::string& config_path) {
    // Each line: name = kind,map,cx,cy,w,h,cols,rows,maxiter
    auto config = load_flat_config(config_path);
    std::vector<FigureSpec> table;
    for (const auto& [name, value] : config) {
        FigureSpec spec;
        spec.name = name;
        std::istringstream is(value);
        std::string kind, map, rest;
        if (!std::getline(is, kind, ',') || !std::getline(is, map, ','))
            throw std::runtime_error("bad figure line for " + name);
        std::getline(is, rest);
        spec.kind = kind;
        spec.map = map;
        // rest = cx,cy,w,h,cols,rows,maxiter
        std::istringstream rs(rest);
        char comma;
        double cx, cy;
        if (!(rs >> cx >> comma >> cy >> comma >> spec.window.width >> comma >>
              spec.window.height >> comma >> spec.window.columns >> comma >> spec.window.rows >>
              comma >> spec.max_iter))
            throw std::runtime_error("bad figure geometry for " + name + ": " + rest);
        spec.window.center = Complex{cx, cy};
        table.push_back(std::move(spec));
    }
    return table;
}

std::vector<std::pair<std::string, std::string>> render_figures(const std::string& config_path,
                                                                const std::string& out_dir,
                                                                const Palette& palette) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::pair<std::string, std::string>> outputs;
    for (const FigureSpec& spec : figure_table(config_path)) {
        ClassifiedGrid grid;
        if (spec.kind == "julia" || spec.kind == "rational" || spec.kind == "palpha") {
            grid = render_escape(named_map(spec.map), spec.window, spec.max_iter);
        } else if (spec.kind == "yoccoz") {
            grid = yoccoz_disks_figure(spec.max_iter >= 2 ? std::min(spec.max_iter, 64) : 10,
                                       spec.window);
        } else {
            throw std::runtime_error("unknown figure kind: " + spec.kind);
        }
        const std::string path = out_dir + "/" + spec.name + ".ppm";
        write_ppm(path, grid, palette);
        const std::string csv_path = out_dir + "/" + spec.name + ".csv";
        write_csv(csv_path, grid);
        outputs.emplace_back(spec.name, path);
    }
    return outputs;
}

std::string sha256_hex(const std::vector<unsigned char>& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP context allocation failed");
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

}  // namespace holodyn::cli
