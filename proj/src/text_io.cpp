#include "holodyn/text_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holodyn {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

Polynomial polynomial_from_file(const std::string& path) {
    return polynomial_from_text(read_text_file(path));
}

void polynomial_to_file(const std::string& path, const Polynomial& p) {
    write_text_file(path, to_text(p));
}

Complex parse_complex(const std::string& text) {
    std::istringstream is(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw std::invalid_argument("bad complex literal: " + text);
    if (is >> comma) {
        if (comma != ',' || !(is >> im))
            throw std::invalid_argument("bad complex literal: " + text);
    }
    return Complex{re, im};
}

}  // namespace holodyn
