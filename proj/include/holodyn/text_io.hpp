#pragma once

#include <string>

#include "holodyn/polynomial.hpp"

namespace holodyn {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Polynomial polynomial_from_file(const std::string& path);
void polynomial_to_file(const std::string& path, const Polynomial& p);

/// "re,im" or bare "re" -> complex.
Complex parse_complex(const std::string& text);

}  // namespace holodyn
