#include <algorithm>
#include <fstream>
#include <sstream>

#include "holodyn/cli.hpp"
#include "holodyn/external_ray.hpp"
#include "holodyn/parameter.hpp"
#include "holodyn/text_io.hpp"

namespace holodyn::cli {

std::map<std::string, std::string> load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = line.find_first_not_of(" \t\r\n");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     " is not key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\n");
            const auto b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) +
                                                  " has an empty key");
        out[key] = value;
    }
    return out;
}

std::vector<std::string> merge_config_tokens(const std::vector<std::string>& args,
                                             const std::map<std::string, std::string>& config) {
    std::vector<std::string> merged = args;
    // Insert right after the subcommand token (first non-flag argument).
    size_t insert_at = merged.size();
    for (size_t i = 0; i < merged.size(); ++i) {
        if (!merged[i].empty() && merged[i][0] != '-') {
            insert_at = i + 1;
            break;
        }
    }
    std::vector<std::string> extra;
    for (const auto& [key, value] : config) {
        const std::string flag = "--" + key;
        if (std::find(merged.begin(), merged.end(), flag) != merged.end()) continue;
        extra.push_back(flag);
        extra.push_back(value);
    }
    merged.insert(merged.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
    return merged;
}

Complex rabbit_parameter() {
    ParameterProblem prob;
    prob.family = FamilyKind::QuadraticC;
    prob.condition = {ParameterCondition::Kind::CritPeriodic, 3, 0, Complex{0.0}};
    prob.seed = Complex{-0.1, 0.75};
    return solve_parameter(prob, 1e-13);
}

Complex tuned_parameter() {
    ParameterProblem prob;
    prob.family = FamilyKind::QuadraticC;
    prob.condition = {ParameterCondition::Kind::CritOrbitCoincidence, 9, 6, Complex{0.0}};
    prob.seed = Complex{-0.1, 0.96};
    return solve_parameter(prob, 1e-13);
}

DynMap named_map(const std::string& name) {
    const Complex one{1.0};
    if (name == "basilica") return Polynomial{{Complex{-1.0}, Complex{0.0}, one}};
    if (name == "chebyshev") return Polynomial{{Complex{-2.0}, Complex{0.0}, one}};
    if (name == "square") return Polynomial{{Complex{0.0}, Complex{0.0}, one}};
    if (name == "rabbit") return Polynomial{{rabbit_parameter(), Complex{0.0}, one}};
    if (name == "tuned") return Polynomial{{tuned_parameter(), Complex{0.0}, one}};
    if (name == "mating") {
        const Complex c{0.5, std::sqrt(3.0) / 2.0};
        return RationalMap(Polynomial{{c, Complex{0.0}, one}},
                           Polynomial{{Complex{-1.0}, Complex{0.0}, one}});
    }
    if (name == "insideout")
        return RationalMap(Polynomial{{Complex{0.0}, Complex{0.0}, one}},
                           Polynomial{{Complex{-1.0}, Complex{0.0}, one}});
    if (name == "intertwine-circle-segment")
        return Polynomial{{Complex{0.0}, Complex{0.0, 2.55799}, Complex{0.0}, one}};
    if (name == "intertwine-basilica")
        return Polynomial{{Complex{0.0, std::sqrt(7.0) / 4.0}, Complex{-0.75}, Complex{0.0}, one}};
    if (name == "palpha") {
        const double alpha = 0.78705954039469;
        return Polynomial{{Complex{0.0}, std::polar(1.0, 2.0 * 3.14159265358979323846 * alpha),
                           one}};
    }
    // Otherwise a coefficient file.
    return polynomial_from_file(name);
}

}  // namespace holodyn::cli
