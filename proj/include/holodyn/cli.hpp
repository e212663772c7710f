#pragma once

#include <map>
#include <string>
#include <vector>

#include "holodyn/grid.hpp"
#include "holodyn/rational_map.hpp"

namespace holodyn::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 success, 2 config error, 3 numerical failure.
int run(int argc, const char* const* argv);

/// Flat key=value config file -> map; '#' comments and blank lines skipped.
std::map<std::string, std::string> load_flat_config(const std::string& path);

/// Merge config entries into an argv token stream right after the
/// subcommand, skipping keys the command line already carries (flags
/// override the file).
std::vector<std::string> merge_config_tokens(const std::vector<std::string>& args,
                                             const std::map<std::string, std::string>& config);

/// Effective-config echo plus tool metadata written next to every output.
void write_report(const std::string& out_path, const std::string& command,
                  const std::map<std::string, std::string>& effective_config,
                  const std::string& payload_json, double wall_ms);

/// Named example maps ("basilica", "rabbit", ... or a coefficient file path).
DynMap named_map(const std::string& name);
/// Rabbit and tuned-rabbit parameters solved on demand (deterministic).
Complex rabbit_parameter();
Complex tuned_parameter();

struct FigureSpec {
    std::string name;
    std::string kind;  // julia | rational | palpha | yoccoz
    std::string map;   // named_map key when kind uses one
    Window window;
    int max_iter = 500;
};

/// The nine figure analogues with their fixed windows.
std::vector<FigureSpec> figure_table(const std::string& config_path);
/// Render every figure into the directory; returns name -> ppm path.
std::vector<std::pair<std::string, std::string>> render_figures(const std::string& config_path,
                                                                const std::string& out_dir,
                                                                const Palette& palette);

std::string sha256_hex(const std::vector<unsigned char>& bytes);
std::string sha256_file(const std::string& path);

}  // namespace holodyn::cli
