#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace hhcn::cli {

struct Options {
    std::string format = "text";  // text | json | dot (dot: planners only)
    std::uint64_t seed = 0;
    std::int64_t trials = 100000;
    std::string mode = "paper";     // paper | exact
    std::string function = "all";   // fuse selector: m | omega | n | s | all
};

// Each command renders its report to `out` and returns the process exit
// code (0 success, 2 invalid input, 3 computation error).
int run_tree_stats(const nlohmann::json& input, const Options& options, std::ostream& out);
int run_plan_tree(const nlohmann::json& input, const Options& options, std::ostream& out);
int run_plan_graph(const nlohmann::json& input, const Options& options, std::ostream& out);
int run_gossip(const nlohmann::json& input, const Options& options, std::ostream& out);
int run_fuse(const nlohmann::json& input, const Options& options, std::ostream& out);

// Loads the input file and runs the named command with uniform error
// mapping: malformed input 2, computation errors 3.
int dispatch(const std::string& command, const std::string& input_path, const Options& options,
             std::ostream& out);

}  // namespace hhcn::cli
