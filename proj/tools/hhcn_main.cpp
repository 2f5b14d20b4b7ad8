#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_io.hpp"

namespace {

struct SubcommandSpec {
    CLI::App* app = nullptr;
    std::string name;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure multicast planning toolkit for hierarchical networks"};
    app.require_subcommand(1);

    hhcn::cli::Options options;
    std::string input_path;

    auto add_common = [&](CLI::App* sub, bool dot_allowed) {
        sub->add_option("--input", input_path, "Input JSON file")->required();
        const std::string formats = dot_allowed ? "json,dot,text" : "json,text";
        sub->add_option("--format", options.format, "Output format (" + formats + ")")
            ->default_val("text")
            ->check(dot_allowed ? CLI::IsMember({"json", "dot", "text"})
                                : CLI::IsMember({"json", "text"}));
        return sub;
    };
    auto add_seeded = [&](CLI::App* sub) {
        sub->add_option("--seed", options.seed, "Monte Carlo seed")->default_val(0);
        sub->add_option("--trials", options.trials, "Monte Carlo trials")->default_val(100000);
        return sub;
    };

    std::vector<SubcommandSpec> specs;

    CLI::App* tree_stats = app.add_subcommand(
        "tree-stats", "Leader probabilities and path reliability for a complete D-ary tree");
    add_seeded(add_common(tree_stats, false));
    tree_stats->add_option("--mode", options.mode, "Level-probability denominator (paper|exact)")
        ->default_val("paper")
        ->check(CLI::IsMember({"paper", "exact"}));
    specs.push_back({tree_stats, "tree-stats"});

    CLI::App* plan_tree = app.add_subcommand(
        "plan-tree", "Optimal prefix-free leader paths in a D-ary tree (Huffman depths)");
    add_common(plan_tree, true);
    specs.push_back({plan_tree, "plan-tree"});

    CLI::App* plan_graph = app.add_subcommand(
        "plan-graph", "Doubly optimal multicast plan: MST, binary embedding, leader placement");
    add_common(plan_graph, true);
    specs.push_back({plan_graph, "plan-graph"});

    CLI::App* gossip = app.add_subcommand(
        "gossip", "Level-controlled gossip simulation over a sensor field");
    add_seeded(add_common(gossip, false));
    specs.push_back({gossip, "gossip"});

    CLI::App* fuse = app.add_subcommand(
        "fuse", "Fault-tolerant interval fusion (m, omega, n, s functions)");
    add_common(fuse, false);
    fuse->add_option("--seed", options.seed, "Lipschitz probe seed")->default_val(0);
    fuse->add_option("--function", options.function, "Fusion function (m|omega|n|s|all)")
        ->default_val("all")
        ->check(CLI::IsMember({"m", "omega", "n", "s", "all"}));
    specs.push_back({fuse, "fuse"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
    }

    for (const auto& spec : specs) {
        if (spec.app->parsed()) {
            return hhcn::cli::dispatch(spec.name, input_path, options, std::cout);
        }
    }
    return 1;
}
