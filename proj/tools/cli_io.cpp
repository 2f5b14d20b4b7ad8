#include "cli_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "hhcn/dary_tree.hpp"
#include "hhcn/errors.hpp"
#include "hhcn/fusion.hpp"
#include "hhcn/gossip.hpp"
#include "hhcn/multicast.hpp"
#include "hhcn/prefix_code.hpp"
#include "hhcn/rational.hpp"

namespace hhcn::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::string rational_text(const Rational& r) {
    return to_string(r) + " (~" + fmt_double(to_double(r)) + ")";
}

json bigint_to_json(const BigInt& value) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (value >= lo && value <= hi) return value.convert_to<std::int64_t>();
    return value.str();
}

ordered_json rational_to_json(const Rational& r) {
    ordered_json j;
    j["num"] = bigint_to_json(numerator(r));
    j["den"] = bigint_to_json(denominator(r));
    j["approx"] = to_double(r);
    return j;
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InvalidArgument(std::string("missing required field '") + key + "'");
    }
    return j.at(key);
}

std::int64_t require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) {
        throw InvalidArgument(std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::string require_string(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_string()) {
        throw InvalidArgument(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

double require_number(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) {
        throw InvalidArgument(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

// Rational literals: integer, float (converted exactly), "a/b" string, or
// {"num": .., "den": ..}.
Rational parse_rational(const json& v, const char* what) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return rational_from_double(v.get<double>());
    if (v.is_string()) return rational_from_string(v.get<std::string>());
    if (v.is_object() && v.contains("num") && v.contains("den")) {
        const auto num = v.at("num");
        const auto den = v.at("den");
        if (num.is_number_integer() && den.is_number_integer()) {
            if (den.get<std::int64_t>() == 0) {
                throw InvalidArgument(std::string(what) + ": zero denominator");
            }
            return Rational(num.get<std::int64_t>(), den.get<std::int64_t>());
        }
    }
    throw InvalidArgument(std::string(what) +
                          " must be an integer, float, \"a/b\" string, or {num, den} object");
}

ImportanceProfile parse_profile(const json& j) {
    const json& entries = require(j, "profile");
    if (!entries.is_array()) throw InvalidArgument("'profile' must be an array");
    ImportanceProfile profile;
    for (const auto& entry : entries) {
        ImportanceEntry e;
        e.id = require_string(entry, "id");
        e.importance = parse_rational(require(entry, "p"), "importance 'p'");
        profile.entries.push_back(std::move(e));
    }
    validate_profile(profile);
    return profile;
}

Normalization parse_mode(const std::string& mode) {
    if (mode == "paper") return Normalization::Paper;
    if (mode == "exact") return Normalization::Exact;
    throw InvalidArgument("mode must be 'paper' or 'exact'");
}

void check_format(const Options& options, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (options.format == f) return;
    }
    throw InvalidArgument("output format '" + options.format +
                          "' is not supported by this command");
}

void emit(const ordered_json& report, const Options& options, std::ostream& out,
          const std::string& text) {
    if (options.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        out << text;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// tree-stats

int run_tree_stats(const json& input, const Options& options, std::ostream& out) {
    check_format(options, {"text", "json"});
    parse_mode(options.mode);
    const DaryTree tree(static_cast<int>(require_int(input, "D")),
                        static_cast<int>(require_int(input, "n_max")));

    LeaderCountProfile profile;
    if (input.contains("leaders")) {
        for (const auto& level : input.at("leaders")) {
            profile.levels.push_back({static_cast<int>(require_int(level, "depth")),
                                      require_int(level, "count")});
        }
    }

    ordered_json report;
    report["command"] = "tree-stats";
    report["mode"] = options.mode;
    report["D"] = tree.arity();
    report["n_max"] = tree.max_depth();
    report["node_count"] = bigint_to_json(node_count(tree));
    report["paper_denominator"] = bigint_to_json(pow_int(tree.arity(), tree.max_depth() + 1) - 1);

    std::ostringstream text;
    text << "tree-stats: D = " << tree.arity() << ", n_max = " << tree.max_depth()
         << ", mode = " << options.mode << "\n";
    text << "node count: " << node_count(tree).str() << "\n";

    report["levels"] = ordered_json::array();
    if (!profile.levels.empty()) {
        text << "depth  count  level_size  t_j  p_level(paper)  p_level(exact)\n";
    }
    for (const auto& level : profile.levels) {
        const Rational t = local_leader_fraction(level.count, tree, level.depth);
        const Rational p_paper =
            p_leader_at_level(level.count, level.depth, tree, Normalization::Paper);
        const Rational p_exact =
            p_leader_at_level(level.count, level.depth, tree, Normalization::Exact);
        ordered_json row;
        row["depth"] = level.depth;
        row["count"] = level.count;
        row["nodes_at_depth"] = bigint_to_json(nodes_at_depth(tree, level.depth));
        row["t"] = rational_to_json(t);
        row["p_level_paper"] = rational_to_json(p_paper);
        row["p_level_exact"] = rational_to_json(p_exact);
        report["levels"].push_back(row);
        text << level.depth << "  " << level.count << "  "
             << nodes_at_depth(tree, level.depth).str() << "  " << rational_text(t) << "  "
             << rational_text(p_paper) << "  " << rational_text(p_exact) << "\n";
    }

    const Rational any_paper = p_any_local_leader(profile, tree, Normalization::Paper);
    const Rational any_exact = p_any_local_leader(profile, tree, Normalization::Exact);
    report["p_any_local_leader_paper"] = rational_to_json(any_paper);
    report["p_any_local_leader_exact"] = rational_to_json(any_exact);
    text << "p(any local leader): paper " << rational_text(any_paper) << ", exact "
         << rational_text(any_exact) << "\n";

    if (input.contains("q")) {
        const LinkModel link{parse_rational(input.at("q"), "link failure probability 'q'")};
        ordered_json rel;
        rel["q"] = rational_to_json(link.failure_prob());
        rel["table"] = ordered_json::array();
        text << "reliability: q = " << rational_text(link.failure_prob()) << "\n";
        text << "depth  path_reliability  last_link_failure";
        if (options.trials > 0) text << "  monte_carlo";
        text << "\n";
        for (int depth = 1; depth <= tree.max_depth(); ++depth) {
            const Rational alive = path_reliability(link, depth);
            const Rational last = last_link_failure_prob(link, depth);
            ordered_json row;
            row["depth"] = depth;
            row["path_reliability"] = rational_to_json(alive);
            row["last_link_failure"] = rational_to_json(last);
            text << depth << "  " << rational_text(alive) << "  " << rational_text(last);
            if (options.trials > 0) {
                const double estimate =
                    simulate_path_reliability(link, depth, options.trials, options.seed);
                row["monte_carlo"] = estimate;
                text << "  " << fmt_double(estimate);
            }
            text << "\n";
            rel["table"].push_back(row);
        }
        if (options.trials > 0) {
            rel["trials"] = options.trials;
            rel["seed"] = options.seed;
        }
        report["reliability"] = rel;
    }

    emit(report, options, out, text.str());
    return 0;
}

// ---------------------------------------------------------------------------
// plan-tree

namespace {

std::string dot_node_id(const NodePath& path) {
    if (path.empty()) return "root";
    std::string id = "p";
    for (int digit : path) id += "_" + std::to_string(digit);
    return id;
}

std::string plan_tree_dot(const PrefixPlan& plan, const ImportanceProfile& profile) {
    std::map<std::string, Rational> importance;
    for (const auto& e : profile.entries) importance[e.id] = e.importance;
    std::map<NodePath, std::string> leaves;
    for (const auto& e : plan.entries) leaves[e.path] = e.id;

    std::set<NodePath> nodes;
    nodes.insert(NodePath{});
    for (const auto& e : plan.entries) {
        NodePath prefix;
        for (int digit : e.path) {
            prefix.push_back(digit);
            nodes.insert(prefix);
        }
    }

    std::ostringstream dot;
    dot << "digraph plan {\n  rankdir=TB;\n  node [shape=circle, label=\"\"];\n";
    for (const auto& path : nodes) {
        auto leaf = leaves.find(path);
        if (path.empty()) {
            dot << "  root [shape=doublecircle, label=\"root\"];\n";
        } else if (leaf != leaves.end()) {
            dot << "  " << dot_node_id(path) << " [shape=box, label=\"" << leaf->second << " ("
                << to_string(importance.at(leaf->second)) << ")\\n"
                << path_to_string(path, plan.arity) << "\"];\n";
        }
    }
    for (const auto& path : nodes) {
        if (path.empty()) continue;
        NodePath parent(path.begin(), path.end() - 1);
        dot << "  " << dot_node_id(parent) << " -> " << dot_node_id(path) << " [label=\""
            << path.back() << "\"];\n";
    }
    dot << "}\n";
    return dot.str();
}

}  // namespace

int run_plan_tree(const json& input, const Options& options, std::ostream& out) {
    check_format(options, {"text", "json", "dot"});
    const int arity = static_cast<int>(require_int(input, "D"));
    const ImportanceProfile profile = parse_profile(input);

    const DepthAssignment assignment = optimal_depths(profile, arity);
    const PrefixPlan plan = assign_paths(assignment);
    const Rational mean = expected_depth(assignment, profile);
    const Rational kraft = kraft_sum(assignment);
    const double entropy = entropy_base_d(profile, arity);

    if (options.format == "dot") {
        out << plan_tree_dot(plan, profile);
        return 0;
    }

    std::map<std::string, Rational> importance;
    for (const auto& e : profile.entries) importance[e.id] = e.importance;
    std::map<std::string, int> depth_of;
    for (const auto& e : assignment.entries) depth_of[e.id] = e.depth;

    ordered_json report;
    report["command"] = "plan-tree";
    report["D"] = arity;
    report["assignment"] = ordered_json::array();
    report["paths"] = ordered_json::array();

    std::ostringstream text;
    text << "plan-tree: D = " << arity << "\n";
    text << "leader  importance  depth  path\n";
    for (const auto& e : plan.entries) {  // sorted by leader id
        ordered_json a;
        a["id"] = e.id;
        a["depth"] = depth_of.at(e.id);
        report["assignment"].push_back(a);

        ordered_json p;
        p["id"] = e.id;
        p["path"] = path_to_string(e.path, plan.arity);
        p["digits"] = e.path;
        report["paths"].push_back(p);

        text << e.id << "  " << to_string(importance.at(e.id)) << "  " << depth_of.at(e.id)
             << "  " << path_to_string(e.path, plan.arity) << "\n";
    }
    report["expected_depth"] = rational_to_json(mean);
    report["entropy"] = entropy;
    report["kraft_sum"] = rational_to_json(kraft);
    text << "expected depth: " << rational_text(mean) << "\n";
    text << "entropy bound: " << fmt_double(entropy) << "\n";
    text << "kraft sum: " << rational_text(kraft) << "\n";

    emit(report, options, out, text.str());
    return 0;
}

// ---------------------------------------------------------------------------
// plan-graph

namespace {

WeightedGraph parse_graph(const json& input) {
    const json& vertex_list = require(input, "vertices");
    if (!vertex_list.is_array()) throw InvalidArgument("'vertices' must be an array");
    std::vector<std::string> vertices;
    for (const auto& v : vertex_list) {
        if (!v.is_string()) throw InvalidArgument("vertex ids must be strings");
        vertices.push_back(v.get<std::string>());
    }
    const json& edge_list = require(input, "edges");
    if (!edge_list.is_array()) throw InvalidArgument("'edges' must be an array");
    std::vector<WeightedEdge> edges;
    for (const auto& e : edge_list) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
            !e[2].is_number()) {
            throw InvalidArgument("each edge must be [\"u\", \"v\", weight]");
        }
        edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<double>()});
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
}

std::string plan_graph_dot(const DoublyOptimalPlan& plan, const EmbeddedBinaryTree& embedded,
                           const WeightedGraph& graph) {
    std::map<std::string, const Placement*> leader_at;
    for (const auto& p : plan.placements) leader_at[p.vertex] = &p;
    std::set<std::pair<std::string, std::string>> embedded_edges;
    for (const auto& [v, children] : embedded.children) {
        for (const auto& c : children) {
            embedded_edges.insert(v < c ? std::make_pair(v, c) : std::make_pair(c, v));
        }
    }
    std::set<std::string> uncovered(embedded.uncovered.begin(), embedded.uncovered.end());

    std::ostringstream dot;
    dot << "graph mst {\n  node [shape=circle];\n";
    for (const auto& v : graph.vertices()) {
        dot << "  \"" << v << "\"";
        if (v == plan.root) {
            dot << " [shape=doublecircle]";
        } else if (auto it = leader_at.find(v); it != leader_at.end()) {
            dot << " [style=filled, label=\"" << v << "\\n" << it->second->leader << " ("
                << to_string(it->second->importance) << ")\"]";
        } else if (uncovered.count(v)) {
            dot << " [color=gray]";
        }
        dot << ";\n";
    }
    for (const auto& e : plan.mst.edges) {
        dot << "  \"" << e.u << "\" -- \"" << e.v << "\" [label=\"" << fmt_double(e.weight)
            << "\"";
        if (!embedded_edges.count({e.u, e.v})) dot << ", style=dashed";
        dot << "];\n";
    }
    dot << "}\n";
    return dot.str();
}

}  // namespace

int run_plan_graph(const json& input, const Options& options, std::ostream& out) {
    check_format(options, {"text", "json", "dot"});
    const WeightedGraph graph = parse_graph(input);
    const std::string root = require_string(input, "root");
    const ImportanceProfile profile = parse_profile(input);

    const DoublyOptimalPlan plan = plan_doubly_optimal(graph, root, profile);
    const EmbeddedBinaryTree embedded =
        embed_binary_tree(root_tree(graph, plan.mst, root), graph);

    if (options.format == "dot") {
        out << plan_graph_dot(plan, embedded, graph);
        return 0;
    }

    ordered_json report;
    report["command"] = "plan-graph";
    report["root"] = root;
    report["mst"] = ordered_json::object();
    report["mst"]["edges"] = ordered_json::array();
    for (const auto& e : plan.mst.edges) {
        report["mst"]["edges"].push_back(ordered_json{{"u", e.u}, {"v", e.v}, {"w", e.weight}});
    }
    report["mst"]["total_weight"] = plan.mst.total_weight;

    report["embedded"] = ordered_json::object();
    report["embedded"]["children"] = ordered_json::object();
    for (const auto& [v, children] : embedded.children) {
        if (!children.empty()) report["embedded"]["children"][v] = children;
    }
    report["embedded"]["uncovered"] = embedded.uncovered;

    report["placements"] = ordered_json::array();
    for (const auto& p : plan.placements) {
        ordered_json row;
        row["leader"] = p.leader;
        row["importance"] = rational_to_json(p.importance);
        row["vertex"] = p.vertex;
        row["path"] = p.path;
        row["depth"] = p.depth;
        report["placements"].push_back(row);
    }
    report["realized_expected_depth"] = rational_to_json(plan.realized_expected_depth);
    report["ideal_expected_depth"] = rational_to_json(plan.ideal_expected_depth);

    std::ostringstream text;
    text << "plan-graph: root = " << root << "\n";
    text << "mst weight: " << fmt_double(plan.mst.total_weight) << "\n";
    text << "mst edges:";
    for (const auto& e : plan.mst.edges) {
        text << " " << e.u << "-" << e.v << "(" << fmt_double(e.weight) << ")";
    }
    text << "\n";
    if (!embedded.uncovered.empty()) {
        text << "uncovered by embedding:";
        for (const auto& v : embedded.uncovered) text << " " << v;
        text << "\n";
    }
    text << "leader  importance  vertex  depth  path\n";
    for (const auto& p : plan.placements) {
        text << p.leader << "  " << to_string(p.importance) << "  " << p.vertex << "  "
             << p.depth << "  ";
        for (std::size_t i = 0; i < p.path.size(); ++i) {
            if (i) text << ">";
            text << p.path[i];
        }
        text << "\n";
    }
    text << "realized expected depth: " << rational_text(plan.realized_expected_depth) << "\n";
    text << "ideal expected depth: " << rational_text(plan.ideal_expected_depth) << "\n";

    emit(report, options, out, text.str());
    return 0;
}

// ---------------------------------------------------------------------------
// gossip

int run_gossip(const json& input, const Options& options, std::ostream& out) {
    check_format(options, {"text", "json"});
    const json& node_list = require(input, "nodes");
    if (!node_list.is_array()) throw InvalidArgument("'nodes' must be an array");
    std::vector<FieldNode> nodes;
    for (const auto& n : node_list) {
        nodes.push_back({require_string(n, "id"), require_number(n, "x"),
                         require_number(n, "y")});
    }
    const json& bs = require(input, "base_station");
    double bs_x = 0.0;
    double bs_y = 0.0;
    if (bs.is_array() && bs.size() == 2 && bs[0].is_number() && bs[1].is_number()) {
        bs_x = bs[0].get<double>();
        bs_y = bs[1].get<double>();
    } else if (bs.is_object()) {
        bs_x = require_number(bs, "x");
        bs_y = require_number(bs, "y");
    } else {
        throw InvalidArgument("'base_station' must be [x, y] or {x, y}");
    }
    const Field field(std::move(nodes), bs_x, bs_y, require_number(input, "radius"));

    const json& prob_list = require(input, "probabilities");
    if (!prob_list.is_array()) throw InvalidArgument("'probabilities' must be an array");
    std::vector<double> probabilities;
    for (const auto& p : prob_list) {
        if (!p.is_number()) throw InvalidArgument("'probabilities' entries must be numbers");
        probabilities.push_back(p.get<double>());
    }
    const GossipConfig config(probabilities);
    const std::string origin = require_string(input, "origin");

    int sectors = 8;
    if (input.contains("sectors")) sectors = static_cast<int>(require_int(input, "sectors"));
    std::int64_t trace_trials = 0;
    if (input.contains("trace_trials")) trace_trials = require_int(input, "trace_trials");

    const Leveling leveling = assign_levels(field);
    const Sectoring sectoring = assign_sectors(field, sectors);

    std::vector<TraceHop> hops;
    TraceSink sink;
    if (trace_trials > 0) {
        sink = [&hops, trace_trials](const TraceHop& hop) {
            if (hop.trial < trace_trials) hops.push_back(hop);
        };
    }
    const SimReport sim =
        simulate_gossip(field, leveling, config, origin, options.trials, options.seed, sink);

    ordered_json report;
    report["command"] = "gossip";
    report["origin"] = origin;
    report["origin_level"] = leveling.level.at(origin);
    report["trials"] = sim.trials;
    report["seed"] = sim.seed;
    report["delivery_probability"] = sim.delivery_probability;
    report["mean_transmissions"] = sim.mean_transmissions;
    report["sectors"] = sectors;
    report["localization"] = ordered_json::array();
    for (const auto& n : field.nodes()) {
        if (!leveling.level.count(n.id)) continue;
        const auto [level, sector] = locate(n.id, leveling, sectoring);
        report["localization"].push_back(
            ordered_json{{"id", n.id}, {"level", level}, {"sector", sector}});
    }
    report["unreachable"] = leveling.unreachable;
    if (trace_trials > 0) {
        report["trace"] = ordered_json::array();
        for (const auto& hop : hops) {
            report["trace"].push_back(ordered_json{{"trial", hop.trial},
                                                   {"from", hop.sender},
                                                   {"from_level", hop.sender_level},
                                                   {"to", hop.receiver},
                                                   {"to_level", hop.receiver_level}});
        }
    }

    std::ostringstream text;
    text << "gossip: origin = " << origin << " (level " << leveling.level.at(origin)
         << "), trials = " << sim.trials << ", seed = " << sim.seed << "\n";
    text << "delivery probability: " << fmt_double(sim.delivery_probability) << "\n";
    text << "mean transmissions: " << fmt_double(sim.mean_transmissions) << "\n";
    text << "node  level  sector\n";
    for (const auto& n : field.nodes()) {
        if (!leveling.level.count(n.id)) continue;
        const auto [level, sector] = locate(n.id, leveling, sectoring);
        text << n.id << "  " << level << "  " << sector << "\n";
    }
    if (!leveling.unreachable.empty()) {
        text << "unreachable:";
        for (const auto& id : leveling.unreachable) text << " " << id;
        text << "\n";
    }
    for (const auto& hop : hops) {
        text << "trace trial=" << hop.trial << " " << hop.sender << "(L" << hop.sender_level
             << ") -> " << hop.receiver << "(L" << hop.receiver_level << ")\n";
    }

    emit(report, options, out, text.str());
    return 0;
}

// ---------------------------------------------------------------------------
// fuse

namespace {

ordered_json interval_to_json(const Interval& iv) {
    return ordered_json{{"lo", iv.lo}, {"hi", iv.hi}};
}

std::string interval_text(const Interval& iv) {
    return "[" + fmt_double(iv.lo) + ", " + fmt_double(iv.hi) + "]";
}

}  // namespace

int run_fuse(const json& input, const Options& options, std::ostream& out) {
    check_format(options, {"text", "json"});
    const json& interval_list = require(input, "intervals");
    if (!interval_list.is_array()) throw InvalidArgument("'intervals' must be an array");
    std::vector<Interval> intervals;
    for (const auto& entry : interval_list) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
            throw InvalidArgument("each interval must be [lo, hi]");
        }
        intervals.push_back(make_interval(entry[0].get<double>(), entry[1].get<double>()));
    }
    const FusionProblem problem(std::move(intervals), static_cast<int>(require_int(input, "f")));

    const std::string& selector = options.function;
    if (selector != "m" && selector != "omega" && selector != "n" && selector != "s" &&
        selector != "all") {
        throw InvalidArgument("function must be one of m, omega, n, s, all");
    }
    const bool all = selector == "all";

    ordered_json report;
    report["command"] = "fuse";
    report["n"] = problem.n();
    report["f"] = problem.f();
    report["threshold"] = problem.threshold();
    report["function"] = selector;
    report["results"] = ordered_json::object();

    std::ostringstream text;
    text << "fuse: n = " << problem.n() << ", f = " << problem.f()
         << ", overlap threshold = " << problem.threshold() << "\n";

    bool failed = false;
    auto guard = [&](const char* name, auto&& compute) {
        try {
            compute();
        } catch (const ComputeError& e) {
            report["results"][name] = ordered_json{{"error", e.kind()}, {"message", e.what()}};
            text << name << ": error " << e.kind() << ": " << e.what() << "\n";
            failed = true;
        }
    };

    if (all || selector == "m") {
        guard("m", [&] {
            const Interval m = m_function(problem);
            ordered_json j = interval_to_json(m);
            j["rule"] = "hull of points with overlap >= " + std::to_string(problem.threshold());
            report["results"]["m"] = j;
            text << "m: " << interval_text(m) << "\n";
        });
    }
    if (all || selector == "omega") {
        guard("omega", [&] {
            const OverlapProfile profile = omega_function(problem);
            ordered_json j;
            j["breakpoints"] = profile.breakpoints;
            j["counts"] = profile.counts;
            j["rule"] = "piecewise overlap counts over 2m+1 regions";
            report["results"]["omega"] = j;
            text << "omega breakpoints:";
            for (double b : profile.breakpoints) text << " " << fmt_double(b);
            text << "\nomega counts:";
            for (int c : profile.counts) text << " " << c;
            text << "\n";
        });
    }
    if (all || selector == "n") {
        guard("n", [&] {
            const auto regions = n_function(problem);
            ordered_json list = ordered_json::array();
            for (const auto& r : regions) list.push_back(interval_to_json(r));
            report["results"]["n"] =
                ordered_json{{"regions", list},
                             {"rule", "maximal regions with overlap >= " +
                                          std::to_string(problem.threshold())}};
            text << "n:";
            for (const auto& r : regions) text << " " << interval_text(r);
            text << "\n";
        });
    }
    if (all || selector == "s") {
        guard("s", [&] {
            const Interval s = s_function(problem);
            ordered_json j = interval_to_json(s);
            j["rule"] = std::to_string(problem.f() + 1) + "-th largest left endpoint to " +
                        std::to_string(problem.f() + 1) + "-th smallest right endpoint";
            report["results"]["s"] = j;
            text << "s: " << interval_text(s) << "\n";
        });
    }

    if (input.contains("probe")) {
        const json& probe = input.at("probe");
        const double epsilon = require_number(probe, "epsilon");
        int probes = 100;
        if (probe.contains("probes")) probes = static_cast<int>(require_int(probe, "probes"));
        ordered_json displacement = ordered_json::object();
        text << "lipschitz probe: epsilon = " << fmt_double(epsilon) << ", probes = " << probes
             << ", seed = " << options.seed << "\n";
        const std::vector<std::pair<std::string, FusionFn>> fns = {{"m", FusionFn::M},
                                                                   {"omega", FusionFn::Omega},
                                                                   {"n", FusionFn::N},
                                                                   {"s", FusionFn::S}};
        for (const auto& [name, fn] : fns) {
            if (!all && selector != name) continue;
            try {
                const double moved = lipschitz_probe(fn, problem, epsilon, probes, options.seed);
                displacement[name] = moved;
                text << "  " << name << ": max displacement " << fmt_double(moved) << "\n";
            } catch (const ComputeError& e) {
                displacement[name] = ordered_json{{"error", e.kind()}};
                text << "  " << name << ": error " << e.kind() << "\n";
            }
        }
        report["lipschitz"] = ordered_json{{"epsilon", epsilon},
                                           {"probes", probes},
                                           {"seed", options.seed},
                                           {"displacement", displacement}};
    }

    emit(report, options, out, text.str());
    return failed ? 3 : 0;
}

// ---------------------------------------------------------------------------
// dispatch

namespace {

int emit_error(const Error& error, const Options& options, std::ostream& out, int code) {
    if (options.format == "json") {
        ordered_json j;
        j["error"] = ordered_json{{"kind", error.kind()}, {"message", error.what()}};
        out << j.dump(2) << "\n";
    } else {
        out << "error: " << error.kind() << ": " << error.what() << "\n";
    }
    return code;
}

}  // namespace

int dispatch(const std::string& command, const std::string& input_path, const Options& options,
             std::ostream& out) {
    json input;
    {
        std::ifstream file(input_path);
        if (!file) {
            return emit_error(InvalidArgument("cannot open input file '" + input_path + "'"),
                              options, out, 2);
        }
        try {
            input = json::parse(file);
        } catch (const json::exception& e) {
            return emit_error(InvalidArgument(std::string("malformed JSON: ") + e.what()),
                              options, out, 2);
        }
    }
    try {
        if (command == "tree-stats") return run_tree_stats(input, options, out);
        if (command == "plan-tree") return run_plan_tree(input, options, out);
        if (command == "plan-graph") return run_plan_graph(input, options, out);
        if (command == "gossip") return run_gossip(input, options, out);
        if (command == "fuse") return run_fuse(input, options, out);
        return emit_error(InvalidArgument("unknown command '" + command + "'"), options, out, 1);
    } catch (const InputError& e) {
        return emit_error(e, options, out, 2);
    } catch (const ComputeError& e) {
        return emit_error(e, options, out, 3);
    } catch (const json::exception& e) {
        return emit_error(InvalidArgument(std::string("malformed input: ") + e.what()), options,
                          out, 2);
    } catch (const std::exception& e) {
        return emit_error(ComputeError("InternalError", e.what()), options, out, 3);
    }
}

}  // namespace hhcn::cli
