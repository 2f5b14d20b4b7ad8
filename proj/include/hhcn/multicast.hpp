#pragma once

#include <map>
#include <string>
#include <vector>

#include "hhcn/prefix_code.hpp"
#include "hhcn/rational.hpp"

namespace hhcn {

struct WeightedEdge {
    std::string u;
    std::string v;
    double weight = 0.0;
};

// Undirected weighted graph; no self loops, no parallel edges. Edge
// endpoints are normalized so that u < v.
class WeightedGraph {
public:
    WeightedGraph(std::vector<std::string> vertices, std::vector<WeightedEdge> edges);

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
    bool has_vertex(const std::string& id) const;

private:
    std::vector<std::string> vertices_;  // sorted
    std::vector<WeightedEdge> edges_;    // sorted by (weight, u, v)
};

struct MstResult {
    std::vector<WeightedEdge> edges;  // in the deterministic pick order
    double total_weight = 0.0;
};

struct RootedSpanningTree {
    std::string root;
    std::map<std::string, std::string> parent;  // all vertices except root
    std::map<std::string, int> depth;           // hop count from root
    double total_weight = 0.0;
};

// Spanning tree pruned so every vertex keeps at most two children; vertices
// cut away by pruning are reported as uncovered.
struct EmbeddedBinaryTree {
    std::string root;
    std::map<std::string, std::vector<std::string>> children;
    std::map<std::string, int> depth;
    std::vector<std::string> uncovered;
};

struct Placement {
    std::string leader;
    Rational importance;
    std::string vertex;
    std::vector<std::string> path;  // vertex sequence from the root, inclusive
    int depth = 0;
};

// Leader placement on the embedded binary tree of the MST: leader vertices
// form an antichain (no leader on another's root path), expected depth is
// minimal over all antichain placements.
struct DoublyOptimalPlan {
    std::string root;
    MstResult mst;
    std::vector<Placement> placements;
    Rational realized_expected_depth;
    Rational ideal_expected_depth;  // unconstrained binary Huffman bound
};

// Kruskal with total edge order (weight, u, v); throws Disconnected.
MstResult minimum_spanning_tree(const WeightedGraph& graph);

// Orients the MST away from the root; depths are hop counts.
RootedSpanningTree root_tree(const WeightedGraph& graph, const MstResult& mst,
                             const std::string& root);

// Keeps, per vertex, the two children with the smallest (edge weight, child
// id); pruned subtrees are reported uncovered.
EmbeddedBinaryTree embed_binary_tree(const RootedSpanningTree& tree, const WeightedGraph& graph);

// MST + embedding + exact antichain placement for the importance profile.
DoublyOptimalPlan plan_doubly_optimal(const WeightedGraph& graph, const std::string& root,
                                      const ImportanceProfile& profile);

// Recomputes the pipeline and checks the plan against it: paths lie in the
// MST, leader vertices form an antichain, metrics recompute exactly.
bool verify_plan(const DoublyOptimalPlan& plan, const WeightedGraph& graph);

}  // namespace hhcn
