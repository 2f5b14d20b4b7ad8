#include "hhcn/multicast.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "hhcn/errors.hpp"

namespace hhcn {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

std::pair<std::string, std::string> edge_key(const WeightedEdge& e) {
    return {e.u, e.v};
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<std::string> vertices, std::vector<WeightedEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (vertices_.empty()) throw InvalidArgument("graph must contain at least one vertex");
    for (const std::string& v : vertices_) {
        if (v.empty()) throw InvalidArgument("vertex ids must be nonempty");
    }
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
        throw InvalidArgument("duplicate vertex id");
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (WeightedEdge& e : edges_) {
        if (!has_vertex(e.u) || !has_vertex(e.v)) {
            throw InvalidArgument("edge endpoint not in vertex set: " + e.u + "-" + e.v);
        }
        if (e.u == e.v) throw InvalidArgument("self loop at '" + e.u + "'");
        if (!(e.weight > 0.0)) {
            throw InvalidArgument("edge weight must be positive: " + e.u + "-" + e.v);
        }
        if (e.v < e.u) std::swap(e.u, e.v);
        if (!seen.insert(edge_key(e)).second) {
            throw InvalidArgument("parallel edge " + e.u + "-" + e.v);
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
}

bool WeightedGraph::has_vertex(const std::string& id) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), id);
}

MstResult minimum_spanning_tree(const WeightedGraph& graph) {
    std::map<std::string, int> index;
    for (const std::string& v : graph.vertices()) {
        index.emplace(v, static_cast<int>(index.size()));
    }
    DisjointSet dsu(static_cast<int>(index.size()));
    MstResult result;
    for (const WeightedEdge& e : graph.edges()) {  // already in (weight, u, v) order
        if (dsu.unite(index.at(e.u), index.at(e.v))) {
            result.edges.push_back(e);
            result.total_weight += e.weight;
        }
    }
    if (result.edges.size() + 1 != graph.vertices().size()) {
        throw Disconnected("graph is not connected; spanning tree covers only " +
                           std::to_string(result.edges.size() + 1) + " of " +
                           std::to_string(graph.vertices().size()) + " vertices");
    }
    return result;
}

RootedSpanningTree root_tree(const WeightedGraph& graph, const MstResult& mst,
                             const std::string& root) {
    if (!graph.has_vertex(root)) {
        throw RootNotInGraph("root vertex '" + root + "' not in graph");
    }
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const WeightedEdge& e : mst.edges) {
        adjacency[e.u].push_back(e.v);
        adjacency[e.v].push_back(e.u);
    }
    for (auto& [v, neighbors] : adjacency) std::sort(neighbors.begin(), neighbors.end());

    RootedSpanningTree tree;
    tree.root = root;
    tree.total_weight = mst.total_weight;
    tree.depth[root] = 0;
    std::vector<std::string> frontier{root};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const std::string& v : frontier) {
            for (const std::string& w : adjacency[v]) {
                if (tree.depth.count(w)) continue;
                tree.depth[w] = tree.depth[v] + 1;
                tree.parent[w] = v;
                next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    return tree;
}

EmbeddedBinaryTree embed_binary_tree(const RootedSpanningTree& tree, const WeightedGraph& graph) {
    std::map<std::pair<std::string, std::string>, double> weight_of;
    for (const WeightedEdge& e : graph.edges()) weight_of[edge_key(e)] = e.weight;
    auto edge_weight = [&](const std::string& a, const std::string& b) {
        return weight_of.at(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    };

    std::map<std::string, std::vector<std::string>> child_lists;
    for (const auto& [child, parent] : tree.parent) child_lists[parent].push_back(child);

    EmbeddedBinaryTree embedded;
    embedded.root = tree.root;
    embedded.depth[tree.root] = 0;
    std::set<std::string> pruned_roots;
    // Walk by increasing depth so a vertex is processed after its parent.
    std::vector<std::string> order;
    for (const auto& [v, d] : tree.depth) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        if (tree.depth.at(a) != tree.depth.at(b)) return tree.depth.at(a) < tree.depth.at(b);
        return a < b;
    });
    for (const std::string& v : order) {
        if (!embedded.depth.count(v)) continue;  // below a pruned edge
        auto it = child_lists.find(v);
        if (it == child_lists.end()) continue;
        std::vector<std::string> kept = it->second;
        std::sort(kept.begin(), kept.end(), [&](const std::string& a, const std::string& b) {
            const double wa = edge_weight(v, a);
            const double wb = edge_weight(v, b);
            if (wa != wb) return wa < wb;
            return a < b;
        });
        if (kept.size() > 2) kept.resize(2);
        std::sort(kept.begin(), kept.end());
        for (const std::string& c : kept) embedded.depth[c] = embedded.depth.at(v) + 1;
        embedded.children[v] = std::move(kept);
    }
    for (const auto& [v, d] : tree.depth) {
        if (!embedded.depth.count(v)) embedded.uncovered.push_back(v);
    }
    std::sort(embedded.uncovered.begin(), embedded.uncovered.end());
    return embedded;
}

namespace {

// Exact placement search. For a fixed leader count k in a subtree, the
// contribution of a depth multiset to the final cost depends on how its
// depths interleave with the rest of the tree, so a scalar best-cost memo is
// not sound. Instead each (vertex, k) keeps every depth multiset that is
// Pareto-minimal under prefix-sum dominance: sorted vector A dominates B
// when every prefix sum of A is <= the matching prefix sum of B, which
// guarantees A costs no more than B for every importance profile.
struct Candidate {
    std::vector<int> depths;  // sorted ascending
    enum Kind { Empty, LeafHere, Pass, Split } kind = Empty;
    int left_k = 0;
    int left_idx = -1;
    int right_idx = -1;
};

using KTable = std::vector<std::vector<Candidate>>;  // k -> candidates

bool dominates(const std::vector<int>& a, const std::vector<int>& b) {
    long long sum_a = 0;
    long long sum_b = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        sum_a += a[j];
        sum_b += b[j];
        if (sum_a > sum_b) return false;
    }
    return true;
}

void prune(std::vector<Candidate>& candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.depths < b.depths; });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return a.depths == b.depths;
                                 }),
                     candidates.end());
    // Mark everything first; moving survivors out earlier would corrupt the
    // vectors later iterations still compare against.
    std::vector<char> dominated(candidates.size(), 0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = 0; j < candidates.size() && !dominated[i]; ++j) {
            if (i != j && dominates(candidates[j].depths, candidates[i].depths) &&
                candidates[j].depths != candidates[i].depths) {
                dominated[i] = 1;
            }
        }
    }
    std::vector<Candidate> kept;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!dominated[i]) kept.push_back(std::move(candidates[i]));
    }
    candidates = std::move(kept);
}

std::vector<int> merge_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

class PlacementSearch {
public:
    PlacementSearch(const EmbeddedBinaryTree& tree, int max_leaders)
        : tree_(tree), max_leaders_(max_leaders) {
        for (const auto& [v, d] : tree.depth) ids_.push_back(v);
        std::sort(ids_.begin(), ids_.end());
        tables_.resize(ids_.size());
        solve(tree.root);
    }

    const KTable& root_table() const { return tables_[index_of(tree_.root)]; }

    void collect(const std::string& vertex, int k, int candidate_idx,
                 std::vector<std::string>& out) const {
        const Candidate& c = tables_[index_of(vertex)][static_cast<std::size_t>(k)]
                                    [static_cast<std::size_t>(candidate_idx)];
        const auto children = children_of(vertex);
        switch (c.kind) {
            case Candidate::Empty:
                break;
            case Candidate::LeafHere:
                out.push_back(vertex);
                break;
            case Candidate::Pass:
                collect(children[0], k, c.left_idx, out);
                break;
            case Candidate::Split:
                collect(children[0], c.left_k, c.left_idx, out);
                collect(children[1], k - c.left_k, c.right_idx, out);
                break;
        }
    }

private:
    std::size_t index_of(const std::string& v) const {
        return static_cast<std::size_t>(
            std::lower_bound(ids_.begin(), ids_.end(), v) - ids_.begin());
    }

    std::vector<std::string> children_of(const std::string& v) const {
        auto it = tree_.children.find(v);
        return it == tree_.children.end() ? std::vector<std::string>{} : it->second;
    }

    void solve(const std::string& v) {
        const auto children = children_of(v);
        for (const std::string& c : children) solve(c);

        KTable table(static_cast<std::size_t>(max_leaders_) + 1);
        table[0].push_back(Candidate{{}, Candidate::Empty, 0, -1, -1});
        if (children.size() == 1) {
            const KTable& sub = tables_[index_of(children[0])];
            for (int k = 1; k <= max_leaders_; ++k) {
                for (std::size_t i = 0; i < sub[static_cast<std::size_t>(k)].size(); ++i) {
                    table[static_cast<std::size_t>(k)].push_back(
                        Candidate{sub[static_cast<std::size_t>(k)][i].depths, Candidate::Pass, 0,
                                  static_cast<int>(i), -1});
                }
            }
        } else if (children.size() == 2) {
            const KTable& left = tables_[index_of(children[0])];
            const KTable& right = tables_[index_of(children[1])];
            for (int k = 1; k <= max_leaders_; ++k) {
                for (int a = 0; a <= k; ++a) {
                    const auto& la = left[static_cast<std::size_t>(a)];
                    const auto& rb = right[static_cast<std::size_t>(k - a)];
                    for (std::size_t i = 0; i < la.size(); ++i) {
                        for (std::size_t j = 0; j < rb.size(); ++j) {
                            table[static_cast<std::size_t>(k)].push_back(
                                Candidate{merge_sorted(la[i].depths, rb[j].depths),
                                          Candidate::Split, a, static_cast<int>(i),
                                          static_cast<int>(j)});
                        }
                    }
                }
            }
        }
        if (v != tree_.root) {
            table[1].push_back(
                Candidate{{tree_.depth.at(v)}, Candidate::LeafHere, 0, -1, -1});
        }
        for (auto& bucket : table) prune(bucket);
        tables_[index_of(v)] = std::move(table);
    }

    const EmbeddedBinaryTree& tree_;
    int max_leaders_;
    std::vector<std::string> ids_;
    std::vector<KTable> tables_;
};

std::vector<std::string> path_from_root(const RootedSpanningTree& tree, const std::string& v) {
    std::vector<std::string> path{v};
    std::string cur = v;
    while (cur != tree.root) {
        cur = tree.parent.at(cur);
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

DoublyOptimalPlan plan_doubly_optimal(const WeightedGraph& graph, const std::string& root,
                                      const ImportanceProfile& profile) {
    validate_profile(profile);
    const MstResult mst = minimum_spanning_tree(graph);
    const RootedSpanningTree rooted = root_tree(graph, mst, root);
    const EmbeddedBinaryTree embedded = embed_binary_tree(rooted, graph);

    const int m = static_cast<int>(profile.entries.size());
    const int slots = static_cast<int>(embedded.depth.size()) - 1;
    if (m > slots) {
        throw Infeasible("profile names " + std::to_string(m) + " leaders but the embedded tree" +
                         " offers only " + std::to_string(slots) + " non-root vertices");
    }

    PlacementSearch search(embedded, m);
    const auto& options = search.root_table()[static_cast<std::size_t>(m)];
    if (options.empty()) {
        throw Infeasible("embedded tree admits no antichain of size " + std::to_string(m));
    }

    std::vector<ImportanceEntry> ranked(profile.entries.begin(), profile.entries.end());
    std::sort(ranked.begin(), ranked.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
        if (a.importance != b.importance) return a.importance > b.importance;
        return a.id < b.id;
    });
    auto cost_of = [&](const std::vector<int>& depths) {
        Rational cost = 0;
        for (int i = 0; i < m; ++i) {
            cost += ranked[static_cast<std::size_t>(i)].importance *
                    depths[static_cast<std::size_t>(i)];
        }
        return cost;
    };

    int best = 0;
    Rational best_cost = cost_of(options[0].depths);
    for (std::size_t i = 1; i < options.size(); ++i) {
        const Rational cost = cost_of(options[i].depths);
        if (cost < best_cost) {
            best_cost = cost;
            best = static_cast<int>(i);
        }
    }

    std::vector<std::string> chosen;
    search.collect(embedded.root, m, best, chosen);
    std::sort(chosen.begin(), chosen.end(), [&](const std::string& a, const std::string& b) {
        if (embedded.depth.at(a) != embedded.depth.at(b)) {
            return embedded.depth.at(a) < embedded.depth.at(b);
        }
        return a < b;
    });

    DoublyOptimalPlan plan;
    plan.root = root;
    plan.mst = mst;
    plan.realized_expected_depth = 0;
    for (int i = 0; i < m; ++i) {
        Placement placement;
        placement.leader = ranked[static_cast<std::size_t>(i)].id;
        placement.importance = ranked[static_cast<std::size_t>(i)].importance;
        placement.vertex = chosen[static_cast<std::size_t>(i)];
        placement.path = path_from_root(rooted, placement.vertex);
        placement.depth = embedded.depth.at(placement.vertex);
        plan.realized_expected_depth += placement.importance * placement.depth;
        plan.placements.push_back(std::move(placement));
    }
    std::sort(plan.placements.begin(), plan.placements.end(),
              [](const Placement& a, const Placement& b) { return a.leader < b.leader; });
    plan.ideal_expected_depth = expected_depth(optimal_depths(profile, 2), profile);
    return plan;
}

bool verify_plan(const DoublyOptimalPlan& plan, const WeightedGraph& graph) {
    try {
        const MstResult mst = minimum_spanning_tree(graph);
        if (mst.edges.size() != plan.mst.edges.size()) return false;
        for (std::size_t i = 0; i < mst.edges.size(); ++i) {
            if (edge_key(mst.edges[i]) != edge_key(plan.mst.edges[i])) return false;
            if (mst.edges[i].weight != plan.mst.edges[i].weight) return false;
        }
        if (mst.total_weight != plan.mst.total_weight) return false;

        const RootedSpanningTree rooted = root_tree(graph, mst, plan.root);
        const EmbeddedBinaryTree embedded = embed_binary_tree(rooted, graph);

        std::set<std::pair<std::string, std::string>> mst_edges;
        for (const WeightedEdge& e : mst.edges) mst_edges.insert(edge_key(e));

        if (plan.placements.empty()) return false;
        std::set<std::string> leaders;
        std::set<std::string> vertices;
        ImportanceProfile profile;
        Rational realized = 0;
        for (const Placement& p : plan.placements) {
            if (!leaders.insert(p.leader).second) return false;
            if (!vertices.insert(p.vertex).second) return false;
            if (!embedded.depth.count(p.vertex)) return false;
            if (embedded.depth.at(p.vertex) != p.depth) return false;
            if (p.path != path_from_root(rooted, p.vertex)) return false;
            for (std::size_t i = 0; i + 1 < p.path.size(); ++i) {
                const std::string& a = p.path[i];
                const std::string& b = p.path[i + 1];
                if (!mst_edges.count(a < b ? std::make_pair(a, b) : std::make_pair(b, a))) {
                    return false;
                }
            }
            profile.entries.push_back({p.leader, p.importance});
            realized += p.importance * p.depth;
        }
        validate_profile(profile);

        // Antichain: no placement vertex on the root path of another.
        for (const Placement& p : plan.placements) {
            std::string cur = p.vertex;
            while (cur != plan.root) {
                cur = rooted.parent.at(cur);
                if (vertices.count(cur)) return false;
            }
        }

        if (realized != plan.realized_expected_depth) return false;
        if (expected_depth(optimal_depths(profile, 2), profile) != plan.ideal_expected_depth) {
            return false;
        }
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace hhcn
