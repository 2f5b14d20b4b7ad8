#include "hhcn/prefix_code.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "hhcn/errors.hpp"

namespace hhcn {

namespace {

constexpr int kMaxArity = 4096;
constexpr int kMaxDepth = 4096;

void check_arity(int arity) {
    if (arity < 2 || arity > kMaxArity) {
        throw InvalidArgument("arity must be in [2, " + std::to_string(kMaxArity) + "], got " +
                              std::to_string(arity));
    }
}

void validate_assignment(const DepthAssignment& assignment) {
    check_arity(assignment.arity);
    std::set<std::string> ids;
    for (const DepthEntry& entry : assignment.entries) {
        if (entry.id.empty()) throw InvalidArgument("leader id must be nonempty");
        if (!ids.insert(entry.id).second) {
            throw InvalidArgument("duplicate leader id '" + entry.id + "'");
        }
        if (entry.depth < 1 || entry.depth > kMaxDepth) {
            throw InvalidArgument("leader depth must be in [1, " + std::to_string(kMaxDepth) +
                                  "], got " + std::to_string(entry.depth));
        }
    }
}

}  // namespace

void validate_profile(const ImportanceProfile& profile) {
    if (profile.entries.empty()) {
        throw InvalidArgument("importance profile must contain at least one leader");
    }
    std::set<std::string> ids;
    Rational total = 0;
    for (const ImportanceEntry& entry : profile.entries) {
        if (entry.id.empty()) throw InvalidArgument("leader id must be nonempty");
        if (!ids.insert(entry.id).second) {
            throw InvalidArgument("duplicate leader id '" + entry.id + "'");
        }
        if (entry.importance < 0) {
            throw InvalidArgument("importance of '" + entry.id + "' is negative");
        }
        total += entry.importance;
    }
    if (total != 1) {
        throw InvalidArgument("importances must sum to exactly 1, got " + to_string(total));
    }
}

Rational kraft_sum(const DepthAssignment& assignment) {
    validate_assignment(assignment);
    Rational sum = 0;
    for (const DepthEntry& entry : assignment.entries) {
        sum += Rational(BigInt(1), pow_int(assignment.arity, entry.depth));
    }
    return sum;
}

bool kraft_holds(const DepthAssignment& assignment) { return kraft_sum(assignment) <= 1; }

Rational consecutive_depth_sum(int arity, int first_depth, int leader_count) {
    check_arity(arity);
    if (first_depth < 1) throw InvalidArgument("first depth must be >= 1");
    if (leader_count < 1) throw InvalidArgument("leader count must be >= 1");
    const Rational d_inv(BigInt(1), BigInt(arity));
    const Rational lead = pow_rational(d_inv, first_depth);
    return lead * (pow_rational(d_inv, leader_count) - 1) / (d_inv - 1);
}

namespace {

// Huffman merge-forest node. Tie-breaking among equal weights favors the
// group containing the lexicographically smallest real leader id; dummy-only
// groups sort after all real groups and among themselves by creation order.
struct MergeNode {
    Rational weight;
    const std::string* min_id = nullptr;  // nullptr for dummy-only groups
    int seq = 0;
    int leaf_leader = -1;  // index into the leader vector, -1 for internal/dummy
    std::vector<int> children;
};

struct HeapOrder {
    const std::vector<MergeNode>* nodes;
    // std::priority_queue is a max-heap; return true when a is "worse".
    bool operator()(int a, int b) const {
        const MergeNode& na = (*nodes)[a];
        const MergeNode& nb = (*nodes)[b];
        if (na.weight != nb.weight) return na.weight > nb.weight;
        const bool a_dummy = na.min_id == nullptr;
        const bool b_dummy = nb.min_id == nullptr;
        if (a_dummy != b_dummy) return a_dummy;
        if (!a_dummy && *na.min_id != *nb.min_id) return *na.min_id > *nb.min_id;
        return na.seq > nb.seq;
    }
};

void collect_depths(const std::vector<MergeNode>& nodes, int index, int depth,
                    std::vector<int>& leaf_depth) {
    const MergeNode& node = nodes[index];
    if (node.leaf_leader >= 0) leaf_depth[node.leaf_leader] = depth;
    for (int child : node.children) collect_depths(nodes, child, depth + 1, leaf_depth);
}

}  // namespace

DepthAssignment optimal_depths(const ImportanceProfile& profile, int arity) {
    validate_profile(profile);
    check_arity(arity);

    std::vector<ImportanceEntry> leaders(profile.entries.begin(), profile.entries.end());
    std::sort(leaders.begin(), leaders.end(),
              [](const ImportanceEntry& a, const ImportanceEntry& b) { return a.id < b.id; });

    DepthAssignment result;
    result.arity = arity;
    const int m = static_cast<int>(leaders.size());
    if (m == 1) {
        result.entries.push_back({leaders.front().id, 1});
        return result;
    }

    std::vector<MergeNode> nodes;
    int seq = 0;
    for (int i = 0; i < m; ++i) {
        nodes.push_back({leaders[i].importance, &leaders[i].id, seq++, i, {}});
    }
    // A D-ary merge tree is full only when (M - 1) mod (D - 1) == 0; pad
    // with zero-importance dummies and strip them afterwards.
    const int remainder = (m - 1) % (arity - 1);
    const int dummies = remainder == 0 ? 0 : arity - 1 - remainder;
    for (int i = 0; i < dummies; ++i) {
        nodes.push_back({Rational(0), nullptr, seq++, -1, {}});
    }

    std::priority_queue<int, std::vector<int>, HeapOrder> heap{HeapOrder{&nodes}};
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) heap.push(i);

    while (heap.size() > 1) {
        MergeNode merged;
        merged.weight = 0;
        merged.seq = seq++;
        for (int i = 0; i < arity && !heap.empty(); ++i) {
            int top = heap.top();
            heap.pop();
            merged.weight += nodes[top].weight;
            if (nodes[top].min_id != nullptr &&
                (merged.min_id == nullptr || *nodes[top].min_id < *merged.min_id)) {
                merged.min_id = nodes[top].min_id;
            }
            merged.children.push_back(top);
        }
        nodes.push_back(std::move(merged));
        heap.push(static_cast<int>(nodes.size()) - 1);
    }

    std::vector<int> leaf_depth(m, 0);
    collect_depths(nodes, heap.top(), 0, leaf_depth);

    // Reassign the optimal depth multiset so that importance order and depth
    // order agree: most important leader gets the shallowest slot.
    std::vector<int> by_importance(m);
    for (int i = 0; i < m; ++i) by_importance[i] = i;
    std::sort(by_importance.begin(), by_importance.end(), [&](int a, int b) {
        if (leaders[a].importance != leaders[b].importance) {
            return leaders[a].importance > leaders[b].importance;
        }
        return leaders[a].id < leaders[b].id;
    });
    std::sort(leaf_depth.begin(), leaf_depth.end());

    std::vector<int> depth_of(m);
    for (int rank = 0; rank < m; ++rank) depth_of[by_importance[rank]] = leaf_depth[rank];
    for (int i = 0; i < m; ++i) result.entries.push_back({leaders[i].id, depth_of[i]});
    return result;
}

Rational expected_depth(const DepthAssignment& assignment, const ImportanceProfile& profile) {
    validate_assignment(assignment);
    validate_profile(profile);
    std::map<std::string, Rational> importance;
    for (const ImportanceEntry& entry : profile.entries) importance[entry.id] = entry.importance;
    if (assignment.entries.size() != importance.size()) {
        throw IdMismatch("assignment and profile name different leader sets");
    }
    Rational sum = 0;
    for (const DepthEntry& entry : assignment.entries) {
        auto it = importance.find(entry.id);
        if (it == importance.end()) {
            throw IdMismatch("assignment leader '" + entry.id + "' is not in the profile");
        }
        sum += it->second * entry.depth;
    }
    return sum;
}

double entropy_base_d(const ImportanceProfile& profile, int arity) {
    validate_profile(profile);
    check_arity(arity);
    double h = 0.0;
    for (const ImportanceEntry& entry : profile.entries) {
        if (entry.importance == 0) continue;
        const double p = to_double(entry.importance);
        h -= p * std::log(p);
    }
    return h / std::log(static_cast<double>(arity));
}

PrefixPlan assign_paths(const DepthAssignment& assignment) {
    validate_assignment(assignment);
    if (!kraft_holds(assignment)) {
        throw KraftViolated("Kraft sum " + to_string(kraft_sum(assignment)) +
                            " exceeds 1; no prefix-free plan exists");
    }
    std::vector<DepthEntry> order(assignment.entries.begin(), assignment.entries.end());
    std::sort(order.begin(), order.end(), [](const DepthEntry& a, const DepthEntry& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.id < b.id;
    });

    PrefixPlan plan;
    plan.arity = assignment.arity;
    // Canonical code construction: the next code extends prev + 1 by the
    // depth difference, which is exactly the lexicographically smallest
    // free path once Kraft holds.
    BigInt code = 0;
    int prev_depth = 0;
    bool first = true;
    for (const DepthEntry& entry : order) {
        if (first) {
            code = 0;
            first = false;
        } else {
            code = (code + 1) * pow_int(assignment.arity, entry.depth - prev_depth);
        }
        prev_depth = entry.depth;

        NodePath path(static_cast<std::size_t>(entry.depth), 0);
        BigInt rest = code;
        for (int i = entry.depth - 1; i >= 0; --i) {
            path[static_cast<std::size_t>(i)] = static_cast<int>(rest % assignment.arity);
            rest /= assignment.arity;
        }
        if (rest != 0) {
            // Unreachable once kraft_holds passed; guards the construction.
            throw KraftViolated("canonical code overflowed depth " + std::to_string(entry.depth));
        }
        plan.entries.push_back({entry.id, std::move(path)});
    }
    std::sort(plan.entries.begin(), plan.entries.end(),
              [](const PlanEntry& a, const PlanEntry& b) { return a.id < b.id; });
    return plan;
}

namespace {

bool is_prefix_of(const NodePath& a, const NodePath& b) {
    if (a.size() > b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

bool verify_prefix_free(const PrefixPlan& plan) {
    const auto& entries = plan.entries;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (i != j && is_prefix_of(entries[i].path, entries[j].path)) return false;
        }
    }
    return true;
}

bool security_check(const PrefixPlan& plan) {
    // A leader relays another's multicast exactly when its path prefixes
    // the other's, so the security predicate is prefix-freeness.
    return verify_prefix_free(plan);
}

std::string path_to_string(const NodePath& path, int arity) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (arity > 10 && i > 0) out += '.';
        out += std::to_string(path[i]);
    }
    return out;
}

}  // namespace hhcn
