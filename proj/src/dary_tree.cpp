#include "hhcn/dary_tree.hpp"

#include <set>
#include <string>

#include "hhcn/errors.hpp"
#include "hhcn/rng.hpp"

namespace hhcn {

namespace {
constexpr int kMaxArity = 4096;
constexpr int kMaxDepth = 4096;
}  // namespace

DaryTree::DaryTree(int arity, int max_depth) : arity_(arity), max_depth_(max_depth) {
    if (arity < 2 || arity > kMaxArity) {
        throw InvalidArgument("tree arity must be in [2, " + std::to_string(kMaxArity) +
                              "], got " + std::to_string(arity));
    }
    if (max_depth < 0 || max_depth > kMaxDepth) {
        throw InvalidArgument("tree max_depth must be in [0, " + std::to_string(kMaxDepth) +
                              "], got " + std::to_string(max_depth));
    }
}

LinkModel::LinkModel(Rational failure_prob) : q_(std::move(failure_prob)) {
    if (q_ < 0 || q_ > 1) {
        throw InvalidArgument("link failure probability must lie in [0, 1]");
    }
}

BigInt node_count(const DaryTree& tree) {
    return (pow_int(tree.arity(), tree.max_depth() + 1) - 1) / (tree.arity() - 1);
}

BigInt nodes_at_depth(const DaryTree& tree, int depth) {
    if (depth < 0 || depth > tree.max_depth()) {
        throw DepthOutOfRange("depth " + std::to_string(depth) + " outside [0, " +
                              std::to_string(tree.max_depth()) + "]");
    }
    return pow_int(tree.arity(), depth);
}

namespace {

void check_level(std::int64_t count, int depth, const DaryTree& tree) {
    if (depth < 1 || depth > tree.max_depth()) {
        throw DepthOutOfRange("leader depth " + std::to_string(depth) + " outside [1, " +
                              std::to_string(tree.max_depth()) + "]");
    }
    if (count < 0) {
        throw InvalidArgument("leader count must be >= 0");
    }
    if (BigInt(count) > nodes_at_depth(tree, depth)) {
        throw CountExceedsLevel("leader count " + std::to_string(count) +
                                " exceeds level size D^" + std::to_string(depth));
    }
}

}  // namespace

Rational local_leader_fraction(std::int64_t count, const DaryTree& tree, int depth) {
    check_level(count, depth, tree);
    return Rational(BigInt(count), nodes_at_depth(tree, depth));
}

Rational p_leader_at_level(std::int64_t count, int depth, const DaryTree& tree,
                           Normalization mode) {
    check_level(count, depth, tree);
    BigInt denom = mode == Normalization::Paper
                       ? pow_int(tree.arity(), tree.max_depth() + 1) - 1
                       : node_count(tree);
    return Rational(BigInt(count), denom);
}

Rational p_any_local_leader(const LeaderCountProfile& profile, const DaryTree& tree,
                            Normalization mode) {
    std::set<int> seen;
    Rational total = 0;
    for (const LeaderLevel& level : profile.levels) {
        if (!seen.insert(level.depth).second) {
            throw InvalidArgument("duplicate depth " + std::to_string(level.depth) +
                                  " in leader profile");
        }
        total += p_leader_at_level(level.count, level.depth, tree, mode);
    }
    return total;
}

namespace {

void check_path_depth(int depth) {
    if (depth < 1) {
        throw DepthOutOfRange("path depth must be >= 1, got " + std::to_string(depth));
    }
}

}  // namespace

Rational path_reliability(const LinkModel& link, int depth) {
    check_path_depth(depth);
    return pow_rational(1 - link.failure_prob(), depth);
}

Rational last_link_failure_prob(const LinkModel& link, int depth) {
    check_path_depth(depth);
    return pow_rational(1 - link.failure_prob(), depth - 1) * link.failure_prob();
}

Rational link_failure_at(const LinkModel& link, int k) {
    return last_link_failure_prob(link, k);
}

double simulate_path_reliability(const LinkModel& link, int depth, std::int64_t trials,
                                 std::uint64_t seed) {
    check_path_depth(depth);
    if (trials < 1) {
        throw InvalidArgument("trials must be >= 1");
    }
    const double q = to_double(link.failure_prob());
    std::int64_t successes = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        bool alive = true;
        for (int k = 1; alive && k <= depth; ++k) {
            // u < q means link k failed this trial.
            alive = rng::u01(rng::keyed(seed, static_cast<std::uint64_t>(t),
                                        static_cast<std::uint64_t>(k))) >= q;
        }
        successes += alive ? 1 : 0;
    }
    return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace hhcn
