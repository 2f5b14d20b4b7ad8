#pragma once

#include <cstdint>
#include <vector>

#include "hhcn/rational.hpp"

namespace hhcn {

// Complete D-ary tree of maximum depth n_max. Every node at depth < n_max
// has exactly D children; node identity is its branch-index path from the
// root, the empty path being the root (global leader).
class DaryTree {
public:
    DaryTree(int arity, int max_depth);

    int arity() const noexcept { return arity_; }
    int max_depth() const noexcept { return max_depth_; }

private:
    int arity_;
    int max_depth_;
};

// Per-depth local-leader counts: s_j nodes out of D^{n_j} at depth n_j.
struct LeaderLevel {
    int depth = 0;             // n_j, in [1, n_max]
    std::int64_t count = 0;    // s_j, in [0, D^{n_j}]
};

struct LeaderCountProfile {
    std::vector<LeaderLevel> levels;
};

// Independent, identically distributed per-link failure probability.
class LinkModel {
public:
    explicit LinkModel(Rational failure_prob);
    const Rational& failure_prob() const noexcept { return q_; }

private:
    Rational q_;
};

// Level-probability denominator. "paper" divides by D^{n_max+1} - 1,
// "exact" by the true node count (D^{n_max+1} - 1)/(D - 1); the two agree
// only for D = 2.
enum class Normalization { Paper, Exact };

// Total node count of the complete tree: (D^{n_max+1} - 1)/(D - 1).
BigInt node_count(const DaryTree& tree);

// D^j nodes at depth j. Throws DepthOutOfRange unless 0 <= j <= n_max.
BigInt nodes_at_depth(const DaryTree& tree, int depth);

// t_j = s_j / D^{n_j}. Throws CountExceedsLevel if s_j > D^{n_j}.
Rational local_leader_fraction(std::int64_t count, const DaryTree& tree, int depth);

// Probability that a randomly chosen node is a leader at the given level:
// s_j over the configured denominator.
Rational p_leader_at_level(std::int64_t count, int depth, const DaryTree& tree,
                           Normalization mode = Normalization::Paper);

// Sum of p_leader_at_level over all profile entries.
Rational p_any_local_leader(const LeaderCountProfile& profile, const DaryTree& tree,
                            Normalization mode = Normalization::Paper);

// (1 - q)^{n_j}: all links on a depth-n_j root path survive. n_j >= 1.
Rational path_reliability(const LinkModel& link, int depth);

// (1 - q)^{n_j - 1} * q: the first n_j - 1 links survive, the last fails.
Rational last_link_failure_prob(const LinkModel& link, int depth);

// (1 - q)^{k - 1} * q: the walk from the root dies exactly at link k.
Rational link_failure_at(const LinkModel& link, int k);

// Monte Carlo estimate of path_reliability. Each trial draws one uniform
// per link from a substream keyed by (seed, trial, link), so the estimate
// is reproducible independent of execution order.
double simulate_path_reliability(const LinkModel& link, int depth, std::int64_t trials,
                                 std::uint64_t seed);

}  // namespace hhcn
