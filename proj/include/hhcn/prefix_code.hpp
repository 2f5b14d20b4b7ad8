#pragma once

#include <string>
#include <vector>

#include "hhcn/rational.hpp"

namespace hhcn {

// Branch-index sequence from the root; digit i is in [0, D-1].
using NodePath = std::vector<int>;

struct DepthEntry {
    std::string id;
    int depth = 1;  // n_i >= 1, a local leader is never the root
};

// Candidate depths n_1..n_M for M leaders in a D-ary tree.
struct DepthAssignment {
    int arity = 2;
    std::vector<DepthEntry> entries;
};

struct ImportanceEntry {
    std::string id;
    Rational importance;
};

// Importance mass function over leaders: p_i >= 0 with exact sum 1.
struct ImportanceProfile {
    std::vector<ImportanceEntry> entries;
};

struct PlanEntry {
    std::string id;
    NodePath path;
};

// Pairwise prefix-free root paths, one per leader.
struct PrefixPlan {
    int arity = 2;
    std::vector<PlanEntry> entries;
};

// Throws InvalidArgument unless ids are unique and nonempty, importances are
// >= 0 and sum to exactly 1.
void validate_profile(const ImportanceProfile& profile);

// Sum of D^{-n_i} over the assignment, exact.
Rational kraft_sum(const DepthAssignment& assignment);

// kraft_sum <= 1, the prefix-free existence criterion.
bool kraft_holds(const DepthAssignment& assignment);

// Closed form of the Kraft sum over consecutive depths n_1, n_1+1, ...,
// n_1+M-1: D^{-n_1} * (D^{-M} - 1) / (D^{-1} - 1).
Rational consecutive_depth_sum(int arity, int first_depth, int leader_count);

// Kraft-feasible depths minimizing the expected depth sum p_i * n_i.
// Huffman merging over a D-ary alphabet with zero-importance padding;
// leaders sorted by importance (desc, then id) receive the sorted depth
// multiset ascending, so more important leaders never sit deeper.
// A single leader is pinned to depth 1 (the root is the global leader).
DepthAssignment optimal_depths(const ImportanceProfile& profile, int arity);

// Exact expected depth of the assignment under the profile. Throws
// IdMismatch if the two leader id sets differ.
Rational expected_depth(const DepthAssignment& assignment, const ImportanceProfile& profile);

// Base-D entropy of the importance profile, the source-coding lower bound
// on the expected depth.
double entropy_base_d(const ImportanceProfile& profile, int arity);

// Canonical prefix-free path allocation: leaders sorted by (depth asc, id
// asc) take the lexicographically smallest node path not extending any
// earlier one. Throws KraftViolated when no prefix-free plan exists.
PrefixPlan assign_paths(const DepthAssignment& assignment);

// True iff no path is a (proper or equal) prefix of another.
bool verify_prefix_free(const PrefixPlan& plan);

// True iff no leader lies on the root path of another leader, so a
// multicast addressed to one leader is never relayed through another.
bool security_check(const PrefixPlan& plan);

// Digits concatenated for D <= 10 ("10"), dot-separated otherwise ("1.0").
std::string path_to_string(const NodePath& path, int arity);

}  // namespace hhcn
