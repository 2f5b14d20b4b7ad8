#pragma once

#include <cstdint>
#include <vector>

namespace hhcn {

// Closed interval estimate from one abstract sensor.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

Interval make_interval(double lo, double hi);  // validates lo <= hi, finite

// n interval estimates of which at most f may be faulty.
class FusionProblem {
public:
    FusionProblem(std::vector<Interval> intervals, int fault_bound);

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    int n() const noexcept { return static_cast<int>(intervals_.size()); }
    int f() const noexcept { return fault_bound_; }
    int threshold() const noexcept { return n() - fault_bound_; }

private:
    std::vector<Interval> intervals_;
    int fault_bound_;
};

// Piecewise-constant overlap counts with closed-endpoint semantics.
// For m sorted unique endpoints there are 2m+1 maximal regions:
// (-inf,b_0), [b_0], (b_0,b_1), [b_1], ..., [b_{m-1}], (b_{m-1},+inf);
// counts[r] is the overlap count on region r.
struct OverlapProfile {
    std::vector<double> breakpoints;
    std::vector<int> counts;
};

OverlapProfile omega_function(const FusionProblem& problem);

// Number of input intervals containing x.
int omega_at(const OverlapProfile& profile, double x);

// Marzullo hull: the smallest interval containing every point whose overlap
// count reaches n - f. Throws NoAgreement when no such point exists.
Interval m_function(const FusionProblem& problem);

// The maximal closed intervals on which the overlap count reaches n - f,
// ascending. Throws NoAgreement when the set is empty.
std::vector<Interval> n_function(const FusionProblem& problem);

// [a, b] with a the (f+1)-th largest left endpoint and b the (f+1)-th
// smallest right endpoint. Throws InconsistentInputs when a > b (more than
// f inputs must be faulty).
Interval s_function(const FusionProblem& problem);

enum class FusionFn { M, Omega, N, S };

// Perturbs every endpoint by independent uniform noise in [-epsilon,
// epsilon] (re-sorting each interval) and returns the largest displacement
// of any output endpoint over the probes. Interval outputs compare
// endpoint-wise; list/profile outputs whose cardinality changes report an
// infinite displacement. Errors raised by the probed function propagate.
double lipschitz_probe(FusionFn fn, const FusionProblem& problem, double epsilon, int probes,
                       std::uint64_t seed);

}  // namespace hhcn
