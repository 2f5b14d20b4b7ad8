#include "hhcn/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hhcn/errors.hpp"
#include "hhcn/rng.hpp"

namespace hhcn {

Interval make_interval(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidArgument("interval endpoints must be finite");
    }
    if (lo > hi) {
        throw InvalidArgument("interval lower endpoint " + std::to_string(lo) +
                              " exceeds upper endpoint " + std::to_string(hi));
    }
    return Interval{lo, hi};
}

FusionProblem::FusionProblem(std::vector<Interval> intervals, int fault_bound)
    : intervals_(std::move(intervals)), fault_bound_(fault_bound) {
    if (intervals_.empty()) throw InvalidArgument("fusion problem needs at least one interval");
    for (const Interval& iv : intervals_) make_interval(iv.lo, iv.hi);
    if (fault_bound_ < 0 || fault_bound_ >= n()) {
        throw InvalidArgument("fault bound must satisfy 0 <= f < n");
    }
}

OverlapProfile omega_function(const FusionProblem& problem) {
    std::map<double, std::pair<int, int>> events;  // value -> (starts, ends)
    for (const Interval& iv : problem.intervals()) {
        events[iv.lo].first += 1;
        events[iv.hi].second += 1;
    }
    OverlapProfile profile;
    profile.counts.push_back(0);  // (-inf, first breakpoint)
    int started = 0;
    int ended = 0;
    for (const auto& [value, delta] : events) {
        profile.breakpoints.push_back(value);
        started += delta.first;
        profile.counts.push_back(started - ended);  // [value]
        ended += delta.second;
        profile.counts.push_back(started - ended);  // (value, next)
    }
    return profile;
}

int omega_at(const OverlapProfile& profile, double x) {
    const auto& bps = profile.breakpoints;
    const auto it = std::lower_bound(bps.begin(), bps.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - bps.begin());
    if (it != bps.end() && *it == x) return profile.counts[2 * i + 1];
    return profile.counts[2 * i];
}

namespace {

// Region r in the 2m+1 layout; closed regions sit at odd indices.
// Any open region with count >= t is flanked by breakpoints of count >= t
// (an interval covering an open gap contains both of its ends), so
// superlevel runs always start and end on breakpoints.
std::vector<Interval> superlevel_regions(const OverlapProfile& profile, int threshold) {
    std::vector<Interval> regions;
    const std::size_t total = profile.counts.size();
    std::size_t r = 0;
    while (r < total) {
        if (profile.counts[r] < threshold) {
            ++r;
            continue;
        }
        const std::size_t start = r;
        while (r < total && profile.counts[r] >= threshold) ++r;
        const std::size_t last = r - 1;
        regions.push_back(Interval{profile.breakpoints[(start - 1) / 2],
                                   profile.breakpoints[(last - 1) / 2]});
    }
    return regions;
}

}  // namespace

Interval m_function(const FusionProblem& problem) {
    const OverlapProfile profile = omega_function(problem);
    const auto regions = superlevel_regions(profile, problem.threshold());
    if (regions.empty()) {
        throw NoAgreement("no point is covered by " + std::to_string(problem.threshold()) +
                          " of the " + std::to_string(problem.n()) + " intervals");
    }
    return Interval{regions.front().lo, regions.back().hi};
}

std::vector<Interval> n_function(const FusionProblem& problem) {
    const OverlapProfile profile = omega_function(problem);
    auto regions = superlevel_regions(profile, problem.threshold());
    if (regions.empty()) {
        throw NoAgreement("no point is covered by " + std::to_string(problem.threshold()) +
                          " of the " + std::to_string(problem.n()) + " intervals");
    }
    return regions;
}

Interval s_function(const FusionProblem& problem) {
    std::vector<double> lefts;
    std::vector<double> rights;
    for (const Interval& iv : problem.intervals()) {
        lefts.push_back(iv.lo);
        rights.push_back(iv.hi);
    }
    std::sort(lefts.begin(), lefts.end(), std::greater<>());
    std::sort(rights.begin(), rights.end());
    const double a = lefts[static_cast<std::size_t>(problem.f())];
    const double b = rights[static_cast<std::size_t>(problem.f())];
    if (a > b) {
        throw InconsistentInputs("order statistics cross (a = " + std::to_string(a) + " > b = " +
                                 std::to_string(b) + "); more than f inputs must be faulty");
    }
    return Interval{a, b};
}

namespace {

double interval_displacement(const Interval& a, const Interval& b) {
    return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

double list_displacement(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, interval_displacement(a[i], b[i]));
    }
    return d;
}

double profile_displacement(const OverlapProfile& a, const OverlapProfile& b) {
    if (a.breakpoints.size() != b.breakpoints.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.breakpoints.size(); ++i) {
        d = std::max(d, std::abs(a.breakpoints[i] - b.breakpoints[i]));
    }
    return d;
}

}  // namespace

double lipschitz_probe(FusionFn fn, const FusionProblem& problem, double epsilon, int probes,
                       std::uint64_t seed) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("probe epsilon must be a nonnegative finite value");
    }
    if (probes < 1) throw InvalidArgument("probe count must be >= 1");

    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        std::vector<Interval> perturbed;
        perturbed.reserve(problem.intervals().size());
        for (std::size_t i = 0; i < problem.intervals().size(); ++i) {
            const Interval& iv = problem.intervals()[i];
            const double noise_lo =
                (2.0 * rng::u01(rng::keyed(seed, static_cast<std::uint64_t>(p), 2 * i)) - 1.0) *
                epsilon;
            const double noise_hi =
                (2.0 * rng::u01(rng::keyed(seed, static_cast<std::uint64_t>(p), 2 * i + 1)) -
                 1.0) *
                epsilon;
            double lo = iv.lo + noise_lo;
            double hi = iv.hi + noise_hi;
            if (lo > hi) std::swap(lo, hi);
            perturbed.push_back(Interval{lo, hi});
        }
        const FusionProblem shifted(std::move(perturbed), problem.f());
        switch (fn) {
            case FusionFn::M:
                worst = std::max(worst, interval_displacement(m_function(problem),
                                                              m_function(shifted)));
                break;
            case FusionFn::Omega:
                worst = std::max(worst, profile_displacement(omega_function(problem),
                                                             omega_function(shifted)));
                break;
            case FusionFn::N:
                worst = std::max(worst, list_displacement(n_function(problem),
                                                          n_function(shifted)));
                break;
            case FusionFn::S:
                worst = std::max(worst, interval_displacement(s_function(problem),
                                                              s_function(shifted)));
                break;
        }
    }
    return worst;
}

}  // namespace hhcn
