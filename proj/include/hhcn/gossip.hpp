#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hhcn {

struct FieldNode {
    std::string id;
    double x = 0.0;
    double y = 0.0;
};

// Sensor field: nodes with 2D positions, a base station, and a common
// communication radius. Two stations are neighbors iff their Euclidean
// distance is <= radius; the base station participates in the relation.
class Field {
public:
    Field(std::vector<FieldNode> nodes, double bs_x, double bs_y, double radius);

    const std::vector<FieldNode>& nodes() const noexcept { return nodes_; }  // sorted by id
    double bs_x() const noexcept { return bs_x_; }
    double bs_y() const noexcept { return bs_y_; }
    double radius() const noexcept { return radius_; }

private:
    std::vector<FieldNode> nodes_;
    double bs_x_;
    double bs_y_;
    double radius_;
};

// Hop counts from the base station (the base station itself is level 0).
struct Leveling {
    std::map<std::string, int> level;
    std::vector<std::string> unreachable;
};

// Equiangular sector indices around the base station, counterclockwise from
// the positive x axis.
struct Sectoring {
    int sector_count = 1;
    std::map<std::string, int> sector;
};

// Per-level transmit probabilities P_1 > P_2 > ... > P_n, each in [0, 1].
class GossipConfig {
public:
    explicit GossipConfig(std::vector<double> probabilities);

    const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    int levels() const noexcept { return static_cast<int>(probabilities_.size()); }
    double at_level(int level) const;  // 1-based; throws ConfigTooShort

private:
    std::vector<double> probabilities_;
};

struct SimReport {
    double delivery_probability = 0.0;
    double mean_transmissions = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

// One accepted forwarding hop; receiver_level 0 means the base station.
struct TraceHop {
    std::int64_t trial = 0;
    std::string sender;
    int sender_level = 0;
    std::string receiver;
    int receiver_level = 0;
};

using TraceSink = std::function<void(const TraceHop&)>;

// BFS hop counts over the neighbor relation; nodes with no path to the base
// station land in the unreachable list instead.
Leveling assign_levels(const Field& field);

// Throws NodeAtBaseStation if a node coincides with the base station.
Sectoring assign_sectors(const Field& field, int sector_count);

// (level id, sector id) coordinates. Throws Unreachable for unleveled nodes.
std::pair<int, int> locate(const std::string& node, const Leveling& leveling,
                           const Sectoring& sectoring);

// Level-controlled gossip: the origin transmits with its level's
// probability; a node forwards (once) with its own level's probability when
// it first hears the event from a strictly higher level; lower-or-equal
// level copies are discarded. Delivery means a level-1 node transmitted.
// Rounds run from the origin level downward, node id order within a round;
// every draw comes from a substream keyed by (seed, trial, node), so reports
// are reproducible regardless of execution order.
SimReport simulate_gossip(const Field& field, const Leveling& leveling,
                          const GossipConfig& config, const std::string& origin,
                          std::int64_t trials, std::uint64_t seed,
                          const TraceSink& trace = {});

// Closed-form delivery probability on a single-node-per-level chain:
// product of P_1..P_L for an origin at level L.
double analytic_line_delivery(const GossipConfig& config, int origin_level);

}  // namespace hhcn
