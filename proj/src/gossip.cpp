#include "hhcn/gossip.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "hhcn/errors.hpp"
#include "hhcn/rng.hpp"

namespace hhcn {

Field::Field(std::vector<FieldNode> nodes, double bs_x, double bs_y, double radius)
    : nodes_(std::move(nodes)), bs_x_(bs_x), bs_y_(bs_y), radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidArgument("communication radius must be positive and finite");
    }
    if (!std::isfinite(bs_x) || !std::isfinite(bs_y)) {
        throw InvalidArgument("base station position must be finite");
    }
    std::sort(nodes_.begin(), nodes_.end(),
              [](const FieldNode& a, const FieldNode& b) { return a.id < b.id; });
    std::set<std::string> ids;
    for (const FieldNode& n : nodes_) {
        if (n.id.empty()) throw InvalidArgument("node ids must be nonempty");
        if (!ids.insert(n.id).second) throw InvalidArgument("duplicate node id '" + n.id + "'");
        if (!std::isfinite(n.x) || !std::isfinite(n.y)) {
            throw InvalidArgument("node '" + n.id + "' has a non-finite position");
        }
    }
}

GossipConfig::GossipConfig(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
    if (probabilities_.empty()) {
        throw InvalidArgument("gossip config needs at least one level probability");
    }
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        const double p = probabilities_[i];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidArgument("transmit probability P_" + std::to_string(i + 1) +
                                  " must lie in [0, 1]");
        }
        if (i > 0 && !(probabilities_[i - 1] > p)) {
            throw InvalidArgument("transmit probabilities must be strictly decreasing: P_" +
                                  std::to_string(i) + " <= P_" + std::to_string(i + 1));
        }
    }
}

double GossipConfig::at_level(int level) const {
    if (level < 1 || level > levels()) {
        throw ConfigTooShort("no transmit probability configured for level " +
                             std::to_string(level));
    }
    return probabilities_[static_cast<std::size_t>(level - 1)];
}

namespace {

double dist2(double ax, double ay, double bx, double by) {
    const double dx = ax - bx;
    const double dy = ay - by;
    return dx * dx + dy * dy;
}

struct FieldIndex {
    std::vector<const FieldNode*> nodes;          // id-sorted
    std::vector<std::vector<int>> adjacency;      // node index -> sorted neighbor indices
    std::vector<bool> bs_neighbor;

    explicit FieldIndex(const Field& field) {
        const double r2 = field.radius() * field.radius();
        for (const FieldNode& n : field.nodes()) nodes.push_back(&n);
        adjacency.resize(nodes.size());
        bs_neighbor.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            bs_neighbor[i] =
                dist2(nodes[i]->x, nodes[i]->y, field.bs_x(), field.bs_y()) <= r2;
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                if (dist2(nodes[i]->x, nodes[i]->y, nodes[j]->x, nodes[j]->y) <= r2) {
                    adjacency[i].push_back(static_cast<int>(j));
                    adjacency[j].push_back(static_cast<int>(i));
                }
            }
        }
        for (auto& list : adjacency) std::sort(list.begin(), list.end());
    }
};

}  // namespace

Leveling assign_levels(const Field& field) {
    const FieldIndex index(field);
    std::vector<int> level(index.nodes.size(), -1);
    std::deque<int> queue;
    for (std::size_t i = 0; i < index.nodes.size(); ++i) {
        if (index.bs_neighbor[i]) {
            level[i] = 1;
            queue.push_back(static_cast<int>(i));
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : index.adjacency[static_cast<std::size_t>(v)]) {
            if (level[static_cast<std::size_t>(w)] < 0) {
                level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    Leveling out;
    for (std::size_t i = 0; i < index.nodes.size(); ++i) {
        if (level[i] > 0) {
            out.level[index.nodes[i]->id] = level[i];
        } else {
            out.unreachable.push_back(index.nodes[i]->id);
        }
    }
    return out;
}

Sectoring assign_sectors(const Field& field, int sector_count) {
    if (sector_count < 1) throw InvalidArgument("sector count must be >= 1");
    Sectoring out;
    out.sector_count = sector_count;
    for (const FieldNode& n : field.nodes()) {
        const double dx = n.x - field.bs_x();
        const double dy = n.y - field.bs_y();
        if (dx == 0.0 && dy == 0.0) {
            throw NodeAtBaseStation("node '" + n.id +
                                    "' coincides with the base station; angle undefined");
        }
        double angle = std::atan2(dy, dx) * 180.0 / M_PI;
        if (angle < 0.0) angle += 360.0;
        int sector = static_cast<int>(angle * sector_count / 360.0);
        if (sector >= sector_count) sector = sector_count - 1;  // angle rounding at 360
        out.sector[n.id] = sector;
    }
    return out;
}

std::pair<int, int> locate(const std::string& node, const Leveling& leveling,
                           const Sectoring& sectoring) {
    auto level_it = leveling.level.find(node);
    if (level_it == leveling.level.end()) {
        throw Unreachable("node '" + node + "' has no level (unreachable or unknown)");
    }
    auto sector_it = sectoring.sector.find(node);
    if (sector_it == sectoring.sector.end()) {
        throw InvalidArgument("node '" + node + "' is not sectored");
    }
    return {level_it->second, sector_it->second};
}

SimReport simulate_gossip(const Field& field, const Leveling& leveling,
                          const GossipConfig& config, const std::string& origin,
                          std::int64_t trials, std::uint64_t seed, const TraceSink& trace) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    const FieldIndex index(field);

    std::vector<int> level(index.nodes.size(), 0);
    int origin_idx = -1;
    int max_level = 0;
    for (std::size_t i = 0; i < index.nodes.size(); ++i) {
        const std::string& id = index.nodes[i]->id;
        auto it = leveling.level.find(id);
        level[i] = it == leveling.level.end() ? 0 : it->second;  // 0 = unleveled
        max_level = std::max(max_level, level[i]);
        if (id == origin) origin_idx = static_cast<int>(i);
    }
    if (origin_idx < 0) throw InvalidArgument("origin node '" + origin + "' not in field");
    if (level[static_cast<std::size_t>(origin_idx)] == 0) {
        throw Unreachable("origin node '" + origin + "' cannot reach the base station");
    }
    if (max_level > config.levels()) {
        throw ConfigTooShort("field has level " + std::to_string(max_level) + " nodes but only " +
                             std::to_string(config.levels()) + " probabilities are configured");
    }

    // Node indices grouped by level, id order inside each level.
    std::vector<std::vector<int>> by_level(static_cast<std::size_t>(max_level) + 1);
    for (std::size_t i = 0; i < index.nodes.size(); ++i) {
        if (level[i] > 0) by_level[static_cast<std::size_t>(level[i])].push_back(static_cast<int>(i));
    }

    const int origin_level = level[static_cast<std::size_t>(origin_idx)];
    std::int64_t delivered = 0;
    std::int64_t transmissions = 0;
    std::vector<char> received(index.nodes.size());

    for (std::int64_t t = 0; t < trials; ++t) {
        std::fill(received.begin(), received.end(), 0);
        bool reached_bs = false;
        for (int round = origin_level; round >= 1; --round) {
            for (int v : by_level[static_cast<std::size_t>(round)]) {
                const bool eligible = v == origin_idx || received[static_cast<std::size_t>(v)];
                if (!eligible) continue;
                const double u = rng::u01(rng::keyed(seed, static_cast<std::uint64_t>(t),
                                                     static_cast<std::uint64_t>(v)));
                if (!(u < config.at_level(round))) continue;
                ++transmissions;
                for (int w : index.adjacency[static_cast<std::size_t>(v)]) {
                    const int wl = level[static_cast<std::size_t>(w)];
                    if (wl == 0 || wl >= round) continue;  // discard at lower-or-equal levels
                    if (!received[static_cast<std::size_t>(w)]) {
                        received[static_cast<std::size_t>(w)] = 1;
                    }
                    if (trace) {
                        trace(TraceHop{t, index.nodes[static_cast<std::size_t>(v)]->id, round,
                                       index.nodes[static_cast<std::size_t>(w)]->id, wl});
                    }
                }
                if (round == 1 && index.bs_neighbor[static_cast<std::size_t>(v)]) {
                    reached_bs = true;
                    if (trace) {
                        trace(TraceHop{t, index.nodes[static_cast<std::size_t>(v)]->id, round,
                                       "BS", 0});
                    }
                }
            }
        }
        delivered += reached_bs ? 1 : 0;
    }

    SimReport report;
    report.delivery_probability = static_cast<double>(delivered) / static_cast<double>(trials);
    report.mean_transmissions = static_cast<double>(transmissions) / static_cast<double>(trials);
    report.trials = trials;
    report.seed = seed;
    return report;
}

double analytic_line_delivery(const GossipConfig& config, int origin_level) {
    if (origin_level < 1) throw InvalidArgument("origin level must be >= 1");
    if (origin_level > config.levels()) {
        throw ConfigTooShort("origin level " + std::to_string(origin_level) +
                             " exceeds the configured " + std::to_string(config.levels()) +
                             " levels");
    }
    double product = 1.0;
    for (int k = 1; k <= origin_level; ++k) product *= config.at_level(k);
    return product;
}

}  // namespace hhcn
