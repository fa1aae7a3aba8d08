// Path-congestion (comparison) and odd-cycle constants.

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <string>

#include "circlewalk/bounds.hpp"
#include "circlewalk/errors.hpp"

namespace circlewalk {

namespace {

std::string edge_name(std::uint32_t z, std::uint32_t w) {
    return "(" + std::to_string(z) + ", " + std::to_string(w) + ")";
}

bool contains_edge(const std::vector<Edge>& edges, Edge e) {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

}  // namespace

ComparisonResult comparison_A(const StochasticKernel& kernel, const Distribution& pi,
                              const StochasticKernel& reference, const Distribution& reference_pi,
                              const PathAssignment& paths) {
    const auto n = kernel.states();
    if (reference.states() != n || paths.states() != n || pi.size() != n ||
        reference_pi.size() != n) {
        throw LengthMismatch("comparison chains live on different state spaces");
    }

    std::map<Edge, double> load;
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
            if (x == y || !reference.has_edge(x, y)) continue;
            const auto& path = paths.path(x, y);
            if (path.size() < 2) throw MissingPath("no path for pair " + edge_name(x, y));
            if (path.front() != x || path.back() != y) {
                throw InvalidPathEdge("path for " + edge_name(x, y) + " has wrong endpoints");
            }
            std::vector<Edge> used;
            for (std::size_t s = 0; s + 1 < path.size(); ++s) {
                const Edge e{path[s], path[s + 1]};
                if (e.first >= n || e.second >= n || !kernel.has_edge(e.first, e.second)) {
                    throw InvalidPathEdge("path for " + edge_name(x, y) + " uses non-edge " +
                                          edge_name(e.first, e.second));
                }
                if (contains_edge(used, e)) {
                    throw InvalidPathEdge("path for " + edge_name(x, y) + " repeats edge " +
                                          edge_name(e.first, e.second));
                }
                used.push_back(e);
            }
            const double weight =
                static_cast<double>(used.size()) * reference_pi[x] * reference(x, y);
            for (const auto& e : used) load[e] += weight;
        }
    }

    ComparisonResult result;
    for (const auto& [e, total] : load) {
        const double value = total / (pi[e.first] * kernel(e.first, e.second));
        if (value > result.A) {
            result.A = value;
            result.edge = e;
        }
    }
    result.a = std::numeric_limits<double>::infinity();
    for (std::uint32_t x = 0; x < n; ++x) result.a = std::min(result.a, reference_pi[x] / pi[x]);
    return result;
}

PathAssignment default_paths(const PrimeModulus& m) {
    const StructureTensor tensor(m);
    const auto kernel = build_kernel(tensor, 1);
    const auto n = kernel.states();

    // Smallest k with from -> k -> to both on the support.
    auto via = [&](std::uint32_t from, std::uint32_t to) {
        for (std::uint32_t k = 0; k < n; ++k) {
            if (kernel.has_edge(from, k) && kernel.has_edge(k, to)) return k;
        }
        throw ConstructionFailed("no intermediate circle between " + std::to_string(from) +
                                 " and " + std::to_string(to));
    };

    PathAssignment paths(n);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t s = r + 1; s < n; ++s) {
            std::vector<std::uint32_t> path;
            if (r == 0 && s == 1) {
                path = {0, 1};
            } else if (r == 0) {
                path = {0, 1, via(1, s), s};
            } else {
                path = {r, via(r, s), s};
            }
            paths.set(r, s, path);
            std::reverse(path.begin(), path.end());
            paths.set(s, r, std::move(path));
        }
    }
    return paths;
}

CycleBound cycles_v(const StochasticKernel& kernel, const Distribution& pi,
                    const CycleCollection& cycles) {
    const auto n = kernel.states();
    if (cycles.cycles.size() != n || pi.size() != n) {
        throw LengthMismatch("need exactly one cycle per state");
    }

    std::map<Edge, double> load;
    for (std::uint32_t x = 0; x < n; ++x) {
        const auto& cycle = cycles.cycles[x];
        if (cycle.size() % 2 == 0) {
            throw EvenCycle("cycle of state " + std::to_string(x) + " has " +
                            std::to_string(cycle.size()) + " edges");
        }
        if (std::find(cycle.begin(), cycle.end(), x) == cycle.end()) {
            throw InvalidCycleEdge("cycle of state " + std::to_string(x) + " does not visit it");
        }
        std::vector<Edge> used;
        double length = 0.0;
        for (std::size_t s = 0; s < cycle.size(); ++s) {
            const Edge e{cycle[s], cycle[(s + 1) % cycle.size()]};
            if (e.first >= n || e.second >= n || !kernel.has_edge(e.first, e.second)) {
                throw InvalidCycleEdge("cycle of state " + std::to_string(x) + " uses non-edge " +
                                       edge_name(e.first, e.second));
            }
            if (contains_edge(used, e)) {
                throw InvalidCycleEdge("cycle of state " + std::to_string(x) + " repeats edge " +
                                       edge_name(e.first, e.second));
            }
            used.push_back(e);
            length += 1.0 / (pi[e.first] * kernel(e.first, e.second));
        }
        for (const auto& e : used) load[e] += length * pi[x];
    }

    CycleBound bound;
    for (const auto& [e, total] : load) {
        if (total > bound.v) {
            bound.v = total;
            bound.edge = e;
        }
    }
    bound.lower_bound = -1.0 + 2.0 / bound.v;
    return bound;
}

namespace {

class OddCycleSearch {
public:
    explicit OddCycleSearch(const StochasticKernel& kernel) : kernel_(kernel), n_(kernel.states()) {
        neighbours_.resize(n_);
        for (std::uint32_t x = 0; x < n_; ++x)
            for (std::uint32_t y = 0; y < n_; ++y)
                if (kernel.has_edge(x, y)) neighbours_[x].push_back(y);
    }

    Cycle find(std::uint32_t owner) {
        const auto shortest = shortest_odd_length(owner);
        if (!shortest) {
            throw NoOddCycle("state " + std::to_string(owner) + " lies on no odd closed walk");
        }
        distance_to_owner(owner);
        // Edge-repetition can force longer walks than the parity search found.
        const std::size_t ceiling = *shortest + 2 * std::size_t{n_} + 2;
        for (std::size_t length = *shortest; length <= ceiling; length += 2) {
            walk_.assign(1, owner);
            used_.clear();
            if (extend(owner, length)) return walk_;
        }
        throw NoOddCycle("no odd closed walk without repeated edges through state " +
                         std::to_string(owner));
    }

private:
    // Shortest odd closed walk through owner, ignoring edge repetition:
    // breadth-first search over (state, parity).
    std::optional<std::size_t> shortest_odd_length(std::uint32_t owner) const {
        constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> dist(2 * std::size_t{n_}, kUnseen);
        std::deque<std::size_t> queue{2 * std::size_t{owner}};
        dist[2 * std::size_t{owner}] = 0;
        while (!queue.empty()) {
            const auto node = queue.front();
            queue.pop_front();
            const auto x = static_cast<std::uint32_t>(node / 2);
            const auto parity = node % 2;
            for (const auto y : neighbours_[x]) {
                const auto next = 2 * std::size_t{y} + (1 - parity);
                if (dist[next] == kUnseen) {
                    dist[next] = dist[node] + 1;
                    queue.push_back(next);
                }
            }
        }
        const auto odd = dist[2 * std::size_t{owner} + 1];
        if (odd == kUnseen) return std::nullopt;
        return odd;
    }

    void distance_to_owner(std::uint32_t owner) {
        constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
        to_owner_.assign(n_, kUnseen);
        to_owner_[owner] = 0;
        std::deque<std::uint32_t> queue{owner};
        while (!queue.empty()) {
            const auto y = queue.front();
            queue.pop_front();
            for (std::uint32_t x = 0; x < n_; ++x) {
                if (kernel_.has_edge(x, y) && to_owner_[x] == kUnseen) {
                    to_owner_[x] = to_owner_[y] + 1;
                    queue.push_back(x);
                }
            }
        }
    }

    bool extend(std::uint32_t owner, std::size_t length) {
        const auto at = walk_.back();
        const auto taken = walk_.size() - 1;
        const auto remaining = length - taken;
        if (remaining == 1) {
            const Edge closing{at, owner};
            if (!kernel_.has_edge(at, owner) || contains_edge(used_, closing)) return false;
            return true;
        }
        for (const auto next : neighbours_[at]) {
            if (to_owner_[next] > remaining - 1) continue;
            const Edge e{at, next};
            if (contains_edge(used_, e)) continue;
            used_.push_back(e);
            walk_.push_back(next);
            if (extend(owner, length)) return true;
            walk_.pop_back();
            used_.pop_back();
        }
        return false;
    }

    const StochasticKernel& kernel_;
    std::uint32_t n_;
    std::vector<std::vector<std::uint32_t>> neighbours_;
    std::vector<std::size_t> to_owner_;
    Cycle walk_;
    std::vector<Edge> used_;
};

}  // namespace

CycleCollection default_cycles(const StochasticKernel& kernel) {
    OddCycleSearch search(kernel);
    CycleCollection collection;
    collection.cycles.reserve(kernel.states());
    for (std::uint32_t x = 0; x < kernel.states(); ++x) collection.cycles.push_back(search.find(x));
    return collection;
}

CycleCollection default_cycles(const PrimeModulus& m) {
    return default_cycles(build_kernel(StructureTensor(m), 1));
}

}  // namespace circlewalk
