#pragma once

#include <bcube/error.hpp>
#include <bcube/topology.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <thread>
#include <unordered_map>
#include <vector>

namespace bcube {

// host -> switch -> host, fixing one digit (the switch layer).
struct Hop {
    HostId from{};
    SwitchId via{};
    HostId to{};
    int layer = 1;

    friend bool operator==(const Hop&, const Hop&) = default;
};

struct DiPath {
    HostId source{};
    HostId destination{};
    std::vector<Hop> hops;

    std::size_t hop_count() const { return hops.size(); }

    friend bool operator==(const DiPath&, const DiPath&) = default;
};

struct ShortestPathOptions {
    std::size_t path_cap = 10'000;
};

inline std::size_t hamming_distance(const Topology& t, HostId a, HostId b) {
    std::size_t m = 0;
    for (int k = 1; k <= t.ell(); ++k) m += t.digit(a, k) != t.digit(b, k);
    return m;
}

// Layers (1-based digit indices) where a and b differ, ascending.
inline std::vector<int> differing_digits(const Topology& t, HostId a, HostId b) {
    std::vector<int> out;
    for (int k = 1; k <= t.ell(); ++k) {
        if (t.digit(a, k) != t.digit(b, k)) out.push_back(k);
    }
    return out;
}

inline Hop make_hop(const Topology& t, HostId from, int layer, Digit value) {
    return Hop{from, t.switch_of(from, layer), t.with_digit(from, layer, value), layer};
}

inline LinkId hop_uplink(const Topology& t, const Hop& hop) { return t.uplink(hop.from, hop.layer); }
inline LinkId hop_downlink(const Topology& t, const Hop& hop) { return t.downlink(hop.to, hop.layer); }

// Directed links in traversal order: one uplink and one downlink per hop.
inline std::vector<LinkId> traversed_links(const Topology& t, const DiPath& path) {
    std::vector<LinkId> out;
    out.reserve(2 * path.hops.size());
    for (const Hop& hop : path.hops) {
        out.push_back(hop_uplink(t, hop));
        out.push_back(hop_downlink(t, hop));
    }
    return out;
}

// Throws IntegrityError unless every hop is a real host->switch->host
// traversal and the hops chain from source to destination.
inline void validate_path(const Topology& t, const DiPath& path) {
    auto fail = [&](const std::string& why) {
        throw IntegrityError("path " + t.host_string(path.source) + "->" + t.host_string(path.destination) + ": " +
                             why);
    };
    if (index(path.source) >= t.host_count() || index(path.destination) >= t.host_count()) {
        fail("endpoint outside the topology");
    }
    HostId at = path.source;
    for (const Hop& hop : path.hops) {
        if (hop.layer < 1 || hop.layer > t.ell()) fail("hop layer out of range");
        if (index(hop.from) >= t.host_count() || index(hop.to) >= t.host_count()) fail("hop host outside topology");
        if (index(hop.via) >= t.switch_count()) fail("hop switch outside topology");
        if (hop.from != at) fail("hops do not chain");
        if (hop.from == hop.to) fail("hop does not move");
        if (t.switch_of(hop.from, hop.layer) != hop.via || t.switch_of(hop.to, hop.layer) != hop.via) {
            fail("no link between switch " + t.switch_string(hop.via) + " and a hop endpoint at layer " +
                 std::to_string(hop.layer));
        }
        at = hop.to;
    }
    if (at != path.destination) fail("hops do not end at the destination");
}

/// Shortest dipath from s to dst fixing the differing digits in the given
/// order. `order` must be a permutation of exactly the differing indices.
inline DiPath shortest_path(const Topology& t, HostId s, HostId dst, std::span<const int> order) {
    if (s == dst) throw DomainError("shortest_path: source equals destination");
    std::vector<int> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != differing_digits(t, s, dst)) {
        throw DomainError("shortest_path: order is not a permutation of the differing digits of " +
                          t.host_string(s) + " and " + t.host_string(dst));
    }
    DiPath path{s, dst, {}};
    path.hops.reserve(order.size());
    HostId at = s;
    for (int k : order) {
        Hop hop = make_hop(t, at, k, t.digit(dst, k));
        at = hop.to;
        path.hops.push_back(hop);
    }
    return path;
}

// Fix the highest differing digit first.
inline DiPath descending_path(const Topology& t, HostId s, HostId dst) {
    if (s == dst) throw DomainError("descending_path: source equals destination");
    DiPath path{s, dst, {}};
    HostId at = s;
    for (int k = t.ell(); k >= 1; --k) {
        const Digit want = t.digit(dst, k);
        if (t.digit(at, k) == want) continue;
        Hop hop = make_hop(t, at, k, want);
        at = hop.to;
        path.hops.push_back(hop);
    }
    return path;
}

inline std::vector<DiPath> enumerate_shortest_paths(const Topology& t, HostId s, HostId dst,
                                                    ShortestPathOptions options = {}) {
    if (s == dst) throw DomainError("enumerate_shortest_paths: source equals destination");
    std::vector<int> order = differing_digits(t, s, dst);
    std::uint64_t count = 1;
    for (std::uint64_t i = 2; i <= order.size(); ++i) {
        count *= i;
        if (count > options.path_cap) {
            throw CapacityError("pair has more than " + std::to_string(options.path_cap) + " shortest paths");
        }
    }
    std::vector<DiPath> out;
    out.reserve(count);
    do {
        out.push_back(shortest_path(t, s, dst, order));
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

/// Paths keyed by ordered (source, destination); (s,d) and (d,s) are distinct.
class Routing {
public:
    void add(DiPath path) {
        const std::uint64_t key = pair_key(path.source, path.destination);
        if (!index_.emplace(key, paths_.size()).second) {
            throw DomainError("routing already has a path for this ordered pair");
        }
        paths_.push_back(std::move(path));
    }

    const std::vector<DiPath>& paths() const { return paths_; }
    std::size_t size() const { return paths_.size(); }
    bool empty() const { return paths_.empty(); }

    const DiPath* find(HostId s, HostId dst) const {
        auto it = index_.find(pair_key(s, dst));
        return it == index_.end() ? nullptr : &paths_[it->second];
    }

private:
    static std::uint64_t pair_key(HostId s, HostId dst) {
        return (static_cast<std::uint64_t>(index(s)) << 32) | index(dst);
    }

    std::vector<DiPath> paths_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// R*(ell, d): descending dipath for every ordered host pair.
inline Routing star_routing(const Topology& t) {
    Routing r;
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            if (s != dst) r.add(descending_path(t, HostId{s}, HostId{dst}));
        }
    }
    return r;
}

// Per-link path counts, indexed by LinkId.
using LinkLoads = std::vector<std::uint64_t>;

inline LinkLoads link_loads(const Topology& t, std::span<const DiPath> paths) {
    LinkLoads loads(t.link_count(), 0);
    for (const DiPath& path : paths) {
        validate_path(t, path);
        for (const Hop& hop : path.hops) {
            ++loads[index(hop_uplink(t, hop))];
            ++loads[index(hop_downlink(t, hop))];
        }
    }
    return loads;
}

inline LinkLoads link_loads(const Topology& t, const Routing& r) { return link_loads(t, r.paths()); }

// Debug variant: for each link, the indices (into `paths`) of paths crossing it.
inline std::vector<std::vector<std::size_t>> link_path_lists(const Topology& t, std::span<const DiPath> paths) {
    std::vector<std::vector<std::size_t>> lists(t.link_count());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        validate_path(t, paths[i]);
        for (LinkId l : traversed_links(t, paths[i])) lists[index(l)].push_back(i);
    }
    return lists;
}

inline std::uint64_t max_link_load(const LinkLoads& loads) {
    return loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
}

inline std::uint64_t max_link_load(const Topology& t, const Routing& r) { return max_link_load(link_loads(t, r)); }

/// Loads of R*(ell,d) without materializing the routing. Sources are split
/// into `workers` contiguous blocks, each with a private accumulator; the
/// result does not depend on the split.
inline LinkLoads star_link_loads(const Topology& t, unsigned workers = 1) {
    workers = std::max(1u, std::min<unsigned>(workers, t.host_count()));
    std::vector<LinkLoads> partial(workers, LinkLoads(t.link_count(), 0));
    auto run = [&t](LinkLoads& acc, std::uint32_t begin, std::uint32_t end) {
        for (std::uint32_t s = begin; s < end; ++s) {
            for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
                if (s == dst) continue;
                HostId at{s};
                for (int k = t.ell(); k >= 1; --k) {
                    const Digit want = t.digit(HostId{dst}, k);
                    if (t.digit(at, k) == want) continue;
                    ++acc[index(t.uplink(at, k))];
                    at = t.with_digit(at, k, want);
                    ++acc[index(t.downlink(at, k))];
                }
            }
        }
    };
    const std::uint32_t n = t.host_count();
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const auto begin = static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * w / workers);
            const auto end = static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * (w + 1) / workers);
            pool.emplace_back(run, std::ref(partial[w]), begin, end);
        }
    }
    LinkLoads total(t.link_count(), 0);
    for (const LinkLoads& p : partial) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];
    }
    return total;
}

// Whether the descending dipath of (s, dst) crosses the given uplink:
//   s_1..s_k == u_1..u_k, dst_{k+1}..dst_ell == u_{k+1}..u_ell, dst_k != u_k.
inline bool descending_uses_uplink(const Topology& t, HostId s, HostId dst, int layer, HostId u) {
    if (t.digit(dst, layer) == t.digit(u, layer)) return false;
    for (int i = 1; i <= layer; ++i) {
        if (t.digit(s, i) != t.digit(u, i)) return false;
    }
    for (int i = layer + 1; i <= t.ell(); ++i) {
        if (t.digit(dst, i) != t.digit(u, i)) return false;
    }
    return true;
}

// Downlink analog: s_1..s_{k-1} == v_1..v_{k-1}, dst_k..dst_ell == v_k..v_ell, s_k != v_k.
inline bool descending_uses_downlink(const Topology& t, HostId s, HostId dst, int layer, HostId v) {
    if (t.digit(s, layer) == t.digit(v, layer)) return false;
    for (int i = 1; i < layer; ++i) {
        if (t.digit(s, i) != t.digit(v, i)) return false;
    }
    for (int i = layer; i <= t.ell(); ++i) {
        if (t.digit(dst, i) != t.digit(v, i)) return false;
    }
    return true;
}

/// Number of ordered host pairs whose descending dipath crosses `link`,
/// decided per pair from the address condition alone (no path is built).
inline std::uint64_t uplink_pair_count(const Topology& t, int layer, LinkId link) {
    if (index(link) >= t.link_count()) throw DomainError("link id outside topology");
    if (t.link_direction(link) != LinkDirection::uplink) throw DomainError("uplink_pair_count: link is a downlink");
    if (t.link_layer(link) != layer) throw DomainError("uplink_pair_count: link is not at layer " + std::to_string(layer));
    const HostId u = t.link_host(link);
    std::uint64_t count = 0;
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            count += descending_uses_uplink(t, HostId{s}, HostId{dst}, layer, u);
        }
    }
    return count;
}

inline std::uint64_t downlink_pair_count(const Topology& t, int layer, LinkId link) {
    if (index(link) >= t.link_count()) throw DomainError("link id outside topology");
    if (t.link_direction(link) != LinkDirection::downlink) {
        throw DomainError("downlink_pair_count: link is an uplink");
    }
    if (t.link_layer(link) != layer) {
        throw DomainError("downlink_pair_count: link is not at layer " + std::to_string(layer));
    }
    const HostId v = t.link_host(link);
    std::uint64_t count = 0;
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            count += descending_uses_downlink(t, HostId{s}, HostId{dst}, layer, v);
        }
    }
    return count;
}

} // namespace bcube
