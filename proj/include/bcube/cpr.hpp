#pragma once

#include <bcube/error.hpp>
#include <bcube/routing.hpp>
#include <bcube/topology.hpp>

#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace bcube {

// Cyclic permutation routing (CPR) support: every ordered host pair belongs
// to exactly one class P(p), p = dst - src digit-wise mod d, and the
// descending dipaths of one class are pairwise link-disjoint.

using HostPair = std::pair<HostId, HostId>;

inline PermVector classify_pair(const Topology& t, HostId s, HostId dst) {
    std::vector<Digit> p(static_cast<std::size_t>(t.ell()));
    for (int k = 1; k <= t.ell(); ++k) {
        p[static_cast<std::size_t>(k - 1)] = (t.digit(dst, k) + t.radix() - t.digit(s, k)) % t.radix();
    }
    return PermVector(std::move(p));
}

inline PermVector classify_pair(const Topology& t, const HostAddr& s, const HostAddr& dst) {
    return classify_pair(t, t.host_id(s), t.host_id(dst));
}

// Mixed-radix code of classify_pair(s, dst), without building the vector.
inline std::uint32_t classify_code(const Topology& t, HostId s, HostId dst) {
    std::uint32_t code = 0;
    for (int k = 1; k <= t.ell(); ++k) {
        code = code * t.radix() + (t.digit(dst, k) + t.radix() - t.digit(s, k)) % t.radix();
    }
    return code;
}

// Destination of s under P(p).
inline HostId shift_host(const Topology& t, HostId s, const PermVector& p) {
    HostId out = s;
    for (int k = 1; k <= t.ell(); ++k) {
        out = t.with_digit(out, k, (t.digit(s, k) + p.digit(static_cast<std::size_t>(k))) % t.radix());
    }
    return out;
}

inline void check_perm(const Topology& t, const PermVector& p) {
    if (p.size() != static_cast<std::size_t>(t.ell())) throw DomainError("permutation vector length != ell");
    for (Digit x : p.digits()) {
        if (x >= t.radix()) throw DomainError("permutation digit out of Z_d");
    }
}

/// All ordered host pairs grouped by permutation class; `classes[code]`
/// holds the pairs of the class whose vector has mixed-radix value `code`.
/// classes[0] (the zero permutation) stays empty.
struct TrafficClasses {
    std::vector<std::vector<HostPair>> classes;

    const std::vector<HostPair>& at(const Topology& t, const PermVector& p) const {
        check_perm(t, p);
        return classes[static_cast<std::size_t>(p.encode(t.radix()))];
    }
};

inline TrafficClasses decompose_traffic(const Topology& t) {
    TrafficClasses out;
    out.classes.resize(t.host_count());
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            if (s == dst) continue;
            out.classes[classify_code(t, HostId{s}, HostId{dst})].emplace_back(HostId{s}, HostId{dst});
        }
    }
    return out;
}

struct CprRouting {
    PermVector perm;
    std::vector<DiPath> paths;  // one per source, in source order
};

inline CprRouting cpr_routing(const Topology& t, const PermVector& p) {
    check_perm(t, p);
    if (p.is_zero()) throw DomainError("cpr_routing: the zero permutation carries no traffic");
    CprRouting r{p, {}};
    r.paths.reserve(t.host_count());
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        r.paths.push_back(descending_path(t, HostId{s}, shift_host(t, HostId{s}, p)));
    }
    return r;
}

/// Host the descending path reaches after fixing digit ell
/// (the source itself when digit ell is already correct).
inline HostId intermediate_host(const Topology& t, const DiPath& path) {
    if (!path.hops.empty() && path.hops.front().layer == t.ell()) return path.hops.front().to;
    return path.source;
}

struct LinkSharingWitness {
    LinkId link{};
    std::size_t path_a = 0;  // indices into the checked path list
    std::size_t path_b = 0;
};

struct LinkDisjointCertificate {
    bool link_disjoint = true;
    std::optional<LinkSharingWitness> witness;
};

// The first link (in path order) carried by two paths, if any.
inline LinkDisjointCertificate verify_link_disjoint(const Topology& t, std::span<const DiPath> paths) {
    constexpr std::size_t unused = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(t.link_count(), unused);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        validate_path(t, paths[i]);
        for (LinkId l : traversed_links(t, paths[i])) {
            std::size_t& slot = owner[index(l)];
            if (slot != unused && slot != i) {
                return {false, LinkSharingWitness{l, slot, i}};
            }
            slot = i;
        }
    }
    return {true, std::nullopt};
}

inline LinkDisjointCertificate verify_link_disjoint(const Topology& t, const CprRouting& r) {
    return verify_link_disjoint(t, std::span<const DiPath>(r.paths));
}

// Certificates for every nonzero class, computed on `workers` threads and
// returned in class-code order.
inline std::vector<std::pair<PermVector, LinkDisjointCertificate>> verify_all_cprs(const Topology& t,
                                                                                   unsigned workers = 1) {
    const std::uint32_t classes = t.host_count();
    std::vector<std::pair<PermVector, LinkDisjointCertificate>> out(classes - 1);
    auto run = [&](std::uint32_t begin, std::uint32_t end) {
        for (std::uint32_t code = begin; code < end; ++code) {
            PermVector p = PermVector::decode(code, static_cast<std::size_t>(t.ell()), t.radix());
            CprRouting r = cpr_routing(t, p);
            out[code - 1] = {p, verify_link_disjoint(t, r)};
        }
    };
    workers = std::max(1u, std::min(workers, classes - 1));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint32_t begin = 1 + (classes - 1) * w / workers;
        const std::uint32_t end = 1 + (classes - 1) * (w + 1) / workers;
        jobs.push_back(std::async(std::launch::async, run, begin, end));
    }
    for (auto& j : jobs) j.get();
    return out;
}

// Layers i with p_i != 0.
inline std::set<int> layer_usage(const PermVector& p) {
    std::set<int> out;
    for (std::size_t i = 1; i <= p.size(); ++i) {
        if (p.digit(i) != 0) out.insert(static_cast<int>(i));
    }
    return out;
}

inline std::uint64_t support_mask(const PermVector& p) {
    std::uint64_t mask = 0;
    for (std::size_t i = 1; i <= p.size(); ++i) {
        if (p.digit(i) != 0) mask |= std::uint64_t{1} << (i - 1);
    }
    return mask;
}

struct LayerCollision {
    int layer = 1;
    bool expected = false;  // both vectors nonzero at this layer
    std::uint64_t shared_uplinks = 0;
    std::uint64_t shared_downlinks = 0;

    std::uint64_t shared_links() const { return shared_uplinks + shared_downlinks; }
};

struct CollisionReport {
    PermVector x;
    PermVector y;
    std::vector<LayerCollision> layers;  // index i-1 for layer i

    // Shared links exist exactly on the doubly-nonzero layers.
    bool consistent() const {
        for (const auto& l : layers) {
            if (l.expected != (l.shared_links() > 0)) return false;
        }
        return true;
    }
};

inline CollisionReport verify_collision(const Topology& t, const PermVector& x, const PermVector& y) {
    if (x == y) throw DomainError("verify_collision: vectors must differ");
    const CprRouting rx = cpr_routing(t, x);
    const CprRouting ry = cpr_routing(t, y);
    const LinkLoads lx = link_loads(t, std::span<const DiPath>(rx.paths));
    const LinkLoads ly = link_loads(t, std::span<const DiPath>(ry.paths));

    CollisionReport report{x, y, {}};
    for (int i = 1; i <= t.ell(); ++i) {
        LayerCollision lc;
        lc.layer = i;
        lc.expected = x.digit(static_cast<std::size_t>(i)) != 0 && y.digit(static_cast<std::size_t>(i)) != 0;
        for (std::uint32_t h = 0; h < t.host_count(); ++h) {
            const LinkId up = t.uplink(HostId{h}, i);
            const LinkId down = t.downlink(HostId{h}, i);
            lc.shared_uplinks += lx[index(up)] > 0 && ly[index(up)] > 0;
            lc.shared_downlinks += lx[index(down)] > 0 && ly[index(down)] > 0;
        }
        report.layers.push_back(lc);
    }
    return report;
}

} // namespace bcube
