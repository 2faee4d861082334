#pragma once

#include <bcube/coloring.hpp>
#include <bcube/cpr.hpp>
#include <bcube/error.hpp>
#include <bcube/routing.hpp>
#include <bcube/rwa.hpp>
#include <bcube/topology.hpp>

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bcube {

using Rational = boost::rational<std::int64_t>;

inline std::uint64_t ceil_rational(const Rational& r) {
    if (r < 0) throw DomainError("ceil_rational: negative value");
    return static_cast<std::uint64_t>((r.numerator() + r.denominator() - 1) / r.denominator());
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

inline void check_parameters(int ell, int d) {
    if (ell < 1) throw DomainError("ell must be >= 1");
    if (d < 2) throw DomainError("d must be >= 2");
}

// ---------------------------------------------------------------------------
// Closed forms

// d^ell - d^(ell-1)
inline std::uint64_t forwarding_index(int ell, int d) {
    check_parameters(ell, d);
    const auto top = checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell));
    return top - top / static_cast<std::uint64_t>(d);
}

// Mean over ordered host pairs of the arc distance (two arcs per hop):
// 2 ell (d-1)/d * N/(N-1).
inline Rational avg_host_distance(int ell, int d) {
    check_parameters(ell, d);
    const auto n = static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell)));
    return Rational(2 * ell * (d - 1), d) * Rational(n, n - 1);
}

// Same quantity by averaging 2 * Hamming distance over every ordered pair.
inline Rational avg_host_distance_bruteforce(const Topology& t) {
    std::int64_t sum = 0;
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            if (s != dst) sum += 2 * static_cast<std::int64_t>(hamming_distance(t, HostId{s}, HostId{dst}));
        }
    }
    const std::int64_t n = t.host_count();
    return Rational(sum, n * (n - 1));
}

// N(N-1) * avg distance / number of arcs, exact (before taking the ceiling).
inline Rational load_lower_bound(int ell, int d, const Rational& avg_distance) {
    const auto n = static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell)));
    return Rational(n * (n - 1)) * avg_distance / Rational(2 * ell * n);
}

inline std::uint64_t load_lower_bound_ceiling(int ell, int d) {
    return ceil_rational(load_lower_bound(ell, d, avg_host_distance(ell, d)));
}

// Optical-index upper bound: d-1 (ell=1), d^2-d (ell=2),
// d^ell - d^floor(ell/2) - (floor(ell/2) - 1) otherwise.
inline std::uint64_t optical_upper_bound(int ell, int d) {
    check_parameters(ell, d);
    const auto du = static_cast<std::uint64_t>(d);
    if (ell == 1) return du - 1;
    if (ell == 2) return du * du - du;
    const unsigned half = static_cast<unsigned>(ell) / 2;
    return checked_pow(du, static_cast<unsigned>(ell)) - checked_pow(du, half) - (half - 1);
}

inline std::uint64_t loose_upper_bound(int ell, int d) {
    check_parameters(ell, d);
    return checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell)) - 1;
}

// Sum over classes of (max degree + 1), closed form:
// (d^ell - 1) - sum_{k=1}^{floor(ell/2)} C(ell-k, k) (d-1)^k.
inline std::uint64_t class_palette_total(int ell, int d) {
    check_parameters(ell, d);
    std::uint64_t total = loose_upper_bound(ell, d);
    for (int k = 1; k <= ell / 2; ++k) {
        total -= binomial(static_cast<std::uint64_t>(ell - k), static_cast<std::uint64_t>(k)) *
                 checked_pow(static_cast<std::uint64_t>(d - 1), static_cast<unsigned>(k));
    }
    return total;
}

// Same sum measured on explicitly built class graphs.
inline std::uint64_t class_palette_total_from_graphs(int ell, int d, std::uint64_t host_cap = 10'000) {
    std::uint64_t total = 0;
    for (int k = 1; k <= ell; ++k) total += build_conflict_graph(ell, d, k, host_cap).graph.max_degree() + 1;
    return total;
}

// ---------------------------------------------------------------------------
// Brute-force oracles over shortest-path routings

struct OracleOptions {
    std::uint32_t host_limit = 8;
    std::uint64_t combination_limit = 10'000'000;
    std::size_t path_node_limit = 24;  // exact coloring of the path-conflict graph
};

struct OracleResult {
    std::uint64_t value = 0;
    std::uint64_t routings_examined = 0;
    // Meeting the load lower bound certifies optimality over all routings,
    // not only shortest-path ones.
    bool meets_lower_bound = false;

    std::string label() const {
        return meets_lower_bound ? "optimal (meets load lower bound)" : "shortest-path-restricted minimum";
    }
};

namespace detail {

struct PairOptions {
    std::vector<std::vector<LinkId>> choices;  // link lists, one per shortest path
};

inline std::vector<PairOptions> shortest_path_options(const Topology& t, const OracleOptions& opts) {
    if (t.host_count() > opts.host_limit) {
        throw CapacityError("oracle limited to " + std::to_string(opts.host_limit) + " hosts, B(" +
                            std::to_string(t.ell()) + "," + std::to_string(t.radix()) + ") has " +
                            std::to_string(t.host_count()));
    }
    std::vector<PairOptions> pairs;
    std::uint64_t combinations = 1;
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            if (s == dst) continue;
            PairOptions p;
            for (const DiPath& path : enumerate_shortest_paths(t, HostId{s}, HostId{dst})) {
                p.choices.push_back(traversed_links(t, path));
            }
            if (combinations > opts.combination_limit / p.choices.size()) {
                throw CapacityError("more than " + std::to_string(opts.combination_limit) +
                                    " shortest-path routings to enumerate");
            }
            combinations *= p.choices.size();
            pairs.push_back(std::move(p));
        }
    }
    // Single-choice pairs first so pruning sees their load immediately.
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const PairOptions& a, const PairOptions& b) { return a.choices.size() < b.choices.size(); });
    return pairs;
}

struct OracleSearch {
    const Topology& t;
    const std::vector<PairOptions>& pairs;
    std::vector<std::uint64_t> loads;
    std::vector<std::size_t> chosen;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t examined = 0;
    bool optical = false;
    std::size_t node_limit = 24;

    void apply(std::size_t i, std::size_t c, std::uint64_t& cur_max, int delta) {
        for (LinkId l : pairs[i].choices[c]) {
            loads[index(l)] = static_cast<std::uint64_t>(static_cast<std::int64_t>(loads[index(l)]) + delta);
            if (delta > 0) cur_max = std::max(cur_max, loads[index(l)]);
        }
    }

    std::uint64_t leaf_value() const {
        if (!optical) return *std::max_element(loads.begin(), loads.end());
        SimpleGraph g(pairs.size());
        std::vector<std::vector<std::uint32_t>> on_link(t.link_count());
        for (std::uint32_t i = 0; i < pairs.size(); ++i) {
            for (LinkId l : pairs[i].choices[chosen[i]]) on_link[index(l)].push_back(i);
        }
        for (const auto& users : on_link) {
            for (std::size_t a = 0; a < users.size(); ++a) {
                for (std::size_t b = a + 1; b < users.size(); ++b) g.add_edge(users[a], users[b]);
            }
        }
        return chromatic_number(g, node_limit);
    }

    void search(std::size_t i, std::uint64_t cur_max) {
        // The number of paths on a link bounds both the max load and the colors needed.
        if (cur_max >= best) return;
        if (i == pairs.size()) {
            ++examined;
            best = std::min(best, leaf_value());
            return;
        }
        for (std::size_t c = 0; c < pairs[i].choices.size(); ++c) {
            std::uint64_t next_max = cur_max;
            chosen[i] = c;
            apply(i, c, next_max, +1);
            search(i + 1, next_max);
            apply(i, c, next_max, -1);
        }
    }
};

inline OracleResult run_oracle(const Topology& t, const OracleOptions& opts, bool optical) {
    const auto pairs = shortest_path_options(t, opts);
    if (optical && pairs.size() > opts.path_node_limit) {
        throw CapacityError("path-conflict graph would have " + std::to_string(pairs.size()) +
                            " nodes, above the exact-coloring limit of " + std::to_string(opts.path_node_limit));
    }
    OracleSearch s{t, pairs, std::vector<std::uint64_t>(t.link_count(), 0), std::vector<std::size_t>(pairs.size(), 0)};
    s.optical = optical;
    s.node_limit = opts.path_node_limit;
    s.search(0, 0);
    const std::uint64_t lower = ceil_rational(
        load_lower_bound(t.ell(), static_cast<int>(t.radix()), avg_host_distance_bruteforce(t)));
    return OracleResult{s.best, s.examined, s.best == lower};
}

} // namespace detail

/// Minimum, over every choice of one shortest path per ordered host pair,
/// of the maximum link load.
inline OracleResult bruteforce_forwarding_index(const Topology& t, const OracleOptions& opts = {}) {
    return detail::run_oracle(t, opts, false);
}

/// Minimum, over every choice of one shortest path per ordered host pair,
/// of the chromatic number of the path-conflict graph (paths adjacent iff
/// they share a directed link). Wavelengths are chosen per path.
inline OracleResult bruteforce_optical_index(const Topology& t, const OracleOptions& opts = {}) {
    return detail::run_oracle(t, opts, true);
}

// ---------------------------------------------------------------------------
// Report

struct IndexReport {
    int ell = 1;
    int d = 2;
    std::uint64_t forwarding_index = 0;      // closed form
    std::uint64_t star_max_link_load = 0;    // enumerated on R*
    Rational avg_host_distance;              // closed form
    Rational avg_host_distance_measured;     // brute force
    Rational lower_bound_exact;
    std::uint64_t lower_bound = 0;           // ceiling of lower_bound_exact
    std::uint64_t optical_lower = 0;
    std::uint64_t optical_upper = 0;
    std::uint64_t optical_upper_loose = 0;
    std::map<std::string, std::uint32_t> achieved;  // scheme -> wavelengths
    std::optional<OracleResult> oracle_forwarding;
    std::optional<OracleResult> oracle_optical;

    std::optional<std::uint32_t> achieved_for(const std::string& scheme) const {
        auto it = achieved.find(scheme);
        if (it == achieved.end()) return std::nullopt;
        return it->second;
    }
};

struct ReportOptions {
    std::uint64_t host_cap = 10'000;
    bool run_oracles = true;  // skipped silently when the instance is not admissible
    OracleOptions oracle;
};

// Every violated relation, one line each; empty when the report is consistent.
inline std::vector<std::string> bound_chain_violations(const IndexReport& r) {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what);
    };
    const auto pi = r.forwarding_index;
    need(r.star_max_link_load == pi, "max link load of R* (" + std::to_string(r.star_max_link_load) +
                                         ") != d^ell - d^(ell-1) (" + std::to_string(pi) + ")");
    need(r.avg_host_distance == r.avg_host_distance_measured,
         "average host distance formula " + to_string(r.avg_host_distance) + " != measured " +
             to_string(r.avg_host_distance_measured));
    need(r.lower_bound == pi, "load lower bound " + std::to_string(r.lower_bound) +
                                         " != forwarding index " + std::to_string(pi));
    need(r.optical_lower == pi, "optical lower bound differs from forwarding index");
    need(r.optical_upper <= r.optical_upper_loose, "upper bound exceeds d^ell - 1");
    need(pi <= r.optical_upper, "upper bound below forwarding index");
    for (const auto& [scheme, count] : r.achieved) {
        need(pi <= count, scheme + " uses " + std::to_string(count) + " wavelengths, below the forwarding index " +
                              std::to_string(pi));
        need(count <= r.optical_upper_loose, scheme + " uses more than d^ell - 1 wavelengths");
    }
    const auto layered = r.achieved_for("layered");
    const auto greedy = r.achieved_for("greedy");
    if (layered) {
        need(*layered <= r.optical_upper, "layered uses " + std::to_string(*layered) +
                                                    " wavelengths, above the upper bound " +
                                                    std::to_string(r.optical_upper));
        if (r.ell <= 2) need(*layered == r.optical_upper, "layered is not exact for ell <= 2");
    }
    if (layered && greedy) {
        need(*greedy <= *layered, "greedy (" + std::to_string(*greedy) + ") uses more than layered (" +
                                      std::to_string(*layered) + ")");
    }
    if (const auto two = r.achieved_for("two-layer")) need(*two == r.optical_upper, "two-layer count not d^2-d");
    if (const auto obl = r.achieved_for("oblivious")) need(*obl == r.optical_upper_loose, "oblivious count not d^ell-1");
    if (r.oracle_forwarding) need(r.oracle_forwarding->value == pi, "forwarding oracle disagrees with closed form");
    if (r.oracle_optical) {
        need(pi <= r.oracle_optical->value && r.oracle_optical->value <= r.optical_upper,
             "optical oracle outside [forwarding index, upper bound]");
    }
    return bad;
}

/// Computes every closed form, runs the requested schemes (each plan is
/// re-verified), runs the oracles when admissible, and throws
/// VerificationError listing every violated relation.
inline IndexReport full_report(int ell, int d, const std::vector<Scheme>& schemes, const ReportOptions& opts = {}) {
    const Topology t = Topology::build(ell, d, BuildOptions{opts.host_cap});
    IndexReport r;
    r.ell = ell;
    r.d = d;
    r.forwarding_index = forwarding_index(ell, d);
    r.star_max_link_load = max_link_load(star_link_loads(t));
    r.avg_host_distance = avg_host_distance(ell, d);
    r.avg_host_distance_measured = avg_host_distance_bruteforce(t);
    r.lower_bound_exact = load_lower_bound(ell, d, r.avg_host_distance_measured);
    r.lower_bound = ceil_rational(r.lower_bound_exact);
    r.optical_lower = r.lower_bound;
    r.optical_upper = optical_upper_bound(ell, d);
    r.optical_upper_loose = loose_upper_bound(ell, d);

    std::vector<std::string> problems;
    for (Scheme s : schemes) {
        const RwaPlan plan = make_plan(t, s);
        const PlanVerification v = verify_plan(t, plan);
        if (!v.ok()) problems.push_back(std::string(to_string(s)) + " plan fails verification: " + v.problem);
        r.achieved[plan.scheme] = plan.wavelength_count;
    }
    if (opts.run_oracles) {
        try {
            r.oracle_forwarding = bruteforce_forwarding_index(t, opts.oracle);
        } catch (const CapacityError&) {
        }
        try {
            r.oracle_optical = bruteforce_optical_index(t, opts.oracle);
        } catch (const CapacityError&) {
        }
    }
    for (auto& p : bound_chain_violations(r)) problems.push_back(std::move(p));
    if (!problems.empty()) {
        std::string msg = "B(" + std::to_string(ell) + "," + std::to_string(d) + ") report inconsistent:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw VerificationError(msg);
    }
    return r;
}

} // namespace bcube
