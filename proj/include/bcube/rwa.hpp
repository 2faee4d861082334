#pragma once

#include <bcube/coloring.hpp>
#include <bcube/cpr.hpp>
#include <bcube/error.hpp>
#include <bcube/routing.hpp>
#include <bcube/topology.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bcube {

// Routing and wavelength assignment for full host-to-host traffic.
//
// Every scheme here routes on descending dipaths and gives all paths of one
// permutation class the same wavelength; the schemes differ only in how
// classes are mapped to wavelengths.

struct Wavelength {
    std::uint32_t id = 0;
    std::optional<PermVector> label;  // vector name w_1..w_ell, where the scheme has one
};

struct Assignment {
    DiPath path;
    Wavelength wavelength;
};

// Summary of how one class C_k (vectors with k nonzero digits) was colored.
struct ClassColoring {
    int k = 1;
    std::size_t nodes = 0;
    std::size_t degree = 0;  // max degree of G_k
    std::uint32_t colors = 0;
    std::uint32_t offset = 0;  // first wavelength id of the class
    std::string method;        // "greedy", "dsatur" or "exact"
};

struct RwaPlan {
    std::string scheme;
    int ell = 1;
    Digit d = 2;
    std::vector<Assignment> assignments;  // ordered by (source, destination)
    std::uint32_t wavelength_count = 0;
    std::vector<ClassColoring> classes;  // layered scheme only
    std::string note;
};

// ---------------------------------------------------------------------------
// Closed forms for the class conflict graphs

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::uint64_t conflict_class_size(int ell, int d, int k) {
    return binomial(static_cast<std::uint64_t>(ell), static_cast<std::uint64_t>(k)) *
           checked_pow(static_cast<std::uint64_t>(d - 1), static_cast<unsigned>(k));
}

// (C(ell,k) - C(ell-k,k)) (d-1)^k - 1, with C(ell-k,k) = 0 once 2k > ell.
inline std::uint64_t conflict_class_degree(int ell, int d, int k) {
    const std::uint64_t disjoint = 2 * k <= ell ? binomial(static_cast<std::uint64_t>(ell - k),
                                                           static_cast<std::uint64_t>(k))
                                                : 0;
    return (binomial(static_cast<std::uint64_t>(ell), static_cast<std::uint64_t>(k)) - disjoint) *
               checked_pow(static_cast<std::uint64_t>(d - 1), static_cast<unsigned>(k)) -
           1;
}

// ---------------------------------------------------------------------------
// Conflict graphs

/// Nonzero permutation vectors, adjacent iff their supports intersect
/// (some layer i with x_i != 0 and y_i != 0).
struct ConflictGraph {
    int ell = 1;
    Digit d = 2;
    std::optional<int> class_k;
    std::vector<std::uint32_t> nodes;  // mixed-radix codes, ascending
    SimpleGraph graph;

    PermVector perm(std::size_t node) const {
        return PermVector::decode(nodes[node], static_cast<std::size_t>(ell), d);
    }
};

inline std::uint64_t support_mask_of_code(std::uint32_t code, int ell, Digit d) {
    std::uint64_t mask = 0;
    for (int i = ell; i >= 1; --i) {
        if (code % d != 0) mask |= std::uint64_t{1} << (i - 1);
        code /= d;
    }
    return mask;
}

inline ConflictGraph build_conflict_graph(int ell, int d, std::optional<int> class_k = std::nullopt,
                                          std::uint64_t host_cap = 10'000) {
    if (ell < 1 || d < 2) throw DomainError("build_conflict_graph: need ell >= 1 and d >= 2");
    if (ell > 63) throw CapacityError("build_conflict_graph: ell too large");
    if (class_k && (*class_k < 1 || *class_k > ell)) {
        throw DomainError("conflict class k=" + std::to_string(*class_k) + " outside [1, " + std::to_string(ell) + "]");
    }
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell));
    if (total > host_cap) throw CapacityError("conflict graph for d^ell = " + std::to_string(total) + " above cap");

    ConflictGraph cg;
    cg.ell = ell;
    cg.d = static_cast<Digit>(d);
    cg.class_k = class_k;
    std::vector<std::uint64_t> masks;
    for (std::uint32_t code = 1; code < total; ++code) {
        const std::uint64_t mask = support_mask_of_code(code, ell, cg.d);
        if (class_k && std::popcount(mask) != *class_k) continue;
        cg.nodes.push_back(code);
        masks.push_back(mask);
    }
    cg.graph = SimpleGraph(cg.nodes.size());
    for (std::uint32_t u = 0; u < cg.nodes.size(); ++u) {
        for (std::uint32_t v = u + 1; v < cg.nodes.size(); ++v) {
            if (masks[u] & masks[v]) cg.graph.add_edge(u, v);
        }
    }
    return cg;
}

inline std::vector<std::uint32_t> conflict_coloring_order(const ConflictGraph& cg) {
    std::vector<std::uint64_t> keys(cg.nodes.begin(), cg.nodes.end());
    return degree_descending_order(cg.graph, keys);
}

// ---------------------------------------------------------------------------
// Class -> wavelength maps (indexed by permutation code; entry 0 unused)

struct ClassWavelengths {
    std::vector<std::uint32_t> of_code;
    std::uint32_t count = 0;
    std::vector<ClassColoring> classes;
};

// Per-class coloring with disjoint color ranges across classes. Within C_1
// the ell support groups are disjoint cliques that share one palette of d-1
// colors. For 2 <= k <= floor(ell/2) the achieved count is checked against
// max degree (Brooks); greedy falls back to DSatur and then to an exact
// coloring (classes of at most 20 nodes).
inline ClassWavelengths layered_wavelengths(int ell, int d, std::uint64_t host_cap = 10'000) {
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell));
    if (total > host_cap) throw CapacityError("d^ell above host cap");
    ClassWavelengths out;
    out.of_code.assign(total, 0);
    const int half = ell / 2;
    std::uint32_t offset = 0;
    for (int k = 1; k <= ell; ++k) {
        const ConflictGraph cg = build_conflict_graph(ell, d, k, host_cap);
        const std::size_t delta = cg.graph.max_degree();
        Coloring c = color_greedy(cg.graph, conflict_coloring_order(cg));
        std::string method = "greedy";
        if (k >= 2 && k <= half && c.count > delta) {
            Coloring alt = color_dsatur(cg.graph);
            if (alt.count < c.count) {
                c = std::move(alt);
                method = "dsatur";
            }
            if (c.count > delta && cg.nodes.size() <= 20) {
                c = color_exact(cg.graph, 20);
                method = "exact";
            }
            if (c.count > delta) {
                throw VerificationError("class C_" + std::to_string(k) + " colored with " + std::to_string(c.count) +
                                        " colors, above its max degree " + std::to_string(delta));
            }
        }
        if (k == 1 && c.count != static_cast<std::uint32_t>(d - 1)) {
            throw VerificationError("class C_1 needs exactly d-1 colors, got " + std::to_string(c.count));
        }
        if (!c.is_proper(cg.graph)) throw VerificationError("improper coloring of class C_" + std::to_string(k));
        for (std::size_t i = 0; i < cg.nodes.size(); ++i) out.of_code[cg.nodes[i]] = offset + c.color[i];
        out.classes.push_back(ClassColoring{k, cg.nodes.size(), delta, c.count, offset, method});
        offset += c.count;
    }
    out.count = offset;
    return out;
}

// Single first-fit pass over the full conflict graph, descending degree.
inline ClassWavelengths global_greedy_wavelengths(int ell, int d, std::uint64_t host_cap = 10'000) {
    const ConflictGraph cg = build_conflict_graph(ell, d, std::nullopt, host_cap);
    const Coloring c = color_greedy(cg.graph, conflict_coloring_order(cg));
    ClassWavelengths out;
    out.of_code.assign(cg.nodes.size() + 1, 0);
    for (std::size_t i = 0; i < cg.nodes.size(); ++i) out.of_code[cg.nodes[i]] = c.color[i];
    out.count = c.count;
    return out;
}

// ---------------------------------------------------------------------------
// Plans

namespace detail {

// Descending paths for all ordered pairs; wavelength from the class code.
// Ids are remapped to a dense 0-based range in ascending order.
template <class LabelFn>
RwaPlan build_class_plan(const Topology& t, std::string scheme, const std::vector<std::uint32_t>& wavelength_of_code,
                         LabelFn label_of_code) {
    std::vector<std::uint32_t> used;
    for (std::uint32_t code = 1; code < t.host_count(); ++code) used.push_back(wavelength_of_code[code]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<std::uint32_t, std::uint32_t> dense;
    for (std::uint32_t i = 0; i < used.size(); ++i) dense[used[i]] = i;

    RwaPlan plan;
    plan.scheme = std::move(scheme);
    plan.ell = t.ell();
    plan.d = t.radix();
    plan.wavelength_count = static_cast<std::uint32_t>(used.size());
    plan.assignments.reserve(static_cast<std::size_t>(t.host_count()) * (t.host_count() - 1));
    for (std::uint32_t s = 0; s < t.host_count(); ++s) {
        for (std::uint32_t dst = 0; dst < t.host_count(); ++dst) {
            if (s == dst) continue;
            const std::uint32_t code = classify_code(t, HostId{s}, HostId{dst});
            plan.assignments.push_back(Assignment{descending_path(t, HostId{s}, HostId{dst}),
                                                  Wavelength{dense.at(wavelength_of_code[code]), label_of_code(code)}});
        }
    }
    return plan;
}

} // namespace detail

// Wavelength vector w = (dst - src) mod d, digit-wise; depends on the two addresses only.
inline PermVector oblivious_assign(const Topology& t, HostId s, HostId dst) {
    if (s == dst) throw DomainError("oblivious_assign: source equals destination");
    return classify_pair(t, s, dst);
}

inline PermVector oblivious_assign(const Topology& t, const HostAddr& s, const HostAddr& dst) {
    return oblivious_assign(t, t.host_id(s), t.host_id(dst));
}

inline RwaPlan oblivious_plan(const Topology& t) {
    std::vector<std::uint32_t> of_code(t.host_count());
    for (std::uint32_t code = 0; code < t.host_count(); ++code) of_code[code] = code;
    const auto ell = static_cast<std::size_t>(t.ell());
    return detail::build_class_plan(t, "oblivious", of_code, [&](std::uint32_t code) {
        return std::optional<PermVector>(PermVector::decode(code, ell, t.radix()));
    });
}

// Two-layer scheme: w = p1 p2 when p2 != 0, else w = 0 p1, so R(x0) and R(0x) share wavelength 0x.
inline PermVector two_layer_label(const PermVector& p) {
    if (p.size() != 2) throw DomainError("two_layer_label: vector must have 2 digits");
    if (p.digit(2) != 0) return p;
    return PermVector{0, p.digit(1)};
}

inline RwaPlan two_layer_plan(const Topology& t) {
    if (t.ell() != 2) throw DomainError("two_layer_plan requires ell = 2, got " + std::to_string(t.ell()));
    std::vector<std::uint32_t> of_code(t.host_count());
    for (std::uint32_t code = 1; code < t.host_count(); ++code) {
        of_code[code] = static_cast<std::uint32_t>(
            two_layer_label(PermVector::decode(code, 2, t.radix())).encode(t.radix()));
    }
    return detail::build_class_plan(t, "two-layer", of_code, [&](std::uint32_t code) {
        return std::optional<PermVector>(two_layer_label(PermVector::decode(code, 2, t.radix())));
    });
}

inline RwaPlan layered_plan(const Topology& t) {
    const ClassWavelengths cw = layered_wavelengths(t.ell(), static_cast<int>(t.radix()), t.host_count());
    RwaPlan plan = detail::build_class_plan(t, "layered", cw.of_code,
                                            [](std::uint32_t) { return std::optional<PermVector>{}; });
    plan.classes = cw.classes;
    return plan;
}

// Never worse than the layered scheme: when the single greedy pass needs
// more colors, the layered coloring (also proper on the full graph) is kept.
inline RwaPlan greedy_global_plan(const Topology& t) {
    const std::uint64_t cap = t.host_count();
    const ClassWavelengths greedy = global_greedy_wavelengths(t.ell(), static_cast<int>(t.radix()), cap);
    const ClassWavelengths layered = layered_wavelengths(t.ell(), static_cast<int>(t.radix()), cap);
    const bool fallback = greedy.count > layered.count;
    RwaPlan plan = detail::build_class_plan(t, "greedy", fallback ? layered.of_code : greedy.of_code,
                                            [](std::uint32_t) { return std::optional<PermVector>{}; });
    if (fallback) plan.note = "global greedy used more colors than the layered scheme; kept layered coloring";
    return plan;
}

enum class Scheme { oblivious, layered, greedy, two_layer };

inline std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "oblivious") return Scheme::oblivious;
    if (name == "layered") return Scheme::layered;
    if (name == "greedy") return Scheme::greedy;
    if (name == "two-layer") return Scheme::two_layer;
    return std::nullopt;
}

inline const char* to_string(Scheme s) {
    switch (s) {
    case Scheme::oblivious: return "oblivious";
    case Scheme::layered: return "layered";
    case Scheme::greedy: return "greedy";
    case Scheme::two_layer: return "two-layer";
    }
    return "?";
}

inline RwaPlan make_plan(const Topology& t, Scheme scheme) {
    switch (scheme) {
    case Scheme::oblivious: return oblivious_plan(t);
    case Scheme::layered: return layered_plan(t);
    case Scheme::greedy: return greedy_global_plan(t);
    case Scheme::two_layer: return two_layer_plan(t);
    }
    throw DomainError("unknown scheme");
}

// ---------------------------------------------------------------------------
// Plan verification

struct BlockingWitness {
    LinkId link{};
    std::uint32_t wavelength = 0;
    std::size_t assignment_a = 0;
    std::size_t assignment_b = 0;
};

struct PlanVerification {
    bool complete = true;     // one valid path per ordered host pair
    bool nonblocking = true;  // no link carries one wavelength twice
    std::string problem;
    std::optional<BlockingWitness> witness;

    bool ok() const { return complete && nonblocking; }
};

inline PlanVerification verify_plan(const Topology& t, const RwaPlan& plan) {
    PlanVerification out;
    const std::uint64_t n = t.host_count();
    std::vector<char> seen(n * n, 0);
    for (const Assignment& a : plan.assignments) {
        try {
            validate_path(t, a.path);
        } catch (const IntegrityError& e) {
            out.complete = false;
            out.problem = e.what();
            return out;
        }
        if (a.path.source == a.path.destination) {
            out.complete = false;
            out.problem = "self pair " + t.host_string(a.path.source);
            return out;
        }
        char& mark = seen[static_cast<std::uint64_t>(index(a.path.source)) * n + index(a.path.destination)];
        if (mark) {
            out.complete = false;
            out.problem = "duplicate pair " + t.host_string(a.path.source) + "->" + t.host_string(a.path.destination);
            return out;
        }
        mark = 1;
        if (a.wavelength.id >= plan.wavelength_count) {
            out.complete = false;
            out.problem = "wavelength id " + std::to_string(a.wavelength.id) + " not below wavelength_count";
            return out;
        }
    }
    if (plan.assignments.size() != n * (n - 1)) {
        out.complete = false;
        out.problem = "plan covers " + std::to_string(plan.assignments.size()) + " of " + std::to_string(n * (n - 1)) +
                      " ordered pairs";
        return out;
    }

    // (link, wavelength, assignment) triples; a repeated (link, wavelength) blocks.
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>> uses;
    for (std::size_t i = 0; i < plan.assignments.size(); ++i) {
        for (LinkId l : traversed_links(t, plan.assignments[i].path)) {
            uses.emplace_back(index(l), plan.assignments[i].wavelength.id, i);
        }
    }
    std::sort(uses.begin(), uses.end());
    for (std::size_t i = 1; i < uses.size(); ++i) {
        const auto& [l0, w0, a0] = uses[i - 1];
        const auto& [l1, w1, a1] = uses[i];
        if (l0 == l1 && w0 == w1) {
            out.nonblocking = false;
            out.witness = BlockingWitness{LinkId{l0}, w0, a0, a1};
            out.problem = "wavelength " + std::to_string(w0) + " used twice on " + t.link_string(LinkId{l0});
            return out;
        }
    }
    return out;
}

// Whether every permutation class is carried on a single wavelength.
inline bool wavelength_per_class_uniform(const Topology& t, const RwaPlan& plan) {
    constexpr std::uint32_t unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> of_code(t.host_count(), unset);
    for (const Assignment& a : plan.assignments) {
        std::uint32_t& w = of_code[classify_code(t, a.path.source, a.path.destination)];
        if (w == unset) w = a.wavelength.id;
        if (w != a.wavelength.id) return false;
    }
    return true;
}

} // namespace bcube
