#pragma once

#include <bcube/analysis.hpp>
#include <bcube/cpr.hpp>
#include <bcube/routing.hpp>
#include <bcube/rwa.hpp>
#include <bcube/topology.hpp>

#include <json.hpp>

#include <bit>
#include <sstream>
#include <string>
#include <vector>

namespace bcube {

// Serialization: JSON dumps, DOT graphs, CSV tables. Host and switch digit
// strings print digit 1 first.

using json = nlohmann::ordered_json;

inline json to_json(const Topology& t, LinkId l) {
    return json{{"direction", to_string(t.link_direction(l))},
                {"layer", t.link_layer(l)},
                {"host", t.host_string(t.link_host(l))}};
}

// Host strings from source to destination.
inline json path_hosts_json(const Topology& t, const DiPath& path) {
    json hosts = json::array();
    hosts.push_back(t.host_string(path.source));
    for (const Hop& hop : path.hops) hosts.push_back(t.host_string(hop.to));
    return hosts;
}

inline std::string path_string(const Topology& t, const DiPath& path) {
    std::string out = t.host_string(path.source);
    for (const Hop& hop : path.hops) out += "->" + t.host_string(hop.to);
    return out;
}

// ---- topology ----

inline json topology_json(const Topology& t) {
    json hosts = json::array();
    for (std::uint32_t h = 0; h < t.host_count(); ++h) hosts.push_back(t.host_string(HostId{h}));
    json switches = json::array();
    for (std::uint32_t s = 0; s < t.switch_count(); ++s) {
        switches.push_back(json{{"layer", t.switch_layer(SwitchId{s})}, {"digits", t.switch_string(SwitchId{s})}});
    }
    return json{{"ell", t.ell()},
                {"d", t.radix()},
                {"host_count", t.host_count()},
                {"switch_count", t.switch_count()},
                {"link_count", t.link_count()},
                {"hosts", std::move(hosts)},
                {"switches", std::move(switches)}};
}

inline std::string topology_dot(const Topology& t) {
    std::ostringstream os;
    auto switch_node = [&](SwitchId s) {
        return "s" + std::to_string(t.switch_layer(s)) + "_" + t.switch_string(s);
    };
    os << "graph bcube {\n";
    os << "  // B(" << t.ell() << "," << t.radix() << ")\n";
    os << "  subgraph hosts {\n    rank=same;\n";
    for (std::uint32_t h = 0; h < t.host_count(); ++h) {
        const std::string name = t.host_string(HostId{h});
        os << "    \"h_" << name << "\" [shape=box, label=\"" << name << "\"];\n";
    }
    os << "  }\n";
    for (int k = 1; k <= t.ell(); ++k) {
        os << "  subgraph layer_" << k << " {\n    rank=same;\n";
        for (std::uint32_t i = 0; i < t.switches_per_layer(); ++i) {
            const SwitchId s{static_cast<std::uint32_t>(k - 1) * t.switches_per_layer() + i};
            os << "    \"" << switch_node(s) << "\" [shape=ellipse, layer=" << k << ", label=\"L" << k << ":"
               << t.switch_string(s) << "\"];\n";
        }
        os << "  }\n";
    }
    // One undirected edge per uplink/downlink pair.
    for (std::uint32_t h = 0; h < t.host_count(); ++h) {
        for (int k = 1; k <= t.ell(); ++k) {
            os << "  \"h_" << t.host_string(HostId{h}) << "\" -- \"" << switch_node(t.switch_of(HostId{h}, k))
               << "\" [port=" << t.digit(HostId{h}, k) << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

// ---- routing ----

inline json routing_json(const Topology& t, std::span<const DiPath> paths) {
    json out = json::array();
    for (const DiPath& p : paths) {
        json hops = json::array();
        for (const Hop& hop : p.hops) {
            hops.push_back(json{{"via_layer", hop.layer},
                                {"via_digits", t.switch_string(hop.via)},
                                {"to", t.host_string(hop.to)}});
        }
        out.push_back(json{{"source", t.host_string(p.source)},
                           {"destination", t.host_string(p.destination)},
                           {"hops", std::move(hops)}});
    }
    return out;
}

inline std::string load_csv(const Topology& t, const LinkLoads& loads) {
    std::ostringstream os;
    os << "layer,direction,host,load\n";
    for (std::uint32_t l = 0; l < t.link_count(); ++l) {
        os << t.link_layer(LinkId{l}) << ',' << to_string(t.link_direction(LinkId{l})) << ','
           << t.host_string(t.link_host(LinkId{l})) << ',' << loads.at(l) << '\n';
    }
    return os.str();
}

// ---- CPR certificates ----

inline json certificate_json(const Topology& t, const PermVector& perm, const LinkDisjointCertificate& cert,
                             std::span<const DiPath> paths) {
    json out{{"perm", to_string(perm, t.radix())}, {"link_disjoint", cert.link_disjoint}, {"witness", nullptr}};
    if (cert.witness) {
        out["witness"] = json{{"link", to_json(t, cert.witness->link)},
                              {"path_a", path_hosts_json(t, paths[cert.witness->path_a])},
                              {"path_b", path_hosts_json(t, paths[cert.witness->path_b])}};
    }
    return out;
}

inline json collision_json(const Topology& t, const CollisionReport& r) {
    json layers = json::array();
    for (const auto& l : r.layers) {
        layers.push_back(json{{"layer", l.layer},
                              {"both_nonzero", l.expected},
                              {"shared_uplinks", l.shared_uplinks},
                              {"shared_downlinks", l.shared_downlinks}});
    }
    return json{{"x", to_string(r.x, t.radix())}, {"y", to_string(r.y, t.radix())}, {"layers", std::move(layers)}};
}

// ---- RWA plans ----

inline json plan_json(const Topology& t, const RwaPlan& plan) {
    json assignments = json::array();
    for (const Assignment& a : plan.assignments) {
        json row{{"src", t.host_string(a.path.source)},
                 {"dst", t.host_string(a.path.destination)},
                 {"wavelength", a.wavelength.id},
                 {"path", path_hosts_json(t, a.path)}};
        if (a.wavelength.label) row["label"] = to_string(*a.wavelength.label, t.radix());
        assignments.push_back(std::move(row));
    }
    json out{{"scheme", plan.scheme},
             {"ell", plan.ell},
             {"d", plan.d},
             {"wavelength_count", plan.wavelength_count},
             {"assignments", std::move(assignments)}};
    if (!plan.classes.empty()) {
        json classes = json::array();
        for (const auto& c : plan.classes) {
            classes.push_back(json{{"k", c.k},
                                   {"nodes", c.nodes},
                                   {"max_degree", c.degree},
                                   {"colors", c.colors},
                                   {"offset", c.offset},
                                   {"method", c.method}});
        }
        out["classes"] = std::move(classes);
    }
    return out;
}

// Rebuilds a plan from its JSON form. Consecutive path hosts must differ in
// exactly one digit (that digit names the switch layer); anything else is
// an IntegrityError. Schema problems raise DomainError.
inline RwaPlan plan_from_json(const Topology& t, const json& j) {
    RwaPlan plan;
    try {
        plan.scheme = j.at("scheme").get<std::string>();
        plan.ell = t.ell();
        plan.d = t.radix();
        plan.wavelength_count = j.at("wavelength_count").get<std::uint32_t>();
        for (const json& row : j.at("assignments")) {
            const auto& hosts = row.at("path");
            if (hosts.size() < 2) throw IntegrityError("path with fewer than two hosts");
            std::vector<HostId> ids;
            for (const json& h : hosts) {
                ids.push_back(t.host_id(parse_digits<HostAddr>(h.get<std::string>(), static_cast<std::size_t>(t.ell()),
                                                               t.radix())));
            }
            DiPath path{ids.front(), ids.back(), {}};
            const HostId src = t.host_id(parse_digits<HostAddr>(row.at("src").get<std::string>(),
                                                                static_cast<std::size_t>(t.ell()), t.radix()));
            const HostId dst = t.host_id(parse_digits<HostAddr>(row.at("dst").get<std::string>(),
                                                                static_cast<std::size_t>(t.ell()), t.radix()));
            if (src != path.source || dst != path.destination) {
                throw IntegrityError("path endpoints do not match src/dst " + row.at("src").get<std::string>() + "->" +
                                     row.at("dst").get<std::string>());
            }
            for (std::size_t i = 1; i < ids.size(); ++i) {
                const auto diff = differing_digits(t, ids[i - 1], ids[i]);
                if (diff.size() != 1) {
                    throw IntegrityError("no single switch joins " + t.host_string(ids[i - 1]) + " and " +
                                         t.host_string(ids[i]));
                }
                path.hops.push_back(make_hop(t, ids[i - 1], diff.front(), t.digit(ids[i], diff.front())));
            }
            Wavelength w{row.at("wavelength").get<std::uint32_t>(), std::nullopt};
            if (row.contains("label")) {
                w.label = parse_digits<PermVector>(row.at("label").get<std::string>(),
                                                   static_cast<std::size_t>(t.ell()), t.radix());
            }
            plan.assignments.push_back(Assignment{std::move(path), std::move(w)});
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed plan JSON: ") + e.what());
    }
    return plan;
}

inline json witness_json(const Topology& t, const RwaPlan& plan, const PlanVerification& v) {
    json out{{"ok", v.ok()}, {"complete", v.complete}, {"nonblocking", v.nonblocking}, {"problem", v.problem}};
    if (v.witness) {
        const auto& a = plan.assignments[v.witness->assignment_a];
        const auto& b = plan.assignments[v.witness->assignment_b];
        out["witness"] = json{{"link", to_json(t, v.witness->link)},
                              {"wavelength", v.witness->wavelength},
                              {"path_a", path_hosts_json(t, a.path)},
                              {"path_b", path_hosts_json(t, b.path)}};
    }
    return out;
}

// ---- conflict graphs ----

inline std::string conflict_dot(const ConflictGraph& cg) {
    std::ostringstream os;
    os << "graph conflict {\n";
    os << "  // ell=" << cg.ell << " d=" << cg.d;
    if (cg.class_k) os << " class=" << *cg.class_k;
    os << "\n";
    for (std::size_t i = 0; i < cg.nodes.size(); ++i) {
        const std::string name = to_string(cg.perm(i), cg.d);
        const int k = std::popcount(support_mask_of_code(cg.nodes[i], cg.ell, cg.d));
        os << "  \"" << name << "\" [class=" << k << ", degree=" << cg.graph.degree(static_cast<std::uint32_t>(i))
           << "];\n";
    }
    for (std::uint32_t u = 0; u < cg.graph.size(); ++u) {
        for (std::uint32_t v : cg.graph.neighbors(u)) {
            if (u < v) os << "  \"" << to_string(cg.perm(u), cg.d) << "\" -- \"" << to_string(cg.perm(v), cg.d) << "\";\n";
        }
    }
    os << "}\n";
    return os.str();
}

// ---- reports ----

inline json oracle_json(const std::optional<OracleResult>& r) {
    if (!r) return nullptr;
    return json{{"value", r->value}, {"routings_examined", r->routings_examined}, {"label", r->label()}};
}

inline json report_json(const IndexReport& r) {
    json achieved = json::object();
    for (const auto& [scheme, count] : r.achieved) achieved[scheme] = count;
    return json{{"ell", r.ell},
                {"d", r.d},
                {"forwarding_index", r.forwarding_index},
                {"star_max_link_load", r.star_max_link_load},
                {"avg_host_distance", to_string(r.avg_host_distance)},
                {"avg_host_distance_measured", to_string(r.avg_host_distance_measured)},
                {"lower_bound_exact", to_string(r.lower_bound_exact)},
                {"lower_bound", r.lower_bound},
                {"optical_lower", r.optical_lower},
                {"optical_upper", r.optical_upper},
                {"optical_upper_loose", r.optical_upper_loose},
                {"achieved", std::move(achieved)},
                {"oracle_forwarding", oracle_json(r.oracle_forwarding)},
                {"oracle_optical", oracle_json(r.oracle_optical)}};
}

namespace detail {
inline std::string cell(const std::optional<std::uint32_t>& v) { return v ? std::to_string(*v) : "-"; }
} // namespace detail

// One labelled row: ℓ, d, π, oblivious, layered, greedy, bound, oracle.
inline std::string report_table(const IndexReport& r) {
    std::ostringstream os;
    os << "ℓ=" << r.ell << " d=" << r.d << " π=" << r.forwarding_index
       << " oblivious=" << detail::cell(r.achieved_for("oblivious"))
       << " layered=" << detail::cell(r.achieved_for("layered"))
       << " greedy=" << detail::cell(r.achieved_for("greedy"));
    if (const auto two = r.achieved_for("two-layer")) os << " two-layer=" << *two;
    os << " bound=" << r.optical_upper << " oracle=";
    if (r.oracle_optical) {
        os << r.oracle_optical->value;
    } else {
        os << '-';
    }
    os << '\n';
    return os.str();
}

inline std::string report_csv(const IndexReport& r) {
    std::ostringstream os;
    os << "ell,d,forwarding_index,oblivious,layered,greedy,two_layer,upper_bound,loose_bound,oracle_forwarding,"
          "oracle_optical\n";
    auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
    auto oracle = [](const std::optional<OracleResult>& o) { return o ? std::to_string(o->value) : std::string(); };
    os << r.ell << ',' << r.d << ',' << r.forwarding_index << ',' << opt(r.achieved_for("oblivious")) << ','
       << opt(r.achieved_for("layered")) << ',' << opt(r.achieved_for("greedy")) << ','
       << opt(r.achieved_for("two-layer")) << ',' << r.optical_upper << ',' << r.optical_upper_loose << ','
       << oracle(r.oracle_forwarding) << ',' << oracle(r.oracle_optical) << '\n';
    return os.str();
}

} // namespace bcube
