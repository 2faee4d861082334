#pragma once

#include <bcube/bcube.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace bcube::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_arguments = 2,
    exit_capacity = 3,
    exit_verification = 4,
};

struct RunConfig {
    std::string command;
    int ell = 0;
    int d = 0;
    std::string scheme = "layered";
    std::string format;
    std::string out_path;
    std::uint64_t host_cap = 10'000;
    std::string plan_path;
    int conflict_class = 0;  // 0 = whole graph
};

// Writes to a sibling temporary file and renames it into place, so a failed
// run never leaves a partial file behind.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        if (!f.flush()) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& content) {
    if (cfg.out_path.empty()) {
        out << content;
    } else {
        write_file_atomic(cfg.out_path, content);
    }
}

inline void require_instance(const RunConfig& cfg) {
    if (cfg.ell < 1) throw DomainError("--ell must be >= 1");
    if (cfg.d < 2) throw DomainError("--d must be >= 2");
}

inline Topology build_topology(const RunConfig& cfg) {
    require_instance(cfg);
    return Topology::build(cfg.ell, cfg.d, BuildOptions{cfg.host_cap});
}

inline std::string summary_line(const Topology& t) {
    return "hosts=" + std::to_string(t.host_count()) + " switches=" + std::to_string(t.switch_count()) +
           " links=" + std::to_string(t.link_count()) + "\n";
}

inline int cmd_build(const RunConfig& cfg, std::ostream& out) {
    const Topology t = build_topology(cfg);
    if (cfg.format.empty() || cfg.format == "table") {
        out << summary_line(t);
        return exit_ok;
    }
    std::string content;
    if (cfg.format == "json") {
        content = topology_json(t).dump(2) + "\n";
    } else if (cfg.format == "dot") {
        content = topology_dot(t);
    } else {
        throw DomainError("build supports --format table|json|dot");
    }
    emit(cfg, out, content);
    if (!cfg.out_path.empty()) out << summary_line(t);
    return exit_ok;
}

inline int cmd_route(const RunConfig& cfg, std::ostream& out) {
    const Topology t = build_topology(cfg);
    const Routing r = star_routing(t);
    const LinkLoads loads = link_loads(t, r);
    std::string content;
    if (cfg.format.empty() || cfg.format == "csv") {
        content = load_csv(t, loads);
    } else if (cfg.format == "json") {
        content = routing_json(t, r.paths()).dump(2) + "\n";
    } else {
        throw DomainError("route supports --format csv|json");
    }
    emit(cfg, out, content);
    if (!cfg.out_path.empty()) {
        out << "paths=" << r.size() << " max_link_load=" << max_link_load(loads) << "\n";
    }
    return exit_ok;
}

inline Scheme scheme_of(const RunConfig& cfg) {
    const auto s = parse_scheme(cfg.scheme);
    if (!s) throw DomainError("unknown scheme '" + cfg.scheme + "' (oblivious|layered|greedy|two-layer)");
    return *s;
}

inline int cmd_rwa(const RunConfig& cfg, std::ostream& out) {
    const Topology t = build_topology(cfg);
    const RwaPlan plan = make_plan(t, scheme_of(cfg));
    const PlanVerification v = verify_plan(t, plan);
    if (!cfg.out_path.empty() || cfg.format == "json") {
        emit(cfg, out, plan_json(t, plan).dump(2) + "\n");
    }
    if (cfg.out_path.empty() && cfg.format == "json") return v.ok() ? exit_ok : exit_verification;
    out << "scheme=" << plan.scheme << " wavelengths=" << plan.wavelength_count
        << " nonblocking=" << (v.ok() ? "true" : "false") << "\n";
    return v.ok() ? exit_ok : exit_verification;
}

inline int cmd_conflict(const RunConfig& cfg, std::ostream& out) {
    require_instance(cfg);
    std::optional<int> k;
    if (cfg.conflict_class != 0) k = cfg.conflict_class;
    const ConflictGraph cg = build_conflict_graph(cfg.ell, cfg.d, k, cfg.host_cap);
    emit(cfg, out, conflict_dot(cg));
    if (!cfg.out_path.empty()) {
        out << "nodes=" << cg.graph.size() << " edges=" << cg.graph.edge_count()
            << " max_degree=" << cg.graph.max_degree() << "\n";
    }
    return exit_ok;
}

inline std::vector<Scheme> report_schemes(int ell) {
    std::vector<Scheme> schemes{Scheme::oblivious, Scheme::layered, Scheme::greedy};
    if (ell == 2) schemes.push_back(Scheme::two_layer);
    return schemes;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
    require_instance(cfg);
    ReportOptions opts;
    opts.host_cap = cfg.host_cap;
    const IndexReport r = full_report(cfg.ell, cfg.d, report_schemes(cfg.ell), opts);
    std::string content;
    if (cfg.format.empty() || cfg.format == "table") {
        content = report_table(r);
    } else if (cfg.format == "json") {
        content = report_json(r).dump(2) + "\n";
    } else if (cfg.format == "csv") {
        content = report_csv(r);
    } else {
        throw DomainError("report supports --format table|json|csv");
    }
    emit(cfg, out, content);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

struct ClaimResult {
    bool pass = true;
    std::string detail;
    json counterexample;
};

inline int verify_plan_file(const RunConfig& cfg, std::ostream& out) {
    std::ifstream f(cfg.plan_path);
    if (!f) throw DomainError("cannot read plan file " + cfg.plan_path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw DomainError(std::string("plan file is not valid JSON: ") + e.what());
    }
    RunConfig inst = cfg;
    if (inst.ell == 0 && j.contains("ell")) inst.ell = j["ell"].get<int>();
    if (inst.d == 0 && j.contains("d")) inst.d = j["d"].get<int>();
    const Topology t = build_topology(inst);
    RwaPlan plan;
    try {
        plan = plan_from_json(t, j);
    } catch (const IntegrityError& e) {
        out << "FAIL plan-integrity: " << e.what() << "\n";
        out << json{{"ok", false}, {"problem", e.what()}}.dump() << "\n";
        return exit_verification;
    }
    const PlanVerification v = verify_plan(t, plan);
    out << (v.ok() ? "PASS" : "FAIL") << " plan: scheme=" << plan.scheme << " wavelengths=" << plan.wavelength_count
        << " nonblocking=" << (v.nonblocking ? "true" : "false") << " complete=" << (v.complete ? "true" : "false")
        << "\n";
    if (!v.ok()) {
        out << witness_json(t, plan, v).dump() << "\n";
        return exit_verification;
    }
    return exit_ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.plan_path.empty()) return verify_plan_file(cfg, out);
    const Topology t = build_topology(cfg);
    const int ell = t.ell();
    const int d = static_cast<int>(t.radix());

    std::vector<std::pair<std::string, std::function<ClaimResult()>>> claims;

    claims.emplace_back("topology-counts", [&] {
        const auto n = checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell));
        const bool ok = t.host_count() == n && t.switch_count() == static_cast<std::uint64_t>(ell) * (n / d) &&
                        t.link_count() == 2 * static_cast<std::uint64_t>(ell) * n;
        return ClaimResult{ok, summary_line(t).substr(0, summary_line(t).size() - 1), nullptr};
    });

    claims.emplace_back("forwarding-index", [&] {
        const auto load = max_link_load(star_link_loads(t));
        const auto pi = forwarding_index(ell, d);
        return ClaimResult{load == pi,
                           "max link load of descending routing = " + std::to_string(load) +
                               ", d^ell - d^(ell-1) = " + std::to_string(pi),
                           nullptr};
    });

    claims.emplace_back("load-lower-bound", [&] {
        const Rational formula = avg_host_distance(ell, d);
        const Rational measured = avg_host_distance_bruteforce(t);
        const auto bound = ceil_rational(load_lower_bound(ell, d, measured));
        const bool ok = formula == measured && bound == forwarding_index(ell, d);
        return ClaimResult{ok,
                           "average host distance " + to_string(measured) + " (formula " + to_string(formula) +
                               "), lower bound " + std::to_string(bound),
                           nullptr};
    });

    claims.emplace_back("pair-count-conditions", [&] {
        const LinkLoads loads = star_link_loads(t);
        for (std::uint32_t l = 0; l < t.link_count(); ++l) {
            const LinkId link{l};
            const int k = t.link_layer(link);
            const auto counted = t.link_direction(link) == LinkDirection::uplink ? uplink_pair_count(t, k, link)
                                                                                 : downlink_pair_count(t, k, link);
            if (counted != loads[l]) {
                return ClaimResult{false, "address condition disagrees with enumerated load",
                                   json{{"link", to_json(t, link)}, {"condition", counted}, {"load", loads[l]}}};
            }
        }
        return ClaimResult{true, "address conditions match enumerated loads on all " +
                                     std::to_string(t.link_count()) + " links",
                           nullptr};
    });

    claims.emplace_back("cpr-link-disjoint", [&] {
        const auto certs = verify_all_cprs(t, std::max(1u, std::thread::hardware_concurrency()));
        for (const auto& [perm, cert] : certs) {
            if (!cert.link_disjoint) {
                const CprRouting r = cpr_routing(t, perm);
                return ClaimResult{false, "class " + to_string(perm, t.radix()) + " shares a link",
                                   certificate_json(t, perm, cert, r.paths)};
            }
        }
        return ClaimResult{true, std::to_string(certs.size()) + " permutation classes link-disjoint", nullptr};
    });

    claims.emplace_back("cpr-layer-collision", [&] {
        const std::uint32_t classes = t.host_count();
        std::vector<CprRouting> routings;
        std::vector<LinkLoads> loads;
        for (std::uint32_t c = 1; c < classes; ++c) {
            routings.push_back(cpr_routing(t, PermVector::decode(c, static_cast<std::size_t>(ell), t.radix())));
            loads.push_back(link_loads(t, std::span<const DiPath>(routings.back().paths)));
        }
        std::uint64_t pairs = 0;
        for (std::size_t a = 0; a < routings.size(); ++a) {
            for (std::size_t b = a + 1; b < routings.size(); ++b) {
                ++pairs;
                for (int i = 1; i <= ell; ++i) {
                    const bool both = routings[a].perm.digit(static_cast<std::size_t>(i)) != 0 &&
                                      routings[b].perm.digit(static_cast<std::size_t>(i)) != 0;
                    std::uint64_t shared_up = 0;
                    std::uint64_t shared_down = 0;
                    for (std::uint32_t h = 0; h < t.host_count(); ++h) {
                        const auto up = index(t.uplink(HostId{h}, i));
                        const auto down = index(t.downlink(HostId{h}, i));
                        shared_up += loads[a][up] && loads[b][up];
                        shared_down += loads[a][down] && loads[b][down];
                    }
                    const bool ok = both ? (shared_up == t.host_count() && shared_down == t.host_count())
                                         : (shared_up == 0 && shared_down == 0);
                    if (!ok) {
                        return ClaimResult{false, "layer collision pattern broken",
                                           collision_json(t, verify_collision(t, routings[a].perm, routings[b].perm))};
                    }
                }
            }
        }
        return ClaimResult{true,
                           std::to_string(pairs) + " class pairs collide exactly on their shared nonzero layers",
                           nullptr};
    });

    claims.emplace_back("conflict-class-degrees", [&] {
        for (int k = 1; k <= ell; ++k) {
            const ConflictGraph cg = build_conflict_graph(ell, d, k, t.host_count());
            const auto expected = conflict_class_degree(ell, d, k);
            for (std::uint32_t u = 0; u < cg.graph.size(); ++u) {
                if (cg.graph.degree(u) != expected) {
                    return ClaimResult{false, "class graph degree mismatch",
                                       json{{"k", k},
                                            {"node", to_string(cg.perm(u), t.radix())},
                                            {"degree", cg.graph.degree(u)},
                                            {"expected", expected}}};
                }
            }
        }
        return ClaimResult{true, "every class graph is regular with the closed-form degree", nullptr};
    });

    for (Scheme s : report_schemes(ell)) {
        claims.emplace_back(std::string("nonblocking-") + to_string(s), [&t, s] {
            const RwaPlan plan = make_plan(t, s);
            const PlanVerification v = verify_plan(t, plan);
            if (!v.ok()) return ClaimResult{false, v.problem, witness_json(t, plan, v)};
            return ClaimResult{true, std::to_string(plan.wavelength_count) + " wavelengths, no link reuses one",
                               nullptr};
        });
    }

    claims.emplace_back("bound-chain", [&] {
        ReportOptions opts;
        opts.host_cap = cfg.host_cap;
        try {
            const IndexReport r = full_report(ell, d, report_schemes(ell), opts);
            std::string line = report_table(r);
            line.pop_back();
            return ClaimResult{true, line, nullptr};
        } catch (const VerificationError& e) {
            return ClaimResult{false, e.what(), nullptr};
        }
    });

    for (auto& [name, check] : claims) {
        const ClaimResult r = check();
        out << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << "\n";
        if (!r.pass) {
            if (!r.counterexample.is_null()) out << r.counterexample.dump() << "\n";
            return exit_verification;
        }
    }
    out << "all " << claims.size() << " checks passed for B(" << ell << "," << d << ")\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"BCube all-optical routing and wavelength assignment toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_instance = [&cfg](CLI::App* sub, bool required) {
        auto* ell = sub->add_option("--ell", cfg.ell, "number of switch layers (>= 1)");
        auto* d = sub->add_option("--d", cfg.d, "switch port count (>= 2)");
        if (required) {
            ell->required();
            d->required();
        }
        sub->add_option("--host-cap", cfg.host_cap, "maximum host count accepted (default 10000)");
        sub->add_option("--out", cfg.out_path, "write primary output to this file");
    };

    auto* build = app.add_subcommand("build", "construct B(ell,d) and print counts or export it");
    add_instance(build, true);
    build->add_option("--format", cfg.format, "table|json|dot");

    auto* route = app.add_subcommand("route", "descending routing: per-link loads (csv) or path dump (json)");
    add_instance(route, true);
    route->add_option("--format", cfg.format, "csv|json");

    auto* rwa = app.add_subcommand("rwa", "build and verify a wavelength plan");
    add_instance(rwa, true);
    rwa->add_option("--scheme", cfg.scheme, "oblivious|layered|greedy|two-layer");
    rwa->add_option("--format", cfg.format, "json");

    auto* verify = app.add_subcommand("verify", "machine-check the structural claims, or a plan file");
    add_instance(verify, false);
    verify->add_option("--plan", cfg.plan_path, "plan JSON to check instead of the built-in suite");

    auto* report = app.add_subcommand("report", "index report: closed forms, schemes, oracles");
    add_instance(report, true);
    report->add_option("--format", cfg.format, "table|json|csv");

    auto* conflict = app.add_subcommand("conflict", "export the class conflict graph as DOT");
    add_instance(conflict, true);
    conflict->add_option("--class", cfg.conflict_class, "restrict to vectors with this many nonzero digits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_arguments;
    }

    try {
        if (build->parsed()) return cmd_build(cfg, out);
        if (route->parsed()) return cmd_route(cfg, out);
        if (rwa->parsed()) return cmd_rwa(cfg, out);
        if (verify->parsed()) {
            if (cfg.plan_path.empty() && (cfg.ell == 0 || cfg.d == 0)) {
                throw DomainError("verify needs --ell and --d, or --plan");
            }
            return cmd_verify(cfg, out);
        }
        if (report->parsed()) return cmd_report(cfg, out);
        if (conflict->parsed()) return cmd_conflict(cfg, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_arguments;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return exit_capacity;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << "\n";
        return exit_verification;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return exit_verification;
    }
    return exit_invalid_arguments;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"bcube"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace bcube::cli
