#include <bcube/cpr.hpp>
#include <bcube/routing.hpp>

#include "naive_bcube.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace bcube {
namespace {

HostId hid(const Topology& t, const char* digits) {
    return t.host_id(parse_digits<HostAddr>(digits, static_cast<std::size_t>(t.ell()), t.radix()));
}

std::vector<std::string> host_strings(const Topology& t, const DiPath& p) {
    std::vector<std::string> out{t.host_string(p.source)};
    for (const Hop& h : p.hops) out.push_back(t.host_string(h.to));
    return out;
}

// Node names in the naive model's format.
std::vector<std::string> node_names(const Topology& t, const DiPath& p) {
    std::vector<std::string> out{t.host_string(p.source)};
    for (const Hop& h : p.hops) {
        out.push_back(std::to_string(h.layer) + ":" + t.switch_string(h.via));
        out.push_back(t.host_string(h.to));
    }
    return out;
}

TEST(DescendingPath, WorkedExample) {
    const Topology t = Topology::build(3, 3);
    const DiPath p = descending_path(t, hid(t, "000"), hid(t, "111"));
    EXPECT_EQ(host_strings(t, p), (std::vector<std::string>{"000", "001", "011", "111"}));
    EXPECT_EQ(node_names(t, p), (std::vector<std::string>{"000", "3:00", "001", "2:01", "011", "1:11", "111"}));
}

TEST(DescendingPath, SkipsEqualDigits) {
    const Topology t = Topology::build(3, 3);
    const DiPath p = descending_path(t, hid(t, "120"), hid(t, "102"));
    EXPECT_EQ(host_strings(t, p), (std::vector<std::string>{"120", "122", "102"}));
    EXPECT_EQ(p.hops[0].layer, 3);
    EXPECT_EQ(p.hops[1].layer, 2);
}

TEST(DescendingPath, SameHostRejected) {
    const Topology t = Topology::build(2, 3);
    EXPECT_THROW(descending_path(t, HostId{4}, HostId{4}), DomainError);
    EXPECT_THROW(shortest_path(t, HostId{4}, HostId{4}, {}), DomainError);
}

TEST(ShortestPath, OrderMustPermuteDifferingDigits) {
    const Topology t = Topology::build(3, 3);
    const std::vector<int> bad{1, 2};
    EXPECT_THROW(shortest_path(t, hid(t, "000"), hid(t, "011"), bad), DomainError);
    const std::vector<int> dup{2, 2};
    EXPECT_THROW(shortest_path(t, hid(t, "000"), hid(t, "011"), dup), DomainError);
    const std::vector<int> ok{2, 3};
    const DiPath p = shortest_path(t, hid(t, "000"), hid(t, "011"), ok);
    EXPECT_EQ(host_strings(t, p), (std::vector<std::string>{"000", "010", "011"}));
}

TEST(ShortestPath, EnumerationCountsAndCap) {
    const Topology t = Topology::build(3, 3);
    EXPECT_EQ(enumerate_shortest_paths(t, hid(t, "000"), hid(t, "111")).size(), 6u);
    EXPECT_EQ(enumerate_shortest_paths(t, hid(t, "000"), hid(t, "011")).size(), 2u);
    EXPECT_EQ(enumerate_shortest_paths(t, hid(t, "000"), hid(t, "001")).size(), 1u);
    EXPECT_THROW(enumerate_shortest_paths(t, hid(t, "000"), hid(t, "111"), ShortestPathOptions{5}), CapacityError);

    std::set<std::vector<std::string>> distinct;
    for (const auto& p : enumerate_shortest_paths(t, hid(t, "000"), hid(t, "111"))) {
        validate_path(t, p);
        distinct.insert(host_strings(t, p));
    }
    EXPECT_EQ(distinct.size(), 6u);
}

TEST(ValidatePath, RejectsBrokenPaths) {
    const Topology t = Topology::build(2, 3);
    DiPath p = descending_path(t, hid(t, "00"), hid(t, "11"));
    EXPECT_NO_THROW(validate_path(t, p));

    DiPath wrong_end = p;
    wrong_end.destination = hid(t, "12");
    EXPECT_THROW(validate_path(t, wrong_end), IntegrityError);

    DiPath wrong_switch = p;
    wrong_switch.hops[0].via = t.switch_of(hid(t, "22"), wrong_switch.hops[0].layer);
    EXPECT_THROW(validate_path(t, wrong_switch), IntegrityError);

    DiPath gap = p;
    gap.hops.erase(gap.hops.begin());
    EXPECT_THROW(validate_path(t, gap), IntegrityError);

    DiPath off_range = p;
    off_range.source = HostId{99};
    EXPECT_THROW(validate_path(t, off_range), IntegrityError);
}

TEST(Routing, DuplicatePairRejected) {
    const Topology t = Topology::build(2, 2);
    Routing r;
    r.add(descending_path(t, HostId{0}, HostId{3}));
    EXPECT_THROW(r.add(descending_path(t, HostId{0}, HostId{3})), DomainError);
    EXPECT_NE(r.find(HostId{0}, HostId{3}), nullptr);
    EXPECT_EQ(r.find(HostId{3}, HostId{0}), nullptr);
}

TEST(Routing, StarCoversAllOrderedPairs) {
    const Topology t = Topology::build(2, 3);
    const Routing r = star_routing(t);
    EXPECT_EQ(r.size(), 72u);
}

TEST(LinkLoads, EmptyRoutingIsZero) {
    const Topology t = Topology::build(2, 3);
    const LinkLoads loads = link_loads(t, Routing{});
    EXPECT_EQ(loads.size(), t.link_count());
    EXPECT_EQ(max_link_load(loads), 0u);
}

TEST(LinkLoads, StarTwoLayerThreePort) {
    const Topology t = Topology::build(2, 3);
    EXPECT_EQ(max_link_load(t, star_routing(t)), 6u);
}

TEST(LinkLoads, StarSingleLayer) {
    const Topology t = Topology::build(1, 4);
    const LinkLoads loads = star_link_loads(t);
    for (auto l : loads) EXPECT_EQ(l, 3u);
}

// Every link of R* against the string model, including the uniform value d^(ell-1)(d-1).
class StarLoads : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(StarLoads, MatchNaiveModel) {
    const auto [ell, d] = GetParam();
    const Topology t = Topology::build(ell, d);
    const LinkLoads loads = star_link_loads(t);
    const auto naive_loads = naive::star_loads(ell, d);
    ASSERT_EQ(naive_loads.size(), t.link_count());
    std::uint64_t uniform = 1;
    for (int i = 1; i < ell; ++i) uniform *= static_cast<std::uint64_t>(d);
    uniform *= static_cast<std::uint64_t>(d - 1);
    for (std::uint32_t l = 0; l < t.link_count(); ++l) {
        const DirectedLink dl = t.link(LinkId{l});
        const std::string h = to_string(dl.host, t.radix());
        const std::string s = naive::switch_name(h, dl.layer);
        const naive::Link key = dl.direction == LinkDirection::uplink ? naive::Link{h, s} : naive::Link{s, h};
        ASSERT_TRUE(naive_loads.count(key)) << t.link_string(LinkId{l});
        EXPECT_EQ(loads[l], naive_loads.at(key)) << t.link_string(LinkId{l});
        EXPECT_EQ(loads[l], uniform);
    }
}

INSTANTIATE_TEST_SUITE_P(Small, StarLoads,
                         ::testing::Values(std::pair{1, 2}, std::pair{1, 5}, std::pair{2, 2}, std::pair{2, 3},
                                           std::pair{2, 4}, std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}));

TEST(LinkLoads, WorkerCountDoesNotChangeResult) {
    for (auto [ell, d] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 2}}) {
        const Topology t = Topology::build(ell, d);
        const LinkLoads one = star_link_loads(t, 1);
        for (unsigned w = 2; w <= 4; ++w) EXPECT_EQ(star_link_loads(t, w), one);
        EXPECT_EQ(link_loads(t, star_routing(t)), one);
    }
}

// Restricting R* to one built-in subcube's pairs gives the smaller R*; the
// full B(ell, d) loads are d times the B(ell-1, d) loads.
TEST(LinkLoads, BuiltInCubeScaling) {
    for (auto [ell, d] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
        const Topology big = Topology::build(ell, d);
        const Topology small = Topology::build(ell - 1, d);
        EXPECT_EQ(max_link_load(star_link_loads(big)), static_cast<std::uint64_t>(d) * max_link_load(star_link_loads(small)));

        const auto v = built_in_subcube(big, 1);
        std::vector<DiPath> inside;
        for (HostId a : v.hosts) {
            for (HostId b : v.hosts) {
                if (a != b) inside.push_back(descending_path(big, a, b));
            }
        }
        const LinkLoads in_loads = link_loads(big, inside);
        const LinkLoads small_loads = star_link_loads(small);
        for (std::uint32_t l = 0; l < big.link_count(); ++l) {
            if (in_loads[l] == 0) continue;
            const DirectedLink dl = big.link(LinkId{l});
            const HostId child_host = project_to_subcube(big, big.host_id(dl.host));
            EXPECT_EQ(in_loads[l], small_loads[index(small.link_id(dl.direction, dl.layer, child_host))]);
        }
    }
}

TEST(RandomPaths, HopCountAndAdjacency) {
    std::mt19937 rng(20240611);
    for (auto [ell, d] : {std::pair{3, 3}, std::pair{4, 3}, std::pair{2, 12}}) {
        const Topology t = Topology::build(ell, d);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(t.host_count() - 1));
        for (int trial = 0; trial < 200; ++trial) {
            const HostId s{pick(rng)};
            HostId dst{pick(rng)};
            if (s == dst) continue;
            const std::string ss = t.host_string(s);
            const std::string ds = t.host_string(dst);
            std::vector<int> order = differing_digits(t, s, dst);
            std::shuffle(order.begin(), order.end(), rng);
            const DiPath p = shortest_path(t, s, dst, order);
            EXPECT_EQ(p.hop_count(), hamming_distance(t, s, dst));
            for (const Hop& h : p.hops) {
                const HostAddr a = t.host_addr(h.from);
                const HostAddr b = t.host_addr(h.to);
                int diffs = 0;
                for (int k = 1; k <= ell; ++k) diffs += a.digit(static_cast<std::size_t>(k)) != b.digit(static_cast<std::size_t>(k));
                EXPECT_EQ(diffs, 1);
                EXPECT_EQ(t.switch_of(h.from, h.layer), h.via);
                EXPECT_EQ(t.switch_of(h.to, h.layer), h.via);
                EXPECT_TRUE(t.adjacent(a, t.switch_addr(h.via)).has_value());
            }
            if (d <= 10) {
                EXPECT_EQ(static_cast<int>(p.hop_count()), naive::hamming(ss, ds));
            }
        }
    }
}

// Closed-form pair conditions against scanning R* paths.
TEST(PairConditions, MatchEnumeration) {
    for (auto [ell, d] : {std::pair{2, 3}, std::pair{3, 2}}) {
        const Topology t = Topology::build(ell, d);
        const Routing r = star_routing(t);
        for (std::uint32_t l = 0; l < t.link_count(); ++l) {
            const LinkId link{l};
            const int layer = t.link_layer(link);
            const HostId h = t.link_host(link);
            std::uint64_t by_scan = 0;
            std::uint64_t by_condition = 0;
            for (const DiPath& p : r.paths()) {
                const auto links = traversed_links(t, p);
                by_scan += std::find(links.begin(), links.end(), link) != links.end();
                by_condition += t.link_direction(link) == LinkDirection::uplink
                                    ? descending_uses_uplink(t, p.source, p.destination, layer, h)
                                    : descending_uses_downlink(t, p.source, p.destination, layer, h);
            }
            EXPECT_EQ(by_condition, by_scan) << t.link_string(link);
            const std::uint64_t counted = t.link_direction(link) == LinkDirection::uplink
                                              ? uplink_pair_count(t, layer, link)
                                              : downlink_pair_count(t, layer, link);
            EXPECT_EQ(counted, by_scan);
        }
    }
}

TEST(PairConditions, RejectMismatchedLinks) {
    const Topology t = Topology::build(2, 3);
    EXPECT_THROW(uplink_pair_count(t, 1, t.downlink(HostId{0}, 1)), DomainError);
    EXPECT_THROW(uplink_pair_count(t, 2, t.uplink(HostId{0}, 1)), DomainError);
    EXPECT_THROW(downlink_pair_count(t, 1, t.uplink(HostId{0}, 1)), DomainError);
}

TEST(Cpr, ClassifyWorkedExample) {
    const Topology t = Topology::build(3, 3);
    EXPECT_EQ(to_string(classify_pair(t, hid(t, "012"), hid(t, "201")), 3), "222");
    EXPECT_EQ(classify_pair(t, hid(t, "012"), hid(t, "012")), (PermVector{0, 0, 0}));
    EXPECT_EQ(classify_code(t, hid(t, "012"), hid(t, "201")), 26u);
}

TEST(Cpr, ClassifyMatchesNaive) {
    const Topology t = Topology::build(2, 4);
    for (std::uint32_t a = 0; a < t.host_count(); ++a) {
        for (std::uint32_t b = 0; b < t.host_count(); ++b) {
            const auto want = naive::perm_of(t.host_string(HostId{a}), t.host_string(HostId{b}), 4);
            EXPECT_EQ(to_string(classify_pair(t, HostId{a}, HostId{b}), 4), want);
        }
    }
}

TEST(Cpr, ClassifyRejectsDimensionMismatch) {
    const Topology t = Topology::build(3, 3);
    EXPECT_THROW(classify_pair(t, HostAddr{0, 1}, HostAddr{0, 1, 2}), DomainError);
}

TEST(Cpr, DecompositionPartitionsPairs) {
    const Topology t = Topology::build(2, 3);
    const TrafficClasses tc = decompose_traffic(t);
    ASSERT_EQ(tc.classes.size(), 9u);
    std::set<HostPair> all;
    for (std::uint32_t code = 1; code < 9; ++code) {
        EXPECT_EQ(tc.classes[code].size(), 9u);
        for (const auto& pr : tc.classes[code]) EXPECT_TRUE(all.insert(pr).second);
    }
    EXPECT_EQ(all.size(), 72u);
    EXPECT_TRUE(tc.classes[0].empty());
    EXPECT_EQ(tc.at(t, PermVector{1, 2}).size(), 9u);
}

TEST(Cpr, RoutingRejectsZeroAndBadVectors) {
    const Topology t = Topology::build(2, 3);
    EXPECT_THROW(cpr_routing(t, PermVector{0, 0}), DomainError);
    EXPECT_THROW(cpr_routing(t, PermVector{0, 3}), DomainError);
    EXPECT_THROW(cpr_routing(t, PermVector{1}), DomainError);
}

TEST(Cpr, SingleLayerClassOne) {
    const Topology t = Topology::build(1, 3);
    const CprRouting r = cpr_routing(t, PermVector{1});
    ASSERT_EQ(r.paths.size(), 3u);
    EXPECT_EQ(t.host_string(r.paths[0].destination), "1");
    EXPECT_EQ(t.host_string(r.paths[1].destination), "2");
    EXPECT_EQ(t.host_string(r.paths[2].destination), "0");
    EXPECT_TRUE(verify_link_disjoint(t, r).link_disjoint);
}

TEST(Cpr, IntermediateHost) {
    const Topology t = Topology::build(3, 3);
    const DiPath a = descending_path(t, hid(t, "000"), hid(t, "111"));
    EXPECT_EQ(t.host_string(intermediate_host(t, a)), "001");
    const DiPath b = descending_path(t, hid(t, "000"), hid(t, "110"));
    EXPECT_EQ(t.host_string(intermediate_host(t, b)), "000");
}

class CprDisjoint : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(CprDisjoint, EveryClassIsLinkDisjoint) {
    const auto [ell, d] = GetParam();
    const Topology t = Topology::build(ell, d);
    const auto certs = verify_all_cprs(t, 3);
    ASSERT_EQ(certs.size(), t.host_count() - 1);
    for (const auto& [p, cert] : certs) {
        EXPECT_TRUE(cert.link_disjoint) << to_string(p, t.radix());
        EXPECT_FALSE(cert.witness.has_value());
        // Independent check: the naive class uses exactly hops-many distinct links.
        const CprRouting r = cpr_routing(t, p);
        std::size_t total_links = 0;
        for (const auto& path : r.paths) total_links += 2 * path.hop_count();
        if (t.radix() <= 10) {
            EXPECT_EQ(naive::class_links(ell, d, to_string(p, t.radix())).size(), total_links);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Exhaustive, CprDisjoint,
                         ::testing::Values(std::pair{1, 2}, std::pair{1, 3}, std::pair{1, 4}, std::pair{1, 5},
                                           std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 2},
                                           std::pair{3, 3}));

// A mixed routing that reuses one link must produce a witness pointing at it.
TEST(Cpr, NegativeControlFindsSharedLink) {
    const Topology t = Topology::build(2, 3);
    std::vector<DiPath> paths{descending_path(t, hid(t, "00"), hid(t, "11")),
                              descending_path(t, hid(t, "00"), hid(t, "21"))};
    const auto cert = verify_link_disjoint(t, paths);
    ASSERT_FALSE(cert.link_disjoint);
    ASSERT_TRUE(cert.witness.has_value());
    EXPECT_EQ(cert.witness->link, t.uplink(hid(t, "00"), 2));
    EXPECT_EQ(cert.witness->path_a, 0u);
    EXPECT_EQ(cert.witness->path_b, 1u);

    // Two classes sharing layer 1 stitched together collide as well.
    std::vector<DiPath> mixed = cpr_routing(t, PermVector{1, 0}).paths;
    const auto other = cpr_routing(t, PermVector{2, 0}).paths;
    mixed.insert(mixed.end(), other.begin(), other.end());
    EXPECT_FALSE(verify_link_disjoint(t, mixed).link_disjoint);
}

TEST(Cpr, DisjointSupportsMeanDisjointRoutings) {
    const Topology t = Topology::build(3, 3);
    for (std::uint32_t x = 1; x < t.host_count(); ++x) {
        for (std::uint32_t y = x + 1; y < t.host_count(); ++y) {
            const PermVector px = PermVector::decode(x, 3, 3);
            const PermVector py = PermVector::decode(y, 3, 3);
            if (support_mask(px) & support_mask(py)) continue;
            std::vector<DiPath> both = cpr_routing(t, px).paths;
            const auto more = cpr_routing(t, py).paths;
            both.insert(both.end(), more.begin(), more.end());
            EXPECT_TRUE(verify_link_disjoint(t, both).link_disjoint) << x << "," << y;
        }
    }
}

TEST(Cpr, LayerUsage) {
    EXPECT_EQ(layer_usage(PermVector{0, 2, 1}), (std::set<int>{2, 3}));
    EXPECT_TRUE(layer_usage(PermVector{0, 0}).empty());
    EXPECT_EQ(support_mask(PermVector{1, 0, 1}), 0b101u);
}

TEST(Cpr, CollisionWorkedExample) {
    const Topology t = Topology::build(3, 3);
    const CollisionReport r = verify_collision(t, PermVector{1, 0, 0}, PermVector{2, 0, 0});
    ASSERT_EQ(r.layers.size(), 3u);
    EXPECT_TRUE(r.consistent());
    EXPECT_TRUE(r.layers[0].expected);
    EXPECT_EQ(r.layers[0].shared_uplinks, 27u);
    EXPECT_EQ(r.layers[0].shared_downlinks, 27u);
    EXPECT_EQ(r.layers[1].shared_links(), 0u);
    EXPECT_EQ(r.layers[2].shared_links(), 0u);
    EXPECT_THROW(verify_collision(t, PermVector{1, 0, 0}, PermVector{1, 0, 0}), DomainError);
}

// Shared links at a layer, recomputed on the string model.
TEST(Cpr, CollisionMatchesNaiveOnTwoLayerFourPort) {
    const Topology t = Topology::build(2, 4);
    for (std::uint32_t x = 1; x < 16; ++x) {
        for (std::uint32_t y = x + 1; y < 16; ++y) {
            const PermVector px = PermVector::decode(x, 2, 4);
            const PermVector py = PermVector::decode(y, 2, 4);
            const auto lx = naive::class_links(2, 4, to_string(px, 4));
            const auto ly = naive::class_links(2, 4, to_string(py, 4));
            std::map<int, std::uint64_t> shared;
            for (const auto& l : lx) {
                if (!ly.count(l)) continue;
                const std::string& sw = l.first.find(':') != std::string::npos ? l.first : l.second;
                ++shared[sw[0] - '0'];
            }
            const CollisionReport r = verify_collision(t, px, py);
            EXPECT_TRUE(r.consistent());
            for (const auto& lc : r.layers) EXPECT_EQ(lc.shared_links(), shared[lc.layer]);
        }
    }
}

} // namespace
} // namespace bcube
