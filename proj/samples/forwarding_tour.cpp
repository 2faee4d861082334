// Walks through B(3,3): one descending path, the load of R*, one CPR and
// the wavelength counts of the three schemes.

#include <bcube/bcube.hpp>

#include <iostream>

int main() {
    using namespace bcube;

    const Topology t = Topology::build(3, 3);
    std::cout << "B(3,3): " << t.host_count() << " hosts, " << t.switch_count() << " switches, " << t.link_count()
              << " directed links\n";

    const HostId src = t.host_id(HostAddr{0, 0, 0});
    const HostId dst = t.host_id(HostAddr{1, 2, 2});
    std::cout << "descending path 000 -> 122: " << path_string(t, descending_path(t, src, dst)) << "\n";

    std::cout << "max link load of R*: " << max_link_load(star_link_loads(t)) << " (closed form "
              << forwarding_index(3, 3) << ")\n";

    const CprRouting r = cpr_routing(t, PermVector{1, 2, 0});
    std::cout << "R(120) link-disjoint: " << std::boolalpha << verify_link_disjoint(t, r).link_disjoint << "\n";

    for (Scheme s : {Scheme::oblivious, Scheme::layered, Scheme::greedy}) {
        const RwaPlan plan = make_plan(t, s);
        std::cout << to_string(s) << ": " << plan.wavelength_count << " wavelengths, nonblocking "
                  << verify_plan(t, plan).ok() << "\n";
    }
    std::cout << "upper bound: " << optical_upper_bound(3, 3) << "\n";
}
