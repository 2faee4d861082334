#pragma once

#include <bcube/digits.hpp>
#include <bcube/error.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bcube {

enum class HostId : std::uint32_t {};
enum class SwitchId : std::uint32_t {};
enum class LinkId : std::uint32_t {};

constexpr std::uint32_t index(HostId h) { return static_cast<std::uint32_t>(h); }
constexpr std::uint32_t index(SwitchId s) { return static_cast<std::uint32_t>(s); }
constexpr std::uint32_t index(LinkId l) { return static_cast<std::uint32_t>(l); }

enum class LinkDirection : std::uint8_t { uplink = 0, downlink = 1 };

inline const char* to_string(LinkDirection dir) {
    return dir == LinkDirection::uplink ? "uplink" : "downlink";
}

struct SwitchAddr {
    int layer = 1;
    SwitchDigits digits;

    friend bool operator==(const SwitchAddr&, const SwitchAddr&) = default;
};

// A directed host<->switch link; identified by its host and layer per direction.
struct DirectedLink {
    LinkDirection direction = LinkDirection::uplink;
    int layer = 1;
    HostAddr host;

    friend bool operator==(const DirectedLink&, const DirectedLink&) = default;
};

struct BuildOptions {
    std::uint64_t host_cap = 10'000;
};

/// Explicit BCube B(ell, d): d^ell hosts, ell layers of d^(ell-1) d-port
/// switches, and one bidirectional host-switch link per (host, layer).
///
/// Hosts are numbered by the mixed-radix value of their address (digit 1
/// most significant). Switches are numbered layer-major, then by the value
/// of their ell-1 digits. Link ids are
///     (direction * ell + (layer - 1)) * host_count + host
/// so per-link arrays index directly by LinkId.
///
/// Immutable after construction.
class Topology {
public:
    static Topology build(int ell, int d, BuildOptions options = {}) {
        if (ell < 1) throw DomainError("ell must be >= 1, got " + std::to_string(ell));
        if (d < 2) throw DomainError("d must be >= 2, got " + std::to_string(d));
        std::uint64_t hosts = 0;
        try {
            hosts = checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(ell));
        } catch (const CapacityError&) {
            throw CapacityError("B(" + std::to_string(ell) + "," + std::to_string(d) +
                                ") overflows the host counter");
        }
        if (hosts > options.host_cap) {
            throw CapacityError("B(" + std::to_string(ell) + "," + std::to_string(d) + ") has " +
                                std::to_string(hosts) + " hosts, above the host cap of " +
                                std::to_string(options.host_cap));
        }
        if (2 * static_cast<std::uint64_t>(ell) * hosts > std::numeric_limits<std::uint32_t>::max()) {
            throw CapacityError("link count does not fit 32-bit link ids");
        }
        return Topology(ell, d, static_cast<std::uint32_t>(hosts));
    }

    int ell() const { return ell_; }
    Digit radix() const { return d_; }

    std::uint32_t host_count() const { return host_count_; }
    std::uint32_t switch_count() const { return switches_per_layer_ * static_cast<std::uint32_t>(ell_); }
    std::uint32_t switches_per_layer() const { return switches_per_layer_; }
    std::uint32_t link_count() const { return 2 * static_cast<std::uint32_t>(ell_) * host_count_; }

    // d^i, for 0 <= i <= ell
    std::uint32_t power(int i) const { return pow_[static_cast<std::size_t>(i)]; }

    // ---- hosts ----

    HostId host_id(const HostAddr& h) const {
        check_host(h);
        return HostId{static_cast<std::uint32_t>(h.encode(d_))};
    }

    HostAddr host_addr(HostId h) const {
        return HostAddr::decode(index(h), static_cast<std::size_t>(ell_), d_);
    }

    Digit digit(HostId h, int k) const {
        return (index(h) / pow_[static_cast<std::size_t>(ell_ - k)]) % d_;
    }

    HostId with_digit(HostId h, int k, Digit value) const {
        const std::uint32_t place = pow_[static_cast<std::size_t>(ell_ - k)];
        const std::uint32_t old = (index(h) / place) % d_;
        return HostId{index(h) - old * place + value * place};
    }

    std::string host_string(HostId h) const { return to_string(host_addr(h), d_); }

    // ---- switches ----

    SwitchId switch_id(const SwitchAddr& s) const {
        check_switch(s);
        return SwitchId{static_cast<std::uint32_t>(s.layer - 1) * switches_per_layer_ +
                        static_cast<std::uint32_t>(s.digits.encode(d_))};
    }

    SwitchAddr switch_addr(SwitchId s) const {
        return SwitchAddr{switch_layer(s),
                          SwitchDigits::decode(index(s) % switches_per_layer_,
                                               static_cast<std::size_t>(ell_ - 1), d_)};
    }

    int switch_layer(SwitchId s) const { return static_cast<int>(index(s) / switches_per_layer_) + 1; }

    std::string switch_string(SwitchId s) const {
        return to_string(switch_addr(s).digits, d_);
    }

    // The unique layer-k switch host h is wired to (delete digit k from h).
    SwitchId switch_of(HostId h, int layer) const {
        const std::uint32_t low_place = pow_[static_cast<std::size_t>(ell_ - layer)];
        const std::uint32_t high = index(h) / (low_place * d_);
        const std::uint32_t low = index(h) % low_place;
        return SwitchId{static_cast<std::uint32_t>(layer - 1) * switches_per_layer_ + high * low_place + low};
    }

    // Host on the given port; ports are numbered by the value of the missing digit.
    HostId switch_port_host(SwitchId s, Digit port) const {
        return switch_ports_[static_cast<std::size_t>(index(s)) * d_ + port];
    }

    std::span<const HostId> switch_hosts(SwitchId s) const {
        return std::span<const HostId>(switch_ports_).subspan(static_cast<std::size_t>(index(s)) * d_, d_);
    }

    // ---- links ----

    LinkId uplink(HostId h, int layer) const { return link_id(LinkDirection::uplink, layer, h); }
    LinkId downlink(HostId h, int layer) const { return link_id(LinkDirection::downlink, layer, h); }

    LinkId link_id(LinkDirection dir, int layer, HostId h) const {
        return LinkId{(static_cast<std::uint32_t>(dir) * static_cast<std::uint32_t>(ell_) +
                       static_cast<std::uint32_t>(layer - 1)) *
                          host_count_ +
                      index(h)};
    }

    LinkId link_id(const DirectedLink& link) const {
        if (link.layer < 1 || link.layer > ell_) throw DomainError("link layer out of range");
        return link_id(link.direction, link.layer, host_id(link.host));
    }

    LinkDirection link_direction(LinkId l) const {
        return index(l) / (static_cast<std::uint32_t>(ell_) * host_count_) == 0 ? LinkDirection::uplink
                                                                                 : LinkDirection::downlink;
    }
    int link_layer(LinkId l) const {
        return static_cast<int>((index(l) / host_count_) % static_cast<std::uint32_t>(ell_)) + 1;
    }
    HostId link_host(LinkId l) const { return HostId{index(l) % host_count_}; }
    SwitchId link_switch(LinkId l) const { return link_switch_[index(l)]; }

    DirectedLink link(LinkId l) const {
        return DirectedLink{link_direction(l), link_layer(l), host_addr(link_host(l))};
    }

    std::string link_string(LinkId l) const {
        return std::string(to_string(link_direction(l))) + "(layer " + std::to_string(link_layer(l)) +
               ", host " + host_string(link_host(l)) + ")";
    }

    // ---- queries on addresses ----

    // Port index (== h_k) when h and s are wired together, nullopt otherwise.
    std::optional<Digit> adjacent(const HostAddr& h, const SwitchAddr& s) const {
        check_host(h);
        check_switch(s);
        const auto k = static_cast<std::size_t>(s.layer);
        std::size_t j = 1;
        for (std::size_t i = 1; i <= h.size(); ++i) {
            if (i == k) continue;
            if (h.digit(i) != s.digits.digit(j)) return std::nullopt;
            ++j;
        }
        return h.digit(k);
    }

    // Every host differing from h in exactly one digit, paired with that digit's layer.
    std::vector<std::pair<HostAddr, int>> neighbors(const HostAddr& h) const {
        const HostId id = host_id(h);
        std::vector<std::pair<HostAddr, int>> out;
        out.reserve(static_cast<std::size_t>(ell_) * (d_ - 1));
        for (int k = 1; k <= ell_; ++k) {
            for (Digit v = 0; v < d_; ++v) {
                if (v == digit(id, k)) continue;
                out.emplace_back(host_addr(with_digit(id, k, v)), k);
            }
        }
        return out;
    }

    void check_host(const HostAddr& h) const {
        if (h.size() != static_cast<std::size_t>(ell_)) {
            throw DomainError("host address has " + std::to_string(h.size()) + " digits, expected " +
                              std::to_string(ell_));
        }
        for (Digit x : h.digits()) {
            if (x >= d_) throw DomainError("host digit " + std::to_string(x) + " out of Z_" + std::to_string(d_));
        }
    }

    void check_switch(const SwitchAddr& s) const {
        if (s.layer < 1 || s.layer > ell_) {
            throw DomainError("switch layer " + std::to_string(s.layer) + " out of range [1, " +
                              std::to_string(ell_) + "]");
        }
        if (s.digits.size() != static_cast<std::size_t>(ell_ - 1)) {
            throw DomainError("switch address has " + std::to_string(s.digits.size()) + " digits, expected " +
                              std::to_string(ell_ - 1));
        }
        for (Digit x : s.digits.digits()) {
            if (x >= d_) throw DomainError("switch digit " + std::to_string(x) + " out of Z_" + std::to_string(d_));
        }
    }

private:
    Topology(int ell, int d, std::uint32_t hosts)
        : ell_(ell), d_(static_cast<Digit>(d)), host_count_(hosts) {
        pow_.resize(static_cast<std::size_t>(ell) + 1);
        pow_[0] = 1;
        for (std::size_t i = 1; i < pow_.size(); ++i) pow_[i] = pow_[i - 1] * d_;
        switches_per_layer_ = pow_[static_cast<std::size_t>(ell - 1)];

        switch_ports_.resize(static_cast<std::size_t>(switch_count()) * d_);
        link_switch_.resize(link_count());
        for (std::uint32_t h = 0; h < host_count_; ++h) {
            for (int k = 1; k <= ell_; ++k) {
                const SwitchId s = switch_of(HostId{h}, k);
                switch_ports_[static_cast<std::size_t>(index(s)) * d_ + digit(HostId{h}, k)] = HostId{h};
                link_switch_[index(uplink(HostId{h}, k))] = s;
                link_switch_[index(downlink(HostId{h}, k))] = s;
            }
        }
    }

    int ell_;
    Digit d_;
    std::uint32_t host_count_;
    std::uint32_t switches_per_layer_ = 0;
    std::vector<std::uint32_t> pow_;
    std::vector<HostId> switch_ports_;   // switch-major, d entries per switch in port order
    std::vector<SwitchId> link_switch_;  // keyed by LinkId
};

// Hosts with h_ell == index together with the switches and links of layers 1..ell-1 they use.
// Dropping the last digit of every host and switch maps the view onto B(ell-1, d).
struct BuiltInSubcube {
    Digit index = 0;
    std::vector<HostId> hosts;
    std::vector<SwitchId> switches;
    std::vector<LinkId> links;
};

inline BuiltInSubcube built_in_subcube(const Topology& t, Digit cube_index) {
    const int ell = t.ell();
    if (ell < 2) throw DomainError("B(1,d) has no built-in subcube");
    if (cube_index >= t.radix()) throw DomainError("built-in subcube index out of Z_d");

    BuiltInSubcube view;
    view.index = cube_index;
    for (std::uint32_t h = 0; h < t.host_count(); ++h) {
        if (t.digit(HostId{h}, ell) == cube_index) view.hosts.push_back(HostId{h});
    }
    for (std::uint32_t s = 0; s < t.switch_count(); ++s) {
        const SwitchId sw{s};
        // For layer < ell the last switch digit is the host's last digit.
        if (t.switch_layer(sw) < ell && index(sw) % t.radix() == cube_index) view.switches.push_back(sw);
    }
    for (auto dir : {LinkDirection::uplink, LinkDirection::downlink}) {
        for (int k = 1; k < ell; ++k) {
            for (HostId h : view.hosts) view.links.push_back(t.link_id(dir, k, h));
        }
    }
    return view;
}

// Digit-dropping projection of a built-in-cube element onto B(ell-1, d).
inline HostId project_to_subcube(const Topology& parent, HostId h) {
    return HostId{index(h) / parent.radix()};
}

inline SwitchId project_to_subcube(const Topology& parent, const Topology& child, SwitchId s) {
    const int layer = parent.switch_layer(s);
    if (layer >= parent.ell()) throw DomainError("top-layer switches do not belong to a built-in subcube");
    const std::uint32_t local = index(s) % parent.switches_per_layer();
    return SwitchId{static_cast<std::uint32_t>(layer - 1) * child.switches_per_layer() + local / parent.radix()};
}

} // namespace bcube
