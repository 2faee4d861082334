#pragma once

// Test-only reference model of B(ell, d) built from strings and std::map,
// sharing no code with the library. Hosts are digit strings ("120"),
// switches are "k:digits" strings, and a directed link is a (from, to)
// node-name pair. Used as the independent oracle for loads, adjacency and
// distances.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace naive {

inline std::vector<std::string> all_hosts(int ell, int d) {
    std::vector<std::string> out{""};
    for (int i = 0; i < ell; ++i) {
        std::vector<std::string> next;
        for (const auto& prefix : out) {
            for (int x = 0; x < d; ++x) next.push_back(prefix + static_cast<char>('0' + x));
        }
        out = std::move(next);
    }
    return out;
}

// Delete the k-th (1-based) character.
inline std::string drop_digit(const std::string& h, int k) {
    std::string s = h;
    s.erase(static_cast<std::size_t>(k - 1), 1);
    return s;
}

inline std::string switch_name(const std::string& host, int k) { return std::to_string(k) + ":" + drop_digit(host, k); }

inline int hamming(const std::string& a, const std::string& b) {
    int m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m += a[i] != b[i];
    return m;
}

using Link = std::pair<std::string, std::string>;

// Node sequence host, switch, host, switch, ..., host of the descending path.
inline std::vector<std::string> descending_nodes(const std::string& s, const std::string& dst) {
    std::vector<std::string> nodes{s};
    std::string at = s;
    for (int k = static_cast<int>(s.size()); k >= 1; --k) {
        if (at[static_cast<std::size_t>(k - 1)] == dst[static_cast<std::size_t>(k - 1)]) continue;
        nodes.push_back(switch_name(at, k));
        at[static_cast<std::size_t>(k - 1)] = dst[static_cast<std::size_t>(k - 1)];
        nodes.push_back(at);
    }
    return nodes;
}

inline std::vector<Link> links_of(const std::vector<std::string>& nodes) {
    std::vector<Link> out;
    for (std::size_t i = 1; i < nodes.size(); ++i) out.emplace_back(nodes[i - 1], nodes[i]);
    return out;
}

// Loads of the all-pairs descending routing, keyed by (from, to) node names.
inline std::map<Link, std::uint64_t> star_loads(int ell, int d) {
    std::map<Link, std::uint64_t> loads;
    const auto hosts = all_hosts(ell, d);
    for (const auto& s : hosts) {
        for (const auto& dst : hosts) {
            if (s == dst) continue;
            for (const auto& l : links_of(descending_nodes(s, dst))) ++loads[l];
        }
    }
    return loads;
}

inline std::string uplink(const std::string& host, int k) { return switch_name(host, k); }

// Digit-wise (dst - src) mod d.
inline std::string perm_of(const std::string& s, const std::string& dst, int d) {
    std::string p;
    for (std::size_t i = 0; i < s.size(); ++i) p += static_cast<char>('0' + ((dst[i] - s[i]) % d + d) % d);
    return p;
}

inline std::string shift(const std::string& s, const std::string& p, int d) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += static_cast<char>('0' + ((s[i] - '0') + (p[i] - '0')) % d);
    return out;
}

// Set of directed links used by the class-p descending routing.
inline std::set<Link> class_links(int ell, int d, const std::string& p) {
    std::set<Link> out;
    for (const auto& s : all_hosts(ell, d)) {
        for (const auto& l : links_of(descending_nodes(s, shift(s, p, d)))) out.insert(l);
    }
    return out;
}

} // namespace naive
