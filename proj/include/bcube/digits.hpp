#pragma once

#include <bcube/error.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bcube {

using Digit = std::uint32_t;

// base^exp, throwing CapacityError instead of wrapping.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
            throw CapacityError("integer overflow computing " + std::to_string(base) + "^" +
                                std::to_string(exp));
        }
        result *= base;
    }
    return result;
}

/// Fixed-length vector of base-d digits, addressed 1-based (digit 1 is the
/// most significant / leftmost one, matching the printed form "200").
///
/// The tag keeps host addresses, switch digit strings and permutation
/// vectors from being mixed up even though they share a representation.
template <class Tag>
class DigitVector {
public:
    DigitVector() = default;
    explicit DigitVector(std::vector<Digit> digits) : digits_(std::move(digits)) {}
    DigitVector(std::initializer_list<Digit> digits) : digits_(digits) {}

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }

    Digit digit(std::size_t k) const {
        if (k < 1 || k > digits_.size()) {
            throw DomainError("digit index " + std::to_string(k) + " out of range [1, " +
                              std::to_string(digits_.size()) + "]");
        }
        return digits_[k - 1];
    }

    void set_digit(std::size_t k, Digit value) {
        if (k < 1 || k > digits_.size()) {
            throw DomainError("digit index " + std::to_string(k) + " out of range");
        }
        digits_[k - 1] = value;
    }

    std::span<const Digit> digits() const { return digits_; }

    bool is_zero() const {
        for (Digit x : digits_) {
            if (x != 0) return false;
        }
        return true;
    }

    // Mixed-radix value with digit 1 most significant.
    std::uint64_t encode(Digit radix) const {
        std::uint64_t code = 0;
        for (Digit x : digits_) code = code * radix + x;
        return code;
    }

    static DigitVector decode(std::uint64_t code, std::size_t length, Digit radix) {
        std::vector<Digit> out(length, 0);
        for (std::size_t i = length; i-- > 0;) {
            out[i] = static_cast<Digit>(code % radix);
            code /= radix;
        }
        return DigitVector(std::move(out));
    }

    friend bool operator==(const DigitVector&, const DigitVector&) = default;
    friend auto operator<=>(const DigitVector&, const DigitVector&) = default;

private:
    std::vector<Digit> digits_;
};

struct HostTag {};
struct SwitchTag {};
struct PermTag {};

using HostAddr = DigitVector<HostTag>;
using PermVector = DigitVector<PermTag>;
using SwitchDigits = DigitVector<SwitchTag>;

// Radix <= 10 prints digits back to back ("122"); larger radices are dot separated ("3.11.0").
inline std::string format_digits(std::span<const Digit> digits, Digit radix) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (radix > 10 && i > 0) out.push_back('.');
        out += std::to_string(digits[i]);
    }
    return out;
}

template <class Tag>
std::string to_string(const DigitVector<Tag>& v, Digit radix) {
    return format_digits(v.digits(), radix);
}

inline std::vector<Digit> parse_digit_string(std::string_view text, std::size_t length, Digit radix) {
    std::vector<Digit> out;
    if (radix <= 10) {
        for (char c : text) {
            if (c < '0' || c > '9') {
                throw DomainError("invalid digit '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
            }
            out.push_back(static_cast<Digit>(c - '0'));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find('.', pos);
            if (next == std::string_view::npos) next = text.size();
            std::string_view part = text.substr(pos, next - pos);
            if (part.empty()) throw DomainError("empty digit in \"" + std::string(text) + "\"");
            Digit value = 0;
            for (char c : part) {
                if (c < '0' || c > '9') throw DomainError("invalid digit in \"" + std::string(text) + "\"");
                value = value * 10 + static_cast<Digit>(c - '0');
            }
            out.push_back(value);
            pos = next + 1;
        }
    }
    if (out.size() != length) {
        throw DomainError("\"" + std::string(text) + "\" has " + std::to_string(out.size()) +
                          " digits, expected " + std::to_string(length));
    }
    for (Digit x : out) {
        if (x >= radix) throw DomainError("digit " + std::to_string(x) + " not below radix " + std::to_string(radix));
    }
    return out;
}

template <class Vec>
Vec parse_digits(std::string_view text, std::size_t length, Digit radix) {
    return Vec(parse_digit_string(text, length, radix));
}

// Number of positions where two equal-length digit vectors differ.
template <class TagA, class TagB>
std::size_t hamming_distance(const DigitVector<TagA>& a, const DigitVector<TagB>& b) {
    if (a.size() != b.size()) throw DomainError("hamming_distance: length mismatch");
    std::size_t m = 0;
    for (std::size_t k = 1; k <= a.size(); ++k) m += a.digit(k) != b.digit(k);
    return m;
}

} // namespace bcube
