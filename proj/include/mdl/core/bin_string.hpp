#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mdl {

/// Finite string over the binary alphabet {0,1}.
///
/// Stored as the canonical text rendering ("0"/"1" characters), which is also
/// the serialization format used by the cache and the CLI.
class BinString {
public:
    BinString() = default;

    /// Throws std::invalid_argument on any character other than '0' or '1'.
    explicit BinString(std::string_view bits);

    static BinString zeros(std::size_t n);
    static BinString repeat(std::string_view unit, std::size_t times);
    /// Low `width` bits of `value`, most significant first.
    static BinString from_uint(std::uint64_t value, std::size_t width);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    int operator[](std::size_t i) const noexcept { return bits_[i] == '1' ? 1 : 0; }
    int back() const noexcept { return bits_.back() == '1' ? 1 : 0; }

    void push_back(int bit) { bits_.push_back(bit ? '1' : '0'); }
    void append(const BinString& other) { bits_ += other.bits_; }

    /// x·a for a single symbol a.
    BinString with(int bit) const;
    BinString prefix(std::size_t n) const { return BinString(Raw{}, bits_.substr(0, n)); }
    BinString substr(std::size_t pos, std::size_t len = std::string::npos) const {
        return BinString(Raw{}, bits_.substr(pos, len));
    }
    /// x with its last symbol removed; requires non-empty.
    BinString parent() const { return prefix(size() - 1); }

    bool starts_with(const BinString& x) const noexcept;
    std::size_t count_ones() const noexcept;
    bool all_zero() const noexcept;

    /// Value of the string read as an unsigned binary number (size <= 64).
    std::uint64_t to_uint() const;

    const std::string& str() const noexcept { return bits_; }

    friend BinString operator+(BinString a, const BinString& b) {
        a.bits_ += b.bits_;
        return a;
    }
    friend bool operator==(const BinString&, const BinString&) = default;
    friend std::strong_ordering operator<=>(const BinString& a, const BinString& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    struct Raw {};
    BinString(Raw, std::string bits) : bits_(std::move(bits)) {}

    std::string bits_;
};

std::ostream& operator<<(std::ostream& os, const BinString& x);

/// true iff there is a non-empty z with xz = y.
bool is_proper_prefix(const BinString& x, const BinString& y) noexcept;

/// Length-then-lexicographic order; the canonical enumeration order.
struct CanonicalLess {
    bool operator()(const BinString& a, const BinString& b) const noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.str() < b.str();
    }
};

/// Index of x in the canonical order of all binary strings: 2^len - 1 + value.
std::uint64_t canonical_index(const BinString& x);
BinString from_canonical_index(std::uint64_t index);

/// All strings of length exactly n, in lexicographic order.
std::vector<BinString> all_strings(std::size_t n);
/// All strings of length <= n, in canonical order.
std::vector<BinString> all_strings_up_to(std::size_t n);

}  // namespace mdl

template <>
struct std::hash<mdl::BinString> {
    std::size_t operator()(const mdl::BinString& x) const noexcept {
        return std::hash<std::string>{}(x.str());
    }
};
