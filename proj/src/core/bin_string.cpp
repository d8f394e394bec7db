#include "mdl/core/bin_string.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mdl {

BinString::BinString(std::string_view bits) : bits_(bits) {
    for (char c : bits_) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("not a binary string: '" + std::string(bits) + "'");
        }
    }
}

BinString BinString::zeros(std::size_t n) { return BinString(Raw{}, std::string(n, '0')); }

BinString BinString::repeat(std::string_view unit, std::size_t times) {
    BinString u(unit);
    std::string out;
    out.reserve(u.size() * times);
    for (std::size_t i = 0; i < times; ++i) out += u.bits_;
    return BinString(Raw{}, std::move(out));
}

BinString BinString::from_uint(std::uint64_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1U) out[i] = '1';
    }
    return BinString(Raw{}, std::move(out));
}

BinString BinString::with(int bit) const {
    BinString out = *this;
    out.push_back(bit);
    return out;
}

bool BinString::starts_with(const BinString& x) const noexcept {
    return x.size() <= size() && std::equal(x.bits_.begin(), x.bits_.end(), bits_.begin());
}

std::size_t BinString::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

bool BinString::all_zero() const noexcept {
    return bits_.find('1') == std::string::npos;
}

std::uint64_t BinString::to_uint() const {
    if (size() > 64) throw std::out_of_range("BinString::to_uint: more than 64 bits");
    std::uint64_t v = 0;
    for (char c : bits_) v = (v << 1) | (c == '1' ? 1U : 0U);
    return v;
}

std::ostream& operator<<(std::ostream& os, const BinString& x) { return os << x.str(); }

bool is_proper_prefix(const BinString& x, const BinString& y) noexcept {
    return x.size() < y.size() && y.starts_with(x);
}

std::uint64_t canonical_index(const BinString& x) {
    if (x.size() >= 63) throw std::out_of_range("canonical_index: string too long");
    return ((std::uint64_t{1} << x.size()) - 1) + x.to_uint();
}

BinString from_canonical_index(std::uint64_t index) {
    std::size_t len = 0;
    while (index >= (std::uint64_t{1} << (len + 1)) - 1) ++len;
    return BinString::from_uint(index - ((std::uint64_t{1} << len) - 1), len);
}

std::vector<BinString> all_strings(std::size_t n) {
    if (n >= 40) throw std::out_of_range("all_strings: length too large to enumerate");
    std::vector<BinString> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BinString::from_uint(v, n));
    return out;
}

std::vector<BinString> all_strings_up_to(std::size_t n) {
    std::vector<BinString> out;
    for (std::size_t len = 0; len <= n; ++len) {
        auto layer = all_strings(len);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace mdl
