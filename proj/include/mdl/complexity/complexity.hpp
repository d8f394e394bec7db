#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

#include "mdl/core/rational.hpp"

namespace mdl {

/// A description length in bits, or "infinite" (no witness within budget).
class Complexity {
public:
    explicit Complexity(std::size_t bits) : bits_(bits) {}
    explicit Complexity(std::optional<std::size_t> bits) : bits_(bits) {}
    static Complexity infinite() { return Complexity(std::optional<std::size_t>{}); }

    bool finite() const noexcept { return bits_.has_value(); }
    /// Throws std::bad_optional_access when infinite.
    std::size_t value() const { return bits_.value(); }
    /// 2^-bits, or 0 when infinite.
    ExactRational weight() const { return finite() ? ExactRational::dyadic(*bits_) : ExactRational(0); }
    std::string str() const { return finite() ? std::to_string(*bits_) : std::string("inf"); }

    friend bool operator==(const Complexity&, const Complexity&) = default;
    friend std::strong_ordering operator<=>(const Complexity& a, const Complexity& b) {
        if (a.finite() != b.finite()) return a.finite() ? std::strong_ordering::less : std::strong_ordering::greater;
        if (!a.finite()) return std::strong_ordering::equal;
        return *a.bits_ <=> *b.bits_;
    }

private:
    std::optional<std::size_t> bits_;
};

}  // namespace mdl
