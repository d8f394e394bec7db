#pragma once

#include <stdexcept>
#include <string>

namespace mdl {

// A set that was required to be prefix-free is not.
class NotPrefixFree : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// b(x_t | x_<t) requested where b(x_<t) = 0.
class UndefinedConditional : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A resource-bounded quantity cannot be certified at the given budget.
class BudgetInsufficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Corrupt, truncated or mismatched cache file.
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mdl
