#pragma once

#include <stdexcept>
#include <string>

namespace arboreal {

/// Raised when an operation is called outside its stated domain
/// (bad prime, wrong ground-field mode, missing auxiliary data, ...).
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a configured size cap (polynomial degree, resultant size,
/// interval precision) would be exceeded.
class cap_exceeded : public std::runtime_error {
public:
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the oracle harness when the valuation data cannot decide
/// which predictions apply.
class indeterminate_regime : public std::runtime_error {
public:
    explicit indeterminate_regime(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw precondition_error(what);
}

} // namespace arboreal
