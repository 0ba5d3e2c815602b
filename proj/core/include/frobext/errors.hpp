#pragma once

#include <stdexcept>
#include <string>

namespace frobext {

// Malformed or unsupported input (bad JSON, non-prime l, unsupported kind).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A theorem hypothesis does not hold (multiple common root, inconsistent slopes).
class HypothesisError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The working p-adic precision is too small to determine an answer.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, long required)
        : std::runtime_error(what), required_(required) {}
    long required_precision() const noexcept { return required_; }

private:
    long required_;
};

} // namespace frobext
