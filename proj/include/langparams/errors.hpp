// errors.hpp -- exception types shared by all components.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace langparams {

// Bad input that a caller could have validated (exit code 1 in the CLI).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A size guard refused to run the requested computation (exit code 2 in the CLI).
struct SizeGuardError : std::runtime_error {
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyInputError : ValidationError {
    EmptyInputError() : ValidationError("empty input") {}
};

struct ZeroInputError : ValidationError {
    ZeroInputError() : ValidationError("zero input") {}
};

struct UnsupportedTypeError : ValidationError {
    explicit UnsupportedTypeError(const std::string& label)
        : ValidationError("unsupported type label: " + label) {}
};

struct WeylTooLargeError : SizeGuardError {
    std::uint64_t partial_count;
    explicit WeylTooLargeError(std::uint64_t count)
        : SizeGuardError("Weyl group enumeration exceeded bound; partial count " +
                         std::to_string(count)),
          partial_count(count) {}
};

struct DegenerateChiError : ValidationError {
    DegenerateChiError() : ValidationError("chi is constant; no twisted Coxeter number") {}
};

struct NotPrimeError : ValidationError {
    explicit NotPrimeError(long long n)
        : ValidationError("not a prime: " + std::to_string(n)) {}
};

struct GroupTooLargeError : SizeGuardError {
    std::uint64_t estimate;
    explicit GroupTooLargeError(std::uint64_t est)
        : SizeGuardError("group too large to enumerate; estimated order " +
                         std::to_string(est)),
          estimate(est) {}
};

struct TooManyPairsError : SizeGuardError {
    std::uint64_t estimate;
    explicit TooManyPairsError(std::uint64_t est)
        : SizeGuardError("pair enumeration too large; estimated " + std::to_string(est) +
                         " pairs"),
          estimate(est) {}
};

struct BadActionError : ValidationError {
    explicit BadActionError(const std::string& what) : ValidationError(what) {}
};

struct NonPositiveCountError : ValidationError {
    explicit NonPositiveCountError(const std::string& what) : ValidationError(what) {}
};

struct NotApplicableError : ValidationError {
    explicit NotApplicableError(const std::string& what) : ValidationError(what) {}
};

struct NotSupportedError : ValidationError {
    explicit NotSupportedError(const std::string& what) : ValidationError(what) {}
};

struct BadInputError : ValidationError {
    explicit BadInputError(const std::string& what) : ValidationError(what) {}
};

}  // namespace langparams
