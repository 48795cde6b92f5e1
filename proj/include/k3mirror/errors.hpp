#pragma once

#include <stdexcept>
#include <string>

namespace k3mirror {

// Base error for everything the library throws deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input document could not be parsed (CLI exit code 2).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Odd quadratic form rejected without the override flag (CLI exit code 3).
struct OddFormError : Error {
    explicit OddFormError(const std::string& msg) : Error(msg) {}
};

// Bounded search found no admissible vector (CLI exit code 4).
struct NoAdmissiblePairError : Error {
    explicit NoAdmissiblePairError(const std::string& msg) : Error(msg) {}
};

// Kahler class norm does not match the period norm (CLI exit code 5).
struct NormMismatchError : Error {
    explicit NormMismatchError(const std::string& msg) : Error(msg) {}
};

// A stated exact identity failed on concrete data (CLI exit code 6).
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

} // namespace k3mirror
