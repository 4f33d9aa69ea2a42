#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace commkit {

/// Arbitrary-precision integer used for every coefficient and lattice entry.
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& value) { return value.str(); }

/// A well-formed request whose answer is "no" in a way the caller must see:
/// a word outside the required lower-central term, a violated hypothesis.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (word grammar, link files, certificates).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}

    explicit ParseError(const std::string& message)
        : std::runtime_error(message), position_(std::string::npos) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace commkit
