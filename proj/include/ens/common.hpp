#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/dynamic_bitset.hpp>

namespace ens {

using StateId = std::uint32_t;
using EventId = std::uint32_t;

/// Membership vectors, markings and coverage sets are all bit-vectors over
/// ordinals in declaration order.
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value references something that does not exist, or a container is
/// empty where it must not be. Distinct from an invariant violation, which is
/// reported by validate() instead of thrown.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A search ran past its deadline. Carries how many queries were answered.
class Timeout : public Error {
 public:
  explicit Timeout(std::size_t checked)
      : Error("deadline exceeded after " + std::to_string(checked) + " queries"), checked_(checked) {}

  std::size_t checked() const { return checked_; }

 private:
  std::size_t checked_;
};

}  // namespace ens
