#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fibcat {

// A concrete counterexample, expressed through ids of the input data.
struct Witness {
  std::string kind;
  std::vector<std::string> ids;
  std::string detail;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  static Verdict yes() { return {}; }
  static Verdict no(Witness w) { return Verdict{false, std::move(w)}; }
  explicit operator bool() const { return holds; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed documents, unknown ids, duplicate ids.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Axiom violations (associativity, functoriality, ...).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<Witness> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<Witness>& violations() const { return violations_; }

 private:
  std::vector<Witness> violations_;
};

// An operation was called outside its contract; carries the failing witness.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, Witness witness)
      : Error(what), witness_(std::move(witness)) {}
  const Witness& witness() const { return witness_; }

 private:
  Witness witness_;
};

class EnumerationCapExceeded : public PreconditionError {
 public:
  EnumerationCapExceeded(const std::string& what, std::size_t cap)
      : PreconditionError(what, Witness{"enumeration_cap", {std::to_string(cap)}, what}) {}
};

// A proven implication failed on a concrete instance: a defect, never repaired silently.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibcat
