#pragma once

#include <stdexcept>
#include <string>

namespace empath {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A formula falls outside the conjunction-of-RML fragment.
class FragmentError : public Error {
 public:
  enum class Kind { kDisjunction, kDepthExceeded, kNegatedConjunction };

  FragmentError(Kind kind, std::string subformula, const std::string& message)
      : Error(message), kind_(kind), subformula_(std::move(subformula)) {}

  Kind kind() const { return kind_; }
  // Rendering of the offending subformula.
  const std::string& subformula() const { return subformula_; }

 private:
  Kind kind_;
  std::string subformula_;
};

const char* to_string(FragmentError::Kind kind);

// tell() on a knowledge base that already holds a conflicting fact.
class InconsistencyError : public Error {
 public:
  InconsistencyError(std::string existing, const std::string& message)
      : Error(message), existing_(std::move(existing)) {}

  const std::string& existing() const { return existing_; }

 private:
  std::string existing_;
};

// Enumeration or search exceeded its configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownAtom : public Error {
 public:
  using Error::Error;
};

class NotExecutable : public Error {
 public:
  using Error::Error;
};

// Malformed problem: missing sensing outcomes, unknown names, and so on.
class ProblemError : public Error {
 public:
  using Error::Error;
};

// Search space exhausted without reaching the goal.
class NoSolution : public Error {
 public:
  using Error::Error;
};

class RecognitionError : public Error {
 public:
  using Error::Error;
};

// Every candidate goal is unsolvable with and without the observations.
class NoGoalFeasible : public RecognitionError {
 public:
  using RecognitionError::RecognitionError;
};

class DuplicateObservedAction : public RecognitionError {
 public:
  using RecognitionError::RecognitionError;
};

}  // namespace empath
