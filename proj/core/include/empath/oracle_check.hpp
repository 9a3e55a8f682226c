#pragma once

// Exhaustive agreement between syntactic KB entailment and the KD45 model
// enumerator over a bounded vocabulary.

#include <cstdint>
#include <optional>
#include <vector>

#include "empath/knowledge_base.hpp"
#include "empath/kripke.hpp"

namespace empath {

// Every canonical RML over the vocabulary with depth <= d, by depth, then
// prefix, then body.
std::vector<CanonicalRML> enumerate_rmls(const Vocabulary& vocab, std::size_t depth);

struct AgreementOptions {
  std::size_t depth = 2;
  std::size_t max_premises = 2;
  OracleOptions oracle;
  // When non-zero, draw this many random premise sets instead of all of them.
  std::size_t sample = 0;
  std::uint64_t seed = 1;
};

struct AgreementCase {
  std::vector<CanonicalRML> premises;
  CanonicalRML query;
  // Oracle model of premises and the negated query, when one exists.
  std::optional<PointedModel> countermodel;
};

struct AgreementReport {
  std::uint64_t cases = 0;
  std::uint64_t premise_sets = 0;
  std::uint64_t models = 0;
  std::uint64_t profiles = 0;
  // KB entails, oracle has a countermodel.
  std::vector<AgreementCase> violations;
  // Oracle entails, KB does not.
  std::vector<AgreementCase> incomplete;

  double incompleteness_rate() const {
    return cases == 0 ? 0.0 : static_cast<double>(incomplete.size()) / static_cast<double>(cases);
  }
};

// Premise sets are the conflict-free RML sets of size <= max_premises;
// every RML of the grid is a query. Throws BudgetExceeded from the oracle.
AgreementReport agreement_sweep(const Vocabulary& vocab, const AgreementOptions& opts);

}  // namespace empath
