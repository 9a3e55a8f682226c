#pragma once

// Grounded deterministic and sensing actions and KB progression.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "empath/knowledge_base.hpp"
#include "empath/logic.hpp"

namespace empath {

struct ConditionalEffect {
  Conjunction condition;  // empty means always
  Conjunction effect;

  bool operator==(const ConditionalEffect&) const = default;
};

struct DeterministicAction {
  std::string name;
  Agent owner;
  Conjunction pre;
  std::vector<ConditionalEffect> effects;

  bool operator==(const DeterministicAction&) const = default;
};

struct SensingAction {
  std::string name;
  Agent owner;
  Conjunction pre;
  Conjunction pos;
  Conjunction neg;

  bool operator==(const SensingAction&) const = default;
};

using Action = std::variant<DeterministicAction, SensingAction>;

const std::string& name_of(const Action& a);
const Agent& owner_of(const Action& a);
const Conjunction& precondition_of(const Action& a);
bool is_sensing(const Action& a);

enum class Outcome { kPositive, kNegative };

const char* to_string(Outcome o);

// Name-ordered action set over a fixed agent set.
class ActionLibrary {
 public:
  ActionLibrary() = default;
  explicit ActionLibrary(std::vector<Agent> agents) : agents_(std::move(agents)) {}

  // Throws ProblemError on a duplicate name or an owner outside the agent set.
  void add(Action a);

  const Action* find(const std::string& name) const;
  const std::map<std::string, Action>& actions() const { return actions_; }
  const std::vector<Agent>& agents() const { return agents_; }
  std::size_t size() const { return actions_.size(); }

  ActionLibrary owned_by(const Agent& agent) const;
  ActionLibrary without(const std::string& name) const;

  bool operator==(const ActionLibrary&) const = default;

 private:
  std::vector<Agent> agents_;
  std::map<std::string, Action> actions_;
};

struct PlanStep {
  std::string action;
  std::optional<Outcome> outcome;  // set for sensing steps

  auto operator<=>(const PlanStep&) const = default;
};

std::string render(const PlanStep& s);

// Receives one line per progression event.
using TraceSink = std::function<void(const std::string&)>;

bool executable(const KnowledgeBase& kb, const Action& a);

// Conjuncts of the precondition that kb does not entail.
Conjunction unmet_preconditions(const KnowledgeBase& kb, const Action& a);

// Throws NotExecutable when the precondition is not entailed.
KnowledgeBase progress_det(const KnowledgeBase& kb, const DeterministicAction& a,
                           const TraceSink& trace = {});
KnowledgeBase progress_sense(const KnowledgeBase& kb, const SensingAction& a, Outcome o,
                             const TraceSink& trace = {});
// Dispatches on the action kind. A sensing action without an outcome is a
// ProblemError.
KnowledgeBase progress(const KnowledgeBase& kb, const Action& a, std::optional<Outcome> o,
                       const TraceSink& trace = {});

struct ProgressFailure {
  std::size_t step = 0;  // 1-based
  std::string action;
  std::string reason;
};

struct ProgressResult {
  std::optional<KnowledgeBase> kb;  // empty when undefined
  std::optional<ProgressFailure> failure;

  bool defined() const { return kb.has_value(); }
};

// Left fold of progress. Stops at the first step that is unknown,
// not executable or missing its sensing outcome.
ProgressResult progress_seq(const KnowledgeBase& kb, const ActionLibrary& lib,
                            const std::vector<PlanStep>& steps, const TraceSink& trace = {});

}  // namespace empath
