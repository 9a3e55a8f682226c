#include "empath/action.hpp"

#include <algorithm>

#include "empath/errors.hpp"

namespace empath {

const std::string& name_of(const Action& a) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, a);
}

const Agent& owner_of(const Action& a) {
  return std::visit([](const auto& x) -> const Agent& { return x.owner; }, a);
}

const Conjunction& precondition_of(const Action& a) {
  return std::visit([](const auto& x) -> const Conjunction& { return x.pre; }, a);
}

bool is_sensing(const Action& a) { return std::holds_alternative<SensingAction>(a); }

const char* to_string(Outcome o) { return o == Outcome::kPositive ? "pos" : "neg"; }

void ActionLibrary::add(Action a) {
  const std::string& name = name_of(a);
  if (name.empty()) throw ProblemError("action with empty name");
  if (!agents_.empty() &&
      std::find(agents_.begin(), agents_.end(), owner_of(a)) == agents_.end()) {
    throw ProblemError("action '" + name + "' has unknown owner '" + owner_of(a).name + "'");
  }
  if (!actions_.emplace(name, std::move(a)).second) {
    throw ProblemError("duplicate action '" + name + "'");
  }
}

const Action* ActionLibrary::find(const std::string& name) const {
  auto it = actions_.find(name);
  return it == actions_.end() ? nullptr : &it->second;
}

ActionLibrary ActionLibrary::owned_by(const Agent& agent) const {
  ActionLibrary out(agents_);
  for (const auto& [name, a] : actions_) {
    if (owner_of(a) == agent) out.actions_.emplace(name, a);
  }
  return out;
}

ActionLibrary ActionLibrary::without(const std::string& name) const {
  ActionLibrary out = *this;
  out.actions_.erase(name);
  return out;
}

std::string render(const PlanStep& s) {
  if (!s.outcome) return s.action;
  return s.action + "[" + to_string(*s.outcome) + "]";
}

Conjunction unmet_preconditions(const KnowledgeBase& kb, const Action& a) {
  Conjunction out;
  for (const auto& r : precondition_of(a)) {
    if (!kb.entails(r)) out.push_back(r);
  }
  return out;
}

bool executable(const KnowledgeBase& kb, const Action& a) {
  return kb.entails(precondition_of(a));
}

namespace {

[[noreturn]] void throw_not_executable(const KnowledgeBase& kb, const Action& a) {
  throw NotExecutable("action '" + name_of(a) + "' is not executable: precondition " +
                      render(unmet_preconditions(kb, a)) + " not entailed");
}

}  // namespace

KnowledgeBase progress_det(const KnowledgeBase& kb, const DeterministicAction& a,
                           const TraceSink& trace) {
  if (!kb.entails(a.pre)) throw_not_executable(kb, a);
  // Conditions are evaluated against the state before the action.
  KnowledgeBase out = kb;
  for (const auto& ce : a.effects) {
    if (!kb.entails(ce.condition)) continue;
    out = out.update(ce.effect);
    if (trace) trace("  update " + render(ce.effect));
  }
  return out;
}

KnowledgeBase progress_sense(const KnowledgeBase& kb, const SensingAction& a, Outcome o,
                             const TraceSink& trace) {
  if (!kb.entails(a.pre)) throw_not_executable(kb, a);
  const Conjunction& result = o == Outcome::kPositive ? a.pos : a.neg;
  if (trace) trace("  revise " + render(result));
  return kb.revise(result);
}

KnowledgeBase progress(const KnowledgeBase& kb, const Action& a, std::optional<Outcome> o,
                       const TraceSink& trace) {
  if (const auto* det = std::get_if<DeterministicAction>(&a)) return progress_det(kb, *det, trace);
  if (!o) throw ProblemError("sensing action '" + name_of(a) + "' has no outcome");
  return progress_sense(kb, std::get<SensingAction>(a), *o, trace);
}

ProgressResult progress_seq(const KnowledgeBase& kb, const ActionLibrary& lib,
                            const std::vector<PlanStep>& steps, const TraceSink& trace) {
  KnowledgeBase current = kb;
  if (trace) trace("step 0: " + current.render());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const PlanStep& step = steps[i];
    const Action* a = lib.find(step.action);
    if (a == nullptr) {
      return {std::nullopt, ProgressFailure{i + 1, step.action, "unknown action"}};
    }
    if (is_sensing(*a) && !step.outcome) {
      return {std::nullopt, ProgressFailure{i + 1, step.action, "missing sensing outcome"}};
    }
    if (!executable(current, *a)) {
      return {std::nullopt,
              ProgressFailure{i + 1, step.action,
                              "precondition " + render(unmet_preconditions(current, *a)) +
                                  " not entailed"}};
    }
    current = progress(current, *a, is_sensing(*a) ? step.outcome : std::nullopt, trace);
    if (trace) trace("step " + std::to_string(i + 1) + " " + render(step) + ": " + current.render());
  }
  return {current, std::nullopt};
}

}  // namespace empath
