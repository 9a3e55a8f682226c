#pragma once

// Assistive planning for an actor's goal inside the observer's model of the
// actor's beliefs, the sympathetic baseline that ignores those beliefs, and
// the check that the observer's view of the actor reproduces the actor's own
// optimal plans.

#include <optional>

#include "empath/planner.hpp"
#include "empath/projection.hpp"

namespace empath {

struct EmpProblem {
  // Observer domain, observer KB and the actor's goal.
  MepProblem mep;
  Agent actor;
};

// The actor's true domain, from the actor's root perspective.
struct ActorGroundTruth {
  ActionLibrary actions;
  KnowledgeBase init;
  std::map<std::string, Outcome> sensing_outcomes;
};

// First optimal plan of the observer-model problem.
Plan solve_emp(const EmpProblem& z, const SearchOptions& opts = {});

// kb with every belief held by the actor replaced by the actor believing
// each root literal of kb. Other agents' beliefs are kept.
KnowledgeBase sympathetic_init(const KnowledgeBase& kb, const Agent& actor);

Plan solve_sympathetic(const EmpProblem& z, const SearchOptions& opts = {});

// The observer's view of the actor: projected library and KB with the
// actor's goal.
MepProblem projected_problem(const EmpProblem& z);

// The actor's own problem: true KB, actor-owned true actions.
MepProblem actor_problem(const EmpProblem& z, const ActorGroundTruth& truth);

// Every action of the true library; used to check whether a plan that
// involves other agents would run in the actor's world.
MepProblem actor_validation_problem(const EmpProblem& z, const ActorGroundTruth& truth);

struct EmpathyReport {
  std::vector<Plan> pi_proj_star;
  std::vector<Plan> pi_act_star;
  bool selectively_task_empathetic = false;
  // Either side hit the all-optimal cap; the verdict compares truncated sets.
  bool inconclusive = false;
  std::optional<Plan> witness;
  // Which set the witness belongs to: "projected" or "actor".
  std::string witness_side;
};

EmpathyReport check_selective_task_empathy(const EmpProblem& z, const ActorGroundTruth& truth,
                                           const SearchOptions& opts = {});

struct DominanceRecord {
  std::optional<std::size_t> empathetic_cost;
  std::optional<std::size_t> actor_cost;
  bool selectively_task_empathetic = false;
  // empathetic_cost <= actor_cost; vacuous when the actor has no plan.
  bool dominates = false;
};

DominanceRecord assistive_dominance(const EmpProblem& z, const ActorGroundTruth& truth,
                                    const SearchOptions& opts = {});

struct Comparison {
  std::optional<Plan> empathetic;
  std::optional<Plan> sympathetic;
  // From the actor's true domain when known, else from the projection.
  std::optional<Plan> actor_self;
  bool actor_self_from_truth = false;
  std::optional<bool> empathetic_executable_in_actor_model;
  std::optional<bool> sympathetic_executable_in_actor_model;
};

Comparison compare(const EmpProblem& z, const std::optional<ActorGroundTruth>& truth,
                   const SearchOptions& opts = {});

}  // namespace empath
