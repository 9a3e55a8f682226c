#pragma once

// Optimal linear planning over KB states with unit action costs. Sensing
// outcomes are fixed inputs, so every plan is a single path.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "empath/action.hpp"
#include "empath/knowledge_base.hpp"

namespace empath {

struct MepProblem {
  ActionLibrary actions;
  KnowledgeBase init;
  Conjunction goal;
  std::map<std::string, Outcome> sensing_outcomes;
};

struct Plan {
  std::vector<PlanStep> steps;

  std::size_t cost() const { return steps.size(); }
  std::vector<std::string> action_names() const;

  auto operator<=>(const Plan&) const = default;
};

std::string render(const Plan& p);

struct SearchOptions {
  bool all_optimal = false;
  std::size_t max_plans = 64;
  // Distinct states generated before BudgetExceeded.
  std::size_t max_nodes = 200'000;
  // Worker threads used to expand a layer. Output does not depend on it.
  std::size_t threads = 1;
  TraceSink trace;
};

struct SearchResult {
  // Cheapest plans in lexicographic order of action names.
  std::vector<Plan> plans;
  // More optimal plans exist than max_plans.
  bool truncated = false;
  std::size_t expanded = 0;
  std::size_t generated = 0;

  std::size_t cost() const { return plans.front().cost(); }
};

// Layered breadth-first search. Throws NoSolution when the reachable state
// space holds no goal state, BudgetExceeded past max_nodes, ProblemError
// when a sensing action has no outcome.
SearchResult solve_optimal(const MepProblem& p, const SearchOptions& opts = {});

struct Validation {
  bool ok = false;
  // 1-based failing step; absent when the failure is the goal check.
  std::optional<std::size_t> step;
  std::string reason;
  std::optional<KnowledgeBase> final_kb;
};

// Outcomes missing from plan steps are taken from the problem.
Validation validate_plan(const MepProblem& p, const Plan& plan, const TraceSink& trace = {});

// Fills in sensing outcomes from the problem for steps that lack one.
Plan with_outcomes(const MepProblem& p, const Plan& plan);

}  // namespace empath
