#pragma once

// Goal recognition from observed actions: observation satisfaction, the
// compilation of observation order into fresh gating atoms, cost-difference
// likelihoods and goal posteriors.

#include <optional>
#include <string>
#include <vector>

#include "empath/empathy.hpp"
#include "empath/planner.hpp"

namespace empath {

struct Observation {
  std::optional<std::string> action;
  Conjunction condition;  // empty means no fluent condition

  bool operator==(const Observation&) const = default;
};

struct EmprProblem {
  ActionLibrary actions;
  KnowledgeBase init;
  std::vector<Conjunction> goals;
  // Display names, parallel to goals.
  std::vector<std::string> goal_names;
  std::vector<Observation> observations;
  std::map<std::string, Outcome> sensing_outcomes;
  Agent actor{"act"};
};

struct Satisfaction {
  bool satisfied = false;
  // 1-based plan index for each observation (greedy earliest).
  std::vector<std::size_t> mapping;
};

Satisfaction satisfies(const Plan& plan, const std::vector<Observation>& obs,
                       const KnowledgeBase& init, const ActionLibrary& lib,
                       const std::map<std::string, Outcome>& outcomes = {});

// Names of the atoms the compiler introduces.
std::string start_atom();
std::string seen_atom(const std::string& action);
std::string last_atom();

struct CompiledObservations {
  MepProblem constrained;  // goal and the last observation seen
  MepProblem complement;   // goal and the last observation not seen
};

// Throws RecognitionError for observations with a condition or an unknown
// action, DuplicateObservedAction for repeats.
CompiledObservations compile_observations(const MepProblem& base,
                                          const std::vector<Observation>& obs);

enum class Perspective {
  kActor,     // recognise inside the observer's projection of the actor
  kObserver,  // recognise inside the observer's own model
};

const char* to_string(Perspective p);

struct GoalScore {
  std::string name;
  std::optional<std::size_t> constrained_cost;
  std::optional<std::size_t> complement_cost;
  double delta = 0.0;  // may be +-infinity
  double likelihood = 0.0;
  double posterior = 0.0;
};

struct GoalPosterior {
  std::vector<GoalScore> goals;
  double beta = 1.0;
  Perspective perspective = Perspective::kActor;
};

// 1 / (1 + exp(beta * delta)).
double likelihood(double delta, double beta);

// The problem seen through the actor's eyes: projected KB and actor-owned
// projected actions.
EmprProblem projected_recognition_problem(const EmprProblem& r);

// Uniform prior. Throws NoGoalFeasible when no goal has a plan on either
// side, RecognitionError when every likelihood is zero.
GoalPosterior posterior(const EmprProblem& r, double beta, Perspective perspective,
                        const SearchOptions& opts = {});

struct EmprSolution {
  std::size_t goal_index = 0;
  std::string goal_name;
  Plan plan;
  Satisfaction satisfaction;
  GoalPosterior scores;
};

// Picks the most probable goal (smallest name on ties) and plans for it in
// the observer's model under the observation constraints.
EmprSolution solve_empr(const EmprProblem& r, double beta, Perspective perspective,
                        const SearchOptions& opts = {});

struct MaximalEmpathyGoal {
  std::string name;
  std::vector<Plan> projected;
  std::vector<Plan> actor;
  bool equal = false;
};

struct MaximalEmpathyReport {
  std::vector<MaximalEmpathyGoal> goals;
  bool maximally_task_empathetic = false;
};

// For each goal, compares the observation-consistent optimal plans of the
// projected problem with those of the actor's true problem.
MaximalEmpathyReport maximal_empathy(const EmprProblem& r, const ActorGroundTruth& truth,
                                     const SearchOptions& opts = {});

}  // namespace empath
