#include "empath/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "empath/errors.hpp"

namespace empath {

Satisfaction satisfies(const Plan& plan, const std::vector<Observation>& obs,
                       const KnowledgeBase& init, const ActionLibrary& lib,
                       const std::map<std::string, Outcome>& outcomes) {
  Satisfaction out;
  // States after each prefix; states[k] follows k steps.
  std::vector<KnowledgeBase> states{init};
  for (const auto& step : plan.steps) {
    const Action* a = lib.find(step.action);
    if (a == nullptr) return out;
    std::optional<Outcome> o = step.outcome;
    if (is_sensing(*a) && !o) {
      auto it = outcomes.find(step.action);
      if (it == outcomes.end()) return out;
      o = it->second;
    }
    if (!executable(states.back(), *a)) return out;
    states.push_back(progress(states.back(), *a, o));
  }
  std::size_t k = 0;
  for (const auto& ob : obs) {
    bool found = false;
    while (k < plan.steps.size()) {
      ++k;
      if (ob.action && plan.steps[k - 1].action != *ob.action) continue;
      if (!states[k].entails(ob.condition)) continue;
      found = true;
      break;
    }
    if (!found) {
      out.mapping.clear();
      return out;
    }
    out.mapping.push_back(k);
  }
  out.satisfied = true;
  return out;
}

std::string start_atom() { return "__p0"; }
std::string seen_atom(const std::string& action) { return "__seen_" + action; }
std::string last_atom() { return "__last"; }

namespace {

CanonicalRML root(const std::string& atom, bool positive) {
  return CanonicalRML{{}, Literal{Atom{atom}, positive}};
}

}  // namespace

CompiledObservations compile_observations(const MepProblem& base,
                                          const std::vector<Observation>& obs) {
  std::set<std::string> seen;
  for (const auto& o : obs) {
    if (!o.action) throw RecognitionError("observations without an action are not compiled");
    if (!o.condition.empty()) {
      throw RecognitionError("observation of '" + *o.action + "' carries a condition; only " +
                             "action observations are compiled");
    }
    if (base.actions.find(*o.action) == nullptr) {
      throw RecognitionError("observed action '" + *o.action + "' is not in the domain");
    }
    if (!seen.insert(*o.action).second) {
      throw DuplicateObservedAction("action '" + *o.action + "' is observed more than once");
    }
  }

  MepProblem compiled = base;
  ActionLibrary lib(base.actions.agents());
  for (const auto& [name, action] : base.actions.actions()) {
    Action a = action;
    for (std::size_t j = 0; j < obs.size(); ++j) {
      if (*obs[j].action != name) continue;
      const std::string gate = j == 0 ? start_atom() : seen_atom(*obs[j - 1].action);
      Conjunction effect{root(seen_atom(name), true)};
      if (j + 1 == obs.size()) effect.push_back(root(last_atom(), true));
      ConditionalEffect ce{{root(gate, true)}, effect};
      auto* det = std::get_if<DeterministicAction>(&a);
      if (det == nullptr) {
        throw RecognitionError("observed action '" + name + "' is a sensing action");
      }
      det->effects.push_back(std::move(ce));
    }
    lib.add(std::move(a));
  }
  compiled.actions = std::move(lib);
  compiled.init = compiled.init.update(Conjunction{root(start_atom(), true)});
  compiled.init = compiled.init.update(Conjunction{root(last_atom(), obs.empty())});

  CompiledObservations out{compiled, compiled};
  out.constrained.goal.push_back(root(last_atom(), true));
  out.complement.goal.push_back(root(last_atom(), false));
  return out;
}

const char* to_string(Perspective p) {
  return p == Perspective::kActor ? "actor" : "observer";
}

double likelihood(double delta, double beta) {
  if (delta == std::numeric_limits<double>::infinity()) return 0.0;
  if (delta == -std::numeric_limits<double>::infinity()) return 1.0;
  return 1.0 / (1.0 + std::exp(beta * delta));
}

EmprProblem projected_recognition_problem(const EmprProblem& r) {
  EmprProblem out = r;
  ProjectedDomain d = project(r.actions, r.init, r.actor);
  out.actions = std::move(d.actions);
  out.init = std::move(d.init);
  return out;
}

namespace {

std::optional<std::size_t> cost_of(const MepProblem& p, const SearchOptions& opts) {
  SearchOptions single = opts;
  single.all_optimal = false;
  try {
    return solve_optimal(p, single).cost();
  } catch (const NoSolution&) {
    return std::nullopt;
  }
}

MepProblem base_problem(const EmprProblem& r, std::size_t goal) {
  return MepProblem{r.actions, r.init, r.goals[goal], r.sensing_outcomes};
}

std::string goal_name(const EmprProblem& r, std::size_t g) {
  return g < r.goal_names.size() ? r.goal_names[g] : render(r.goals[g]);
}

}  // namespace

GoalPosterior posterior(const EmprProblem& r, double beta, Perspective perspective,
                        const SearchOptions& opts) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw RecognitionError("beta must be positive");
  if (r.goals.empty()) throw RecognitionError("no candidate goals");
  const EmprProblem view =
      perspective == Perspective::kActor ? projected_recognition_problem(r) : r;

  GoalPosterior out;
  out.beta = beta;
  out.perspective = perspective;
  bool any_feasible = false;
  double total = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < view.goals.size(); ++g) {
    CompiledObservations c = compile_observations(base_problem(view, g), view.observations);
    GoalScore s;
    s.name = goal_name(r, g);
    s.constrained_cost = cost_of(c.constrained, opts);
    s.complement_cost = cost_of(c.complement, opts);
    if (s.constrained_cost && s.complement_cost) {
      s.delta = static_cast<double>(*s.constrained_cost) - static_cast<double>(*s.complement_cost);
    } else if (s.constrained_cost) {
      s.delta = -inf;
    } else {
      s.delta = inf;
    }
    any_feasible = any_feasible || s.constrained_cost || s.complement_cost;
    s.likelihood = likelihood(s.delta, beta);
    total += s.likelihood;
    out.goals.push_back(std::move(s));
  }
  if (!any_feasible) throw NoGoalFeasible("no goal is reachable with or without the observations");
  if (total <= 0.0) throw RecognitionError("no goal is consistent with the observations");
  for (auto& s : out.goals) s.posterior = s.likelihood / total;
  return out;
}

EmprSolution solve_empr(const EmprProblem& r, double beta, Perspective perspective,
                        const SearchOptions& opts) {
  EmprSolution out;
  out.scores = posterior(r, beta, perspective, opts);
  std::size_t best = 0;
  for (std::size_t g = 1; g < out.scores.goals.size(); ++g) {
    const GoalScore& a = out.scores.goals[g];
    const GoalScore& b = out.scores.goals[best];
    if (a.posterior > b.posterior || (a.posterior == b.posterior && a.name < b.name)) best = g;
  }
  out.goal_index = best;
  out.goal_name = out.scores.goals[best].name;
  CompiledObservations c = compile_observations(base_problem(r, best), r.observations);
  SearchOptions single = opts;
  single.all_optimal = false;
  try {
    out.plan = solve_optimal(c.constrained, single).plans.front();
  } catch (const NoSolution&) {
    throw NoGoalFeasible("goal " + out.goal_name +
                         " has no observation-consistent plan in the observer's model");
  }
  out.satisfaction = satisfies(out.plan, r.observations, r.init, r.actions, r.sensing_outcomes);
  return out;
}

namespace {

std::vector<Plan> constrained_optimal(const MepProblem& base, const std::vector<Observation>& obs,
                                      const SearchOptions& opts) {
  CompiledObservations c = compile_observations(base, obs);
  SearchOptions all = opts;
  all.all_optimal = true;
  try {
    return solve_optimal(c.constrained, all).plans;
  } catch (const NoSolution&) {
    return {};
  }
}

}  // namespace

MaximalEmpathyReport maximal_empathy(const EmprProblem& r, const ActorGroundTruth& truth,
                                     const SearchOptions& opts) {
  MaximalEmpathyReport out;
  const EmprProblem proj = projected_recognition_problem(r);
  out.maximally_task_empathetic = true;
  for (std::size_t g = 0; g < r.goals.size(); ++g) {
    MaximalEmpathyGoal mg;
    mg.name = goal_name(r, g);
    mg.projected = constrained_optimal(base_problem(proj, g), r.observations, opts);
    MepProblem actor{truth.actions.owned_by(r.actor), truth.init, r.goals[g],
                     truth.sensing_outcomes};
    mg.actor = constrained_optimal(actor, r.observations, opts);
    mg.equal = mg.projected == mg.actor;
    out.maximally_task_empathetic = out.maximally_task_empathetic && mg.equal;
    out.goals.push_back(std::move(mg));
  }
  return out;
}

}  // namespace empath
