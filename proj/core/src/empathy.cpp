#include "empath/empathy.hpp"

#include <algorithm>

#include "empath/errors.hpp"

namespace empath {

Plan solve_emp(const EmpProblem& z, const SearchOptions& opts) {
  SearchOptions single = opts;
  single.all_optimal = false;
  return solve_optimal(z.mep, single).plans.front();
}

KnowledgeBase sympathetic_init(const KnowledgeBase& kb, const Agent& actor) {
  KnowledgeBase out(kb.depth_bound());
  Conjunction roots;
  for (const auto& r : kb.facts()) {
    if (!r.prefix.empty() && r.prefix.front().agent == actor) continue;
    out = out.tell(r);
    if (r.is_root_literal()) roots.push_back(r);
  }
  if (kb.depth_bound() == 0) return out;
  Conjunction shared;
  for (const auto& r : roots) shared.push_back(prepend(ModalStep{actor, Sign::kPositive}, r));
  return out.update(shared);
}

Plan solve_sympathetic(const EmpProblem& z, const SearchOptions& opts) {
  EmpProblem symp = z;
  symp.mep.init = sympathetic_init(z.mep.init, z.actor);
  return solve_emp(symp, opts);
}

MepProblem projected_problem(const EmpProblem& z) {
  ProjectedDomain d = project(z.mep.actions, z.mep.init, z.actor);
  return MepProblem{std::move(d.actions), std::move(d.init), z.mep.goal, z.mep.sensing_outcomes};
}

MepProblem actor_problem(const EmpProblem& z, const ActorGroundTruth& truth) {
  return MepProblem{truth.actions.owned_by(z.actor), truth.init, z.mep.goal,
                    truth.sensing_outcomes};
}

MepProblem actor_validation_problem(const EmpProblem& z, const ActorGroundTruth& truth) {
  return MepProblem{truth.actions, truth.init, z.mep.goal, truth.sensing_outcomes};
}

namespace {

struct AllOptimal {
  std::vector<Plan> plans;
  bool truncated = false;
};

AllOptimal all_optimal(const MepProblem& p, const SearchOptions& opts) {
  SearchOptions all = opts;
  all.all_optimal = true;
  try {
    SearchResult r = solve_optimal(p, all);
    return {std::move(r.plans), r.truncated};
  } catch (const NoSolution&) {
    return {};
  }
}

std::optional<std::size_t> optimal_cost(const MepProblem& p, const SearchOptions& opts) {
  SearchOptions single = opts;
  single.all_optimal = false;
  try {
    return solve_optimal(p, single).cost();
  } catch (const NoSolution&) {
    return std::nullopt;
  }
}

}  // namespace

EmpathyReport check_selective_task_empathy(const EmpProblem& z, const ActorGroundTruth& truth,
                                           const SearchOptions& opts) {
  EmpathyReport report;
  AllOptimal proj = all_optimal(projected_problem(z), opts);
  AllOptimal act = all_optimal(actor_problem(z, truth), opts);
  report.pi_proj_star = std::move(proj.plans);
  report.pi_act_star = std::move(act.plans);
  report.inconclusive = proj.truncated || act.truncated;

  // Both lists are sorted, so set equality is list equality.
  report.selectively_task_empathetic = report.pi_proj_star == report.pi_act_star;
  if (!report.selectively_task_empathetic) {
    for (const auto& p : report.pi_proj_star) {
      if (!std::binary_search(report.pi_act_star.begin(), report.pi_act_star.end(), p)) {
        report.witness = p;
        report.witness_side = "projected";
        break;
      }
    }
    if (!report.witness) {
      for (const auto& p : report.pi_act_star) {
        if (!std::binary_search(report.pi_proj_star.begin(), report.pi_proj_star.end(), p)) {
          report.witness = p;
          report.witness_side = "actor";
          break;
        }
      }
    }
  }
  return report;
}

DominanceRecord assistive_dominance(const EmpProblem& z, const ActorGroundTruth& truth,
                                    const SearchOptions& opts) {
  DominanceRecord rec;
  rec.empathetic_cost = optimal_cost(z.mep, opts);
  rec.actor_cost = optimal_cost(actor_problem(z, truth), opts);
  rec.selectively_task_empathetic = check_selective_task_empathy(z, truth, opts)
                                        .selectively_task_empathetic;
  rec.dominates = !rec.actor_cost || (rec.empathetic_cost && *rec.empathetic_cost <= *rec.actor_cost);
  return rec;
}

Comparison compare(const EmpProblem& z, const std::optional<ActorGroundTruth>& truth,
                   const SearchOptions& opts) {
  Comparison c;
  try {
    c.empathetic = solve_emp(z, opts);
  } catch (const NoSolution&) {
  }
  try {
    c.sympathetic = solve_sympathetic(z, opts);
  } catch (const NoSolution&) {
  }
  try {
    SearchOptions single = opts;
    single.all_optimal = false;
    if (truth) {
      c.actor_self = solve_optimal(actor_problem(z, *truth), single).plans.front();
      c.actor_self_from_truth = true;
    } else {
      c.actor_self = solve_optimal(projected_problem(z), single).plans.front();
    }
  } catch (const NoSolution&) {
  }
  if (truth) {
    const MepProblem check = actor_validation_problem(z, *truth);
    if (c.empathetic) c.empathetic_executable_in_actor_model = validate_plan(check, *c.empathetic).ok;
    if (c.sympathetic) {
      c.sympathetic_executable_in_actor_model = validate_plan(check, *c.sympathetic).ok;
    }
  }
  return c;
}

}  // namespace empath
