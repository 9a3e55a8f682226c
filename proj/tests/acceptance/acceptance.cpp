// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "empath/domain_language.hpp"
#include "empath/empathy.hpp"
#include "empath/errors.hpp"
#include "empath/kripke.hpp"
#include "empath/oracle_check.hpp"
#include "empath/recognition.hpp"
#include "enumeration.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "random_domain.hpp"

using namespace empath;
using namespace empath::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0 when unbounded
  std::function<Verdict()> run;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

bool pairwise_conflict_free(const KnowledgeBase& k) {
  for (const auto& a : k.facts()) {
    for (const auto& b : k.facts()) {
      if (conflict(a, b)) return false;
    }
  }
  return true;
}

// 1. Syntactic entailment against the KD45 model enumerator.
Verdict oracle_agreement() {
  AgreementOptions opts;
  opts.depth = 2;
  opts.max_premises = 2;
  opts.oracle.max_worlds = 4;
  const AgreementReport r = agreement_sweep(small_vocab(2, 2), opts);
  const double rate = r.incompleteness_rate();
  std::ostringstream d;
  d << r.violations.size() << " soundness violations, " << r.incomplete.size() << " incomplete ("
    << fmt("%.2f", rate * 100) << "%) of " << r.cases << " cases over " << r.models << " models";
  return {r.violations.empty() && rate <= 0.05, d.str()};
}

// 2. K, D, 4 and 5 on every KD45 model up to 3 worlds; frame validation
// against single-edge mutants of every KD45 frame up to 4 worlds.
Verdict axiom_suite() {
  const Vocabulary v = small_vocab(2, 2);
  FormulaGen gen(v, 2024);
  auto implies = [](Formula a, Formula b) {
    return Formula::negation(Formula::conjunction({std::move(a), Formula::negation(std::move(b))}));
  };
  std::vector<Formula> instances;
  for (int i = 0; i < 60; ++i) {
    for (const auto& agent : v.agents) {
      const Formula phi = gen(2);
      const Formula psi = gen(2);
      auto B = [&](Formula f) { return Formula::believes(agent, std::move(f)); };
      instances.push_back(implies(B(implies(phi, psi)), implies(B(phi), B(psi))));           // K
      instances.push_back(implies(B(phi), Formula::negation(B(Formula::negation(phi)))));    // D
      instances.push_back(implies(B(phi), B(B(phi))));                                       // 4
      instances.push_back(implies(Formula::negation(B(phi)), B(Formula::negation(B(phi)))));  // 5
    }
  }
  std::size_t models = 0;
  std::size_t failures = 0;
  OracleOptions small;
  small.max_worlds = 3;
  for_each_model(v, small, [&](const KripkeModel& m) {
    ++models;
    for (const auto& f : instances) {
      if (truth_set(m, f) != m.all_worlds()) ++failures;
    }
    return true;
  });

  // Brute-force frame properties of one agent's relation.
  auto broken = [](const std::vector<WorldSet>& rel, std::size_t n) {
    std::set<FrameViolation::Property> out;
    auto edge = [&](std::size_t a, std::size_t b) { return (rel[a] >> b) & 1u; };
    for (std::size_t x = 0; x < n; ++x) {
      if (rel[x] == 0) out.insert(FrameViolation::Property::kSerial);
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (edge(x, y) && edge(y, z) && !edge(x, z)) out.insert(FrameViolation::Property::kTransitive);
          if (edge(x, y) && edge(x, z) && !edge(y, z)) out.insert(FrameViolation::Property::kEuclidean);
        }
      }
    }
    return out;
  };
  std::size_t mutants[3] = {0, 0, 0};
  std::size_t frame_errors = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& rel : kd45_relations(n)) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          std::vector<WorldSet> mutant = rel;
          mutant[x] ^= WorldSet{1} << y;
          const auto expected = broken(mutant, n);
          KripkeModel m({Agent{"act"}}, {}, n);
          for (std::size_t w = 0; w < n; ++w) m.set_successors(0, w, mutant[w]);
          const auto got = validate_frame(m);
          if (got.has_value() != !expected.empty()) ++frame_errors;
          if (got && !expected.count(got->property)) ++frame_errors;
          for (auto p : expected) ++mutants[static_cast<int>(p)];
        }
      }
    }
  }
  std::ostringstream d;
  d << instances.size() << " axiom instances on " << models << " models, " << failures << " false; "
    << mutants[0] << "/" << mutants[1] << "/" << mutants[2]
    << " serial/transitive/Euclidean mutants, " << frame_errors << " misjudged";
  return {failures == 0 && frame_errors == 0 && instances.size() >= 200 && mutants[0] && mutants[1] && mutants[2],
          d.str()};
}

// 3. Empty sequence, composition and conflict-freeness of progression.
Verdict progression_laws() {
  const auto pool = all_rmls(small_vocab(2, 2), 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t instances = 0;
  std::size_t failures = 0;
  while (instances < 500) {
    ActionLibrary lib({Agent{"act"}, Agent{"obs"}});
    for (int i = 0; i < 6; ++i) {
      const std::string name = "a" + std::to_string(i);
      if (coin(rng) == 0) {
        lib.add(SensingAction{name, Agent{"act"}, random_conjunction(pool, rng, 0, 1),
                              random_conjunction(pool, rng, 0, 2), random_conjunction(pool, rng, 0, 2)});
      } else {
        std::vector<ConditionalEffect> effects;
        for (int k = coin(rng); k > 0; --k) {
          effects.push_back({random_conjunction(pool, rng, 0, 1), random_conjunction(pool, rng, 0, 2)});
        }
        lib.add(DeterministicAction{name, Agent{"obs"}, random_conjunction(pool, rng, 0, 1), std::move(effects)});
      }
    }
    KnowledgeBase kb;
    for (int i = 0; i < 4; ++i) {
      try {
        kb = kb.tell(pool[pick(rng)]);
      } catch (const InconsistencyError&) {
      }
    }
    std::vector<PlanStep> seq;
    for (int i = std::uniform_int_distribution<int>(1, 5)(rng); i > 0; --i) {
      const std::string name = "a" + std::to_string(std::uniform_int_distribution<int>(0, 5)(rng));
      std::optional<Outcome> o;
      if (is_sensing(*lib.find(name))) o = coin(rng) % 2 ? Outcome::kPositive : Outcome::kNegative;
      seq.push_back({name, o});
    }
    const auto whole = progress_seq(kb, lib, seq);
    if (!whole.defined()) continue;
    ++instances;
    if (!(*progress_seq(kb, lib, {}).kb == kb)) ++failures;
    for (std::size_t cut = 0; cut <= seq.size(); ++cut) {
      const std::vector<PlanStep> head(seq.begin(), seq.begin() + cut);
      const std::vector<PlanStep> tail(seq.begin() + cut, seq.end());
      const auto first = progress_seq(kb, lib, head);
      const auto second = progress_seq(*first.kb, lib, tail);
      if (!second.defined() || !(*second.kb == *whole.kb)) ++failures;
      if (!pairwise_conflict_free(*first.kb)) ++failures;
    }
  }
  std::ostringstream d;
  d << instances << " (KB, plan) instances, " << failures << " law violations";
  return {failures == 0, d.str()};
}

// 4. Bus scenario shape.
Verdict bus_scenario() {
  const auto bus = load_fixture("bus");
  const auto truth = load_actor("bus");
  const Comparison c = compare(bus.emp(), truth);
  const auto names = [](const std::optional<Plan>& p) { return p ? p->action_names() : std::vector<std::string>{}; };
  const auto emp = names(c.empathetic);
  const auto symp = names(c.sympathetic);
  const auto inform = std::find(emp.begin(), emp.end(), "inform_obs_act_businfo");
  const auto alt = std::find(emp.begin(), emp.end(), "take_altbus_act");
  const bool shape = inform != emp.end() && alt != emp.end() && inform < alt;
  const bool cheaper = c.empathetic && c.actor_self && c.empathetic->cost() < c.actor_self->cost();
  const bool crowded = symp == std::vector<std::string>{"take_crowdedbus_act"};
  const MepProblem actor_world{truth.actions, truth.init, *bus.goal, truth.sensing_outcomes};
  const Validation v = validate_plan(actor_world, *c.sympathetic);
  std::ostringstream d;
  d << "empathetic " << render(*c.empathetic) << " cost " << c.empathetic->cost() << " vs actor "
    << (c.actor_self ? std::to_string(c.actor_self->cost()) : "none") << "; sympathetic " << render(*c.sympathetic)
    << (v.ok ? " validates" : " fails in actor model: " + v.reason);
  return {shape && cheaper && crowded && !v.ok, d.str()};
}

// 5. Empathetic cost never above the actor's own best.
Verdict assistive_dominance_check() {
  std::size_t violations = 0;
  std::ostringstream d;
  d << "fixtures:";
  for (const char* stem : kFixtures) {
    const auto r = assistive_dominance(load_fixture(stem).emp(), load_actor(stem));
    if (!r.selectively_task_empathetic) {
      d << " " << stem << " skipped (check false)";
      continue;
    }
    if (!r.dominates) {
      ++violations;
      d << " " << stem << " VIOLATION (emp " << *r.empathetic_cost << " > actor " << *r.actor_cost << ")";
    } else {
      d << " " << stem << " ok";
    }
  }
  auto random_run = [](bool false_beliefs, std::size_t& bad) {
    std::mt19937_64 rng(false_beliefs ? 97 : 89);
    std::size_t checked = 0;
    for (int attempts = 0; checked < 100 && attempts < 5000; ++attempts) {
      const LiftedDomain dom = random_lifted(rng, false_beliefs);
      try {
        const auto r = assistive_dominance(dom.problem, dom.truth);
        if (!r.selectively_task_empathetic || !r.actor_cost) continue;
        ++checked;
        if (!r.dominates) ++bad;
      } catch (const NoSolution&) {
      }
    }
    return checked;
  };
  std::size_t random_bad = 0;
  const std::size_t random_checked = random_run(false, random_bad);
  violations += random_bad;
  std::size_t wide_bad = 0;
  const std::size_t wide_checked = random_run(true, wide_bad);
  d << "; random domains without false beliefs: " << random_bad << " violations in " << random_checked
    << "; with false beliefs (not gating): " << wide_bad << " violations in " << wide_checked;
  return {violations == 0 && random_checked == 100, d.str()};
}

// 6. Faithful and single-belief-perturbed actor models.
Verdict selective_empathy() {
  bool ok = true;
  std::ostringstream d;
  for (const char* stem : kFixtures) {
    const bool faithful = check_selective_task_empathy(load_fixture(stem).emp(), load_actor(stem))
                              .selectively_task_empathetic;
    ok = ok && faithful;
    d << stem << (faithful ? " true; " : " FALSE; ");
  }
  EmpProblem z = load_fixture("bus").emp();
  z.mep.init = z.mep.init.update(to_canonical(
      Formula::believes(Agent{"act"}, Formula::negation(Formula::atom("crowded_altbus"))), 2));
  const auto perturbed = check_selective_task_empathy(z, load_actor("bus"));
  ok = ok && !perturbed.selectively_task_empathetic && perturbed.witness.has_value();
  d << "perturbed bus " << (perturbed.selectively_task_empathetic ? "true" : "false");
  if (perturbed.witness) d << ", witness " << render(*perturbed.witness) << " (" << perturbed.witness_side << ")";
  return {ok, d.str()};
}

// 7. Likelihoods, posteriors and the wrong-bus ranking.
Verdict recognition() {
  const std::vector<double> betas{0.5, 1.0, 2.0, 4.0};
  std::size_t failures = 0;
  std::size_t posteriors = 0;
  std::size_t plans = 0;
  for (double beta : betas) {
    if (likelihood(0.0, beta) != 0.5) ++failures;
  }
  auto check = [&](const EmprProblem& r, Perspective perspective) {
    std::vector<GoalPosterior> by_beta;
    for (double beta : betas) {
      const GoalPosterior post = posterior(r, beta, perspective);
      ++posteriors;
      double sum = 0.0;
      for (const auto& g : post.goals) {
        sum += g.posterior;
        if (g.delta == 0.0 && g.likelihood != 0.5) ++failures;
      }
      if (std::abs(sum - 1.0) > 1e-9) ++failures;
      by_beta.push_back(post);
      const EmprSolution s = solve_empr(r, beta, perspective);
      ++plans;
      if (!satisfies(s.plan, r.observations, r.init, r.actions, r.sensing_outcomes).satisfied) ++failures;
    }
    // Odds ratios between goals with distinct finite deltas grow with beta.
    for (std::size_t i = 0; i < r.goals.size(); ++i) {
      for (std::size_t j = 0; j < r.goals.size(); ++j) {
        const double d1 = by_beta[0].goals[i].delta;
        const double d2 = by_beta[0].goals[j].delta;
        if (!(d1 < d2) || std::isinf(d1) || std::isinf(d2)) continue;
        double previous = 1.0;
        for (const auto& post : by_beta) {
          const double l1 = post.goals[i].likelihood;
          const double l2 = post.goals[j].likelihood;
          const double ratio = (l1 / (1 - l1)) / (l2 / (1 - l2));
          if (!(l1 > l2) || !(ratio > previous)) ++failures;
          previous = ratio;
        }
      }
    }
  };
  const EmprProblem wrong = load_fixture("wrong_bus").empr();
  check(wrong, Perspective::kActor);
  check(wrong, Perspective::kObserver);
  const auto ranked = posterior(wrong, 1.0, Perspective::kActor);
  const bool downtown_first = ranked.goals[0].name == "at_act_downtown" &&
                              ranked.goals[0].posterior > ranked.goals[1].posterior &&
                              solve_empr(wrong, 1.0, Perspective::kActor).goal_name == "at_act_downtown";

  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    const MepProblem base = random_mep(rng, 4);
    EmprProblem r;
    r.actions = base.actions;
    r.init = base.init;
    r.sensing_outcomes = base.sensing_outcomes;
    r.goals = {base.goal, random_mep(rng, 1).goal, random_mep(rng, 1).goal};
    for (const auto& [name, a] : base.actions.actions()) {
      if (!is_sensing(a)) {
        r.observations.push_back(Observation{name, {}});
        break;
      }
    }
    try {
      check(r, Perspective::kObserver);
    } catch (const RecognitionError&) {
    }
  }
  std::ostringstream d;
  d << posteriors << " posteriors, " << plans << " recognised plans, " << failures << " property failures; "
    << "wrong bus ranks " << ranked.goals[0].name << " " << fmt("%.4f", ranked.goals[0].posterior) << " vs "
    << ranked.goals[1].name << " " << fmt("%.4f", ranked.goals[1].posterior);
  return {failures == 0 && downtown_first, d.str()};
}

// 8. BFS against exhaustive enumeration, and thread-count independence.
Verdict planner_optimality() {
  std::size_t problems = 0;
  std::size_t mismatches = 0;
  for (const char* stem : kFixtures) {
    const auto f = load_fixture(stem);
    const auto truth = load_actor(stem);
    std::vector<MepProblem> ps;
    if (f.goal) {
      ps.push_back(f.mep());
      ps.push_back(projected_problem(f.emp()));
      ps.push_back(actor_problem(f.emp(), truth));
    }
    const auto r = f.empr();
    for (const auto& g : r.goals) ps.push_back(MepProblem{r.actions, r.init, g, r.sensing_outcomes});
    for (const auto& p : ps) {
      const auto expected = enumerate_min_cost(p, 6);
      SearchOptions one;
      one.all_optimal = true;
      SearchOptions four = one;
      four.threads = 4;
      std::optional<SearchResult> a;
      std::optional<SearchResult> b;
      try {
        a = solve_optimal(p, one);
        b = solve_optimal(p, four);
      } catch (const NoSolution&) {
      }
      ++problems;
      if (a.has_value() != expected.has_value() && !(a && a->cost() > 6)) ++mismatches;
      if (a && expected && a->cost() != *expected) ++mismatches;
      if (a.has_value() != b.has_value() || (a && a->plans != b->plans)) ++mismatches;
    }
  }
  std::mt19937_64 rng(11);
  std::size_t random = 0;
  for (int i = 0; i < 200; ++i) {
    const MepProblem p = random_mep(rng, 6);
    SearchOptions one;
    one.all_optimal = true;
    SearchOptions four = one;
    four.threads = 4;
    std::optional<SearchResult> a;
    std::optional<SearchResult> b;
    try {
      a = solve_optimal(p, one);
    } catch (const NoSolution&) {
    }
    try {
      b = solve_optimal(p, four);
    } catch (const NoSolution&) {
    }
    ++random;
    if (a.has_value() != b.has_value() || (a && (a->plans != b->plans || a->generated != b->generated))) ++mismatches;
    const auto expected = enumerate_min_cost(p, 4);
    if (a && a->cost() <= 4 && (!expected || *expected != a->cost())) ++mismatches;
    if (expected && (!a || a->cost() != *expected)) ++mismatches;
  }
  std::ostringstream d;
  d << problems << " fixture problems and " << random << " random problems, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

// 9. Round-trip of every fixture and a million-input parser fuzz run.
Verdict format_robustness() {
  std::size_t roundtrip_failures = 0;
  std::vector<std::string> seeds;
  for (const char* stem : kFixtures) {
    for (const std::string& file : {std::string(stem) + ".eplan", std::string(stem) + ".actor.eplan"}) {
      const std::string text = read_text(fixture_path(file));
      seeds.push_back(text);
      const ProblemFile x = parse_problem(text);
      const std::string once = serialize_problem(x);
      if (!(parse_problem(once) == x) || serialize_problem(parse_problem(once)) != once) ++roundtrip_failures;
    }
  }
  std::mt19937_64 rng(13);
  const std::string alphabet = "() \n;:abpq_-BnotandwhenX0123456789.\"\t";
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> mode(0, 3);
  std::size_t parsed = 0;
  std::size_t rejected = 0;
  std::size_t crashes = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    std::string input;
    switch (mode(rng)) {
      case 0:
        for (int n = std::uniform_int_distribution<int>(0, 96)(rng); n > 0; --n) input += static_cast<char>(byte(rng));
        break;
      case 1:
        for (int n = std::uniform_int_distribution<int>(0, 96)(rng); n > 0; --n) input += alphabet[pick(rng)];
        break;
      default: {
        input = seeds[static_cast<std::size_t>(i) % seeds.size()];
        for (int n = std::uniform_int_distribution<int>(1, 6)(rng); n > 0; --n) {
          const std::size_t at = std::uniform_int_distribution<std::size_t>(0, input.size() - 1)(rng);
          switch (mode(rng)) {
            case 0:
              input.erase(at, 1);
              break;
            case 1:
              input.insert(at, 1, alphabet[pick(rng)]);
              break;
            default:
              input[at] = static_cast<char>(byte(rng));
          }
        }
      }
    }
    try {
      lint(parse_problem(input));
      ++parsed;
    } catch (const ParseError& e) {
      ++rejected;
      if (e.span().begin > e.span().end || e.span().end > input.size()) ++crashes;
    } catch (...) {
      ++crashes;
    }
  }
  std::ostringstream d;
  d << seeds.size() << " fixtures round-trip with " << roundtrip_failures << " failures; fuzz 1000000 inputs: "
    << parsed << " parsed, " << rejected << " ParseError, " << crashes << " other outcomes";
  return {roundtrip_failures == 0 && crashes == 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "KD45 oracle agreement", 300, oracle_agreement},
      {2, "axiom suite and frame validation", 60, axiom_suite},
      {3, "progression laws", 60, progression_laws},
      {4, "bus scenario reproduction", 10, bus_scenario},
      {5, "assistive dominance", 300, assistive_dominance_check},
      {6, "selective task-empathy check", 30, selective_empathy},
      {7, "recognition", 60, recognition},
      {8, "planner optimality and determinism", 120, planner_optimality},
      {9, "format robustness", 0, format_robustness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || seconds <= c.limit_seconds;
    const bool pass = v.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " | " << v.detail << " | "
              << fmt("%.2f", seconds) << " s"
              << (c.limit_seconds > 0 ? " (limit " + fmt("%.0f", c.limit_seconds) + " s)" : "")
              << (in_time ? "" : " TIME LIMIT EXCEEDED") << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
