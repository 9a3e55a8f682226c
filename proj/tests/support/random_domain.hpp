#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "empath/empathy.hpp"
#include "empath/errors.hpp"
#include "generators.hpp"

namespace empath::testing {

inline Conjunction random_conjunction(const std::vector<CanonicalRML>& pool, std::mt19937_64& rng,
                                      std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> n(lo, hi);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  Conjunction out;
  for (std::size_t i = n(rng); i > 0; --i) out.push_back(pool[pick(rng)]);
  return out;
}

inline bool coherent(const Conjunction& c) {
  for (const auto& a : c) {
    for (const auto& b : c) {
      if (conflict(a, b)) return false;
    }
  }
  return true;
}

// Small MEP problem over 3 atoms, 2 agents and depth <= 1 formulas; one
// action in four is a sensing action with a fixed outcome.
inline MepProblem random_mep(std::mt19937_64& rng, std::size_t actions = 5) {
  const auto pool = all_rmls(small_vocab(3, 2), 1);
  std::uniform_int_distribution<int> coin(0, 3);
  MepProblem p;
  p.actions = ActionLibrary({Agent{"act"}, Agent{"obs"}});
  for (std::size_t i = 0; i < actions; ++i) {
    const std::string name = "a" + std::to_string(i);
    const Agent owner{coin(rng) % 2 ? "act" : "obs"};
    if (coin(rng) == 0) {
      p.actions.add(SensingAction{name, owner, random_conjunction(pool, rng, 0, 1),
                                  random_conjunction(pool, rng, 1, 1),
                                  random_conjunction(pool, rng, 1, 1)});
      p.sensing_outcomes[name] = coin(rng) % 2 ? Outcome::kPositive : Outcome::kNegative;
    } else {
      std::vector<ConditionalEffect> effects;
      for (int k = coin(rng) % 2 + 1; k > 0; --k) {
        effects.push_back({random_conjunction(pool, rng, 0, coin(rng) == 0 ? 1 : 0),
                           random_conjunction(pool, rng, 1, 2)});
      }
      p.actions.add(DeterministicAction{name, owner, random_conjunction(pool, rng, 0, 2),
                                        std::move(effects)});
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 3; ++i) {
    try {
      p.init = p.init.tell(pool[pick(rng)]);
    } catch (const InconsistencyError&) {
    }
  }
  do {
    p.goal = random_conjunction(pool, rng, 1, 2);
  } while (!coherent(p.goal));
  return p;
}

struct LiftedDomain {
  EmpProblem problem;
  ActorGroundTruth truth;
};

// The observer models an actor who may be ignorant of some atoms and, when
// false_beliefs is set, wrong about some of them. Actor actions act on the
// world and on the actor's beliefs alike; observer actions either tell the
// actor a true literal or change the world in the actor's sight.
inline LiftedDomain random_lifted(std::mt19937_64& rng, bool false_beliefs = false) {
  const Agent act{"act"};
  const Agent obs{"obs"};
  const std::vector<std::string> atoms{"p", "q", "r", "s"};
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> third(0, 2);
  std::uniform_int_distribution<std::size_t> atom(0, atoms.size() - 1);
  auto literal = [&](bool positive, std::size_t a) { return CanonicalRML{{}, Literal{Atom{atoms[a]}, positive}}; };
  auto believed = [&](const CanonicalRML& r) { return prepend(ModalStep{act, Sign::kPositive}, r); };
  auto random_literals = [&](std::size_t lo, std::size_t hi) {
    Conjunction out;
    for (std::size_t n = std::uniform_int_distribution<std::size_t>(lo, hi)(rng); n > 0; --n) {
      const std::size_t a = atom(rng);
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const CanonicalRML& r) { return r.body.atom.name == atoms[a]; });
      if (!dup) out.push_back(literal(coin(rng), a));
    }
    return out;
  };
  auto lift_all = [&](const Conjunction& c) {
    Conjunction out;
    for (const auto& r : c) out.push_back(believed(r));
    return out;
  };
  auto both_levels = [&](const Conjunction& c) {
    Conjunction out = c;
    for (const auto& r : c) out.push_back(believed(r));
    return out;
  };

  std::vector<bool> world(atoms.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) world[a] = coin(rng);

  LiftedDomain d;
  d.problem.actor = act;
  MepProblem& mep = d.problem.mep;
  mep.actions = ActionLibrary({obs, act});
  d.truth.actions = ActionLibrary({obs, act});
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    mep.init = mep.init.tell(literal(world[a], a));
    if (third(rng) != 0) {
      const bool belief = false_beliefs && third(rng) == 0 ? !world[a] : world[a];
      mep.init = mep.init.tell(believed(literal(belief, a)));
      d.truth.init = d.truth.init.tell(literal(belief, a));
    }
  }
  for (int i = 0; i < 4; ++i) {
    const std::string name = "act" + std::to_string(i);
    const Conjunction pre = random_literals(0, 2);
    const Conjunction effect = random_literals(1, 2);
    Conjunction condition;
    if (third(rng) == 0) condition = random_literals(1, 1);
    mep.actions.add(DeterministicAction{name, act, lift_all(pre), {{lift_all(condition), both_levels(effect)}}});
    d.truth.actions.add(DeterministicAction{name, act, pre, {{condition, effect}}});
  }
  for (int i = 0; i < 2; ++i) {
    const std::string name = "obs" + std::to_string(i);
    if (coin(rng)) {
      const std::size_t a = atom(rng);
      mep.actions.add(DeterministicAction{name, obs, {literal(world[a], a)},
                                          {{{}, {believed(literal(world[a], a))}}}});
      d.truth.actions.add(DeterministicAction{name, obs, {}, {{{}, {literal(world[a], a)}}}});
    } else {
      const Conjunction effect = random_literals(1, 1);
      mep.actions.add(DeterministicAction{name, obs, {}, {{{}, both_levels(effect)}}});
      d.truth.actions.add(DeterministicAction{name, obs, {}, {{{}, effect}}});
    }
  }
  mep.goal = random_literals(1, 2);
  return d;
}

}  // namespace empath::testing
