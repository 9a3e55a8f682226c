#pragma once

// Perspective taking: strip one leading belief step of a given agent from
// the observer's KB and action library, yielding the agent's own view.

#include <optional>

#include "empath/action.hpp"
#include "empath/knowledge_base.hpp"

namespace empath {

// Strips a leading (agent,+) step; nullopt for anything else.
std::optional<CanonicalRML> proj_formula(const CanonicalRML& r, const Agent& agent);

// Projects each conjunct, dropping the ones that do not project.
Conjunction proj_conjunction(const Conjunction& c, const Agent& agent);

// Projects the depth-d closure of kb.
KnowledgeBase proj_kb(const KnowledgeBase& kb, const Agent& agent, std::size_t d);

// Keeps the agent's own actions with every formula projected. Conditional
// effects left with no effect conjunct are removed.
ActionLibrary proj_actions(const ActionLibrary& lib, const Agent& agent);

struct ProjectedDomain {
  ActionLibrary actions;
  KnowledgeBase init;
  Agent agent;
};

ProjectedDomain project(const ActionLibrary& lib, const KnowledgeBase& kb, const Agent& agent);

}  // namespace empath
