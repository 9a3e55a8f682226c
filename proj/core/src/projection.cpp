#include "empath/projection.hpp"

#include <algorithm>

#include "empath/errors.hpp"

namespace empath {

std::optional<CanonicalRML> proj_formula(const CanonicalRML& r, const Agent& agent) {
  if (r.prefix.empty()) return std::nullopt;
  const ModalStep& first = r.prefix.front();
  if (first.agent != agent || first.sign != Sign::kPositive) return std::nullopt;
  return CanonicalRML{{r.prefix.begin() + 1, r.prefix.end()}, r.body};
}

Conjunction proj_conjunction(const Conjunction& c, const Agent& agent) {
  Conjunction out;
  for (const auto& r : c) {
    if (auto p = proj_formula(r, agent)) {
      if (std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
    }
  }
  return out;
}

KnowledgeBase proj_kb(const KnowledgeBase& kb, const Agent& agent, std::size_t d) {
  Conjunction projected;
  for (const auto& r : kb.closure(d)) {
    if (auto p = proj_formula(r, agent)) projected.push_back(*p);
  }
  // Weakenings that made it through are implied by their projected source.
  KnowledgeBase out(kb.depth_bound());
  for (const auto& p : projected) {
    const bool redundant = std::any_of(projected.begin(), projected.end(), [&](const auto& q) {
      return q != p && rml_entails(q, p);
    });
    if (!redundant) {
      try {
        out = out.tell(p);
      } catch (const InconsistencyError& e) {
        throw Error(std::string("projection exposed a conflict in a consistent KB: ") + e.what());
      }
    }
  }
  return out;
}

ActionLibrary proj_actions(const ActionLibrary& lib, const Agent& agent) {
  ActionLibrary out(lib.agents());
  for (const auto& [name, action] : lib.actions()) {
    if (owner_of(action) != agent) continue;
    if (const auto* det = std::get_if<DeterministicAction>(&action)) {
      DeterministicAction p{det->name, det->owner, proj_conjunction(det->pre, agent), {}};
      for (const auto& ce : det->effects) {
        ConditionalEffect pe{proj_conjunction(ce.condition, agent),
                             proj_conjunction(ce.effect, agent)};
        if (!pe.effect.empty()) p.effects.push_back(std::move(pe));
      }
      out.add(std::move(p));
    } else {
      const auto& s = std::get<SensingAction>(action);
      out.add(SensingAction{s.name, s.owner, proj_conjunction(s.pre, agent),
                            proj_conjunction(s.pos, agent), proj_conjunction(s.neg, agent)});
    }
  }
  return out;
}

ProjectedDomain project(const ActionLibrary& lib, const KnowledgeBase& kb, const Agent& agent) {
  return ProjectedDomain{proj_actions(lib, agent), proj_kb(kb, agent, kb.depth_bound()), agent};
}

}  // namespace empath
