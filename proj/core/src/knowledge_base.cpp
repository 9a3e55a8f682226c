#include "empath/knowledge_base.hpp"

#include <algorithm>
#include <set>

#include "empath/errors.hpp"

namespace empath {

KnowledgeBase KnowledgeBase::from_formulas(const std::vector<Formula>& facts,
                                           std::size_t depth_bound) {
  KnowledgeBase kb(depth_bound);
  for (const auto& f : facts) {
    for (const auto& r : to_canonical(f, depth_bound)) kb = kb.tell(r);
  }
  return kb;
}

KnowledgeBase KnowledgeBase::from_conjunction(const Conjunction& facts, std::size_t depth_bound) {
  KnowledgeBase kb(depth_bound);
  for (const auto& r : facts) kb = kb.tell(r);
  return kb;
}

bool KnowledgeBase::contains(const CanonicalRML& r) const {
  const std::string k = empath::render(r);
  return std::binary_search(keys_.begin(), keys_.end(), k);
}

void KnowledgeBase::check_depth(const CanonicalRML& r) const {
  if (r.depth() > depth_bound_) {
    throw FragmentError(FragmentError::Kind::kDepthExceeded, empath::render(r),
                        "fact " + empath::render(r) + " has modal depth " +
                            std::to_string(r.depth()) + " > bound " +
                            std::to_string(depth_bound_));
  }
}

void KnowledgeBase::insert(const CanonicalRML& r) {
  std::string k = empath::render(r);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it != keys_.end() && *it == k) return;
  const auto pos = it - keys_.begin();
  keys_.insert(it, std::move(k));
  facts_.insert(facts_.begin() + pos, r);
}

void KnowledgeBase::erase_conflicts(const CanonicalRML& r) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    if (conflict(facts_[i], r)) continue;
    if (out != i) {
      facts_[out] = std::move(facts_[i]);
      keys_[out] = std::move(keys_[i]);
    }
    ++out;
  }
  facts_.resize(out);
  keys_.resize(out);
}

KnowledgeBase KnowledgeBase::tell(const CanonicalRML& r) const {
  check_depth(r);
  for (const auto& existing : facts_) {
    if (conflict(existing, r)) {
      const std::string e = empath::render(existing);
      throw InconsistencyError(e, "cannot add " + empath::render(r) + ": conflicts with " + e);
    }
  }
  KnowledgeBase out = *this;
  out.insert(r);
  return out;
}

bool KnowledgeBase::entails(const CanonicalRML& r) const {
  return std::any_of(facts_.begin(), facts_.end(),
                     [&](const CanonicalRML& f) { return rml_entails(f, r); });
}

bool KnowledgeBase::entails(const Conjunction& c) const {
  return std::all_of(c.begin(), c.end(), [&](const CanonicalRML& r) { return entails(r); });
}

bool KnowledgeBase::entails(const Formula& f) const {
  return entails(to_canonical(f, std::max(depth_bound_, modal_depth(f))));
}

std::vector<CanonicalRML> KnowledgeBase::closure(std::size_t d, std::size_t max_size) const {
  std::set<CanonicalRML> out;
  for (const auto& fact : facts_) {
    if (fact.depth() > d) continue;
    const ModalPath path = to_modal_path(fact);
    std::vector<std::size_t> boxes;
    for (std::size_t k = 0; k < path.ops.size(); ++k) {
      if (path.ops[k].box) boxes.push_back(k);
    }
    if (boxes.size() >= 20) throw BudgetExceeded("closure of a single fact is too large");
    for (std::size_t mask = 0; mask < (std::size_t{1} << boxes.size()); ++mask) {
      ModalPath weak = path;
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        if ((mask >> b) & 1u) weak.ops[boxes[b]].box = false;
      }
      out.insert(from_modal_path(weak));
      if (out.size() > max_size) {
        throw BudgetExceeded("closure exceeds " + std::to_string(max_size) + " facts");
      }
    }
  }
  std::vector<CanonicalRML> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end(), [](const CanonicalRML& a, const CanonicalRML& b) {
    return empath::render(a) < empath::render(b);
  });
  return sorted;
}

KnowledgeBase KnowledgeBase::update(const Conjunction& effect) const {
  KnowledgeBase out = *this;
  for (const auto& e : effect) {
    check_depth(e);
    out.erase_conflicts(e);
    out.insert(e);
  }
  return out;
}

KnowledgeBase KnowledgeBase::update(const Formula& effect) const {
  return update(to_canonical(effect, depth_bound_));
}

KnowledgeBase KnowledgeBase::revise(const Conjunction& result) const { return update(result); }

KnowledgeBase KnowledgeBase::revise(const Formula& result) const {
  return revise(to_canonical(result, depth_bound_));
}

std::string KnowledgeBase::key() const {
  std::string out;
  for (const auto& k : keys_) {
    out += k;
    out += '\n';
  }
  return out;
}

std::string KnowledgeBase::render() const {
  std::string out = "{";
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (i) out += ", ";
    out += keys_[i];
  }
  out += '}';
  return out;
}

}  // namespace empath
