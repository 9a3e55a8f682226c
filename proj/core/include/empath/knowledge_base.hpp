#pragma once

// The observer's belief state: a pairwise conflict-free set of canonical
// RMLs. Facts are stored from the observer's root perspective, so a bare
// literal is something the observer believes about the world and
// (B act p) is the observer's belief about the actor's belief.

#include <string>
#include <vector>

#include "empath/logic.hpp"

namespace empath {

class KnowledgeBase {
 public:
  static constexpr std::size_t kDefaultDepth = 2;

  explicit KnowledgeBase(std::size_t depth_bound = kDefaultDepth) : depth_bound_(depth_bound) {}

  // Tells every conjunct of every formula in order.
  static KnowledgeBase from_formulas(const std::vector<Formula>& facts,
                                     std::size_t depth_bound = kDefaultDepth);
  static KnowledgeBase from_conjunction(const Conjunction& facts,
                                        std::size_t depth_bound = kDefaultDepth);

  std::size_t depth_bound() const { return depth_bound_; }
  // Sorted by rendering.
  const std::vector<CanonicalRML>& facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  bool contains(const CanonicalRML& r) const;

  // Adds r. Throws InconsistencyError naming the first conflicting member,
  // or FragmentError when r is deeper than the bound.
  KnowledgeBase tell(const CanonicalRML& r) const;

  bool entails(const CanonicalRML& r) const;
  bool entails(const Conjunction& c) const;
  bool entails(const Formula& f) const;

  // Every RML of depth <= d entailed by some member: all weakenings of
  // belief steps to possibility steps. Throws BudgetExceeded past max_size.
  std::vector<CanonicalRML> closure(std::size_t d, std::size_t max_size = 1'000'000) const;

  // For each conjunct in order: drop conflicting members, then insert.
  KnowledgeBase update(const Conjunction& effect) const;
  KnowledgeBase update(const Formula& effect) const;
  // Same mechanics as update; kept separate so callers can label it.
  KnowledgeBase revise(const Conjunction& result) const;
  KnowledgeBase revise(const Formula& result) const;

  // One rendered fact per entry, sorted. Used as the search state key.
  std::string key() const;
  // Braced, comma separated rendering: {p, (B act q)}.
  std::string render() const;

  bool operator==(const KnowledgeBase& other) const { return keys_ == other.keys_; }
  bool operator!=(const KnowledgeBase& other) const { return !(*this == other); }

 private:
  void insert(const CanonicalRML& r);
  void erase_conflicts(const CanonicalRML& r);
  void check_depth(const CanonicalRML& r) const;

  std::size_t depth_bound_;
  std::vector<CanonicalRML> facts_;
  std::vector<std::string> keys_;
};

}  // namespace empath
