#pragma once

// Explicit finite Kripke models with KD45 frame checks, model checking and
// bounded brute-force entailment. This is the semantic ground truth the
// syntactic reasoning in logic.hpp and knowledge_base.hpp is tested against.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "empath/logic.hpp"

namespace empath {

using WorldSet = std::uint64_t;

class KripkeModel {
 public:
  static constexpr std::size_t kMaxWorlds = 64;

  KripkeModel(std::vector<Agent> agents, std::vector<Atom> atoms, std::size_t worlds);

  std::size_t world_count() const { return worlds_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  void add_edge(const Agent& agent, std::size_t from, std::size_t to);
  void set_successors(std::size_t agent_index, std::size_t from, WorldSet to);
  WorldSet successors(std::size_t agent_index, std::size_t from) const {
    return relations_[agent_index][from];
  }
  bool has_edge(std::size_t agent_index, std::size_t from, std::size_t to) const {
    return (successors(agent_index, from) >> to) & 1u;
  }

  void set_true(std::size_t world, const Atom& atom);
  void set_valuation(std::size_t world, std::uint64_t atom_mask) { valuation_[world] = atom_mask; }
  std::uint64_t valuation(std::size_t world) const { return valuation_[world]; }

  // -1 when unknown.
  int agent_index(const Agent& agent) const;
  int atom_index(const Atom& atom) const;

  WorldSet all_worlds() const {
    return worlds_ == 64 ? ~WorldSet{0} : (WorldSet{1} << worlds_) - 1;
  }

  bool operator==(const KripkeModel&) const = default;

 private:
  std::vector<Agent> agents_;
  std::vector<Atom> atoms_;
  std::size_t worlds_;
  std::vector<std::vector<WorldSet>> relations_;
  std::vector<std::uint64_t> valuation_;
};

struct PointedModel {
  KripkeModel model;
  std::size_t point = 0;
};

struct FrameViolation {
  enum class Property { kSerial, kTransitive, kEuclidean };

  Agent agent;
  Property property;
  // One world for seriality, otherwise the world triple that breaks it.
  std::vector<std::size_t> witness;

  std::string message() const;
};

const char* to_string(FrameViolation::Property p);

// Checks seriality, transitivity and Euclideanness for each agent in order.
std::optional<FrameViolation> validate_frame(const KripkeModel& m);

// Set of worlds where f holds. Throws UnknownAtom for symbols outside the
// model's vocabulary.
WorldSet truth_set(const KripkeModel& m, const Formula& f);

bool model_check(const KripkeModel& m, std::size_t world, const Formula& f);

struct Vocabulary {
  std::vector<Atom> atoms;
  std::vector<Agent> agents;
};

struct OracleOptions {
  std::size_t max_worlds = 4;
  // Cap on the number of models visited.
  std::uint64_t max_models = 50'000'000;
};

// Every KD45 relation over n worlds, as a successor set per world. Ordered
// lexicographically by rows, each row compared as an integer bitmap.
const std::vector<std::vector<WorldSet>>& kd45_relations(std::size_t n);

// Number of validated models with 1..max_worlds worlds.
std::uint64_t count_models(const Vocabulary& vocab, const OracleOptions& opts);

// Visits every validated model (world count first, then relation bitmaps,
// then valuations). The visitor returns false to stop early. Throws
// BudgetExceeded before visiting anything if the space exceeds the cap.
void for_each_model(const Vocabulary& vocab, const OracleOptions& opts,
                    const std::function<bool(const KripkeModel&)>& visit);

std::optional<PointedModel> find_model(const std::vector<Formula>& gamma, const Vocabulary& vocab,
                                       const OracleOptions& opts);

bool oracle_satisfiable(const std::vector<Formula>& gamma, const Vocabulary& vocab,
                        const OracleOptions& opts = {});

// Pointed model satisfying gamma and not phi, if one exists within bounds.
std::optional<PointedModel> find_countermodel(const std::vector<Formula>& gamma,
                                              const Formula& phi, const Vocabulary& vocab,
                                              const OracleOptions& opts = {});

bool oracle_entails(const std::vector<Formula>& gamma, const Formula& phi,
                    const Vocabulary& vocab, const OracleOptions& opts = {});

// Summary of one exhaustive enumeration for a fixed formula list: the set of
// distinct truth profiles realised by some pointed model. A set of listed
// formulas is satisfiable within the bound iff some profile contains it.
class ProfileIndex {
 public:
  ProfileIndex(std::vector<Formula> formulas, const Vocabulary& vocab, const OracleOptions& opts);

  std::size_t formula_count() const { return formulas_.size(); }
  std::size_t profile_count() const { return profiles_.size(); }
  std::uint64_t models_visited() const { return models_visited_; }

  // Bit k of a profile word set means formula k holds at the point.
  const std::vector<std::vector<std::uint64_t>>& profiles() const { return profiles_; }

  bool satisfiable(const std::vector<std::size_t>& indices) const;
  // Witness for the first profile containing all indices.
  std::optional<PointedModel> witness(const std::vector<std::size_t>& indices) const;

 private:
  using Profile = std::vector<std::uint64_t>;

  std::vector<Formula> formulas_;
  std::vector<Profile> profiles_;
  std::vector<PointedModel> witnesses_;
  std::uint64_t models_visited_ = 0;
};

// JSON dump: {"worlds": n, "point": w, "agents": [...], "atoms": [...],
// "relations": {agent: [[from, to], ...]}, "valuation": [[atom, ...], ...]}.
std::string to_json(const PointedModel& pm);
PointedModel pointed_model_from_json(const std::string& text);

}  // namespace empath
