#include "empath/kripke.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "empath/errors.hpp"

namespace empath {

KripkeModel::KripkeModel(std::vector<Agent> agents, std::vector<Atom> atoms, std::size_t worlds)
    : agents_(std::move(agents)),
      atoms_(std::move(atoms)),
      worlds_(worlds),
      relations_(agents_.size(), std::vector<WorldSet>(worlds, 0)),
      valuation_(worlds, 0) {
  if (worlds == 0 || worlds > kMaxWorlds) {
    throw Error("kripke model needs between 1 and 64 worlds, got " + std::to_string(worlds));
  }
  if (atoms_.size() > 64) throw Error("kripke model supports at most 64 atoms");
}

int KripkeModel::agent_index(const Agent& agent) const {
  auto it = std::find(agents_.begin(), agents_.end(), agent);
  return it == agents_.end() ? -1 : static_cast<int>(it - agents_.begin());
}

int KripkeModel::atom_index(const Atom& atom) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  return it == atoms_.end() ? -1 : static_cast<int>(it - atoms_.begin());
}

void KripkeModel::add_edge(const Agent& agent, std::size_t from, std::size_t to) {
  const int i = agent_index(agent);
  if (i < 0) throw UnknownAtom("unknown agent '" + agent.name + "'");
  if (from >= worlds_ || to >= worlds_) throw Error("edge endpoint out of range");
  relations_[i][from] |= WorldSet{1} << to;
}

void KripkeModel::set_successors(std::size_t agent_index, std::size_t from, WorldSet to) {
  relations_.at(agent_index).at(from) = to & all_worlds();
}

void KripkeModel::set_true(std::size_t world, const Atom& atom) {
  const int i = atom_index(atom);
  if (i < 0) throw UnknownAtom("unknown atom '" + atom.name + "'");
  valuation_.at(world) |= std::uint64_t{1} << i;
}

const char* to_string(FrameViolation::Property p) {
  switch (p) {
    case FrameViolation::Property::kSerial:
      return "serial";
    case FrameViolation::Property::kTransitive:
      return "transitive";
    case FrameViolation::Property::kEuclidean:
      return "euclidean";
  }
  return "unknown";
}

std::string FrameViolation::message() const {
  std::ostringstream os;
  os << "relation of agent '" << agent.name << "' is not " << to_string(property) << " (witness";
  for (auto w : witness) os << " w" << w;
  os << ')';
  return os.str();
}

namespace {

bool has(WorldSet s, std::size_t w) { return (s >> w) & 1u; }

}  // namespace

std::optional<FrameViolation> validate_frame(const KripkeModel& m) {
  const std::size_t n = m.world_count();
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    const Agent& agent = m.agents()[a];
    for (std::size_t w = 0; w < n; ++w) {
      if (m.successors(a, w) == 0) {
        return FrameViolation{agent, FrameViolation::Property::kSerial, {w}};
      }
    }
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!m.has_edge(a, w, v)) continue;
        for (std::size_t u = 0; u < n; ++u) {
          if (m.has_edge(a, v, u) && !m.has_edge(a, w, u)) {
            return FrameViolation{agent, FrameViolation::Property::kTransitive, {w, v, u}};
          }
        }
      }
    }
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!m.has_edge(a, w, v)) continue;
        for (std::size_t u = 0; u < n; ++u) {
          if (m.has_edge(a, w, u) && !m.has_edge(a, v, u)) {
            return FrameViolation{agent, FrameViolation::Property::kEuclidean, {w, v, u}};
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Formula flattened against one vocabulary so that evaluation over many
// models avoids name lookups.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::vector<Agent>& agents,
                  const std::vector<Atom>& atoms) {
    root_ = add(f, agents, atoms);
  }

  WorldSet eval(const KripkeModel& m, std::vector<WorldSet>& scratch) const {
    scratch.resize(nodes_.size());
    const WorldSet all = m.all_worlds();
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const Node& node = nodes_[k];
      WorldSet out = 0;
      switch (node.kind) {
        case Formula::Kind::kAtom:
          for (std::size_t w = 0; w < m.world_count(); ++w) {
            if ((m.valuation(w) >> node.index) & 1u) out |= WorldSet{1} << w;
          }
          break;
        case Formula::Kind::kNot:
          out = all & ~scratch[node.children.front()];
          break;
        case Formula::Kind::kAnd:
          out = all;
          for (auto c : node.children) out &= scratch[c];
          break;
        case Formula::Kind::kBelieves: {
          const WorldSet inner = scratch[node.children.front()];
          for (std::size_t w = 0; w < m.world_count(); ++w) {
            if ((m.successors(node.index, w) & ~inner) == 0) out |= WorldSet{1} << w;
          }
          break;
        }
      }
      scratch[k] = out;
    }
    return scratch[root_];
  }

 private:
  struct Node {
    Formula::Kind kind;
    std::size_t index = 0;
    std::vector<std::size_t> children;
  };

  std::size_t add(const Formula& f, const std::vector<Agent>& agents,
                  const std::vector<Atom>& atoms) {
    Node node{f.kind(), 0, {}};
    switch (f.kind()) {
      case Formula::Kind::kAtom: {
        auto it = std::find(atoms.begin(), atoms.end(), f.atom_name());
        if (it == atoms.end()) throw UnknownAtom("unknown atom '" + f.atom_name().name + "'");
        node.index = static_cast<std::size_t>(it - atoms.begin());
        break;
      }
      case Formula::Kind::kBelieves: {
        auto it = std::find(agents.begin(), agents.end(), f.agent());
        if (it == agents.end()) throw UnknownAtom("unknown agent '" + f.agent().name + "'");
        node.index = static_cast<std::size_t>(it - agents.begin());
        node.children.push_back(add(f.operand(), agents, atoms));
        break;
      }
      case Formula::Kind::kNot:
      case Formula::Kind::kAnd:
        for (const auto& c : f.children()) node.children.push_back(add(c, agents, atoms));
        break;
    }
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

std::vector<CompiledFormula> compile_all(const std::vector<Formula>& fs,
                                         const std::vector<Agent>& agents,
                                         const std::vector<Atom>& atoms) {
  std::vector<CompiledFormula> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.emplace_back(f, agents, atoms);
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow2(std::size_t e) {
  return e >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << e;
}

// Rows are chosen in world order, each row in increasing bitmap order, so
// the output is already sorted. A serial relation is transitive and
// Euclidean iff every successor of w has exactly the successors of w.
void extend_relation(std::size_t n, std::vector<WorldSet>& rows, std::size_t w,
                     std::vector<std::vector<WorldSet>>& out) {
  if (w == n) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t v = 0; v < n; ++v) {
        if (has(rows[x], v) && rows[v] != rows[x]) return;
      }
    }
    out.push_back(rows);
    return;
  }
  const WorldSet limit = WorldSet{1} << n;
  for (WorldSet row = 1; row < limit; ++row) {
    bool ok = true;
    // Earlier rows that point at w fix this row.
    for (std::size_t x = 0; x < w && ok; ++x) {
      if (has(rows[x], w) && rows[x] != row) ok = false;
    }
    // Earlier successors must share this row.
    for (std::size_t v = 0; v < w && ok; ++v) {
      if (has(row, v) && rows[v] != row) ok = false;
    }
    if (!ok) continue;
    rows[w] = row;
    extend_relation(n, rows, w + 1, out);
  }
  rows[w] = 0;
}

}  // namespace

WorldSet truth_set(const KripkeModel& m, const Formula& f) {
  CompiledFormula c(f, m.agents(), m.atoms());
  std::vector<WorldSet> scratch;
  return c.eval(m, scratch);
}

bool model_check(const KripkeModel& m, std::size_t world, const Formula& f) {
  if (world >= m.world_count()) throw Error("world index out of range");
  return has(truth_set(m, f), world);
}

const std::vector<std::vector<WorldSet>>& kd45_relations(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<std::vector<WorldSet>>> cache;
  if (n == 0 || n > 8) throw Error("kd45_relations supports 1..8 worlds");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<std::vector<WorldSet>> out;
    std::vector<WorldSet> rows(n, 0);
    extend_relation(n, rows, 0, out);
    it = cache.emplace(n, std::move(out)).first;
  }
  return it->second;
}

std::uint64_t count_models(const Vocabulary& vocab, const OracleOptions& opts) {
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= opts.max_worlds; ++n) {
    std::uint64_t count = saturating_pow2(vocab.atoms.size() * n);
    const std::uint64_t rels = kd45_relations(n).size();
    for (std::size_t a = 0; a < vocab.agents.size(); ++a) count = saturating_mul(count, rels);
    total = total > std::numeric_limits<std::uint64_t>::max() - count
                ? std::numeric_limits<std::uint64_t>::max()
                : total + count;
  }
  return total;
}

void for_each_model(const Vocabulary& vocab, const OracleOptions& opts,
                    const std::function<bool(const KripkeModel&)>& visit) {
  if (opts.max_worlds == 0) throw Error("max_worlds must be at least 1");
  const std::uint64_t total = count_models(vocab, opts);
  if (total > opts.max_models) {
    throw BudgetExceeded("oracle enumeration needs " + std::to_string(total) +
                         " models, cap is " + std::to_string(opts.max_models));
  }
  const std::size_t k = vocab.agents.size();
  const std::size_t a = vocab.atoms.size();
  for (std::size_t n = 1; n <= opts.max_worlds; ++n) {
    const auto& rels = kd45_relations(n);
    KripkeModel m(vocab.agents, vocab.atoms, n);
    std::vector<std::size_t> pick(k, 0);
    const std::uint64_t valuations = std::uint64_t{1} << (a * n);
    const std::uint64_t atom_mask = (std::uint64_t{1} << a) - 1;
    while (true) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t w = 0; w < n; ++w) m.set_successors(i, w, rels[pick[i]][w]);
      }
      for (std::uint64_t v = 0; v < valuations; ++v) {
        for (std::size_t w = 0; w < n; ++w) m.set_valuation(w, (v >> (a * w)) & atom_mask);
        if (!visit(m)) return;
      }
      // Mixed-radix increment, last agent fastest.
      std::size_t i = k;
      while (i > 0 && ++pick[i - 1] == rels.size()) {
        pick[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
}

std::optional<PointedModel> find_model(const std::vector<Formula>& gamma, const Vocabulary& vocab,
                                       const OracleOptions& opts) {
  const auto compiled = compile_all(gamma, vocab.agents, vocab.atoms);
  std::vector<WorldSet> scratch;
  std::optional<PointedModel> found;
  for_each_model(vocab, opts, [&](const KripkeModel& m) {
    WorldSet s = m.all_worlds();
    for (const auto& c : compiled) {
      s &= c.eval(m, scratch);
      if (s == 0) return true;
    }
    found = PointedModel{m, static_cast<std::size_t>(__builtin_ctzll(s))};
    return false;
  });
  return found;
}

bool oracle_satisfiable(const std::vector<Formula>& gamma, const Vocabulary& vocab,
                        const OracleOptions& opts) {
  return find_model(gamma, vocab, opts).has_value();
}

std::optional<PointedModel> find_countermodel(const std::vector<Formula>& gamma,
                                              const Formula& phi, const Vocabulary& vocab,
                                              const OracleOptions& opts) {
  std::vector<Formula> all = gamma;
  all.push_back(Formula::negation(phi));
  return find_model(all, vocab, opts);
}

bool oracle_entails(const std::vector<Formula>& gamma, const Formula& phi,
                    const Vocabulary& vocab, const OracleOptions& opts) {
  return !find_countermodel(gamma, phi, vocab, opts).has_value();
}

ProfileIndex::ProfileIndex(std::vector<Formula> formulas, const Vocabulary& vocab,
                           const OracleOptions& opts)
    : formulas_(std::move(formulas)) {
  const auto compiled = compile_all(formulas_, vocab.agents, vocab.atoms);
  const std::size_t words = (formulas_.size() + 63) / 64;
  std::set<Profile> seen;
  std::vector<WorldSet> scratch;
  std::vector<WorldSet> truth(formulas_.size());
  for_each_model(vocab, opts, [&](const KripkeModel& m) {
    ++models_visited_;
    for (std::size_t k = 0; k < compiled.size(); ++k) truth[k] = compiled[k].eval(m, scratch);
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      Profile p(words, 0);
      for (std::size_t k = 0; k < truth.size(); ++k) {
        if (has(truth[k], w)) p[k / 64] |= std::uint64_t{1} << (k % 64);
      }
      if (seen.insert(p).second) {
        profiles_.push_back(std::move(p));
        witnesses_.push_back(PointedModel{m, w});
      }
    }
    return true;
  });
}

std::optional<PointedModel> ProfileIndex::witness(const std::vector<std::size_t>& indices) const {
  Profile need((formulas_.size() + 63) / 64, 0);
  for (auto k : indices) {
    if (k >= formulas_.size()) throw Error("profile index out of range");
    need[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  for (std::size_t p = 0; p < profiles_.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < need.size() && ok; ++i) {
      ok = (profiles_[p][i] & need[i]) == need[i];
    }
    if (ok) return witnesses_[p];
  }
  return std::nullopt;
}

bool ProfileIndex::satisfiable(const std::vector<std::size_t>& indices) const {
  return witness(indices).has_value();
}

std::string to_json(const PointedModel& pm) {
  using nlohmann::ordered_json;
  const KripkeModel& m = pm.model;
  ordered_json j;
  j["worlds"] = m.world_count();
  j["point"] = pm.point;
  j["agents"] = ordered_json::array();
  for (const auto& a : m.agents()) j["agents"].push_back(a.name);
  j["atoms"] = ordered_json::array();
  for (const auto& a : m.atoms()) j["atoms"].push_back(a.name);
  ordered_json rel = ordered_json::object();
  for (std::size_t i = 0; i < m.agents().size(); ++i) {
    ordered_json edges = ordered_json::array();
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      for (std::size_t v = 0; v < m.world_count(); ++v) {
        if (m.has_edge(i, w, v)) edges.push_back({w, v});
      }
    }
    rel[m.agents()[i].name] = std::move(edges);
  }
  j["relations"] = std::move(rel);
  ordered_json val = ordered_json::array();
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    ordered_json true_atoms = ordered_json::array();
    for (std::size_t k = 0; k < m.atoms().size(); ++k) {
      if ((m.valuation(w) >> k) & 1u) true_atoms.push_back(m.atoms()[k].name);
    }
    val.push_back(std::move(true_atoms));
  }
  j["valuation"] = std::move(val);
  return j.dump(2);
}

PointedModel pointed_model_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<Agent> agents;
    for (const auto& a : j.at("agents")) agents.push_back(Agent{a.get<std::string>()});
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back(Atom{a.get<std::string>()});
    KripkeModel m(agents, atoms, j.at("worlds").get<std::size_t>());
    for (const auto& [name, edges] : j.at("relations").items()) {
      for (const auto& e : edges) m.add_edge(Agent{name}, e.at(0), e.at(1));
    }
    const auto& val = j.at("valuation");
    for (std::size_t w = 0; w < val.size(); ++w) {
      for (const auto& a : val[w]) m.set_true(w, Atom{a.get<std::string>()});
    }
    const std::size_t point = j.at("point").get<std::size_t>();
    if (point >= m.world_count()) throw Error("point out of range");
    return PointedModel{std::move(m), point};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model json: ") + e.what());
  }
}

}  // namespace empath
