#include "empath/logic.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "empath/errors.hpp"

namespace empath {

struct Formula::Node {
  Kind kind;
  Atom atom;
  Agent agent;
  std::vector<Formula> children;
};

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAtom, std::move(a), {}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {std::move(f)}}));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAnd, {}, {}, std::move(children)}));
}

Formula Formula::believes(Agent agent, Formula f) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::kBelieves, {}, std::move(agent), {std::move(f)}}));
}

Formula Formula::literal(const Literal& l) {
  Formula a = atom(l.atom);
  return l.positive ? a : negation(a);
}

Formula Formula::top() { return conjunction({}); }

Formula::Kind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom_name() const { return node_->atom; }
const Agent& Formula::agent() const { return node_->agent; }
const Formula& Formula::operand() const { return node_->children.front(); }
const std::vector<Formula>& Formula::children() const { return node_->children; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::kAtom:
      return atom_name() == other.atom_name();
    case Kind::kBelieves:
      return agent() == other.agent() && operand() == other.operand();
    case Kind::kNot:
    case Kind::kAnd:
      return children() == other.children();
  }
  return false;
}

std::size_t modal_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      return 0;
    case Formula::Kind::kNot:
      return modal_depth(f.operand());
    case Formula::Kind::kBelieves:
      return 1 + modal_depth(f.operand());
    case Formula::Kind::kAnd: {
      std::size_t d = 0;
      for (const auto& c : f.children()) d = std::max(d, modal_depth(c));
      return d;
    }
  }
  return 0;
}

namespace {

void render_to(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      os << f.atom_name().name;
      break;
    case Formula::Kind::kNot:
      os << "(not ";
      render_to(os, f.operand());
      os << ')';
      break;
    case Formula::Kind::kBelieves:
      os << "(B " << f.agent().name << ' ';
      render_to(os, f.operand());
      os << ')';
      break;
    case Formula::Kind::kAnd:
      os << "(and";
      for (const auto& c : f.children()) {
        os << ' ';
        render_to(os, c);
      }
      os << ')';
      break;
  }
}

void add_unique(Conjunction& out, const CanonicalRML& r) {
  if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
}

Conjunction canon(const Formula& f, bool nested);

// Canonical form of (not f). `nested` is set below a belief operator.
Conjunction canon_negated(const Formula& f, bool nested) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      return {CanonicalRML{{}, Literal{f.atom_name(), false}}};
    case Formula::Kind::kNot:
      return canon(f.operand(), nested);
    case Formula::Kind::kAnd:
    case Formula::Kind::kBelieves: {
      Conjunction inner = canon(f, nested);
      if (inner.size() == 1) return {negate(inner.front())};
      const std::string sub = "(not " + render(f) + ")";
      if (inner.empty()) {
        throw FragmentError(FragmentError::Kind::kNegatedConjunction, sub,
                            "negation of a valid formula is unsatisfiable: " + sub);
      }
      if (nested) {
        throw FragmentError(FragmentError::Kind::kNegatedConjunction, sub,
                            "negated conjunction below a belief operator: " + sub);
      }
      throw FragmentError(FragmentError::Kind::kDisjunction, sub,
                          "negated conjunction is a disjunction: " + sub);
    }
  }
  return {};
}

Conjunction canon(const Formula& f, bool nested) {
  Conjunction out;
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      out.push_back(CanonicalRML{{}, Literal{f.atom_name(), true}});
      break;
    case Formula::Kind::kNot:
      out = canon_negated(f.operand(), nested);
      break;
    case Formula::Kind::kAnd:
      for (const auto& c : f.children()) {
        for (const auto& r : canon(c, nested)) add_unique(out, r);
      }
      break;
    case Formula::Kind::kBelieves: {
      // B_i distributes over conjunction (axiom K).
      Conjunction inner = canon(f.operand(), true);
      for (const auto& r : inner) {
        add_unique(out, prepend(ModalStep{f.agent(), Sign::kPositive}, r));
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::string render(const Formula& f) {
  std::ostringstream os;
  render_to(os, f);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  render_to(os, f);
  return os;
}

CanonicalRML prepend(const ModalStep& step, const CanonicalRML& r) {
  CanonicalRML out = r;
  if (!out.prefix.empty() && out.prefix.front().agent == step.agent) {
    out.prefix.front().sign = step.sign * out.prefix.front().sign;
  } else {
    out.prefix.insert(out.prefix.begin(), step);
  }
  return out;
}

CanonicalRML make_rml(const std::vector<ModalStep>& steps, Literal body) {
  CanonicalRML r{{}, std::move(body)};
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) r = prepend(*it, r);
  return r;
}

Conjunction to_canonical(const Formula& f, std::size_t depth_bound) {
  Conjunction out = canon(f, false);
  for (const auto& r : out) {
    if (r.depth() > depth_bound) {
      throw FragmentError(FragmentError::Kind::kDepthExceeded, render(r),
                          "conjunct " + render(r) + " has modal depth " +
                              std::to_string(r.depth()) + " > bound " +
                              std::to_string(depth_bound));
    }
  }
  return out;
}

CanonicalRML negate(const CanonicalRML& r) {
  CanonicalRML out = r;
  if (out.prefix.empty()) {
    out.body = out.body.negated();
  } else {
    out.prefix.front().sign = flip(out.prefix.front().sign);
  }
  return out;
}

ModalPath to_modal_path(const CanonicalRML& r) {
  ModalPath p;
  bool odd = false;
  for (const auto& step : r.prefix) {
    if (step.sign == Sign::kNegative) odd = !odd;
    p.ops.push_back(ModalOp{step.agent, !odd});
  }
  p.body = odd ? r.body.negated() : r.body;
  return p;
}

CanonicalRML from_modal_path(const ModalPath& p) {
  CanonicalRML r;
  bool odd = false;
  for (const auto& op : p.ops) {
    const bool now_odd = !op.box;
    r.prefix.push_back(ModalStep{op.agent, now_odd != odd ? Sign::kNegative : Sign::kPositive});
    odd = now_odd;
  }
  r.body = odd ? p.body.negated() : p.body;
  return r;
}

// In the box/diamond view two RMLs can only clash along a shared agent path:
// diamonds of the same agent can be witnessed by distinct worlds of the
// agent's belief cluster, and alternation means the inner formulas never
// constrain that cluster again.
bool conflict(const CanonicalRML& r, const CanonicalRML& r2) {
  const ModalPath a = to_modal_path(r);
  const ModalPath b = to_modal_path(r2);
  if (a.ops.size() != b.ops.size()) return false;
  for (std::size_t k = 0; k < a.ops.size(); ++k) {
    if (a.ops[k].agent != b.ops[k].agent) return false;
    if (!a.ops[k].box && !b.ops[k].box) return false;
  }
  return a.body.atom == b.body.atom && a.body.positive != b.body.positive;
}

bool rml_entails(const CanonicalRML& r, const CanonicalRML& r2) {
  const ModalPath a = to_modal_path(r);
  const ModalPath b = to_modal_path(r2);
  if (a.ops.size() != b.ops.size() || a.body != b.body) return false;
  for (std::size_t k = 0; k < a.ops.size(); ++k) {
    if (a.ops[k].agent != b.ops[k].agent) return false;
    if (!a.ops[k].box && b.ops[k].box) return false;
  }
  return true;
}

Formula to_formula(const CanonicalRML& r) {
  Formula f = Formula::literal(r.body);
  for (auto it = r.prefix.rbegin(); it != r.prefix.rend(); ++it) {
    f = Formula::believes(it->agent, f);
    if (it->sign == Sign::kNegative) f = Formula::negation(f);
  }
  return f;
}

Formula to_formula(const Conjunction& c) {
  if (c.size() == 1) return to_formula(c.front());
  std::vector<Formula> parts;
  parts.reserve(c.size());
  for (const auto& r : c) parts.push_back(to_formula(r));
  return Formula::conjunction(std::move(parts));
}

std::string render(const CanonicalRML& r) { return render(to_formula(r)); }

std::string render(const Conjunction& c) { return render(to_formula(c)); }

std::ostream& operator<<(std::ostream& os, const CanonicalRML& r) { return os << render(r); }

namespace {

template <typename T, typename Pick>
void collect(const Formula& f, std::vector<T>& out, Pick pick) {
  if (auto v = pick(f)) {
    if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
  }
  if (f.kind() != Formula::Kind::kAtom) {
    for (const auto& c : f.children()) collect(c, out, pick);
  }
}

}  // namespace

std::vector<Atom> atoms_of(const Formula& f) {
  std::vector<Atom> out;
  collect<Atom>(f, out, [](const Formula& g) -> std::optional<Atom> {
    if (g.kind() == Formula::Kind::kAtom) return g.atom_name();
    return std::nullopt;
  });
  return out;
}

std::vector<Agent> agents_of(const Formula& f) {
  std::vector<Agent> out;
  collect<Agent>(f, out, [](const Formula& g) -> std::optional<Agent> {
    if (g.kind() == Formula::Kind::kBelieves) return g.agent();
    return std::nullopt;
  });
  return out;
}

const char* to_string(FragmentError::Kind kind) {
  switch (kind) {
    case FragmentError::Kind::kDisjunction:
      return "disjunction";
    case FragmentError::Kind::kDepthExceeded:
      return "depth-exceeded";
    case FragmentError::Kind::kNegatedConjunction:
      return "nested-negation-of-conjunction";
  }
  return "unknown";
}

}  // namespace empath
