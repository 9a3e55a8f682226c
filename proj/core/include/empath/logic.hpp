#pragma once

// Epistemic formula language and its restricted-modal-literal fragment.
//
// A formula is built from atoms, negation, conjunction and the belief
// modality B_i. Every knowledge base, precondition, condition, effect and
// goal is reduced to a conjunction of canonical restricted modal literals
// (RMLs): an agent-alternating prefix of signed belief steps over a literal.
// Same-agent runs collapse under KD45 (B_i B_i p == B_i p,
// B_i not B_i p == not B_i p), so canonical prefixes never repeat an agent
// in adjacent positions.

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace empath {

struct Agent {
  std::string name;

  auto operator<=>(const Agent&) const = default;
};

struct Atom {
  std::string name;

  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  Literal negated() const { return {atom, !positive}; }

  auto operator<=>(const Literal&) const = default;
};

class Formula {
 public:
  enum class Kind { kAtom, kNot, kAnd, kBelieves };

  static Formula atom(Atom a);
  static Formula atom(std::string name) { return atom(Atom{std::move(name)}); }
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> children);
  static Formula believes(Agent agent, Formula f);
  static Formula literal(const Literal& l);
  // The empty conjunction.
  static Formula top();

  Kind kind() const;
  const Atom& atom_name() const;
  const Agent& agent() const;
  // Operand of kNot and kBelieves.
  const Formula& operand() const;
  const std::vector<Formula>& children() const;

  bool is_top() const { return kind() == Kind::kAnd && children().empty(); }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Maximum nesting of belief operators.
std::size_t modal_depth(const Formula& f);

// S-expression rendering: p, (not p), (and p q), (B act p).
std::string render(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

enum class Sign { kPositive, kNegative };

inline Sign operator*(Sign a, Sign b) {
  return a == b ? Sign::kPositive : Sign::kNegative;
}

inline Sign flip(Sign s) {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}

// (i,+) reads B_i, (i,-) reads "not B_i".
struct ModalStep {
  Agent agent;
  Sign sign = Sign::kPositive;

  auto operator<=>(const ModalStep&) const = default;
};

struct CanonicalRML {
  std::vector<ModalStep> prefix;
  Literal body;

  std::size_t depth() const { return prefix.size(); }
  bool is_root_literal() const { return prefix.empty(); }

  auto operator<=>(const CanonicalRML&) const = default;
};

// Ordered conjunct list. Order is declaration order; duplicates removed.
using Conjunction = std::vector<CanonicalRML>;

// Builds an RML from outermost step to body, collapsing same-agent runs.
CanonicalRML make_rml(const std::vector<ModalStep>& steps, Literal body);

// Prepends one step, collapsing with the current outermost step when the
// agents coincide (the collapsed sign is the product of both signs).
CanonicalRML prepend(const ModalStep& step, const CanonicalRML& r);

// Reduces a formula to its canonical conjunct set. Throws FragmentError when
// the negation normal form is not a conjunction of RMLs or when a collapsed
// conjunct is deeper than depth_bound.
Conjunction to_canonical(const Formula& f, std::size_t depth_bound);

CanonicalRML negate(const CanonicalRML& r);

// Single-premise entailment: r' follows from r by weakening belief steps to
// possibility steps (axiom D) at positive positions.
bool rml_entails(const CanonicalRML& r, const CanonicalRML& r2);

// True iff {r, r'} is unsatisfiable in KD45_n.
bool conflict(const CanonicalRML& r, const CanonicalRML& r2);

Formula to_formula(const CanonicalRML& r);
Formula to_formula(const Conjunction& c);

std::string render(const CanonicalRML& r);
std::string render(const Conjunction& c);
std::ostream& operator<<(std::ostream& os, const CanonicalRML& r);

// Box/diamond view of an RML: not B_i x == diamond_i not x, so each step is
// either a box or a diamond and the only negation sits on the literal.
struct ModalOp {
  Agent agent;
  bool box = true;

  auto operator<=>(const ModalOp&) const = default;
};

struct ModalPath {
  std::vector<ModalOp> ops;
  Literal body;

  auto operator<=>(const ModalPath&) const = default;
};

ModalPath to_modal_path(const CanonicalRML& r);
CanonicalRML from_modal_path(const ModalPath& p);

// Atoms and agents mentioned, in first-occurrence order.
std::vector<Atom> atoms_of(const Formula& f);
std::vector<Agent> agents_of(const Formula& f);

}  // namespace empath
