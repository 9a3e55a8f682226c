#include <doctest.h>

#include <algorithm>

#include "empath/errors.hpp"
#include "empath/kripke.hpp"
#include "empath/logic.hpp"
#include "generators.hpp"

using namespace empath;
using empath::testing::all_rmls;
using empath::testing::small_vocab;

namespace {

Formula p() { return Formula::atom("p"); }
Formula q() { return Formula::atom("q"); }
Formula B(const char* agent, Formula f) { return Formula::believes(Agent{agent}, std::move(f)); }
Formula neg(Formula f) { return Formula::negation(std::move(f)); }
Formula conj(std::vector<Formula> fs) { return Formula::conjunction(std::move(fs)); }

CanonicalRML rml(std::vector<ModalStep> steps, const char* atom, bool positive = true) {
  return CanonicalRML{std::move(steps), Literal{Atom{atom}, positive}};
}

ModalStep plus(const char* a) { return ModalStep{Agent{a}, Sign::kPositive}; }
ModalStep minus(const char* a) { return ModalStep{Agent{a}, Sign::kNegative}; }

bool equivalent(const Formula& a, const Formula& b, const Vocabulary& v, std::size_t worlds = 4) {
  OracleOptions o;
  o.max_worlds = worlds;
  return oracle_entails({a}, b, v, o) && oracle_entails({b}, a, v, o);
}

}  // namespace

TEST_CASE("to_canonical collapses repeated belief steps") {
  const auto c = to_canonical(B("act", B("act", p())), 2);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == rml({plus("act")}, "p"));
  CHECK(equivalent(B("act", B("act", p())), B("act", p()), small_vocab(1, 1)));
}

TEST_CASE("to_canonical splits conjunctions") {
  const auto c = to_canonical(conj({p(), B("act", neg(q()))}), 2);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == rml({}, "p"));
  CHECK(c[1] == rml({plus("act")}, "q", false));
}

TEST_CASE("to_canonical collapses a doubt about a belief") {
  const auto c = to_canonical(neg(B("act", B("act", p()))), 2);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == rml({minus("act")}, "p"));
  CHECK(equivalent(neg(B("act", B("act", p()))), neg(B("act", p())), small_vocab(1, 1)));
}

TEST_CASE("to_canonical collapses a belief about a doubt") {
  // B_i not B_i p == not B_i p under introspection.
  const auto c = to_canonical(B("act", neg(B("act", p()))), 2);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == rml({minus("act")}, "p"));
  CHECK(equivalent(B("act", neg(B("act", p()))), neg(B("act", p())), small_vocab(1, 1)));
}

TEST_CASE("to_canonical reports fragment violations") {
  SUBCASE("negated conjunction at the root is a disjunction") {
    try {
      to_canonical(neg(conj({p(), q()})), 2);
      FAIL("expected FragmentError");
    } catch (const FragmentError& e) {
      CHECK(e.kind() == FragmentError::Kind::kDisjunction);
      CHECK(e.subformula() == "(not (and p q))");
    }
  }
  SUBCASE("negated conjunction under a belief") {
    try {
      to_canonical(B("obs", neg(B("act", conj({p(), q()})))), 2);
      FAIL("expected FragmentError");
    } catch (const FragmentError& e) {
      CHECK(e.kind() == FragmentError::Kind::kNegatedConjunction);
    }
  }
  SUBCASE("depth over the bound") {
    try {
      to_canonical(B("obs", B("act", B("obs", p()))), 2);
      FAIL("expected FragmentError");
    } catch (const FragmentError& e) {
      CHECK(e.kind() == FragmentError::Kind::kDepthExceeded);
      CHECK(e.subformula() == "(B obs (B act (B obs p)))");
    }
  }
  SUBCASE("depth is measured after collapsing") {
    CHECK(to_canonical(B("act", B("act", B("act", p()))), 1).size() == 1);
  }
  SUBCASE("negated top") {
    CHECK_THROWS_AS(to_canonical(neg(Formula::top()), 2), FragmentError);
  }
}

TEST_CASE("negate") {
  CHECK(negate(rml({plus("act")}, "p")) == rml({minus("act")}, "p"));
  CHECK(negate(rml({}, "p")) == rml({}, "p", false));
  CHECK(negate(rml({plus("obs"), minus("act")}, "q")) == rml({minus("obs"), minus("act")}, "q"));
}

TEST_CASE("modal_depth") {
  CHECK(modal_depth(p()) == 0);
  CHECK(modal_depth(B("act", p())) == 1);
  CHECK(modal_depth(B("obs", B("act", neg(p())))) == 2);
  CHECK(modal_depth(conj({p(), B("act", B("obs", q())), B("act", q())})) == 2);
}

TEST_CASE("rml_entails") {
  CHECK(rml_entails(rml({plus("act")}, "p"), rml({minus("act")}, "p", false)));
  const auto r = rml({plus("obs"), minus("act")}, "q");
  CHECK(rml_entails(r, r));
  const auto doubt = rml({minus("act")}, "p");
  const auto belief = rml({plus("act")}, "p", false);
  CHECK_FALSE(rml_entails(doubt, belief));
  auto cm = find_countermodel({to_formula(doubt)}, to_formula(belief), small_vocab(1, 1));
  REQUIRE(cm.has_value());
  CHECK(cm->model.world_count() <= 4);
  CHECK(model_check(cm->model, cm->point, to_formula(doubt)));
  CHECK_FALSE(model_check(cm->model, cm->point, to_formula(belief)));
}

TEST_CASE("conflict") {
  CHECK(conflict(rml({plus("act")}, "p"), rml({plus("act")}, "p", false)));
  CHECK(conflict(rml({plus("act")}, "p"), rml({minus("act")}, "p")));
  const auto a = rml({minus("act")}, "p");
  const auto b = rml({minus("act")}, "p", false);
  CHECK_FALSE(conflict(a, b));
  auto m = find_model({to_formula(a), to_formula(b)}, small_vocab(1, 1), OracleOptions{});
  REQUIRE(m.has_value());
  CHECK(m->model.world_count() == 2);
}

TEST_CASE("negate is an involution and always conflicts") {
  for (const auto& r : all_rmls(small_vocab(2, 3), 3)) {
    CHECK(negate(negate(r)) == r);
    CHECK(conflict(r, negate(r)));
    CHECK(conflict(negate(r), r));
  }
}

TEST_CASE("modal path view round-trips") {
  for (const auto& r : all_rmls(small_vocab(2, 2), 3)) {
    CHECK(from_modal_path(to_modal_path(r)) == r);
  }
}

TEST_CASE("canonicalisation is idempotent on random fragment formulas") {
  empath::testing::FormulaGen gen(small_vocab(2, 2), 7);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const Formula f = gen(4);
    Conjunction c;
    try {
      c = to_canonical(f, 4);
    } catch (const FragmentError&) {
      continue;
    }
    ++checked;
    CHECK(to_canonical(to_formula(c), 4) == c);
  }
  CHECK(checked > 500);
}

TEST_CASE("render and atoms_of") {
  const Formula f = conj({p(), B("act", neg(q()))});
  CHECK(render(f) == "(and p (B act (not q)))");
  CHECK(render(to_canonical(f, 2)) == "(and p (B act (not q)))");
  const auto atoms = atoms_of(f);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].name == "p");
  CHECK(agents_of(f).size() == 1);
}
