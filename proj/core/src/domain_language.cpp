#include "empath/domain_language.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace empath {

namespace {

std::string describe(const SourceSpan& span, const std::string& message,
                     const std::vector<std::string>& expected) {
  std::string out = std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ')';
  }
  return out;
}

constexpr std::size_t kMaxNesting = 256;

bool symbol_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == ':' || c == '*' ||
         c == '+' || c == '!' || c == '?' || c == '<' || c == '>' || c == '=' || c == '/';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_blank();
    while (pos_ < text_.size()) {
      out.push_back(read(0));
      skip_blank();
    }
    return out;
  }

  SourceSpan span(std::size_t begin, std::size_t end) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), begin);
    const std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return SourceSpan{line, begin - line_starts_[line - 1] + 1, begin, end};
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read(std::size_t depth) {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      if (depth >= kMaxNesting) {
        throw ParseError(span(start, start + 1), "expressions nested too deeply");
      }
      ++pos_;
      SExpr list;
      list.kind = SExpr::Kind::kList;
      while (true) {
        skip_blank();
        if (pos_ >= text_.size()) {
          throw ParseError(span(start, start + 1), "unclosed '('", {"')'"});
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        list.items.push_back(read(depth + 1));
      }
      list.span = span(start, pos_);
      return list;
    }
    if (c == ')') {
      throw ParseError(span(start, start + 1), "unexpected ')'", {"'('", "symbol"});
    }
    while (pos_ < text_.size() && symbol_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) {
      throw ParseError(span(start, start + 1), "unexpected character", {"'('", "')'", "symbol"});
    }
    SExpr sym;
    sym.text = std::string(text_.substr(start, pos_ - start));
    sym.span = span(start, pos_);
    return sym;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> line_starts_;
};

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  const unsigned char first = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(first) && first != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    const unsigned char u = static_cast<unsigned char>(ch);
    return std::isalnum(u) || u == '_' || u == '-' || u == '.';
  });
}

const std::vector<std::string> kFormulaStart{"atom", "(not F)", "(and F ...)", "(B agent F)"};

std::string identifier(const SExpr& e, const std::string& what) {
  if (!e.is_symbol() || !is_identifier(e.text)) {
    throw ParseError(e.span, "expected " + what, {what});
  }
  return e.text;
}

Formula read_formula(const SExpr& e) {
  if (e.is_symbol()) {
    if (!is_identifier(e.text)) throw ParseError(e.span, "expected a formula", kFormulaStart);
    return Formula::atom(e.text);
  }
  if (e.items.empty() || !e.items[0].is_symbol()) {
    throw ParseError(e.span, "expected a formula", kFormulaStart);
  }
  const std::string& head = e.items[0].text;
  const std::size_t args = e.items.size() - 1;
  if (head == "not") {
    if (args != 1) throw ParseError(e.span, "'not' takes one formula", {"formula"});
    return Formula::negation(read_formula(e.items[1]));
  }
  if (head == "and") {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(read_formula(e.items[i]));
    return Formula::conjunction(std::move(parts));
  }
  if (head == "B") {
    if (args != 2) throw ParseError(e.span, "'B' takes an agent and a formula", {"agent", "formula"});
    return Formula::believes(Agent{identifier(e.items[1], "agent")}, read_formula(e.items[2]));
  }
  if (head == "or") {
    throw ParseError(e.items[0].span, "disjunction is outside the conjunctive belief fragment",
                     kFormulaStart);
  }
  if (head == "imply" || head == "implies" || head == "->" || head == "iff") {
    throw ParseError(e.items[0].span, "implication is outside the conjunctive belief fragment",
                     kFormulaStart);
  }
  if (head == "C" || head == "E" || head == "forall" || head == "exists") {
    throw ParseError(e.items[0].span, "'" + head + "' is outside the conjunctive belief fragment",
                     kFormulaStart);
  }
  throw ParseError(e.items[0].span, "unknown formula operator '" + head + "'", kFormulaStart);
}

LocatedFormula located(const SExpr& e) { return LocatedFormula{read_formula(e), e.span}; }

// Keyword/value pairs after the first `skip` items of a list.
template <typename Handler>
void keyword_pairs(const SExpr& list, std::size_t skip, const std::vector<std::string>& keys,
                   Handler handle) {
  for (std::size_t i = skip; i < list.items.size(); i += 2) {
    const SExpr& key = list.items[i];
    if (!key.is_symbol() || std::find(keys.begin(), keys.end(), key.text) == keys.end()) {
      throw ParseError(key.span, "unexpected item", keys);
    }
    if (i + 1 >= list.items.size()) {
      throw ParseError(key.span, "missing value for " + key.text, {"value"});
    }
    handle(key, list.items[i + 1]);
  }
}

ActionDecl read_action(const SExpr& e, bool sensing) {
  ActionDecl a;
  a.sensing = sensing;
  a.span = e.span;
  if (e.items.size() < 2) throw ParseError(e.span, "missing action name", {"action name"});
  a.name = identifier(e.items[1], "action name");
  a.name_span = e.items[1].span;
  bool has_owner = false;
  const std::vector<std::string> keys =
      sensing ? std::vector<std::string>{":owner", ":pre", ":pos", ":neg"}
              : std::vector<std::string>{":owner", ":pre", ":effect"};
  keyword_pairs(e, 2, keys, [&](const SExpr& key, const SExpr& value) {
    auto once = [&](bool seen) {
      if (seen) throw ParseError(key.span, "duplicate " + key.text);
    };
    if (key.text == ":owner") {
      once(has_owner);
      a.owner = identifier(value, "agent");
      a.owner_span = value.span;
      has_owner = true;
    } else if (key.text == ":pre") {
      once(a.pre.has_value());
      a.pre = located(value);
    } else if (key.text == ":pos") {
      once(a.pos.has_value());
      a.pos = located(value);
    } else if (key.text == ":neg") {
      once(a.neg.has_value());
      a.neg = located(value);
    } else if (value.is_list() && !value.items.empty() && value.items[0].is_symbol("when")) {
      if (value.items.size() != 3) {
        throw ParseError(value.span, "'when' takes a condition and an effect",
                         {"condition", "effect"});
      }
      a.effects.push_back(EffectDecl{located(value.items[1]), located(value.items[2])});
    } else {
      a.effects.push_back(EffectDecl{std::nullopt, located(value)});
    }
  });
  if (!has_owner) throw ParseError(e.span, "action '" + a.name + "' has no owner", {":owner"});
  if (sensing && (!a.pos || !a.neg)) {
    throw ParseError(e.span, "sensing action '" + a.name + "' needs :pos and :neg",
                     {a.pos ? ":neg" : ":pos"});
  }
  return a;
}

ObservationDecl read_observation(const SExpr& e) {
  ObservationDecl o;
  o.span = e.span;
  if (e.is_symbol()) {
    o.action = identifier(e, "action name");
    return o;
  }
  if (e.items.size() != 2 || !e.items[0].is_symbol()) {
    throw ParseError(e.span, "expected an observation", {"action", "(action F)", "(* F)"});
  }
  if (!e.items[0].is_symbol("*")) o.action = identifier(e.items[0], "action name");
  o.condition = located(e.items[1]);
  return o;
}

ConfigDecl read_config(const SExpr& e) {
  ConfigDecl c;
  c.span = e.span;
  keyword_pairs(e, 1, {":depth", ":beta", ":actor", ":observer"},
                [&](const SExpr& key, const SExpr& value) {
                  auto once = [&](bool seen) {
                    if (seen) throw ParseError(key.span, "duplicate " + key.text);
                  };
                  if (!value.is_symbol()) throw ParseError(value.span, "expected a value", {"value"});
                  const std::string& t = value.text;
                  if (key.text == ":depth") {
                    once(c.depth.has_value());
                    std::size_t d = 0;
                    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), d);
                    if (ec != std::errc() || p != t.data() + t.size() || d > 16) {
                      throw ParseError(value.span, "depth must be an integer in 0..16",
                                       {"integer"});
                    }
                    c.depth = d;
                  } else if (key.text == ":beta") {
                    once(c.beta.has_value());
                    double b = 0.0;
                    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), b);
                    if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(b) ||
                        !(b > 0.0)) {
                      throw ParseError(value.span, "beta must be a positive number", {"number"});
                    }
                    c.beta = b;
                  } else if (key.text == ":actor") {
                    once(c.actor.has_value());
                    c.actor = identifier(value, "agent");
                  } else {
                    once(c.observer.has_value());
                    c.observer = identifier(value, "agent");
                  }
                });
  return c;
}

const std::vector<std::string> kSections{"agents", "atoms", "config", "action", "sensing", "init",
                                         "goal",   "goals", "obs",    "outcome"};

}  // namespace

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : Error(describe(span, message, expected)),
      span_(span),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

Formula parse_formula(std::string_view text) {
  const auto xs = read_sexprs(text);
  if (xs.size() != 1) {
    const SourceSpan where = xs.empty() ? SourceSpan{} : xs[1].span;
    throw ParseError(where, "expected exactly one formula", kFormulaStart);
  }
  return read_formula(xs[0]);
}

ProblemFile parse_problem(std::string_view text) {
  Reader reader(text);
  std::vector<SExpr> top = reader.read_all();
  if (top.empty()) throw ParseError(reader.span(0, 0), "empty input", {"(problem ...)"});
  const SExpr& root = top[0];
  if (!root.is_list() || root.items.empty() || !root.items[0].is_symbol("problem")) {
    throw ParseError(root.span, "expected a problem", {"(problem ...)"});
  }
  if (top.size() > 1) throw ParseError(top[1].span, "trailing input after the problem", {"end of input"});

  ProblemFile x;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < root.items.size(); ++i) {
    const SExpr& s = root.items[i];
    if (!s.is_list() || s.items.empty() || !s.items[0].is_symbol() ||
        std::find(kSections.begin(), kSections.end(), s.items[0].text) == kSections.end()) {
      throw ParseError(s.is_list() && !s.items.empty() ? s.items[0].span : s.span,
                       "expected a section", kSections);
    }
    const std::string& head = s.items[0].text;
    if (head != "action" && head != "sensing" && head != "outcome" && !seen.insert(head).second) {
      throw ParseError(s.items[0].span, "duplicate section '" + head + "'");
    }
    if (head == "agents" || head == "atoms") {
      auto& out = head == "agents" ? x.agents : x.atoms;
      for (std::size_t k = 1; k < s.items.size(); ++k) {
        out.push_back(NameDecl{identifier(s.items[k], head == "agents" ? "agent" : "atom"),
                               s.items[k].span});
      }
    } else if (head == "config") {
      x.config = read_config(s);
    } else if (head == "action" || head == "sensing") {
      x.actions.push_back(read_action(s, head == "sensing"));
    } else if (head == "init") {
      for (std::size_t k = 1; k < s.items.size(); ++k) x.init.push_back(located(s.items[k]));
    } else if (head == "goal") {
      if (s.items.size() != 2) throw ParseError(s.span, "'goal' takes one formula", {"formula"});
      x.goal = located(s.items[1]);
    } else if (head == "goals") {
      if (s.items.size() < 2) throw ParseError(s.span, "'goals' needs at least one formula", {"formula"});
      for (std::size_t k = 1; k < s.items.size(); ++k) x.goals.push_back(located(s.items[k]));
    } else if (head == "obs") {
      for (std::size_t k = 1; k < s.items.size(); ++k) {
        x.observations.push_back(read_observation(s.items[k]));
      }
    } else {
      if (s.items.size() != 3) {
        throw ParseError(s.span, "'outcome' takes an action and pos or neg", {"action", "pos", "neg"});
      }
      OutcomeDecl o;
      o.action = identifier(s.items[1], "action name");
      o.span = s.span;
      if (s.items[2].is_symbol("pos")) {
        o.outcome = Outcome::kPositive;
      } else if (s.items[2].is_symbol("neg")) {
        o.outcome = Outcome::kNegative;
      } else {
        throw ParseError(s.items[2].span, "expected an outcome", {"pos", "neg"});
      }
      x.outcomes.push_back(std::move(o));
    }
  }
  return x;
}

namespace {

bool same(const std::optional<LocatedFormula>& a, const std::optional<LocatedFormula>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || a->formula == b->formula;
}

bool same(const std::vector<LocatedFormula>& a, const std::vector<LocatedFormula>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const auto& x, const auto& y) { return x.formula == y.formula; });
}

bool same(const std::vector<NameDecl>& a, const std::vector<NameDecl>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const auto& x, const auto& y) { return x.name == y.name; });
}

bool same(const ActionDecl& a, const ActionDecl& b) {
  return a.sensing == b.sensing && a.name == b.name && a.owner == b.owner && same(a.pre, b.pre) &&
         same(a.pos, b.pos) && same(a.neg, b.neg) &&
         std::equal(a.effects.begin(), a.effects.end(), b.effects.begin(), b.effects.end(),
                    [](const EffectDecl& x, const EffectDecl& y) {
                      return same(x.condition, y.condition) && x.effect.formula == y.effect.formula;
                    });
}

template <typename T, typename Key>
std::vector<const T*> sorted_by(const std::vector<T>& v, Key key) {
  std::vector<const T*> out;
  for (const auto& x : v) out.push_back(&x);
  std::stable_sort(out.begin(), out.end(), [&](const T* a, const T* b) { return key(*a) < key(*b); });
  return out;
}

}  // namespace

bool ProblemFile::operator==(const ProblemFile& o) const {
  if (!same(agents, o.agents) || !same(atoms, o.atoms) || !same(init, o.init) ||
      !same(goal, o.goal) || !same(goals, o.goals)) {
    return false;
  }
  if (config.depth != o.config.depth || config.beta != o.config.beta ||
      config.actor != o.config.actor || config.observer != o.config.observer) {
    return false;
  }
  auto by_name = [](const ActionDecl& a) { return a.name; };
  const auto a1 = sorted_by(actions, by_name);
  const auto a2 = sorted_by(o.actions, by_name);
  if (!std::equal(a1.begin(), a1.end(), a2.begin(), a2.end(),
                  [](const ActionDecl* x, const ActionDecl* y) { return same(*x, *y); })) {
    return false;
  }
  if (!std::equal(observations.begin(), observations.end(), o.observations.begin(),
                  o.observations.end(), [](const ObservationDecl& x, const ObservationDecl& y) {
                    return x.action == y.action && same(x.condition, y.condition);
                  })) {
    return false;
  }
  auto by_action = [](const OutcomeDecl& d) { return d.action; };
  const auto o1 = sorted_by(outcomes, by_action);
  const auto o2 = sorted_by(o.outcomes, by_action);
  return std::equal(o1.begin(), o1.end(), o2.begin(), o2.end(),
                    [](const OutcomeDecl* x, const OutcomeDecl* y) {
                      return x->action == y->action && x->outcome == y->outcome;
                    });
}

namespace {

std::string format_beta(double b) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, b);
  std::string s(buf, p);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void name_list(std::ostringstream& os, const char* head, const std::vector<NameDecl>& names) {
  if (names.empty()) return;
  os << "\n  (" << head;
  for (const auto& n : names) os << ' ' << n.name;
  os << ')';
}

void formula_list(std::ostringstream& os, const char* head, const std::vector<LocatedFormula>& fs) {
  if (fs.empty()) return;
  os << "\n  (" << head;
  for (const auto& f : fs) os << "\n    " << render(f.formula);
  os << ')';
}

}  // namespace

std::string serialize_problem(const ProblemFile& x) {
  std::ostringstream os;
  os << "(problem";
  name_list(os, "agents", x.agents);
  name_list(os, "atoms", x.atoms);
  const ConfigDecl& c = x.config;
  if (c.depth || c.beta || c.actor || c.observer) {
    os << "\n  (config";
    if (c.depth) os << " :depth " << *c.depth;
    if (c.beta) os << " :beta " << format_beta(*c.beta);
    if (c.actor) os << " :actor " << *c.actor;
    if (c.observer) os << " :observer " << *c.observer;
    os << ')';
  }
  for (const ActionDecl* a : sorted_by(x.actions, [](const ActionDecl& d) { return d.name; })) {
    os << "\n  (" << (a->sensing ? "sensing " : "action ") << a->name;
    os << "\n    :owner " << a->owner;
    if (a->pre) os << "\n    :pre " << render(a->pre->formula);
    for (const auto& e : a->effects) {
      os << "\n    :effect ";
      if (e.condition) {
        os << "(when " << render(e.condition->formula) << ' ' << render(e.effect.formula) << ')';
      } else {
        os << render(e.effect.formula);
      }
    }
    if (a->pos) os << "\n    :pos " << render(a->pos->formula);
    if (a->neg) os << "\n    :neg " << render(a->neg->formula);
    os << ')';
  }
  formula_list(os, "init", x.init);
  if (x.goal) os << "\n  (goal " << render(x.goal->formula) << ')';
  formula_list(os, "goals", x.goals);
  if (!x.observations.empty()) {
    os << "\n  (obs";
    for (const auto& o : x.observations) {
      if (!o.condition) {
        os << ' ' << *o.action;
      } else {
        os << " (" << (o.action ? *o.action : "*") << ' ' << render(o.condition->formula) << ')';
      }
    }
    os << ')';
  }
  for (const OutcomeDecl* o : sorted_by(x.outcomes, [](const OutcomeDecl& d) { return d.action; })) {
    os << "\n  (outcome " << o->action << ' ' << to_string(o->outcome) << ')';
  }
  os << ")\n";
  return os.str();
}

const char* to_string(Diagnostic::Severity s) {
  return s == Diagnostic::Severity::kError ? "error" : "warning";
}

namespace {

class Linter {
 public:
  explicit Linter(const ProblemFile& x) : x_(x), depth_(x.config.depth.value_or(KnowledgeBase::kDefaultDepth)) {}

  std::vector<Diagnostic> run() {
    names();
    formulas();
    init_consistency();
    actions();
    observations();
    outcomes();
    return std::move(out_);
  }

 private:
  void error(const SourceSpan& s, std::string m) {
    out_.push_back({Diagnostic::Severity::kError, s, std::move(m)});
  }
  void warning(const SourceSpan& s, std::string m) {
    out_.push_back({Diagnostic::Severity::kWarning, s, std::move(m)});
  }

  void names() {
    for (const auto& a : x_.agents) {
      if (!agents_.insert(a.name).second) error(a.span, "duplicate agent '" + a.name + "'");
    }
    for (const auto& a : x_.atoms) {
      if (!atoms_.insert(a.name).second) error(a.span, "duplicate atom '" + a.name + "'");
      if (a.name.rfind("__", 0) == 0) error(a.span, "atom names starting with '__' are reserved");
    }
    if (x_.agents.empty()) error(SourceSpan{}, "no agents declared");
    for (const auto* who : {&x_.config.actor, &x_.config.observer}) {
      if (*who && !agents_.count(**who)) {
        error(x_.config.span, "config names undeclared agent '" + **who + "'");
      }
    }
    std::set<std::string> actions;
    for (const auto& a : x_.actions) {
      if (!actions.insert(a.name).second) error(a.name_span, "duplicate action '" + a.name + "'");
      if (!agents_.count(a.owner)) error(a.owner_span, "unknown agent '" + a.owner + "'");
    }
  }

  // Reports unknown symbols and fragment violations; true when usable.
  bool check(const LocatedFormula& f) {
    bool ok = true;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
      if (g.kind() == Formula::Kind::kAtom) {
        if (!atoms_.count(g.atom_name().name)) {
          error(f.span, "unknown atom '" + g.atom_name().name + "'");
          ok = false;
        }
        return;
      }
      if (g.kind() == Formula::Kind::kBelieves && !agents_.count(g.agent().name)) {
        error(f.span, "unknown agent '" + g.agent().name + "'");
        ok = false;
      }
      for (const auto& c : g.children()) walk(c);
    };
    walk(f.formula);
    try {
      to_canonical(f.formula, depth_);
    } catch (const FragmentError& e) {
      error(f.span, std::string(to_string(e.kind())) + ": " + e.what());
      ok = false;
    }
    return ok;
  }

  void formulas() {
    for (const auto& f : x_.init) check(f);
    if (x_.goal) check(*x_.goal);
    for (const auto& g : x_.goals) check(g);
    for (const auto& a : x_.actions) {
      for (const auto* f : {&a.pre, &a.pos, &a.neg}) {
        if (*f) check(**f);
      }
      for (const auto& e : a.effects) {
        if (e.condition) check(*e.condition);
        check(e.effect);
      }
    }
    for (const auto& o : x_.observations) {
      if (o.condition) check(*o.condition);
    }
  }

  void init_consistency() {
    KnowledgeBase kb(depth_);
    for (const auto& f : x_.init) {
      try {
        for (const auto& r : to_canonical(f.formula, depth_)) kb = kb.tell(r);
      } catch (const InconsistencyError& e) {
        error(f.span, std::string("inconsistent initial state: ") + e.what());
      } catch (const Error&) {
        // Already reported by check().
      }
    }
  }

  static void add_atoms(const std::optional<LocatedFormula>& f, std::set<std::string>& out) {
    if (!f) return;
    for (const auto& a : atoms_of(f->formula)) out.insert(a.name);
  }

  static Conjunction canonical_or_empty(const std::optional<LocatedFormula>& f, std::size_t d) {
    if (!f) return {};
    try {
      return to_canonical(f->formula, d);
    } catch (const Error&) {
      return {};
    }
  }

  void actions() {
    std::set<std::string> producible;
    for (const auto& f : x_.init) add_atoms(f, producible);
    for (const auto& a : x_.actions) {
      for (const auto& e : a.effects) add_atoms(e.effect, producible);
      add_atoms(a.pos, producible);
      add_atoms(a.neg, producible);
    }
    for (const auto& a : x_.actions) {
      if (a.pre) {
        for (const auto& atom : atoms_of(a.pre->formula)) {
          if (atoms_.count(atom.name) && !producible.count(atom.name)) {
            warning(a.pre->span, "action '" + a.name + "' is unreachable: atom '" + atom.name +
                                     "' is neither initial nor produced by any action");
          }
        }
      }
      if (a.sensing) {
        const Conjunction pos = canonical_or_empty(a.pos, depth_);
        const Conjunction neg = canonical_or_empty(a.neg, depth_);
        if (!pos.empty() && std::is_permutation(pos.begin(), pos.end(), neg.begin(), neg.end())) {
          warning(a.span, "sensing action '" + a.name + "' has identical :pos and :neg results");
        }
        const bool has_outcome =
            std::any_of(x_.outcomes.begin(), x_.outcomes.end(),
                        [&](const OutcomeDecl& o) { return o.action == a.name; });
        if (!has_outcome) {
          warning(a.name_span, "sensing action '" + a.name + "' has no (outcome ...) entry");
        }
      }
    }
  }

  const ActionDecl* find_action(const std::string& name) const {
    for (const auto& a : x_.actions) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  void observations() {
    std::set<std::string> seen;
    for (const auto& o : x_.observations) {
      if (!o.action) continue;
      if (find_action(*o.action) == nullptr) {
        error(o.span, "observed action '" + *o.action + "' is not declared");
      } else if (!seen.insert(*o.action).second) {
        error(o.span, "action '" + *o.action + "' is observed more than once");
      }
    }
  }

  void outcomes() {
    std::set<std::string> seen;
    for (const auto& o : x_.outcomes) {
      const ActionDecl* a = find_action(o.action);
      if (a == nullptr) {
        error(o.span, "outcome for undeclared action '" + o.action + "'");
      } else if (!a->sensing) {
        error(o.span, "outcome for non-sensing action '" + o.action + "'");
      }
      if (!seen.insert(o.action).second) error(o.span, "duplicate outcome for '" + o.action + "'");
    }
  }

  const ProblemFile& x_;
  std::size_t depth_;
  std::set<std::string> agents_;
  std::set<std::string> atoms_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> lint(const ProblemFile& x) { return Linter(x).run(); }

std::string format_diagnostic(std::string_view source, std::string_view file,
                              const SourceSpan& span, std::string_view severity,
                              std::string_view message) {
  std::ostringstream os;
  os << file << ':' << span.line << ':' << span.column << ": " << severity << ": " << message
     << '\n';
  if (span.begin > source.size()) return os.str();
  std::size_t line_begin = span.begin == 0 ? std::string_view::npos : source.rfind('\n', span.begin - 1);
  line_begin = line_begin == std::string_view::npos ? 0 : line_begin + 1;
  std::size_t line_end = source.find('\n', line_begin);
  if (line_end == std::string_view::npos) line_end = source.size();
  os << "  " << source.substr(line_begin, line_end - line_begin) << '\n';
  const std::size_t col = span.begin - line_begin;
  const std::size_t width =
      std::max<std::size_t>(1, std::min(span.end, line_end) > span.begin
                                   ? std::min(span.end, line_end) - span.begin
                                   : 1);
  os << "  " << std::string(col, ' ') << '^' << std::string(width - 1, '~') << '\n';
  return os.str();
}

namespace {

Conjunction canonical(const std::optional<LocatedFormula>& f, std::size_t d) {
  return f ? to_canonical(f->formula, d) : Conjunction{};
}

Agent pick_agent(const std::optional<std::string>& configured, const std::vector<Agent>& agents,
                 const std::string& preferred, const std::optional<Agent>& other) {
  if (configured) return Agent{*configured};
  if (std::find(agents.begin(), agents.end(), Agent{preferred}) != agents.end()) {
    return Agent{preferred};
  }
  for (const auto& a : agents) {
    if (!other || a != *other) return a;
  }
  return agents.empty() ? Agent{preferred} : agents.front();
}

}  // namespace

CompiledProblem compile(const ProblemFile& x) {
  std::string errors;
  for (const auto& d : lint(x)) {
    if (d.severity != Diagnostic::Severity::kError) continue;
    errors += "\n  " + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " +
              d.message;
  }
  if (!errors.empty()) throw ProblemError("problem has errors:" + errors);

  CompiledProblem p;
  p.depth = x.config.depth.value_or(KnowledgeBase::kDefaultDepth);
  p.beta = x.config.beta.value_or(1.0);
  for (const auto& a : x.agents) p.agents.push_back(Agent{a.name});
  for (const auto& a : x.atoms) p.atoms.push_back(Atom{a.name});
  p.observer = pick_agent(x.config.observer, p.agents, "obs", std::nullopt);
  p.actor = pick_agent(x.config.actor, p.agents, "act", p.observer);

  p.actions = ActionLibrary(p.agents);
  for (const auto& a : x.actions) {
    if (a.sensing) {
      p.actions.add(SensingAction{a.name, Agent{a.owner}, canonical(a.pre, p.depth),
                                  canonical(a.pos, p.depth), canonical(a.neg, p.depth)});
    } else {
      DeterministicAction d{a.name, Agent{a.owner}, canonical(a.pre, p.depth), {}};
      for (const auto& e : a.effects) {
        d.effects.push_back(ConditionalEffect{canonical(e.condition, p.depth),
                                              to_canonical(e.effect.formula, p.depth)});
      }
      p.actions.add(std::move(d));
    }
  }
  std::vector<Formula> init;
  for (const auto& f : x.init) init.push_back(f.formula);
  p.init = KnowledgeBase::from_formulas(init, p.depth);
  if (x.goal) p.goal = to_canonical(x.goal->formula, p.depth);
  for (const auto& g : x.goals) {
    p.goals.push_back(to_canonical(g.formula, p.depth));
    p.goal_names.push_back(render(g.formula));
  }
  for (const auto& o : x.observations) {
    p.observations.push_back(Observation{o.action, canonical(o.condition, p.depth)});
  }
  for (const auto& o : x.outcomes) p.outcomes[o.action] = o.outcome;
  return p;
}

MepProblem CompiledProblem::mep() const {
  if (!goal) throw ProblemError("problem has no (goal ...) section");
  return MepProblem{actions, init, *goal, outcomes};
}

EmpProblem CompiledProblem::emp() const { return EmpProblem{mep(), actor}; }

EmprProblem CompiledProblem::empr() const {
  EmprProblem r;
  r.actions = actions;
  r.init = init;
  r.goals = goals;
  r.goal_names = goal_names;
  if (r.goals.empty() && goal) {
    r.goals.push_back(*goal);
    r.goal_names.push_back(render(*goal));
  }
  if (r.goals.empty()) throw ProblemError("problem has no (goals ...) or (goal ...) section");
  r.observations = observations;
  r.sensing_outcomes = outcomes;
  r.actor = actor;
  return r;
}

ActorGroundTruth CompiledProblem::ground_truth() const {
  return ActorGroundTruth{actions, init, outcomes};
}

namespace {

LocatedFormula lf(const Conjunction& c) { return LocatedFormula{to_formula(c), {}}; }

}  // namespace

ProblemFile to_problem_file(const std::vector<Agent>& agents, const std::vector<Atom>& atoms,
                            const ActionLibrary& lib, const KnowledgeBase& init,
                            const std::optional<Conjunction>& goal) {
  ProblemFile x;
  for (const auto& a : agents) x.agents.push_back(NameDecl{a.name, {}});
  for (const auto& a : atoms) x.atoms.push_back(NameDecl{a.name, {}});
  x.config.depth = init.depth_bound();
  for (const auto& [name, action] : lib.actions()) {
    ActionDecl d;
    d.name = name;
    d.owner = owner_of(action).name;
    if (!precondition_of(action).empty()) d.pre = lf(precondition_of(action));
    if (const auto* det = std::get_if<DeterministicAction>(&action)) {
      for (const auto& ce : det->effects) {
        EffectDecl e{std::nullopt, lf(ce.effect)};
        if (!ce.condition.empty()) e.condition = lf(ce.condition);
        d.effects.push_back(std::move(e));
      }
    } else {
      const auto& s = std::get<SensingAction>(action);
      d.sensing = true;
      d.pos = lf(s.pos);
      d.neg = lf(s.neg);
    }
    x.actions.push_back(std::move(d));
  }
  for (const auto& r : init.facts()) x.init.push_back(LocatedFormula{to_formula(r), {}});
  if (goal) x.goal = lf(*goal);
  return x;
}

}  // namespace empath
