#pragma once

// Reader, checker and printer for .eplan problem files.
//
//   (problem
//     (agents obs act)
//     (atoms p q)
//     (config :depth 2 :beta 1.0 :actor act :observer obs)
//     (action NAME :owner A :pre F :effect (when F F) :effect F)
//     (sensing NAME :owner A :pre F :pos F :neg F)
//     (init F ...)
//     (goal F)
//     (goals F ...)
//     (obs NAME (NAME F) (* F) ...)
//     (outcome NAME pos|neg))
//
// Formulas: atom, (not F), (and F ...), (B agent F). Comments run from ';'
// to the end of the line.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "empath/errors.hpp"
#include "empath/planner.hpp"
#include "empath/recognition.hpp"

namespace empath {

// Half-open byte range with the 1-based line and column of its start.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const SourceSpan&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string message, std::vector<std::string> expected = {});

  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::string detail_;
  std::vector<std::string> expected_;
};

struct SExpr {
  enum class Kind { kSymbol, kList };

  Kind kind = Kind::kSymbol;
  std::string text;  // symbols only
  std::vector<SExpr> items;
  SourceSpan span;

  bool is_symbol() const { return kind == Kind::kSymbol; }
  bool is_symbol(std::string_view s) const { return is_symbol() && text == s; }
  bool is_list() const { return kind == Kind::kList; }
};

// Reads every top-level expression. Throws ParseError only.
std::vector<SExpr> read_sexprs(std::string_view text);

// A single formula such as "(B act (not p))".
Formula parse_formula(std::string_view text);

struct LocatedFormula {
  Formula formula;
  SourceSpan span;
};

struct EffectDecl {
  std::optional<LocatedFormula> condition;
  LocatedFormula effect;
};

struct ActionDecl {
  bool sensing = false;
  std::string name;
  SourceSpan name_span;
  std::string owner;
  SourceSpan owner_span;
  std::optional<LocatedFormula> pre;
  std::vector<EffectDecl> effects;  // deterministic only
  std::optional<LocatedFormula> pos;
  std::optional<LocatedFormula> neg;
  SourceSpan span;
};

struct ObservationDecl {
  std::optional<std::string> action;
  std::optional<LocatedFormula> condition;
  SourceSpan span;
};

struct OutcomeDecl {
  std::string action;
  Outcome outcome = Outcome::kPositive;
  SourceSpan span;
};

struct ConfigDecl {
  std::optional<std::size_t> depth;
  std::optional<double> beta;
  std::optional<std::string> actor;
  std::optional<std::string> observer;
  SourceSpan span;
};

struct NameDecl {
  std::string name;
  SourceSpan span;
};

struct ProblemFile {
  std::vector<NameDecl> agents;
  std::vector<NameDecl> atoms;
  std::vector<ActionDecl> actions;
  std::vector<LocatedFormula> init;
  std::optional<LocatedFormula> goal;
  std::vector<LocatedFormula> goals;
  std::vector<ObservationDecl> observations;
  std::vector<OutcomeDecl> outcomes;
  ConfigDecl config;

  // Structural equality ignoring spans, with actions and outcomes compared
  // in name order.
  bool operator==(const ProblemFile& other) const;
};

ProblemFile parse_problem(std::string_view text);

// Canonical text: fixed section order, actions and outcomes sorted by name,
// two-space indent, empty sections omitted.
std::string serialize_problem(const ProblemFile& x);

struct Diagnostic {
  enum class Severity { kWarning, kError };

  Severity severity = Severity::kError;
  SourceSpan span;
  std::string message;
};

const char* to_string(Diagnostic::Severity s);

std::vector<Diagnostic> lint(const ProblemFile& x);

// "file:line:col: message" followed by the source line and a caret marker.
std::string format_diagnostic(std::string_view source, std::string_view file,
                              const SourceSpan& span, std::string_view severity,
                              std::string_view message);

struct CompiledProblem {
  std::vector<Agent> agents;
  std::vector<Atom> atoms;
  ActionLibrary actions;
  KnowledgeBase init;
  std::optional<Conjunction> goal;
  std::vector<Conjunction> goals;
  std::vector<std::string> goal_names;
  std::vector<Observation> observations;
  std::map<std::string, Outcome> outcomes;
  std::size_t depth = KnowledgeBase::kDefaultDepth;
  double beta = 1.0;
  Agent actor;
  Agent observer;

  // Throws ProblemError when there is no (goal ...) section.
  MepProblem mep() const;
  EmpProblem emp() const;
  EmprProblem empr() const;
  ActorGroundTruth ground_truth() const;
};

// Lints first and throws ProblemError listing every error-level diagnostic.
CompiledProblem compile(const ProblemFile& x);

// A problem file describing a library and KB, e.g. a projected domain.
ProblemFile to_problem_file(const std::vector<Agent>& agents, const std::vector<Atom>& atoms,
                            const ActionLibrary& lib, const KnowledgeBase& init,
                            const std::optional<Conjunction>& goal);

}  // namespace empath
