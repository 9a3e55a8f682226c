#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "empath/domain_language.hpp"
#include "empath/empathy.hpp"
#include "empath/errors.hpp"
#include "empath/kripke.hpp"
#include "empath/oracle_check.hpp"
#include "empath/planner.hpp"
#include "empath/projection.hpp"
#include "empath/recognition.hpp"

namespace empath::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Carries an exit code out of a command after its message has been written.
struct Exit {
  int code;
};

struct Options {
  std::string command;
  std::string problem;
  std::string actor_path;
  std::optional<std::size_t> depth;
  std::optional<double> beta;
  bool all_optimal = false;
  std::optional<std::size_t> max_nodes;
  std::string format = "text";
  bool trace = false;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string perspective = "actor";
  // validate
  std::string plan;
  std::string model = "observer";
  // project
  std::string agent;
  // oracle-check
  std::size_t atoms = 2;
  std::size_t agents = 2;
  std::size_t max_worlds = 4;
  std::size_t max_premises = 2;
  std::size_t sample = 0;
  std::uint64_t max_models = 50'000'000;
  std::vector<std::string> premises;
  std::string query;
  bool dump_countermodel = false;
  // scenarios
  std::string dir = "scenarios";
  bool regen = false;
};

struct Loaded {
  std::string path;
  std::string source;
  ProblemFile file;
  CompiledProblem problem;
};

class Runner {
 public:
  Runner(Options opts, std::ostream& out, std::ostream& err)
      : opts_(std::move(opts)), out_(out), err_(err) {}

  int dispatch();

 private:
  int plan();
  int empathize();
  int sympathize();
  int compare_cmd();
  int recognize();
  int check_empathy();
  int project_cmd();
  int validate();
  int oracle_check();
  int scenarios();

  SearchOptions search() const;
  Loaded load(const std::string& path) const;
  std::optional<ActorGroundTruth> actor_truth(const std::string& problem_path, bool required) const;
  std::string sibling_actor_path(const std::string& problem_path) const;
  bool json_output() const { return opts_.format == "json"; }
  void emit(const json& j, const std::string& text) const;
  [[noreturn]] void fail(int code, const std::string& message) const;

  json compare_json(const Loaded& l) const;
  json check_json(const Loaded& l, const ActorGroundTruth& truth) const;
  json recognize_json(const Loaded& l, Perspective perspective, double beta) const;

  Options opts_;
  std::ostream& out_;
  std::ostream& err_;
};

json plan_json(const Plan& p) {
  json steps = json::array();
  for (const auto& s : p.steps) steps.push_back(render(s));
  return steps;
}

json optional_plan_json(const std::optional<Plan>& p) {
  return p ? plan_json(*p) : json(nullptr);
}

json plan_record(const Plan& p, bool validated) {
  return json{{"steps", plan_json(p)}, {"cost", p.cost()}, {"validated", validated}};
}

json plans_json(const std::vector<Plan>& plans) {
  json out = json::array();
  for (const auto& p : plans) out.push_back(plan_json(p));
  return out;
}

json kb_json(const KnowledgeBase& kb) {
  json out = json::array();
  for (const auto& r : kb.facts()) out.push_back(render(r));
  return out;
}

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json optional_size(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string plan_text(const Plan& p) {
  if (p.steps.empty()) return "(empty plan)";
  std::string s;
  for (const auto& step : p.steps) {
    if (!s.empty()) s += ", ";
    s += render(step);
  }
  return s;
}

std::string number_text(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "a, b[pos] c" -> steps; separators are commas and whitespace.
Plan parse_plan(const std::string& text) {
  Plan plan;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    PlanStep step;
    const auto open = token.find('[');
    if (open == std::string::npos) {
      step.action = token;
    } else {
      if (token.back() != ']') throw ProblemError("malformed plan step '" + token + "'");
      const std::string outcome = token.substr(open + 1, token.size() - open - 2);
      if (outcome == "pos") {
        step.outcome = Outcome::kPositive;
      } else if (outcome == "neg") {
        step.outcome = Outcome::kNegative;
      } else {
        throw ProblemError("unknown sensing outcome '" + outcome + "' in '" + token + "'");
      }
      step.action = token.substr(0, open);
    }
    plan.steps.push_back(std::move(step));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  return plan;
}

void collect_vocabulary(const Formula& f, std::vector<Atom>& atoms, std::vector<Agent>& agents) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      if (std::find(atoms.begin(), atoms.end(), f.atom_name()) == atoms.end()) {
        atoms.push_back(f.atom_name());
      }
      break;
    case Formula::Kind::kBelieves:
      if (std::find(agents.begin(), agents.end(), f.agent()) == agents.end()) {
        agents.push_back(f.agent());
      }
      break;
    default:
      break;
  }
  for (const auto& c : f.children()) collect_vocabulary(c, atoms, agents);
}

}  // namespace

void Runner::emit(const json& j, const std::string& text) const {
  if (json_output()) {
    out_ << j.dump(2) << "\n";
  } else {
    out_ << text;
  }
}

void Runner::fail(int code, const std::string& message) const {
  err_ << "error: " << message << "\n";
  throw Exit{code};
}

SearchOptions Runner::search() const {
  SearchOptions s;
  s.all_optimal = opts_.all_optimal;
  if (opts_.max_nodes) s.max_nodes = *opts_.max_nodes;
  if (const char* env = std::getenv("EMPATH_MAX_NODES"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) fail(kUsage, std::string("EMPATH_MAX_NODES must be a positive integer, got '") + env + "'");
    s.max_nodes = static_cast<std::size_t>(v);
  }
  s.threads = opts_.threads;
  if (opts_.trace) s.trace = [this](const std::string& line) { err_ << line << "\n"; };
  return s;
}

Loaded Runner::load(const std::string& path) const {
  Loaded l;
  l.path = path;
  if (!fs::is_regular_file(path)) fail(kUsage, "cannot read problem file '" + path + "'");
  l.source = read_file(path);
  try {
    l.file = parse_problem(l.source);
  } catch (const ParseError& e) {
    err_ << format_diagnostic(l.source, path, e.span(), "error", e.detail());
    throw Exit{kUsage};
  }
  if (opts_.depth) l.file.config.depth = *opts_.depth;
  bool errors = false;
  for (const auto& d : lint(l.file)) {
    err_ << format_diagnostic(l.source, path, d.span, to_string(d.severity), d.message);
    errors = errors || d.severity == Diagnostic::Severity::kError;
  }
  if (errors) throw Exit{kUsage};
  l.problem = compile(l.file);
  return l;
}

std::string Runner::sibling_actor_path(const std::string& problem_path) const {
  const std::string suffix = ".eplan";
  std::string stem = problem_path;
  if (stem.size() > suffix.size() && stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
    stem.resize(stem.size() - suffix.size());
  }
  return stem + ".actor.eplan";
}

std::optional<ActorGroundTruth> Runner::actor_truth(const std::string& problem_path,
                                                    bool required) const {
  std::string path = opts_.actor_path;
  if (path.empty()) {
    path = sibling_actor_path(problem_path);
    if (!fs::is_regular_file(path)) {
      if (required) {
        fail(kUsage, "no actor model: pass --actor or provide '" + path + "'");
      }
      return std::nullopt;
    }
  }
  return load(path).problem.ground_truth();
}

int Runner::dispatch() {
  if (opts_.command == "plan") return plan();
  if (opts_.command == "empathize") return empathize();
  if (opts_.command == "sympathize") return sympathize();
  if (opts_.command == "compare") return compare_cmd();
  if (opts_.command == "recognize") return recognize();
  if (opts_.command == "check-empathy") return check_empathy();
  if (opts_.command == "project") return project_cmd();
  if (opts_.command == "validate") return validate();
  if (opts_.command == "oracle-check") return oracle_check();
  if (opts_.command == "scenarios") return scenarios();
  fail(kUsage, "unknown command '" + opts_.command + "'");
}

int Runner::plan() {
  const Loaded l = load(opts_.problem);
  const MepProblem p = l.problem.mep();
  SearchOptions s = search();
  const SearchResult r = solve_optimal(p, s);
  if (opts_.trace) {
    err_ << "trace of the first plan:\n";
    validate_plan(p, r.plans.front(), s.trace);
  }
  json records = json::array();
  for (const auto& plan : r.plans) records.push_back(plan_record(plan, validate_plan(p, plan).ok));
  json j{{"command", "plan"},
         {"problem", l.path},
         {"cost", r.cost()},
         {"plans", records},
         {"truncated", r.truncated},
         {"expanded", r.expanded},
         {"generated", r.generated}};
  std::ostringstream text;
  text << "cost " << r.cost() << "\n";
  for (const auto& plan : r.plans) text << "plan: " << plan_text(plan) << "\n";
  if (r.truncated) text << "(more optimal plans exist)\n";
  emit(j, text.str());
  return kOk;
}

int Runner::empathize() {
  const Loaded l = load(opts_.problem);
  const EmpProblem z = l.problem.emp();
  const Plan plan = solve_emp(z, search());
  json j{{"command", "empathize"},
         {"problem", l.path},
         {"actor", z.actor.name},
         {"plan", plan_record(plan, validate_plan(z.mep, plan).ok)}};
  emit(j, "empathetic plan (cost " + std::to_string(plan.cost()) + "): " + plan_text(plan) + "\n");
  return kOk;
}

int Runner::sympathize() {
  const Loaded l = load(opts_.problem);
  const EmpProblem z = l.problem.emp();
  const Plan plan = solve_sympathetic(z, search());
  const KnowledgeBase init = sympathetic_init(z.mep.init, z.actor);
  MepProblem assumed = z.mep;
  assumed.init = init;
  json j{{"command", "sympathize"},
         {"problem", l.path},
         {"actor", z.actor.name},
         {"sympathetic_init", kb_json(init)},
         {"plan", plan_record(plan, validate_plan(assumed, plan).ok)}};
  emit(j, "sympathetic init: " + init.render() + "\nsympathetic plan (cost " +
              std::to_string(plan.cost()) + "): " + plan_text(plan) + "\n");
  return kOk;
}

json Runner::compare_json(const Loaded& l) const {
  const auto truth = actor_truth(l.path, false);
  const Comparison c = compare(l.problem.emp(), truth, search());
  auto flag = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  auto cost = [](const std::optional<Plan>& p) { return p ? json(p->cost()) : json(nullptr); };
  return json{{"command", "compare"},
              {"problem", fs::path(l.path).filename().string()},
              {"actor", l.problem.actor.name},
              {"empathetic_plan", optional_plan_json(c.empathetic)},
              {"sympathetic_plan", optional_plan_json(c.sympathetic)},
              {"actor_self_plan", optional_plan_json(c.actor_self)},
              {"actor_self_source", c.actor_self_from_truth ? "actor_model" : "projection"},
              {"costs",
               {{"empathetic", cost(c.empathetic)},
                {"sympathetic", cost(c.sympathetic)},
                {"actor_self", cost(c.actor_self)}}},
              {"executable_in_actor_model",
               {{"empathetic", flag(c.empathetic_executable_in_actor_model)},
                {"sympathetic", flag(c.sympathetic_executable_in_actor_model)}}}};
}

int Runner::compare_cmd() {
  const Loaded l = load(opts_.problem);
  const json j = compare_json(l);
  auto plan_line = [&](const char* label, const char* key) {
    std::string s = std::string(label) + ": ";
    if (j[key].is_null()) return s + "none\n";
    std::string steps;
    for (const auto& step : j[key]) steps += (steps.empty() ? "" : ", ") + step.get<std::string>();
    return s + (steps.empty() ? "(empty plan)" : steps) + "\n";
  };
  auto flag_text = [&](const char* key) {
    const auto& f = j["executable_in_actor_model"][key];
    return f.is_null() ? std::string("unknown") : (f.get<bool>() ? "yes" : "no");
  };
  std::string text = plan_line("empathetic", "empathetic_plan") +
                     plan_line("sympathetic", "sympathetic_plan") + plan_line("actor alone", "actor_self_plan") +
                     "empathetic plan runs in actor model: " +
                     flag_text("empathetic") + "\n" +
                     "sympathetic plan runs in actor model: " +
                     flag_text("sympathetic") + "\n";
  emit(j, text);
  return kOk;
}

json Runner::recognize_json(const Loaded& l, Perspective perspective, double beta) const {
  const EmprProblem r = l.problem.empr();
  const EmprSolution s = solve_empr(r, beta, perspective, search());
  const MepProblem chosen{r.actions, r.init, r.goals[s.goal_index], r.sensing_outcomes};
  json goals = json::array();
  for (const auto& g : s.scores.goals) {
    goals.push_back({{"name", g.name},
                     {"constrained_cost", optional_size(g.constrained_cost)},
                     {"complement_cost", optional_size(g.complement_cost)},
                     {"delta", number_or_inf(g.delta)},
                     {"likelihood", g.likelihood},
                     {"posterior", g.posterior}});
  }
  json mapping = json::array();
  for (auto m : s.satisfaction.mapping) mapping.push_back(m);
  return json{{"perspective", to_string(perspective)},
              {"beta", beta},
              {"goals", goals},
              {"chosen", s.goal_name},
              {"plan", plan_record(s.plan, validate_plan(chosen, s.plan).ok)},
              {"satisfies_observations", s.satisfaction.satisfied},
              {"observation_mapping", mapping}};
}

int Runner::recognize() {
  const Loaded l = load(opts_.problem);
  const Perspective perspective =
      opts_.perspective == "observer" ? Perspective::kObserver : Perspective::kActor;
  const double beta = opts_.beta.value_or(l.problem.beta);
  json j = recognize_json(l, perspective, beta);
  j["command"] = "recognize";
  j["problem"] = l.path;
  std::ostringstream text;
  text << "perspective " << j["perspective"].get<std::string>() << ", beta " << number_text(beta)
       << "\n";
  text << std::left << std::setw(28) << "goal" << std::setw(8) << "delta" << std::setw(14)
       << "likelihood" << "posterior\n";
  for (const auto& g : j["goals"]) {
    const std::string delta =
        g["delta"].is_string() ? g["delta"].get<std::string>() : number_text(g["delta"].get<double>());
    text << std::left << std::setw(28) << g["name"].get<std::string>() << std::setw(8) << delta
         << std::setw(14) << number_text(g["likelihood"].get<double>())
         << number_text(g["posterior"].get<double>()) << "\n";
  }
  std::string steps;
  for (const auto& step : j["plan"]["steps"]) steps += (steps.empty() ? "" : ", ") + step.get<std::string>();
  text << "most likely goal: " << j["chosen"].get<std::string>() << "\n";
  text << "plan: " << (steps.empty() ? "(empty plan)" : steps) << "\n";
  emit(j, text.str());
  return kOk;
}

json Runner::check_json(const Loaded& l, const ActorGroundTruth& truth) const {
  const EmpProblem z = l.problem.emp();
  const SearchOptions s = search();
  const EmpathyReport report = check_selective_task_empathy(z, truth, s);
  const DominanceRecord dominance = assistive_dominance(z, truth, s);
  json j{{"command", "check-empathy"},
         {"problem", fs::path(l.path).filename().string()},
         {"actor", z.actor.name},
         {"selectively_task_empathetic", report.selectively_task_empathetic},
         {"inconclusive", report.inconclusive},
         {"projected_optimal_plans", plans_json(report.pi_proj_star)},
         {"actor_optimal_plans", plans_json(report.pi_act_star)},
         {"witness", optional_plan_json(report.witness)},
         {"witness_side", report.witness ? json(report.witness_side) : json(nullptr)},
         {"dominance",
          {{"empathetic_cost", optional_size(dominance.empathetic_cost)},
           {"actor_cost", optional_size(dominance.actor_cost)},
           {"dominates", dominance.dominates}}}};
  const EmprProblem r = l.problem.empr();
  if (!r.observations.empty() && !r.goals.empty()) {
    const MaximalEmpathyReport m = maximal_empathy(r, truth, s);
    json goals = json::array();
    for (const auto& g : m.goals) {
      goals.push_back({{"goal", g.name},
                       {"projected", plans_json(g.projected)},
                       {"actor", plans_json(g.actor)},
                       {"equal", g.equal}});
    }
    j["maximal_empathy"] = {{"maximally_task_empathetic", m.maximally_task_empathetic},
                            {"goals", goals}};
  }
  return j;
}

int Runner::check_empathy() {
  const Loaded l = load(opts_.problem);
  const auto truth = actor_truth(l.path, true);
  json j = check_json(l, *truth);
  j["problem"] = l.path;
  std::ostringstream text;
  const bool ok = j["selectively_task_empathetic"].get<bool>();
  text << "selectively task empathetic: " << (ok ? "yes" : "no")
       << (j["inconclusive"].get<bool>() ? " (inconclusive: plan cap reached)" : "") << "\n";
  if (!j["witness"].is_null()) {
    std::string steps;
    for (const auto& step : j["witness"]) steps += (steps.empty() ? "" : ", ") + step.get<std::string>();
    text << "witness (" << j["witness_side"].get<std::string>() << " only): " << steps << "\n";
  }
  const auto& d = j["dominance"];
  text << "empathetic cost " << (d["empathetic_cost"].is_null() ? "none" : d["empathetic_cost"].dump())
       << ", actor cost " << (d["actor_cost"].is_null() ? "none" : d["actor_cost"].dump())
       << ", dominates: " << (d["dominates"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("maximal_empathy")) {
    text << "maximally task empathetic: "
         << (j["maximal_empathy"]["maximally_task_empathetic"].get<bool>() ? "yes" : "no") << "\n";
  }
  emit(j, text.str());
  return ok ? kOk : kNegative;
}

int Runner::project_cmd() {
  const Loaded l = load(opts_.problem);
  const Agent agent = opts_.agent.empty() ? l.problem.actor : Agent{opts_.agent};
  if (std::find(l.problem.agents.begin(), l.problem.agents.end(), agent) == l.problem.agents.end()) {
    fail(kUsage, "unknown agent '" + agent.name + "'");
  }
  const ProjectedDomain d = project(l.problem.actions, l.problem.init, agent);
  std::optional<Conjunction> goal = l.problem.goal;
  const std::string text = serialize_problem(
      to_problem_file(l.problem.agents, l.problem.atoms, d.actions, d.init, goal));
  json actions = json::array();
  for (const auto& [name, a] : d.actions.actions()) actions.push_back(name);
  json j{{"command", "project"},
         {"problem", l.path},
         {"agent", agent.name},
         {"init", kb_json(d.init)},
         {"actions", actions},
         {"text", text}};
  emit(j, text);
  return kOk;
}

int Runner::validate() {
  const Loaded l = load(opts_.problem);
  const Plan plan = parse_plan(opts_.plan);
  MepProblem p;
  if (opts_.model == "actor") {
    const auto truth = actor_truth(l.path, true);
    p = actor_validation_problem(l.problem.emp(), *truth);
  } else {
    p = l.problem.mep();
  }
  const Validation v = validate_plan(p, plan, search().trace);
  json j{{"command", "validate"},
         {"problem", l.path},
         {"model", opts_.model},
         {"plan", plan_json(plan)},
         {"valid", v.ok},
         {"failed_step", optional_size(v.step)},
         {"reason", v.ok ? json(nullptr) : json(v.reason)},
         {"final_kb", v.final_kb ? kb_json(*v.final_kb) : json(nullptr)}};
  std::string text;
  if (v.ok) {
    text = "valid; final KB " + v.final_kb->render() + "\n";
  } else if (v.step) {
    text = "invalid at step " + std::to_string(*v.step) + ": " + v.reason + "\n";
  } else {
    text = "invalid: " + v.reason + "\n";
  }
  emit(j, text);
  return v.ok ? kOk : kNegative;
}

int Runner::oracle_check() {
  OracleOptions oracle;
  oracle.max_worlds = opts_.max_worlds;
  oracle.max_models = opts_.max_models;
  const std::size_t depth = opts_.depth.value_or(2);

  if (!opts_.premises.empty() || !opts_.query.empty()) {
    if (opts_.query.empty()) fail(kUsage, "--premise needs --query");
    std::vector<Formula> premises;
    for (const auto& text : opts_.premises) premises.push_back(parse_formula(text));
    const Formula query = parse_formula(opts_.query);
    Vocabulary vocab;
    for (const auto& f : premises) collect_vocabulary(f, vocab.atoms, vocab.agents);
    collect_vocabulary(query, vocab.atoms, vocab.agents);
    std::size_t kb_depth = depth;
    for (const auto& f : premises) kb_depth = std::max(kb_depth, modal_depth(f));
    kb_depth = std::max(kb_depth, modal_depth(query));
    bool consistent = true;
    bool kb_entails = false;
    try {
      const KnowledgeBase kb = KnowledgeBase::from_formulas(premises, kb_depth);
      kb_entails = kb.entails(query);
    } catch (const InconsistencyError&) {
      consistent = false;
      kb_entails = true;
    }
    const auto countermodel = find_countermodel(premises, query, vocab, oracle);
    const bool oracle_says = !countermodel.has_value();
    json premises_json = json::array();
    for (const auto& f : premises) premises_json.push_back(render(f));
    json j{{"command", "oracle-check"},
           {"premises", premises_json},
           {"query", render(query)},
           {"max_worlds", oracle.max_worlds},
           {"premises_consistent", consistent},
           {"kb_entails", kb_entails},
           {"oracle_entails", oracle_says},
           {"sound", !kb_entails || oracle_says},
           {"complete", kb_entails || !oracle_says},
           {"countermodel", nullptr}};
    if (opts_.dump_countermodel && countermodel) j["countermodel"] = json::parse(to_json(*countermodel));
    std::string text = std::string("kb entails: ") + (kb_entails ? "yes" : "no") +
                       "\noracle entails: " + (oracle_says ? "yes" : "no") + "\n";
    if (opts_.dump_countermodel && countermodel) text += "countermodel: " + to_json(*countermodel) + "\n";
    emit(j, text);
    return (kb_entails && !oracle_says) ? kNegative : kOk;
  }

  Vocabulary vocab;
  for (std::size_t i = 0; i < opts_.atoms; ++i) vocab.atoms.push_back(Atom{std::string(1, static_cast<char>('p' + i))});
  const char* names[] = {"act", "obs", "a3", "a4"};
  for (std::size_t i = 0; i < opts_.agents; ++i) vocab.agents.push_back(Agent{names[i]});
  AgreementOptions a;
  a.depth = depth;
  a.max_premises = opts_.max_premises;
  a.oracle = oracle;
  a.sample = opts_.sample;
  a.seed = opts_.seed;
  const AgreementReport r = agreement_sweep(vocab, a);
  auto case_json = [&](const AgreementCase& c) {
    json premises = json::array();
    for (const auto& p : c.premises) premises.push_back(render(p));
    json out{{"premises", premises}, {"query", render(c.query)}};
    if (opts_.dump_countermodel && c.countermodel) {
      out["countermodel"] = json::parse(to_json(*c.countermodel));
    }
    return out;
  };
  json violations = json::array();
  for (const auto& c : r.violations) violations.push_back(case_json(c));
  json incomplete = json::array();
  for (const auto& c : r.incomplete) incomplete.push_back(case_json(c));
  json atoms = json::array();
  for (const auto& at : vocab.atoms) atoms.push_back(at.name);
  json agents = json::array();
  for (const auto& ag : vocab.agents) agents.push_back(ag.name);
  json j{{"command", "oracle-check"},
         {"bounds",
          {{"atoms", atoms},
           {"agents", agents},
           {"depth", depth},
           {"max_worlds", oracle.max_worlds},
           {"max_premises", a.max_premises},
           {"sample", a.sample},
           {"seed", a.seed}}},
         {"cases", r.cases},
         {"premise_sets", r.premise_sets},
         {"models", r.models},
         {"profiles", r.profiles},
         {"sound_violations", r.violations.size()},
         {"incomplete_count", r.incomplete.size()},
         {"incompleteness_rate", r.incompleteness_rate()},
         {"violations", violations},
         {"incomplete_cases", incomplete}};
  std::ostringstream text;
  text << r.cases << " cases over " << r.premise_sets << " premise sets, " << r.models
       << " models, " << r.profiles << " truth profiles\n"
       << "soundness violations: " << r.violations.size() << "\n"
       << "incomplete cases: " << r.incomplete.size() << " (rate "
       << number_text(r.incompleteness_rate()) << ")\n";
  for (const auto& v : violations) text << "violation: " << v.dump() << "\n";
  emit(j, text.str());
  return r.violations.empty() ? kOk : kNegative;
}

int Runner::scenarios() {
  if (!fs::is_directory(opts_.dir)) fail(kUsage, "no scenario directory '" + opts_.dir + "'");
  std::vector<fs::path> problems;
  for (const auto& entry : fs::directory_iterator(opts_.dir)) {
    const std::string name = entry.path().filename().string();
    const bool eplan = entry.path().extension() == ".eplan";
    const bool actor = name.size() > 12 && name.compare(name.size() - 12, 12, ".actor.eplan") == 0;
    if (eplan && !actor) problems.push_back(entry.path());
  }
  std::sort(problems.begin(), problems.end());
  json results = json::array();
  bool all_ok = true;
  std::ostringstream text;
  for (const auto& path : problems) {
    const Loaded l = load(path.string());
    json golden{{"scenario", path.stem().string()}};
    if (l.problem.goal) {
      golden["compare"] = compare_json(l);
      if (const auto truth = actor_truth(l.path, false)) golden["check_empathy"] = check_json(l, *truth);
    }
    if (!l.problem.goals.empty()) {
      golden["recognize"] = {
          {"actor", recognize_json(l, Perspective::kActor, l.problem.beta)},
          {"observer", recognize_json(l, Perspective::kObserver, l.problem.beta)}};
    }
    const std::string rendered = golden.dump(2) + "\n";
    const fs::path golden_path = path.parent_path() / (path.stem().string() + ".golden.json");
    std::string status;
    if (opts_.regen) {
      std::ofstream(golden_path, std::ios::binary) << rendered;
      status = "written";
    } else if (!fs::is_regular_file(golden_path)) {
      status = "missing";
    } else {
      status = read_file(golden_path.string()) == rendered ? "ok" : "mismatch";
    }
    all_ok = all_ok && (status == "ok" || status == "written");
    results.push_back({{"scenario", path.stem().string()}, {"status", status}});
    text << path.stem().string() << ": " << status << "\n";
  }
  json j{{"command", "scenarios"}, {"dir", opts_.dir}, {"regenerated", opts_.regen}, {"results", results}};
  emit(j, text.str());
  return all_ok ? kOk : kNegative;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Empathetic planning toolkit", "empath"};
  app.require_subcommand(1);
  app.fallthrough();

  auto common = [&](CLI::App* sub, bool needs_problem) {
    if (needs_problem) sub->add_option("problem", o.problem, "Problem file (.eplan)")->required();
    sub->add_option("--depth", o.depth, "Belief nesting bound")->check(CLI::Range(1, 16));
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--trace", o.trace, "Print search and progression traces to stderr");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--max-nodes", o.max_nodes, "Search node budget")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Search threads")->check(CLI::Range(1, 256));
    sub->add_flag("--all-optimal", o.all_optimal, "Enumerate every optimal plan");
    sub->callback([&o, sub] { o.command = sub->get_name(); });
  };
  auto with_actor = [&](CLI::App* sub) {
    sub->add_option("--actor", o.actor_path, "Actor model (default: sibling <stem>.actor.eplan)");
  };

  common(app.add_subcommand("plan", "Optimal plans for the observer's goal"), true);
  auto* emp = app.add_subcommand("empathize", "Empathetic assistive plan");
  common(emp, true);
  auto* sym = app.add_subcommand("sympathize", "Sympathetic baseline plan");
  common(sym, true);
  auto* cmp = app.add_subcommand("compare", "Empathetic vs sympathetic vs actor-alone plans");
  common(cmp, true);
  with_actor(cmp);
  auto* rec = app.add_subcommand("recognize", "Goal posterior from observed actions");
  common(rec, true);
  rec->add_option("--beta", o.beta, "Rationality")->check(CLI::PositiveNumber);
  rec->add_option("--perspective", o.perspective, "Model to recognise in")
      ->check(CLI::IsMember({"actor", "observer"}));
  auto* chk = app.add_subcommand("check-empathy", "Selective task empathy check");
  common(chk, true);
  with_actor(chk);
  auto* prj = app.add_subcommand("project", "The actor's projected domain");
  common(prj, true);
  prj->add_option("--agent", o.agent, "Agent to project onto (default: the actor)");
  auto* val = app.add_subcommand("validate", "Check a plan against a model");
  common(val, true);
  with_actor(val);
  val->add_option("--plan", o.plan, "Steps separated by commas, e.g. \"a, look[pos], b\"")->required();
  val->add_option("--model", o.model, "Model to validate in")->check(CLI::IsMember({"observer", "actor"}));
  auto* orc = app.add_subcommand("oracle-check", "Agreement of KB entailment with the model oracle");
  common(orc, false);
  orc->add_option("--atoms", o.atoms, "Atoms in the sweep vocabulary")->check(CLI::Range(1, 4));
  orc->add_option("--agents", o.agents, "Agents in the sweep vocabulary")->check(CLI::Range(1, 4));
  orc->add_option("--max-worlds", o.max_worlds, "Largest model size")->check(CLI::Range(1, 6));
  orc->add_option("--max-premises", o.max_premises, "Largest premise set")->check(CLI::Range(0, 4));
  orc->add_option("--max-models", o.max_models, "Model enumeration budget")->check(CLI::PositiveNumber);
  orc->add_option("--sample", o.sample, "Random premise sets instead of all");
  orc->add_option("--premise", o.premises, "Premise formula (repeatable)");
  orc->add_option("--query", o.query, "Query formula");
  orc->add_flag("--dump-countermodel", o.dump_countermodel, "Include countermodels in the output");
  auto* scn = app.add_subcommand("scenarios", "Check or regenerate scenario goldens");
  common(scn, false);
  scn->add_option("--dir", o.dir, "Scenario directory");
  scn->add_flag("--regen", o.regen, "Rewrite the goldens");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return Runner(o, out, err).dispatch();
  } catch (const Exit& e) {
    return e.code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const NoSolution& e) {
    err << "no solution: " << e.what() << "\n";
    return kNegative;
  } catch (const NoGoalFeasible& e) {
    err << "no goal feasible: " << e.what() << "\n";
    return kNegative;
  } catch (const ParseError& e) {
    err << "error: " << e.span().line << ":" << e.span().column << ": " << e.detail() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace empath::cli
