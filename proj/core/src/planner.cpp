#include "empath/planner.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "empath/errors.hpp"

namespace empath {

std::vector<std::string> Plan::action_names() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.action);
  return out;
}

std::string render(const Plan& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i) out += ", ";
    out += render(p.steps[i]);
  }
  out += ']';
  return out;
}

Plan with_outcomes(const MepProblem& p, const Plan& plan) {
  Plan out = plan;
  for (auto& step : out.steps) {
    if (step.outcome) continue;
    const Action* a = p.actions.find(step.action);
    if (a == nullptr || !is_sensing(*a)) continue;
    auto it = p.sensing_outcomes.find(step.action);
    if (it != p.sensing_outcomes.end()) step.outcome = it->second;
  }
  return out;
}

namespace {

struct Edge {
  std::size_t parent;
  PlanStep step;
};

struct Node {
  KnowledgeBase kb;
  std::size_t layer;
  std::vector<Edge> parents;
};

struct Successor {
  PlanStep step;
  KnowledgeBase kb;
  std::string key;
};

std::vector<Successor> expand(const MepProblem& p, const KnowledgeBase& kb) {
  std::vector<Successor> out;
  for (const auto& [name, action] : p.actions.actions()) {
    if (!executable(kb, action)) continue;
    PlanStep step{name, std::nullopt};
    if (is_sensing(action)) {
      auto it = p.sensing_outcomes.find(name);
      if (it == p.sensing_outcomes.end()) {
        throw ProblemError("sensing action '" + name + "' has no outcome");
      }
      step.outcome = it->second;
    }
    KnowledgeBase next = progress(kb, action, step.outcome);
    std::string key = next.key();
    out.push_back(Successor{std::move(step), std::move(next), std::move(key)});
  }
  return out;
}

// Successor lists for every node of a layer, in node order.
std::vector<std::vector<Successor>> expand_layer(const MepProblem& p,
                                                 const std::vector<Node>& nodes,
                                                 const std::vector<std::size_t>& layer,
                                                 std::size_t threads) {
  std::vector<std::vector<Successor>> out(layer.size());
  threads = std::max<std::size_t>(1, std::min(threads, layer.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < layer.size(); ++i) out[i] = expand(p, nodes[layer[i]].kb);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < layer.size(); i += threads) {
          out[i] = expand(p, nodes[layer[i]].kb);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

class PlanCollector {
 public:
  PlanCollector(const std::vector<Node>& nodes, const std::vector<std::vector<std::size_t>>& layers,
                const std::vector<std::size_t>& goals, std::size_t limit)
      : nodes_(nodes), limit_(limit), useful_(nodes.size(), false), children_(nodes.size()) {
    for (auto g : goals) useful_[g] = true;
    goal_layer_ = layers.size() - 1;
    for (std::size_t l = layers.size(); l-- > 1;) {
      for (auto id : layers[l]) {
        if (!useful_[id]) continue;
        for (const auto& e : nodes[id].parents) useful_[e.parent] = true;
      }
    }
    // Children in parent-edge creation order, which is action-name order
    // for each parent.
    for (std::size_t l = 1; l < layers.size(); ++l) {
      for (auto id : layers[l]) {
        if (!useful_[id]) continue;
        for (const auto& e : nodes[id].parents) children_[e.parent].push_back({id, e.step});
      }
    }
    for (auto& c : children_) {
      std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
        return a.second.action < b.second.action;
      });
    }
  }

  void run(std::size_t root, std::vector<Plan>& plans, bool& truncated) {
    Plan current;
    walk(root, current, plans, truncated);
  }

 private:
  bool walk(std::size_t id, Plan& current, std::vector<Plan>& plans, bool& truncated) {
    if (nodes_[id].layer == goal_layer_) {
      if (plans.size() == limit_) {
        truncated = true;
        return false;
      }
      plans.push_back(current);
      return true;
    }
    for (const auto& [child, step] : children_[id]) {
      current.steps.push_back(step);
      const bool more = walk(child, current, plans, truncated);
      current.steps.pop_back();
      if (!more) return false;
    }
    return true;
  }

  const std::vector<Node>& nodes_;
  std::size_t limit_;
  std::size_t goal_layer_ = 0;
  std::vector<bool> useful_;
  std::vector<std::vector<std::pair<std::size_t, PlanStep>>> children_;
};

}  // namespace

SearchResult solve_optimal(const MepProblem& p, const SearchOptions& opts) {
  SearchResult result;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> layers;

  nodes.push_back(Node{p.init, 0, {}});
  index.emplace(p.init.key(), 0);
  layers.push_back({0});
  result.generated = 1;
  if (p.init.entails(p.goal)) {
    result.plans.push_back(Plan{});
    return result;
  }

  const std::size_t limit = opts.all_optimal ? std::max<std::size_t>(1, opts.max_plans) : 1;
  while (true) {
    const std::vector<std::size_t>& layer = layers.back();
    const std::size_t depth = layers.size();
    if (opts.trace) {
      opts.trace("layer " + std::to_string(depth - 1) + ": " + std::to_string(layer.size()) +
                 " states");
    }
    auto successors = expand_layer(p, nodes, layer, opts.threads);
    result.expanded += layer.size();

    std::vector<std::size_t> next;
    std::vector<std::size_t> goals;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      for (auto& s : successors[i]) {
        auto it = index.find(s.key);
        if (it != index.end()) {
          Node& existing = nodes[it->second];
          if (existing.layer == depth) existing.parents.push_back(Edge{layer[i], std::move(s.step)});
          continue;
        }
        if (nodes.size() >= opts.max_nodes) {
          throw BudgetExceeded("search generated more than " + std::to_string(opts.max_nodes) +
                               " states");
        }
        const std::size_t id = nodes.size();
        const bool goal = s.kb.entails(p.goal);
        nodes.push_back(Node{std::move(s.kb), depth, {Edge{layer[i], std::move(s.step)}}});
        index.emplace(std::move(s.key), id);
        next.push_back(id);
        if (goal) goals.push_back(id);
      }
    }
    result.generated = nodes.size();
    if (next.empty()) {
      throw NoSolution("goal " + render(p.goal) + " is unreachable (" +
                       std::to_string(nodes.size()) + " states explored)");
    }
    layers.push_back(std::move(next));
    if (!goals.empty()) {
      PlanCollector collector(nodes, layers, goals, limit);
      collector.run(0, result.plans, result.truncated);
      if (!opts.all_optimal) result.truncated = false;
      return result;
    }
  }
}

Validation validate_plan(const MepProblem& p, const Plan& plan, const TraceSink& trace) {
  const Plan full = with_outcomes(p, plan);
  ProgressResult r = progress_seq(p.init, p.actions, full.steps, trace);
  Validation v;
  if (!r.defined()) {
    v.step = r.failure->step;
    v.reason = "step " + std::to_string(r.failure->step) + " (" + r.failure->action +
               "): " + r.failure->reason;
    return v;
  }
  v.final_kb = r.kb;
  if (!r.kb->entails(p.goal)) {
    v.reason = "goal " + render(p.goal) + " not entailed after the last step";
    return v;
  }
  v.ok = true;
  return v;
}

}  // namespace empath
