#include "empath/oracle_check.hpp"

#include <map>
#include <random>

#include "empath/errors.hpp"

namespace empath {

std::vector<CanonicalRML> enumerate_rmls(const Vocabulary& vocab, std::size_t depth) {
  std::vector<CanonicalRML> out;
  std::vector<std::vector<ModalStep>> prefixes{{}};
  for (std::size_t len = 0; len <= depth; ++len) {
    std::vector<std::vector<ModalStep>> next;
    for (const auto& pre : prefixes) {
      for (const auto& atom : vocab.atoms) {
        for (bool positive : {true, false}) out.push_back(CanonicalRML{pre, Literal{atom, positive}});
      }
      if (len == depth) continue;
      for (const auto& agent : vocab.agents) {
        if (!pre.empty() && pre.back().agent == agent) continue;
        for (Sign s : {Sign::kPositive, Sign::kNegative}) {
          auto longer = pre;
          longer.push_back(ModalStep{agent, s});
          next.push_back(std::move(longer));
        }
      }
    }
    prefixes = std::move(next);
  }
  return out;
}

namespace {

bool conflict_free(const std::vector<CanonicalRML>& grid, const std::vector<std::size_t>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || conflict(grid[set[i]], grid[set[j]])) return false;
    }
  }
  return true;
}

// All strictly increasing index tuples of length <= k.
void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    out.push_back(cur);
    if (cur.size() == k) return;
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

AgreementReport agreement_sweep(const Vocabulary& vocab, const AgreementOptions& opts) {
  const auto grid = enumerate_rmls(vocab, opts.depth);
  std::map<CanonicalRML, std::size_t> index;
  std::vector<Formula> formulas;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    index.emplace(grid[i], i);
    formulas.push_back(to_formula(grid[i]));
  }
  const ProfileIndex profiles(formulas, vocab, opts.oracle);

  std::vector<std::vector<std::size_t>> sets;
  if (opts.sample == 0) {
    combinations(grid.size(), opts.max_premises, sets);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> size(0, opts.max_premises);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    for (std::size_t i = 0; i < opts.sample; ++i) {
      std::vector<std::size_t> s(size(rng));
      for (auto& x : s) x = pick(rng);
      sets.push_back(std::move(s));
    }
  }

  AgreementReport report;
  report.models = profiles.models_visited();
  report.profiles = profiles.profile_count();
  for (const auto& set : sets) {
    if (!conflict_free(grid, set)) continue;
    ++report.premise_sets;
    KnowledgeBase kb(opts.depth);
    std::vector<CanonicalRML> premises;
    for (auto i : set) {
      kb = kb.tell(grid[i]);
      premises.push_back(grid[i]);
    }
    for (std::size_t q = 0; q < grid.size(); ++q) {
      ++report.cases;
      std::vector<std::size_t> refute = set;
      refute.push_back(index.at(negate(grid[q])));
      auto model = profiles.witness(refute);
      const bool syntactic = kb.entails(grid[q]);
      if (syntactic && model) {
        report.violations.push_back(AgreementCase{premises, grid[q], std::move(model)});
      } else if (!syntactic && !model) {
        report.incomplete.push_back(AgreementCase{premises, grid[q], std::nullopt});
      }
    }
  }
  return report;
}

}  // namespace empath
