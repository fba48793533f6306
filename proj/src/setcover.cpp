#include "frri/setcover.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace frri {

namespace {

struct Solver {
  const SetCoverProblem& p;
  SolveOptions opts;

  std::vector<Bitset> covers_of;     // element -> live sets covering it
  std::vector<std::size_t> forced;   // sets forced by singleton coverage
  Bitset banned;                     // over sets: removed, forced, or branch-excluded
  Bitset live;                       // elements still to cover (dominated ones dropped)
  std::vector<std::size_t> chosen;

  std::vector<std::size_t> best;     // residual selection of the incumbent
  bool have_incumbent = false;
  std::uint64_t nodes = 0;
  bool aborted = false;

  explicit Solver(const SetCoverProblem& problem, const SolveOptions& options)
      : p(problem), opts(options) {
    covers_of.assign(p.num_elements, Bitset(p.num_sets));
    for (std::size_t s = 0; s < p.num_sets; ++s)
      for (auto e = p.sets[s].find_first(); e != Bitset::npos; e = p.sets[s].find_next(e))
        covers_of[e].set(s);
    banned = Bitset(p.num_sets);
    live = Bitset(p.num_elements, true);
  }

  std::size_t gain(std::size_t s) const { return p.sets[s].and_count(live); }

  void preprocess() {
    // Dominated-set removal: drop sets contained in another set; among
    // equal sets keep the lowest index.
    std::vector<std::size_t> order(p.num_sets);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return p.sets[a].count() < p.sets[b].count();
    });
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
      const std::size_t i = order[ii];
      if (banned.test(i)) continue;
      for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
        const std::size_t j = order[jj];
        if (banned.test(j)) continue;
        if (!p.sets[i].is_subset_of(p.sets[j])) continue;
        // Equal sets sort stably, so i < j there; strict subsets drop i.
        banned.set(p.sets[i] == p.sets[j] ? j : i);
        if (banned.test(i)) break;
      }
    }
    for (auto s = banned.find_first(); s != Bitset::npos; s = banned.find_next(s))
      for (auto e = p.sets[s].find_first(); e != Bitset::npos; e = p.sets[s].find_next(e))
        covers_of[e].reset(s);

    // Singleton-coverage forcing, to a fixpoint.
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto e = live.find_first(); e != Bitset::npos; e = live.find_next(e)) {
        if (covers_of[e].count() == 1) {
          const std::size_t s = covers_of[e].find_first();
          forced.push_back(s);
          live.and_not_assign(p.sets[s]);
          banned.set(s);
          changed = true;
          break;
        }
      }
    }

    // Dominated-element removal: if every live set covering f also covers
    // e, covering f covers e for free; only f has to stay.
    std::vector<std::size_t> open;
    for (auto e = live.find_first(); e != Bitset::npos; e = live.find_next(e)) open.push_back(e);
    for (std::size_t a : open) {
      if (!live.test(a)) continue;
      for (std::size_t b : open) {
        if (a == b || !live.test(b)) continue;
        if (covers_of[b].is_subset_of(covers_of[a]) &&
            (covers_of[a] != covers_of[b] || a > b)) {
          live.reset(a);
          break;
        }
      }
    }
  }

  std::vector<std::size_t> greedy_residual() const {
    Bitset remaining = live;
    std::vector<std::size_t> picks;
    while (remaining.any()) {
      std::size_t best_set = p.num_sets, best_gain = 0;
      for (std::size_t s = 0; s < p.num_sets; ++s) {
        if (banned.test(s)) continue;
        const std::size_t g = p.sets[s].and_count(remaining);
        if (g > best_gain) {
          best_gain = g;
          best_set = s;
        }
      }
      if (best_set == p.num_sets) return {};  // residual infeasible
      picks.push_back(best_set);
      remaining.and_not_assign(p.sets[best_set]);
    }
    return picks;
  }

  // Lower bound on the number of further sets needed; early-exits at cap.
  std::size_t lower_bound(std::size_t cap) const {
    const std::size_t uncovered = live.count();
    if (uncovered == 0) return 0;
    std::size_t max_gain = 0;
    for (std::size_t s = 0; s < p.num_sets; ++s)
      if (!banned.test(s)) max_gain = std::max(max_gain, gain(s));
    if (max_gain == 0) return p.num_sets + 1;  // residual infeasible
    std::size_t lb = (uncovered + max_gain - 1) / max_gain;
    if (lb >= cap) return lb;

    // Elements with pairwise-disjoint covering sets each need their own set.
    Bitset used(p.num_sets);
    std::size_t disjoint = 0;
    for (auto e = live.find_first(); e != Bitset::npos; e = live.find_next(e)) {
      if (!covers_of[e].intersects(used)) {
        ++disjoint;
        used |= covers_of[e];
        if (disjoint >= cap) break;
      }
    }
    return std::max(lb, disjoint);
  }

  void dfs() {
    if (aborted) return;
    if (++nodes > opts.node_budget) {
      aborted = true;
      return;
    }
    if (live.none()) {
      if (!have_incumbent || chosen.size() < best.size()) {
        best = chosen;
        have_incumbent = true;
      }
      return;
    }
    const std::size_t incumbent = have_incumbent ? best.size() : p.num_sets + 1;
    if (incumbent <= chosen.size() + 1) return;
    const std::size_t cap = incumbent - chosen.size();
    if (chosen.size() + lower_bound(cap) >= incumbent) return;

    // Branch on the uncovered element with the fewest live covering sets.
    // The scan is capped; any uncovered element is a sound choice.
    std::size_t pick = Bitset::npos, pick_count = p.num_sets + 1;
    std::size_t scanned = 0;
    for (auto e = live.find_first(); e != Bitset::npos; e = live.find_next(e)) {
      const std::size_t c = covers_of[e].and_not_count(banned);
      if (c < pick_count) {
        pick_count = c;
        pick = e;
      }
      if (pick_count <= 1 || ++scanned >= 256) break;
    }
    if (pick == Bitset::npos || pick_count == 0) return;  // infeasible branch

    std::vector<std::size_t> cands;
    for (auto s = covers_of[pick].find_first(); s != Bitset::npos;
         s = covers_of[pick].find_next(s))
      if (!banned.test(s)) cands.push_back(s);
    std::stable_sort(cands.begin(), cands.end(),
                     [&](std::size_t a, std::size_t b) { return gain(a) > gain(b); });

    const Bitset saved_live = live;
    for (std::size_t i = 0; i < cands.size() && !aborted; ++i) {
      const std::size_t s = cands[i];
      chosen.push_back(s);
      live.and_not_assign(p.sets[s]);
      dfs();
      chosen.pop_back();
      live = saved_live;
      banned.set(s);  // later branches must cover `pick` without s
    }
    for (std::size_t s : cands) banned.reset(s);
  }
};

void check_feasible(const SetCoverProblem& p) {
  for (const auto& s : p.sets)
    if (s.size() != p.num_elements)
      throw std::invalid_argument("set cover: bitset width mismatch");
  if (!p.feasible())
    throw std::invalid_argument("set cover: instance is infeasible (uncovered element)");
}

}  // namespace

SetCoverProblem SetCoverProblem::from_rows(std::vector<Bitset> rows, std::size_t num_elements) {
  SetCoverProblem p;
  p.num_sets = rows.size();
  p.num_elements = num_elements;
  p.sets = std::move(rows);
  return p;
}

bool SetCoverProblem::feasible() const {
  Bitset all(num_elements);
  for (const auto& s : sets) all |= s;
  return all.count() == num_elements;
}

SetCoverSolution solve_exact(const SetCoverProblem& problem, const SolveOptions& options) {
  check_feasible(problem);
  SetCoverSolution out;
  out.selected.assign(problem.num_sets, 0);
  if (problem.num_elements == 0) {
    out.optimal = true;
    return out;
  }

  Solver solver(problem, options);
  if (options.preprocess) solver.preprocess();

  auto greedy = solver.greedy_residual();
  if (!greedy.empty() || solver.live.none()) {
    solver.best = greedy;
    solver.have_incumbent = true;
  }
  solver.dfs();

  for (std::size_t s : solver.forced) out.selected[s] = 1;
  for (std::size_t s : solver.best) out.selected[s] = 1;
  for (auto v : out.selected) out.objective += v;
  out.optimal = !solver.aborted;
  return out;
}

SetCoverSolution solve_greedy(const SetCoverProblem& problem) {
  check_feasible(problem);
  SetCoverSolution out;
  out.selected.assign(problem.num_sets, 0);
  Bitset remaining(problem.num_elements, true);
  while (remaining.any()) {
    std::size_t best_set = problem.num_sets, best_gain = 0;
    for (std::size_t s = 0; s < problem.num_sets; ++s) {
      const std::size_t g = problem.sets[s].and_count(remaining);
      if (g > best_gain) {
        best_gain = g;
        best_set = s;
      }
    }
    out.selected[best_set] = 1;
    remaining.and_not_assign(problem.sets[best_set]);
    ++out.objective;
  }

  // A cheap certificate: greedy is optimal when it meets the ceiling bound.
  std::size_t max_size = 0;
  for (const auto& s : problem.sets) max_size = std::max(max_size, s.count());
  const std::size_t lb = max_size ? (problem.num_elements + max_size - 1) / max_size : 0;
  out.optimal = out.objective == lb;
  return out;
}

void write_dimacs(std::ostream& os, const SetCoverProblem& problem) {
  os << "p setcover " << problem.num_sets << ' ' << problem.num_elements << '\n';
  for (const auto& s : problem.sets) {
    bool first = true;
    for (auto e = s.find_first(); e != Bitset::npos; e = s.find_next(e)) {
      os << (first ? "" : " ") << (e + 1);
      first = false;
    }
    os << '\n';
  }
}

}  // namespace frri
