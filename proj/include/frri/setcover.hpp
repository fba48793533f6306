#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "frri/bitset.hpp"

namespace frri {

/// Minimum set cover instance: choose the fewest sets whose union is the
/// whole element universe. Instances must be feasible (every element
/// covered by at least one set).
struct SetCoverProblem {
  std::size_t num_sets = 0;
  std::size_t num_elements = 0;
  std::vector<Bitset> sets;  // one bitset of num_elements per set

  static SetCoverProblem from_rows(std::vector<Bitset> rows, std::size_t num_elements);
  bool feasible() const;
};

struct SetCoverSolution {
  std::vector<std::uint8_t> selected;  // indicator per set
  std::size_t objective = 0;
  bool optimal = false;
};

struct SolveOptions {
  std::uint64_t node_budget = 5'000'000;
  bool preprocess = true;
};

/// Branch-and-bound exact solver with greedy upper bound, LP-free lower
/// bounds and dominance preprocessing. Returns optimal=true only when the
/// search finished within the node budget; otherwise the best incumbent.
SetCoverSolution solve_exact(const SetCoverProblem& problem, const SolveOptions& options = {});

/// Largest-uncovered-first greedy, ties to the lowest set index.
/// optimal is set only when the objective matches a proven lower bound.
SetCoverSolution solve_greedy(const SetCoverProblem& problem);

/// DIMACS-like dump: `p setcover <sets> <elems>` then one line per set
/// listing its covered elements (1-based).
void write_dimacs(std::ostream& os, const SetCoverProblem& problem);

}  // namespace frri
