#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "windcert/group.hpp"
#include "windcert/matrix.hpp"
#include "windcert/voiculescu.hpp"

namespace windcert {

using TargetMap = std::function<ComplexMatrix(const GroupWord&)>;

/// Search for the nearest genuine representation to a target map over tuples
/// of unitaries, one per generator.
struct SearchProblem {
  GroupData group;                  // finite relator list required
  int dim = 1;                      // matrix dimension n
  TargetMap target;                 // unitary-valued; evaluated on support words
  std::vector<GroupWord> support;   // defaults to the cycle support set
  double penalty_weight = 10.0;     // lambda
  std::int64_t budget = 100000;     // max outer iterations
  bool polish = true;               // project the result to an exact representation
  int polish_sweeps = 1000;         // cap on joint-diagonalization sweeps
};

SearchProblem make_search_problem(const AsymptoticRep& rep, std::vector<GroupWord> support,
                                  double penalty_weight = 10.0, std::int64_t budget = 100000);

// pi extended multiplicatively over a word from one matrix per generator.
ComplexMatrix evaluate_word(const std::vector<ComplexMatrix>& generators, const GroupWord& w);

// Operator-norm scalarization:
//   max_{w in support} ||pi(w) - target(w)||_inf
//     + lambda * max_{r in relators} ||pi(r) - I||_inf.
double objective(const std::vector<UnitaryMatrix>& candidate, const SearchProblem& problem);

struct TrajectoryPoint {
  std::int64_t iteration = 0;
  double objective = 0.0;  // smooth surrogate value
};

struct PerturbationReport {
  double best_distance_inf = 0.0;   // max over support, operator norm
  double relator_defect = 0.0;      // max over relators of ||pi(r) - I||_inf
  std::int64_t iterations = 0;
  std::vector<TrajectoryPoint> trajectory;
  bool converged = false;           // stopped before budget with relator_defect <= 1e-8
  double pre_polish_distance_inf = 0.0;
  double pre_polish_relator_defect = 0.0;
  double final_objective = 0.0;     // smooth surrogate at the reported candidate
  std::uint64_t seed = 0;
};

// Local descent over the product of unitary groups.  The step direction is the
// Riemannian gradient of a squared-Frobenius surrogate of the objective, the
// step is retracted through the exponential map, and an Armijo backtracking
// line search keeps accepted steps non-increasing.  Deterministic given seed;
// seed 0 starts from target(generator) (warm start), other seeds start Haar
// random.  All reported distances are re-measured in operator norm.
PerturbationReport search(const SearchProblem& problem, std::uint64_t seed);

// Brute-force oracle for dimensions 1 and 2: minimum support distance over a
// grid of exact representations (joint eigenphases at the given resolution in
// radians; for n = 2 the conjugating unitary is sampled `conjugacy_samples`
// times, seeded).  Requires every relator to have zero exponent sums so that
// commuting phase assignments are automatically representations.
double oracle_min_distance_scalar(const SearchProblem& problem, double resolution,
                                  int conjugacy_samples = 0, std::uint64_t seed = 1);

// Jointly diagonalizes the given matrices: returns a unitary frame W chosen to
// minimize the off-diagonal energy of W* M W (Jacobi sweeps; for exactly
// commuting normal inputs the off-energy reaches rounding error).
UnitaryMatrix joint_diagonalizer(const std::vector<ComplexMatrix>& matrices, int max_sweeps);

}  // namespace windcert
