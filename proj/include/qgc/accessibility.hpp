#ifndef QGC_ACCESSIBILITY_HPP
#define QGC_ACCESSIBILITY_HPP

#include "qgc/lie_engine.hpp"
#include "qgc/projective.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qgc {

/// The accessibility distribution at one point: span{[T, p] | T in L} inside
/// the tangent space at p. Rank is at most 2n - 2.
struct TangentSubspace {
  PureState base;
  std::vector<TangentVector> spanning_vectors;
  int rank = 0;
};

TangentSubspace accessibility_distribution(const LieAlgebraBasis& l, const PureState& p,
                                           const Tolerances& tol = {});

struct RankConditionResult {
  bool holds = false;                 // every sampled rank equals 2n - 2
  int min_rank = 0;
  std::optional<PureState> witness;   // first sampled point of deficient rank
  bool algebraic_full = false;        // L + span{iI} == u(n)
  std::vector<int> ranks;             // ranks in sample order (index 0 = basis point)
  std::uint64_t seed = 0;
};

/// Evaluates the distribution rank at the default basis point plus n_samples
/// unitarily-invariant random points. The algebraic equivalent is computed
/// alongside for cross-checking; point evaluations run in parallel and merge
/// in sample order.
RankConditionResult rank_condition(const LieAlgebraBasis& l, int n_samples, std::uint64_t seed,
                                   const Tolerances& tol = {},
                                   ExecPolicy policy = ExecPolicy::parallel);

/// True iff the quotient of L by the identity direction exhausts the full
/// isometry algebra (dimension n^2 - 1), spot-checked at `trials` random
/// points by comparing tangent spans against the full algebra.
bool corollary_check(const LieAlgebraBasis& l, int trials, std::uint64_t seed,
                     const Tolerances& tol = {});

}  // namespace qgc

#endif
