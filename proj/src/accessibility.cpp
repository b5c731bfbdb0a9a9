#include "qgc/accessibility.hpp"

#include <cmath>
#include <stdexcept>

namespace qgc {

TangentSubspace accessibility_distribution(const LieAlgebraBasis& l, const PureState& p,
                                           const Tolerances& tol) {
  if (!l.closed) throw std::invalid_argument("accessibility_distribution: basis not closed");
  if (l.dim_hilbert != p.dim()) {
    throw std::invalid_argument("accessibility_distribution: dimension mismatch");
  }
  TangentSubspace sub{p, {}, 0};
  std::vector<Cmat> tangent_mats;
  tangent_mats.reserve(l.elements.size());
  for (const Cmat& t : l.elements) {
    // [T, p] is Hermitian and traceless for anti-Hermitian T; it equals
    // -i[A, p] for the Hermitian generator A = iT.
    Cmat v = commutator(t, p.projector());
    v = 0.5 * (v + Cmat(v.adjoint()));
    sub.spanning_vectors.push_back(TangentVector{p, Cmat(complex(0, 1) * t), v});
    tangent_mats.push_back(std::move(v));
  }
  sub.rank = real_span_rank(tangent_mats, tol);
  return sub;
}

RankConditionResult rank_condition(const LieAlgebraBasis& l, int n_samples, std::uint64_t seed,
                                   const Tolerances& tol, ExecPolicy policy) {
  if (!l.closed) throw std::invalid_argument("rank_condition: basis not closed");
  if (n_samples < 1) throw std::invalid_argument("rank_condition: n_samples must be >= 1");
  const int n = l.dim_hilbert;

  std::vector<PureState> points;
  points.reserve(static_cast<size_t>(n_samples) + 1);
  points.push_back(PureState::basis_state(n, 0));
  for (PureState& p : haar_sample(n, seed, n_samples)) {
    points.push_back(std::move(p));
  }

  RankConditionResult res;
  res.seed = seed;
  res.ranks.assign(points.size(), 0);
  for_each_index(static_cast<int>(points.size()), policy, [&](int i) {
    res.ranks[static_cast<size_t>(i)] =
        accessibility_distribution(l, points[static_cast<size_t>(i)], tol).rank;
  });

  const int target = 2 * n - 2;
  res.holds = true;
  res.min_rank = target;
  for (size_t i = 0; i < points.size(); ++i) {
    if (res.ranks[i] < res.min_rank) res.min_rank = res.ranks[i];
    if (res.ranks[i] != target && !res.witness.has_value()) {
      res.holds = false;
      res.witness = points[i];
    }
  }

  std::vector<Cmat> extended = l.elements;
  Cmat id_dir = complex(0, 1) * Cmat::Identity(n, n) / std::sqrt(static_cast<double>(n));
  extended.push_back(std::move(id_dir));
  res.algebraic_full = real_span_rank(extended, tol) == n * n;
  return res;
}

bool corollary_check(const LieAlgebraBasis& l, int trials, std::uint64_t seed,
                     const Tolerances& tol) {
  if (!l.closed) throw std::invalid_argument("corollary_check: basis not closed");
  if (trials < 0) throw std::invalid_argument("corollary_check: trials must be >= 0");
  const int n = l.dim_hilbert;
  if (phi_dimension(l, tol) != n * n - 1) return false;

  // Spot check: at random points every direction reachable by the full
  // algebra must already lie in the span of L's tangent vectors.
  const LieAlgebraBasis un = full_unitary_algebra(n);
  const int target = 2 * n - 2;
  if (trials > 0) {
    for (const PureState& p : haar_sample(n, seed, trials)) {
      std::vector<Cmat> l_tangents;
      for (const Cmat& t : l.elements) {
        l_tangents.push_back(commutator(t, p.projector()));
      }
      if (real_span_rank(l_tangents, tol) != target) return false;
      std::vector<Cmat> joint = l_tangents;
      for (const Cmat& t : un.elements) {
        joint.push_back(commutator(t, p.projector()));
      }
      if (real_span_rank(joint, tol) != target) return false;
    }
  }
  return true;
}

}  // namespace qgc
