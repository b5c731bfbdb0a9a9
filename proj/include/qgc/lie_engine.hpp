#ifndef QGC_LIE_ENGINE_HPP
#define QGC_LIE_ENGINE_HPP

#include "qgc/control_sim.hpp"
#include "qgc/operator_algebra.hpp"
#include "qgc/projective.hpp"

#include <string>
#include <vector>

namespace qgc {

/// Orthonormal real-linear basis of a subalgebra of u(n). `closed` is set
/// once bracket closure has been established.
struct LieAlgebraBasis {
  int dim_hilbert = 0;
  std::vector<Cmat> elements;  // anti-Hermitian, orthonormal under Re tr(A^dag B)
  bool closed = false;
  std::vector<std::string> diagnostics;  // near-threshold residual warnings

  int dim() const { return static_cast<int>(elements.size()); }
};

/// Verdicts of the controllability analysis for one system.
struct ControllabilityReport {
  int n = 0;
  int dim_L = 0;
  bool contains_identity_direction = false;
  int dim_centralizer_intersection = 0;
  bool operator_controllable = false;     // dim L == n^2
  bool pure_state_controllable = false;   // dim L - dim(L n c_P) == 2n - 2
  int killing_criterion_value = 0;        // dim phi(L) - dim phi(L n c_P)
  bool rank_condition_holds = false;      // L + span{iI} == u(n)
  std::vector<std::string> diagnostics;
};

/// Smallest Lie subalgebra of u(n) containing the generators, built by
/// sweeping brackets of (old x new, new x new) pairs and adjoining
/// orthonormalized residuals until a sweep adds nothing or the dimension
/// reaches max_dim (default n^2).
LieAlgebraBasis lie_closure(const std::vector<Cmat>& generators, const Tolerances& tol = {},
                            int max_dim = -1);

/// True iff T projects into span(basis) with residual <= rank_tol * |T|_F.
bool contains(const LieAlgebraBasis& basis, const Cmat& t, const Tolerances& tol = {});

/// Orthonormal basis of the centralizer {T in u(n) : [T, P] = 0}, computed as
/// the null space of T -> [T, P] over u(n). Its dimension is (n-1)^2 + 1.
LieAlgebraBasis centralizer(const PureState& p, const Tolerances& tol = {});

/// dim(span B1 n span B2) = dim B1 + dim B2 - rank(B1 u B2).
int subspace_intersection_dim(const LieAlgebraBasis& b1, const LieAlgebraBasis& b2,
                              const Tolerances& tol = {});

/// Orthonormal basis of all of u(n).
LieAlgebraBasis full_unitary_algebra(int n);

/// dim phi(V) = dim V - dim(V n span{iI}): the dimension of the image of V
/// under the quotient by the trivially-acting identity direction.
int phi_dimension(const LieAlgebraBasis& basis, const Tolerances& tol = {});

struct KillingVerdict {
  int value = 0;
  bool controllable = false;
};

/// Pure-state verdict through the vanishing-field route: value =
/// dim phi(L) - dim phi(L n c_P); controllable iff value == 2n - 2. Agrees
/// with dim L - dim(L n c_P) identically.
KillingVerdict killing_pure_state_verdict(const LieAlgebraBasis& l, const PureState& p,
                                          const Tolerances& tol = {});

/// Full analysis of one control system at probe state P: dynamical-algebra
/// closure, operator and pure-state verdicts, Killing criterion, and the
/// algebraic rank-condition equivalent.
ControllabilityReport analyze(const ControlSystem& system, const PureState& probe,
                              const GeometryContext& ctx);
ControllabilityReport analyze(const ControlSystem& system, const GeometryContext& ctx);

}  // namespace qgc

#endif
