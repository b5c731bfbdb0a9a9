#include "qgc/lie_engine.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgc {

namespace {

// Modified Gram-Schmidt projection with one re-orthogonalization pass.
// Returns the residual of `t` against the current orthonormal basis.
Cmat project_residual(const std::vector<Cmat>& basis, Cmat t) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Cmat& e : basis) {
      t -= hs_inner_re(e, t) * e;
    }
  }
  return t;
}

void note_near_threshold(std::vector<std::string>& diagnostics, double resid, double thr) {
  if (resid >= thr / 10.0 && resid <= thr * 10.0) {
    std::ostringstream os;
    os << "residual " << resid << " within 10x of acceptance threshold " << thr
       << "; closure dimension is numerically sensitive here";
    diagnostics.push_back(os.str());
  }
}

// Appends residual/|residual| when the residual is above threshold. Returns
// true when an element was added.
bool mgs_append(LieAlgebraBasis& basis, const Cmat& t, double thr) {
  const Cmat r = project_residual(basis.elements, t);
  const double nrm = r.norm();
  note_near_threshold(basis.diagnostics, nrm, thr);
  if (nrm <= thr) return false;
  basis.elements.push_back(r / nrm);
  return true;
}

}  // namespace

LieAlgebraBasis lie_closure(const std::vector<Cmat>& generators, const Tolerances& tol,
                            int max_dim) {
  tol.validate();
  if (generators.empty()) throw std::invalid_argument("lie_closure: empty generator list");
  const Eigen::Index n = generators.front().rows();
  double max_norm = 0.0;
  for (const Cmat& g : generators) {
    if (g.rows() != n || g.cols() != n) {
      throw std::invalid_argument("lie_closure: generator dimension mismatch");
    }
    require_anti_hermitian(g, tol.herm_tol, "lie_closure generator");
    max_norm = std::max(max_norm, g.norm());
  }
  const int full = static_cast<int>(n * n);
  if (max_dim < 0) max_dim = full;
  // residual acceptance threshold scales with the largest generator norm
  const double thr = tol.rank_tol * max_norm;

  LieAlgebraBasis basis;
  basis.dim_hilbert = static_cast<int>(n);
  for (const Cmat& g : generators) {
    if (basis.dim() >= max_dim) break;
    mgs_append(basis, g, thr);
  }

  // Breadth-first sweeps: bracket every (old, new) and (new, new) pair, adjoin
  // residuals, and repeat with the fresh elements as the next frontier. Each
  // basis pair is bracketed exactly once across sweeps.
  bool converged = false;
  size_t frontier_begin = 0;
  while (basis.dim() < max_dim) {
    const size_t frontier_end = basis.elements.size();
    bool added = false;
    for (size_t j = frontier_begin; j < frontier_end && basis.dim() < max_dim; ++j) {
      for (size_t i = 0; i < j && basis.dim() < max_dim; ++i) {
        const Cmat br = commutator(basis.elements[i], basis.elements[j]);
        added |= mgs_append(basis, br, thr);
      }
    }
    frontier_begin = frontier_end;
    if (!added) {
      converged = true;
      break;
    }
  }

  basis.closed = converged || basis.dim() == full;
  return basis;
}

bool contains(const LieAlgebraBasis& basis, const Cmat& t, const Tolerances& tol) {
  tol.validate();
  if (t.rows() != basis.dim_hilbert || t.cols() != basis.dim_hilbert) {
    throw std::invalid_argument("contains: dimension mismatch");
  }
  const Cmat r = project_residual(basis.elements, t);
  return r.norm() <= tol.rank_tol * t.norm();
}

LieAlgebraBasis full_unitary_algebra(int n) {
  if (n < 1) throw std::invalid_argument("full_unitary_algebra: n must be positive");
  LieAlgebraBasis basis;
  basis.dim_hilbert = n;
  basis.closed = true;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Cmat re = Cmat::Zero(n, n);
      re(j, k) = 1.0;
      re(k, j) = -1.0;
      basis.elements.push_back(inv_sqrt2 * re);
      Cmat im = Cmat::Zero(n, n);
      im(j, k) = complex(0, 1);
      im(k, j) = complex(0, 1);
      basis.elements.push_back(inv_sqrt2 * im);
    }
  }
  for (int j = 0; j < n; ++j) {
    Cmat d = Cmat::Zero(n, n);
    d(j, j) = complex(0, 1);
    basis.elements.push_back(std::move(d));
  }
  return basis;
}

LieAlgebraBasis centralizer(const PureState& p, const Tolerances& tol) {
  tol.validate();
  const int n = p.dim();
  const LieAlgebraBasis un = full_unitary_algebra(n);
  const int n2 = n * n;

  // Null space of the real-linear map T -> [T, P] restricted to u(n).
  Eigen::MatrixXd m(2 * n2, n2);
  for (int a = 0; a < n2; ++a) {
    m.col(a) = real_flatten(commutator(un.elements[static_cast<size_t>(a)], p.projector()));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;

  LieAlgebraBasis basis;
  basis.dim_hilbert = n;
  basis.closed = true;  // the centralizer is a subalgebra by construction
  for (Eigen::Index a = 0; a < n2; ++a) {
    const double s = a < sv.size() ? sv(a) : 0.0;
    if (smax > 0.0 && s > tol.rank_tol * smax) continue;
    Cmat t = Cmat::Zero(n, n);
    for (int b = 0; b < n2; ++b) {
      t += svd.matrixV()(b, a) * un.elements[static_cast<size_t>(b)];
    }
    t = 0.5 * (t - Cmat(t.adjoint()));
    basis.elements.push_back(std::move(t));
  }
  return basis;
}

int subspace_intersection_dim(const LieAlgebraBasis& b1, const LieAlgebraBasis& b2,
                              const Tolerances& tol) {
  if (b1.dim_hilbert != b2.dim_hilbert) {
    throw std::invalid_argument("subspace_intersection_dim: dimension mismatch");
  }
  std::vector<Cmat> combined = b1.elements;
  combined.insert(combined.end(), b2.elements.begin(), b2.elements.end());
  return b1.dim() + b2.dim() - real_span_rank(combined, tol);
}

static Cmat identity_direction(int n) {
  return Cmat(complex(0, 1) * Cmat::Identity(n, n) / std::sqrt(static_cast<double>(n)));
}

int phi_dimension(const LieAlgebraBasis& basis, const Tolerances& tol) {
  const bool has_id = contains(basis, identity_direction(basis.dim_hilbert), tol);
  return basis.dim() - (has_id ? 1 : 0);
}

KillingVerdict killing_pure_state_verdict(const LieAlgebraBasis& l, const PureState& p,
                                          const Tolerances& tol) {
  if (!l.closed) throw std::invalid_argument("killing_pure_state_verdict: basis not closed");
  if (l.dim_hilbert != p.dim()) {
    throw std::invalid_argument("killing_pure_state_verdict: dimension mismatch");
  }
  const int n = p.dim();
  const LieAlgebraBasis c = centralizer(p, tol);
  const int dim_int = subspace_intersection_dim(l, c, tol);
  // iI lies in every centralizer, so L and L n c_P share the same identity
  // component and the quotient dimensions below subtract it from both.
  const int id_in_l = contains(l, identity_direction(n), tol) ? 1 : 0;
  const int value = (l.dim() - id_in_l) - (dim_int - id_in_l);
  return KillingVerdict{value, value == 2 * n - 2};
}

ControllabilityReport analyze(const ControlSystem& system, const PureState& probe,
                              const GeometryContext& ctx) {
  if (system.n != probe.dim() || system.n != ctx.n) {
    throw std::invalid_argument("analyze: dimension mismatch between system, probe and context");
  }
  const int n = system.n;
  const LieAlgebraBasis l = lie_closure(system.algebra_generators(), ctx.tol);
  const LieAlgebraBasis c = centralizer(probe, ctx.tol);

  ControllabilityReport rep;
  rep.n = n;
  rep.dim_L = l.dim();
  rep.contains_identity_direction = contains(l, identity_direction(n), ctx.tol);
  rep.dim_centralizer_intersection = subspace_intersection_dim(l, c, ctx.tol);
  rep.operator_controllable = rep.dim_L == n * n;
  rep.pure_state_controllable = rep.dim_L - rep.dim_centralizer_intersection == 2 * n - 2;
  rep.killing_criterion_value = killing_pure_state_verdict(l, probe, ctx.tol).value;

  // Algebraic form of the rank condition: the tangent spaces are spanned
  // everywhere iff L together with the identity direction fills u(n).
  std::vector<Cmat> extended = l.elements;
  extended.push_back(identity_direction(n));
  rep.rank_condition_holds = real_span_rank(extended, ctx.tol) == n * n;

  rep.diagnostics = l.diagnostics;
  if (n % 2 == 0 && rep.dim_L == n * (n + 1) / 2) {
    rep.diagnostics.push_back(
        "dim L matches the symplectic algebra dimension n(n+1)/2; no isomorphism test is "
        "performed");
  }
  return rep;
}

ControllabilityReport analyze(const ControlSystem& system, const GeometryContext& ctx) {
  return analyze(system, PureState::basis_state(system.n, 0), ctx);
}

}  // namespace qgc
