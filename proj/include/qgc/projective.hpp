#ifndef QGC_PROJECTIVE_HPP
#define QGC_PROJECTIVE_HPP

#include "qgc/operator_algebra.hpp"
#include "qgc/parallel.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qgc {

/// Parameters of the phase-space structure on projective Hilbert space.
/// kappa scales the symplectic form and metric; kappa_prime = n(n+1)/kappa
/// enters the density map.
struct GeometryContext {
  int n = 2;
  double kappa = 1.0;
  double kappa_prime = 3.0;
  Tolerances tol{};

  GeometryContext() = default;
  GeometryContext(int n_, double kappa_ = 1.0, Tolerances tol_ = {});
};

/// A point of projective Hilbert space, stored as its rank-1 orthogonal
/// projector. Construction enforces Hermiticity, unit trace and idempotence
/// to 1e-10.
class PureState {
 public:
  explicit PureState(Cmat projector);

  static PureState from_ket(const Cvec& psi);
  /// diag(1, 0, ..., 0) shifted to position `index`.
  static PureState basis_state(int n, int index = 0);

  const Cmat& projector() const { return p_; }
  int dim() const { return static_cast<int>(p_.rows()); }

  /// U p U^dag for unitary (or near-unitary) U.
  PureState evolved(const Cmat& u) const;

  bool approx_equal(const PureState& other, double tol = 1e-10) const;

 private:
  Cmat p_;
};

/// A tangent vector v = -i[A, p] at p, together with one generator A that
/// realizes it. The value determines the generator only up to operators
/// commuting with p; canonical_generator() removes that ambiguity.
struct TangentVector {
  PureState base;
  Cmat generator;  // Hermitian representative A
  Cmat matrix;     // v = -i[A, p]; Hermitian, traceless, block off-diagonal

  bool approx_zero(double tol = 1e-10) const { return matrix.norm() <= tol; }
  /// The unique purely off-diagonal generator: i[v, p].
  Cmat canonical_generator() const;
};

/// Density matrix wrapper: Hermitian, unit trace, eigenvalues >= -1e-10.
class MixedState {
 public:
  explicit MixedState(Cmat density);
  static MixedState maximally_mixed(int n);

  const Cmat& density() const { return sigma_; }
  int dim() const { return static_cast<int>(sigma_.rows()); }

 private:
  Cmat sigma_;
};

TangentVector tangent_from_generator(const Cmat& a, const PureState& p,
                                     double herm_tol = Tolerances{}.herm_tol);

/// Symplectic form omega_p(u, v) = -i kappa tr(p [A_u, A_v]).
/// The argument ordering inside the bracket is fixed so that Hamilton's
/// condition omega_p(X_f, w) = df_p(w) holds with X_f(p) = -i[A, p]; the
/// value is independent of the generator representatives.
double symplectic_form(const TangentVector& u, const TangentVector& v,
                       const GeometryContext& ctx);

/// Fubini-Study metric
/// g_p(u, v) = -kappa tr(p ([A_u,p][A_v,p] + [A_v,p][A_u,p])).
double fubini_study_metric(const TangentVector& u, const TangentVector& v,
                           const GeometryContext& ctx);

/// Phase-space observable f_A(p) = kappa tr(A p) + (1 - kappa)/n tr(A).
double observable_function(const Cmat& a, const PureState& p, const GeometryContext& ctx);

/// Phase-space density rho_sigma(p) = kappa' tr(sigma p) + (kappa - (n+1))/kappa.
/// May be negative for small kappa; no clamping is applied.
double state_density(const MixedState& sigma, const PureState& p, const GeometryContext& ctx);

/// Hamiltonian vector field of f_A evaluated at p: X_{f_A}(p) = -i[A, p].
TangentVector hamiltonian_field(const Cmat& a, const PureState& p);

/// Generator of the Poisson bracket: {f_A, f_B} = f_C with C = -i[A, B].
Cmat poisson_bracket_generator(const Cmat& a, const Cmat& b);

/// Unitarily invariant sample of pure states: normalized complex-Gaussian
/// kets, deterministic given the seed (chunked streams, see rng.hpp).
std::vector<PureState> haar_sample(int n, std::uint64_t seed, int count);

/// The same ket stream haar_sample projects from; exposed so Monte-Carlo
/// kernels can evaluate quadratic forms without building projectors.
std::vector<Cvec> haar_kets(int n, std::uint64_t seed, int count);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Monte-Carlo estimate of int f_A rho_sigma dnu over haar_sample states.
/// Parallel and serial runs are bit-identical (fixed chunking, ordered
/// reduction).
McEstimate mc_expectation(const Cmat& a, const MixedState& sigma, const GeometryContext& ctx,
                          long samples, std::uint64_t seed,
                          ExecPolicy policy = ExecPolicy::parallel);

/// |g_{p(t)}(u(t), v(t)) - g_p(u, v)| under the flow p -> e^{-iAt} p e^{iAt}
/// with generators conjugated along; zero to rounding for every observable A,
/// since Hamiltonian flows of observables are isometries of g.
double isometry_check(const Cmat& a, const PureState& p, const TangentVector& u,
                      const TangentVector& v, double t, const GeometryContext& ctx);

}  // namespace qgc

#endif
