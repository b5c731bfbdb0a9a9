#ifndef QGC_OPERATOR_ALGEBRA_HPP
#define QGC_OPERATOR_ALGEBRA_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qgc {

using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;
using complex = std::complex<double>;

/// Numerical tolerances shared across the analysis pipeline.
struct Tolerances {
  double herm_tol = 1e-10;  ///< relative Hermiticity / anti-Hermiticity bound
  double rank_tol = 1e-9;   ///< relative singular-value cutoff for span ranks
  double ode_tol = 1e-8;    ///< flow-comparison bound for the integrated dynamics

  void validate() const;
};

bool is_finite(const Cmat& a);
bool is_hermitian(const Cmat& a, double herm_tol = Tolerances{}.herm_tol);
bool is_anti_hermitian(const Cmat& a, double herm_tol = Tolerances{}.herm_tol);

/// Throws std::invalid_argument unless `a` is Hermitian within the relative bound.
void require_hermitian(const Cmat& a, double herm_tol = Tolerances{}.herm_tol,
                       const char* what = "operator");
void require_anti_hermitian(const Cmat& a, double herm_tol = Tolerances{}.herm_tol,
                            const char* what = "operator");

/// AB - BA. Anti-Hermitian inputs give an anti-Hermitian result.
Cmat commutator(const Cmat& a, const Cmat& b);

/// Hilbert-Schmidt inner product tr(A^dag B). Its real part is the inner
/// product used for all orthonormalization and rank computations.
complex hs_inner(const Cmat& a, const Cmat& b);
double hs_inner_re(const Cmat& a, const Cmat& b);

double frobenius_norm(const Cmat& a);

/// exp(t A). (Anti-)Hermitian inputs go through a unitary eigendecomposition,
/// anything else through scaling-and-squaring with a Pade approximant; for
/// anti-Hermitian A the result is unitary to rounding.
Cmat matrix_exp(const Cmat& a, double t = 1.0);

/// Flattens A into the real vector [vec(Re A); vec(Im A)] of length 2 n^2.
Eigen::VectorXd real_flatten(const Cmat& a);

/// Numerical rank of the real-linear span of `ops`: singular values of the
/// stacked real vectorizations above rank_tol times the largest one.
/// An empty list has rank 0.
int real_span_rank(const std::vector<Cmat>& ops, const Tolerances& tol = {});

}  // namespace qgc

#endif
