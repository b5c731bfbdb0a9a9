#include "qgc/operator_algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <stdexcept>
#include <string>

namespace qgc {

void Tolerances::validate() const {
  if (!(herm_tol > 0.0) || !(rank_tol > 0.0) || !(ode_tol > 0.0)) {
    throw std::invalid_argument("Tolerances must be strictly positive");
  }
}

bool is_finite(const Cmat& a) { return a.allFinite(); }

bool is_hermitian(const Cmat& a, double herm_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= herm_tol * scale;
}

bool is_anti_hermitian(const Cmat& a, double herm_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.norm());
  return (a + a.adjoint()).norm() <= herm_tol * scale;
}

void require_hermitian(const Cmat& a, double herm_tol, const char* what) {
  if (!is_finite(a)) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  if (!is_hermitian(a, herm_tol)) {
    throw std::invalid_argument(std::string(what) + ": not Hermitian within tolerance");
  }
}

void require_anti_hermitian(const Cmat& a, double herm_tol, const char* what) {
  if (!is_finite(a)) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  if (!is_anti_hermitian(a, herm_tol)) {
    throw std::invalid_argument(std::string(what) + ": not anti-Hermitian within tolerance");
  }
}

static void require_same_dim(const Cmat& a, const Cmat& b, const char* op) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
  }
}

Cmat commutator(const Cmat& a, const Cmat& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

complex hs_inner(const Cmat& a, const Cmat& b) {
  require_same_dim(a, b, "hs_inner");
  return (a.adjoint() * b).trace();
}

double hs_inner_re(const Cmat& a, const Cmat& b) { return hs_inner(a, b).real(); }

double frobenius_norm(const Cmat& a) { return a.norm(); }

Cmat matrix_exp(const Cmat& a, double t) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp: not square");
  if (!is_finite(a)) throw std::invalid_argument("matrix_exp: non-finite entries");
  const Eigen::Index n = a.rows();

  if (is_anti_hermitian(a)) {
    // A = -iK with K Hermitian; exp(tA) = V exp(-it diag) V^dag, exactly unitary
    // up to rounding.
    Cmat k = complex(0, 1) * a;
    k = 0.5 * (k + Cmat(k.adjoint()));
    Eigen::SelfAdjointEigenSolver<Cmat> es(k);
    Cvec phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      phases(i) = std::exp(complex(0, -t * es.eigenvalues()(i)));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
  if (is_hermitian(a)) {
    Cmat h = 0.5 * (a + Cmat(a.adjoint()));
    Eigen::SelfAdjointEigenSolver<Cmat> es(h);
    Cvec scales(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      scales(i) = std::exp(t * es.eigenvalues()(i));
    }
    return es.eigenvectors() * scales.asDiagonal() * es.eigenvectors().adjoint();
  }
  return Cmat(t * a).exp();
}

Eigen::VectorXd real_flatten(const Cmat& a) {
  const Eigen::Index n2 = a.size();
  Eigen::VectorXd v(2 * n2);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      v(k++) = a(i, j).real();
    }
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      v(k++) = a(i, j).imag();
    }
  }
  return v;
}

int real_span_rank(const std::vector<Cmat>& ops, const Tolerances& tol) {
  tol.validate();
  if (ops.empty()) return 0;
  const Eigen::Index n = ops.front().rows();
  for (const Cmat& op : ops) {
    if (op.rows() != n || op.cols() != n) {
      throw std::invalid_argument("real_span_rank: dimension mismatch");
    }
  }
  Eigen::MatrixXd m(2 * n * n, static_cast<Eigen::Index>(ops.size()));
  for (size_t k = 0; k < ops.size(); ++k) {
    m.col(static_cast<Eigen::Index>(k)) = real_flatten(ops[k]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.rank_tol * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace qgc
