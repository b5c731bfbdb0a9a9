#include "qgc/projective.hpp"

#include "qgc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qgc {

GeometryContext::GeometryContext(int n_, double kappa_, Tolerances tol_)
    : n(n_), kappa(kappa_), tol(tol_) {
  if (n < 1) throw std::invalid_argument("GeometryContext: n must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("GeometryContext: kappa must be positive");
  tol.validate();
  kappa_prime = static_cast<double>(n) * (n + 1) / kappa;
}

PureState::PureState(Cmat projector) : p_(std::move(projector)) {
  if (p_.rows() != p_.cols() || p_.rows() < 1) {
    throw std::invalid_argument("PureState: projector must be square");
  }
  if (!is_finite(p_)) throw std::invalid_argument("PureState: non-finite entries");
  if ((p_ - p_.adjoint()).norm() > 1e-10) {
    throw std::invalid_argument("PureState: projector not Hermitian");
  }
  if (std::abs(p_.trace().real() - 1.0) > 1e-10 || std::abs(p_.trace().imag()) > 1e-10) {
    throw std::invalid_argument("PureState: trace != 1");
  }
  if ((p_ * p_ - p_).norm() > 1e-10) {
    throw std::invalid_argument("PureState: projector not idempotent (rank != 1)");
  }
}

PureState PureState::from_ket(const Cvec& psi) {
  const double nrm2 = psi.squaredNorm();
  if (!(nrm2 > 0.0) || !psi.allFinite()) {
    throw std::invalid_argument("PureState::from_ket: zero or non-finite ket");
  }
  return PureState(Cmat(psi * psi.adjoint() / nrm2));
}

PureState PureState::basis_state(int n, int index) {
  if (n < 1 || index < 0 || index >= n) {
    throw std::invalid_argument("PureState::basis_state: bad dimension or index");
  }
  Cmat p = Cmat::Zero(n, n);
  p(index, index) = 1.0;
  return PureState(std::move(p));
}

PureState PureState::evolved(const Cmat& u) const {
  if (u.rows() != p_.rows() || u.cols() != p_.rows()) {
    throw std::invalid_argument("PureState::evolved: dimension mismatch");
  }
  return PureState(Cmat(u * p_ * u.adjoint()));
}

bool PureState::approx_equal(const PureState& other, double tol) const {
  return p_.rows() == other.p_.rows() && (p_ - other.p_).norm() <= tol;
}

Cmat TangentVector::canonical_generator() const {
  return complex(0, 1) * commutator(matrix, base.projector());
}

MixedState::MixedState(Cmat density) : sigma_(std::move(density)) {
  if (sigma_.rows() != sigma_.cols() || sigma_.rows() < 1) {
    throw std::invalid_argument("MixedState: density must be square");
  }
  if (!is_finite(sigma_)) throw std::invalid_argument("MixedState: non-finite entries");
  if ((sigma_ - sigma_.adjoint()).norm() > 1e-10) {
    throw std::invalid_argument("MixedState: density not Hermitian");
  }
  if (std::abs(sigma_.trace().real() - 1.0) > 1e-10 || std::abs(sigma_.trace().imag()) > 1e-10) {
    throw std::invalid_argument("MixedState: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (sigma_ + Cmat(sigma_.adjoint())));
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("MixedState: negative eigenvalue beyond tolerance");
  }
}

MixedState MixedState::maximally_mixed(int n) {
  return MixedState(Cmat(Cmat::Identity(n, n) / static_cast<double>(n)));
}

TangentVector tangent_from_generator(const Cmat& a, const PureState& p, double herm_tol) {
  if (a.rows() != p.dim() || a.cols() != p.dim()) {
    throw std::invalid_argument("tangent_from_generator: dimension mismatch");
  }
  require_hermitian(a, herm_tol, "tangent generator");
  Cmat v = complex(0, -1) * commutator(a, p.projector());
  v = 0.5 * (v + Cmat(v.adjoint()));
  return TangentVector{p, a, std::move(v)};
}

static void require_same_base(const TangentVector& u, const TangentVector& v, const char* op) {
  if (!u.base.approx_equal(v.base)) {
    throw std::invalid_argument(std::string(op) + ": tangent vectors based at different points");
  }
}

double symplectic_form(const TangentVector& u, const TangentVector& v,
                       const GeometryContext& ctx) {
  require_same_base(u, v, "symplectic_form");
  const Cmat& p = u.base.projector();
  const complex val = (p * commutator(u.generator, v.generator)).trace();
  return (complex(0, -ctx.kappa) * val).real();
}

double fubini_study_metric(const TangentVector& u, const TangentVector& v,
                           const GeometryContext& ctx) {
  require_same_base(u, v, "fubini_study_metric");
  const Cmat& p = u.base.projector();
  const Cmat cu = commutator(u.generator, p);
  const Cmat cv = commutator(v.generator, p);
  const complex val = (p * (cu * cv + cv * cu)).trace();
  return -ctx.kappa * val.real();
}

double observable_function(const Cmat& a, const PureState& p, const GeometryContext& ctx) {
  if (a.rows() != p.dim() || a.cols() != p.dim()) {
    throw std::invalid_argument("observable_function: dimension mismatch");
  }
  const double tr_ap = (a * p.projector()).trace().real();
  const double tr_a = a.trace().real();
  return ctx.kappa * tr_ap + (1.0 - ctx.kappa) / ctx.n * tr_a;
}

double state_density(const MixedState& sigma, const PureState& p, const GeometryContext& ctx) {
  if (sigma.dim() != p.dim()) {
    throw std::invalid_argument("state_density: dimension mismatch");
  }
  const double tr_sp = (sigma.density() * p.projector()).trace().real();
  return ctx.kappa_prime * tr_sp + (ctx.kappa - (ctx.n + 1)) / ctx.kappa;
}

TangentVector hamiltonian_field(const Cmat& a, const PureState& p) {
  return tangent_from_generator(a, p);
}

Cmat poisson_bracket_generator(const Cmat& a, const Cmat& b) {
  require_hermitian(a, Tolerances{}.herm_tol, "poisson generator A");
  require_hermitian(b, Tolerances{}.herm_tol, "poisson generator B");
  Cmat c = complex(0, -1) * commutator(a, b);
  return 0.5 * (c + Cmat(c.adjoint()));
}

std::vector<Cvec> haar_kets(int n, std::uint64_t seed, int count) {
  if (n < 2) throw std::invalid_argument("haar_kets: n must be at least 2");
  if (count < 1) throw std::invalid_argument("haar_kets: count must be positive");
  std::vector<Cvec> kets(static_cast<size_t>(count));
  const int nchunks = (count + kChunkSamples - 1) / kChunkSamples;
  for (int c = 0; c < nchunks; ++c) {
    GaussianStream g(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const int begin = c * kChunkSamples;
    const int end = std::min(count, begin + kChunkSamples);
    for (int k = begin; k < end; ++k) {
      Cvec psi(n);
      for (int i = 0; i < n; ++i) {
        const double re = g.next();
        const double im = g.next();
        psi(i) = complex(re, im);
      }
      kets[static_cast<size_t>(k)] = std::move(psi);
    }
  }
  return kets;
}

std::vector<PureState> haar_sample(int n, std::uint64_t seed, int count) {
  std::vector<Cvec> kets = haar_kets(n, seed, count);
  std::vector<PureState> states;
  states.reserve(kets.size());
  for (const Cvec& psi : kets) {
    states.push_back(PureState::from_ket(psi));
  }
  return states;
}

McEstimate mc_expectation(const Cmat& a, const MixedState& sigma, const GeometryContext& ctx,
                          long samples, std::uint64_t seed, ExecPolicy policy) {
  if (a.rows() != a.cols() || static_cast<int>(a.rows()) != ctx.n || sigma.dim() != ctx.n) {
    throw std::invalid_argument("mc_expectation: dimension mismatch");
  }
  require_hermitian(a, ctx.tol.herm_tol, "observable");
  if (samples < 100) throw std::invalid_argument("mc_expectation: needs at least 100 samples");

  const int n = ctx.n;
  const double tr_a = a.trace().real();
  const double obs_shift = (1.0 - ctx.kappa) / n * tr_a;
  const double den_shift = (ctx.kappa - (n + 1)) / ctx.kappa;
  const long nchunks = (samples + kChunkSamples - 1) / kChunkSamples;

  std::vector<double> sums(static_cast<size_t>(nchunks), 0.0);
  std::vector<double> sumsqs(static_cast<size_t>(nchunks), 0.0);

  // Each chunk owns an independent derived stream and accumulates in sample
  // order; the cross-chunk reduction below is serial and ordered, so thread
  // count never changes the result.
  const Cmat& sig = sigma.density();
  for_each_index(static_cast<int>(nchunks), policy, [&](int c) {
    GaussianStream g(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const long begin = static_cast<long>(c) * kChunkSamples;
    const long end = std::min(samples, begin + kChunkSamples);
    double sum = 0.0;
    double sumsq = 0.0;
    Cvec psi(n);
    for (long k = begin; k < end; ++k) {
      for (int i = 0; i < n; ++i) {
        const double re = g.next();
        const double im = g.next();
        psi(i) = complex(re, im);
      }
      const double nrm2 = psi.squaredNorm();
      const double f = ctx.kappa * (psi.dot(a * psi)).real() / nrm2 + obs_shift;
      const double rho = ctx.kappa_prime * (psi.dot(sig * psi)).real() / nrm2 + den_shift;
      const double x = f * rho;
      sum += x;
      sumsq += x * x;
    }
    sums[static_cast<size_t>(c)] = sum;
    sumsqs[static_cast<size_t>(c)] = sumsq;
  });

  double sum = 0.0;
  double sumsq = 0.0;
  for (long c = 0; c < nchunks; ++c) {
    sum += sums[static_cast<size_t>(c)];
    sumsq += sumsqs[static_cast<size_t>(c)];
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, (sumsq - static_cast<double>(samples) * mean * mean) /
                        static_cast<double>(samples - 1));
  return McEstimate{mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

double isometry_check(const Cmat& a, const PureState& p, const TangentVector& u,
                      const TangentVector& v, double t, const GeometryContext& ctx) {
  if (!u.base.approx_equal(p) || !v.base.approx_equal(p)) {
    throw std::invalid_argument("isometry_check: tangent vectors not based at p");
  }
  require_hermitian(a, ctx.tol.herm_tol, "flow generator");
  const double before = fubini_study_metric(u, v, ctx);
  const Cmat uu = matrix_exp(complex(0, -1) * a, t);
  const PureState pt = p.evolved(uu);
  const TangentVector ut = tangent_from_generator(Cmat(uu * u.generator * uu.adjoint()), pt);
  const TangentVector vt = tangent_from_generator(Cmat(uu * v.generator * uu.adjoint()), pt);
  const double after = fubini_study_metric(ut, vt, ctx);
  return std::abs(after - before);
}

}  // namespace qgc
