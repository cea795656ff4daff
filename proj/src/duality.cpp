#include "pairframe/duality.hpp"

#include <cmath>
#include <stdexcept>

namespace pairframe {

namespace {

bool is_frame_verdict(PairVerdict v) {
  return v == PairVerdict::pair_frame || v == PairVerdict::schauder_frame;
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::VectorXd random_unit(int dim, double p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  double n = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    n = p_norm(v, p);
  } while (n == 0.0);
  return v / n;
}

}  // namespace

AdjointPairCert adjoint_pair(const PairSystem& sys, double tol) {
  AdjointPairCert cert;
  // Over X* the roles swap: F supplies the coefficients, G reconstructs.
  cert.dual_system = PairSystem{as_functionals(sys.synthesis_family),
                                as_vectors(sys.analysis_family), dual_space(sys.seq)};

  const DenseOperator primal = pair_frame_operator(sys);
  const DenseOperator dual = pair_frame_operator(cert.dual_system);
  cert.transpose_residual = max_abs_diff(dual.matrix, primal.matrix.transpose());

  cert.primal_verdict = classify_pair(sys, tol).verdict;
  cert.dual_verdict = classify_pair(cert.dual_system, tol).verdict;
  cert.verdicts_agree = is_frame_verdict(cert.primal_verdict) == is_frame_verdict(cert.dual_verdict);
  return cert;
}

FrameFamily bessel_from_operator(const DenseOperator& u) {
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(static_cast<size_t>(u.matrix.rows()));
  for (Eigen::Index i = 0; i < u.matrix.rows(); ++i) {
    rows.push_back(u.matrix.row(i).transpose());
  }
  // h_i = U* eta_i is the i-th row of U, a functional on the domain of U.
  return make_family(std::move(rows), dual_space(u.domain), Side::functionals_on_x);
}

AdjointBanachCert adjoint_banach_pair(const FrameFamily& g, const DenseOperator& t, double tol) {
  const DenseOperator primal = banach_pair_operator(g, t);
  const DenseOperator u_g = analysis_operator(g, t.domain);

  AdjointBanachCert cert{bessel_from_operator(adjoint(t)),
                         adjoint(u_g),
                         DenseOperator{},
                         0.0,
                         false,
                         false};
  const DenseOperator u_h = analysis_operator(cert.dual_family, dual_space(t.domain));
  cert.dual_operator = compose(cert.dual_synthesis, u_h);
  cert.transpose_residual = max_abs_diff(cert.dual_operator.matrix, primal.matrix.transpose());
  cert.primal_frame = is_invertible(primal, tol).invertible;
  cert.dual_frame = is_invertible(cert.dual_operator, tol).invertible;
  return cert;
}

SchauderDualReport schauder_frame_dual(const PairSystem& sys, double tol) {
  SchauderDualReport rep;
  const PairClassification primal = classify_pair(sys, tol);
  if (primal.verdict != PairVerdict::schauder_frame) {
    rep.precondition_ok = false;
    rep.message = std::string("system classifies as ") + to_string(primal.verdict) +
                  ", not SchauderFrame";
    return rep;
  }
  rep.precondition_ok = true;
  const AdjointPairCert adj = adjoint_pair(sys, tol);
  const DenseOperator dual = pair_frame_operator(adj.dual_system);
  rep.residual = spectral_norm(dual.matrix -
                               Eigen::MatrixXd::Identity(dual.matrix.rows(), dual.matrix.cols()));
  rep.ok = rep.residual <= tol;
  rep.message = rep.ok ? "dual Schauder frame certified" : "dual reconstruction exceeded tolerance";
  return rep;
}

BanachDualReport banach_frame_dual(const FrameFamily& g, const DenseOperator& t, double p,
                                   double tol, int num_samples, std::uint64_t seed) {
  BanachDualReport rep;
  const BanachFrameReport primal = banach_frame_check(g, t, p, tol);
  if (!primal.ok) {
    rep.precondition_ok = false;
    rep.message = primal.reconstruction_ok ? "lower l-frame bound not certified"
                                           : "primal reconstruction T(U_G f) = f fails";
    return rep;
  }
  rep.precondition_ok = true;

  const AdjointBanachCert adj = adjoint_banach_pair(g, t, tol);
  rep.dual_family = adj.dual_family;
  const Eigen::MatrixXd& s_dual = adj.dual_operator.matrix;
  rep.residual =
      spectral_norm(s_dual - Eigen::MatrixXd::Identity(s_dual.rows(), s_dual.cols()));

  // Sampled reconstruction g = U_G*({<g, h_i>}) over unit functionals.
  std::mt19937_64 rng(seed);
  const SpaceSpec dual_x = adj.dual_operator.domain;
  for (int s = 0; s < num_samples; ++s) {
    const Eigen::VectorXd gv = random_unit(dual_x.dim, dual_x.p, rng);
    const double err = p_norm(Eigen::VectorXd(s_dual * gv - gv), dual_x.p);
    rep.max_sample_residual = std::max(rep.max_sample_residual, err);
  }
  rep.ok = rep.residual <= tol && rep.max_sample_residual <= tol;
  rep.message = rep.ok ? "dual Banach frame certified" : "dual reconstruction exceeded tolerance";
  return rep;
}

AtomicDualReport atomic_decomposition_dual(const PairSystem& sys, double p, double tol) {
  AtomicDualReport rep;
  if (p <= 1.0 || is_inf_exponent(p)) {
    rep.precondition_ok = false;
    rep.message = "duality transfer requires 1 < p < inf: the canonical vectors "
                  "do not span the dual sequence space at the endpoint exponents";
    return rep;
  }
  const double q = conjugate_exponent(p);
  const AtomicDecompositionReport primal = check_atomic_decomposition(sys, p, tol, q);
  if (!primal.ok) {
    rep.precondition_ok = false;
    rep.message = primal.reconstruction_ok ? "primal lower frame bound not certified"
                                           : "primal reconstruction S = I fails";
    return rep;
  }
  rep.precondition_ok = true;

  // Dual side: F carries the coefficients of X* into l^q, G reconstructs.
  const AdjointPairCert adj = adjoint_pair(sys, tol);
  const AtomicDecompositionReport dual =
      check_atomic_decomposition(adj.dual_system, q, tol, p);
  rep.dual_cert = dual.coefficient_cert;
  rep.residual = dual.reconstruction_residual;
  rep.ok = dual.ok;
  rep.message = rep.ok ? "dual atomic decomposition certified"
                       : (dual.lower_ok ? "dual reconstruction exceeded tolerance"
                                        : "dual lower frame bound not certified");
  return rep;
}

TransformCert transform_pair(const PairSystem& sys, const DenseOperator& v,
                             const DenseOperator& w, double tol) {
  const SpaceSpec ambient = sys.synthesis_family.space;
  if (v.domain.dim != ambient.dim || v.codomain.dim != ambient.dim ||
      w.domain.dim != ambient.dim || w.codomain.dim != ambient.dim) {
    throw std::invalid_argument("transform_pair: V and W must be operators on the ambient space");
  }

  std::vector<Eigen::VectorXd> new_g(sys.analysis_family.vectors.size());
  std::vector<Eigen::VectorXd> new_f(sys.synthesis_family.vectors.size());
  for (size_t i = 0; i < new_g.size(); ++i) {
    new_g[i] = w.matrix.transpose() * sys.analysis_family.vectors[i];  // W* g_i
    new_f[i] = v.matrix * sys.synthesis_family.vectors[i];             // V f_i
  }

  TransformCert cert{
      PairSystem{make_family(std::move(new_g), sys.analysis_family.space, Side::functionals_on_x),
                 make_family(std::move(new_f), ambient, Side::vectors_in_x), sys.seq},
      0.0, false, false, PairVerdict::pair_bessel, PairVerdict::pair_bessel, false};

  const Eigen::MatrixXd expected =
      v.matrix * pair_frame_operator(sys).matrix * w.matrix;
  cert.residual = max_abs_diff(pair_frame_operator(cert.system).matrix, expected);

  cert.v_invertible = is_invertible(v, tol).invertible;
  cert.w_invertible = is_invertible(w, tol).invertible;
  cert.primal_verdict = classify_pair(sys, tol).verdict;
  cert.transformed_verdict = classify_pair(cert.system, tol).verdict;
  cert.frame_preserved =
      is_frame_verdict(cert.primal_verdict) == is_frame_verdict(cert.transformed_verdict);
  return cert;
}

}  // namespace pairframe
