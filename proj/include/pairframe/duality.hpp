// Adjoint (conjugate) pair frames for the dual space: the swapped system over
// the dual specs, Bessel families extracted from bounded coefficient maps,
// adjoints of Banach pair systems, and operator transforms of pair systems.

#ifndef PAIRFRAME_DUALITY_HPP
#define PAIRFRAME_DUALITY_HPP

#include "pairframe/pairframes.hpp"

#include <string>

namespace pairframe {

/// The swapped system (F, G) over the dual space, certified against the
/// transpose identity: its pair operator equals the transpose of the primal.
struct AdjointPairCert {
  PairSystem dual_system;
  double transpose_residual = 0.0;  // max-entry gap against the transpose
  PairVerdict primal_verdict = PairVerdict::pair_bessel;
  PairVerdict dual_verdict = PairVerdict::pair_bessel;
  bool verdicts_agree = false;
};

AdjointPairCert adjoint_pair(const PairSystem& sys, double tol = 1e-9);

/// The family H = {h_i} with h_i the i-th row of U, so that the coefficient
/// map of H is exactly U. Its l-Bessel bound equals ||U||.
FrameFamily bessel_from_operator(const DenseOperator& u);

/// Adjoint of a Banach pair system (G, T): the family H extracted from T* and
/// the dual pair operator U_G* U_H, certified against the transpose of T U_G.
struct AdjointBanachCert {
  FrameFamily dual_family;       // H, functionals on X*
  DenseOperator dual_synthesis;  // U_G*, the dual system's synthesis map
  DenseOperator dual_operator;   // U_G* U_H
  double transpose_residual = 0.0;
  bool primal_frame = false;
  bool dual_frame = false;
};

AdjointBanachCert adjoint_banach_pair(const FrameFamily& g, const DenseOperator& t,
                                      double tol = 1e-9);

/// Dual Schauder-frame certificate: precondition failures are reported.
struct SchauderDualReport {
  bool precondition_ok = false;
  std::string message;
  double residual = std::numeric_limits<double>::infinity();
  bool ok = false;
};

SchauderDualReport schauder_frame_dual(const PairSystem& sys, double tol = 1e-9);

/// Dual Banach-frame certificate: H from T*, reconstruction through U_G*.
struct BanachDualReport {
  bool precondition_ok = false;
  std::string message;
  FrameFamily dual_family;
  double residual = std::numeric_limits<double>::infinity();
  double max_sample_residual = 0.0;
  bool ok = false;
};

BanachDualReport banach_frame_dual(const FrameFamily& g, const DenseOperator& t, double p,
                                   double tol = 1e-9, int num_samples = 64,
                                   std::uint64_t seed = 42);

/// Dual atomic decomposition: frame bounds for F over the dual pair of
/// sequence spaces plus the transposed reconstruction. Requires 1 < p < inf,
/// where both l^p and its dual are spanned by the canonical vectors.
struct AtomicDualReport {
  bool precondition_ok = false;
  std::string message;
  std::optional<EllBesselCert> dual_cert;
  double residual = std::numeric_limits<double>::infinity();
  bool ok = false;
};

AtomicDualReport atomic_decomposition_dual(const PairSystem& sys, double p, double tol = 1e-9);

/// The transformed system ({W* g_i}, {V f_i}) with operator V S W. Invertible
/// V and W preserve the pair-frame property in both directions.
struct TransformCert {
  PairSystem system;
  double residual = 0.0;  // max-entry gap between its operator and V S W
  bool v_invertible = false;
  bool w_invertible = false;
  PairVerdict primal_verdict = PairVerdict::pair_bessel;
  PairVerdict transformed_verdict = PairVerdict::pair_bessel;
  bool frame_preserved = false;  // meaningful when both transforms invertible
};

TransformCert transform_pair(const PairSystem& sys, const DenseOperator& v,
                             const DenseOperator& w, double tol = 1e-9);

}  // namespace pairframe

#endif  // PAIRFRAME_DUALITY_HPP
