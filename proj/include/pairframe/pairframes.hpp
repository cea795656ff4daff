// Pair Bessels and pair frames: classification of (G, F) systems through the
// operator S(f) = sum <f, g_i> f_i, sequence-space Bessel/frame certificates,
// pairability of conjugate Bessel families, atomic decompositions and Banach
// frames w.r.t. a sequence space.

#ifndef PAIRFRAME_PAIRFRAMES_HPP
#define PAIRFRAME_PAIRFRAMES_HPP

#include "pairframe/linops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pairframe {

/// A pair system (G, F): functionals G, vectors F, and the sequence-space
/// model the coefficients are measured in (seq.dim equals the family count).
struct PairSystem {
  FrameFamily analysis_family;   // G, functionals on X
  FrameFamily synthesis_family;  // F, vectors in X
  SpaceSpec seq;
};

PairSystem make_pair_system(FrameFamily analysis, FrameFamily synthesis, double seq_p);

enum class PairVerdict { not_bessel, pair_bessel, pair_frame, schauder_frame };
const char* to_string(PairVerdict v);

/// Classification verdict with its certificates. Verdicts form a chain:
/// schauder_frame implies pair_frame implies pair_bessel. Finite systems are
/// always at least pair Bessels; not_bessel is reserved for lazy families.
struct PairClassification {
  PairVerdict verdict = PairVerdict::pair_bessel;
  DenseOperator pair_operator;
  double condition = std::numeric_limits<double>::infinity();
  double identity_residual = std::numeric_limits<double>::infinity();
  double operator_norm_2 = 0.0;
  double tol = 1e-9;
  std::vector<std::string> notes;
};

/// S = synthesis(F) o analysis(G), the pair frame operator S_FG.
DenseOperator pair_frame_operator(const PairSystem& sys);

PairClassification classify_pair(const PairSystem& sys, double tol = 1e-9);

/// Certificate for the sequence-space Bessel/frame inequalities
///   A ||f|| <= ||{<f, g_i>}||_p <= B ||f||.
struct EllBesselCert {
  double seq_p = 2.0;
  OperatorNormEstimate upper;                 // B
  std::optional<OperatorNormEstimate> lower;  // A, present for frame certificates
};

/// B = norm of the analysis operator (X, p_X) -> (l, p).
EllBesselCert ell_bessel_bound(const FrameFamily& g, double p, const AscentConfig& cfg = {});

/// Adds the lower certificate A = certified minimal gain of the analysis map.
EllBesselCert ell_frame_bounds(const FrameFamily& g, double p, const AscentConfig& cfg = {});

/// Pairability certificate: G an l^p-Bessel for X, F an l^q-Bessel for X*
/// (q conjugate), plus a sampled check of the partial-sum bound
///   || sum_{i=n}^{m} <f, g_i> f_i || <= B_F || {<f, g_i>}_{i=n}^{m} ||_p.
struct PairableCert {
  double seq_p = 2.0;
  EllBesselCert analysis_cert;   // G as l^p-Bessel for X
  EllBesselCert synthesis_cert;  // F as l^q-Bessel for X*
  double max_ratio = 0.0;        // max observed lhs / bound
  int samples = 0;
  int violations = 0;
  bool certified = false;
};

PairableCert pairable_check(const FrameFamily& g, const FrameFamily& f, double p,
                            int num_samples = 1000, std::uint64_t seed = 42,
                            const AscentConfig& cfg = {});

/// Atomic decomposition w.r.t. l^p: frame bounds for the coefficient map plus
/// the reconstruction identity S = I. An optional second exponent requests the
/// l'-Bessel certificate for F that upgrades the report to an (l, l') one.
struct AtomicDecompositionReport {
  bool ok = false;
  bool lower_ok = false;
  bool reconstruction_ok = false;
  EllBesselCert coefficient_cert;
  std::optional<EllBesselCert> synthesis_cert;
  double reconstruction_residual = std::numeric_limits<double>::infinity();
  double tol = 1e-9;
};

AtomicDecompositionReport check_atomic_decomposition(const PairSystem& sys, double p,
                                                     double tol = 1e-9,
                                                     std::optional<double> p_prime = {},
                                                     const AscentConfig& cfg = {});

/// S = T o analysis(G) for a generalized synthesis operator T : l -> X.
DenseOperator banach_pair_operator(const FrameFamily& g, const DenseOperator& t);

/// Classify (G, T): Banach pair frame iff the associated S is invertible.
PairClassification classify_banach_pair(const FrameFamily& g, const DenseOperator& t,
                                        double tol = 1e-9);

/// Banach frame check: l-frame bounds for G plus reconstruction T(U_G f) = f.
struct BanachFrameReport {
  bool ok = false;
  bool lower_ok = false;
  bool reconstruction_ok = false;
  EllBesselCert coefficient_cert;
  double reconstruction_residual = std::numeric_limits<double>::infinity();
  double tol = 1e-9;
};

BanachFrameReport banach_frame_check(const FrameFamily& g, const DenseOperator& t, double p,
                                     double tol = 1e-9, const AscentConfig& cfg = {});

}  // namespace pairframe

#endif  // PAIRFRAME_PAIRFRAMES_HPP
