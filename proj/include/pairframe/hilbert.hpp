// The Hilbert-space case p = 2: classical frames and Bessel sequences, the
// frame operator S f = sum <f, f_i> f_i, eigenvalue frame bounds, and the
// equivalence between frames and self-paired pair frames.

#ifndef PAIRFRAME_HILBERT_HPP
#define PAIRFRAME_HILBERT_HPP

#include "pairframe/pairframes.hpp"

namespace pairframe {

/// S = synthesis(F) o analysis(F); symmetric positive semidefinite.
/// Requires a family in a p = 2 space.
DenseOperator frame_operator(const FrameFamily& f);

/// (A, B) = extreme eigenvalues of the frame operator. F is a frame iff
/// A is bounded away from zero; every finite family is Bessel with bound B.
std::pair<double, double> frame_bounds(const FrameFamily& f);

bool is_frame(const FrameFamily& f, double tol = 1e-9);

struct BesselReport {
  bool bessel = true;  // finite families always are
  double bound = 0.0;
};

BesselReport is_bessel(const FrameFamily& f);

/// Checks that the Hilbert verdicts agree with the pair classification of the
/// self-pair (F, F): frame iff pair frame, Bessel iff at least pair Bessel.
struct SelfPairReport {
  bool consistent = false;
  bool frame = false;
  PairVerdict verdict = PairVerdict::pair_bessel;
};

SelfPairReport check_prop_self_pair(const FrameFamily& f, double tol = 1e-9);

}  // namespace pairframe

#endif  // PAIRFRAME_HILBERT_HPP
