#include "pairframe/hilbert.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace pairframe {

namespace {

void require_hilbert(const FrameFamily& f, const char* who) {
  if (!exponent_eq(f.space.p, 2.0)) {
    throw std::invalid_argument(std::string(who) + ": requires a p = 2 space");
  }
}

}  // namespace

DenseOperator frame_operator(const FrameFamily& f) {
  require_hilbert(f, "frame_operator");
  const SpaceSpec seq = make_space(f.count(), 2.0);
  const FrameFamily vectors = as_vectors(f);
  return compose(synthesis_operator(vectors, seq), analysis_operator(as_functionals(f), seq));
}

std::pair<double, double> frame_bounds(const FrameFamily& f) {
  const DenseOperator s = frame_operator(f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.matrix);
  const auto& ev = eig.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

bool is_frame(const FrameFamily& f, double tol) {
  return is_invertible(frame_operator(f), tol).invertible;
}

BesselReport is_bessel(const FrameFamily& f) {
  return BesselReport{true, frame_bounds(f).second};
}

SelfPairReport check_prop_self_pair(const FrameFamily& f, double tol) {
  require_hilbert(f, "check_prop_self_pair");
  SelfPairReport rep;
  rep.frame = is_frame(f, tol);
  const PairSystem self = make_pair_system(as_functionals(f), as_vectors(f), 2.0);
  const PairClassification cls = classify_pair(self, tol);
  rep.verdict = cls.verdict;
  const bool pair_frame = cls.verdict == PairVerdict::pair_frame ||
                          cls.verdict == PairVerdict::schauder_frame;
  const bool pair_bessel = cls.verdict != PairVerdict::not_bessel;
  rep.consistent = (rep.frame == pair_frame) && (is_bessel(f).bessel == pair_bessel);
  return rep;
}

}  // namespace pairframe
