#include "pairframe/pairframes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pairframe {

namespace {

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

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

PairSystem make_pair_system(FrameFamily analysis, FrameFamily synthesis, double seq_p) {
  if (analysis.side != Side::functionals_on_x) {
    throw std::invalid_argument("PairSystem: analysis family must consist of functionals");
  }
  if (synthesis.side != Side::vectors_in_x) {
    throw std::invalid_argument("PairSystem: synthesis family must consist of vectors");
  }
  if (analysis.count() != synthesis.count()) {
    throw std::invalid_argument("PairSystem: family counts must agree");
  }
  if (analysis.space.dim != synthesis.space.dim) {
    throw std::invalid_argument("PairSystem: ambient dimensions must agree");
  }
  if (!exponent_eq(dual_space(analysis.space).p, synthesis.space.p)) {
    throw std::invalid_argument(
        "PairSystem: the functionals must live in the dual of the synthesis family's space");
  }
  const SpaceSpec seq = make_space(analysis.count(), seq_p);
  return PairSystem{std::move(analysis), std::move(synthesis), seq};
}

const char* to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::not_bessel: return "NotBessel";
    case PairVerdict::pair_bessel: return "PairBessel";
    case PairVerdict::pair_frame: return "PairFrame";
    case PairVerdict::schauder_frame: return "SchauderFrame";
  }
  return "unknown";
}

DenseOperator pair_frame_operator(const PairSystem& sys) {
  const DenseOperator u = analysis_operator(sys.analysis_family, sys.seq);
  const DenseOperator t = synthesis_operator(sys.synthesis_family, sys.seq);
  return compose(t, u);
}

PairClassification classify_pair(const PairSystem& sys, double tol) {
  PairClassification cls;
  cls.tol = tol;
  cls.pair_operator = pair_frame_operator(sys);
  const InvertibilityReport inv = is_invertible(cls.pair_operator, tol);
  cls.condition = inv.condition;
  cls.operator_norm_2 = spectral_norm(cls.pair_operator.matrix);
  const Eigen::MatrixXd residual =
      cls.pair_operator.matrix -
      Eigen::MatrixXd::Identity(cls.pair_operator.matrix.rows(), cls.pair_operator.matrix.cols());
  cls.identity_residual = spectral_norm(residual);

  // Finite sums always converge, so a finite system is at least a pair Bessel.
  cls.verdict = PairVerdict::pair_bessel;
  if (inv.invertible) cls.verdict = PairVerdict::pair_frame;
  if (inv.invertible && cls.identity_residual <= tol) cls.verdict = PairVerdict::schauder_frame;

  cls.notes.push_back(std::string("operator 2-norm ") + format_double(cls.operator_norm_2));
  cls.notes.push_back(std::string("condition ") + format_double(cls.condition));
  cls.notes.push_back(std::string("identity residual ") + format_double(cls.identity_residual));
  return cls;
}

EllBesselCert ell_bessel_bound(const FrameFamily& g, double p, const AscentConfig& cfg) {
  const SpaceSpec seq = make_space(g.count(), p);
  const DenseOperator u = analysis_operator(g, seq);
  EllBesselCert cert;
  cert.seq_p = p;
  cert.upper = operator_norm(u, cfg);
  return cert;
}

EllBesselCert ell_frame_bounds(const FrameFamily& g, double p, const AscentConfig& cfg) {
  EllBesselCert cert = ell_bessel_bound(g, p, cfg);
  const SpaceSpec seq = make_space(g.count(), p);
  const DenseOperator u = analysis_operator(g, seq);
  cert.lower = operator_min_gain(u, cfg);
  return cert;
}

PairableCert pairable_check(const FrameFamily& g, const FrameFamily& f, double p, int num_samples,
                            std::uint64_t seed, const AscentConfig& cfg) {
  if (g.side != Side::functionals_on_x || f.side != Side::vectors_in_x) {
    throw std::invalid_argument("pairable_check: expected (functionals, vectors)");
  }
  if (g.count() != f.count()) {
    throw std::invalid_argument("pairable_check: family counts must agree");
  }
  const double q = conjugate_exponent(p);

  PairableCert cert;
  cert.seq_p = p;
  cert.analysis_cert = ell_bessel_bound(g, p, cfg);
  // F acts on X* in the reflexive model; its coefficient map lands in l^q.
  cert.synthesis_cert = ell_bessel_bound(as_functionals(f), q, cfg);

  const double bound_f = cert.synthesis_cert.upper.upper;
  const SpaceSpec ambient = dual_space(g.space);  // the X the functionals act on
  const int count = g.count();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, count - 1);
  cert.samples = num_samples;
  for (int s = 0; s < num_samples; ++s) {
    const Eigen::VectorXd fv = random_unit(ambient.dim, ambient.p, rng);
    int lo = pick(rng);
    int hi = pick(rng);
    if (lo > hi) std::swap(lo, hi);

    Eigen::VectorXd partial = Eigen::VectorXd::Zero(ambient.dim);
    Eigen::VectorXd window(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) {
      const double c = fv.dot(g.vectors[static_cast<size_t>(i)]);
      window[i - lo] = c;
      partial += c * f.vectors[static_cast<size_t>(i)];
    }
    const double lhs = p_norm(partial, ambient.p);
    const double rhs = bound_f * p_norm(window, p);
    if (lhs > rhs + 1e-9) ++cert.violations;
    if (rhs > 0.0) cert.max_ratio = std::max(cert.max_ratio, lhs / rhs);
  }
  cert.certified = cert.violations == 0;
  return cert;
}

AtomicDecompositionReport check_atomic_decomposition(const PairSystem& sys, double p, double tol,
                                                     std::optional<double> p_prime,
                                                     const AscentConfig& cfg) {
  AtomicDecompositionReport rep;
  rep.tol = tol;
  rep.coefficient_cert = ell_frame_bounds(sys.analysis_family, p, cfg);
  rep.lower_ok = rep.coefficient_cert.lower && rep.coefficient_cert.lower->lower > tol;

  const DenseOperator s = pair_frame_operator(sys);
  const Eigen::MatrixXd residual =
      s.matrix - Eigen::MatrixXd::Identity(s.matrix.rows(), s.matrix.cols());
  rep.reconstruction_residual = spectral_norm(residual);
  rep.reconstruction_ok = rep.reconstruction_residual <= tol;

  if (p_prime) {
    rep.synthesis_cert = ell_bessel_bound(as_functionals(sys.synthesis_family), *p_prime, cfg);
  }
  rep.ok = rep.lower_ok && rep.reconstruction_ok;
  return rep;
}

DenseOperator banach_pair_operator(const FrameFamily& g, const DenseOperator& t) {
  const SpaceSpec seq = make_space(g.count(), t.domain.p);
  const DenseOperator u = analysis_operator(g, seq);
  if (t.domain.dim != seq.dim) {
    throw std::invalid_argument("banach_pair_operator: T domain must match the coefficient space");
  }
  return compose(t, u);
}

PairClassification classify_banach_pair(const FrameFamily& g, const DenseOperator& t, double tol) {
  PairClassification cls;
  cls.tol = tol;
  cls.pair_operator = banach_pair_operator(g, t);
  const InvertibilityReport inv = is_invertible(cls.pair_operator, tol);
  cls.condition = inv.condition;
  cls.operator_norm_2 = spectral_norm(cls.pair_operator.matrix);
  const Eigen::MatrixXd residual =
      cls.pair_operator.matrix -
      Eigen::MatrixXd::Identity(cls.pair_operator.matrix.rows(), cls.pair_operator.matrix.cols());
  cls.identity_residual = spectral_norm(residual);
  cls.verdict = inv.invertible ? PairVerdict::pair_frame : PairVerdict::pair_bessel;
  if (inv.invertible && cls.identity_residual <= tol) cls.verdict = PairVerdict::schauder_frame;
  return cls;
}

BanachFrameReport banach_frame_check(const FrameFamily& g, const DenseOperator& t, double p,
                                     double tol, const AscentConfig& cfg) {
  if (!exponent_eq(t.domain.p, p)) {
    throw std::invalid_argument("banach_frame_check: T domain exponent must equal p");
  }
  BanachFrameReport rep;
  rep.tol = tol;
  rep.coefficient_cert = ell_frame_bounds(g, p, cfg);
  rep.lower_ok = rep.coefficient_cert.lower && rep.coefficient_cert.lower->lower > tol;

  const DenseOperator s = banach_pair_operator(g, t);
  const Eigen::MatrixXd residual =
      s.matrix - Eigen::MatrixXd::Identity(s.matrix.rows(), s.matrix.cols());
  rep.reconstruction_residual = spectral_norm(residual);
  rep.reconstruction_ok = rep.reconstruction_residual <= tol;
  rep.ok = rep.lower_ok && rep.reconstruction_ok;
  return rep;
}

}  // namespace pairframe
