// Matrix-backed bounded operators between SpaceSpecs: analysis and synthesis
// operators of vector families, adjoints, induced-norm certification and
// invertibility checks.

#ifndef PAIRFRAME_LINOPS_HPP
#define PAIRFRAME_LINOPS_HPP

#include "pairframe/spaces.hpp"

#include <cstdint>
#include <vector>

namespace pairframe {

/// Which side of the duality a family lives on.
enum class Side { vectors_in_x, functionals_on_x };

/// An ordered finite family of vectors sharing one space.
///
/// `space` is the space the family's own coordinates inhabit. A family of
/// functionals acts on dual_space(space); in the reflexive l^p model a family
/// of vectors can be reinterpreted as functionals on the dual and vice versa.
struct FrameFamily {
  std::vector<Eigen::VectorXd> vectors;
  SpaceSpec space;
  Side side = Side::vectors_in_x;

  int count() const { return static_cast<int>(vectors.size()); }
};

FrameFamily make_family(std::vector<Eigen::VectorXd> vectors, const SpaceSpec& space, Side side);

/// Reinterpret a family across the (reflexive) duality: the coordinates are
/// unchanged, only the role flips.
FrameFamily as_functionals(const FrameFamily& f);
FrameFamily as_vectors(const FrameFamily& f);

FrameFamily permute_family(const FrameFamily& f, const PermutationSpec& sigma);
FrameFamily scale_family(const FrameFamily& f, double alpha);

/// Rows-by-columns matrix with explicit domain/codomain specs.
struct DenseOperator {
  Eigen::MatrixXd matrix;
  SpaceSpec domain;
  SpaceSpec codomain;
};

DenseOperator make_operator(Eigen::MatrixXd m, const SpaceSpec& domain, const SpaceSpec& codomain);
DenseOperator identity_operator(const SpaceSpec& s);

/// U with rows g_i^T: maps f to the coefficient sequence {<f, g_i>}.
/// Requires a family of functionals and seq.dim == count.
DenseOperator analysis_operator(const FrameFamily& g, const SpaceSpec& seq);

/// T with columns f_i: maps a coefficient sequence {c_i} to sum c_i f_i.
/// Requires a family of vectors and seq.dim == count.
DenseOperator synthesis_operator(const FrameFamily& f, const SpaceSpec& seq);

/// Transpose, typed between the dual specs:
/// <A f, g> = <f, adjoint(A) g> for all f, g.
DenseOperator adjoint(const DenseOperator& a);

VectorX apply(const DenseOperator& a, const VectorX& v);

/// a after b (matrix product a.matrix * b.matrix) with spec propagation.
DenseOperator compose(const DenseOperator& a, const DenseOperator& b);

// ----- induced operator norms ------------------------------------------------

enum class NormMethod { exact_svd, exact_col, exact_row, sampled };
const char* to_string(NormMethod m);

/// Certified interval for an induced norm (or minimal gain). Exact methods
/// carry lower == upper; the sampled method pairs the best value found by
/// multi-start projected ascent with a valid analytic upper bound.
struct OperatorNormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  NormMethod method = NormMethod::sampled;
  std::uint64_t seed = 0;
};

/// Multi-start projected ascent/descent configuration. The p = 2 endpoints
/// additionally run a Rayleigh-quotient polish from the best iterate, which
/// the plain normalized-gradient steps need near clustered singular values.
struct AscentConfig {
  int starts = 32;
  int max_iters = 500;
  double improve_tol = 1e-10;
  int polish_rounds = 8;
  long max_evaluations = std::numeric_limits<long>::max();
  std::uint64_t seed = 42;
};

/// Induced norm of A from (domain.dim, domain.p) to (codomain.dim, codomain.p).
/// Exact for p_in = p_out = 2 (largest singular value), p_in = 1 (column
/// rule) and p_out = inf (row rule); otherwise a certified interval.
OperatorNormEstimate operator_norm(const DenseOperator& a, const AscentConfig& cfg = {});

/// Force the sampled path even when a closed form exists (ascent oracle).
OperatorNormEstimate operator_norm_ascent(const DenseOperator& a, const AscentConfig& cfg = {});

/// Minimal gain inf_{||v||=1} ||A v||: exact for 2 -> 2 (smallest singular
/// value, zero for a wide matrix); otherwise [certified lower, best found].
OperatorNormEstimate operator_min_gain(const DenseOperator& a, const AscentConfig& cfg = {});

/// A unit vector found by projected ascent (descent) together with its gain.
struct GainSample {
  double value = 0.0;
  Eigen::VectorXd argvec;
  long evaluations = 0;
};

GainSample max_gain_search(const DenseOperator& a, const AscentConfig& cfg = {});
GainSample min_gain_search(const DenseOperator& a, const AscentConfig& cfg = {});

struct InvertibilityReport {
  bool invertible = false;
  double condition = std::numeric_limits<double>::infinity();
};

/// Invertibility by relative singular-value threshold
/// (smallest > tol * largest); the verdict is norm-independent.
InvertibilityReport is_invertible(const DenseOperator& a, double tol = 1e-9);

/// Largest singular value (spectral norm) of a raw matrix.
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace pairframe

#endif  // PAIRFRAME_LINOPS_HPP
