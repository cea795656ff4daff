// Finite-dimensional models of the sequence spaces l^p (1 <= p <= inf) and
// their duals: norms, the bilinear duality bracket, conjugate exponents,
// canonical vectors and coordinate permutations.

#ifndef PAIRFRAME_SPACES_HPP
#define PAIRFRAME_SPACES_HPP

#include <Eigen/Dense>

#include <limits>
#include <random>
#include <string>
#include <vector>

namespace pairframe {

/// Exponent value standing for p = infinity (max norm).
inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

inline bool is_inf_exponent(double p) { return std::isinf(p) && p > 0; }

/// Exponent equality up to representation noise (conjugation round trips).
bool exponent_eq(double a, double b);

/// A finite-dimensional model of l^p: dimension plus norm exponent.
struct SpaceSpec {
  int dim = 0;
  double p = 2.0;
};

SpaceSpec make_space(int dim, double p);
bool operator==(const SpaceSpec& a, const SpaceSpec& b);
inline bool operator!=(const SpaceSpec& a, const SpaceSpec& b) { return !(a == b); }
std::string describe(const SpaceSpec& s);

/// A coordinate vector tagged with the space it lives in.
struct VectorX {
  Eigen::VectorXd coords;
  SpaceSpec space;
};

VectorX make_vector(Eigen::VectorXd coords, const SpaceSpec& space);

/// p-norm of a raw coordinate vector. Scaled to avoid overflow for large p.
double p_norm(const Eigen::VectorXd& v, double p);

double norm(const VectorX& v);

/// Bilinear duality bracket <f, g> = sum f_i g_i. Throws on dimension mismatch.
double dual_pairing(const VectorX& f, const VectorX& g);

/// q with 1/p + 1/q = 1; q(1) = inf, q(inf) = 1. Throws for p < 1.
double conjugate_exponent(double p);

/// Dual space model: same dimension, conjugate exponent.
SpaceSpec dual_space(const SpaceSpec& s);

/// Kronecker vector delta_i (0-based index). Throws when out of range.
VectorX canonical_vector(int i, const SpaceSpec& s);

/// Every l^p model is permutation-invariant, so this is identically true;
/// callers use it to gate the automatic-unconditionality shortcut.
bool is_unconditional_space(const SpaceSpec& s);

// ----- permutations ---------------------------------------------------------

/// A permutation of indices: an explicit bijection of {0..n-1} extended by the
/// identity, the reversal of an initial segment, or a lazy block interleaving
/// of the two index parities (used to bias sign patterns in rearrangements).
class PermutationSpec {
 public:
  static PermutationSpec identity(int n);
  static PermutationSpec from_map(std::vector<int> map);
  static PermutationSpec reversal(int n);
  static PermutationSpec block_interleave(int odd_run, int even_run);
  static PermutationSpec random(int n, std::mt19937_64& rng);

  /// Index placed at position k (0-based).
  int apply(int k) const;
  int inverse_apply(int index) const;

  bool is_finite_support() const { return kind_ != Kind::block; }
  int support() const { return n_; }
  std::string describe() const;

 private:
  enum class Kind { explicit_map, reversal, block };
  Kind kind_ = Kind::explicit_map;
  std::vector<int> map_;
  int n_ = 0;
  int odd_run_ = 2;
  int even_run_ = 1;
};

/// Coordinates rearranged so that result[k] = v[sigma.apply(k)].
Eigen::VectorXd permute(const Eigen::VectorXd& v, const PermutationSpec& sigma);

}  // namespace pairframe

#endif  // PAIRFRAME_SPACES_HPP
