// Numerical surrogate for unconditional convergence of pair expansions:
// lazily generated infinite families with summable decay envelopes, truncated
// partial sums under sampled and adversarial rearrangements, subseries
// convergence probes, and permuted analysis-norm checks for finite families.

#ifndef PAIRFRAME_UNCONDITIONAL_HPP
#define PAIRFRAME_UNCONDITIONAL_HPP

#include "pairframe/pairframes.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pairframe {

/// A generator-defined infinite pair family (g_i, f_i)_{i>=0} with a decay
/// envelope dominating ||f_i|| * ||g_i||. envelope_tail(k) must return
/// sum_{i>k} envelope(i), or +inf when the envelope sum diverges; it is the
/// rigorous part of every certificate.
struct LazyFamily {
  std::function<std::pair<Eigen::VectorXd, Eigen::VectorXd>(int)> generator;  // (g_i, f_i)
  std::function<double(int)> envelope;
  std::function<double(int)> envelope_tail;
  SpaceSpec ambient;
};

/// View a finite pair system as a lazy family (zero envelope beyond count).
LazyFamily lazy_from_system(const PairSystem& sys);

/// f_i = ratio^(i+1) e_{axis(i)}, g_i = e_{axis(i)}, axis alternating;
/// envelope ratio^(i+1), absolutely summable.
LazyFamily geometric_family(const SpaceSpec& ambient, double ratio = 0.5);

/// g_i = e_1, f_i = ((-1)^(i+1) / (i+1)) e_1 (0-based i); envelope 1/(i+1),
/// a divergent-envelope, conditionally convergent family.
LazyFamily alternating_harmonic_family(const SpaceSpec& ambient);

/// sum_{k=0}^{m-1} <f, g_{sigma(k)}> f_{sigma(k)}.
VectorX permuted_partial_sum(const LazyFamily& fam, const VectorX& f, const PermutationSpec& sigma,
                             int m);

enum class UncondVerdict { unconditional_certified, conditional_detected, inconclusive };
const char* to_string(UncondVerdict v);

/// Divergence/rearrangement evidence: the offending order or subseries, the
/// two stabilized values and their gap.
struct ConvergenceWitness {
  enum class Kind { rearrangement, subseries } kind = Kind::rearrangement;
  std::string description;
  PermutationSpec perm;             // rearrangement witnesses
  std::vector<int> subseries;       // subseries witnesses (kept indices)
  double drift = 0.0;
  double reference_value = 0.0;
  double witness_value = 0.0;
};

struct UncondConfig {
  int truncation = 512;
  int num_perms = 64;
  int num_subseries = 64;
  double tol = 1e-10;
  std::uint64_t seed = 42;
};

struct ConvergenceVerdict {
  UncondVerdict verdict = UncondVerdict::inconclusive;
  std::optional<ConvergenceWitness> witness;
  int truncation = 0;
  double tail_bound = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::string detail;
};

/// Certification: when the envelope tail beyond the truncation is below tol,
/// every sampled rearrangement and subseries must stay within tol + tail of
/// the reference limit. Detection: two stabilized rearranged sums separated
/// beyond their combined oscillation, or a subseries whose dyadic increments
/// refuse to shrink. Anything else is Inconclusive.
ConvergenceVerdict test_unconditional(const LazyFamily& fam, const VectorX& f,
                                      const UncondConfig& cfg = {});

/// Re-evaluate a witness from its stored description; used to confirm that
/// detection evidence is reproducible.
double recompute_witness_drift(const LazyFamily& fam, const VectorX& f,
                               const ConvergenceWitness& witness, int truncation);

/// Permutation invariance of the analysis-operator norm over an l^p model:
/// exact methods must agree to 1e-12, sampled methods must overlap.
struct PermutedNormReport {
  bool ok = false;
  OperatorNormEstimate reference;
  double max_deviation = 0.0;
  int num_perms = 0;
};

PermutedNormReport unconditional_bessel_norm_check(const FrameFamily& g, double p,
                                                   int num_perms = 20, std::uint64_t seed = 42,
                                                   const AscentConfig& cfg = {});

}  // namespace pairframe

#endif  // PAIRFRAME_UNCONDITIONAL_HPP
