#include "pairframe/unconditional.hpp"

#include <doctest.h>

#include "support.hpp"

#include <cmath>

using namespace pairframe;

namespace {

const SpaceSpec k2 = make_space(2, 2.0);

PairSystem small_system(std::mt19937_64& rng, int dim = 2, int count = 4) {
  const SpaceSpec x = make_space(dim, 2.0);
  return make_pair_system(
      testsupport::random_family(count, dual_space(x), Side::functionals_on_x, rng),
      testsupport::random_family(count, x, Side::vectors_in_x, rng), 2.0);
}

}  // namespace

TEST_CASE("permuted partial sums of a finite family") {
  std::mt19937_64 rng(113);
  const PairSystem sys = small_system(rng);
  const LazyFamily fam = lazy_from_system(sys);
  const VectorX f = make_vector(testsupport::random_unit(2, 2.0, rng), k2);

  // the full identity-order sum is S f
  const VectorX full = permuted_partial_sum(fam, f, PermutationSpec::identity(4), 4);
  const Eigen::VectorXd sf = pair_frame_operator(sys).matrix * f.coords;
  CHECK((full.coords - sf).norm() <= 1e-14);

  // finite sums commute: any permutation of all terms gives the same value
  for (int trial = 0; trial < 20; ++trial) {
    const PermutationSpec sigma = PermutationSpec::random(4, rng);
    const VectorX sum = permuted_partial_sum(fam, f, sigma, 4);
    CHECK((sum.coords - sf).norm() <= 1e-13);
  }
}

TEST_CASE("geometric family: partial sums converge with a geometric tail") {
  const LazyFamily fam = geometric_family(k2, 0.5);
  std::mt19937_64 rng(127);
  const VectorX f = make_vector(testsupport::random_unit(2, 2.0, rng), k2);
  const VectorX limit = permuted_partial_sum(fam, f, PermutationSpec::identity(128), 128);
  for (int m = 4; m <= 40; m += 4) {
    const VectorX partial = permuted_partial_sum(fam, f, PermutationSpec::identity(128), m);
    const double tail = std::pow(2.0, -m + 1) * norm(f);
    CHECK(p_norm(limit.coords - partial.coords, 2.0) <= tail + 1e-15);
  }
}

TEST_CASE("finite families certify unconditionally") {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 5; ++trial) {
    const PairSystem sys = small_system(rng, 3, 6);
    const LazyFamily fam = lazy_from_system(sys);
    const VectorX f = make_vector(testsupport::random_unit(3, 2.0, rng), make_space(3, 2.0));
    UncondConfig cfg;
    cfg.truncation = 6;
    cfg.num_perms = 16;
    cfg.num_subseries = 16;
    const ConvergenceVerdict v = test_unconditional(fam, f, cfg);
    CHECK(v.verdict == UncondVerdict::unconditional_certified);
    CHECK(v.tail_bound == 0.0);
  }
}

TEST_CASE("geometric family certifies at N = 60 and tol = 1e-12") {
  const LazyFamily fam = geometric_family(k2, 0.5);
  std::mt19937_64 rng(137);
  UncondConfig cfg;
  cfg.truncation = 60;
  cfg.tol = 1e-12;
  for (int trial = 0; trial < 3; ++trial) {
    const VectorX f = make_vector(testsupport::random_unit(2, 2.0, rng), k2);
    const ConvergenceVerdict v = test_unconditional(fam, f, cfg);
    CHECK(v.verdict == UncondVerdict::unconditional_certified);
    CHECK(v.tail_bound <= 1e-12);
  }
}

TEST_CASE("certified tails are sound for the geometric family") {
  const LazyFamily fam = geometric_family(k2, 0.5);
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 5; ++trial) {
    const VectorX f = make_vector(testsupport::random_unit(2, 2.0, rng), k2);
    const VectorX limit = permuted_partial_sum(fam, f, PermutationSpec::identity(200), 200);
    for (int n = 8; n <= 64; n *= 2) {
      const VectorX partial = permuted_partial_sum(fam, f, PermutationSpec::identity(200), n);
      CHECK(p_norm(limit.coords - partial.coords, 2.0) <=
            fam.envelope_tail(n - 1) * norm(f) + 1e-15);
    }
  }
}

TEST_CASE("alternating harmonic family is flagged with a reproducible witness") {
  const LazyFamily fam = alternating_harmonic_family(k2);
  const VectorX f = canonical_vector(0, k2);
  UncondConfig cfg;  // defaults: N = 512, tol = 1e-10
  const ConvergenceVerdict v = test_unconditional(fam, f, cfg);
  REQUIRE(v.verdict == UncondVerdict::conditional_detected);
  REQUIRE(v.witness.has_value());
  CHECK(std::abs(v.witness->drift) > 0.1);

  // the witness drift is reproducible from its stored description
  const double recomputed = recompute_witness_drift(fam, f, *v.witness, cfg.truncation);
  CHECK(recomputed == doctest::Approx(v.witness->drift).epsilon(1e-12));
  CHECK(std::abs(recomputed) > 0.1);

  // the block rearrangement shifts the limit by about ln(2)/2
  if (v.witness->kind == ConvergenceWitness::Kind::rearrangement) {
    CHECK(v.witness->drift == doctest::Approx(0.5 * std::log(2.0)).epsilon(0.05));
  }
}

TEST_CASE("envelope violations are reported with the offending index") {
  LazyFamily fam = geometric_family(k2, 0.5);
  fam.envelope = [](int i) { return i == 17 ? 1e-12 : std::pow(0.5, i + 1); };
  const VectorX f = canonical_vector(0, k2);
  UncondConfig cfg;
  cfg.truncation = 32;
  try {
    (void)test_unconditional(fam, f, cfg);
    FAIL("expected an envelope violation");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("index 17") != std::string::npos);
  }
}

TEST_CASE("permuted analysis norms agree") {
  std::mt19937_64 rng(149);
  const SpaceSpec x = make_space(3, 2.0);
  const FrameFamily g = testsupport::random_family(5, dual_space(x), Side::functionals_on_x, rng);

  const PermutedNormReport p2 = unconditional_bessel_norm_check(g, 2.0, 20);
  CHECK(p2.ok);
  CHECK(p2.max_deviation <= 1e-12);

  // p = 1 has an exact closed form too (max column norm is a multiset invariant)
  const FrameFamily g1 = testsupport::random_family(5, make_space(3, kInfExponent),
                                                    Side::functionals_on_x, rng);
  const PermutedNormReport p1 = unconditional_bessel_norm_check(g1, 2.0, 20);
  CHECK(p1.ok);

  // sampled certificates still produce overlapping intervals
  const PermutedNormReport p3 = unconditional_bessel_norm_check(g, 3.0, 8);
  CHECK(p3.ok);
}

TEST_CASE("orthonormal basis norms are permutation-exact") {
  const FrameFamily on = testsupport::basis_family(k2, Side::functionals_on_x);
  const PermutedNormReport rep = unconditional_bessel_norm_check(on, 2.0, 10);
  CHECK(rep.ok);
  CHECK(rep.reference.upper == doctest::Approx(1.0));
  CHECK(rep.max_deviation <= 1e-15);
}
