#include "pairframe/spaces.hpp"

#include <doctest.h>

#include "support.hpp"

#include <cmath>

using namespace pairframe;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("p-norm closed cases") {
  CHECK(p_norm(vec({3, 4}), 2.0) == doctest::Approx(5.0));
  CHECK(p_norm(vec({1, -2, 3}), 1.0) == doctest::Approx(6.0));
  CHECK(p_norm(vec({1, -2, 3}), kInfExponent) == doctest::Approx(3.0));
  CHECK(p_norm(Eigen::VectorXd::Zero(4), 3.5) == 0.0);
}

TEST_CASE("norm axioms hold on random vectors") {
  std::mt19937_64 rng(7);
  const double exponents[] = {1.0, 1.5, 2.0, 3.0, 7.0, kInfExponent};
  for (double p : exponents) {
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXd a = testsupport::random_vector(5, rng);
      const Eigen::VectorXd b = testsupport::random_vector(5, rng);
      const double alpha = testsupport::random_vector(1, rng, 3.0)[0];
      CHECK(p_norm(alpha * a, p) == doctest::Approx(std::abs(alpha) * p_norm(a, p)));
      CHECK(p_norm(a + b, p) <= p_norm(a, p) + p_norm(b, p) + 1e-12);
      if (p_norm(a, p) == 0.0) CHECK(a.isZero());
    }
  }
}

TEST_CASE("dual pairing") {
  const SpaceSpec s = make_space(2, 2.0);
  const VectorX e1 = canonical_vector(0, s);
  const VectorX e2 = canonical_vector(1, s);
  CHECK(dual_pairing(e1, e1) == 1.0);
  CHECK(dual_pairing(e1, e2) == 0.0);
  CHECK(dual_pairing(make_vector(vec({1, 2}), s), make_vector(vec({3, -1}), s)) ==
        doctest::Approx(1.0));

  const SpaceSpec s3 = make_space(3, 2.0);
  CHECK_THROWS_AS(dual_pairing(e1, canonical_vector(0, s3)), std::invalid_argument);
}

TEST_CASE("dual pairing is bilinear and symmetric") {
  std::mt19937_64 rng(11);
  const SpaceSpec s = make_space(4, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const VectorX a = make_vector(testsupport::random_vector(4, rng), s);
    const VectorX b = make_vector(testsupport::random_vector(4, rng), s);
    const VectorX c = make_vector(testsupport::random_vector(4, rng), s);
    const double alpha = testsupport::random_vector(1, rng, 2.0)[0];
    CHECK(dual_pairing(a, b) == doctest::Approx(dual_pairing(b, a)));
    const VectorX combo = make_vector(alpha * a.coords + c.coords, s);
    CHECK(dual_pairing(combo, b) ==
          doctest::Approx(alpha * dual_pairing(a, b) + dual_pairing(c, b)));
  }
}

TEST_CASE("conjugate exponents") {
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(is_inf_exponent(conjugate_exponent(1.0)));
  CHECK(conjugate_exponent(kInfExponent) == 1.0);
  CHECK(conjugate_exponent(4.0 / 3.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(conjugate_exponent(0.5), std::invalid_argument);

  // involution on a grid
  for (double p : {1.0, 1.25, 1.5, 2.0, 3.0, 10.0, kInfExponent}) {
    CHECK(exponent_eq(conjugate_exponent(conjugate_exponent(p)), p));
  }
}

TEST_CASE("dual space") {
  CHECK(dual_space(make_space(3, 2.0)) == make_space(3, 2.0));
  CHECK(dual_space(make_space(5, 1.0)) == make_space(5, kInfExponent));
  CHECK(dual_space(make_space(2, 3.0)) == make_space(2, 1.5));
}

TEST_CASE("canonical vectors") {
  const SpaceSpec s2 = make_space(2, 2.0);
  CHECK(canonical_vector(0, s2).coords.isApprox(vec({1, 0})));
  CHECK(canonical_vector(1, s2).coords.isApprox(vec({0, 1})));
  CHECK_THROWS_AS(canonical_vector(2, s2), std::out_of_range);
  CHECK_THROWS_AS(canonical_vector(-1, s2), std::out_of_range);

  for (double p : {1.0, 1.5, 2.0, 4.0, kInfExponent}) {
    const SpaceSpec s = make_space(5, p);
    for (int i = 0; i < 5; ++i) {
      CHECK(norm(canonical_vector(i, s)) == doctest::Approx(1.0));
      for (int j = 0; j < 5; ++j) {
        CHECK(dual_pairing(canonical_vector(i, s), canonical_vector(j, s)) ==
              (i == j ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("Hoelder inequality with extremal pairs") {
  std::mt19937_64 rng(23);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfExponent}) {
    const double q = conjugate_exponent(p);
    for (int trial = 0; trial < 40; ++trial) {
      const Eigen::VectorXd f = testsupport::random_vector(6, rng);
      const Eigen::VectorXd g = testsupport::random_vector(6, rng);
      CHECK(std::abs(f.dot(g)) <= p_norm(f, p) * p_norm(g, q) + 1e-12);
    }

    // extremal pair: |f_i| proportional to |g_i|^(q-1) with matching signs
    const Eigen::VectorXd g = testsupport::random_vector(6, rng);
    Eigen::VectorXd f(6);
    for (int i = 0; i < 6; ++i) {
      const double sign = g[i] >= 0 ? 1.0 : -1.0;
      if (p == 1.0) {
        f[i] = 0.0;  // filled below: mass on the max coordinate
      } else if (is_inf_exponent(p)) {
        f[i] = sign;
      } else {
        f[i] = sign * std::pow(std::abs(g[i]), q - 1.0);
      }
    }
    if (p == 1.0) {
      Eigen::Index k;
      g.cwiseAbs().maxCoeff(&k);
      f[k] = g[k] >= 0 ? 1.0 : -1.0;
    }
    CHECK(std::abs(f.dot(g)) == doctest::Approx(p_norm(f, p) * p_norm(g, q)).epsilon(1e-9));
  }
}

TEST_CASE("unconditional l^p model: permutation invariance of the norm") {
  std::mt19937_64 rng(31);
  CHECK(is_unconditional_space(make_space(4, 2.0)));
  CHECK(is_unconditional_space(make_space(1, kInfExponent)));
  for (double p : {1.0, 2.0, 2.7, kInfExponent}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd v = testsupport::random_vector(7, rng);
      const PermutationSpec sigma = PermutationSpec::random(7, rng);
      CHECK(p_norm(permute(v, sigma), p) == doctest::Approx(p_norm(v, p)));
    }
  }
}

TEST_CASE("permutation specs") {
  std::mt19937_64 rng(5);
  const PermutationSpec id = PermutationSpec::identity(4);
  for (int k = 0; k < 8; ++k) CHECK(id.apply(k) == k);

  CHECK_THROWS_AS(PermutationSpec::from_map({0, 0, 1}), std::invalid_argument);

  const PermutationSpec rev = PermutationSpec::reversal(5);
  CHECK(rev.apply(0) == 4);
  CHECK(rev.apply(4) == 0);
  CHECK(rev.apply(7) == 7);  // identity tail

  // block interleave is a bijection of the naturals
  const PermutationSpec blk = PermutationSpec::block_interleave(2, 1);
  std::vector<int> seen(200, 0);
  for (int k = 0; k < 200; ++k) {
    const int idx = blk.apply(k);
    if (idx < 200) seen[static_cast<size_t>(idx)] += 1;
    CHECK(blk.inverse_apply(idx) == k);
  }
  for (int idx = 0; idx < 120; ++idx) CHECK(seen[static_cast<size_t>(idx)] == 1);

  const PermutationSpec rnd = PermutationSpec::random(9, rng);
  std::vector<int> hits(9, 0);
  for (int k = 0; k < 9; ++k) hits[static_cast<size_t>(rnd.apply(k))] += 1;
  for (int h : hits) CHECK(h == 1);
}
