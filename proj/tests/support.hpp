// Shared helpers for the test suites: seeded random vectors, families and
// matrices at desk scale.

#ifndef PAIRFRAME_TESTS_SUPPORT_HPP
#define PAIRFRAME_TESTS_SUPPORT_HPP

#include "pairframe/linops.hpp"

#include <random>

namespace testsupport {

inline Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

inline Eigen::VectorXd random_unit(int dim, double p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  double n = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    n = pairframe::p_norm(v, p);
  } while (n == 0.0);
  return v / n;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

inline pairframe::FrameFamily random_family(int count, const pairframe::SpaceSpec& space,
                                            pairframe::Side side, std::mt19937_64& rng) {
  std::vector<Eigen::VectorXd> vecs;
  vecs.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) vecs.push_back(random_vector(space.dim, rng));
  return pairframe::make_family(std::move(vecs), space, side);
}

inline pairframe::FrameFamily basis_family(const pairframe::SpaceSpec& space,
                                           pairframe::Side side) {
  std::vector<Eigen::VectorXd> vecs;
  for (int i = 0; i < space.dim; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim);
    e[i] = 1.0;
    vecs.push_back(std::move(e));
  }
  return pairframe::make_family(std::move(vecs), space, side);
}

}  // namespace testsupport

#endif  // PAIRFRAME_TESTS_SUPPORT_HPP
