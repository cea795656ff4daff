#include "pairframe/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pairframe {

bool exponent_eq(double a, double b) {
  if (is_inf_exponent(a) || is_inf_exponent(b)) {
    return is_inf_exponent(a) && is_inf_exponent(b);
  }
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

SpaceSpec make_space(int dim, double p) {
  if (dim < 1) throw std::invalid_argument("SpaceSpec: dim must be >= 1");
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("SpaceSpec: exponent must satisfy p >= 1 or p = inf");
  }
  return SpaceSpec{dim, p};
}

bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
  return a.dim == b.dim && exponent_eq(a.p, b.p);
}

std::string describe(const SpaceSpec& s) {
  std::ostringstream os;
  os << "l^" << (is_inf_exponent(s.p) ? std::string("inf") : std::to_string(s.p))
     << "(dim " << s.dim << ")";
  return os.str();
}

VectorX make_vector(Eigen::VectorXd coords, const SpaceSpec& space) {
  if (coords.size() != space.dim) {
    throw std::invalid_argument("VectorX: coordinate length does not match space dimension");
  }
  return VectorX{std::move(coords), space};
}

double p_norm(const Eigen::VectorXd& v, double p) {
  if (v.size() == 0) return 0.0;
  if (is_inf_exponent(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    s += std::pow(std::abs(v[i]) / m, p);
  }
  return m * std::pow(s, 1.0 / p);
}

double norm(const VectorX& v) { return p_norm(v.coords, v.space.p); }

double dual_pairing(const VectorX& f, const VectorX& g) {
  if (f.space.dim != g.space.dim) {
    throw std::invalid_argument("dual_pairing: dimension mismatch");
  }
  return f.coords.dot(g.coords);
}

double conjugate_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("conjugate_exponent: requires p >= 1");
  }
  if (p == 1.0) return kInfExponent;
  if (is_inf_exponent(p)) return 1.0;
  return p / (p - 1.0);
}

SpaceSpec dual_space(const SpaceSpec& s) {
  return SpaceSpec{s.dim, conjugate_exponent(s.p)};
}

VectorX canonical_vector(int i, const SpaceSpec& s) {
  if (i < 0 || i >= s.dim) {
    throw std::out_of_range("canonical_vector: index out of range");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dim);
  v[i] = 1.0;
  return VectorX{std::move(v), s};
}

bool is_unconditional_space(const SpaceSpec&) { return true; }

// ----- PermutationSpec ------------------------------------------------------

PermutationSpec PermutationSpec::identity(int n) {
  std::vector<int> m(static_cast<size_t>(std::max(n, 0)));
  std::iota(m.begin(), m.end(), 0);
  return from_map(std::move(m));
}

PermutationSpec PermutationSpec::from_map(std::vector<int> map) {
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) {
      throw std::invalid_argument("PermutationSpec: mapping is not a bijection of {0..n-1}");
    }
  }
  PermutationSpec s;
  s.kind_ = Kind::explicit_map;
  s.n_ = static_cast<int>(map.size());
  s.map_ = std::move(map);
  return s;
}

PermutationSpec PermutationSpec::reversal(int n) {
  PermutationSpec s;
  s.kind_ = Kind::reversal;
  s.n_ = std::max(n, 0);
  return s;
}

PermutationSpec PermutationSpec::block_interleave(int odd_run, int even_run) {
  if (odd_run < 1 || even_run < 1) {
    throw std::invalid_argument("PermutationSpec: block runs must be positive");
  }
  PermutationSpec s;
  s.kind_ = Kind::block;
  s.odd_run_ = odd_run;
  s.even_run_ = even_run;
  return s;
}

PermutationSpec PermutationSpec::random(int n, std::mt19937_64& rng) {
  std::vector<int> m(static_cast<size_t>(std::max(n, 0)));
  std::iota(m.begin(), m.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(m[static_cast<size_t>(i)], m[static_cast<size_t>(d(rng))]);
  }
  return from_map(std::move(m));
}

int PermutationSpec::apply(int k) const {
  if (k < 0) throw std::out_of_range("PermutationSpec: negative position");
  switch (kind_) {
    case Kind::explicit_map:
      return k < n_ ? map_[static_cast<size_t>(k)] : k;
    case Kind::reversal:
      return k < n_ ? n_ - 1 - k : k;
    case Kind::block: {
      // Interleaves the odd-index stream (1,3,5,...) with the even-index
      // stream (0,2,4,...): odd_run odds, then even_run evens, repeating.
      const int period = odd_run_ + even_run_;
      const int cycle = k / period;
      const int r = k % period;
      if (r < odd_run_) return 2 * (cycle * odd_run_ + r) + 1;
      return 2 * (cycle * even_run_ + (r - odd_run_));
    }
  }
  return k;
}

int PermutationSpec::inverse_apply(int index) const {
  if (index < 0) throw std::out_of_range("PermutationSpec: negative index");
  switch (kind_) {
    case Kind::explicit_map: {
      if (index >= n_) return index;
      for (int k = 0; k < n_; ++k) {
        if (map_[static_cast<size_t>(k)] == index) return k;
      }
      throw std::logic_error("PermutationSpec: inverse lookup failed");
    }
    case Kind::reversal:
      return index < n_ ? n_ - 1 - index : index;
    case Kind::block: {
      const int period = odd_run_ + even_run_;
      if (index % 2 == 1) {
        const int j = (index - 1) / 2;
        return (j / odd_run_) * period + (j % odd_run_);
      }
      const int j = index / 2;
      return (j / even_run_) * period + odd_run_ + (j % even_run_);
    }
  }
  return index;
}

std::string PermutationSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::explicit_map: {
      os << "map[";
      for (int i = 0; i < n_; ++i) os << (i ? "," : "") << map_[static_cast<size_t>(i)];
      os << "]";
      break;
    }
    case Kind::reversal:
      os << "reversal(" << n_ << ")";
      break;
    case Kind::block:
      os << "block(" << odd_run_ << "," << even_run_ << ")";
      break;
  }
  return os.str();
}

Eigen::VectorXd permute(const Eigen::VectorXd& v, const PermutationSpec& sigma) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const int idx = sigma.apply(static_cast<int>(k));
    if (idx >= v.size()) {
      throw std::out_of_range("permute: permutation leaves the vector's index range");
    }
    out[k] = v[idx];
  }
  return out;
}

}  // namespace pairframe
