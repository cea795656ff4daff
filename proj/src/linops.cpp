#include "pairframe/linops.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace pairframe {

namespace {

double inv_exp(double p) { return is_inf_exponent(p) ? 0.0 : 1.0 / p; }

double sign_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// z with <z, w> = ||w||_r and ||z||_{r*} = 1 (a norming functional for w).
Eigen::VectorXd norming_functional(const Eigen::VectorXd& w, double r) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(w.size());
  if (w.size() == 0) return z;
  if (is_inf_exponent(r)) {
    Eigen::Index k;
    w.cwiseAbs().maxCoeff(&k);
    z[k] = sign_of(w[k]);
    return z;
  }
  if (r == 1.0) {
    for (Eigen::Index i = 0; i < w.size(); ++i) z[i] = sign_of(w[i]);
    return z;
  }
  const double nw = p_norm(w, r);
  if (nw == 0.0) return z;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    z[i] = sign_of(w[i]) * std::pow(std::abs(w[i]) / nw, r - 1.0);
  }
  return z;
}

bool normalize_p(Eigen::VectorXd& v, double p) {
  const double n = p_norm(v, p);
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  v /= n;
  return true;
}

// Maximizer of <u, .> over the unit p-ball (Hoelder extremal direction).
Eigen::VectorXd dual_extremal(const Eigen::VectorXd& u, double p) {
  Eigen::VectorXd v = norming_functional(u, conjugate_exponent(p));
  if (!normalize_p(v, p)) return Eigen::VectorXd();
  return v;
}

std::vector<Eigen::VectorXd> search_starts(const Eigen::MatrixXd& a, double p_in, int random_starts,
                                           std::mt19937_64& rng) {
  const Eigen::Index n = a.cols();
  std::vector<Eigen::VectorXd> starts;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[j] = 1.0;
    starts.push_back(std::move(e));
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Eigen::VectorXd s(n);
    for (Eigen::Index j = 0; j < n; ++j) s[j] = a(i, j) >= 0 ? 1.0 : -1.0;
    if (normalize_p(s, p_in)) starts.push_back(std::move(s));
  }
  {
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    if (normalize_p(ones, p_in)) starts.push_back(std::move(ones));
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < random_starts; ++s) {
    Eigen::VectorXd v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = gauss(rng);
    if (normalize_p(v, p_in)) starts.push_back(std::move(v));
  }
  return starts;
}

// Rayleigh-quotient refinement toward an extreme eigenvalue of A^T A. Each
// iterate is evaluated through the objective, so the reported gain is always
// attained by a concrete unit vector.
void rayleigh_polish(const Eigen::MatrixXd& a, Eigen::VectorXd v, bool maximize, int rounds,
                     double& best_value, Eigen::VectorXd& best_vec, long& evaluations) {
  if (v.size() == 0 || rounds <= 0) return;
  const Eigen::MatrixXd b = a.transpose() * a;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(b.rows(), b.cols());
  if (!normalize_p(v, 2.0)) return;
  for (int r = 0; r < rounds; ++r) {
    const double mu = v.dot(b * v);
    const Eigen::MatrixXd shifted = b - mu * id;
    // When mu hits an eigenvalue exactly the solve degenerates; the finiteness
    // guard below simply ends the polish with the best iterate kept.
    Eigen::VectorXd x = shifted.fullPivLu().solve(v);
    if (!x.allFinite() || !normalize_p(x, 2.0)) break;
    v = x;
    const double val = (a * v).norm();
    ++evaluations;
    if ((maximize && val > best_value) || (!maximize && val < best_value)) {
      best_value = val;
      best_vec = v;
    }
  }
}

GainSample max_gain_impl(const Eigen::MatrixXd& a, double p_in, double p_out,
                         const AscentConfig& cfg) {
  GainSample best;
  best.value = 0.0;
  if (a.cols() == 0 || a.rows() == 0) return best;
  best.argvec = Eigen::VectorXd::Zero(a.cols());
  best.argvec[0] = 1.0;

  std::mt19937_64 rng(cfg.seed);
  for (Eigen::VectorXd v : search_starts(a, p_in, cfg.starts, rng)) {
    if (best.evaluations >= cfg.max_evaluations) break;
    double val = p_norm(a * v, p_out);
    ++best.evaluations;
    if (val > best.value) {
      best.value = val;
      best.argvec = v;
    }
    // Generalized power iteration: alternate norming functionals on both
    // sides. The objective value is non-decreasing along these steps.
    for (int it = 0; it < cfg.max_iters && best.evaluations < cfg.max_evaluations; ++it) {
      const Eigen::VectorXd w = a * v;
      const Eigen::VectorXd u = a.transpose() * norming_functional(w, p_out);
      Eigen::VectorXd next = dual_extremal(u, p_in);
      if (next.size() == 0) break;
      const double next_val = p_norm(a * next, p_out);
      ++best.evaluations;
      v = std::move(next);
      if (next_val > best.value) {
        best.value = next_val;
        best.argvec = v;
      }
      if (next_val - val <= cfg.improve_tol * std::max(std::abs(next_val), 1e-30)) break;
      val = next_val;
    }
  }
  if (exponent_eq(p_in, 2.0) && exponent_eq(p_out, 2.0)) {
    rayleigh_polish(a, best.argvec, true, cfg.polish_rounds, best.value, best.argvec,
                    best.evaluations);
  }
  return best;
}

GainSample min_gain_impl(const Eigen::MatrixXd& a, double p_in, double p_out,
                         const AscentConfig& cfg) {
  GainSample best;
  best.value = std::numeric_limits<double>::infinity();
  if (a.cols() == 0) {
    best.value = 0.0;
    return best;
  }

  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  for (Eigen::VectorXd v : search_starts(a, p_in, cfg.starts, rng)) {
    if (best.evaluations >= cfg.max_evaluations) break;
    double val = p_norm(a * v, p_out);
    ++best.evaluations;
    if (val < best.value) {
      best.value = val;
      best.argvec = v;
    }
    double step = 1.0;
    for (int it = 0; it < cfg.max_iters && best.evaluations < cfg.max_evaluations; ++it) {
      if (val == 0.0) break;
      const Eigen::VectorXd w = a * v;
      const Eigen::VectorXd grad = a.transpose() * norming_functional(w, p_out);
      bool moved = false;
      while (step > 1e-18 && best.evaluations < cfg.max_evaluations) {
        Eigen::VectorXd cand = v - step * grad;
        if (normalize_p(cand, p_in)) {
          const double cand_val = p_norm(a * cand, p_out);
          ++best.evaluations;
          if (cand_val < val) {
            v = std::move(cand);
            const double gain = val - cand_val;
            val = cand_val;
            if (val < best.value) {
              best.value = val;
              best.argvec = v;
            }
            step = std::min(step * 2.0, 1e6);
            moved = gain > cfg.improve_tol * std::max(std::abs(val), 1e-30);
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
  }
  if (exponent_eq(p_in, 2.0) && exponent_eq(p_out, 2.0) && best.argvec.size() > 0) {
    rayleigh_polish(a, best.argvec, false, cfg.polish_rounds, best.value, best.argvec,
                    best.evaluations);
  }
  if (!std::isfinite(best.value)) best.value = 0.0;
  return best;
}

double column_rule(const Eigen::MatrixXd& a, double p_out) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, p_norm(a.col(j), p_out));
  return m;
}

double row_rule(const Eigen::MatrixXd& a, double p_in) {
  const double q = conjugate_exponent(p_in);
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    m = std::max(m, p_norm(a.row(i).transpose(), q));
  }
  return m;
}

// Exact reference value when (p_in, p_out) admits a closed form.
std::optional<double> exact_norm(const Eigen::MatrixXd& a, double p_in, double p_out) {
  if (p_in == 2.0 && p_out == 2.0) return spectral_norm(a);
  if (p_in == 1.0) return column_rule(a, p_out);
  if (is_inf_exponent(p_out)) return row_rule(a, p_in);
  return std::nullopt;
}

// Valid analytic upper bound for an arbitrary exponent pair: the best of
// norm-comparison bounds through exactly computable reference pairs and, when
// the target lies between the exact edges, Riesz-Thorin interpolation.
double analytic_upper(const Eigen::MatrixXd& a, double p_in, double p_out) {
  const double n = static_cast<double>(a.cols());
  const double m = static_cast<double>(a.rows());
  const double alpha = inv_exp(p_in);
  const double beta = inv_exp(p_out);
  double upper = std::numeric_limits<double>::infinity();

  const double refs[][2] = {{1.0, 1.0},          {1.0, 2.0},          {1.0, p_out},
                            {1.0, kInfExponent}, {2.0, 2.0},          {2.0, kInfExponent},
                            {p_in, kInfExponent}, {kInfExponent, kInfExponent}};
  for (const auto& r : refs) {
    const auto value = exact_norm(a, r[0], r[1]);
    if (!value) continue;
    const double c_out =
        inv_exp(p_out) >= inv_exp(r[1]) ? std::pow(m, inv_exp(p_out) - inv_exp(r[1])) : 1.0;
    const double c_in =
        inv_exp(r[0]) >= inv_exp(p_in) ? std::pow(n, inv_exp(r[0]) - inv_exp(p_in)) : 1.0;
    upper = std::min(upper, c_out * c_in * *value);
  }

  if (alpha >= beta) {
    // Interpolate between a (1 -> q0) column-rule endpoint and a (p1 -> inf)
    // row-rule endpoint whose segment passes through (1/p_in, 1/p_out).
    const double lo = 1.0 - alpha;
    const double hi = 1.0 - beta;
    const int grid = 33;
    for (int k = 0; k <= grid; ++k) {
      const double theta = lo + (hi - lo) * static_cast<double>(k) / grid;
      double m0;
      if (theta >= 1.0 - 1e-15) {
        m0 = column_rule(a, kInfExponent);  // degenerate endpoint weight -> 0
      } else {
        const double y0 = beta / (1.0 - theta);
        m0 = column_rule(a, y0 <= 1e-15 ? kInfExponent : 1.0 / y0);
      }
      double m1;
      if (theta <= 1e-15) {
        m1 = row_rule(a, kInfExponent);  // degenerate endpoint weight -> 0
      } else {
        const double x1 = (alpha - (1.0 - theta)) / theta;
        m1 = row_rule(a, x1 <= 1e-15 ? kInfExponent : 1.0 / x1);
      }
      if (m0 == 0.0 || m1 == 0.0) return 0.0;
      upper = std::min(upper, std::pow(m0, 1.0 - theta) * std::pow(m1, theta));
    }
  }
  return upper;
}

}  // namespace

// ----- families ---------------------------------------------------------------

FrameFamily make_family(std::vector<Eigen::VectorXd> vectors, const SpaceSpec& space, Side side) {
  if (vectors.empty()) throw std::invalid_argument("FrameFamily: family must be nonempty");
  for (const auto& v : vectors) {
    if (v.size() != space.dim) {
      throw std::invalid_argument("FrameFamily: vector dimension does not match space");
    }
  }
  return FrameFamily{std::move(vectors), space, side};
}

FrameFamily as_functionals(const FrameFamily& f) {
  return FrameFamily{f.vectors, f.space, Side::functionals_on_x};
}

FrameFamily as_vectors(const FrameFamily& f) {
  return FrameFamily{f.vectors, f.space, Side::vectors_in_x};
}

FrameFamily permute_family(const FrameFamily& f, const PermutationSpec& sigma) {
  std::vector<Eigen::VectorXd> out(f.vectors.size());
  for (int k = 0; k < f.count(); ++k) {
    const int idx = sigma.apply(k);
    if (idx >= f.count()) {
      throw std::out_of_range("permute_family: permutation exceeds family size");
    }
    out[static_cast<size_t>(k)] = f.vectors[static_cast<size_t>(idx)];
  }
  return FrameFamily{std::move(out), f.space, f.side};
}

FrameFamily scale_family(const FrameFamily& f, double alpha) {
  std::vector<Eigen::VectorXd> out(f.vectors.size());
  for (size_t i = 0; i < f.vectors.size(); ++i) out[i] = alpha * f.vectors[i];
  return FrameFamily{std::move(out), f.space, f.side};
}

// ----- operators ----------------------------------------------------------------

DenseOperator make_operator(Eigen::MatrixXd m, const SpaceSpec& domain, const SpaceSpec& codomain) {
  if (m.rows() != codomain.dim || m.cols() != domain.dim) {
    throw std::invalid_argument("DenseOperator: matrix shape does not match domain/codomain");
  }
  return DenseOperator{std::move(m), domain, codomain};
}

DenseOperator identity_operator(const SpaceSpec& s) {
  return DenseOperator{Eigen::MatrixXd::Identity(s.dim, s.dim), s, s};
}

DenseOperator analysis_operator(const FrameFamily& g, const SpaceSpec& seq) {
  if (g.side != Side::functionals_on_x) {
    throw std::invalid_argument("analysis_operator: family must consist of functionals");
  }
  if (seq.dim != g.count()) {
    throw std::invalid_argument("analysis_operator: sequence dimension must equal family count");
  }
  Eigen::MatrixXd u(g.count(), g.space.dim);
  for (int i = 0; i < g.count(); ++i) u.row(i) = g.vectors[static_cast<size_t>(i)].transpose();
  return DenseOperator{std::move(u), dual_space(g.space), seq};
}

DenseOperator synthesis_operator(const FrameFamily& f, const SpaceSpec& seq) {
  if (f.side != Side::vectors_in_x) {
    throw std::invalid_argument("synthesis_operator: family must consist of vectors");
  }
  if (seq.dim != f.count()) {
    throw std::invalid_argument("synthesis_operator: sequence dimension must equal family count");
  }
  Eigen::MatrixXd t(f.space.dim, f.count());
  for (int i = 0; i < f.count(); ++i) t.col(i) = f.vectors[static_cast<size_t>(i)];
  return DenseOperator{std::move(t), seq, f.space};
}

DenseOperator adjoint(const DenseOperator& a) {
  return DenseOperator{a.matrix.transpose(), dual_space(a.codomain), dual_space(a.domain)};
}

VectorX apply(const DenseOperator& a, const VectorX& v) {
  if (v.space.dim != a.domain.dim) {
    throw std::invalid_argument("apply: vector dimension does not match operator domain");
  }
  return VectorX{a.matrix * v.coords, a.codomain};
}

DenseOperator compose(const DenseOperator& a, const DenseOperator& b) {
  if (b.codomain.dim != a.domain.dim || !exponent_eq(b.codomain.p, a.domain.p)) {
    throw std::invalid_argument("compose: inner specs do not match");
  }
  return DenseOperator{a.matrix * b.matrix, b.domain, a.codomain};
}

// ----- norms --------------------------------------------------------------------

const char* to_string(NormMethod m) {
  switch (m) {
    case NormMethod::exact_svd: return "exact-svd";
    case NormMethod::exact_col: return "exact-col";
    case NormMethod::exact_row: return "exact-row";
    case NormMethod::sampled: return "sampled";
  }
  return "unknown";
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

GainSample max_gain_search(const DenseOperator& a, const AscentConfig& cfg) {
  return max_gain_impl(a.matrix, a.domain.p, a.codomain.p, cfg);
}

GainSample min_gain_search(const DenseOperator& a, const AscentConfig& cfg) {
  return min_gain_impl(a.matrix, a.domain.p, a.codomain.p, cfg);
}

OperatorNormEstimate operator_norm(const DenseOperator& a, const AscentConfig& cfg) {
  const double p_in = a.domain.p;
  const double p_out = a.codomain.p;
  if (exponent_eq(p_in, 2.0) && exponent_eq(p_out, 2.0)) {
    const double s = spectral_norm(a.matrix);
    return OperatorNormEstimate{s, s, NormMethod::exact_svd, cfg.seed};
  }
  if (exponent_eq(p_in, 1.0)) {
    const double s = column_rule(a.matrix, p_out);
    return OperatorNormEstimate{s, s, NormMethod::exact_col, cfg.seed};
  }
  if (is_inf_exponent(p_out)) {
    const double s = row_rule(a.matrix, p_in);
    return OperatorNormEstimate{s, s, NormMethod::exact_row, cfg.seed};
  }
  return operator_norm_ascent(a, cfg);
}

OperatorNormEstimate operator_norm_ascent(const DenseOperator& a, const AscentConfig& cfg) {
  const GainSample found = max_gain_impl(a.matrix, a.domain.p, a.codomain.p, cfg);
  double upper = analytic_upper(a.matrix, a.domain.p, a.codomain.p);
  upper = std::max(upper, found.value);
  return OperatorNormEstimate{found.value, upper, NormMethod::sampled, cfg.seed};
}

OperatorNormEstimate operator_min_gain(const DenseOperator& a, const AscentConfig& cfg) {
  const double p_in = a.domain.p;
  const double p_out = a.codomain.p;
  double sigma_min = 0.0;
  if (a.matrix.rows() >= a.matrix.cols() && a.matrix.cols() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.matrix);
    sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  }
  if (exponent_eq(p_in, 2.0) && exponent_eq(p_out, 2.0)) {
    return OperatorNormEstimate{sigma_min, sigma_min, NormMethod::exact_svd, cfg.seed};
  }
  const GainSample found = min_gain_impl(a.matrix, p_in, p_out, cfg);
  const double m = static_cast<double>(a.matrix.rows());
  const double n = static_cast<double>(a.matrix.cols());
  // ||Av||_{p_out} >= c_out ||Av||_2 and ||v||_2 >= c_in ||v||_{p_in}.
  const double c_out = inv_exp(p_out) < 0.5 ? std::pow(m, inv_exp(p_out) - 0.5) : 1.0;
  const double c_in = inv_exp(p_in) > 0.5 ? std::pow(n, 0.5 - inv_exp(p_in)) : 1.0;
  const double certified = std::min(c_out * c_in * sigma_min, found.value);
  return OperatorNormEstimate{certified, found.value, NormMethod::sampled, cfg.seed};
}

InvertibilityReport is_invertible(const DenseOperator& a, double tol) {
  if (a.matrix.rows() != a.matrix.cols()) {
    throw std::invalid_argument("is_invertible: operator must be square");
  }
  if (a.matrix.rows() == 0) return InvertibilityReport{true, 1.0};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.matrix);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  InvertibilityReport rep;
  rep.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  rep.invertible = smax > 0.0 && smin > tol * smax;
  return rep;
}

}  // namespace pairframe
