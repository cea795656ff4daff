#include "pairframe/unconditional.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace pairframe {

namespace {

class TermCache {
 public:
  TermCache(const LazyFamily& fam, const VectorX& f, bool validate)
      : fam_(fam), f_(f), dual_p_(conjugate_exponent(fam.ambient.p)), validate_(validate) {}

  // t_i = <f, g_i> f_i
  const Eigen::VectorXd& term(int i) {
    ensure(i);
    return terms_[static_cast<size_t>(i)];
  }

  double term_magnitude(int i) {
    ensure(i);
    return magnitudes_[static_cast<size_t>(i)];
  }

  double generated_abs_sum() const { return abs_sum_; }

 private:
  void ensure(int i) {
    while (static_cast<int>(terms_.size()) <= i) {
      const int idx = static_cast<int>(terms_.size());
      auto [g, fv] = fam_.generator(idx);
      if (g.size() != fam_.ambient.dim || fv.size() != fam_.ambient.dim) {
        throw std::invalid_argument("lazy family generator returned a wrong-dimension pair at index " +
                                    std::to_string(idx));
      }
      if (validate_) {
        const double prod = p_norm(fv, fam_.ambient.p) * p_norm(g, dual_p_);
        const double env = fam_.envelope(idx);
        if (prod > env * (1.0 + 1e-9) + 1e-300) {
          throw std::invalid_argument("lazy family envelope violated at index " +
                                      std::to_string(idx));
        }
      }
      const double coeff = f_.coords.dot(g);
      Eigen::VectorXd t = coeff * fv;
      const double mag = p_norm(t, fam_.ambient.p);
      terms_.push_back(std::move(t));
      magnitudes_.push_back(mag);
      abs_sum_ += mag;
    }
  }

  const LazyFamily& fam_;
  const VectorX& f_;
  double dual_p_;
  bool validate_;
  std::vector<Eigen::VectorXd> terms_;
  std::vector<double> magnitudes_;
  double abs_sum_ = 0.0;
};

struct OrderSummary {
  Eigen::VectorXd end_sum;
  double oscillation = 0.0;  // max deviation from the end sum over the last quarter
  int mex = 0;               // smallest index the order's prefix does not cover
};

OrderSummary summarize_order(TermCache& cache, const PermutationSpec& sigma, int n, int dim,
                             double p) {
  OrderSummary s;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  std::vector<Eigen::VectorXd> window;
  const int window_start = (3 * n) / 4;
  std::vector<int> covered;
  covered.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int idx = sigma.apply(k);
    covered.push_back(idx);
    acc += cache.term(idx);
    if (k + 1 >= window_start) window.push_back(acc);
  }
  s.end_sum = acc;
  for (const auto& w : window) {
    s.oscillation = std::max(s.oscillation, p_norm(Eigen::VectorXd(w - acc), p));
  }
  std::sort(covered.begin(), covered.end());
  int mex = 0;
  for (int idx : covered) {
    if (idx == mex) {
      ++mex;
    } else if (idx > mex) {
      break;
    }
  }
  s.mex = mex;
  return s;
}

Eigen::VectorXd subseries_sum(TermCache& cache, const std::vector<int>& kept, int horizon,
                              int dim) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  for (int idx : kept) {
    if (idx >= horizon) break;
    acc += cache.term(idx);
  }
  return acc;
}

std::string subseries_label(const std::vector<int>& kept, int n) {
  bool even = true, odd = true;
  for (int idx : kept) {
    even = even && idx % 2 == 0;
    odd = odd && idx % 2 == 1;
  }
  if (even && static_cast<int>(kept.size()) == (n + 1) / 2) return "even-index subseries";
  if (odd && static_cast<int>(kept.size()) == n / 2) return "odd-index subseries";
  std::ostringstream os;
  os << "random subseries (" << kept.size() << " of " << n << " indices)";
  return os.str();
}

}  // namespace

LazyFamily lazy_from_system(const PairSystem& sys) {
  const int count = sys.analysis_family.count();
  auto g_vecs = sys.analysis_family.vectors;
  auto f_vecs = sys.synthesis_family.vectors;
  const SpaceSpec ambient = sys.synthesis_family.space;
  const double dual_p = conjugate_exponent(ambient.p);

  auto envelope_values = std::make_shared<std::vector<double>>();
  auto suffix = std::make_shared<std::vector<double>>(static_cast<size_t>(count) + 1, 0.0);
  envelope_values->reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    envelope_values->push_back(p_norm(f_vecs[static_cast<size_t>(i)], ambient.p) *
                               p_norm(g_vecs[static_cast<size_t>(i)], dual_p));
  }
  for (int i = count - 1; i >= 0; --i) {
    (*suffix)[static_cast<size_t>(i)] =
        (*suffix)[static_cast<size_t>(i) + 1] + (*envelope_values)[static_cast<size_t>(i)];
  }

  LazyFamily fam;
  fam.ambient = ambient;
  fam.generator = [g_vecs, f_vecs, ambient, count](int i) {
    if (i < count) {
      return std::make_pair(g_vecs[static_cast<size_t>(i)], f_vecs[static_cast<size_t>(i)]);
    }
    return std::make_pair(Eigen::VectorXd(Eigen::VectorXd::Zero(ambient.dim)),
                          Eigen::VectorXd(Eigen::VectorXd::Zero(ambient.dim)));
  };
  fam.envelope = [envelope_values, count](int i) {
    return i < count ? (*envelope_values)[static_cast<size_t>(i)] : 0.0;
  };
  fam.envelope_tail = [suffix, count](int i) {
    const int from = std::clamp(i + 1, 0, count);
    return (*suffix)[static_cast<size_t>(from)];
  };
  return fam;
}

LazyFamily geometric_family(const SpaceSpec& ambient, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("geometric_family: ratio must lie in (0, 1)");
  }
  LazyFamily fam;
  fam.ambient = ambient;
  const int dim = ambient.dim;
  fam.generator = [dim, ratio](int i) {
    const int axis = dim >= 2 ? (i + 1) % 2 : 0;  // alternate the first two axes
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(dim);
    g[axis] = 1.0;
    f[axis] = std::pow(ratio, i + 1);
    return std::make_pair(g, f);
  };
  fam.envelope = [ratio](int i) { return std::pow(ratio, i + 1); };
  fam.envelope_tail = [ratio](int i) { return std::pow(ratio, i + 2) / (1.0 - ratio); };
  return fam;
}

LazyFamily alternating_harmonic_family(const SpaceSpec& ambient) {
  LazyFamily fam;
  fam.ambient = ambient;
  const int dim = ambient.dim;
  fam.generator = [dim](int i) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(dim);
    g[0] = 1.0;
    f[0] = (i % 2 == 0 ? -1.0 : 1.0) / static_cast<double>(i + 1);
    return std::make_pair(g, f);
  };
  fam.envelope = [](int i) { return 1.0 / static_cast<double>(i + 1); };
  fam.envelope_tail = [](int) { return std::numeric_limits<double>::infinity(); };
  return fam;
}

VectorX permuted_partial_sum(const LazyFamily& fam, const VectorX& f, const PermutationSpec& sigma,
                             int m) {
  if (f.space.dim != fam.ambient.dim) {
    throw std::invalid_argument("permuted_partial_sum: vector does not live in the ambient space");
  }
  TermCache cache(fam, f, /*validate=*/false);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(fam.ambient.dim);
  for (int k = 0; k < m; ++k) acc += cache.term(sigma.apply(k));
  return VectorX{std::move(acc), fam.ambient};
}

const char* to_string(UncondVerdict v) {
  switch (v) {
    case UncondVerdict::unconditional_certified: return "UnconditionalCertified";
    case UncondVerdict::conditional_detected: return "ConditionalDetected";
    case UncondVerdict::inconclusive: return "Inconclusive";
  }
  return "unknown";
}

ConvergenceVerdict test_unconditional(const LazyFamily& fam, const VectorX& f,
                                      const UncondConfig& cfg) {
  if (f.space.dim != fam.ambient.dim) {
    throw std::invalid_argument("test_unconditional: vector does not live in the ambient space");
  }
  const int n = std::max(cfg.truncation, 4);
  const int dim = fam.ambient.dim;
  const double p = fam.ambient.p;
  const double f_norm = p_norm(f.coords, p);

  TermCache cache(fam, f, /*validate=*/true);

  ConvergenceVerdict verdict;
  verdict.truncation = n;
  verdict.seed = cfg.seed;
  const double tail = fam.envelope_tail(n - 1) * f_norm;
  verdict.tail_bound = tail;

  // Orders: identity reference, adversarial reversal and sign-biased block
  // interleavings, then uniformly random permutations of {0..n-1}.
  std::vector<PermutationSpec> orders;
  orders.push_back(PermutationSpec::identity(n));
  orders.push_back(PermutationSpec::reversal(n));
  orders.push_back(PermutationSpec::block_interleave(2, 1));
  orders.push_back(PermutationSpec::block_interleave(3, 1));
  std::mt19937_64 rng(cfg.seed);
  for (int s = 0; s < cfg.num_perms; ++s) orders.push_back(PermutationSpec::random(n, rng));

  std::vector<OrderSummary> summaries;
  summaries.reserve(orders.size());
  for (const auto& sigma : orders) summaries.push_back(summarize_order(cache, sigma, n, dim, p));
  const OrderSummary& ref = summaries.front();

  // Subseries: the two parity classes plus random subsets.
  std::vector<std::vector<int>> subs;
  {
    std::vector<int> even, odd;
    for (int i = 0; i < n; ++i) (i % 2 == 0 ? even : odd).push_back(i);
    subs.push_back(std::move(even));
    subs.push_back(std::move(odd));
    std::bernoulli_distribution keep(0.5);
    for (int s = 0; s < cfg.num_subseries; ++s) {
      std::vector<int> kept;
      for (int i = 0; i < n; ++i) {
        if (keep(rng)) kept.push_back(i);
      }
      if (!kept.empty()) subs.push_back(std::move(kept));
    }
  }

  const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                       (cache.generated_abs_sum() + f_norm + 1.0);

  if (std::isfinite(tail) && tail <= cfg.tol) {
    // Certification: every rearrangement must land within tol + tail bounds of
    // the reference sum, every subseries must be Cauchy within its envelope.
    bool ok = true;
    for (size_t k = 1; k < summaries.size() && ok; ++k) {
      const double allowed = cfg.tol +
                             f_norm * (fam.envelope_tail(summaries[k].mex - 1) +
                                       fam.envelope_tail(n - 1)) +
                             slack;
      const double gap = p_norm(Eigen::VectorXd(summaries[k].end_sum - ref.end_sum), p);
      if (gap > allowed) ok = false;
    }
    for (const auto& kept : subs) {
      if (!ok) break;
      const Eigen::VectorXd half = subseries_sum(cache, kept, n / 2, dim);
      const Eigen::VectorXd full = subseries_sum(cache, kept, n, dim);
      const double allowed = cfg.tol + f_norm * fam.envelope_tail(n / 2 - 1) + slack;
      if (p_norm(Eigen::VectorXd(full - half), p) > allowed) ok = false;
    }
    if (ok) {
      verdict.verdict = UncondVerdict::unconditional_certified;
      verdict.detail = "envelope tail below tolerance; all sampled orders and subseries agree";
      return verdict;
    }
    verdict.verdict = UncondVerdict::inconclusive;
    verdict.detail = "sampled sums exceeded the envelope allowance";
    return verdict;
  }

  // Detection: stabilized rearrangements separated beyond their combined
  // oscillation, or a subseries whose dyadic increments refuse to shrink.
  const double finite_tail = std::isfinite(tail) ? tail : 0.0;
  for (size_t k = 1; k < summaries.size(); ++k) {
    const double drift = p_norm(Eigen::VectorXd(summaries[k].end_sum - ref.end_sum), p);
    const double margin = 2.0 * (cfg.tol + finite_tail) +
                          8.0 * (summaries[k].oscillation + ref.oscillation) + slack;
    if (drift > margin) {
      ConvergenceWitness w;
      w.kind = ConvergenceWitness::Kind::rearrangement;
      w.perm = orders[k];
      w.description = orders[k].describe();
      w.drift = drift;
      w.reference_value = p_norm(ref.end_sum, p);
      w.witness_value = p_norm(summaries[k].end_sum, p);
      verdict.witness = std::move(w);
      verdict.verdict = UncondVerdict::conditional_detected;
      verdict.detail = "rearranged sums separate beyond the stabilization margin";
      return verdict;
    }
  }
  for (const auto& kept : subs) {
    const Eigen::VectorXd q1 = subseries_sum(cache, kept, n / 4, dim);
    const Eigen::VectorXd q2 = subseries_sum(cache, kept, n / 2, dim);
    const Eigen::VectorXd q4 = subseries_sum(cache, kept, n, dim);
    const double d1 = p_norm(Eigen::VectorXd(q4 - q2), p);
    const double d2 = p_norm(Eigen::VectorXd(q2 - q1), p);
    const double margin = 4.0 * cfg.tol +
                          (std::isfinite(tail) ? f_norm * fam.envelope_tail(n / 4 - 1) : 0.0) +
                          slack;
    if (std::min(d1, d2) > margin) {
      ConvergenceWitness w;
      w.kind = ConvergenceWitness::Kind::subseries;
      w.subseries = kept;
      w.description = subseries_label(kept, n);
      w.drift = d1;
      w.reference_value = p_norm(q2, p);
      w.witness_value = p_norm(q4, p);
      verdict.witness = std::move(w);
      verdict.verdict = UncondVerdict::conditional_detected;
      verdict.detail = "a subseries keeps drifting across dyadic horizons";
      return verdict;
    }
  }

  verdict.verdict = UncondVerdict::inconclusive;
  verdict.detail = std::isfinite(tail)
                       ? "envelope tail exceeds tolerance at this truncation"
                       : "divergent envelope and no separating witness found";
  return verdict;
}

double recompute_witness_drift(const LazyFamily& fam, const VectorX& f,
                               const ConvergenceWitness& witness, int truncation) {
  const int n = std::max(truncation, 4);
  TermCache cache(fam, f, /*validate=*/false);
  const int dim = fam.ambient.dim;
  if (witness.kind == ConvergenceWitness::Kind::rearrangement) {
    const OrderSummary ref =
        summarize_order(cache, PermutationSpec::identity(n), n, dim, fam.ambient.p);
    const OrderSummary got = summarize_order(cache, witness.perm, n, dim, fam.ambient.p);
    return p_norm(Eigen::VectorXd(got.end_sum - ref.end_sum), fam.ambient.p);
  }
  const Eigen::VectorXd half = subseries_sum(cache, witness.subseries, n / 2, dim);
  const Eigen::VectorXd full = subseries_sum(cache, witness.subseries, n, dim);
  return p_norm(Eigen::VectorXd(full - half), fam.ambient.p);
}

PermutedNormReport unconditional_bessel_norm_check(const FrameFamily& g, double p, int num_perms,
                                                   std::uint64_t seed, const AscentConfig& cfg) {
  PermutedNormReport rep;
  rep.reference = ell_bessel_bound(g, p, cfg).upper;
  rep.num_perms = num_perms;
  rep.ok = true;

  std::mt19937_64 rng(seed);
  for (int s = 0; s < num_perms; ++s) {
    const PermutationSpec sigma = s == 0 ? PermutationSpec::reversal(g.count())
                                         : PermutationSpec::random(g.count(), rng);
    const OperatorNormEstimate got = ell_bessel_bound(permute_family(g, sigma), p, cfg).upper;
    if (rep.reference.method == NormMethod::sampled) {
      // Sampled certificates must at least overlap as intervals.
      const bool overlap = got.lower <= rep.reference.upper + 1e-9 &&
                           rep.reference.lower <= got.upper + 1e-9;
      rep.ok = rep.ok && overlap;
      rep.max_deviation = std::max(
          rep.max_deviation, std::max(got.lower - rep.reference.upper,
                                      rep.reference.lower - got.upper));
    } else {
      const double dev = std::abs(got.upper - rep.reference.upper);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      rep.ok = rep.ok && dev <= 1e-12 * std::max(1.0, rep.reference.upper);
    }
  }
  return rep;
}

}  // namespace pairframe
