// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit when
// anything fails. Brute-force oracles at desk scale; every tolerance is
// pinned in the checks themselves.

#include "pairframe/document.hpp"
#include "pairframe/duality.hpp"
#include "pairframe/hilbert.hpp"
#include "pairframe/unconditional.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace pairframe;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& label,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

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

Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    }
  }
  return m;
}

FrameFamily random_family(int count, const SpaceSpec& space, Side side, std::mt19937_64& rng) {
  std::vector<Eigen::VectorXd> vecs;
  vecs.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) vecs.push_back(random_vector(space.dim, rng));
  return make_family(std::move(vecs), space, side);
}

PairSystem random_pair_system(int dim, int count, std::mt19937_64& rng, double seq_p = 2.0) {
  const SpaceSpec x = make_space(dim, 2.0);
  return make_pair_system(random_family(count, dual_space(x), Side::functionals_on_x, rng),
                          random_family(count, x, Side::vectors_in_x, rng), seq_p);
}

bool is_frame_verdict(PairVerdict v) {
  return v == PairVerdict::pair_frame || v == PairVerdict::schauder_frame;
}

// ----- criterion 1 -------------------------------------------------------------

bool hilbert_sandwich(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  int violations = 0;
  double worst_attainment = 0.0;
  long max_evaluations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);    // <= 8
    const int count = 1 + static_cast<int>(rng() % 16);  // <= 16
    const SpaceSpec x = make_space(dim, 2.0);
    const FrameFamily fam = random_family(count, x, Side::vectors_in_x, rng);
    const auto [a, b] = frame_bounds(fam);

    for (int k = 0; k < 1000; ++k) {
      const Eigen::VectorXd f = random_unit(dim, 2.0, rng);
      double sum = 0.0;
      for (const auto& fi : fam.vectors) sum += std::pow(f.dot(fi), 2);
      if (sum < a - 1e-9 || sum > b + 1e-9) ++violations;
    }

    // The lower bound must be attained by a sampled unit vector: the sampler
    // is the multi-start projected descent, within a 10^4 evaluation budget.
    AscentConfig cfg;
    cfg.max_iters = 300;
    cfg.max_evaluations = 9900;  // stay inside the 10^4 sampling budget
    cfg.seed = 1001 + static_cast<std::uint64_t>(trial);
    const DenseOperator u =
        analysis_operator(as_functionals(fam), make_space(count, 2.0));
    const GainSample descent = min_gain_search(u, cfg);
    max_evaluations = std::max(max_evaluations, descent.evaluations);
    const double sampled_min = descent.value * descent.value;
    worst_attainment = std::max(worst_attainment, std::abs(sampled_min - a));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::ostringstream os;
  os << "violations " << violations << ", worst attainment gap " << worst_attainment
     << ", max evaluations " << max_evaluations << ", " << seconds << " s";
  detail = os.str();
  return violations == 0 && worst_attainment < 1e-6 && max_evaluations <= 10000 &&
         seconds < 10.0;
}

// ----- criterion 2 -------------------------------------------------------------

bool self_pair_equivalence(std::string& detail) {
  std::mt19937_64 rng(1002);
  int disagreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    const int count = 1 + static_cast<int>(rng() % 16);
    const SpaceSpec x = make_space(dim, 2.0);
    const FrameFamily fam = random_family(count, x, Side::vectors_in_x, rng);
    const bool frame = is_frame(fam, 1e-9);
    const PairSystem self = make_pair_system(as_functionals(fam), fam, 2.0);
    const bool pair_frame = is_frame_verdict(classify_pair(self, 1e-9).verdict);
    if (frame != pair_frame) ++disagreements;
  }
  detail = "disagreements " + std::to_string(disagreements);
  return disagreements == 0;
}

// ----- criterion 3 -------------------------------------------------------------

bool transpose_duality(std::string& detail) {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  int verdict_mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    const int count = 1 + static_cast<int>(rng() % 16);
    const PairSystem sys = random_pair_system(dim, count, rng);
    const AdjointPairCert cert = adjoint_pair(sys, 1e-9);
    worst = std::max(worst, cert.transpose_residual);
    if (!cert.verdicts_agree) ++verdict_mismatches;
  }
  std::ostringstream os;
  os << "max residual " << worst << ", verdict mismatches " << verdict_mismatches;
  detail = os.str();
  return worst <= 1e-13 && verdict_mismatches == 0;
}

// ----- criterion 4 -------------------------------------------------------------

bool bessel_round_trip(std::string& detail) {
  std::mt19937_64 rng(1004);
  const double exps[] = {1.0, 1.5, 2.0, 3.0, kInfExponent};
  int exact_failures = 0;
  int overlap_failures = 0;
  int roundtrip_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    const int count = 1 + static_cast<int>(rng() % 16);
    const SpaceSpec dom = make_space(dim, exps[rng() % 5]);
    const SpaceSpec cod = make_space(count, exps[rng() % 5]);
    const DenseOperator u = make_operator(random_matrix(count, dim, rng), dom, cod);

    const FrameFamily h = bessel_from_operator(u);
    const DenseOperator round = analysis_operator(h, cod);
    if (round.matrix != u.matrix) ++roundtrip_failures;

    const OperatorNormEstimate direct = operator_norm(u);
    const OperatorNormEstimate extracted = ell_bessel_bound(h, cod.p).upper;
    if (direct.method == NormMethod::sampled) {
      const bool overlap = extracted.lower <= direct.upper + 1e-9 &&
                           direct.lower <= extracted.upper + 1e-9;
      if (!overlap) ++overlap_failures;
    } else if (std::abs(direct.upper - extracted.upper) > 1e-9) {
      ++exact_failures;
    }
  }
  std::ostringstream os;
  os << "roundtrip failures " << roundtrip_failures << ", exact mismatches " << exact_failures
     << ", interval mismatches " << overlap_failures;
  detail = os.str();
  return roundtrip_failures == 0 && exact_failures == 0 && overlap_failures == 0;
}

// ----- criterion 5 -------------------------------------------------------------

bool banach_adjoint_identity(std::string& detail) {
  std::mt19937_64 rng(1005);
  const double exps[] = {1.5, 2.0, 3.0};
  double worst = 0.0;
  int verdict_mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    const int count = 1 + static_cast<int>(rng() % 16);
    const SpaceSpec x = make_space(dim, 2.0);
    const FrameFamily g = random_family(count, dual_space(x), Side::functionals_on_x, rng);
    const DenseOperator t =
        make_operator(random_matrix(dim, count, rng), make_space(count, exps[rng() % 3]), x);
    const AdjointBanachCert cert = adjoint_banach_pair(g, t, 1e-9);
    worst = std::max(worst, cert.transpose_residual);
    if (cert.primal_frame != cert.dual_frame) ++verdict_mismatches;
  }
  std::ostringstream os;
  os << "max residual " << worst << ", verdict mismatches " << verdict_mismatches;
  detail = os.str();
  return worst <= 1e-13 && verdict_mismatches == 0;
}

// ----- criterion 6 -------------------------------------------------------------

bool partial_sum_bound(std::string& detail) {
  std::mt19937_64 rng(1006);
  const double exps[] = {1.5, 2.0, 3.0};
  int violations = 0;
  double max_ratio = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 5);    // <= 6
    const int count = 2 + static_cast<int>(rng() % 11);  // <= 12
    const double p = exps[trial % 3];
    const SpaceSpec x = make_space(dim, 2.0);
    const FrameFamily g = random_family(count, dual_space(x), Side::functionals_on_x, rng);
    const FrameFamily f = random_family(count, x, Side::vectors_in_x, rng);
    const PairableCert cert =
        pairable_check(g, f, p, 1000, 1006 + static_cast<std::uint64_t>(trial));
    violations += cert.violations;
    max_ratio = std::max(max_ratio, cert.max_ratio);
  }
  std::ostringstream os;
  os << "violations " << violations << ", max ratio " << max_ratio;
  detail = os.str();
  return violations == 0;
}

// ----- criterion 7 -------------------------------------------------------------

bool transform_identity(std::string& detail) {
  std::mt19937_64 rng(1007);
  double worst = 0.0;
  int verdict_mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 7);
    const int count = 1 + static_cast<int>(rng() % 16);
    const PairSystem sys = random_pair_system(dim, count, rng);
    const SpaceSpec x = make_space(dim, 2.0);

    auto well_conditioned = [&](Eigen::MatrixXd& m) {
      while (true) {
        m = random_matrix(dim, dim, rng);
        const InvertibilityReport rep = is_invertible(make_operator(m, x, x), 1e-9);
        if (rep.invertible && rep.condition <= 1e3) return;
      }
    };
    Eigen::MatrixXd vm, wm;
    well_conditioned(vm);
    well_conditioned(wm);

    const TransformCert cert =
        transform_pair(sys, make_operator(vm, x, x), make_operator(wm, x, x), 1e-9);
    worst = std::max(worst, cert.residual);
    if (is_frame_verdict(cert.primal_verdict) != is_frame_verdict(cert.transformed_verdict)) {
      ++verdict_mismatches;
    }
  }
  std::ostringstream os;
  os << "max residual " << worst << ", verdict mismatches " << verdict_mismatches;
  detail = os.str();
  return worst <= 1e-13 && verdict_mismatches == 0;
}

// ----- criterion 8 -------------------------------------------------------------

bool operator_norm_closed_forms(std::string& detail) {
  std::mt19937_64 rng(1008);
  double worst_gap = 0.0;
  int soundness_violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 3 + static_cast<int>(rng() % 6);
    const int cols = 3 + static_cast<int>(rng() % 6);
    const Eigen::MatrixXd m = random_matrix(rows, cols, rng);
    for (double p : {1.0, 2.0, kInfExponent}) {
      const DenseOperator a = make_operator(m, make_space(cols, p), make_space(rows, p));
      const double exact = operator_norm(a).upper;
      const double ascent = max_gain_search(a).value;
      worst_gap = std::max(worst_gap, exact - ascent);
      if (ascent > exact + 1e-9) ++soundness_violations;
      for (int k = 0; k < 100000; ++k) {
        const Eigen::VectorXd v = random_unit(cols, p, rng);
        if (p_norm(m * v, p) > exact + 1e-9) ++soundness_violations;
      }
    }
  }
  std::ostringstream os;
  os << "worst exact-minus-ascent gap " << worst_gap << ", soundness violations "
     << soundness_violations;
  detail = os.str();
  return worst_gap < 1e-6 && soundness_violations == 0;
}

// ----- criterion 9 -------------------------------------------------------------

bool unconditional_harness(std::string& detail) {
  const SpaceSpec x = make_space(2, 2.0);
  std::ostringstream os;

  UncondConfig cfg;
  cfg.truncation = 60;
  cfg.tol = 1e-12;
  const ConvergenceVerdict geo =
      test_unconditional(geometric_family(x, 0.5), canonical_vector(0, x), cfg);
  const bool geo_ok = geo.verdict == UncondVerdict::unconditional_certified;
  os << "geometric " << to_string(geo.verdict);

  UncondConfig acfg;  // defaults: N = 512, tol = 1e-10
  const LazyFamily alt = alternating_harmonic_family(x);
  const VectorX probe = canonical_vector(0, x);
  const ConvergenceVerdict ver = test_unconditional(alt, probe, acfg);
  bool alt_ok = ver.verdict == UncondVerdict::conditional_detected && ver.witness.has_value();
  double drift = 0.0;
  if (alt_ok) {
    drift = recompute_witness_drift(alt, probe, *ver.witness, acfg.truncation);
    alt_ok = std::abs(ver.witness->drift) > 0.1 && std::abs(drift) > 0.1 &&
             std::abs(drift - ver.witness->drift) <= 1e-12;
  }
  os << "; alternating " << to_string(ver.verdict) << " drift " << drift;

  std::mt19937_64 rng(1009);
  bool perms_ok = true;
  for (int trial = 0; trial < 5; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 4);
    const int count = 2 + static_cast<int>(rng() % 8);
    const FrameFamily g =
        random_family(count, dual_space(make_space(dim, 2.0)), Side::functionals_on_x, rng);
    const PermutedNormReport rep =
        unconditional_bessel_norm_check(g, 2.0, 20, 1009 + static_cast<std::uint64_t>(trial));
    perms_ok = perms_ok && rep.ok;
  }
  os << "; permuted norms " << (perms_ok ? "equal" : "mismatch");
  detail = os.str();
  return geo_ok && alt_ok && perms_ok;
}

// ----- criterion 10 ------------------------------------------------------------

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PAIRFRAME_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult result;
  if (!pipe) return result;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool cli_golden_corpus(std::string& detail) {
  struct Entry {
    const char* doc;
    const char* command;
    const char* extra;
    int expected_exit;
  };
  const Entry entries[] = {
      {"orthonormal.json", "classify", "", 0},
      {"redundant.json", "classify", "", 0},
      {"biorthogonal.json", "classify", "", 0},
      {"rank_deficient.json", "classify", "", 1},
      {"diag_scaled_inf.json", "classify", "", 0},
      {"banach_frame.json", "classify", "", 0},
      {"mercedes.json", "classify", "", 0},
      {"banach_frame.json", "adjoint", "", 0},
      {"adjoint_pair.json", "adjoint", "", 0},
      {"transform.json", "transform", "", 0},
      {"redundant.json", "bounds", "", 0},
      {"rank_deficient.json", "bounds", "", 1},
      {"seq15.json", "bounds", "", 0},
      {"lazy_geometric.json", "unconditional", "--trunc 128", 0},
      {"lazy_alternating.json", "unconditional", "--trunc 512", 1},
  };
  int mismatches = 0;
  int wrong_exits = 0;
  for (const Entry& e : entries) {
    std::string args = std::string(e.command) + " --input " + PAIRFRAME_CORPUS_DIR + "/" +
                       e.doc + " --format json --seed 42";
    if (e.extra[0] != '\0') args += std::string(" ") + e.extra;
    const RunResult first = run_cli(args);
    const RunResult second = run_cli(args);
    if (first.output != second.output || first.output.empty()) ++mismatches;
    if (first.exit_code != e.expected_exit || second.exit_code != e.expected_exit) ++wrong_exits;
  }
  const int parse_exit =
      run_cli(std::string("classify --input ") + PAIRFRAME_CORPUS_DIR + "/bad/bad_json.json")
          .exit_code;
  const int validation_exit =
      run_cli(std::string("classify --input ") + PAIRFRAME_CORPUS_DIR + "/bad/bad_row.json")
          .exit_code;
  std::ostringstream os;
  os << "report mismatches " << mismatches << ", wrong exit codes " << wrong_exits
     << ", parse exit " << parse_exit << ", validation exit " << validation_exit;
  detail = os.str();
  return mismatches == 0 && wrong_exits == 0 && parse_exit == 2 && validation_exit == 3;
}

}  // namespace

int main() {
  run_criterion(1, "Hilbert frame sandwich with sampled attainment", hilbert_sandwich);
  run_criterion(2, "frame <-> self-pair classification equivalence", self_pair_equivalence);
  run_criterion(3, "pair operator transpose duality and verdict symmetry", transpose_duality);
  run_criterion(4, "Bessel family round trip through its coefficient operator",
                bessel_round_trip);
  run_criterion(5, "Banach pair adjoint operator identity", banach_adjoint_identity);
  run_criterion(6, "partial-sum bound for conjugate Bessel pairs", partial_sum_bound);
  run_criterion(7, "operator transforms preserve pair frames", transform_identity);
  run_criterion(8, "operator-norm closed forms vs ascent oracle and sampling",
                operator_norm_closed_forms);
  run_criterion(9, "unconditional convergence harness", unconditional_harness);
  run_criterion(10, "CLI golden corpus determinism and exit codes", cli_golden_corpus);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
