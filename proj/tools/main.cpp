// Command-line front door: load a pair-system document, run a verification,
// print a human-readable or canonical JSON report.
//
// Exit codes: 0 success, 1 verdict-negative (e.g. not a frame),
//             2 parse error, 3 validation / invariant violation.

#include "pairframe/document.hpp"
#include "pairframe/duality.hpp"
#include "pairframe/hilbert.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;
using namespace pairframe;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

struct CommonOptions {
  std::string input;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string format = "text";
};

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json report_header(const char* command, const CommonOptions& opt) {
  json j;
  j["command"] = command;
  j["input"] = opt.input;
  j["seed"] = opt.seed;
  j["tol"] = opt.tol;
  j["version"] = kToolVersion;
  return j;
}

void print_text_header(const char* command, const CommonOptions& opt) {
  std::cout << "pairframe " << kToolVersion << " " << command << "\n";
  std::cout << "input: " << opt.input << "\n";
  std::cout << "seed: " << opt.seed << "  tol: " << fmt(opt.tol) << "\n";
}

void print_estimate_text(const char* label, const OperatorNormEstimate& est) {
  std::cout << label << ": [" << fmt(est.lower) << ", " << fmt(est.upper) << "] ("
            << to_string(est.method) << ")\n";
}

void emit(const json& report, const CommonOptions& opt) {
  if (opt.format == "json") std::cout << canonical_dump(report);
}

AscentConfig ascent_config(const CommonOptions& opt) {
  AscentConfig cfg;
  cfg.seed = opt.seed;
  return cfg;
}

// ----- classify ---------------------------------------------------------------

int cmd_classify(const CommonOptions& opt) {
  const SystemDocument doc = load_document(opt.input);
  PairClassification cls;
  if (!doc.family_f.empty()) {
    cls = classify_pair(document_pair_system(doc), opt.tol);
  } else {
    cls = classify_banach_pair(document_family_g(doc), document_operator_t(doc), opt.tol);
  }

  json report = report_header("classify", opt);
  report["verdict"] = to_string(cls.verdict);
  report["condition"] = cls.condition;
  report["identity_residual"] = cls.identity_residual;
  report["operator_norm_2"] = cls.operator_norm_2;
  report["pair_operator"] = [&] {
    json rows = json::array();
    for (Eigen::Index i = 0; i < cls.pair_operator.matrix.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < cls.pair_operator.matrix.cols(); ++k) {
        row.push_back(cls.pair_operator.matrix(i, k));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }();
  emit(report, opt);
  if (opt.format == "text") {
    print_text_header("classify", opt);
    std::cout << "verdict: " << to_string(cls.verdict) << "\n";
    std::cout << "operator 2-norm: " << fmt(cls.operator_norm_2) << "\n";
    std::cout << "condition: " << fmt(cls.condition) << "\n";
    std::cout << "identity residual: " << fmt(cls.identity_residual) << "\n";
  }
  const bool frame = cls.verdict == PairVerdict::pair_frame ||
                     cls.verdict == PairVerdict::schauder_frame;
  return frame ? kExitOk : kExitNegative;
}

// ----- bounds -----------------------------------------------------------------

int cmd_bounds(const CommonOptions& opt, double p_override) {
  const SystemDocument doc = load_document(opt.input);
  const double p = p_override > 0 ? p_override : doc.seq_p;
  const FrameFamily g = document_family_g(doc);
  const EllBesselCert cert = ell_frame_bounds(g, p, ascent_config(opt));

  json report = report_header("bounds", opt);
  report["p"] = exponent_to_json(p);
  report["bessel_bound"] = to_json(cert.upper);
  report["lower_frame_bound"] = to_json(*cert.lower);
  const bool is_ell_frame = cert.lower->lower > opt.tol;
  report["is_ell_frame"] = is_ell_frame;
  emit(report, opt);
  if (opt.format == "text") {
    print_text_header("bounds", opt);
    std::cout << "p: " << fmt(p) << "\n";
    print_estimate_text("upper bound B", cert.upper);
    print_estimate_text("lower bound A", *cert.lower);
    std::cout << "l-frame: " << (is_ell_frame ? "yes" : "no") << "\n";
  }
  return is_ell_frame ? kExitOk : kExitNegative;
}

// ----- adjoint ----------------------------------------------------------------

int cmd_adjoint(const CommonOptions& opt, const std::string& emit_path) {
  const SystemDocument doc = load_document(opt.input);

  json report = report_header("adjoint", opt);
  SystemDocument dual_doc;
  bool ok = true;
  if (doc.operator_t) {
    const FrameFamily g = document_family_g(doc);
    const DenseOperator t = document_operator_t(doc);
    const AdjointBanachCert cert = adjoint_banach_pair(g, t, opt.tol);
    dual_doc = document_from_banach_dual(cert.dual_family, cert.dual_synthesis,
                                         conjugate_exponent(doc.seq_p));
    report["mode"] = "banach";
    report["transpose_residual"] = cert.transpose_residual;
    report["primal_frame"] = cert.primal_frame;
    report["dual_frame"] = cert.dual_frame;
    ok = cert.primal_frame == cert.dual_frame;
    if (opt.format == "text") {
      print_text_header("adjoint", opt);
      std::cout << "mode: banach\n";
      std::cout << "transpose residual: " << fmt(cert.transpose_residual) << "\n";
      std::cout << "primal frame: " << (cert.primal_frame ? "yes" : "no")
                << "  dual frame: " << (cert.dual_frame ? "yes" : "no") << "\n";
    }
  } else {
    const PairSystem sys = document_pair_system(doc);
    const AdjointPairCert cert = adjoint_pair(sys, opt.tol);
    dual_doc = document_from_pair_system(cert.dual_system);
    report["mode"] = "pair";
    report["transpose_residual"] = cert.transpose_residual;
    report["primal_verdict"] = to_string(cert.primal_verdict);
    report["dual_verdict"] = to_string(cert.dual_verdict);
    ok = cert.verdicts_agree;
    if (opt.format == "text") {
      print_text_header("adjoint", opt);
      std::cout << "mode: pair\n";
      std::cout << "transpose residual: " << fmt(cert.transpose_residual) << "\n";
      std::cout << "primal verdict: " << to_string(cert.primal_verdict) << "\n";
      std::cout << "dual verdict: " << to_string(cert.dual_verdict) << "\n";
    }
  }
  report["dual_document"] = document_to_json(dual_doc);
  emit(report, opt);
  if (!emit_path.empty()) {
    std::ofstream out(emit_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open emit path: " + emit_path);
    out << canonical_dump(document_to_json(dual_doc));
  }
  return ok ? kExitOk : kExitNegative;
}

// ----- transform --------------------------------------------------------------

int cmd_transform(const CommonOptions& opt) {
  const SystemDocument doc = load_document(opt.input);
  const PairSystem sys = document_pair_system(doc);
  const TransformCert cert =
      transform_pair(sys, document_transform_v(doc), document_transform_w(doc), opt.tol);

  json report = report_header("transform", opt);
  report["residual"] = cert.residual;
  report["v_invertible"] = cert.v_invertible;
  report["w_invertible"] = cert.w_invertible;
  report["primal_verdict"] = to_string(cert.primal_verdict);
  report["transformed_verdict"] = to_string(cert.transformed_verdict);
  report["transformed_document"] = document_to_json(document_from_pair_system(cert.system));
  emit(report, opt);
  if (opt.format == "text") {
    print_text_header("transform", opt);
    std::cout << "residual vs V S W: " << fmt(cert.residual) << "\n";
    std::cout << "V invertible: " << (cert.v_invertible ? "yes" : "no")
              << "  W invertible: " << (cert.w_invertible ? "yes" : "no") << "\n";
    std::cout << "primal verdict: " << to_string(cert.primal_verdict) << "\n";
    std::cout << "transformed verdict: " << to_string(cert.transformed_verdict) << "\n";
  }
  const bool ok = !(cert.v_invertible && cert.w_invertible) || cert.frame_preserved;
  return ok ? kExitOk : kExitNegative;
}

// ----- unconditional ------------------------------------------------------------

int cmd_unconditional(const CommonOptions& opt, int trunc, int num_perms, int num_subseries) {
  const SystemDocument doc = load_document(opt.input);
  const LazyFamily fam = document_lazy_family(doc);

  UncondConfig cfg;
  cfg.num_perms = num_perms;
  cfg.num_subseries = num_subseries;
  cfg.tol = opt.tol;
  cfg.seed = opt.seed;
  cfg.truncation = trunc > 0 ? trunc
                             : (doc.lazy ? 512 : std::max<int>(4, static_cast<int>(doc.family_g.size())));

  // Deterministic probe vectors: leading canonical directions plus seeded
  // random unit vectors.
  std::vector<std::pair<std::string, VectorX>> probes;
  const SpaceSpec ambient = fam.ambient;
  for (int i = 0; i < std::min(ambient.dim, 4); ++i) {
    probes.emplace_back("e" + std::to_string(i + 1), canonical_vector(i, ambient));
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < 2; ++s) {
    Eigen::VectorXd v(ambient.dim);
    for (int i = 0; i < ambient.dim; ++i) v[i] = gauss(rng);
    const double n = p_norm(v, ambient.p);
    if (n > 0) probes.emplace_back("random" + std::to_string(s + 1), make_vector(v / n, ambient));
  }

  json report = report_header("unconditional", opt);
  report["truncation"] = cfg.truncation;
  json verdicts = json::array();
  bool any_detected = false;
  bool all_certified = true;
  std::string overall_detail;
  for (const auto& [label, f] : probes) {
    const ConvergenceVerdict v = test_unconditional(fam, f, cfg);
    json entry;
    entry["vector"] = label;
    entry["verdict"] = to_string(v.verdict);
    entry["tail_bound"] = v.tail_bound;
    entry["detail"] = v.detail;
    if (v.witness) {
      entry["witness"] = json{{"kind", v.witness->kind == ConvergenceWitness::Kind::rearrangement
                                           ? "rearrangement"
                                           : "subseries"},
                              {"description", v.witness->description},
                              {"drift", v.witness->drift}};
    }
    verdicts.push_back(std::move(entry));
    any_detected = any_detected || v.verdict == UncondVerdict::conditional_detected;
    all_certified = all_certified && v.verdict == UncondVerdict::unconditional_certified;
  }
  const char* overall = any_detected ? "ConditionalDetected"
                                     : (all_certified ? "UnconditionalCertified" : "Inconclusive");
  report["verdicts"] = std::move(verdicts);
  report["overall"] = overall;
  emit(report, opt);
  if (opt.format == "text") {
    print_text_header("unconditional", opt);
    std::cout << "truncation: " << cfg.truncation << "\n";
    for (const auto& entry : report["verdicts"]) {
      std::cout << entry["vector"].get<std::string>() << ": "
                << entry["verdict"].get<std::string>();
      if (entry.contains("witness")) {
        std::cout << " (witness " << entry["witness"]["description"].get<std::string>()
                  << ", drift " << fmt(entry["witness"]["drift"].get<double>()) << ")";
      }
      std::cout << "\n";
    }
    std::cout << "overall: " << overall << "\n";
  }
  return std::string(overall) == "UnconditionalCertified" ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pair-frame verification toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  double p_override = -1.0;
  std::string emit_path;
  int trunc = 0;
  int num_perms = 64;
  int num_subseries = 64;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "path to a system document")->required();
    sub->add_option("--tol", opt.tol, "numerical tolerance");
    sub->add_option("--seed", opt.seed, "seed echoed into the report");
    sub->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* classify = app.add_subcommand("classify", "classify a pair system");
  add_common(classify);
  CLI::App* bounds = app.add_subcommand("bounds", "sequence-space frame bounds for family G");
  add_common(bounds);
  bounds->add_option("--p", p_override, "sequence exponent override");
  CLI::App* adjoint_cmd = app.add_subcommand("adjoint", "construct the dual-space system");
  add_common(adjoint_cmd);
  adjoint_cmd->add_option("--emit", emit_path, "write the dual system document to a file");
  CLI::App* transform = app.add_subcommand("transform", "apply operators V, W to the system");
  add_common(transform);
  CLI::App* uncond = app.add_subcommand("unconditional", "truncated unconditional-convergence test");
  add_common(uncond);
  uncond->add_option("--trunc", trunc, "truncation length (default: 512 lazy, count finite)");
  uncond->add_option("--perms", num_perms, "number of sampled permutations");
  uncond->add_option("--subseries", num_subseries, "number of sampled subseries");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(opt);
    if (bounds->parsed()) return cmd_bounds(opt, p_override);
    if (adjoint_cmd->parsed()) return cmd_adjoint(opt, emit_path);
    if (transform->parsed()) return cmd_transform(opt);
    if (uncond->parsed()) return cmd_unconditional(opt, trunc, num_perms, num_subseries);
  } catch (const pairframe::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const pairframe::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
