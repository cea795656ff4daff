// Batch-document layer of the command-line front door: the JSON system
// document (families, optional generalized synthesis operator, optional
// transforms, optional lazy generator) and the canonical serializer used to
// keep reports byte-stable: sorted keys, floats at 17 significant digits,
// p = inf encoded as the string "inf".

#ifndef PAIRFRAME_DOCUMENT_HPP
#define PAIRFRAME_DOCUMENT_HPP

#include "pairframe/pairframes.hpp"
#include "pairframe/unconditional.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace pairframe {

inline constexpr const char* kToolVersion = "0.1.0";

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LazyDocSpec {
  std::string generator;
  std::map<std::string, double> parameters;
};

/// In-memory form of a system document. Families may be empty only when a
/// lazy generator is present or a synthesis operator stands in for F.
struct SystemDocument {
  int dim = 0;
  double space_p = 2.0;
  double seq_p = 2.0;
  std::vector<Eigen::VectorXd> family_f;
  std::vector<Eigen::VectorXd> family_g;
  std::optional<Eigen::MatrixXd> operator_t;
  std::optional<Eigen::MatrixXd> transform_v;
  std::optional<Eigen::MatrixXd> transform_w;
  std::optional<LazyDocSpec> lazy;
};

/// Parse and validate a document. Parse failures throw ParseError; invariant
/// violations throw ValidationError naming the offending field.
SystemDocument parse_document(const std::string& text);
SystemDocument load_document(const std::string& path);

nlohmann::json document_to_json(const SystemDocument& doc);

/// Canonical serialization: objects with sorted keys, arrays inline when all
/// elements are scalars, floats via "%.17g", non-finite values as strings.
std::string canonical_dump(const nlohmann::json& j);

// ----- builders --------------------------------------------------------------

SpaceSpec ambient_space(const SystemDocument& doc);

/// G as functionals on the ambient space (coordinates live in its dual).
FrameFamily document_family_g(const SystemDocument& doc);
FrameFamily document_family_f(const SystemDocument& doc);

PairSystem document_pair_system(const SystemDocument& doc);
DenseOperator document_operator_t(const SystemDocument& doc);
DenseOperator document_transform_v(const SystemDocument& doc);
DenseOperator document_transform_w(const SystemDocument& doc);

bool document_has_families(const SystemDocument& doc);

/// Lazy family from the built-in generator registry ("geometric",
/// "alternating_harmonic"), or from the finite families when no generator is
/// named. Unknown names are validation errors.
LazyFamily document_lazy_family(const SystemDocument& doc);

/// Documents for constructed systems (dual and transformed), emitted in the
/// same schema so they can be fed back to the tool.
SystemDocument document_from_pair_system(const PairSystem& sys);
SystemDocument document_from_banach_dual(const FrameFamily& h, const DenseOperator& dual_synthesis,
                                         double seq_p);

// ----- report fragments -------------------------------------------------------

nlohmann::json to_json(const OperatorNormEstimate& est);
nlohmann::json to_json(const EllBesselCert& cert);
nlohmann::json exponent_to_json(double p);
double exponent_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace pairframe

#endif  // PAIRFRAME_DOCUMENT_HPP
