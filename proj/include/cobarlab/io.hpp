#pragma once

// JSON presentations ("schema": "cobarlab/1") and report serialization.

#include "cobarlab/algebra.hpp"
#include "cobarlab/modules.hpp"
#include "cobarlab/resolve.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace cobarlab {

using json = nlohmann::json;

inline constexpr const char* kSchema = "cobarlab/1";

/// Unreadable, unparsable or schema-invalid input; the message names the location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedFile {
  std::filesystem::path path;
  std::string sha256;
  json doc;
};
LoadedFile load_presentation(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

/// "Q", "GF(p)" or {"prime": p}.
FieldSpec parse_field(const json& j, const std::string& where = "/field");
Scalar parse_scalar(const FieldSpec& f, const json& j, const std::string& where);

/// kind "finite".
Coalgebra parse_finite_coalgebra(const json& doc);
/// kind "graded": explicit components or a named construction.
GradedCoalgebra parse_graded_coalgebra(const json& doc);
/// kind "comodule" over the given coalgebra, or the keywords "k" / "regular".
Comodule parse_comodule(const json& doc, CoalgebraPtr base);
/// kind "algebra".
Algebra parse_algebra(const json& doc);
/// kind "quadratic".
GradedAlgebra parse_quadratic_algebra(const json& doc);

/// kind of a presentation document, checked against the schema tag.
std::string presentation_kind(const json& doc);

json to_json(const Coalgebra& c);
json to_json(const ExtTable& t);
json to_json(const ValidationReport& r);
json to_json(const MinimalCoresolution& r);
json to_json(const ComparisonReport& r);

}  // namespace cobarlab
