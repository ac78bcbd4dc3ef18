#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gcontact/errors.hpp"
#include "gcontact/models.hpp"

namespace gcontact {

/// A model file that could not be read, parsed or validated.  The message
/// starts with the file name, then either line:column (syntax) or the path of
/// the offending field (semantics).
class ModelFileError : public Error {
 public:
  using Error::Error;
};

struct LoadedModel {
  std::string kind;  // "contact-chart", "jacobi" or "courant-jacobi"
  ContactModel model;
  std::optional<JacobiPair> jacobi;
  std::optional<CourantJacobiData> courant_jacobi;
  CJEncoding encoding = CJEncoding::calibrated;
};

/// Reads a JSON model description:
///   contact-chart:  coordinates [{name, degree}], alpha, S (optional)
///   jacobi:         coordinates | base_dim, Lambda, E (optional)
///   courant-jacobi: coordinates | base_dim, rank, g, a, b, T (a, b, T optional),
///                   encoding "calibrated" | "literal" (optional)
/// Coefficients are expression strings (or integers).  With base_dim the base
/// coordinates are x, y, z for dimension up to 3 and x1..xd beyond.  Unknown
/// keys are rejected.
LoadedModel parse_model(const std::filesystem::path& path);
LoadedModel parse_model_text(std::string_view text, const std::string& origin = "<model>");

}  // namespace gcontact
