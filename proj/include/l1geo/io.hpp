#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "l1geo/ballgeo.hpp"
#include "l1geo/construct.hpp"
#include "l1geo/solset.hpp"

namespace l1geo::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "l1geo/1";

json to_json(const Matrix& m);  // array of rows
json to_json(const Vector& v);
Matrix matrix_from_json(const json& j, Eigen::Index cols_if_empty = 0);
Vector vector_from_json(const json& j);

/// Comma- or whitespace-separated rows; '#' starts a comment.
Matrix read_csv(const std::filesystem::path& path);
std::string to_csv(const Matrix& m);

/// D from a CSV file (rows of D, n x p) or a JSON file with a "D" member.
Dictionary load_dictionary(const std::filesystem::path& path, const Tolerances& tol = {});

/// {"schema", "D", "Phi", "y", "lambda"}; D is n x p with atoms as columns.
json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const json& j, const Tolerances& tol = {});
ProblemInstance load_instance(const std::filesystem::path& path, const Tolerances& tol = {});

/// {"origin": [...], and one of "normals" | "directions" | "points": [[...], ...]}.
AffineSubspace affine_from_json(const json& j, const Tolerances& tol = {});
AffineSubspace load_affine(const std::filesystem::path& path, const Tolerances& tol = {});

json description_to_json(const SolutionSetDescription& desc);

/// Instance JSON plus a "provenance" block (sign, radius, affine bases, certificate).
json construction_to_json(const ConstructedInstance& ci);
json report_to_json(const VerificationReport& report);

json read_json(const std::filesystem::path& path);

}  // namespace l1geo::io
