#include "l1geo/io.hpp"

#include <fstream>
#include <sstream>

namespace l1geo::io {

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const json& j, Eigen::Index cols_if_empty) {
  if (!j.is_array()) throw InputError("matrix must be a JSON array of rows");
  if (j.empty()) return Matrix(0, cols_if_empty);
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw InputError("matrix entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("vector must be a JSON array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("vector entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw InputError(path.string() + ": invalid number '" + token + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path.string() + ": no data");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw InputError(path.string() + ": ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

std::string to_csv(const Matrix& m) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Dictionary load_dictionary(const std::filesystem::path& path, const Tolerances& tol) {
  if (path.extension() == ".json") {
    const json j = read_json(path);
    if (!j.contains("D")) throw InputError(path.string() + ": missing \"D\"");
    return Dictionary(matrix_from_json(j.at("D")), tol);
  }
  return Dictionary(read_csv(path), tol);
}

json instance_to_json(const ProblemInstance& inst) {
  return json{{"schema", kSchema},
              {"D", to_json(inst.dict().d())},
              {"Phi", to_json(inst.phi())},
              {"y", to_json(inst.y())},
              {"lambda", inst.lambda()}};
}

ProblemInstance instance_from_json(const json& j, const Tolerances& tol) {
  for (const char* key : {"D", "Phi", "y", "lambda"}) {
    if (!j.contains(key)) throw InputError(std::string("instance is missing \"") + key + "\"");
  }
  if (j.contains("schema") && j.at("schema") != kSchema) {
    throw InputError("unsupported schema " + j.at("schema").dump());
  }
  Dictionary dict(matrix_from_json(j.at("D")), tol);
  Matrix phi = matrix_from_json(j.at("Phi"), dict.n());
  if (!j.at("lambda").is_number()) throw InputError("lambda must be a number");
  return ProblemInstance(std::move(dict), std::move(phi), vector_from_json(j.at("y")), j.at("lambda").get<double>());
}

ProblemInstance load_instance(const std::filesystem::path& path, const Tolerances& tol) {
  return instance_from_json(read_json(path), tol);
}

AffineSubspace affine_from_json(const json& j, const Tolerances& tol) {
  if (j.contains("points")) {
    const json& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) throw InputError("\"points\" must be a nonempty array");
    std::vector<Vector> points;
    for (const json& p : pts) points.push_back(vector_from_json(p));
    return AffineSubspace::affine_hull(points, tol);
  }
  if (!j.contains("origin")) throw InputError("affine subspace needs \"origin\" or \"points\"");
  Vector origin = vector_from_json(j.at("origin"));
  const Eigen::Index n = origin.size();
  if (j.contains("normals")) {
    const Matrix rows = matrix_from_json(j.at("normals"), n);
    if (rows.rows() > 0 && rows.cols() != n) throw InputError("normals must have the origin's length");
    return AffineSubspace::from_normals(std::move(origin), rows.transpose(), tol);
  }
  if (j.contains("directions")) {
    const Matrix rows = matrix_from_json(j.at("directions"), n);
    if (rows.rows() > 0 && rows.cols() != n) throw InputError("directions must have the origin's length");
    return AffineSubspace::from_directions(std::move(origin), rows.transpose(), tol);
  }
  throw InputError("affine subspace needs \"normals\", \"directions\" or \"points\"");
}

AffineSubspace load_affine(const std::filesystem::path& path, const Tolerances& tol) {
  return affine_from_json(read_json(path), tol);
}

json description_to_json(const SolutionSetDescription& desc) {
  return json{{"schema", kSchema},
              {"x_ri", to_json(desc.x_ri)},
              {"max_sign", desc.max_sign.str()},
              {"radius", desc.radius},
              {"dim", desc.dim},
              {"compact", desc.compact},
              {"constraints",
               {{"Phi", to_json(desc.phi)},
                {"Phi_x", to_json(desc.phi_x)},
                {"cosupport_rows", to_json(desc.cosupport_rows)},
                {"signed_support_rows", to_json(desc.signed_support_rows)}}}};
}

json construction_to_json(const ConstructedInstance& ci) {
  json out = instance_to_json(ci.inst);
  json alphas = json::array();
  for (const auto& [s, a] : ci.alphas) alphas.push_back({{"sign", s.str()}, {"alpha", a}});
  out["provenance"] = {
      {"mode", ci.target.kind == TargetSet::Kind::affine_face ? "face" : "theorem-arb"},
      {"sign", ci.base_sign.str()},
      {"radius", ci.target.radius},
      {"affine",
       {{"origin", to_json(ci.target.affine.origin)},
        {"direction_basis", to_json(Matrix(ci.target.affine.direction_basis.transpose()))},
        {"normal_basis", to_json(Matrix(ci.target.affine.normal_basis.transpose()))}}},
      {"certificate",
       {{"u", to_json(ci.certificate.u)}, {"x_bar", to_json(ci.x_bar)}, {"beta", to_json(ci.beta)}, {"alphas", alphas}}}};
  return out;
}

json report_to_json(const VerificationReport& report) {
  json extreme = json::array();
  for (const Vector& x : report.extreme_points) extreme.push_back(to_json(x));
  return json{{"pass", report.pass},
              {"max_support_gap", report.max_support_gap},
              {"kernel_ok", report.kernel_ok},
              {"certificate_residual", report.certificate_residual},
              {"certificate_ok", report.certificate_ok},
              {"recovered", description_to_json(report.recovered)},
              {"extreme_points", extreme},
              {"failures", report.failures}};
}

}  // namespace l1geo::io
