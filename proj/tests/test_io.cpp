#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "l1geo/io.hpp"
#include "support.hpp"

using namespace l1geo;
using namespace l1geo::testing;

namespace {

std::filesystem::path scratch(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("l1geo_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("CSV matrices") {
  const auto path = scratch("k4.csv", "# comment\n1, 1,0\n\n-1,0,1  # trailing\n0;-1;-1\n");
  const Matrix m = io::read_csv(path);
  Matrix expected(3, 3);
  expected << 1, 1, 0, -1, 0, 1, 0, -1, -1;
  CHECK(m == expected);
  CHECK(io::read_csv(scratch("roundtrip.csv", io::to_csv(setting3d_phi()))) == setting3d_phi());
  CHECK_THROWS_AS(io::read_csv(scratch("ragged.csv", "1,2\n3\n")), InputError);
  CHECK_THROWS_AS(io::read_csv(scratch("bad.csv", "1,x\n")), InputError);
  CHECK_THROWS_AS(io::read_csv(scratch("empty.csv", "# nothing\n")), InputError);
  CHECK_THROWS_AS(io::read_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("dictionaries by extension") {
  const Dictionary a = io::load_dictionary(scratch("d.csv", "1,0\n0,1\n1,1\n"));
  CHECK(a.n() == 3);
  CHECK(a.p() == 2);
  const Dictionary b = io::load_dictionary(scratch("d.json", R"({"D": [[1,0],[0,1],[1,1]]})"));
  CHECK(a.d() == b.d());
  CHECK_THROWS_AS(io::load_dictionary(scratch("nod.json", R"({"E": 1})")), InputError);
  CHECK_THROWS_AS(io::load_dictionary(scratch("broken.json", "{")), InputError);
}

TEST_CASE("instance round trip") {
  const ProblemInstance inst = setting3d();
  const io::json j = io::instance_to_json(inst);
  CHECK(j.at("schema") == "l1geo/1");
  CHECK(j.at("D").size() == 3);
  const ProblemInstance back = io::instance_from_json(io::json::parse(j.dump()));
  CHECK(back.dict().d() == inst.dict().d());
  CHECK(back.phi() == inst.phi());
  CHECK(back.y() == inst.y());
  CHECK(back.lambda() == inst.lambda());

  io::json bad = j;
  bad["lambda"] = -1;
  CHECK_THROWS_AS(io::instance_from_json(bad), InputError);
  bad = j;
  bad["schema"] = "other/2";
  CHECK_THROWS_AS(io::instance_from_json(bad), InputError);
  bad = j;
  bad.erase("y");
  CHECK_THROWS_AS(io::instance_from_json(bad), InputError);
  bad = j;
  bad["Phi"] = io::json::array({io::json::array({1, 2})});
  CHECK_THROWS_AS(io::instance_from_json(bad), InputError);

  // no measurements
  const ProblemInstance empty =
      io::instance_from_json(io::json{{"D", {{1, 0}, {0, 1}}}, {"Phi", io::json::array()}, {"y", io::json::array()}, {"lambda", 1}});
  CHECK(empty.phi().rows() == 0);
  CHECK(empty.phi().cols() == 2);
}

TEST_CASE("affine subspace files") {
  const AffineSubspace a = io::affine_from_json(io::json::parse(R"({"origin": [1,1,1], "normals": [[0,1,0]]})"));
  CHECK(a.dim() == 2);
  CHECK(a.normal_basis.col(0) == Vector::Unit(3, 1));
  const AffineSubspace b = io::affine_from_json(io::json::parse(R"({"origin": [0,0,0], "directions": [[1,0,-1]]})"));
  CHECK(b.dim() == 1);
  const AffineSubspace c = io::affine_from_json(io::json::parse(R"({"points": [[1,1,2],[2,1,1]]})"));
  CHECK(linalg::same_span(b.direction_basis, c.direction_basis, 3));
  CHECK_THROWS_AS(io::affine_from_json(io::json::parse(R"({"origin": [0,0]})")), InputError);
  CHECK_THROWS_AS(io::affine_from_json(io::json::parse(R"({"origin": [0,0], "normals": [[1,0,0]]})")), InputError);
}

TEST_CASE("description and construction documents") {
  const ProblemInstance inst = setting3d();
  const SolutionSetDescription desc = describe_solution_set(inst, solve_admm(inst));
  const io::json d = io::description_to_json(desc);
  CHECK(d.at("max_sign") == "+++");
  CHECK(d.at("dim") == 1);
  CHECK(d.at("compact") == true);
  CHECK(io::vector_from_json(d.at("x_ri")).isApprox(desc.x_ri));
  CHECK(d.at("constraints").at("signed_support_rows").size() == 3);

  const ConstructedInstance ci = construct_arbitrary_face(dict::difference_dict(3), SignVector{-1, 1}, 1.0,
                                                          AffineSubspace::from_normals(Vector::Ones(3), Matrix(Vector::Unit(3, 1))), 1.0);
  const io::json c = io::construction_to_json(ci);
  CHECK(c.at("provenance").at("sign") == "-+");
  CHECK(c.at("provenance").at("mode") == "face");
  CHECK(c.at("provenance").at("affine").at("normal_basis") == io::json::parse("[[0.0,1.0,0.0]]"));
  const ProblemInstance back = io::instance_from_json(c);
  CHECK(back.phi() == ci.inst.phi());
  CHECK(back.y() == ci.inst.y());
}

TEST_CASE("floats survive serialization exactly") {
  std::mt19937_64 rng(71);
  const Matrix m = random_matrix(4, 3, rng);
  CHECK(io::matrix_from_json(io::json::parse(io::to_json(m).dump())) == m);
}
