#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "l1geo/ballgeo.hpp"
#include "l1geo/construct.hpp"
#include "l1geo/dict.hpp"
#include "l1geo/errors.hpp"
#include "l1geo/io.hpp"
#include "l1geo/solset.hpp"

namespace {

using namespace l1geo;
using io::json;

// Rounding noise below 1e-12 prints as 0.
double clean(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

std::string fmt(const Vector& v) {
  std::ostringstream out;
  out.precision(10);
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << clean(v(i));
  out << ']';
  return out.str();
}

std::string fmt(const Matrix& m, const std::string& indent) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out << indent << fmt(Vector(m.row(i).transpose())) << '\n';
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

struct Common {
  std::string out_format = "text";
  std::uint64_t seed = 0;
};

int signs_enumerate(const std::string& dict_path, bool oracle, std::size_t samples, unsigned threads,
                    const Common& common) {
  const Dictionary dict = io::load_dictionary(dict_path);
  EnumerationOptions opts;
  opts.threads = threads;
  const HasseDiagram diagram = hasse_diagram(dict, opts);
  const auto& signs = diagram.poset.elements;
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < dict.p(); ++i) total *= 3;
  std::size_t n_extremal = 0;
  for (bool e : diagram.extremal) n_extremal += e;

  std::optional<std::vector<SignVector>> sampled;
  if (oracle) {
    std::clog << "running sampling oracle (" << samples << " samples per cosupport)\n";
    sampled = brute_force_feasible_signs(dict, samples, common.seed);
  }
  const bool agree = sampled && *sampled == signs;
  bool subset = true;
  if (sampled) {
    const std::set<SignVector> lp_set(signs.begin(), signs.end());
    for (const auto& s : *sampled) subset = subset && lp_set.contains(s);
  }

  if (common.out_format == "json") {
    json list = json::array();
    for (std::size_t i = 0; i < signs.size(); ++i) {
      list.push_back({{"sign", signs[i].str()},
                      {"face_dim", diagram.face_dim[i]},
                      {"extremal", static_cast<bool>(diagram.extremal[i])},
                      {"maximal", static_cast<bool>(diagram.maximal[i])}});
    }
    json out{{"schema", io::kSchema}, {"p", dict.p()}, {"total", total},
             {"feasible", signs.size()}, {"extremal", n_extremal}, {"signs", list}};
    if (sampled) out["oracle"] = {{"found", sampled->size()}, {"subset", subset}, {"agree", agree}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "feasible: " << signs.size() << " / " << total << '\n';
  std::cout << "extremal: " << n_extremal << '\n';
  if (sampled) {
    std::cout << "oracle: " << sampled->size() << " signs, subset: " << (subset ? "yes" : "no")
              << ", agreement: " << (agree ? "yes" : "no") << '\n';
  }
  for (std::size_t i = 0; i < signs.size(); ++i) {
    std::cout << signs[i].str() << "  dim " << diagram.face_dim[i];
    if (diagram.extremal[i]) std::cout << "  extremal";
    if (diagram.maximal[i]) std::cout << "  maximal";
    std::cout << '\n';
  }
  return 0;
}

int signs_hasse(const std::string& dict_path, const std::string& dot_path, unsigned threads) {
  const Dictionary dict = io::load_dictionary(dict_path);
  EnumerationOptions opts;
  opts.threads = threads;
  const HasseDiagram diagram = hasse_diagram(dict, opts);
  const std::string dot = to_dot(diagram);
  if (dot_path.empty() || dot_path == "-") {
    std::cout << dot;
  } else {
    write_file(dot_path, dot);
    std::clog << "wrote " << diagram.poset.elements.size() << " nodes, " << diagram.poset.cover_edges.size()
              << " edges to " << dot_path << '\n';
  }
  return 0;
}

int solve(const std::string& instance_path, bool describe, bool extreme, const std::vector<int>& bounds,
          const Common& common) {
  const ProblemInstance inst = io::load_instance(instance_path);
  AdmmOptions admm;
  if (common.seed != 0) admm.random_start = common.seed;
  const Vector x = solve_admm(inst, admm);
  const OptimalityCheck check = optimality_residual(inst, x);

  for (int b : bounds) {
    if (b < 1 || b > inst.dict().n()) throw InputError("--bounds index out of range: " + std::to_string(b));
  }
  const bool need_desc = describe || extreme || !bounds.empty();
  std::optional<SolutionSetDescription> desc;
  if (need_desc) desc = describe_solution_set(inst, x);
  std::vector<Vector> ext;
  if (extreme) ext = enumerate_extreme_solutions(inst, *desc);
  std::vector<std::pair<int, std::pair<double, double>>> ranges;
  for (int b : bounds) {
    ranges.push_back({b, coordinate_bounds(*desc, Vector::Unit(inst.dict().n(), b - 1))});
  }

  if (common.out_format == "json") {
    json out{{"schema", io::kSchema},
             {"x", io::to_json(x)},
             {"objective", objective(inst, x)},
             {"residual", check.residual}};
    if (check.certificate) out["certificate"] = io::to_json(check.certificate->u);
    if (desc) out["description"] = io::description_to_json(*desc);
    if (extreme) {
      json pts = json::array();
      for (const Vector& v : ext) pts.push_back(io::to_json(v));
      out["extreme_points"] = pts;
    }
    if (!ranges.empty()) {
      json br = json::array();
      for (const auto& [i, mm] : ranges) {
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "-inf"); };
        br.push_back({{"index", i}, {"min", num(mm.first)}, {"max", num(mm.second)}});
      }
      out["bounds"] = br;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "solution: " << fmt(x) << '\n';
  std::cout << "objective: " << clean(objective(inst, x)) << '\n';
  std::cout << "residual: " << check.residual << '\n';
  if (desc && (describe || extreme)) {
    std::cout << "max sign: " << desc->max_sign.str() << '\n';
    std::cout << "radius: " << desc->radius << '\n';
    std::cout << "dim: " << desc->dim << '\n';
    std::cout << "compact: " << (desc->compact ? "true" : "false") << '\n';
    std::cout << "relative interior point: " << fmt(desc->x_ri) << '\n';
  }
  if (describe) {
    std::cout << "Phi x = " << fmt(desc->phi_x) << '\n';
    if (desc->cosupport_rows.rows() > 0) std::cout << "D_J^* x = 0 with rows:\n" << fmt(desc->cosupport_rows, "  ");
    if (desc->signed_support_rows.rows() > 0) {
      std::cout << "diag(s_I) D_I^* x >= 0 with rows:\n" << fmt(desc->signed_support_rows, "  ");
    }
  }
  if (extreme) {
    std::cout << "extreme points: " << ext.size() << '\n';
    for (const Vector& v : ext) std::cout << "  " << fmt(v) << '\n';
  }
  for (const auto& [i, mm] : ranges) {
    std::cout << "bounds x" << i << ": [" << clean(mm.first) << ", " << clean(mm.second) << "]\n";
  }
  return 0;
}

struct ConstructArgs {
  std::string dict_path;
  std::string sign;
  double radius = 1;
  std::string affine_path;
  double lambda = 1;
  std::string mode = "face";
  bool verify = false;
  std::string emit;
};

int construct(const ConstructArgs& args, const Common& common) {
  const Dictionary dict = io::load_dictionary(args.dict_path);
  const AffineSubspace affine = io::load_affine(args.affine_path);
  if (affine.ambient_dim() != dict.n()) throw InputError("affine subspace and dictionary dimensions differ");
  if (!(args.lambda > 0) || !std::isfinite(args.lambda)) throw InputError("--lambda must be positive");

  std::optional<ConstructedInstance> ci;
  if (args.mode == "face") {
    if (args.sign.empty()) throw InputError("--sign is required with --mode face");
    const SignVector s = SignVector::parse(args.sign);
    if (static_cast<Eigen::Index>(s.size()) != dict.p()) throw InputError("--sign length differs from p");
    ci = construct_arbitrary_face(dict, s, args.radius, affine, args.lambda);
  } else {
    ArbOptions opts;
    opts.seed = common.seed;
    ci = construct_theorem_arb(dict, affine, args.radius, args.lambda, opts);
  }
  const json instance = io::construction_to_json(*ci);
  if (!args.emit.empty()) write_file(args.emit, instance.dump(2) + "\n");

  std::optional<VerificationReport> report;
  if (args.verify) report = verify_construction(*ci);

  if (common.out_format == "json") {
    json out{{"schema", io::kSchema}, {"instance", instance}};
    if (report) out["verification"] = io::report_to_json(*report);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "sign: " << ci->base_sign.str() << '\n';
    std::cout << "Phi:\n" << fmt(ci->inst.phi(), "  ");
    std::cout << "y: " << fmt(ci->inst.y()) << '\n';
    std::cout << "lambda: " << ci->inst.lambda() << '\n';
    std::cout << "certificate u: " << fmt(ci->certificate.u) << '\n';
    if (report) {
      std::cout << "max support gap: " << report->max_support_gap << '\n';
      std::cout << "certificate residual: " << report->certificate_residual << '\n';
      if (!report->extreme_points.empty()) {
        std::cout << "extreme points:\n";
        for (const Vector& v : report->extreme_points) std::cout << "  " << fmt(v) << '\n';
      }
      for (const auto& f : report->failures) std::cout << "failure: " << f << '\n';
      std::cout << "verification: " << (report->pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return report && !report->pass ? 1 : 0;
}

int write_dict(const std::string& kind, int n, const std::string& out_path) {
  if (n < 1) throw InputError("--n must be positive");
  std::optional<Dictionary> d;
  if (kind == "identity") {
    d = dict::identity_dict(n);
  } else if (kind == "difference") {
    if (n < 2) throw InputError("difference dictionary needs n >= 2");
    d = dict::difference_dict(n);
  } else if (kind == "incidence-complete") {
    if (n < 2) throw InputError("complete graph needs n >= 2");
    d = dict::incidence_dict(dict::complete_graph_edges(n), n);
  } else if (kind == "fused") {
    d = dict::fused_lasso_dict(n);
  } else {
    throw InputError("unknown dictionary kind " + kind);
  }
  const std::string csv = io::to_csv(d->d());
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral geometry of analysis-l1 regularization"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Seed for randomized steps")->capture_default_str();

  auto* signs = app.add_subcommand("signs", "Feasible and extremal signs of a dictionary");
  signs->require_subcommand(1);
  std::string dict_path;
  bool oracle = false;
  std::size_t samples = 200;
  unsigned threads = 1;
  auto* enumerate = signs->add_subcommand("enumerate", "List feasible signs");
  enumerate->add_option("--dict", dict_path, "Dictionary file (CSV rows of D or JSON)")->required();
  enumerate->add_flag("--oracle", oracle, "Cross-check with the sampling oracle");
  enumerate->add_option("--samples", samples, "Oracle samples per cosupport")->capture_default_str();
  enumerate->add_option("--threads", threads, "Worker threads")->capture_default_str();
  enumerate->add_option("--seed", common.seed, "Oracle seed")->capture_default_str();
  enumerate->add_option("--out", common.out_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string dot_path;
  auto* hasse = signs->add_subcommand("hasse", "Hasse diagram of the feasible signs as DOT");
  hasse->add_option("--dict", dict_path, "Dictionary file")->required();
  hasse->add_option("--dot", dot_path, "Output DOT file ('-' for stdout)")->required();
  hasse->add_option("--threads", threads, "Worker threads")->capture_default_str();

  std::string instance_path;
  bool describe = false;
  bool extreme = false;
  std::vector<int> bounds;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and describe its solution set");
  solve_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
  solve_cmd->add_flag("--describe", describe, "Print the solution set description");
  solve_cmd->add_flag("--extreme", extreme, "Enumerate extreme solutions");
  solve_cmd->add_option("--bounds", bounds, "Coordinates (1-based) to bound over the solution set");
  solve_cmd->add_option("--seed", common.seed, "Random start for the solver (0: zero start)");
  solve_cmd->add_option("--out", common.out_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  ConstructArgs cargs;
  auto* construct_cmd = app.add_subcommand("construct", "Build an instance with a prescribed solution set");
  construct_cmd->add_option("--dict", cargs.dict_path, "Dictionary file")->required();
  construct_cmd->add_option("--sign", cargs.sign, "Face sign, e.g. +0- (face mode)");
  construct_cmd->add_option("--radius", cargs.radius, "Ball radius")->required();
  construct_cmd->add_option("--affine", cargs.affine_path, "Affine subspace JSON")->required();
  construct_cmd->add_option("--lambda", cargs.lambda, "Regularization parameter")->required();
  construct_cmd->add_option("--mode", cargs.mode, "face or theorem-arb")
      ->check(CLI::IsMember({"face", "theorem-arb"}))
      ->capture_default_str();
  construct_cmd->add_flag("--verify", cargs.verify, "Solve the instance and compare with the target");
  construct_cmd->add_option("--emit", cargs.emit, "Write the instance JSON to this file");
  construct_cmd->add_option("--seed", common.seed, "Seed for the theorem-arb search");
  construct_cmd->add_option("--out", common.out_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string kind;
  int n = 0;
  std::string dict_out;
  auto* dict_cmd = app.add_subcommand("dict", "Write a standard dictionary as CSV");
  dict_cmd->add_option("--kind", kind, "identity, difference, incidence-complete or fused")
      ->required()
      ->check(CLI::IsMember({"identity", "difference", "incidence-complete", "fused"}));
  dict_cmd->add_option("--n", n, "Signal dimension (vertices for graphs)")->required();
  dict_cmd->add_option("--out", dict_out, "Output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*enumerate) return signs_enumerate(dict_path, oracle, samples, threads, common);
    if (*hasse) return signs_hasse(dict_path, dot_path, threads);
    if (*solve_cmd) return solve(instance_path, describe, extreme, bounds, common);
    if (*construct_cmd) return construct(cargs, common);
    if (*dict_cmd) return write_dict(kind, n, dict_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "did not converge: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
