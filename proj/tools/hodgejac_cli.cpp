// hodgejac: exact Hodge-filtration dimensions of hypersurfaces and split-
// bundle zero loci through generalized Jacobian rings, with a Borel-Weil-Bott
// engine for the vanishing hypotheses.
//
// Subcommands: bott, check-vanishing, jacobian, cayley, rank-check,
// degree-bound, mult-surjectivity.  Every run writes a canonical JSON report
// (sorted keys, embedded digest; timing excluded from the digest).
//
// Exit codes: 0 success, 2 unparseable input, 3 mathematical precondition
// failure, 4 degenerate input detected.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hodgejac/apprank.hpp"
#include "hodgejac/cayley.hpp"
#include "hodgejac/jacring.hpp"
#include "hodgejac/report.hpp"

using namespace hodgejac;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string output_path(const std::string& explicit_path, const std::string& command) {
  if (!explicit_path.empty()) return explicit_path;
  std::string dir = ".";
  if (const char* env = std::getenv("HODGEJAC_OUTPUT_DIR")) dir = env;
  return dir + "/" + command + "-report.json";
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// "A3" -> ('A', 3)
std::pair<char, int> parse_type(const std::string& s) {
  if (s.size() < 2 || s[0] < 'A' || s[0] > 'G')
    throw parse_error("bad type '" + s + "', expected e.g. A3, B2, G2");
  int rank = 0;
  try {
    rank = std::stoi(s.substr(1));
  } catch (const std::exception&) {
    throw parse_error("bad rank in type '" + s + "'");
  }
  return {s[0], rank};
}

std::vector<int64_t> parse_int_list(const std::string& s) {
  std::vector<int64_t> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw parse_error("bad integer '" + tok + "' in list '" + s + "'");
    }
  }
  return out;
}

// "1..3" or "2"
std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw parse_error("bad range '" + s + "', expected e.g. 2 or 1..3");
  }
}

// Model specs: P<n> or G(a,b); the torus model is selected by --polytope.
struct ModelSpec {
  std::string model;
  int degree = 0;
  std::string polytope_file;

  AmbientModel build() const {
    if (!polytope_file.empty()) {
      std::vector<ExpVec> verts;
      std::istringstream is(read_file(polytope_file));
      std::string line;
      int lineno = 0;
      while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        verts.push_back(MultiPoly::parse_exponents(line, lineno));
      }
      return TorusModel(verts);
    }
    if (model.empty()) throw parse_error("missing --model");
    if (model[0] == 'P') {
      int n = 0;
      try {
        n = std::stoi(model.substr(1));
      } catch (const std::exception&) {
        throw parse_error("bad projective model '" + model + "'");
      }
      if (degree < 1) throw parse_error("projective model needs --degree >= 1");
      return ProjectiveModel(n, degree);
    }
    if (model[0] == 'G') {
      int a = 0, b = 0;
      if (sscanf(model.c_str(), "G(%d,%d)", &a, &b) != 2)
        throw parse_error("bad Grassmannian model '" + model + "', expected G(a,b)");
      if (degree < 1) throw parse_error("Grassmannian model needs --degree >= 1");
      return GrassmannianModel(a, b, degree);
    }
    throw parse_error("unknown model '" + model + "' (expected P<n>, G(a,b), or --polytope)");
  }
};

MultiPoly load_section(const AmbientModel& m, const std::string& poly_file, uint64_t seed,
                       int64_t coeff_bound) {
  if (!poly_file.empty()) return MultiPoly::parse(read_file(poly_file), model_arity(m));
  return random_section(m, seed, coeff_bound);
}

void emit(nlohmann::json j, const Timer& timer, const std::string& out_path) {
  finalize_report(j, timer.seconds());
  write_report(j, out_path);
  std::cout << "report: " << out_path << " (digest " << j["digest"].get<std::string>() << ")\n";
}

int run_bott(const std::string& type, const std::string& weight_s,
             const std::string& parabolic_s, const std::string& out) {
  Timer timer;
  auto [tl, rank] = parse_type(type);
  RootSystem rs(tl, rank);
  Weight lam(parse_int_list(weight_s));
  CohomologyResult res;
  if (parabolic_s.empty()) {
    res = line_bundle_cohomology(rs, lam);
  } else {
    std::set<int> removed;
    for (int64_t i : parse_int_list(parabolic_s)) removed.insert(static_cast<int>(i));
    res = gp_bundle_cohomology(rs, Parabolic(removed), lam);
  }
  nlohmann::json j = to_json(res);
  j["inputs"]["type"] = type;
  j["inputs"]["weight"] = weight_s;
  j["inputs"]["parabolic"] = parabolic_s;
  if (res.zero()) {
    std::cout << "zero cohomology (singular weight)\n";
  } else {
    for (const auto& e : res.entries)
      std::cout << "H^" << e.degree << " = V_" << e.highest_weight.str()
                << ", dim " << e.dim.get_str() << "\n";
  }
  emit(j, timer, output_path(out, "bott"));
  return 0;
}

int run_check_vanishing(const ModelSpec& spec, const std::string& condition,
                        const std::string& krange_s, int p, int q, int l, int a,
                        const std::string& degrees_s, const std::string& out) {
  Timer timer;
  nlohmann::json j;
  j["kind"] = "check-vanishing";
  j["version"] = version_string();
  j["inputs"]["model"] = spec.model;
  j["inputs"]["degree"] = spec.degree;
  j["inputs"]["condition"] = condition;
  nlohmann::json verdicts = nlohmann::json::array();

  auto flag_of = [&](const AmbientModel& m) {
    auto fd = detail::flag_data(m);
    if (!fd) throw precondition_error("condition checks need a flag-variety model");
    return std::move(*fd);
  };

  if (condition == "C" || condition == "C1") {
    AmbientModel m = spec.build();
    auto fd = flag_of(m);
    if (condition == "C") {
      if (p <= 0) throw parse_error("condition C needs --p, --q, --l");
      auto v = check_C(fd.rs, fd.parabolic, fd.L_weight, p, q, l);
      verdicts.push_back(to_json(v));
      std::cout << "C(p=" << p << ",q=" << q << ",l=" << l << "): " << to_string(v.status)
                << " [" << v.method << "]\n";
    } else {
      auto [k0, k1] = parse_range(krange_s.empty() ? "1" : krange_s);
      for (int k = k0; k <= k1; ++k) {
        auto v = check_C1(fd.rs, fd.parabolic, fd.L_weight, k);
        nlohmann::json one = to_json(v);
        one["k"] = k;
        verdicts.push_back(one);
        std::cout << "C1(k=" << k << "): " << to_string(v.status) << " [" << v.method << "]\n";
      }
    }
  } else if (condition == "CV2" || condition == "C1V") {
    if (degrees_s.empty()) throw parse_error("split-bundle conditions need --degrees");
    std::vector<int> degs;
    for (int64_t d : parse_int_list(degrees_s)) degs.push_back(static_cast<int>(d));
    int n = 0;
    if (spec.model.empty() || spec.model[0] != 'P')
      throw parse_error("CV2/C1V support projective models only");
    n = std::stoi(spec.model.substr(1));
    if (condition == "CV2") {
      auto v = check_CV2(n, degs, p, q, a, l);
      verdicts.push_back(to_json(v));
      std::cout << v.detail << "\n";
    } else {
      auto [k0, k1] = parse_range(krange_s.empty() ? "1" : krange_s);
      for (int k = k0; k <= k1; ++k) {
        auto v = check_C1V(n, degs, k);
        nlohmann::json one = to_json(v);
        one["k"] = k;
        verdicts.push_back(one);
        std::cout << "C1V(k=" << k << "): " << to_string(v.status) << "\n";
      }
    }
  } else {
    throw parse_error("unknown condition '" + condition + "' (C, C1, CV2, C1V)");
  }
  j["verdicts"] = verdicts;
  emit(j, timer, output_path(out, "check-vanishing"));
  return 0;
}

int run_jacobian(const ModelSpec& spec, const std::string& poly_file, uint64_t seed,
                 int64_t coeff_bound, int kmax, bool assume_generic, int jobs,
                 const std::string& out) {
  Timer timer;
  AmbientModel m = spec.build();
  MultiPoly f = load_section(m, poly_file, seed, coeff_bound);
  JacOptions opts;
  opts.assume_generic = assume_generic;
  opts.jobs = jobs;
  GradedReport rep = jacobian_graded_dims(m, f, kmax, opts);
  nlohmann::json j = to_json(rep);
  j["inputs"]["seed"] = poly_file.empty() ? std::to_string(seed) : "file:" + poly_file;
  j["inputs"]["kmax"] = kmax;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : lie_derivative_generators(m, f)) gens.push_back(g.str());
  j["generators"] = gens;
  std::cout << rep.model << "\n";
  std::cout << "k   dim(M/JM)^k   label\n";
  for (const auto& e : rep.per_degree)
    std::cout << e.k << "   " << e.dim << "   " << e.hodge_label
              << (e.hypotheses_certified ? "" : "  (conditional)") << "\n";
  std::cout << "total " << rep.total << "\n";
  emit(j, timer, output_path(out, "jacobian"));
  return rep.degenerate_detected ? 4 : 0;
}

int run_cayley(int n, const std::string& degrees_s, const std::vector<std::string>& poly_files,
               uint64_t seed, int64_t coeff_bound, const std::string& out) {
  Timer timer;
  std::vector<int> degs;
  for (int64_t d : parse_int_list(degrees_s)) degs.push_back(static_cast<int>(d));
  CayleyModel m(n, degs);
  std::vector<MultiPoly> fl;
  if (!poly_files.empty()) {
    if (static_cast<int>(poly_files.size()) != m.r())
      throw parse_error("expected " + std::to_string(m.r()) + " polynomial files");
    for (const auto& pf : poly_files) fl.push_back(MultiPoly::parse(read_file(pf), n + 1));
  } else {
    fl = cayley_random_sections(m, seed, coeff_bound);
  }
  VarHodgeReport rep = variable_hodge_report(m, fl);
  nlohmann::json j = to_json(rep);
  j["inputs"]["seed"] = poly_files.empty() ? std::to_string(seed) : "files";
  std::cout << rep.model << "\n";
  for (const auto& e : rep.per_k)
    std::cout << "h^{" << (n - m.r() - e.k) << "," << e.k << "}_var = " << e.dim << "\n";
  emit(j, timer, output_path(out, "cayley"));
  return rep.degenerate_detected ? 4 : 0;
}

int run_rank_check(const ModelSpec& spec, const std::string& poly_file, uint64_t seed,
                   int64_t coeff_bound, bool assume_generic, const std::string& out) {
  Timer timer;
  AmbientModel m = spec.build();
  MultiPoly f = load_section(m, poly_file, seed, coeff_bound);
  JacOptions opts;
  opts.assume_generic = assume_generic;
  RankCheckResult res = rank_check_cy(m, f, opts);
  nlohmann::json j = to_json(res);
  j["inputs"]["seed"] = poly_file.empty() ? std::to_string(seed) : "file:" + poly_file;
  std::cout << "computed " << res.computed_total.get_str() << ", expected "
            << res.expected.get_str() << (res.agree ? " (agree)" : " (MISMATCH)") << "\n";
  emit(j, timer, output_path(out, "rank-check"));
  if (res.report.degenerate_detected) return 4;
  return res.agree ? 0 : 4;
}

int run_degree_bound(const ModelSpec& spec, const std::string& poly_file, uint64_t seed,
                     int64_t coeff_bound, const std::string& h_file, int bound,
                     const std::string& out) {
  Timer timer;
  AmbientModel m = spec.build();
  auto* pm = std::get_if<ProjectiveModel>(&m);
  if (!pm) throw precondition_error("degree-bound certificates support projective models");
  MultiPoly f = load_section(m, poly_file, seed, coeff_bound);
  MultiPoly h = MultiPoly::parse(read_file(h_file), pm->n + 1);
  MembershipChecker checker(*pm, f, bound);
  MembershipCertificate cert = checker.certify(h);
  nlohmann::json j = to_json(cert, checker.generators());
  j["inputs"]["seed"] = poly_file.empty() ? std::to_string(seed) : "file:" + poly_file;
  j["inputs"]["h"] = h_file;
  std::cout << (cert.member ? "member" : "non-member");
  if (cert.member)
    std::cout << ", max cofactor degree " << cert.max_cofactor_fdegree;
  else
    std::cout << ", " << cert.residual_coordinates.size() << " surviving coordinates";
  std::cout << "\n";
  emit(j, timer, output_path(out, "degree-bound"));
  return 0;
}

int run_mult_surjectivity(const ModelSpec& spec, int k, const std::string& out) {
  Timer timer;
  AmbientModel m = spec.build();
  SurjectivityResult res = multiplication_surjectivity(m, k);
  nlohmann::json j = to_json(res);
  j["inputs"]["model"] = spec.model;
  j["inputs"]["degree"] = spec.degree;
  j["inputs"]["k"] = k;
  switch (res.kind) {
    case SurjectivityResult::Kind::Surjective:
      std::cout << "Surjective (rank " << res.rank << ")\n";
      break;
    case SurjectivityResult::Kind::NotSurjective:
      std::cout << "NotSurjective (corank " << res.corank << ")\n";
      break;
    default:
      std::cout << "EmptySource\n";
  }
  emit(j, timer, output_path(out, "mult-surjectivity"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobian rings, Hodge filtrations and Borel-Weil-Bott cohomology"};
  app.require_subcommand(1);

  // bott
  auto* bott = app.add_subcommand("bott", "Borel-Weil-Bott cohomology of a line bundle");
  std::string bott_type, bott_weight, bott_parabolic, bott_out;
  bott->add_option("--type", bott_type, "simple type, e.g. A3")->required();
  bott->add_option("--weight", bott_weight, "weight in the fundamental basis, e.g. 2,-2,2")
      ->required();
  bott->add_option("--parabolic", bott_parabolic,
                   "removed simple roots: check an irreducible G/P bundle instead");
  bott->add_option("--output", bott_out, "report path");

  // check-vanishing
  auto* cv = app.add_subcommand("check-vanishing", "vanishing conditions C/C1/CV2/C1V");
  ModelSpec cv_spec;
  std::string cv_condition, cv_krange, cv_degrees, cv_out;
  int cv_p = 0, cv_q = 0, cv_l = 0, cv_a = 0;
  cv->add_option("--model", cv_spec.model, "P<n> or G(a,b)");
  cv->add_option("--degree", cv_spec.degree, "line bundle degree");
  cv->add_option("--condition", cv_condition, "C | C1 | CV2 | C1V")->required();
  cv->add_option("--k", cv_krange, "k or k0..k1 for C1/C1V");
  cv->add_option("--p", cv_p, "cohomological degree for C/CV2");
  cv->add_option("--q", cv_q, "form degree for C/CV2");
  cv->add_option("--l", cv_l, "twist power for C/CV2");
  cv->add_option("--a", cv_a, "wedge index for CV2");
  cv->add_option("--degrees", cv_degrees, "split bundle degrees for CV2/C1V, e.g. 2,2");
  cv->add_option("--output", cv_out, "report path");

  // jacobian
  auto* jac = app.add_subcommand("jacobian", "graded dims of M/JM");
  ModelSpec jac_spec;
  std::string jac_poly, jac_out;
  uint64_t jac_seed = 1;
  int64_t jac_bound = 9;
  int jac_kmax = 0, jac_jobs = 1;
  bool jac_assume = false;
  jac->add_option("--model", jac_spec.model, "P<n> or G(a,b)");
  jac->add_option("--degree", jac_spec.degree, "line bundle degree");
  jac->add_option("--polytope", jac_spec.polytope_file, "vertex file for the torus model");
  jac->add_option("--poly", jac_poly, "section file (term-per-line format)");
  jac->add_option("--seed", jac_seed, "random section seed");
  jac->add_option("--coeff-bound", jac_bound, "random coefficient bound");
  jac->add_option("--kmax", jac_kmax, "top filtration index")->required();
  jac->add_flag("--assume-generic", jac_assume, "skip the smoothness certificate");
  jac->add_option("--jobs", jac_jobs, "per-degree parallelism (output is identical)");
  jac->add_option("--output", jac_out, "report path");

  // cayley
  auto* cay = app.add_subcommand("cayley", "variable Hodge numbers of split-bundle zero loci");
  int cay_n = 0;
  std::string cay_degrees, cay_out;
  std::vector<std::string> cay_polys;
  uint64_t cay_seed = 1;
  int64_t cay_bound = 9;
  cay->add_option("--n", cay_n, "ambient projective dimension")->required();
  cay->add_option("--degrees", cay_degrees, "bundle degrees, e.g. 2,2")->required();
  cay->add_option("--poly", cay_polys, "section files f_1..f_r");
  cay->add_option("--seed", cay_seed, "random section seed");
  cay->add_option("--coeff-bound", cay_bound, "random coefficient bound");
  cay->add_option("--output", cay_out, "report path");

  // rank-check
  auto* rc = app.add_subcommand("rank-check", "CY rank identity dim R/J = h^n(X - Y)");
  ModelSpec rc_spec;
  std::string rc_poly, rc_out;
  uint64_t rc_seed = 1;
  int64_t rc_bound = 9;
  bool rc_assume = false;
  rc->add_option("--model", rc_spec.model, "P<n> or G(a,b)");
  rc->add_option("--degree", rc_spec.degree, "line bundle degree (CY: d = index)");
  rc->add_option("--poly", rc_poly, "section file");
  rc->add_option("--seed", rc_seed, "random section seed");
  rc->add_option("--coeff-bound", rc_bound, "random coefficient bound");
  rc->add_flag("--assume-generic", rc_assume, "skip the smoothness certificate");
  rc->add_option("--output", rc_out, "report path");

  // degree-bound
  auto* db = app.add_subcommand("degree-bound", "membership certificate with bounded cofactors");
  ModelSpec db_spec;
  std::string db_poly, db_h, db_out;
  uint64_t db_seed = 1;
  int64_t db_bound_coeff = 9;
  int db_bound = 2;
  db->add_option("--model", db_spec.model, "P<n>");
  db->add_option("--degree", db_spec.degree, "line bundle degree (CY: d = n+1)");
  db->add_option("--poly", db_poly, "section file");
  db->add_option("--seed", db_seed, "random section seed");
  db->add_option("--coeff-bound", db_bound_coeff, "random coefficient bound");
  db->add_option("--query", db_h, "membership query file")->required();
  db->add_option("--bound", db_bound, "maximal f-degree of h");
  db->add_option("--output", db_out, "report path");

  // mult-surjectivity
  auto* ms = app.add_subcommand("mult-surjectivity",
                                "surjectivity of H0(L) x H0(K L^k) -> H0(K L^{k+1})");
  ModelSpec ms_spec;
  std::string ms_out;
  int ms_k = 0;
  ms->add_option("--model", ms_spec.model, "P<n> or G(a,b)");
  ms->add_option("--degree", ms_spec.degree, "line bundle degree");
  ms->add_option("--k", ms_k, "power k")->required();
  ms->add_option("--output", ms_out, "report path");

  try {
    app.parse(argc, argv);
    if (bott->parsed()) return run_bott(bott_type, bott_weight, bott_parabolic, bott_out);
    if (cv->parsed())
      return run_check_vanishing(cv_spec, cv_condition, cv_krange, cv_p, cv_q, cv_l, cv_a,
                                 cv_degrees, cv_out);
    if (jac->parsed())
      return run_jacobian(jac_spec, jac_poly, jac_seed, jac_bound, jac_kmax, jac_assume,
                          jac_jobs, jac_out);
    if (cay->parsed())
      return run_cayley(cay_n, cay_degrees, cay_polys, cay_seed, cay_bound, cay_out);
    if (rc->parsed()) return run_rank_check(rc_spec, rc_poly, rc_seed, rc_bound, rc_assume, rc_out);
    if (db->parsed())
      return run_degree_bound(db_spec, db_poly, db_seed, db_bound_coeff, db_h, db_bound, db_out);
    if (ms->parsed()) return run_mult_surjectivity(ms_spec, ms_k, ms_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const degenerate_error& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 4;
  } catch (const precondition_error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
