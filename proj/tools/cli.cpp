#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "catalog.hpp"
#include "hyperglue/coxeter.hpp"
#include "hyperglue/homology.hpp"
#include "hyperglue/polytope.hpp"
#include "hyperglue/search.hpp"
#include "hyperglue/side_pairing.hpp"
#include "hyperglue/symmetry.hpp"
#include "hyperglue/volume.hpp"
#include "snf_oracle.hpp"

namespace hyperglue::cli {

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  ExitCode code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(ExitCode code, std::string kind, std::string message) {
  throw Failure{code, std::move(kind), std::move(message)};
}

struct Config {
  unsigned threads = 1;
  std::string sigma = "builtin";
  int split_depth = 2;
  std::uint64_t max_nodes = 0;
  std::string checkpoint;
  std::string catalog;
  std::string source = "defaults";  // canonical text the config hash is taken from
};

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  std::ifstream f(path);
  if (!f) fail(missing_file, "missing_file", "cannot open config file " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    fail(usage_error, "config", std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(usage_error, "config", "config file must hold a JSON object");
  for (const auto& [k, v] : j.items()) {
    try {
      if (k == "threads") c.threads = v.get<unsigned>();
      else if (k == "sigma") c.sigma = v.get<std::string>();
      else if (k == "split_depth") c.split_depth = v.get<int>();
      else if (k == "max_nodes") c.max_nodes = v.get<std::uint64_t>();
      else if (k == "checkpoint") c.checkpoint = v.get<std::string>();
      else if (k == "catalog") c.catalog = v.get<std::string>();
      else fail(usage_error, "config", "unknown config key '" + k + "'");
    } catch (const json::exception& e) {
      fail(usage_error, "config", "bad value for config key '" + k + "': " + e.what());
    }
  }
  c.source = j.dump();
  return c;
}

PairingCode parse_code(const std::string& text) {
  int n = 0;
  for (int d = 4; d <= 6; ++d)
    if (code_length(d) == text.size()) n = d;
  if (!n)
    fail(malformed_code, "malformed_code",
         "code '" + text + "' has length " + std::to_string(text.size()) + "; expected 6, 11 or 21 symbols");
  try {
    return PairingCode(n, text);
  } catch (const CodeError& e) {
    fail(malformed_code, "malformed_code", e.what());
  }
}

SigmaSource sigma_for(const std::string& spec, int n) {
  if (spec != "builtin" && spec != "none" && !std::filesystem::exists(spec))
    fail(missing_file, "missing_file", "sigma file " + spec + " does not exist");
  try {
    return load_sigma(spec, n);
  } catch (const std::ios_base::failure& e) {
    fail(missing_file, "missing_file", e.what());
  } catch (const std::invalid_argument& e) {
    fail(usage_error, "bad_sigma", e.what());
  }
}

json exact(const ExactVolume& v) {
  std::ostringstream approx;
  approx << std::setprecision(12) << v.approx();
  return {{"exact", v.str()}, {"coefficient", to_string(v.coefficient)}, {"pi_power", v.pi_power},
          {"approx", approx.str()}};
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// polytope ------------------------------------------------------------------

int cmd_polytope(std::ostream& out, int n, bool walls, bool faces) {
  if (n < 4 || n > 8) fail(usage_error, "bad_argument", "--n must lie in 4..8");
  json j;
  j["n"] = n;
  if (n <= 6) {
    const Polytope& P = polytope(n);
    j["sides"] = P.wall_count();
    j["interior_point"] = P.interior_point().str();
    if (walls) {
      json w = json::array();
      for (const auto& u : P.normals()) w.push_back(u.str());
      j["walls"] = w;
    }
    j["noncoordinate_walls"] = P.noncoordinate_count();
    const auto census = P.face_census();
    j["face_census"] = census;
    j["ideal_vertices"] = P.ideal_vertices().size();
    if (faces) {
      json fs = json::array();
      for (const Face& f : P.faces())
        fs.push_back({{"dim", f.dim}, {"ideal", f.ideal}, {"support", std::to_string(f.support)}});
      j["faces"] = fs;
    }
    const TileComplex tc = tile_complex(P);
    j["tiles"] = tc.tiles.size();
    j["tile_block_sides"] = tc.sides.size();
  } else {
    const Polytope P = build_P(n);
    j["sides"] = P.wall_count();
    j["interior_point"] = P.interior_point().str();
    if (walls) {
      json w = json::array();
      for (const auto& u : P.normals()) w.push_back(u.str());
      j["walls"] = w;
    }
  }
  print(out, j);
  return ok;
}

// euler ---------------------------------------------------------------------

int cmd_euler(std::ostream& out, int n, const std::string& diagram_path) {
  json j;
  if (!diagram_path.empty()) {
    std::ifstream f(diagram_path);
    if (!f) fail(missing_file, "missing_file", "cannot open diagram file " + diagram_path);
    std::stringstream buf;
    buf << f.rdbuf();
    CoxeterDiagram d;
    try {
      d = CoxeterDiagram::parse(buf.str());
    } catch (const std::invalid_argument& e) {
      fail(usage_error, "bad_diagram", e.what());
    }
    j["rank"] = d.rank();
    j["euler_characteristic"] = to_string(euler_characteristic(d));
  } else {
    if (n < 4 || n > 8) fail(usage_error, "bad_argument", "--n must lie in 4..8");
    const auto r = simplex_roots(n);
    const Rational chi = euler_characteristic(r.diagram());
    j["n"] = n;
    j["euler_characteristic"] = to_string(chi);
    if (chi != 0) j["reciprocal"] = to_string(Rational(1) / chi);
    const auto gv = spherical_order(r.vertex_stabilizer());
    const auto ge = spherical_order(r.edge_stabilizer());
    j["vertex_stabilizer"] = {{"type", spherical_type(r.vertex_stabilizer()).value_or("infinite")},
                              {"order", gv ? gv->str() : "infinite"}};
    j["edge_stabilizer"] = {{"type", spherical_type(r.edge_stabilizer()).value_or("infinite")},
                            {"order", ge ? ge->str() : "infinite"}};
  }
  print(out, j);
  return ok;
}

// volume --------------------------------------------------------------------

int cmd_volume(std::ostream& out, int n, int tiles) {
  if (n < 4 || n > 8 || n % 2) fail(usage_error, "bad_argument", "--n must be 4, 6 or 8");
  json j;
  j["n"] = n;
  j["simplex_covolume"] = exact(siegel_covolume(n));
  j["kappa"] = exact(gauss_bonnet_kappa(n));
  j["reflection_group_euler_characteristic"] = to_string(reflection_group_euler_characteristic(n));
  j["vertex_stabilizer_order"] = vertex_stabilizer_order(n).str();
  const auto routes = volume_P_routes(n);
  j["polytope_volume"] = {{"siegel", exact(routes.siegel_route)},
                          {"gauss_bonnet", exact(routes.gauss_bonnet_route)},
                          {"routes_agree", routes.siegel_route == routes.gauss_bonnet_route}};
  if (tiles > 0)
    j["manifold"] = {{"tiles", tiles},
                     {"volume", exact(volume_manifold(tiles, n))},
                     {"subgroup_index", subgroup_index(tiles, n).str()}};
  print(out, j);
  return ok;
}

// verify --------------------------------------------------------------------

json sigma_info(const SigmaSource& s, int n) {
  json j;
  j["id"] = s.id;
  if (!s.matrix) return j;
  const LorentzMatrix& m = *s.matrix;
  j["lorentzian_integral"] = is_lorentzian_integral(m);
  j["determinant"] = m.determinant().str();
  const auto order = matrix_order(m, 64);
  j["matrix_order"] = order ? json(*order) : json("none up to 64");
  if (n == 6 && s.id == "builtin") j["lower_right_block_is_builtin_5"] = m.block(1, 6) == builtin_sigma(5);
  return j;
}

int cmd_sigma(std::ostream& out, const std::string& sigma_spec, int n) {
  if (n < 4 || n > 6) fail(usage_error, "bad_argument", "--n must lie in 4..6");
  const SigmaSource sigma = sigma_for(sigma_spec, n);
  print(out, json{{"n", n}, {"sigma", sigma_info(sigma, n)}});
  return ok;
}

int cmd_verify(std::ostream& out, const std::string& code_text, const std::string& sigma_spec, unsigned threads) {
  const PairingCode code = parse_code(code_text);
  const SigmaSource sigma = sigma_for(sigma_spec, code.dimension());
  json a = analyze(code, sigma, threads);
  json j;
  j["code"] = code.str();
  j["verdict"] = a["proper"].get<bool>() ? "MANIFOLD" : "NOT PROPER";
  j["sigma"] = sigma_info(sigma, code.dimension());
  if (sigma.matrix && a["proper"].get<bool>() && a["equivariant"].get<bool>()) {
    const auto sys = SidePairingSystem::expand(code);
    const auto order = a["induced_order"];
    if (order.is_number()) {
      const auto m = membership(sigma.matrix->power(order.get<unsigned>()), sys);
      j["sigma"]["power_at_induced_order_in_gluing_group"] = m.member;
    }
  }
  for (auto& [k, v] : a.items())
    if (k != "code") j[k] = v;
  print(out, j);
  return ok;
}

// homology ------------------------------------------------------------------

int cmd_snf_check(std::ostream& out, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int agree = 0;
  json mismatches = json::array();
  for (int i = 0; i < count; ++i) {
    const auto a = oracle::random_matrix(rng);
    const auto expected = oracle::invariant_factors(a);
    const auto got = smith_normal_form(a);
    bool same = got.factors.size() == expected.size();
    for (std::size_t k = 0; same && k < expected.size(); ++k) same = got.factors[k] == expected[k];
    if (same) ++agree;
    else if (mismatches.size() < 5) mismatches.push_back(i);
  }
  json j{{"matrices", count}, {"seed", seed}, {"agree", agree}, {"mismatches", mismatches}};
  print(out, j);
  return agree == count ? ok : runtime_failure;
}

int cmd_homology(std::ostream& out, const std::string& code_text, const std::string& sigma_spec, unsigned threads) {
  const PairingCode code = parse_code(code_text);
  const SigmaSource sigma = sigma_for(sigma_spec, code.dimension());
  json a = analyze(code, sigma, threads);
  if (!a["proper"].get<bool>()) fail(runtime_failure, "not_proper", "code " + code.str() + " is not a manifold gluing");
  json j;
  j["code"] = code.str();
  j["sigma_id"] = sigma.id;
  j["quotient"] = a["quotient"];
  j["euler_characteristic"] = a["euler_characteristic"];
  j["homology"] = a["homology"];
  std::string row;
  for (std::size_t k = 1; k + 1 < a["homology"].size(); ++k) row += (k > 1 ? " " : "") + a["homology"][k]["code"].get<std::string>();
  j["table_row"] = row;
  print(out, j);
  return ok;
}

// search --------------------------------------------------------------------

std::vector<KMask> parse_values(const std::string& text) {
  std::vector<KMask> v;
  std::stringstream s(text);
  std::string tok;
  while (std::getline(s, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long x = std::stoul(tok, &used, 0);
      if (used != tok.size() || x > 63) throw std::invalid_argument(tok);
      v.push_back(static_cast<KMask>(x));
    } catch (const std::exception&) {
      fail(usage_error, "bad_argument", "bad sign mask '" + tok + "' (expected 0..63)");
    }
  }
  return v;
}

struct SearchArgs {
  std::string mode = "full";
  int n = 6;
  std::string seed = "8G4JB77JB21";
  bool no_free = false;
  bool restriction_proper = false;
  std::string forbid;
  std::vector<std::string> forbid_at;
  std::uint64_t max_nodes = 0;
  int split_depth = -1;
  std::string checkpoint;
  bool resume = false;
  std::string catalog;
  bool no_verify_leaves = false;
};

int cmd_search(std::ostream& out, const SearchArgs& a, const Config& cfg, const std::string& sigma_spec,
               unsigned threads) {
  SearchOptions o;
  o.n = a.n;
  if (a.mode == "seed" || a.mode == "staged") o.n = 6;
  if (o.n < 4 || o.n > 6) fail(usage_error, "bad_argument", "--n must lie in 4..6");
  const SigmaSource sigma = sigma_for(sigma_spec, o.n);
  o.sigma = sigma.matrix;
  o.require_free = !a.no_free;
  o.restriction_proper = a.restriction_proper;
  o.forbidden = parse_values(a.forbid);
  for (const auto& spec : a.forbid_at) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) fail(usage_error, "bad_argument", "--forbid-at expects WALL:v1,v2,...");
    int wall = -1;
    try {
      wall = std::stoi(spec.substr(0, colon));
    } catch (const std::exception&) {
      fail(usage_error, "bad_argument", "bad wall index in --forbid-at " + spec);
    }
    auto& list = o.forbidden_at[wall];
    const auto vs = parse_values(spec.substr(colon + 1));
    list.insert(list.end(), vs.begin(), vs.end());
  }
  o.max_nodes = a.max_nodes ? a.max_nodes : cfg.max_nodes;
  o.threads = threads;
  o.split_depth = a.split_depth >= 0 ? a.split_depth : cfg.split_depth;
  o.checkpoint_path = !a.checkpoint.empty() ? a.checkpoint : cfg.checkpoint;
  o.resume = a.resume;
  o.verify_leaves = !a.no_verify_leaves;

  json j;
  j["mode"] = a.mode;
  j["sigma_id"] = sigma.id;
  std::vector<PairingCode> codes;
  bool complete = false;
  SearchStats stats;
  if (a.mode == "full" || a.mode == "seed") {
    if (a.mode == "seed") {
      const PairingCode seed = parse_code(a.seed);
      if (seed.dimension() != 5) fail(malformed_code, "malformed_code", "--seed must be an 11-symbol Q_5 code");
      o.restriction_seed = decode(seed);
      j["seed"] = seed.str();
    }
    SearchResult r;
    try {
      r = search(o);
    } catch (const SearchError& e) {
      fail(runtime_failure, "checkpoint", e.what());
    }
    codes = r.codes;
    complete = r.complete;
    stats = r.stats;
    j["tasks"] = {{"total", r.tasks_total}, {"done", r.tasks_done}};
  } else if (a.mode == "staged") {
    if (!sigma.matrix || sigma.id != "builtin")
      fail(usage_error, "bad_argument", "staged mode uses the builtin symmetry and its 5-dimensional restriction");
    const auto r = staged_search(builtin_sigma(6), builtin_sigma(5), o);
    json seeds = json::array();
    for (std::size_t i = 0; i < r.seeds.size(); ++i) {
      json ext = json::array();
      if (i < r.extensions.size())
        for (const auto& c : r.extensions[i]) ext.push_back(c.str());
      seeds.push_back({{"seed", r.seeds[i].str()}, {"extensions", ext}});
    }
    j["stage1"] = seeds;
    codes = r.codes;
    complete = r.complete;
    stats = r.stats;
  } else {
    fail(usage_error, "bad_argument", "--mode must be full, seed or staged");
  }
  j["complete"] = complete;
  j["count"] = codes.size();
  j["stats"] = {{"nodes", stats.nodes}, {"leaves", stats.leaves}, {"proper", stats.proper},
                {"equivariant", stats.equivariant}, {"free", stats.free}};
  json cj = json::array();
  for (const auto& c : codes) cj.push_back(c.str());
  j["codes"] = cj;

  const std::string catalog_path = !a.catalog.empty() ? a.catalog : cfg.catalog;
  if (!catalog_path.empty() && complete) {
    Catalog cat;
    if (std::filesystem::exists(catalog_path)) {
      try {
        cat = read_catalog(catalog_path);
      } catch (const CatalogError& e) {
        fail(catalog_corrupt, "catalog", e.what());
      }
    }
    Provenance p;
    p.config_hash = crc32_hex(cfg.source);
    p.created_at = utc_timestamp();
    std::vector<json> entries;
    for (const auto& c : codes)
      if (!cat.find(c.str(), sigma.id)) entries.push_back(make_entry(c, sigma, p, threads));
    j["catalog"] = {{"path", catalog_path}, {"added", cat.merge(entries)}, {"entries", cat.entries.size()}};
    write_catalog(catalog_path, cat);
  }
  print(out, j);
  return complete ? ok : budget_exhausted;
}

// report --------------------------------------------------------------------

int cmd_report(std::ostream& out, const std::string& path, bool as_json) {
  if (!std::filesystem::exists(path)) fail(missing_file, "missing_file", "catalog " + path + " does not exist");
  Catalog cat;
  try {
    cat = read_catalog(path);
  } catch (const CatalogError& e) {
    fail(catalog_corrupt, "catalog", e.what());
  }
  if (as_json) {
    json rows = json::array();
    for (const auto& e : cat.entries) {
      json r{{"code", e["code"]}, {"sigma_id", e["sigma_id"]}};
      for (const char* k : {"proper", "free", "euler_characteristic", "volume", "cusps", "orientable"})
        r[k] = e.contains(k) ? e[k] : json(nullptr);
      json h = json::array();
      if (e.contains("homology"))
        for (const auto& g : e["homology"]) h.push_back(g["code"]);
      r["homology"] = h;
      rows.push_back(r);
    }
    print(out, json{{"entries", rows}});
    return ok;
  }
  out << std::left << std::setw(24) << "code" << std::setw(10) << "sigma" << std::setw(5) << "chi" << std::setw(14)
      << "volume" << std::setw(7) << "cusps" << std::setw(11) << "orient." << "H1   H2   H3   H4   H5\n";
  for (const auto& e : cat.entries) {
    out << std::setw(24) << e["code"].get<std::string>() << std::setw(10) << e["sigma_id"].get<std::string>();
    if (!e.value("proper", false)) {
      out << "not proper\n";
      continue;
    }
    std::string vol = "-";
    if (e.contains("volume") && e["volume"].is_object()) {
      vol = e["volume"]["coefficient"].get<std::string>() + "*pi^" + std::to_string(e["volume"]["pi_power"].get<int>());
    }
    out << std::setw(5) << e["euler_characteristic"].get<std::string>() << std::setw(14) << vol << std::setw(7)
        << e["cusps"].get<std::size_t>() << std::setw(11) << (e["orientable"].get<bool>() ? "yes" : "no");
    const auto& h = e["homology"];
    for (std::size_t k = 1; k + 1 < h.size(); ++k) out << h[k]["code"].get<std::string>() << (k + 2 < h.size() ? " " : "");
    out << "\n";
  }
  return ok;
}

unsigned resolve_threads(unsigned flag, const Config& cfg) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("HYPERGLUE_THREADS"); env && *env) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
    fail(usage_error, "bad_environment", std::string("HYPERGLUE_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, cfg.threads);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Right-angled polytope gluings in I_{n,1}: construction, search, verification and homology",
               "hyperglue"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);
  std::string config_path;
  unsigned threads_flag = 0;
  std::string sigma_flag;
  app.add_option("--config", config_path, "JSON file with defaults (threads, sigma, split_depth, max_nodes, checkpoint, catalog)");
  app.add_option("--threads", threads_flag, "worker threads (overrides HYPERGLUE_THREADS and the config)");
  app.add_option("--sigma", sigma_flag, "symmetry: builtin, none, or a matrix file");

  int n = 6;
  bool walls = false, faces = false;
  auto* polytope_cmd = app.add_subcommand("polytope", "build P_n and report sides, faces and the tile block");
  polytope_cmd->add_option("--n", n, "dimension 4..8")->capture_default_str();
  polytope_cmd->add_flag("--walls", walls, "list the wall normals");
  polytope_cmd->add_flag("--faces", faces, "list every face");

  std::string diagram;
  auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic of a Coxeter group");
  euler_cmd->add_option("--n", n, "the reflection group of I_{n,1}")->capture_default_str();
  euler_cmd->add_option("--diagram", diagram, "diagram file: rank, then lines 'i j m' (1-based, m or inf)");

  int tiles = 0;
  auto* volume_cmd = app.add_subcommand("volume", "exact covolumes and volumes");
  volume_cmd->add_option("--n", n, "even dimension 4..8")->capture_default_str();
  volume_cmd->add_option("--tiles", tiles, "also report a manifold made of this many copies of P_n");

  std::string code;
  auto* verify_cmd = app.add_subcommand("verify", "full verdict for one code");
  bool sigma_only = false;
  verify_cmd->add_option("code", code, "pairing code");
  verify_cmd->add_flag("--sigma-only", sigma_only, "only check the symmetry matrix for dimension --n");
  verify_cmd->add_option("--n", n, "dimension for --sigma-only")->capture_default_str();

  int snf_check = 0;
  std::uint64_t snf_seed = 1;
  auto* homology_cmd = app.add_subcommand("homology", "integral homology of the (quotient) manifold");
  homology_cmd->add_option("code", code, "pairing code");
  homology_cmd->add_option("--snf-check", snf_check, "compare Smith forms with the minor oracle on N random matrices");
  homology_cmd->add_option("--snf-seed", snf_seed, "seed for --snf-check")->capture_default_str();

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search", "equivariant backtracking search");
  search_cmd->add_option("--mode", sa.mode, "full, seed (extend one Q_5 code) or staged (all Q_5 seeds)")
      ->capture_default_str();
  search_cmd->add_option("--n", sa.n, "dimension for --mode full")->capture_default_str();
  search_cmd->add_option("--seed", sa.seed, "Q_5 code for --mode seed")->capture_default_str();
  search_cmd->add_flag("--no-free", sa.no_free, "keep equivariant systems whose action is not free");
  search_cmd->add_flag("--restriction-proper", sa.restriction_proper,
                       "require the walls with x_1 = 0 to form a proper Q_5 system");
  search_cmd->add_option("--forbid", sa.forbid, "comma separated masks never assigned");
  search_cmd->add_option("--forbid-at", sa.forbid_at, "WALL:m1,m2 masks forbidden on one wall (repeatable)");
  search_cmd->add_option("--max-nodes", sa.max_nodes, "node budget (0: none)");
  search_cmd->add_option("--split-depth", sa.split_depth, "branching depth that defines a task");
  search_cmd->add_option("--checkpoint", sa.checkpoint, "checkpoint file");
  search_cmd->add_flag("--resume", sa.resume, "continue from the checkpoint");
  search_cmd->add_option("--catalog", sa.catalog, "add every result to this catalog");
  search_cmd->add_flag("--no-verify-leaves", sa.no_verify_leaves, "skip the independent re-checks on leaves");

  std::string catalog;
  bool as_json = false;
  auto* report_cmd = app.add_subcommand("report", "table of a catalog");
  report_cmd->add_option("--catalog", catalog, "catalog file")->required();
  report_cmd->add_flag("--json", as_json, "machine-readable rows");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("hyperglue");
  try {
    for (std::size_t i = 1; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a == "--config" || a == "--threads" || a == "--sigma") {
        ++i;
        continue;
      }
      if (a.empty() || a[0] == '-') continue;
      if (!app.get_subcommand_no_throw(a))
        fail(usage_error, "unknown_subcommand",
             "unknown subcommand '" + a + "'; expected polytope, euler, volume, verify, homology, search or report");
      break;
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return ok;
    } catch (const CLI::CallForVersion&) {
      out << tool_version << "\n";
      return ok;
    } catch (const CLI::ParseError& e) {
      fail(usage_error, "usage", e.what());
    }
    const Config cfg = load_config(config_path);
    const unsigned threads = resolve_threads(threads_flag, cfg);
    const std::string sigma_spec = sigma_flag.empty() ? cfg.sigma : sigma_flag;

    if (*polytope_cmd) return cmd_polytope(out, n, walls, faces);
    if (*euler_cmd) return cmd_euler(out, n, diagram);
    if (*volume_cmd) return cmd_volume(out, n, tiles);
    if (*verify_cmd) {
      if (sigma_only) return cmd_sigma(out, sigma_spec, n);
      if (code.empty()) fail(usage_error, "usage", "verify needs a code or --sigma-only");
      return cmd_verify(out, code, sigma_spec, threads);
    }
    if (*homology_cmd) {
      if (snf_check > 0) return cmd_snf_check(out, snf_check, snf_seed);
      if (code.empty()) fail(usage_error, "usage", "homology needs a code or --snf-check");
      return cmd_homology(out, code, sigma_spec, threads);
    }
    if (*search_cmd) return cmd_search(out, sa, cfg, sigma_spec, threads);
    if (*report_cmd) return cmd_report(out, catalog, as_json);
    fail(usage_error, "usage", "no subcommand");
  } catch (const Failure& f) {
    err << json{{"error", {{"exit_code", f.code}, {"kind", f.kind}, {"message", f.message}}}}.dump() << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << json{{"error", {{"exit_code", runtime_failure}, {"kind", "runtime"}, {"message", e.what()}}}}.dump()
        << "\n";
    return runtime_failure;
  }
}

}  // namespace hyperglue::cli
