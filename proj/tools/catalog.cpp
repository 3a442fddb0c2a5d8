#include "catalog.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/crc.hpp>

#include "hyperglue/homology.hpp"
#include "hyperglue/side_pairing.hpp"
#include "hyperglue/symmetry.hpp"
#include "hyperglue/volume.hpp"

namespace hyperglue::cli {

using json = nlohmann::ordered_json;

std::string crc32_hex(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  std::ostringstream s;
  s << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
  return s.str();
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

LorentzMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("matrix: ") + e.what());
    }
    for (const auto& r : j) {
      std::vector<Integer> row;
      for (const auto& v : r) row.push_back(v.is_string() ? parse_integer(v.get<std::string>()) : Integer(v.get<long long>()));
      rows.push_back(std::move(row));
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::vector<Integer> row;
      std::string tok;
      while (ls >> tok) row.push_back(parse_integer(tok));
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw std::invalid_argument("matrix must be square");
  if (rows.empty()) throw std::invalid_argument("matrix is empty");
  return LorentzMatrix::from_rows(rows);
}

SigmaSource load_sigma(const std::string& spec, int n) {
  SigmaSource s;
  if (spec == "none") {
    s.id = "none";
    return s;
  }
  if (spec == "builtin") {
    s.id = "builtin";
    if (n == 5 || n == 6) s.matrix = builtin_sigma(n);
    return s;
  }
  std::ifstream f(spec);
  if (!f) throw std::ios_base::failure("cannot open sigma file " + spec);
  std::stringstream buf;
  buf << f.rdbuf();
  const LorentzMatrix m = parse_matrix(buf.str());
  s.id = "file:" + crc32_hex(m.str());
  if (m.size() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("sigma file holds a " + std::to_string(m.size()) + "x" + std::to_string(m.size()) +
                                " matrix; codes of dimension " + std::to_string(n) + " need " +
                                std::to_string(n + 1));
  s.matrix = m;
  return s;
}

namespace {

json volume_json(const ExactVolume& v) {
  return {{"coefficient", to_string(v.coefficient)}, {"pi_power", v.pi_power}};
}

}  // namespace

json analyze(const PairingCode& code, const SigmaSource& sigma, unsigned threads) {
  const int n = code.dimension();
  const auto sys = SidePairingSystem::expand(code);
  const auto verdict = check_proper(sys);
  json e;
  e["code"] = code.str();
  e["sigma_id"] = sigma.id;
  e["n"] = n;
  e["proper"] = verdict.manifold();
  json failures = json::array();
  for (const auto& f : verdict.failures) failures.push_back({{"kind", to_string(f.kind)}, {"witness", f.witness}});
  e["failures"] = failures;
  e["equivariant"] = nullptr;
  e["free"] = nullptr;
  e["induced_order"] = nullptr;
  if (!verdict.manifold()) return e;

  std::optional<SymmetryAction> act;
  bool quotient = false;
  if (sigma.matrix) {
    act = SymmetryAction::decompose(sys.polytope(), *sigma.matrix);
    const bool algebraic = induced_tile_map(sys, *act).has_value();
    const bool by_membership = check_equivariance(sys, *sigma.matrix);
    if (algebraic != by_membership) throw std::logic_error("equivariance routes disagree on " + code.str());
    e["equivariant"] = algebraic;
    e["free"] = algebraic && check_free(sys, *act);
    if (algebraic) {
      const auto order = induced_order(sys, *sigma.matrix);
      e["induced_order"] = order ? json(*order) : json(nullptr);
    }
    quotient = e["free"].get<bool>();
  }
  const SymmetryAction* a = quotient ? &*act : nullptr;
  const GluedComplex gc = build_glued(sys, a, true);
  const ChainComplex cc = chain_complex(gc);
  const auto h = homology(cc, threads);
  const std::size_t cusps = cusp_count(sys, a);
  if (boundary_components(gc) != cusps)
    throw std::logic_error("cusp count and truncation boundary disagree on " + code.str());
  long rank_sum = 0;
  for (std::size_t k = 0; k < h.size(); ++k) rank_sum += (k % 2 ? -1L : 1L) * static_cast<long>(h[k].rank);
  if (rank_sum != cc.euler_characteristic()) throw std::logic_error("Euler characteristic mismatch on " + code.str());

  e["quotient"] = quotient;
  e["tiles"] = gc.tile_count();
  e["euler_characteristic"] = std::to_string(cc.euler_characteristic());
  if (n % 2 == 0) {
    const ExactVolume vol = volume_manifold(gc.tile_count(), n);
    if (!(gauss_bonnet_kappa(n) * Rational(cc.euler_characteristic()) == vol))
      throw std::logic_error("Gauss-Bonnet check failed on " + code.str());
    e["volume"] = volume_json(vol);
  } else {
    e["volume"] = nullptr;
  }
  e["cusps"] = cusps;
  e["orientable"] = orientable(sys, a ? &*sigma.matrix : nullptr);
  e["subgroup_index"] = subgroup_index(gc.tile_count(), n).str();
  json hj = json::array();
  for (std::size_t k = 0; k < h.size(); ++k) {
    json t = json::array();
    for (const auto& q : h[k].primary()) t.push_back(q.str());
    const auto c = abcd_code(h[k]);
    hj.push_back({{"degree", k}, {"rank", h[k].rank}, {"torsion", t}, {"code", c.text}, {"extended", c.extended}});
  }
  e["homology"] = hj;
  return e;
}

json make_entry(const PairingCode& code, const SigmaSource& sigma, const Provenance& p, unsigned threads) {
  json e = analyze(code, sigma, threads);
  e["provenance"] = {{"tool_version", p.tool_version}, {"config_hash", p.config_hash}, {"created_at", p.created_at}};
  return e;
}

namespace {

std::pair<std::string, std::string> key(const json& e) {
  return {e.at("code").get<std::string>(), e.at("sigma_id").get<std::string>()};
}

}  // namespace

std::size_t Catalog::merge(const std::vector<json>& more) {
  std::size_t added = 0;
  for (const auto& e : more) {
    const auto k = key(e);
    const auto it = std::lower_bound(entries.begin(), entries.end(), k,
                                     [](const json& a, const auto& b) { return key(a) < b; });
    if (it != entries.end() && key(*it) == k) continue;
    entries.insert(it, e);
    ++added;
  }
  return added;
}

const json* Catalog::find(const std::string& code, const std::string& sigma_id) const {
  for (const auto& e : entries)
    if (key(e) == std::make_pair(code, sigma_id)) return &e;
  return nullptr;
}

std::string checksum(const std::vector<json>& entries) {
  std::string bytes;
  for (const auto& e : entries) bytes += e.dump() + "\n";
  return crc32_hex(bytes);
}

std::string serialize(const Catalog& c) {
  json j;
  j["schema_version"] = catalog_schema_version;
  j["entries"] = c.entries;
  j["checksum"] = checksum(c.entries);
  return j.dump(2) + "\n";
}

Catalog deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || !j.contains("entries") || !j.contains("checksum"))
    throw CatalogError("catalog lacks schema_version, entries or checksum");
  if (j["schema_version"] != catalog_schema_version)
    throw CatalogError("unsupported catalog schema version " + j["schema_version"].dump());
  Catalog c;
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("code") || !e.contains("sigma_id"))
      throw CatalogError("catalog entry lacks code or sigma_id");
    c.entries.push_back(e);
  }
  if (checksum(c.entries) != j["checksum"]) throw CatalogError("catalog checksum mismatch");
  if (!std::is_sorted(c.entries.begin(), c.entries.end(), [](const json& a, const json& b) { return key(a) < key(b); }))
    throw CatalogError("catalog entries are not sorted by code");
  return c;
}

void write_catalog(const std::string& path, const Catalog& c) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw std::ios_base::failure("cannot write " + tmp);
    f << serialize(c);
  }
  std::filesystem::rename(tmp, path);
}

Catalog read_catalog(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open catalog " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return deserialize(buf.str());
}

}  // namespace hyperglue::cli
