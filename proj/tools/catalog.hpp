#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperglue/lorentz.hpp"
#include "hyperglue/pairing_code.hpp"

namespace hyperglue::cli {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int catalog_schema_version = 1;

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A symmetry together with the identifier recorded in catalogs:
// "builtin", "none" or "file:<crc32 of the matrix>".
struct SigmaSource {
  std::string id = "builtin";
  std::optional<LorentzMatrix> matrix;  // for the code's dimension
};

// "builtin", "none", or a path to a file holding the matrix rows as
// whitespace separated integers (or a JSON array of rows).
SigmaSource load_sigma(const std::string& spec, int n);
LorentzMatrix parse_matrix(const std::string& text);

struct Provenance {
  std::string tool_version = cli::tool_version;
  std::string config_hash;
  std::string created_at;
};

// Everything the tool derives for one code. The JSON form is the catalog
// entry; all numbers that could overflow are strings.
nlohmann::ordered_json analyze(const PairingCode& code, const SigmaSource& sigma, unsigned threads = 1);

nlohmann::ordered_json make_entry(const PairingCode& code, const SigmaSource& sigma, const Provenance& p,
                                  unsigned threads = 1);

struct Catalog {
  std::vector<nlohmann::ordered_json> entries;  // sorted by (code, sigma_id)

  // Adds entries whose (code, sigma_id) key is new; existing ones are kept as written.
  std::size_t merge(const std::vector<nlohmann::ordered_json>& more);
  const nlohmann::ordered_json* find(const std::string& code, const std::string& sigma_id) const;
};

std::string checksum(const std::vector<nlohmann::ordered_json>& entries);
std::string serialize(const Catalog& c);
Catalog deserialize(const std::string& text);  // throws CatalogError
void write_catalog(const std::string& path, const Catalog& c);
Catalog read_catalog(const std::string& path);  // throws CatalogError; std::ios_base::failure if missing

std::string crc32_hex(const std::string& bytes);
std::string utc_timestamp();

}  // namespace hyperglue::cli
