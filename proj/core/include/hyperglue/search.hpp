#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperglue/lorentz.hpp"
#include "hyperglue/pairing_code.hpp"

namespace hyperglue {

struct SearchOptions {
  int n = 6;
  // Equivariance under sigma is enforced while searching when set.
  std::optional<LorentzMatrix> sigma;
  bool require_free = true;

  // n = 6 only: the colours of the walls with x_1 = 0, with coordinate 1
  // dropped, must equal this Q_5 assignment.
  std::optional<Assignment> restriction_seed;
  // n = 6 only: those restricted colours must form a proper Q_5 system.
  bool restriction_proper = false;

  std::vector<KMask> forbidden;                 // never assigned to any wall
  std::map<int, std::vector<KMask>> forbidden_at;  // per wall index of polytope(n)

  std::uint64_t max_nodes = 0;  // 0: unlimited
  unsigned threads = 1;
  int split_depth = 2;          // branching decisions that define one task
  std::string checkpoint_path;  // empty: no checkpoint file
  bool resume = false;
  // Re-run the geometric properness and membership-based equivariance checks
  // on every leaf.
  bool verify_leaves = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;       // complete assignments passing the pruning
  std::uint64_t proper = 0;
  std::uint64_t equivariant = 0;
  std::uint64_t free = 0;
};

struct SearchResult {
  std::vector<PairingCode> codes;  // in canonical prefix order
  bool complete = false;
  SearchStats stats;
  std::size_t tasks_total = 0;
  std::size_t tasks_done = 0;  // length of the exhausted task prefix
};

class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive backtracking over the colours of the non-coordinate walls.
// Pruning: colours of the walls through every finite face stay linearly
// independent (this contains the side and ridge conditions), and with sigma
// the pairs (lambda(u), lambda(pi u)) must stay the graph of an invertible
// linear map, which also forces colours along pi-orbits.
SearchResult search(const SearchOptions& options);

// Hash of the options that determine the search space (not threads or paths).
std::string options_fingerprint(const SearchOptions& options);

struct StagedSearchResult {
  std::vector<PairingCode> seeds;  // sigma_5-equivariant proper Q_5 systems
  std::vector<std::vector<PairingCode>> extensions;  // per seed
  std::vector<PairingCode> codes;  // union, sorted
  SearchStats stats;
  bool complete = false;
};

// Stage 1 searches Q_5 under the restriction of sigma, stage 2 extends every
// seed to Q_6 under sigma.
StagedSearchResult staged_search(const LorentzMatrix& sigma6, const LorentzMatrix& sigma5, SearchOptions base);

// The Q_5 assignment read off the walls of P_6 with x_1 = 0.
Assignment restrict_to_q5(const Assignment& a6);

}  // namespace hyperglue
