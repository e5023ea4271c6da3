#ifndef NULLCERT_REPORT_HPP
#define NULLCERT_REPORT_HPP

#include <string>
#include <vector>

#include "nullcert/json_io.hpp"
#include "nullcert/weakseq.hpp"

namespace nullcert {

inline constexpr const char* kToolVersion = "nullcert 0.1.0";

// Data directory: NULLCERT_DATA_DIR env var, else the compiled-in default.
std::string data_dir();

// "−2^5 * 3" style factorization display.
std::string factored_string(const BigInt& v);
std::string coefficient_factored(const Coefficient& c);

// FNV-1a digest of a file's bytes, hex; used for report provenance.
std::string file_digest(const std::string& path);

// All type vectors with sum k over `e` cosets, lexicographic.
std::vector<TypeVector> compositions(int k, int e);

// ---- reproduce ----
// table id in {tab12_2, tab10_3, tab6_Prod, tab6_D, tab6_Prod1, tab6_G};
// verifies each row in raw and deduped factor modes and reports per-row
// match status with recomputed factorizations.
Json reproduce_table(const std::string& table_id, int jobs = 1);

// ---- sweep ----
struct SweepOptions {
  std::string family{"dihedral"};
  int k_min{3};
  int k_max{12};
  CertMode mode{CertMode::linear};
  SearchConfig search;
  int jobs{1};
};
Json cmd_sweep(const SweepOptions& opt);

// ---- oracle ----
struct OracleOptions {
  int k{5};
  std::string subset_text;  // when nonempty: a single subset
  OracleMode mode{OracleMode::Any()};
  std::uint64_t budget{5'000'000};
  int jobs{1};
  bool verbose{false};
  bool cross_check{false};       // also search a certificate per type
  bool scaling_reduction{false};  // orbit representatives only
};
Json cmd_oracle(const SemidirectGroup& g, const OracleOptions& opt);

// ---- derived table regeneration ----
// Writes tab10_3.json, tab6_prod1.json, tab6_g.json and tab12_2_missing.json
// into out_dir with provenance "derived".
Json regen_derived_tables(const std::string& out_dir, const SearchConfig& cfg,
                          int jobs = 1);

}  // namespace nullcert

#endif  // NULLCERT_REPORT_HPP
