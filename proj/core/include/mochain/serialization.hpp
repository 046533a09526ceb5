#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mochain/karlin_mcgregor.hpp"
#include "mochain/model.hpp"
#include "mochain/simulation.hpp"
#include "mochain/stochastic.hpp"

namespace mochain {

inline constexpr const char* kSchemaVersion = "1";

/// Provenance embedded in every exported file. The timestamp honours
/// SOURCE_DATE_EPOCH so reproducible builds can pin it.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;  // exact strings, in input order
  std::string mode;                                             // "exact" or "numeric"
  int digits = 0;
  std::size_t truncation = 0;
  std::optional<std::uint64_t> seed;
  std::string tool_version = MOCHAIN_VERSION;
  std::string timestamp;

  static std::string now_utc();
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// Banded matrix in exported form: exact text per entry plus its double value.
struct BandTable {
  std::string name;
  std::size_t size = 0;
  int lower = 0;
  int upper = 0;
  std::string unit;  // definition of the symbolic unit used in exact entries, if any
  std::vector<std::vector<std::string>> entries;  // size x (lower+upper+1); "" outside the truncation
  std::vector<std::vector<double>> values;
  std::vector<std::string> row_status;  // empty when rows carry no status
  std::vector<std::string> row_sums;

  const std::string& text(std::size_t i, std::size_t j) const;
  double value(std::size_t i, std::size_t j) const;
  friend bool operator==(const BandTable&, const BandTable&) = default;
};

template <class T>
BandTable hat_table(const StochasticPair<T>& pair);
template <class T>
BandTable check_table(const StochasticPair<T>& pair);

/// Hessenberg bands, normalizing sequences and the checks of a model.
struct HessenbergDocument {
  std::string system;
  std::string mode;
  std::string normalization;
  std::size_t rows = 0;
  std::vector<std::string> a, b, c;
  std::vector<std::string> B_at_1, q_at_1, sigma_II, sigma_I;
  std::string unit;
  std::string unit_value;
  int digits = 0;
  double achieved_digits = 0.0;  // -1 encodes "exact"
  std::vector<CheckRecord> checks;

  friend bool operator==(const HessenbergDocument&, const HessenbergDocument&) = default;
};

HessenbergDocument hessenberg_document(const ChainModel& model);

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);
void to_json(nlohmann::json& j, const BandTable& t);
void from_json(const nlohmann::json& j, BandTable& t);
void to_json(nlohmann::json& j, const CheckRecord& c);
void from_json(const nlohmann::json& j, CheckRecord& c);
void to_json(nlohmann::json& j, const HessenbergDocument& d);
void from_json(const nlohmann::json& j, HessenbergDocument& d);
void to_json(nlohmann::json& j, const SimConfig& c);
void from_json(const nlohmann::json& j, SimConfig& c);
void to_json(nlohmann::json& j, const SimReport& r);
void from_json(const nlohmann::json& j, SimReport& r);

/// {"schema", "kind", "manifest", "payload"}.
nlohmann::json envelope(const std::string& kind, const RunManifest& manifest, nlohmann::json payload);
/// Returns the payload after checking kind and schema version.
nlohmann::json open_envelope(const nlohmann::json& doc, const std::string& kind, RunManifest* manifest = nullptr);

/// "# key: value" manifest header followed by row,col,value,exact records.
std::string band_table_csv(const BandTable& t, const RunManifest& manifest);
/// Dense 4-decimal grid of the first `rows` rows (all when 0).
std::string band_table_txt(const BandTable& t, const RunManifest& manifest, std::size_t rows = 0);
std::string sim_report_csv(const SimReport& r, const RunManifest& manifest);

std::string manifest_header(const RunManifest& manifest, const std::string& comment = "# ");

}  // namespace mochain
