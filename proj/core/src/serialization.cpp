#include "mochain/serialization.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <string_view>

#include "mochain/error.hpp"

namespace mochain {

using nlohmann::json;

namespace {

std::string text_of(const Rational& x, const SymbolicUnit&) { return x.to_string(); }
std::string text_of(const Real& x, const SymbolicUnit&) { return x.to_string(); }
std::string text_of(const UnitPoly& x, const SymbolicUnit& rho) { return x.to_string(rho.name); }
std::string text_of(const UnitRatio& x, const SymbolicUnit& rho) {
  if (auto r = x.as_rational()) return r->to_string();
  return x.to_string(rho.name);
}

double double_of(const Rational& x, const SymbolicUnit&) { return x.to_double(); }
double double_of(const Real& x, const SymbolicUnit&) { return x.to_double(); }
double double_of(const UnitRatio& x, const SymbolicUnit& rho) {
  if (auto r = x.as_rational()) return r->to_double();
  return x.evaluate(rho.value).to_double();
}

bool uses_unit(const Rational&) { return false; }
bool uses_unit(const Real&) { return false; }
bool uses_unit(const UnitRatio& x) { return !x.as_rational(); }

template <class M, class S>
BandTable make_table(const std::string& name, const M& m, const std::vector<RowStatus>& status,
                     const std::vector<S>& sums, const SymbolicUnit& rho) {
  BandTable t;
  t.name = name;
  t.size = m.size();
  t.lower = m.lower();
  t.upper = m.upper();
  const auto w = static_cast<std::size_t>(t.lower + t.upper + 1);
  t.entries.assign(t.size, std::vector<std::string>(w));
  t.values.assign(t.size, std::vector<double>(w, 0.0));
  bool unit = false;
  for (std::size_t i = 0; i < t.size; ++i) {
    for (int off = -t.lower; off <= t.upper; ++off) {
      const long j = static_cast<long>(i) + off;
      if (j < 0 || j >= static_cast<long>(t.size)) continue;
      const auto& v = m(i, static_cast<std::size_t>(j));
      const auto k = static_cast<std::size_t>(off + t.lower);
      t.entries[i][k] = text_of(v, rho);
      t.values[i][k] = double_of(v, rho);
      unit = unit || uses_unit(v);
    }
    t.row_status.emplace_back(to_string(status[i]));
    t.row_sums.push_back(text_of(sums[i], rho));
  }
  if (unit) t.unit = rho.name + " = " + rho.description;
  return t;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // Avoid "-0.0000" for tiny negative round-off.
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string RunManifest::now_utc() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch)
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  else
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const std::string& BandTable::text(std::size_t i, std::size_t j) const {
  static const std::string empty;
  const long off = static_cast<long>(j) - static_cast<long>(i);
  if (i >= size || j >= size || off < -lower || off > upper) return empty;
  return entries[i][static_cast<std::size_t>(off + lower)];
}

double BandTable::value(std::size_t i, std::size_t j) const {
  const long off = static_cast<long>(j) - static_cast<long>(i);
  if (i >= size || j >= size || off < -lower || off > upper) return 0.0;
  return values[i][static_cast<std::size_t>(off + lower)];
}

template <class T>
BandTable hat_table(const StochasticPair<T>& pair) {
  return make_table("hat", pair.hatH, pair.hat_rows, pair.hat_row_sums, pair.rho);
}

template <class T>
BandTable check_table(const StochasticPair<T>& pair) {
  return make_table("check", pair.checkH, pair.check_rows, pair.check_row_sums, pair.rho);
}

template BandTable hat_table(const StochasticPair<Rational>&);
template BandTable hat_table(const StochasticPair<Real>&);
template BandTable check_table(const StochasticPair<Rational>&);
template BandTable check_table(const StochasticPair<Real>&);

HessenbergDocument hessenberg_document(const ChainModel& model) {
  HessenbergDocument d;
  d.system = model.system.describe();
  d.mode = to_string(model.options.mode);
  d.normalization = to_string(model.normalization);
  d.rows = model.H.size();
  d.digits = model.digits;
  d.achieved_digits = std::isinf(model.achieved_digits) ? -1.0 : model.achieved_digits;
  d.checks = model.checks;
  const SymbolicUnit& rho = model.rho;
  auto texts = [&](const auto& seq) {
    std::vector<std::string> out;
    out.reserve(seq.size());
    for (const auto& v : seq) out.push_back(text_of(v, rho));
    return out;
  };
  if (model.exact_H) {
    d.a = texts(model.exact_H->a);
    d.b = texts(model.exact_H->b);
    d.c = texts(model.exact_H->c);
    d.B_at_1 = texts(model.exact_family->B_at_1);
    d.q_at_1 = texts(model.exact_family->q_at_1);
    d.sigma_II = texts(model.exact_sigma_II);
    d.sigma_I = texts(model.exact_sigma_I);
  } else {
    d.a = texts(model.H.a);
    d.b = texts(model.H.b);
    d.c = texts(model.H.c);
    d.B_at_1 = texts(model.family.B_at_1);
    d.q_at_1 = texts(model.family.q_at_1);
    d.sigma_II = texts(model.sigma_II);
    d.sigma_I = texts(model.sigma_I);
  }
  d.unit = rho.name + " = " + rho.description;
  d.unit_value = rho.exact ? rho.exact->to_string() : rho.value.to_string(std::max(model.digits, 17));
  return d;
}

void to_json(json& j, const RunManifest& m) {
  json params = json::array();
  for (const auto& [k, v] : m.parameters) params.push_back({{"name", k}, {"value", v}});
  j = {{"command", m.command}, {"parameters", params}, {"mode", m.mode},
       {"digits", m.digits}, {"truncation", m.truncation}, {"tool_version", m.tool_version},
       {"timestamp", m.timestamp}};
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
}

void from_json(const json& j, RunManifest& m) {
  m.command = j.at("command").get<std::string>();
  m.parameters.clear();
  for (const auto& p : j.at("parameters"))
    m.parameters.emplace_back(p.at("name").get<std::string>(), p.at("value").get<std::string>());
  m.mode = j.at("mode").get<std::string>();
  m.digits = j.at("digits").get<int>();
  m.truncation = j.at("truncation").get<std::size_t>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.seed = j.at("seed").is_null() ? std::nullopt : std::optional(j.at("seed").get<std::uint64_t>());
}

void to_json(json& j, const BandTable& t) {
  j = {{"name", t.name}, {"size", t.size}, {"lower", t.lower}, {"upper", t.upper}, {"unit", t.unit},
       {"entries", t.entries}, {"values", t.values}, {"row_status", t.row_status}, {"row_sums", t.row_sums}};
}

void from_json(const json& j, BandTable& t) {
  j.at("name").get_to(t.name);
  j.at("size").get_to(t.size);
  j.at("lower").get_to(t.lower);
  j.at("upper").get_to(t.upper);
  j.at("unit").get_to(t.unit);
  j.at("entries").get_to(t.entries);
  j.at("values").get_to(t.values);
  j.at("row_status").get_to(t.row_status);
  j.at("row_sums").get_to(t.row_sums);
  const auto w = static_cast<std::size_t>(t.lower + t.upper + 1);
  if (t.entries.size() != t.size || t.values.size() != t.size)
    throw ParseError("band table '" + t.name + "' has the wrong number of rows");
  for (std::size_t i = 0; i < t.size; ++i)
    if (t.entries[i].size() != w || t.values[i].size() != w)
      throw ParseError("band table '" + t.name + "' row " + std::to_string(i) + " has the wrong width");
}

void to_json(json& j, const CheckRecord& c) { j = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}}; }

void from_json(const json& j, CheckRecord& c) {
  j.at("name").get_to(c.name);
  j.at("passed").get_to(c.passed);
  j.at("detail").get_to(c.detail);
}

void to_json(json& j, const HessenbergDocument& d) {
  j = {{"system", d.system},
       {"mode", d.mode},
       {"normalization", d.normalization},
       {"rows", d.rows},
       {"bands", {{"a", d.a}, {"b", d.b}, {"c", d.c}}},
       {"B_at_1", d.B_at_1},
       {"q_at_1", d.q_at_1},
       {"sigma_II", d.sigma_II},
       {"sigma_I", d.sigma_I},
       {"unit", d.unit},
       {"unit_value", d.unit_value},
       {"digits", d.digits},
       {"achieved_digits", d.achieved_digits},
       {"checks", d.checks}};
}

void from_json(const json& j, HessenbergDocument& d) {
  j.at("system").get_to(d.system);
  j.at("mode").get_to(d.mode);
  j.at("normalization").get_to(d.normalization);
  j.at("rows").get_to(d.rows);
  j.at("bands").at("a").get_to(d.a);
  j.at("bands").at("b").get_to(d.b);
  j.at("bands").at("c").get_to(d.c);
  j.at("B_at_1").get_to(d.B_at_1);
  j.at("q_at_1").get_to(d.q_at_1);
  j.at("sigma_II").get_to(d.sigma_II);
  j.at("sigma_I").get_to(d.sigma_I);
  j.at("unit").get_to(d.unit);
  j.at("unit_value").get_to(d.unit_value);
  j.at("digits").get_to(d.digits);
  j.at("achieved_digits").get_to(d.achieved_digits);
  j.at("checks").get_to(d.checks);
}

void to_json(json& j, const SimConfig& c) {
  j = {{"chain", to_string(c.chain)}, {"start_state", c.start_state}, {"steps", c.steps},
       {"trajectories", c.trajectories}, {"seed", c.seed}};
  j["truncation"] = c.truncation ? json(*c.truncation) : json(nullptr);
}

void from_json(const json& j, SimConfig& c) {
  c.chain = parse_chain_side(j.at("chain").get<std::string>());
  j.at("start_state").get_to(c.start_state);
  j.at("steps").get_to(c.steps);
  j.at("trajectories").get_to(c.trajectories);
  j.at("seed").get_to(c.seed);
  c.truncation = j.at("truncation").is_null() ? std::nullopt : std::optional(j.at("truncation").get<std::size_t>());
  c.threads = 0;
}

void to_json(json& j, const SimReport& r) {
  json est = json::array();
  for (const auto& e : r.rstep_estimates)
    est.push_back({{"state", e.state}, {"probability", e.probability}, {"standard_error", e.standard_error}});
  j = {{"config", r.config},         {"algorithm", r.algorithm}, {"truncation", r.truncation},
       {"visit_counts", r.visit_counts}, {"rstep_estimates", est}, {"returns", r.returns},
       {"return_frequency", r.return_frequency}, {"killed", r.killed}};
}

void from_json(const json& j, SimReport& r) {
  j.at("config").get_to(r.config);
  j.at("algorithm").get_to(r.algorithm);
  j.at("truncation").get_to(r.truncation);
  j.at("visit_counts").get_to(r.visit_counts);
  r.rstep_estimates.clear();
  for (const auto& e : j.at("rstep_estimates"))
    r.rstep_estimates.push_back({e.at("state").get<std::size_t>(), e.at("probability").get<double>(),
                                 e.at("standard_error").get<double>()});
  j.at("returns").get_to(r.returns);
  j.at("return_frequency").get_to(r.return_frequency);
  j.at("killed").get_to(r.killed);
}

json envelope(const std::string& kind, const RunManifest& manifest, json payload) {
  return {{"schema", "mochain/" + kind + "/" + kSchemaVersion},
          {"kind", kind},
          {"manifest", manifest},
          {"payload", std::move(payload)}};
}

json open_envelope(const json& doc, const std::string& kind, RunManifest* manifest) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("payload"))
    throw ParseError("not a mochain document");
  if (doc.at("kind") != kind)
    throw ParseError("expected a '" + kind + "' document, found '" + doc.at("kind").get<std::string>() + "'");
  const std::string expected = "mochain/" + kind + "/" + kSchemaVersion;
  if (doc.at("schema") != expected)
    throw ParseError("unsupported schema '" + doc.at("schema").get<std::string>() + "'");
  if (manifest) doc.at("manifest").get_to(*manifest);
  return doc.at("payload");
}

std::string manifest_header(const RunManifest& m, const std::string& comment) {
  std::ostringstream os;
  os << comment << "command: " << m.command << '\n';
  for (const auto& [k, v] : m.parameters) os << comment << k << ": " << v << '\n';
  os << comment << "mode: " << m.mode;
  if (m.mode == "numeric") os << " (" << m.digits << " digits)";
  os << '\n' << comment << "truncation: " << m.truncation << '\n';
  if (m.seed) os << comment << "seed: " << *m.seed << '\n';
  os << comment << "tool_version: " << m.tool_version << '\n' << comment << "timestamp: " << m.timestamp << '\n';
  return os.str();
}

std::string band_table_csv(const BandTable& t, const RunManifest& manifest) {
  std::ostringstream os;
  os << manifest_header(manifest);
  if (!t.unit.empty()) os << "# unit: " << t.unit << '\n';
  os << "row,col,value,exact\n";
  char buf[40];
  for (std::size_t i = 0; i < t.size; ++i)
    for (int off = -t.lower; off <= t.upper; ++off) {
      const long j = static_cast<long>(i) + off;
      if (j < 0 || j >= static_cast<long>(t.size)) continue;
      const auto k = static_cast<std::size_t>(off + t.lower);
      const auto end = std::to_chars(buf, buf + sizeof buf, t.values[i][k]).ptr;
      os << i << ',' << j << ',' << std::string_view(buf, end - buf) << ',' << csv_field(t.entries[i][k]) << '\n';
    }
  return os.str();
}

std::string band_table_txt(const BandTable& t, const RunManifest& manifest, std::size_t rows) {
  const std::size_t shown = rows == 0 ? t.size : std::min(rows, t.size);
  // Columns reachable from the shown rows.
  const std::size_t cols = std::min(t.size, shown + static_cast<std::size_t>(t.upper));
  std::ostringstream os;
  os << manifest_header(manifest);
  os << "# " << t.name << " matrix, rows 0.." << shown - 1 << " of " << t.size << '\n';
  for (std::size_t i = 0; i < shown; ++i) {
    os << (i == 0 ? "[ " : "  ");
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) os << "  ";
      os << format_fixed(t.value(i, j), 4);
    }
    os << (cols < t.size ? "  ..." : "");
    if (!t.row_status.empty() && t.row_status[i] != "complete") os << "   <" << t.row_status[i] << '>';
    os << (i + 1 == shown ? " ]" : "") << '\n';
  }
  if (shown < t.size) os << "  ...\n";
  return os.str();
}

std::string sim_report_csv(const SimReport& r, const RunManifest& manifest) {
  std::ostringstream os;
  os << manifest_header(manifest);
  os << "# algorithm: " << r.algorithm << "\n# return_frequency: " << r.return_frequency << '\n';
  os << "time,state,count\n";
  for (std::size_t t = 0; t < r.visit_counts.size(); ++t)
    for (std::size_t s = 0; s < r.visit_counts[t].size(); ++s) {
      if (r.visit_counts[t][s] == 0) continue;
      os << t << ',';
      if (s == r.killed_column())
        os << "killed";
      else
        os << s;
      os << ',' << r.visit_counts[t][s] << '\n';
    }
  return os.str();
}

}  // namespace mochain
