#include "elm/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "elm/errors.hpp"
#include "json.hpp"

namespace elm {

namespace {

constexpr const char* kCsvHeader =
    "method,M,seed,test_error_pct,train_error_pct,train_seconds";

// Shortest digit string that parses back to exactly v.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
T parse_number(const std::string& field, int line_no) {
  T value{};
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw FormatError("line " + std::to_string(line_no) + ": '" + field +
                      "' is not a number");
  return value;
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["dataset"] = to_string(cfg.dataset);
  j["data_dir"] = cfg.data_dir.string();
  j["method"] = to_string(cfg.method);
  j["m_list"] = cfg.m_list;
  j["repeats"] = cfg.repeats;
  j["c"] = cfg.c;
  j["activation"] = to_string(cfg.activation);
  j["alpha"] = cfg.shaping.alpha;
  j["rf"] = {{"side", cfg.shaping.rf.side},
             {"q", cfg.shaping.rf.q},
             {"border", cfg.shaping.rf.border},
             {"channels", cfg.shaping.rf.channels}};
  if (cfg.shaping.celm.epsilon)
    j["celm_epsilon"] = *cfg.shaping.celm.epsilon;
  else
    j["celm_epsilon"] = nullptr;
  if (cfg.bp)
    j["bp"] = {{"learning_rate", cfg.bp->learning_rate},
               {"iterations", cfg.bp->iterations},
               {"mask_updates", cfg.bp->mask_updates}};
  else
    j["bp"] = nullptr;
  if (cfg.augment_shift)
    j["augment_shift"] = *cfg.augment_shift;
  else
    j["augment_shift"] = nullptr;
  j["seed"] = cfg.seed;
  j["memory_budget_mb"] = cfg.memory_budget_mb;
  return j;
}

}  // namespace

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RunRecord& r : records) {
    out += to_string(r.method);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += shortest(r.test_error_pct);
    out += ',';
    out += shortest(r.train_error_pct);
    out += ',';
    out += shortest(r.train_seconds);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<RunRecord>& records,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << to_csv(records);
  out.flush();
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<RunRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw FormatError(path.string() + ": missing or wrong header line");

  std::vector<RunRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 6)
      throw FormatError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                        std::to_string(f.size()));
    RunRecord r;
    try {
      r.method = method_from_string(f[0]);
    } catch (const ConfigError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    r.m = parse_number<Index>(f[1], line_no);
    r.seed = parse_number<std::uint64_t>(f[2], line_no);
    r.test_error_pct = parse_number<double>(f[3], line_no);
    r.train_error_pct = parse_number<double>(f[4], line_no);
    r.train_seconds = parse_number<double>(f[5], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::string summary_json(const ExperimentConfig& cfg, const RunReport& report) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  j["means"] = nlohmann::ordered_json::array();
  for (const EnsembleMean& m : report.means)
    j["means"].push_back({{"method", to_string(m.method)},
                          {"M", m.m},
                          {"repeats", m.repeats},
                          {"test_error_pct", m.test_error_pct},
                          {"train_error_pct", m.train_error_pct},
                          {"train_seconds", m.train_seconds}});
  j["environment"] = {{"cpu_cores", std::thread::hardware_concurrency()}};
  return j.dump();
}

namespace {

// get<T> with the offending key in the error message
template <typename T>
T typed(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type");
  }
}

void parse_rf(const nlohmann::json& j, RfMaskConfig& rf) {
  for (const auto& [key, value] : j.items()) {
    if (key == "side")
      rf.side = typed<int>(value, "rf.side");
    else if (key == "q")
      rf.q = typed<Index>(value, "rf.q");
    else if (key == "border")
      rf.border = typed<int>(value, "rf.border");
    else if (key == "channels")
      rf.channels = typed<int>(value, "rf.channels");
    else
      throw ConfigError("unknown config field 'rf." + key + "'");
  }
}

void parse_bp(const nlohmann::json& j, BpConfig& bp) {
  for (const auto& [key, value] : j.items()) {
    if (key == "learning_rate")
      bp.learning_rate = typed<double>(value, "bp.learning_rate");
    else if (key == "iterations")
      bp.iterations = typed<int>(value, "bp.iterations");
    else if (key == "mask_updates")
      bp.mask_updates = typed<bool>(value, "bp.mask_updates");
    else
      throw ConfigError("unknown config field 'bp." + key + "'");
  }
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig cfg;
  bool saw_m = false, saw_m_list = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "dataset")
      cfg.dataset = dataset_from_string(typed<std::string>(value, key));
    else if (key == "data_dir")
      cfg.data_dir = typed<std::string>(value, key);
    else if (key == "method")
      cfg.method = method_from_string(typed<std::string>(value, key));
    else if (key == "m_list") {
      cfg.m_list = typed<std::vector<Index>>(value, key);
      saw_m_list = true;
    } else if (key == "m") {
      cfg.m_list = {typed<Index>(value, key)};
      saw_m = true;
    } else if (key == "repeats")
      cfg.repeats = typed<int>(value, key);
    else if (key == "c")
      cfg.c = typed<double>(value, key);
    else if (key == "activation")
      cfg.activation = activation_from_string(typed<std::string>(value, key));
    else if (key == "alpha")
      cfg.shaping.alpha = typed<double>(value, key);
    else if (key == "rf")
      parse_rf(value, cfg.shaping.rf);
    else if (key == "celm_epsilon") {
      if (!value.is_null()) cfg.shaping.celm.epsilon = typed<double>(value, key);
    } else if (key == "bp") {
      if (!value.is_null()) {
        cfg.bp = BpConfig{};
        parse_bp(value, *cfg.bp);
      }
    } else if (key == "augment_shift") {
      if (!value.is_null()) cfg.augment_shift = typed<int>(value, key);
    } else if (key == "seed")
      cfg.seed = typed<std::uint64_t>(value, key);
    else if (key == "memory_budget_mb")
      cfg.memory_budget_mb = typed<std::int64_t>(value, key);
    else
      throw ConfigError("unknown config field '" + key + "'");
  }
  if (saw_m && saw_m_list)
    throw ConfigError("give either 'm' or 'm_list', not both");
  return cfg;
}

void emit_report(const ExperimentConfig& cfg, const RunReport& report,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  write_csv(report.records, dir / "runs.csv");
  const std::filesystem::path summary = dir / "summary.json";
  std::ofstream out(summary, std::ios::binary);
  if (!out) throw DataError("cannot open " + summary.string() + " for writing");
  out << summary_json(cfg, report) << '\n';
  out.flush();
  if (!out) throw DataError("write failed for " + summary.string());
}

}  // namespace elm
