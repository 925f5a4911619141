#include "webnav/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "webnav/errors.hpp"

namespace webnav {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) throw ConfigError("non-finite value for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(value) + "' for " + std::string(key));
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    out.emplace_back(std::string(key), std::string(trim(text.substr(eq + 1))));
  }
  return out;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_key_values(in);
}

void write_key_values(std::ostream& out, const KeyValues& entries) {
  for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
}

void SimConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "model") model = parse_model(value);
  else if (key == "n") growth.n = parse_number<std::size_t>(key, value);
  else if (key == "m") growth.m = parse_number<std::size_t>(key, value);
  else if (key == "gamma") growth.gamma = parse_number<double>(key, value);
  else if (key == "graph") graph_path = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
  else if (key == "symmetrize") symmetrize = parse_bool(key, value);
  else if (key == "pt") params.teleport = parse_number<double>(key, value);
  else if (key == "beta") params.beta = parse_number<double>(key, value);
  else if (key == "pb") params.back = parse_number<double>(key, value);
  else if (key == "e0") params.initial_energy = parse_number<double>(key, value);
  else if (key == "cf") params.forward_cost = parse_number<double>(key, value);
  else if (key == "cb") params.back_cost = parse_number<double>(key, value);
  else if (key == "eta") params.locality = parse_number<double>(key, value);
  else if (key == "delta0") params.initial_relevance = parse_number<double>(key, value);
  else if (key == "agents") agents = parse_number<std::size_t>(key, value);
  else if (key == "sessions") sessions = parse_number<std::uint64_t>(key, value);
  else if (key == "sessions_file")
    sessions_file = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "workers") workers = parse_number<std::size_t>(key, value);
  else if (key == "out") out = std::filesystem::path(value);
  else if (key == "export_log")
    export_log = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
  else if (key == "xmin_page") cutoffs.page = parse_number<std::uint64_t>(key, value);
  else if (key == "xmin_link") cutoffs.link = parse_number<std::uint64_t>(key, value);
  else if (key == "xmin_empty") cutoffs.empty_referrer = parse_number<std::uint64_t>(key, value);
  else if (key == "xmin_size") cutoffs.session_size = parse_number<std::uint64_t>(key, value);
  else if (key == "xmin_depth") cutoffs.session_depth = parse_number<std::uint64_t>(key, value);
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void SimConfig::apply(const KeyValues& entries) {
  for (const auto& [key, value] : entries) set(key, value);
}

void SimConfig::validate() const {
  params.validate();
  if (agents < 1) throw ConfigError("agents must be at least 1");
  if (!sessions_file && sessions < 1) throw ConfigError("sessions must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (!graph_path) {
    if (growth.m < 1) throw ConfigError("m must be at least 1");
    if (growth.n < growth.m + 1) throw ConfigError("n must be at least m + 1");
    if (!(growth.gamma > 2.0)) throw ConfigError("gamma must exceed 2");
  }
  for (auto x : {cutoffs.page, cutoffs.link, cutoffs.empty_referrer, cutoffs.session_size, cutoffs.session_depth})
    if (x < 1) throw ConfigError("fit cutoffs must be at least 1");
}

KeyValues SimConfig::to_key_values() const {
  KeyValues kv;
  kv.emplace_back("model", std::string(to_string(model)));
  if (graph_path) {
    kv.emplace_back("graph", graph_path->string());
    kv.emplace_back("symmetrize", symmetrize ? "true" : "false");
  } else {
    kv.emplace_back("n", std::to_string(growth.n));
    kv.emplace_back("m", std::to_string(growth.m));
    kv.emplace_back("gamma", format_double(growth.gamma));
  }
  kv.emplace_back("pt", format_double(params.teleport));
  kv.emplace_back("beta", format_double(params.beta));
  kv.emplace_back("pb", format_double(params.back));
  kv.emplace_back("e0", format_double(params.initial_energy));
  kv.emplace_back("cf", format_double(params.forward_cost));
  kv.emplace_back("cb", format_double(params.back_cost));
  kv.emplace_back("eta", format_double(params.locality));
  kv.emplace_back("delta0", format_double(params.initial_relevance));
  kv.emplace_back("agents", std::to_string(agents));
  if (sessions_file) kv.emplace_back("sessions_file", sessions_file->string());
  else kv.emplace_back("sessions", std::to_string(sessions));
  kv.emplace_back("seed", std::to_string(seed));
  kv.emplace_back("workers", std::to_string(workers));
  kv.emplace_back("out", out.string());
  if (export_log) kv.emplace_back("export_log", export_log->string());
  kv.emplace_back("xmin_page", std::to_string(cutoffs.page));
  kv.emplace_back("xmin_link", std::to_string(cutoffs.link));
  kv.emplace_back("xmin_empty", std::to_string(cutoffs.empty_referrer));
  kv.emplace_back("xmin_size", std::to_string(cutoffs.session_size));
  kv.emplace_back("xmin_depth", std::to_string(cutoffs.session_depth));
  return kv;
}

std::vector<std::uint64_t> load_session_quotas(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sessions file " + path.string());
  std::vector<std::uint64_t> quotas;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    std::uint64_t q = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError(line_no, "expected a session count");
    quotas.push_back(q);
  }
  return quotas;
}

}  // namespace webnav
