#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "webnav/agents.hpp"
#include "webnav/graph.hpp"

namespace webnav {

inline constexpr std::string_view kVersion = "0.1.0";

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat "key = value" lines; '#' starts a comment line. Throws ParseError.
KeyValues read_key_values(std::istream& in);
KeyValues load_key_values(const std::filesystem::path& path);
void write_key_values(std::ostream& out, const KeyValues& entries);

// Lower cutoffs for the power-law fits of each descriptor.
struct FitCutoffs {
  std::uint64_t page = 10;
  std::uint64_t link = 10;
  std::uint64_t empty_referrer = 1;
  std::uint64_t session_size = 1;
  std::uint64_t session_depth = 1;
};

struct SimConfig {
  Model model = Model::abc;
  GrowthParams growth{100000, 3, 2.1, 1};
  std::optional<std::filesystem::path> graph_path;  // load instead of generating
  bool symmetrize = true;
  ModelParams params;
  std::size_t agents = 1000;
  std::uint64_t sessions = 1000;  // per agent, unless sessions_file is set
  std::optional<std::filesystem::path> sessions_file;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::filesystem::path out = "webnav-out";
  std::optional<std::filesystem::path> export_log;
  FitCutoffs cutoffs;

  // Keys: model n m gamma graph symmetrize pt beta pb e0 cf cb eta delta0
  // agents sessions sessions_file seed workers out export_log xmin_page
  // xmin_link xmin_empty xmin_size xmin_depth. Throws ConfigError.
  void set(std::string_view key, std::string_view value);
  void apply(const KeyValues& entries);
  void validate() const;
  KeyValues to_key_values() const;
};

// One non-negative integer per line; line i is agent i's session quota.
std::vector<std::uint64_t> load_session_quotas(const std::filesystem::path& path);

}  // namespace webnav
