#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "webnav/config.hpp"
#include "webnav/ingest.hpp"
#include "webnav/metrics.hpp"
#include "webnav/session.hpp"

namespace webnav {

// Longest-processing-time partition of agents into worker queues. Each queue
// lists agent ids in increasing order.
std::vector<std::vector<std::uint32_t>> partition_work(std::span<const std::uint64_t> quotas, std::size_t workers);

// Session quota of every agent for a config.
std::vector<std::uint64_t> session_quotas(const SimConfig& config);

WebGraph build_graph(const SimConfig& config);

// Tallies and descriptors of a run, plus optional string labels. Empty label
// tables mean the decimal id is the label.
struct Analysis {
  TrafficTally tally;
  std::vector<SessionDescriptor> sessions;  // ordered by (user, session_index)
  std::vector<std::string> page_labels;
  std::vector<std::string> user_labels;
  std::uint64_t clicks = 0;
  // click_lengths[l] = sessions with l in-session clicks (forward or back);
  // filled by simulate only.
  std::vector<std::uint64_t> click_lengths;
};

/// Runs every agent's session quota on g. Results depend only on the graph,
/// the model settings, the quotas and the seed, never on config.workers.
/// When log_out is given, every tallied request is written to it in the
/// request-log format, grouped by agent.
Analysis simulate(const WebGraph& g, const SimConfig& config, std::span<const std::uint64_t> quotas,
                  std::ostream* log_out = nullptr);

struct IngestOptions {
  ParseOptions parse;
  SessionizeOptions sessionize;
};

Analysis ingest_log(std::istream& in, const IngestOptions& options, ParseStats& stats);

inline constexpr std::array<const char*, 6> kMetricNames = {
    "page_traffic", "link_traffic", "empty_referrer_traffic", "entropy", "session_size", "session_depth"};

struct DescriptorSamples {
  std::vector<std::uint64_t> page_traffic;
  std::vector<std::uint64_t> link_traffic;
  std::vector<std::uint64_t> empty_referrer_traffic;
  std::vector<double> entropy;  // one value per user, in user label order
  std::vector<std::uint64_t> session_size;
  std::vector<std::uint64_t> session_depth;
};

DescriptorSamples descriptor_samples(const Analysis& analysis);

// Orders labels numerically when both are canonical decimals, otherwise
// lexicographically (decimals first).
bool natural_less(std::string_view a, std::string_view b);

struct RunManifest {
  std::filesystem::path path;
  KeyValues entries;

  std::optional<std::string> get(std::string_view key) const;
};

// Writes every descriptor output into dir and returns the manifest entries
// describing them (file names, means, fits, totals).
KeyValues write_outputs(const std::filesystem::path& dir, const Analysis& analysis, const FitCutoffs& cutoffs);

RunManifest run_simulation(const SimConfig& config);

struct IngestConfig {
  std::filesystem::path log;
  std::filesystem::path out = "webnav-out";
  IngestOptions options;
  FitCutoffs cutoffs;
};

// Throws IoError for an unreadable log and DataError when it holds no records.
RunManifest run_ingest(const IngestConfig& config);

RunManifest load_manifest(const std::filesystem::path& path_or_dir);

struct MetricComparison {
  std::string metric;
  std::optional<double> alpha_a;
  std::optional<double> alpha_b;
  double mean_a = 0;
  double mean_b = 0;
  double ks = 0;
};

// Per-metric exponents, means and KS distances between two runs. Throws
// ConfigError when the runs do not provide the same metric set.
std::vector<MetricComparison> compare_runs(const RunManifest& a, const RunManifest& b);
void write_comparison(std::ostream& out, const std::vector<MetricComparison>& rows);

}  // namespace webnav
