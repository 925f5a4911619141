#include "webnav/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "webnav/errors.hpp"

namespace webnav {

namespace {

constexpr std::uint64_t kAgentStreamTag = 0x6167656e;  // "agen"
constexpr std::int64_t kExportEpoch = 1204700000;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool is_canonical_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Position of every id in the natural order of its label.
std::vector<std::uint32_t> label_ranks(const std::vector<std::string>& labels) {
  std::vector<std::uint32_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return natural_less(labels[a], labels[b]); });
  std::vector<std::uint32_t> rank(labels.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

class Labeler {
 public:
  explicit Labeler(const std::vector<std::string>& labels) : labels_(labels), ranks_(label_ranks(labels)) {}
  std::string label(std::uint32_t id) const { return labels_.empty() ? std::to_string(id) : csv_field(labels_.at(id)); }
  std::uint32_t rank(std::uint32_t id) const { return labels_.empty() ? id : ranks_.at(id); }

 private:
  const std::vector<std::string>& labels_;
  std::vector<std::uint32_t> ranks_;
};

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, std::string_view header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot write " + path.string());
    buf_ += header;
    buf_ += '\n';
  }
  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((buf_ += (first ? "" : ","), buf_ += fields, first = false), ...);
    buf_ += '\n';
    if (buf_.size() > (1u << 20)) flush();
  }
  void close() {
    flush();
    out_.close();
    if (!out_) throw IoError("write failed for " + path_.string());
  }

 private:
  void flush() {
    out_ << buf_;
    buf_.clear();
  }
  std::filesystem::path path_;
  std::ofstream out_;
  std::string buf_;
};

template <typename Key>
std::vector<std::pair<Key, Count>> sorted_counts(const std::unordered_map<Key, Count>& counts,
                                                 const auto& key_rank_less) {
  std::vector<std::pair<Key, Count>> rows(counts.begin(), counts.end());
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return key_rank_less(a.first, b.first);
  });
  return rows;
}

std::vector<UserId> users_in_label_order(const Analysis& analysis, const Labeler& users) {
  std::vector<UserId> ids;
  ids.reserve(analysis.tally.user_visits().size());
  for (const auto& [user, pages] : analysis.tally.user_visits()) ids.push_back(user);
  std::sort(ids.begin(), ids.end(), [&](UserId a, UserId b) { return users.rank(a) < users.rank(b); });
  return ids;
}

void write_histogram(const std::filesystem::path& path, const Histogram& h) {
  CsvFile csv(path, "bin_lo,bin_hi,count,density");
  for (const auto& bin : h.bins)
    csv.row(format_double(bin.lo), format_double(bin.hi), std::to_string(bin.count), format_double(bin.density));
  csv.close();
}

std::vector<double> as_doubles(std::span<const std::uint64_t> v) { return {v.begin(), v.end()}; }

std::vector<std::uint64_t> positive(std::span<const std::uint64_t> v) {
  std::vector<std::uint64_t> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), [](auto x) { return x > 0; });
  return out;
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b) {
  const bool da = is_canonical_decimal(a), db = is_canonical_decimal(b);
  if (da != db) return da;
  if (da && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::vector<std::uint32_t>> partition_work(std::span<const std::uint64_t> quotas, std::size_t workers) {
  if (workers < 1) throw ConfigError("workers must be at least 1");
  const std::size_t queues_n = std::max<std::size_t>(1, std::min(workers, quotas.size()));
  std::vector<std::uint32_t> order(quotas.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return quotas[a] > quotas[b]; });
  std::vector<std::vector<std::uint32_t>> queues(queues_n);
  std::vector<std::uint64_t> load(queues_n, 0);
  for (auto agent : order) {
    const auto q = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    queues[q].push_back(agent);
    load[q] += quotas[agent];
  }
  for (auto& q : queues) std::sort(q.begin(), q.end());
  return queues;
}

std::vector<std::uint64_t> session_quotas(const SimConfig& config) {
  if (config.sessions_file) {
    auto quotas = load_session_quotas(*config.sessions_file);
    if (quotas.empty()) throw ConfigError("sessions file lists no agents");
    for (auto q : quotas)
      if (q < 1) throw ConfigError("every agent needs at least one session");
    return quotas;
  }
  return std::vector<std::uint64_t>(config.agents, config.sessions);
}

WebGraph build_graph(const SimConfig& config) {
  if (config.graph_path) return load_edge_list(*config.graph_path, config.symmetrize);
  GrowthParams growth = config.growth;
  growth.seed = config.seed;
  return generate_scale_free(growth);
}

namespace {

struct AgentOutput {
  std::vector<SessionDescriptor> sessions;
  std::vector<std::pair<NodeId, NodeId>> requests;  // (referrer, target); referrer == target for starts
  std::uint64_t clicks = 0;
  std::vector<std::uint64_t> click_lengths;
};

void count_length(std::vector<std::uint64_t>& lengths, std::uint64_t l) {
  if (lengths.size() <= l) lengths.resize(l + 1, 0);
  ++lengths[l];
}

void run_agent(const WebGraph& g, const SimConfig& config, std::uint32_t agent, std::uint64_t quota,
               TrafficTally& tally, AgentOutput& out, bool keep_requests) {
  AgentState state(derive_rng(config.seed, agent, kAgentStreamTag));
  SessionRecorder recorder(agent, tally, [&out](const SessionDescriptor& d) { out.sessions.push_back(d); });

  std::uint64_t in_session = 0;
  auto apply = [&](const StepOutcome& outcome) {
    ++out.clicks;
    if (outcome.kind == StepKind::teleport) {
      if (recorder.sessions_started() > 0) count_length(out.click_lengths, in_session);
      in_session = 0;
    } else {
      ++in_session;
    }
    const RecordEffect effect = recorder.record(outcome);
    if (!keep_requests) return;
    if (effect == RecordEffect::session_start) out.requests.emplace_back(outcome.to, outcome.to);
    else if (effect == RecordEffect::new_page) out.requests.emplace_back(outcome.from, outcome.to);
  };

  apply(begin_browsing(state, g, config.params, config.model));
  for (;;) {
    const StepOutcome outcome = step(state, g, config.params, config.model);
    if (outcome.kind == StepKind::teleport && recorder.sessions_started() == quota) break;
    apply(outcome);
  }
  count_length(out.click_lengths, in_session);
  recorder.finish();
}

}  // namespace

Analysis simulate(const WebGraph& g, const SimConfig& config, std::span<const std::uint64_t> quotas,
                  std::ostream* log_out) {
  config.params.validate();
  if (g.size() == 0) throw DataError("simulation graph is empty");
  const auto queues = partition_work(quotas, config.workers);
  std::vector<AgentOutput> outputs(quotas.size());
  std::vector<TrafficTally> tallies(queues.size());

  auto work = [&](std::size_t q) {
    for (auto agent : queues[q]) run_agent(g, config, agent, quotas[agent], tallies[q], outputs[agent], log_out != nullptr);
  };
  if (queues.size() == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(queues.size());
    for (std::size_t q = 0; q < queues.size(); ++q) pool.emplace_back(work, q);
  }

  Analysis result;
  for (auto& t : tallies) result.tally.merge(t);
  for (std::uint32_t agent = 0; agent < outputs.size(); ++agent) {
    auto& out = outputs[agent];
    result.sessions.insert(result.sessions.end(), out.sessions.begin(), out.sessions.end());
    result.clicks += out.clicks;
    if (result.click_lengths.size() < out.click_lengths.size()) result.click_lengths.resize(out.click_lengths.size(), 0);
    for (std::size_t l = 0; l < out.click_lengths.size(); ++l) result.click_lengths[l] += out.click_lengths[l];
    if (log_out) {
      std::string buf;
      std::int64_t t = kExportEpoch;
      const std::string user = std::to_string(agent);
      for (const auto& [from, to] : out.requests) {
        buf += std::to_string(t++);
        buf += '\t';
        buf += user;
        buf += '\t';
        buf += from == to ? "-" : std::to_string(from);
        buf += '\t';
        buf += std::to_string(to);
        buf += '\n';
      }
      *log_out << buf;
    }
    out = AgentOutput{};
  }
  return result;
}

Analysis ingest_log(std::istream& in, const IngestOptions& options, ParseStats& stats) {
  Analysis result;
  Sessionizer sessionizer(result.tally, [&result](const SessionDescriptor& d) { result.sessions.push_back(d); },
                          options.sessionize);
  parse_log(in, options.parse, stats, [&](LogRecord&& rec) {
    sessionizer.add(rec);
    ++result.clicks;
  });
  sessionizer.finish();

  const auto& pages = sessionizer.pages();
  const auto& users = sessionizer.users();
  for (std::uint32_t i = 0; i < pages.size(); ++i) result.page_labels.push_back(pages.label(i));
  for (std::uint32_t i = 0; i < users.size(); ++i) result.user_labels.push_back(users.label(i));

  const Labeler user_labels(result.user_labels);
  std::sort(result.sessions.begin(), result.sessions.end(), [&](const auto& a, const auto& b) {
    if (a.user != b.user) return user_labels.rank(a.user) < user_labels.rank(b.user);
    return a.session_index < b.session_index;
  });
  return result;
}

DescriptorSamples descriptor_samples(const Analysis& analysis) {
  DescriptorSamples s;
  for (const auto& [page, n] : analysis.tally.page_visits()) s.page_traffic.push_back(n);
  for (const auto& [link, n] : analysis.tally.link_visits()) s.link_traffic.push_back(n);
  for (const auto& [page, n] : analysis.tally.session_starts()) s.empty_referrer_traffic.push_back(n);
  std::sort(s.page_traffic.begin(), s.page_traffic.end());
  std::sort(s.link_traffic.begin(), s.link_traffic.end());
  std::sort(s.empty_referrer_traffic.begin(), s.empty_referrer_traffic.end());
  const Labeler users(analysis.user_labels);
  for (UserId user : users_in_label_order(analysis, users)) s.entropy.push_back(user_entropy(analysis.tally, user));
  for (const auto& d : analysis.sessions) {
    s.session_size.push_back(d.size);
    s.session_depth.push_back(d.depth);
  }
  return s;
}

std::optional<std::string> RunManifest::get(std::string_view key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return std::nullopt;
}

KeyValues write_outputs(const std::filesystem::path& dir, const Analysis& analysis, const FitCutoffs& cutoffs) {
  const Labeler pages(analysis.page_labels);
  const Labeler users(analysis.user_labels);
  const auto& tally = analysis.tally;
  KeyValues manifest;
  auto output = [&](const std::string& key, const std::string& file) {
    manifest.emplace_back("output." + key, file);
    return dir / file;
  };

  {
    CsvFile csv(output("sessions", "sessions.csv"), "user_id,session_index,root,size,depth");
    for (const auto& d : analysis.sessions)
      csv.row(users.label(d.user), std::to_string(d.session_index), pages.label(d.root), std::to_string(d.size),
              std::to_string(d.depth));
    csv.close();
  }
  auto page_less = [&](NodeId a, NodeId b) { return pages.rank(a) < pages.rank(b); };
  {
    CsvFile csv(output("page_traffic", "page_traffic.csv"), "page,count");
    for (const auto& [page, n] : sorted_counts(tally.page_visits(), page_less))
      csv.row(pages.label(page), std::to_string(n));
    csv.close();
  }
  {
    CsvFile csv(output("link_traffic", "link_traffic.csv"), "source,target,count");
    auto link_less = [&](std::uint64_t a, std::uint64_t b) {
      const auto ka = std::pair{pages.rank(link_source(a)), pages.rank(link_target(a))};
      const auto kb = std::pair{pages.rank(link_source(b)), pages.rank(link_target(b))};
      return ka < kb;
    };
    for (const auto& [link, n] : sorted_counts(tally.link_visits(), link_less))
      csv.row(pages.label(link_source(link)), pages.label(link_target(link)), std::to_string(n));
    csv.close();
  }
  {
    CsvFile csv(output("empty_referrer_traffic", "empty_referrer_traffic.csv"), "page,count");
    for (const auto& [page, n] : sorted_counts(tally.session_starts(), page_less))
      csv.row(pages.label(page), std::to_string(n));
    csv.close();
  }
  {
    CsvFile csv(output("entropy", "entropy.csv"), "user_id,entropy");
    for (UserId user : users_in_label_order(analysis, users))
      csv.row(users.label(user), format_double(user_entropy(tally, user)));
    csv.close();
  }

  const DescriptorSamples samples = descriptor_samples(analysis);
  struct Series {
    const char* name;
    const std::vector<std::uint64_t>* values;
    std::uint64_t xmin;
  };
  const Series series[] = {
      {"page_traffic", &samples.page_traffic, cutoffs.page},
      {"link_traffic", &samples.link_traffic, cutoffs.link},
      {"empty_referrer_traffic", &samples.empty_referrer_traffic, cutoffs.empty_referrer},
      {"session_size", &samples.session_size, cutoffs.session_size},
      {"session_depth", &samples.session_depth, cutoffs.session_depth},
  };

  CsvFile fits(output("fits", "fits.csv"), "metric,alpha,xmin,n_tail,stderr");
  KeyValues stats;
  for (const auto& s : series) {
    const std::string name = s.name;
    const auto pos = positive(*s.values);
    if (!pos.empty()) write_histogram(output("dist." + name, "dist_" + name + ".csv"), log_histogram(pos));
    stats.emplace_back("mean." + name, format_double(mean(as_doubles(*s.values))));
    try {
      const PowerLawFit fit = fit_power_law(*s.values, s.xmin);
      fits.row(name, format_double(fit.alpha), std::to_string(fit.xmin), std::to_string(fit.n_tail),
               format_double(fit.std_error));
      stats.emplace_back("fit." + name + ".alpha", format_double(fit.alpha));
    } catch (const StatisticsError&) {
      const auto n_tail = std::count_if(s.values->begin(), s.values->end(), [&](auto x) { return x >= s.xmin; });
      fits.row(name, std::string("nan"), std::to_string(s.xmin), std::to_string(n_tail), std::string("nan"));
      stats.emplace_back("fit." + name + ".alpha", "nan");
    }
  }
  fits.close();
  if (!samples.entropy.empty())
    write_histogram(output("dist.entropy", "dist_entropy.csv"), linear_histogram(samples.entropy, 0.25));
  stats.emplace_back("mean.entropy", format_double(mean(samples.entropy)));

  manifest.insert(manifest.end(), stats.begin(), stats.end());
  manifest.emplace_back("total.sessions", std::to_string(analysis.sessions.size()));
  manifest.emplace_back("total.clicks", std::to_string(analysis.clicks));
  manifest.emplace_back("total.users", std::to_string(samples.entropy.size()));
  manifest.emplace_back("total.page_visits", std::to_string(tally.total_page_visits()));
  return manifest;
}

namespace {

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

RunManifest finish_manifest(const std::filesystem::path& dir, KeyValues entries, double seconds) {
  entries.emplace_back("wall_time_seconds", format_double(seconds));
  RunManifest manifest{dir / "manifest.txt", std::move(entries)};
  std::ofstream out(manifest.path, std::ios::binary);
  if (!out) throw IoError("cannot write " + manifest.path.string());
  write_key_values(out, manifest.entries);
  if (!out) throw IoError("write failed for " + manifest.path.string());
  return manifest;
}

}  // namespace

RunManifest run_simulation(const SimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const auto quotas = session_quotas(config);
  const WebGraph g = build_graph(config);
  prepare_dir(config.out);

  std::ofstream log_file;
  if (config.export_log) {
    log_file.open(*config.export_log, std::ios::binary);
    if (!log_file) throw IoError("cannot write " + config.export_log->string());
  }
  const Analysis analysis = simulate(g, config, quotas, config.export_log ? &log_file : nullptr);
  if (config.export_log) {
    log_file.close();
    if (!log_file) throw IoError("write failed for " + config.export_log->string());
  }

  KeyValues entries{{"mode", "simulate"}, {"version", std::string(kVersion)}};
  for (auto& kv : config.to_key_values()) entries.push_back(std::move(kv));
  entries.emplace_back("graph.nodes", std::to_string(g.size()));
  entries.emplace_back("graph.directed_edges", std::to_string(g.edge_count()));
  for (auto& kv : write_outputs(config.out, analysis, config.cutoffs)) entries.push_back(std::move(kv));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return finish_manifest(config.out, std::move(entries), seconds);
}

RunManifest run_ingest(const IngestConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::ifstream in(config.log, std::ios::binary);
  if (!in) throw IoError("cannot open log " + config.log.string());
  ParseStats stats;
  const Analysis analysis = ingest_log(in, config.options, stats);
  if (in.bad()) throw IoError("read failed for " + config.log.string());
  if (analysis.sessions.empty()) throw DataError("log holds no usable records");
  prepare_dir(config.out);

  std::string extensions;
  for (const auto& e : config.options.parse.page_extensions) extensions += (extensions.empty() ? "" : ",") + e;
  KeyValues entries{{"mode", "ingest"},
                    {"version", std::string(kVersion)},
                    {"log", config.log.string()},
                    {"timeout", std::to_string(config.options.sessionize.timeout)},
                    {"strip_query", config.options.parse.strip_query ? "true" : "false"},
                    {"extensions", extensions},
                    {"by_host", config.options.sessionize.entropy_by_host ? "true" : "false"},
                    {"out", config.out.string()},
                    {"xmin_page", std::to_string(config.cutoffs.page)},
                    {"xmin_link", std::to_string(config.cutoffs.link)},
                    {"xmin_empty", std::to_string(config.cutoffs.empty_referrer)},
                    {"xmin_size", std::to_string(config.cutoffs.session_size)},
                    {"xmin_depth", std::to_string(config.cutoffs.session_depth)},
                    {"parse.lines", std::to_string(stats.lines)},
                    {"parse.records", std::to_string(stats.records)},
                    {"parse.malformed", std::to_string(stats.malformed)},
                    {"parse.filtered", std::to_string(stats.filtered)}};
  for (auto& kv : write_outputs(config.out, analysis, config.cutoffs)) entries.push_back(std::move(kv));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return finish_manifest(config.out, std::move(entries), seconds);
}

RunManifest load_manifest(const std::filesystem::path& path_or_dir) {
  const auto path = std::filesystem::is_directory(path_or_dir) ? path_or_dir / "manifest.txt" : path_or_dir;
  return RunManifest{path, load_key_values(path)};
}

namespace {

// Trailing numeric fields of every data row.
std::vector<std::vector<double>> read_trailing_columns(const std::filesystem::path& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> out(columns);
  std::string line;
  std::getline(in, line);  // header
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string_view rest = line;
    for (std::size_t c = columns; c-- > 0;) {
      const auto comma = rest.rfind(',');
      const std::string_view field = comma == std::string_view::npos ? rest : rest.substr(comma + 1);
      double v = 0;
      if (field == "nan") v = std::numeric_limits<double>::quiet_NaN();
      else {
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size())
          throw ParseError(line_no, "bad numeric field in " + path.string());
      }
      out[c].push_back(v);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(0, comma);
    }
  }
  return out;
}

std::map<std::string, std::vector<double>> load_metric_samples(const RunManifest& m) {
  auto file = [&](const std::string& key) {
    const auto rel = m.get("output." + key);
    if (!rel) throw ConfigError(m.path.string() + " lacks output." + key);
    return m.path.parent_path() / *rel;
  };
  std::map<std::string, std::vector<double>> samples;
  samples["page_traffic"] = read_trailing_columns(file("page_traffic"), 1)[0];
  samples["link_traffic"] = read_trailing_columns(file("link_traffic"), 1)[0];
  samples["empty_referrer_traffic"] = read_trailing_columns(file("empty_referrer_traffic"), 1)[0];
  samples["entropy"] = read_trailing_columns(file("entropy"), 1)[0];
  auto sessions = read_trailing_columns(file("sessions"), 2);
  samples["session_size"] = std::move(sessions[0]);
  samples["session_depth"] = std::move(sessions[1]);
  return samples;
}

std::vector<std::string> output_keys(const RunManifest& m) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : m.entries)
    if (k.rfind("output.", 0) == 0) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::optional<double> manifest_alpha(const RunManifest& m, const std::string& metric) {
  const auto v = m.get("fit." + metric + ".alpha");
  if (!v || *v == "nan") return std::nullopt;
  double out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{}) return std::nullopt;
  return out;
}

}  // namespace

std::vector<MetricComparison> compare_runs(const RunManifest& a, const RunManifest& b) {
  if (output_keys(a) != output_keys(b)) throw ConfigError("runs do not provide the same metric set");
  const auto sa = load_metric_samples(a);
  const auto sb = load_metric_samples(b);
  std::vector<MetricComparison> rows;
  for (const char* metric : kMetricNames) {
    const auto& x = sa.at(metric);
    const auto& y = sb.at(metric);
    if (x.empty() != y.empty()) throw ConfigError(std::string("metric ") + metric + " is empty in only one run");
    MetricComparison row;
    row.metric = metric;
    row.alpha_a = manifest_alpha(a, metric);
    row.alpha_b = manifest_alpha(b, metric);
    row.mean_a = mean(x);
    row.mean_b = mean(y);
    row.ks = x.empty() ? 0.0 : ks_statistic(x, y);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_comparison(std::ostream& out, const std::vector<MetricComparison>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("nan"); };
  out << "metric,alpha_a,alpha_b,mean_a,mean_b,ks\n";
  for (const auto& r : rows)
    out << r.metric << ',' << opt(r.alpha_a) << ',' << opt(r.alpha_b) << ',' << format_double(r.mean_a) << ','
        << format_double(r.mean_b) << ',' << format_double(r.ks) << '\n';
}

}  // namespace webnav
