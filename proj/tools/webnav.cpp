// webnav: simulate browsing models, sessionize request logs, compare runs.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 no data.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "webnav/config.hpp"
#include "webnav/errors.hpp"
#include "webnav/graph.hpp"
#include "webnav/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoData = 4;

struct KeyedOption {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr KeyedOption kSimulateOptions[] = {
    {"--model", "model", "pagerank, bookrank or abc"},
    {"--n", "n", "generated graph size"},
    {"--m", "m", "edges per new node"},
    {"--gamma", "gamma", "target degree exponent"},
    {"--graph", "graph", "edge-list file to browse instead of a generated graph"},
    {"--symmetrize", "symmetrize", "insert reverse edges when loading (true/false)"},
    {"--pt", "pt", "teleport probability"},
    {"--beta", "beta", "bookmark rank exponent"},
    {"--pb", "pb", "back-button probability"},
    {"--e0", "e0", "initial session energy"},
    {"--cf", "cf", "forward click cost"},
    {"--cb", "cb", "back click cost"},
    {"--eta", "eta", "topical locality half-width"},
    {"--delta0", "delta0", "relevance of the session start page"},
    {"--agents", "agents", "number of agents"},
    {"--sessions", "sessions", "sessions per agent"},
    {"--sessions-file", "sessions_file", "per-agent session counts, one per line"},
    {"--seed", "seed", "master random seed"},
    {"--workers", "workers", "worker threads"},
    {"--out", "out", "output directory"},
    {"--export-log", "export_log", "also write tallied requests as a request log"},
    {"--xmin-page", "xmin_page", "fit cutoff for page traffic"},
    {"--xmin-link", "xmin_link", "fit cutoff for link traffic"},
    {"--xmin-empty", "xmin_empty", "fit cutoff for empty-referrer traffic"},
    {"--xmin-size", "xmin_size", "fit cutoff for session size"},
    {"--xmin-depth", "xmin_depth", "fit cutoff for session depth"},
};

void print_manifest(const webnav::RunManifest& manifest) {
  std::cout << "manifest: " << manifest.path.string() << '\n';
  for (const auto& [key, value] : manifest.entries)
    if (key.rfind("mean.", 0) == 0 || key.rfind("fit.", 0) == 0 || key.rfind("total.", 0) == 0)
      std::cout << "  " << key << " = " << value << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Web navigation models and session analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(webnav::kVersion));

  auto* simulate = app.add_subcommand("simulate", "Run PageRank, BookRank or ABC agents");
  std::string config_path;
  simulate->add_option("--config", config_path, "flat key = value configuration file");
  std::map<std::string, std::string> sim_values;
  std::map<std::string, CLI::Option*> sim_flags;
  for (const auto& opt : kSimulateOptions)
    sim_flags[opt.key] = simulate->add_option(opt.flag, sim_values[opt.key], opt.help);

  auto* ingest = app.add_subcommand("ingest", "Sessionize a request log");
  webnav::IngestConfig ingest_config;
  std::string extensions;
  ingest->add_option("--log", ingest_config.log, "TSV request log")->required();
  ingest->add_option("--out", ingest_config.out, "output directory");
  ingest->add_option("--timeout", ingest_config.options.sessionize.timeout, "inactivity timeout in seconds");
  ingest->add_flag("--strip-query", ingest_config.options.parse.strip_query, "drop query strings from URLs");
  ingest->add_option("--extensions", extensions, "comma-separated page extension allowlist");
  ingest->add_flag("--by-host", ingest_config.options.sessionize.entropy_by_host, "user entropy over hosts");
  ingest->add_option("--xmin-page", ingest_config.cutoffs.page);
  ingest->add_option("--xmin-link", ingest_config.cutoffs.link);
  ingest->add_option("--xmin-empty", ingest_config.cutoffs.empty_referrer);
  ingest->add_option("--xmin-size", ingest_config.cutoffs.session_size);
  ingest->add_option("--xmin-depth", ingest_config.cutoffs.session_depth);

  auto* compare = app.add_subcommand("compare", "Compare the descriptors of two runs");
  std::string run_a, run_b, report_path;
  compare->add_option("run_a", run_a, "manifest or run directory")->required();
  compare->add_option("run_b", run_b, "manifest or run directory")->required();
  compare->add_option("--out", report_path, "write the report here instead of stdout");

  auto* graph = app.add_subcommand("graph", "Generate a scale-free graph as an edge list");
  webnav::GrowthParams growth;
  growth.n = 100000;
  std::string graph_out;
  graph->add_option("--n", growth.n);
  graph->add_option("--m", growth.m);
  graph->add_option("--gamma", growth.gamma);
  graph->add_option("--seed", growth.seed);
  graph->add_option("--out", graph_out, "edge-list path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) {
      webnav::SimConfig config;
      if (!config_path.empty()) config.apply(webnav::load_key_values(config_path));
      for (const auto& opt : kSimulateOptions)
        if (sim_flags[opt.key]->count() > 0) config.set(opt.key, sim_values[opt.key]);
      print_manifest(webnav::run_simulation(config));
    } else if (*ingest) {
      for (std::size_t start = 0; start < extensions.size();) {
        const auto comma = extensions.find(',', start);
        const auto item = extensions.substr(start, comma - start);
        if (!item.empty()) ingest_config.options.parse.page_extensions.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      print_manifest(webnav::run_ingest(ingest_config));
    } else if (*compare) {
      const auto rows = webnav::compare_runs(webnav::load_manifest(run_a), webnav::load_manifest(run_b));
      if (report_path.empty()) {
        webnav::write_comparison(std::cout, rows);
      } else {
        std::ofstream out(report_path);
        if (!out) throw webnav::IoError("cannot write " + report_path);
        webnav::write_comparison(out, rows);
      }
    } else if (*graph) {
      webnav::save_edge_list(graph_out, webnav::generate_scale_free(growth));
    }
  } catch (const webnav::IoError& e) {
    std::cerr << "webnav: " << e.what() << '\n';
    return kExitIo;
  } catch (const webnav::DataError& e) {
    std::cerr << "webnav: " << e.what() << '\n';
    return kExitNoData;
  } catch (const webnav::Error& e) {
    std::cerr << "webnav: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
