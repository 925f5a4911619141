// Acceptance checks at desk scale. Prints one PASS/FAIL line per criterion;
// exits non-zero when any selected criterion fails.
//
//   webnav_acceptance [--criterion N]...

#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "../support/oracles.hpp"
#include "webnav/errors.hpp"
#include "webnav/run.hpp"

using namespace webnav;
using acceptance::Verdict;

namespace {

// Desk scale.
constexpr std::size_t kNodes = 100000;
constexpr std::size_t kEdgesPerNode = 3;
constexpr double kGamma = 2.1;
constexpr std::size_t kAgents = 1000;
constexpr std::uint64_t kSessions = 1000;
constexpr std::uint64_t kSeed = 1;

// Cutoffs. The generator's minimum degree is m = 3 and the low-degree
// region bends away from the power law, so degree fits start at 50. PageRank
// traffic is proportional to degree, so its cutoff is the degree cutoff times
// the visits per unit of degree.
constexpr std::uint64_t kDegreeXmin = 50;
constexpr std::uint64_t kEmptyReferrerXmin = 5;
constexpr std::uint64_t kLinkXmin = 10;
constexpr std::uint64_t kSelfTestXmin = 5;

// Tolerances.
constexpr double kTrafficAlpha = 2.1, kTrafficTol = 0.2;
constexpr double kGeometricRatio = 0.85, kGeometricTol = 0.01;
constexpr std::uint64_t kGeometricMinCount = 100;  // click lengths entering the regression
constexpr double kEmptyReferrerAlpha = 1.75, kEmptyReferrerTol = 0.15;
constexpr double kMaxTrafficFactor = 100.0;
constexpr double kSessionSizeLo = 1.7, kSessionSizeHi = 2.3;
constexpr double kMinDecades = 2.0;
constexpr std::uint64_t kLongSession = 10;
constexpr double kEntropySigmas = 3.0;
constexpr double kDegreeAlpha = 2.1, kDegreeTol = 0.15;
constexpr double kSelfTestTol = 0.05;
constexpr std::size_t kSelfTestDraws = 100000;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SimConfig desk_config(Model model) {
  SimConfig c;
  c.model = model;
  c.growth = {kNodes, kEdgesPerNode, kGamma, kSeed};
  c.agents = kAgents;
  c.sessions = kSessions;
  c.seed = kSeed;
  c.workers = std::max(1u, std::thread::hardware_concurrency());
  return c;
}

const WebGraph& desk_graph() {
  static const WebGraph g = build_graph(desk_config(Model::pagerank));
  return g;
}

const Analysis& desk_run(Model model) {
  static std::map<Model, std::unique_ptr<Analysis>> cache;
  auto& slot = cache[model];
  if (!slot) {
    const SimConfig c = desk_config(model);
    const auto quotas = session_quotas(c);
    slot = std::make_unique<Analysis>(simulate(desk_graph(), c, quotas));
  }
  return *slot;
}

std::vector<std::uint64_t> degrees(const WebGraph& g) {
  std::vector<std::uint64_t> d(g.size());
  for (NodeId u = 0; u < g.size(); ++u) d[u] = g.out_degree(u);
  return d;
}

std::uint64_t pagerank_traffic_xmin() {
  const auto& pr = desk_run(Model::pagerank);
  const double per_degree = double(pr.tally.total_page_visits()) / double(desk_graph().edge_count());
  return static_cast<std::uint64_t>(std::llround(kDegreeXmin * per_degree));
}

std::uint64_t max_count(const std::vector<std::uint64_t>& v) { return *std::max_element(v.begin(), v.end()); }

double fraction_at_least(const std::vector<std::uint64_t>& v, std::uint64_t k) {
  return double(std::count_if(v.begin(), v.end(), [&](auto x) { return x >= k; })) / double(v.size());
}

double decades(const std::vector<std::uint64_t>& v) {
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (auto x : v)
    if (x > 0) lo = std::min(lo, x), hi = std::max(hi, x);
  return hi == 0 ? 0.0 : std::log10(double(hi) / double(lo));
}

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& v) {
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (v.size() - 1) / v.size())};
}

Verdict criterion1() {
  const auto& pr = desk_run(Model::pagerank);
  const auto s = descriptor_samples(pr);
  const auto xmin = pagerank_traffic_xmin();
  const auto fit = fit_power_law(s.page_traffic, xmin);

  std::vector<double> x, y;
  double total = 0;
  for (auto n : pr.click_lengths) total += n;
  for (std::size_t l = 0; l < pr.click_lengths.size(); ++l)
    if (pr.click_lengths[l] >= kGeometricMinCount) {
      x.push_back(double(l));
      y.push_back(std::log(pr.click_lengths[l] / total));
    }
  const double ratio = std::exp(oracle::slope(x, y));
  const bool ok = std::abs(fit.alpha - kTrafficAlpha) <= kTrafficTol && std::abs(ratio - kGeometricRatio) <= kGeometricTol;
  return {ok, fmt("page traffic alpha %.3f (xmin %llu, n_tail %zu, target %.1f +/- %.2f); click-length ratio %.4f "
                  "over %zu lengths (target %.2f +/- %.2f)",
                  fit.alpha, (unsigned long long)xmin, fit.n_tail, kTrafficAlpha, kTrafficTol, ratio, x.size(),
                  kGeometricRatio, kGeometricTol)};
}

Verdict criterion2() {
  const auto s = descriptor_samples(desk_run(Model::bookrank));
  const auto fit = fit_power_law(s.empty_referrer_traffic, kEmptyReferrerXmin);
  const bool ok = std::abs(fit.alpha - kEmptyReferrerAlpha) <= kEmptyReferrerTol;
  return {ok, fmt("empty-referrer alpha %.3f (xmin %llu, n_tail %zu, max %llu; target %.2f +/- %.2f)", fit.alpha,
                  (unsigned long long)kEmptyReferrerXmin, fit.n_tail,
                  (unsigned long long)max_count(s.empty_referrer_traffic), kEmptyReferrerAlpha, kEmptyReferrerTol)};
}

Verdict criterion3() {
  const auto pr = descriptor_samples(desk_run(Model::pagerank));
  const auto page_xmin = pagerank_traffic_xmin();
  const double pr_max = double(max_count(pr.page_traffic));
  const double pr_page = fit_power_law(pr.page_traffic, page_xmin).alpha;
  const double pr_link = fit_power_law(pr.link_traffic, kLinkXmin).alpha;
  bool ok = true;
  std::string detail = fmt("pagerank max %.0f, page alpha %.3f, link alpha %.3f", pr_max, pr_page, pr_link);
  for (Model m : {Model::bookrank, Model::abc}) {
    const auto s = descriptor_samples(desk_run(m));
    const double factor = double(max_count(s.page_traffic)) / pr_max;
    const double page = fit_power_law(s.page_traffic, page_xmin).alpha;
    const double link = fit_power_law(s.link_traffic, kLinkXmin).alpha;
    ok = ok && factor >= kMaxTrafficFactor && page < pr_page && link < pr_link;
    detail += fmt("; %s max factor %.2f (need >= %.0f), page alpha %.3f, link alpha %.3f",
                  std::string(to_string(m)).c_str(), factor, kMaxTrafficFactor, page, link);
  }
  return {ok, detail + fmt(" (page xmin %llu, link xmin %llu)", (unsigned long long)page_xmin,
                           (unsigned long long)kLinkXmin)};
}

Verdict criterion4() {
  const auto abc = descriptor_samples(desk_run(Model::abc));
  const auto br = descriptor_samples(desk_run(Model::bookrank));
  const double mean_size = mean(std::vector<double>(abc.session_size.begin(), abc.session_size.end()));
  const double size_decades = decades(abc.session_size);
  const double depth_decades = decades(abc.session_depth);
  const double p_abc = fraction_at_least(abc.session_size, kLongSession);
  const double p_br = fraction_at_least(br.session_size, kLongSession);
  const bool ok = mean_size >= kSessionSizeLo && mean_size <= kSessionSizeHi && size_decades >= kMinDecades &&
                  depth_decades >= kMinDecades && p_abc > p_br;
  return {ok, fmt("mean size %.3f (need [%.1f, %.1f]); size spans %.2f decades, depth spans %.2f (need >= %.0f); "
                  "P(size >= %llu) abc %.4f vs bookrank %.4f",
                  mean_size, kSessionSizeLo, kSessionSizeHi, size_decades, depth_decades, kMinDecades,
                  (unsigned long long)kLongSession, p_abc, p_br)};
}

Verdict criterion5() {
  const auto pr = mean_se(descriptor_samples(desk_run(Model::pagerank)).entropy);
  const auto abc = mean_se(descriptor_samples(desk_run(Model::abc)).entropy);
  const auto br = mean_se(descriptor_samples(desk_run(Model::bookrank)).entropy);
  auto gap = [](MeanSe a, MeanSe b) { return (a.mean - b.mean) / std::hypot(a.se, b.se); };
  const double g1 = gap(pr, abc), g2 = gap(abc, br);
  const bool ok = g1 > kEntropySigmas && g2 > kEntropySigmas;
  return {ok, fmt("mean entropy pagerank %.3f (se %.3f), abc %.3f (se %.3f), bookrank %.3f (se %.3f); "
                  "gaps pagerank-abc %.1f se, abc-bookrank %.1f se (need > %.0f)",
                  pr.mean, pr.se, abc.mean, abc.se, br.mean, br.se, g1, g2, kEntropySigmas)};
}

bool symmetric_without_dangling(const WebGraph& g) {
  for (NodeId u = 0; u < g.size(); ++u) {
    const auto nb = g.out_neighbors(u);
    if (nb.empty()) return false;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == u || (i > 0 && nb[i] == nb[i - 1])) return false;
      const auto back = g.out_neighbors(nb[i]);
      if (!std::binary_search(back.begin(), back.end(), u)) return false;
    }
  }
  return true;
}

Verdict criterion6() {
  const auto& g = desk_graph();
  const auto fit = fit_power_law(degrees(g), kDegreeXmin);
  bool invariants = symmetric_without_dangling(g);
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    invariants = invariants && symmetric_without_dangling(generate_scale_free({10000, 1 + seed % 4, 2.05 + 0.05 * (seed % 10), seed}));
  const bool ok = std::abs(fit.alpha - kDegreeAlpha) <= kDegreeTol && invariants;
  return {ok, fmt("degree alpha %.3f (xmin %llu, n_tail %zu; target %.1f +/- %.2f); symmetry and no-dangling %s "
                  "on the desk graph and 20 graphs of 10^4 nodes",
                  fit.alpha, (unsigned long long)kDegreeXmin, fit.n_tail, kDegreeAlpha, kDegreeTol,
                  invariants ? "hold" : "VIOLATED")};
}

Verdict criterion7() {
  const SimConfig c = desk_config(Model::abc);
  const auto quotas = session_quotas(c);
  std::stringstream log;
  const Analysis sim = simulate(desk_graph(), c, quotas, &log);
  ParseStats stats;
  const Analysis ing = ingest_log(log, {}, stats);

  auto label = [](const Analysis& a, NodeId id) { return a.page_labels.empty() ? std::to_string(id) : a.page_labels.at(id); };
  auto counts = [&](const Analysis& a, const TrafficTally::PageCounts& m) {
    std::map<std::string, Count> out;
    for (const auto& [k, v] : m) out[label(a, k)] = v;
    return out;
  };
  auto links = [&](const Analysis& a) {
    std::map<std::pair<std::string, std::string>, Count> out;
    for (const auto& [k, v] : a.tally.link_visits()) out[{label(a, link_source(k)), label(a, link_target(k))}] = v;
    return out;
  };
  auto multiset = [](const Analysis& a, bool depth) {
    std::vector<std::uint32_t> v;
    for (const auto& d : a.sessions) v.push_back(depth ? d.depth : d.size);
    std::sort(v.begin(), v.end());
    return v;
  };
  const bool sizes = multiset(sim, false) == multiset(ing, false);
  const bool depths = multiset(sim, true) == multiset(ing, true);
  const bool pages = counts(sim, sim.tally.page_visits()) == counts(ing, ing.tally.page_visits());
  const bool starts = counts(sim, sim.tally.session_starts()) == counts(ing, ing.tally.session_starts());
  const bool link_ok = links(sim) == links(ing);
  const bool ok = sizes && depths && pages && starts && link_ok && stats.malformed == 0;
  auto word = [](bool b) { return b ? "equal" : "DIFFER"; };
  return {ok, fmt("%zu sessions, %zu log records; sizes %s, depths %s, page %s, link %s, empty-referrer %s",
                  sim.sessions.size(), stats.records, word(sizes), word(depths), word(pages), word(link_ok),
                  word(starts))};
}

Verdict criterion8() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 8;
  for (double a : {1.75, 1.9, 2.1}) {
    std::mt19937_64 eng(seed++);
    oracle::Zeta zeta(a);
    std::vector<std::uint64_t> draws(kSelfTestDraws);
    for (auto& x : draws) x = zeta(eng);
    const auto fit = fit_power_law(draws, kSelfTestXmin);
    ok = ok && std::abs(fit.alpha - a) <= kSelfTestTol;
    detail += fmt("%s%.2f -> %.3f", detail.empty() ? "" : ", ", a, fit.alpha);
  }
  return {ok, detail + fmt(" (xmin %llu, %zu draws, tolerance %.2f)", (unsigned long long)kSelfTestXmin,
                           kSelfTestDraws, kSelfTestTol)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Manifest lines other than the ones that name the worker count, the output
// directory or the wall time.
std::string stable_manifest(const std::filesystem::path& p) {
  std::istringstream in(slurp(p));
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("workers", 0) != 0 && line.rfind("out ", 0) != 0 && line.rfind("out=", 0) != 0 &&
        line.rfind("wall_time_seconds", 0) != 0)
      out += line + '\n';
  return out;
}

Verdict criterion9() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "webnav_acceptance_determinism";
  fs::remove_all(root);
  std::size_t files = 0, mismatches = 0;
  for (Model m : {Model::pagerank, Model::bookrank, Model::abc}) {
    std::map<std::string, std::string> reference;
    for (std::size_t workers : {1u, 4u, 16u}) {
      SimConfig c = desk_config(m);
      c.agents = 200;
      c.sessions = 200;
      c.workers = workers;
      c.out = root / (std::string(to_string(m)) + std::to_string(workers));
      run_simulation(c);
      for (const auto& entry : fs::directory_iterator(c.out)) {
        const auto name = entry.path().filename().string();
        const auto bytes = name == "manifest.txt" ? stable_manifest(entry.path()) : slurp(entry.path());
        if (workers == 1) {
          reference[name] = bytes;
          ++files;
        } else if (reference[name] != bytes) {
          ++mismatches;
        }
      }
    }
  }
  fs::remove_all(root);
  return {mismatches == 0 && files > 0,
          fmt("%zu output files per model set compared across workers {1, 4, 16}; %zu mismatches", files, mismatches)};
}

const std::function<Verdict()> kCriteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                              criterion6, criterion7, criterion8, criterion9,
                                              acceptance::run_property_suites};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const int n = std::atoi(argv[++i]);
      if (n < 1 || n > 10) {
        std::fprintf(stderr, "criterion must be 1..10\n");
        return 2;
      }
      selected.insert(n);
    } else {
      std::fprintf(stderr, "usage: webnav_acceptance [--criterion N]...\n");
      return 2;
    }
  }
  if (selected.empty())
    for (int n = 1; n <= 10; ++n) selected.insert(n);

  int failures = 0;
  for (int n : selected) {
    Verdict v;
    try {
      v = kCriteria[n - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %2d %s: %s\n", n, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
