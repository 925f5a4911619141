// Randomized invariant suites. Each property draws its own cases from a
// fixed-seed generator and reports the first counterexample it meets.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "webnav/errors.hpp"
#include "webnav/ingest.hpp"
#include "webnav/metrics.hpp"
#include "webnav/session.hpp"

namespace acceptance {

using namespace webnav;

namespace {

struct Gen {
  Rng rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::uint64_t below(std::uint64_t n) { return uniform_index(rng, n); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return uniform01(rng); }
  bool coin(double p = 0.5) { return unit() < p; }
};

// Small random symmetric graph without dangling nodes.
WebGraph random_graph(Gen& gen) {
  const std::size_t n = gen.between(2, 40);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 1; u < n; ++u) edges.emplace_back(u, static_cast<NodeId>(gen.below(u)));
  const std::size_t extra = gen.below(2 * n);
  for (std::size_t i = 0; i < extra; ++i)
    edges.emplace_back(static_cast<NodeId>(gen.below(n)), static_cast<NodeId>(gen.below(n)));
  return WebGraph::from_edges(n, edges, true);
}

ModelParams random_params(Gen& gen) {
  ModelParams p;
  p.teleport = gen.unit() * 0.5;
  p.beta = 0.5 + gen.unit() * 2.0;
  p.back = gen.unit() * 0.9;
  p.initial_energy = 0.1 + gen.unit() * 3.0;
  p.forward_cost = 0.1 + gen.unit() * 1.5;
  p.back_cost = 0.05 + gen.unit() * 1.0;
  p.locality = gen.unit() * 0.95;
  p.initial_relevance = 0.1 + gen.unit() * 2.0;
  return p;
}

struct Property {
  const char* name;
  std::function<std::string(Gen&)> check;  // empty string = holds
};

std::string bookmark_order(Gen& gen) {
  BookmarkList list;
  std::map<NodeId, std::pair<std::uint64_t, std::uint64_t>> naive;  // visits, arrival
  std::uint64_t arrivals = 0;
  const std::size_t touches = gen.between(1, 200);
  const std::uint64_t universe = gen.between(1, 30);
  for (std::size_t i = 0; i < touches; ++i) {
    const auto page = static_cast<NodeId>(gen.below(universe));
    list.touch(page);
    auto [it, inserted] = naive.try_emplace(page, 0, arrivals);
    arrivals += inserted;
    ++it->second.first;
  }
  const auto entries = list.entries();
  if (entries.size() != naive.size()) return "list size differs from distinct pages";
  std::vector<std::pair<std::pair<std::int64_t, std::uint64_t>, NodeId>> expect;
  for (const auto& [page, va] : naive) expect.push_back({{-std::int64_t(va.first), va.second}, page});
  std::sort(expect.begin(), expect.end());
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].page != expect[r].second) return "rank order differs from visits-then-arrival order";
    if (r > 0 && entries[r].visits > entries[r - 1].visits) return "visits increase along ranks";
    if (list.at_rank(r + 1).page != entries[r].page) return "at_rank disagrees with entries";
  }
  const NodeId drawn = list.sample(0.5 + gen.unit() * 2, gen.rng);
  if (!naive.contains(drawn)) return "sample returned a page not in the list";
  return {};
}

// Runs one ABC agent for a while and checks the energy trace step by step.
std::string abc_energy(Gen& gen) {
  const WebGraph g = random_graph(gen);
  const ModelParams p = random_params(gen);
  AgentState s(Rng(gen.rng()));
  begin_browsing(s, g, p, Model::abc);
  const std::size_t steps = gen.between(1, 60);
  for (std::size_t i = 0; i < steps; ++i) {
    const double before = s.energy;
    const bool exhausted = before <= 0.0;
    const std::size_t known = s.session_delta.size();
    const auto out = abc_step(s, g, p);
    if ((out.kind == StepKind::teleport) != exhausted) return "teleport does not coincide with exhausted energy";
    if (out.kind == StepKind::teleport) {
      if (s.energy != p.initial_energy || !s.history.empty() || s.session_delta.size() != 1)
        return "teleport does not reset the session";
    } else if (out.kind == StepKind::back) {
      if (!(s.energy < before)) return "back step did not lower energy";
    } else if (s.session_delta.size() == known) {
      if (!(s.energy < before)) return "forward to a seen page did not lower energy";
    }
    for (const auto& [page, delta] : s.session_delta)
      if (!(delta > 0.0) || !std::isfinite(delta)) return "relevance left (0, inf)";
    if (!std::isfinite(s.energy)) return "energy not finite";
    for (NodeId h : s.history)
      if (!s.seen(h)) return "history holds a page outside the session";
    if (!s.seen(s.current)) return "current page not in the session cache";
  }
  return {};
}

struct Recorded {
  TrafficTally tally;
  std::vector<SessionDescriptor> sessions;
  std::vector<std::vector<StepOutcome>> outcomes;  // per session
};

Recorded record_random_walk(Gen& gen) {
  const WebGraph g = random_graph(gen);
  const ModelParams p = random_params(gen);
  const Model model = static_cast<Model>(gen.below(3));
  Recorded r;
  SessionRecorder rec(7, r.tally, [&](const SessionDescriptor& d) { r.sessions.push_back(d); });
  AgentState s(Rng(gen.rng()));
  auto apply = [&](const StepOutcome& o) {
    if (o.kind == StepKind::teleport) r.outcomes.emplace_back();
    r.outcomes.back().push_back(o);
    rec.record(o);
  };
  apply(begin_browsing(s, g, p, model));
  const std::size_t steps = gen.between(0, 80);
  for (std::size_t i = 0; i < steps; ++i) apply(step(s, g, p, model));
  rec.finish();
  return r;
}

std::string cache_single_count(Gen& gen) {
  const Recorded r = record_random_walk(gen);
  // Replay each session: a page or link may be tallied at most once per session.
  std::map<NodeId, Count> pages;
  std::map<std::uint64_t, Count> links;
  for (const auto& session : r.outcomes) {
    std::set<NodeId> seen;
    for (const auto& o : session) {
      if (o.kind == StepKind::back) continue;
      if (seen.insert(o.to).second) {
        ++pages[o.to];
        if (o.kind == StepKind::forward) ++links[link_key(o.from, o.to)];
      }
    }
  }
  for (const auto& [page, n] : r.tally.page_visits())
    if (pages[page] != n) return "page count differs from first-visit replay";
  for (const auto& [link, n] : r.tally.link_visits())
    if (links[link] != n) return "link count differs from first-visit replay";
  if (r.tally.page_visits().size() != pages.size() || r.tally.link_visits().size() != links.size())
    return "tally keys differ from replay";
  return {};
}

std::string tree_relations(Gen& gen) {
  SessionTree t(static_cast<NodeId>(gen.below(50)));
  std::vector<NodeId> nodes{t.root()};
  const std::size_t adds = gen.between(0, 60);
  for (std::size_t i = 0; i < adds; ++i) {
    const NodeId parent = nodes[gen.below(nodes.size())];
    const auto child = static_cast<NodeId>(gen.below(80));
    const bool had = t.contains(child);
    if (t.add_child(parent, child) == had) return "add_child result disagrees with membership";
    if (!had) nodes.push_back(child);
  }
  std::uint32_t deepest = 0;
  std::size_t with_parent = 0;
  for (NodeId v : t.pages()) {
    deepest = std::max(deepest, t.depth(v));
    if (const auto par = t.parent(v)) {
      ++with_parent;
      if (t.depth(v) != t.depth(*par) + 1) return "depth(child) != depth(parent) + 1";
    } else if (v != t.root() || t.depth(v) != 0) {
      return "parentless node other than the root";
    }
  }
  if (t.size() != with_parent + 1) return "size != parents + 1";
  if (t.max_depth() != deepest || t.max_depth() + 1 > t.size()) return "max_depth inconsistent";
  return {};
}

std::string tally_conservation(Gen& gen) {
  const Recorded r = record_random_walk(gen);
  Count sizes = 0, links = 0;
  for (const auto& d : r.sessions) sizes += d.size, links += d.size - 1;
  if (r.tally.total_page_visits() != sizes) return "page visits != sum of session sizes";
  if (r.tally.total_link_visits() != links) return "link visits != sum of (size - 1)";
  if (r.tally.total_sessions() != r.sessions.size()) return "session starts != sessions";
  Count user = 0;
  for (const auto& [page, n] : r.tally.user_visits().at(7)) user += n;
  if (user != sizes) return "user visits != page visits";
  for (const auto& [k, n] : r.tally.page_visits())
    if (n == 0) return "zero count stored";
  return {};
}

std::string entropy_bounds(Gen& gen) {
  const std::size_t k = gen.between(1, 50);
  std::vector<Count> counts(k);
  const bool uniform = gen.coin(0.2);
  const Count level = gen.between(1, 1000);
  for (auto& c : counts) c = uniform ? level : gen.between(1, 1000);
  const double s = shannon_entropy_bits(counts);
  const double cap = std::log2(double(k));
  if (s < -1e-12 || s > cap + 1e-9) return "entropy outside [0, log2 N]";
  if (uniform && std::abs(s - cap) > 1e-9) return "uniform counts miss log2 N";
  if (k == 1 && s != 0.0) return "single page has non-zero entropy";
  std::vector<Count> shuffled = counts;
  std::shuffle(shuffled.begin(), shuffled.end(), gen.rng);
  if (shannon_entropy_bits(shuffled) != s) return "entropy depends on order";
  return {};
}

TrafficTally random_tally(Gen& gen) {
  TrafficTally t;
  const std::size_t n = gen.below(30);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<NodeId>(gen.below(10)), b = static_cast<NodeId>(gen.below(10));
    const Count c = gen.between(1, 5);
    switch (gen.below(4)) {
      case 0: t.add_page(a, c); break;
      case 1: t.add_link(a, b, c); break;
      case 2: t.add_session_start(a, c); break;
      default: t.add_user_visit(static_cast<UserId>(gen.below(3)), a, c);
    }
  }
  return t;
}

std::string merge_laws(Gen& gen) {
  const TrafficTally a = random_tally(gen), b = random_tally(gen), c = random_tally(gen);
  TrafficTally ab = a;
  ab.merge(b);
  TrafficTally ba = b;
  ba.merge(a);
  if (!(ab == ba)) return "merge is not commutative";
  TrafficTally left = ab;
  left.merge(c);
  TrafficTally bc = b;
  bc.merge(c);
  TrafficTally right = a;
  right.merge(bc);
  if (!(left == right)) return "merge is not associative";
  if (left.total_page_visits() != a.total_page_visits() + b.total_page_visits() + c.total_page_visits())
    return "merge loses page visits";
  return {};
}

std::string histogram_conservation(Gen& gen) {
  std::vector<std::uint64_t> v(gen.between(1, 200));
  for (auto& x : v) x = gen.coin(0.3) ? gen.between(1, 1000000) : gen.between(1, 20);
  const double ratio = 1.05 + gen.unit() * 3.0;
  const auto h = log_histogram(v, ratio);
  std::uint64_t total = 0;
  double mass = 0;
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    total += h.bins[i].count;
    mass += h.bins[i].density * (h.bins[i].hi - h.bins[i].lo);
    if (i > 0 && !(h.bins[i].lo > h.bins[i - 1].lo)) return "bin boundaries not increasing";
  }
  if (total != v.size() || h.total != v.size()) return "histogram count != samples";
  if (std::abs(mass - 1.0) > 1e-9) return "density does not integrate to 1";
  const auto c = ccdf(v);
  if (c.front().probability != 1.0) return "ccdf does not start at 1";
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!(c[i].value > c[i - 1].value) || c[i].probability > c[i - 1].probability) return "ccdf not monotone";
  return {};
}

std::string graph_symmetry(Gen& gen) {
  const WebGraph g = random_graph(gen);
  for (NodeId u = 0; u < g.size(); ++u) {
    const auto nb = g.out_neighbors(u);
    if (nb.empty()) return "dangling node";
    for (NodeId v : nb) {
      const auto back = g.out_neighbors(v);
      if (v == u || !std::binary_search(back.begin(), back.end(), u)) return "asymmetric or self edge";
    }
  }
  return {};
}

struct LogCase {
  std::vector<LogRecord> records;
};

// Random multi-user log with monotone time per user.
LogCase random_log(Gen& gen) {
  LogCase c;
  const std::size_t users = gen.between(1, 4);
  for (std::size_t u = 0; u < users; ++u) {
    std::int64_t t = gen.below(100);
    std::vector<std::string> seen;
    const std::size_t n = gen.between(1, 25);
    for (std::size_t i = 0; i < n; ++i) {
      t += gen.coin(0.1) ? gen.between(1000, 4000) : gen.between(0, 30);
      const std::string target = "p" + std::to_string(gen.below(12));
      std::string ref;
      if (!seen.empty() && gen.coin(0.75)) ref = seen[gen.below(seen.size())];
      else if (gen.coin(0.1)) ref = "elsewhere";
      c.records.push_back({t, "u" + std::to_string(u), ref, target});
      seen.push_back(target);
    }
  }
  return c;
}

std::map<std::string, std::vector<SessionDescriptor>> sessionize(const std::vector<LogRecord>& records,
                                                                 TrafficTally& tally) {
  std::vector<SessionDescriptor> out;
  Sessionizer s(tally, [&](const SessionDescriptor& d) { out.push_back(d); });
  for (const auto& r : records) s.add(r);
  s.finish();
  std::map<std::string, std::vector<SessionDescriptor>> by_user;
  for (auto d : out) {
    const std::string user = s.users().label(d.user);
    d.user = 0;
    d.root = 0;  // page ids depend on first appearance across users
    by_user[user].push_back(d);
  }
  return by_user;
}

std::string sessionize_interleaving(Gen& gen) {
  LogCase c = random_log(gen);
  // Grouped by user versus randomly interleaved while keeping per-user order.
  std::map<std::string, std::vector<LogRecord>> per_user;
  for (const auto& r : c.records) per_user[r.user].push_back(r);
  std::vector<LogRecord> mixed;
  std::map<std::string, std::size_t> next;
  while (mixed.size() < c.records.size()) {
    auto it = per_user.begin();
    std::advance(it, gen.below(per_user.size()));
    if (next[it->first] < it->second.size()) mixed.push_back(it->second[next[it->first]++]);
  }
  TrafficTally ta, tb;
  const auto a = sessionize(c.records, ta);
  const auto b = sessionize(mixed, tb);
  if (a != b) return "sessions depend on user interleaving";

  Count sizes = 0;
  std::size_t sessions = 0;
  for (const auto& [user, list] : a)
    for (const auto& d : list) sizes += d.size, ++sessions;
  if (ta.total_page_visits() != sizes) return "page visits != session sizes";
  if (ta.total_sessions() != sessions) return "session starts != sessions";
  if (sizes > c.records.size() || sessions == 0) return "records not assigned to sessions";
  return {};
}

}  // namespace

Verdict run_property_suites() {
  const Property properties[] = {
      {"bookmark ordering", bookmark_order},
      {"abc energy trace and relevance positivity", abc_energy},
      {"cache single-count rule", cache_single_count},
      {"session tree size/depth relations", tree_relations},
      {"tally conservation", tally_conservation},
      {"entropy bounds", entropy_bounds},
      {"tally merge laws", merge_laws},
      {"histogram and ccdf consistency", histogram_conservation},
      {"graph symmetry and no dangling nodes", graph_symmetry},
      {"sessionize interleaving independence and conservation", sessionize_interleaving},
  };
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1000;
  for (const auto& prop : properties) {
    Gen gen(seed++);
    std::string failure;
    int cases = 0;
    for (; cases < kPropertyCases && failure.empty(); ++cases) {
      try {
        failure = prop.check(gen);
      } catch (const std::exception& e) {
        failure = std::string("threw ") + e.what();
      }
    }
    if (!failure.empty()) {
      ok = false;
      detail += std::string(detail.empty() ? "" : "; ") + prop.name + " failed at case " + std::to_string(cases) +
                ": " + failure;
    }
  }
  if (ok) detail = std::to_string(std::size(properties)) + " properties x " + std::to_string(kPropertyCases) + " cases hold";
  return {ok, detail};
}

}  // namespace acceptance
