#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include "webnav/graph.hpp"
#include "webnav/random.hpp"

namespace webnav {

enum class Model { pagerank, bookrank, abc };

std::string_view to_string(Model model);
Model parse_model(std::string_view name);  // throws ConfigError

struct ModelParams {
  double teleport = 0.15;          // p_t
  double beta = 1.33;              // bookmark rank exponent
  double back = 0.5;               // p_b
  double initial_energy = 0.5;     // E0
  double forward_cost = 1.0;       // c_f
  double back_cost = 0.5;          // c_b
  double locality = 0.15;          // eta
  double initial_relevance = 1.0;  // Delta_0

  void validate() const;  // throws ConfigError
};

enum class StepKind : std::uint8_t { forward, back, teleport };

struct StepOutcome {
  StepKind kind;
  NodeId from;  // page before the step; equals `to` for the very first teleport
  NodeId to;

  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

struct BookmarkEntry {
  NodeId page;
  std::uint64_t visits;
};

/// Pages ranked by visit count, most visited first. Equal counts keep the
/// page visited first ahead. Rank lookups and updates are O(log L).
class BookmarkList {
 public:
  bool empty() const noexcept { return index_.empty(); }
  std::size_t size() const noexcept { return index_.size(); }

  // Adds one visit, inserting the page with a single visit if absent.
  void touch(NodeId page);

  std::uint64_t visits(NodeId page) const;  // 0 when absent
  BookmarkEntry at_rank(std::size_t rank) const;  // rank is 1-based
  std::vector<BookmarkEntry> entries() const;  // in rank order

  // Page of rank R drawn with probability R^-beta / sum_{R'<=L} R'^-beta.
  // Precondition: !empty().
  NodeId sample(double beta, Rng& rng) const;

 private:
  struct Key {
    std::uint64_t visits;
    std::uint64_t first_seen;
    NodeId page;
  };
  struct RankOrder {
    bool operator()(const Key& a, const Key& b) const {
      if (a.visits != b.visits) return a.visits > b.visits;
      return a.first_seen < b.first_seen;
    }
  };
  using RankTree = __gnu_pbds::tree<Key, __gnu_pbds::null_type, RankOrder, __gnu_pbds::rb_tree_tag,
                                    __gnu_pbds::tree_order_statistics_node_update>;

  RankTree ranks_;
  std::unordered_map<NodeId, std::pair<std::uint64_t, std::uint64_t>> index_;  // visits, first_seen
  std::uint64_t arrivals_ = 0;
};

struct AgentState {
  explicit AgentState(Rng stream) : rng(std::move(stream)) {}

  NodeId current = 0;
  bool started = false;
  BookmarkList bookmarks;
  double energy = 0.0;
  std::vector<NodeId> history;  // back-button stack, current session only
  // Relevance of each page seen in the current session; its keys are the
  // session cache.
  std::unordered_map<NodeId, double> session_delta;
  std::uint64_t sessions_done = 0;
  Rng rng;

  bool seen(NodeId page) const { return session_delta.contains(page); }
};

// First step of every agent: teleport to a uniformly random page. The page is
// bookmarked and, for ABC, the session energy and relevance are initialised.
StepOutcome begin_browsing(AgentState& state, const WebGraph& g, const ModelParams& params, Model model);

// ABC: with E <= 0 the agent teleports to a bookmark and the session state is
// reset. Otherwise, with probability p_b it clicks back (cost c_b; at the
// session root there is no previous page and it stays put), else it follows
// a uniform out-link (cost c_f, plus relevance gain on a first visit).
StepOutcome pagerank_step(AgentState& state, const WebGraph& g, const ModelParams& params);
StepOutcome bookrank_step(AgentState& state, const WebGraph& g, const ModelParams& params);
StepOutcome abc_step(AgentState& state, const WebGraph& g, const ModelParams& params);

StepOutcome step(AgentState& state, const WebGraph& g, const ModelParams& params, Model model);

}  // namespace webnav
