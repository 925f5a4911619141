#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "webnav/agents.hpp"
#include "webnav/graph.hpp"

namespace webnav {

using UserId = std::uint32_t;
using Count = std::uint64_t;

/// Rooted tree of first visits within one logical session.
class SessionTree {
 public:
  explicit SessionTree(NodeId root);

  NodeId root() const noexcept { return root_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::uint32_t max_depth() const noexcept { return max_depth_; }

  bool contains(NodeId page) const { return nodes_.contains(page); }
  std::uint32_t depth(NodeId page) const { return nodes_.at(page).depth; }
  std::optional<NodeId> parent(NodeId page) const;

  // Adds child under parent unless it is already in the tree. Returns
  // whether a node was added. Throws std::out_of_range for an unknown parent.
  bool add_child(NodeId parent, NodeId child);

  std::vector<NodeId> pages() const;

 private:
  struct Node {
    NodeId parent;
    std::uint32_t depth;
  };
  NodeId root_;
  std::unordered_map<NodeId, Node> nodes_;
  std::uint32_t max_depth_ = 0;
};

struct SessionDescriptor {
  UserId user;
  std::uint32_t session_index;
  NodeId root;
  std::uint32_t size;
  std::uint32_t depth;

  friend bool operator==(const SessionDescriptor&, const SessionDescriptor&) = default;
};

SessionDescriptor close_session(const SessionTree& tree, UserId user, std::uint32_t session_index);

inline std::uint64_t link_key(NodeId from, NodeId to) {
  return (static_cast<std::uint64_t>(from) << 32) | to;
}
inline NodeId link_source(std::uint64_t key) { return static_cast<NodeId>(key >> 32); }
inline NodeId link_target(std::uint64_t key) { return static_cast<NodeId>(key); }

/// Page, link, session-start and per-user visit counts. Tallies merge by
/// key-wise addition, so merging is associative and commutative.
class TrafficTally {
 public:
  using PageCounts = std::unordered_map<NodeId, Count>;

  void add_page(NodeId page, Count n = 1) { page_visits_[page] += n; }
  void add_link(NodeId from, NodeId to, Count n = 1) { link_visits_[link_key(from, to)] += n; }
  void add_session_start(NodeId page, Count n = 1) { session_starts_[page] += n; }
  void add_user_visit(UserId user, NodeId page, Count n = 1) { user_visits_[user][page] += n; }

  void merge(const TrafficTally& other);

  const PageCounts& page_visits() const noexcept { return page_visits_; }
  const std::unordered_map<std::uint64_t, Count>& link_visits() const noexcept { return link_visits_; }
  const PageCounts& session_starts() const noexcept { return session_starts_; }
  const std::unordered_map<UserId, PageCounts>& user_visits() const noexcept { return user_visits_; }

  Count total_sessions() const;
  Count total_page_visits() const;
  Count total_link_visits() const;

  friend bool operator==(const TrafficTally&, const TrafficTally&) = default;

 private:
  PageCounts page_visits_;
  std::unordered_map<std::uint64_t, Count> link_visits_;
  PageCounts session_starts_;
  std::unordered_map<UserId, PageCounts> user_visits_;
};

// Shannon entropy in bits of the distribution proportional to counts. The
// sum runs over sorted counts, so the result does not depend on input order.
double shannon_entropy_bits(std::span<const Count> counts);

// Entropy of one user's visit vector. Throws std::out_of_range for a user
// with no recorded visits.
double user_entropy(const TrafficTally& tally, UserId user);

enum class RecordEffect : std::uint8_t { session_start, new_page, cached };

/// Applies one user's step outcomes to a session tree and a tally. Only the
/// first visit to a page within a session is counted.
class SessionRecorder {
 public:
  using Sink = std::function<void(const SessionDescriptor&)>;

  SessionRecorder(UserId user, TrafficTally& tally, Sink sink);

  // Throws ProtocolError for a forward or back step before any teleport.
  RecordEffect record(const StepOutcome& outcome);

  // Closes the open session, if any, and emits its descriptor.
  void finish();

  const std::optional<SessionTree>& tree() const noexcept { return tree_; }
  std::uint32_t sessions_started() const noexcept { return sessions_; }

 private:
  UserId user_;
  TrafficTally* tally_;
  Sink sink_;
  std::optional<SessionTree> tree_;
  std::uint32_t sessions_ = 0;
};

}  // namespace webnav
