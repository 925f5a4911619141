#include "webnav/session.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "webnav/errors.hpp"

namespace webnav {

SessionTree::SessionTree(NodeId root) : root_(root) { nodes_.emplace(root, Node{root, 0}); }

std::optional<NodeId> SessionTree::parent(NodeId page) const {
  const auto& node = nodes_.at(page);
  if (page == root_) return std::nullopt;
  return node.parent;
}

bool SessionTree::add_child(NodeId parent, NodeId child) {
  if (nodes_.contains(child)) return false;
  const std::uint32_t depth = nodes_.at(parent).depth + 1;
  nodes_.emplace(child, Node{parent, depth});
  max_depth_ = std::max(max_depth_, depth);
  return true;
}

std::vector<NodeId> SessionTree::pages() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [page, node] : nodes_) out.push_back(page);
  std::sort(out.begin(), out.end());
  return out;
}

SessionDescriptor close_session(const SessionTree& tree, UserId user, std::uint32_t session_index) {
  return {user, session_index, tree.root(), static_cast<std::uint32_t>(tree.size()), tree.max_depth()};
}

namespace {

template <typename Map>
void add_into(Map& into, const Map& from) {
  for (const auto& [key, n] : from) into[key] += n;
}

template <typename Map>
Count sum_values(const Map& m) {
  Count total = 0;
  for (const auto& [key, n] : m) total += n;
  return total;
}

}  // namespace

void TrafficTally::merge(const TrafficTally& other) {
  add_into(page_visits_, other.page_visits_);
  add_into(link_visits_, other.link_visits_);
  add_into(session_starts_, other.session_starts_);
  for (const auto& [user, pages] : other.user_visits_) add_into(user_visits_[user], pages);
}

Count TrafficTally::total_sessions() const { return sum_values(session_starts_); }
Count TrafficTally::total_page_visits() const { return sum_values(page_visits_); }
Count TrafficTally::total_link_visits() const { return sum_values(link_visits_); }

double shannon_entropy_bits(std::span<const Count> counts) {
  std::vector<Count> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(std::accumulate(sorted.begin(), sorted.end(), Count{0}));
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (Count c : sorted) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double user_entropy(const TrafficTally& tally, UserId user) {
  const auto it = tally.user_visits().find(user);
  if (it == tally.user_visits().end() || it->second.empty())
    throw std::out_of_range("no visits recorded for user " + std::to_string(user));
  std::vector<Count> counts;
  counts.reserve(it->second.size());
  for (const auto& [page, n] : it->second) counts.push_back(n);
  return shannon_entropy_bits(counts);
}

SessionRecorder::SessionRecorder(UserId user, TrafficTally& tally, Sink sink)
    : user_(user), tally_(&tally), sink_(std::move(sink)) {}

RecordEffect SessionRecorder::record(const StepOutcome& outcome) {
  if (outcome.kind == StepKind::teleport) {
    finish();
    tree_.emplace(outcome.to);
    ++sessions_;
    tally_->add_session_start(outcome.to);
    tally_->add_page(outcome.to);
    tally_->add_user_visit(user_, outcome.to);
    return RecordEffect::session_start;
  }
  if (!tree_) throw ProtocolError("step recorded before the first teleport");
  if (outcome.kind == StepKind::back) return RecordEffect::cached;
  if (!tree_->add_child(outcome.from, outcome.to)) return RecordEffect::cached;
  tally_->add_page(outcome.to);
  tally_->add_link(outcome.from, outcome.to);
  tally_->add_user_visit(user_, outcome.to);
  return RecordEffect::new_page;
}

void SessionRecorder::finish() {
  if (!tree_) return;
  if (sink_) sink_(close_session(*tree_, user_, sessions_ - 1));
  tree_.reset();
}

}  // namespace webnav
