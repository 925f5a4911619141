#include "webnav/agents.hpp"

#include <cmath>
#include <string>

#include "webnav/errors.hpp"

namespace webnav {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::pagerank: return "pagerank";
    case Model::bookrank: return "bookrank";
    case Model::abc: return "abc";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "pagerank") return Model::pagerank;
  if (name == "bookrank") return Model::bookrank;
  if (name == "abc") return Model::abc;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(teleport >= 0.0 && teleport <= 1.0, "teleport probability must lie in [0, 1]");
  require(back >= 0.0 && back < 1.0, "back probability must lie in [0, 1)");
  require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
  require(forward_cost >= 0.0 && back_cost >= 0.0, "costs must be non-negative");
  require(std::isfinite(initial_energy), "initial energy must be finite");
  require(locality >= 0.0 && locality < 1.0, "eta must lie in [0, 1)");
  require(initial_relevance > 0.0 && std::isfinite(initial_relevance), "delta0 must be positive");
}

void BookmarkList::touch(NodeId page) {
  auto it = index_.find(page);
  if (it == index_.end()) {
    index_.emplace(page, std::pair{std::uint64_t{1}, arrivals_});
    ranks_.insert(Key{1, arrivals_, page});
    ++arrivals_;
    return;
  }
  auto& [visits, first_seen] = it->second;
  ranks_.erase(Key{visits, first_seen, page});
  ++visits;
  ranks_.insert(Key{visits, first_seen, page});
}

std::uint64_t BookmarkList::visits(NodeId page) const {
  auto it = index_.find(page);
  return it == index_.end() ? 0 : it->second.first;
}

BookmarkEntry BookmarkList::at_rank(std::size_t rank) const {
  if (rank < 1 || rank > size()) throw std::out_of_range("bookmark rank out of range");
  const Key& key = *ranks_.find_by_order(rank - 1);
  return {key.page, key.visits};
}

std::vector<BookmarkEntry> BookmarkList::entries() const {
  std::vector<BookmarkEntry> out;
  out.reserve(size());
  for (const Key& key : ranks_) out.push_back({key.page, key.visits});
  return out;
}

NodeId BookmarkList::sample(double beta, Rng& rng) const {
  if (empty()) throw std::logic_error("sampling from an empty bookmark list");
  const ZipfSampler rank(size(), beta);
  return ranks_.find_by_order(rank(rng) - 1)->page;
}

namespace {

NodeId random_neighbor(const WebGraph& g, NodeId u, Rng& rng) {
  const auto nb = g.out_neighbors(u);
  return nb[uniform_index(rng, nb.size())];
}

}  // namespace

StepOutcome begin_browsing(AgentState& state, const WebGraph& g, const ModelParams& params, Model model) {
  const auto root = static_cast<NodeId>(uniform_index(state.rng, g.size()));
  state.current = root;
  state.started = true;
  if (model != Model::pagerank) state.bookmarks.touch(root);
  if (model == Model::abc) {
    state.energy = params.initial_energy;
    state.history.clear();
    state.session_delta.clear();
    state.session_delta.emplace(root, params.initial_relevance);
  }
  return {StepKind::teleport, root, root};
}

StepOutcome pagerank_step(AgentState& state, const WebGraph& g, const ModelParams& params) {
  const NodeId from = state.current;
  if (uniform01(state.rng) < params.teleport) {
    state.current = static_cast<NodeId>(uniform_index(state.rng, g.size()));
    return {StepKind::teleport, from, state.current};
  }
  state.current = random_neighbor(g, from, state.rng);
  return {StepKind::forward, from, state.current};
}

StepOutcome bookrank_step(AgentState& state, const WebGraph& g, const ModelParams& params) {
  const NodeId from = state.current;
  if (uniform01(state.rng) < params.teleport) {
    state.current = state.bookmarks.sample(params.beta, state.rng);
    state.bookmarks.touch(state.current);
    return {StepKind::teleport, from, state.current};
  }
  state.current = random_neighbor(g, from, state.rng);
  state.bookmarks.touch(state.current);
  return {StepKind::forward, from, state.current};
}

StepOutcome abc_step(AgentState& state, const WebGraph& g, const ModelParams& params) {
  const NodeId from = state.current;
  if (state.energy <= 0.0) {
    const NodeId root = state.bookmarks.sample(params.beta, state.rng);
    state.bookmarks.touch(root);
    state.energy = params.initial_energy;
    state.history.clear();
    state.session_delta.clear();
    state.session_delta.emplace(root, params.initial_relevance);
    state.current = root;
    return {StepKind::teleport, from, root};
  }

  // At the session root there is no previous page: the back click is paid
  // for but the agent stays put.
  if (uniform01(state.rng) < params.back) {
    if (!state.history.empty()) {
      state.current = state.history.back();
      state.history.pop_back();
    }
    state.energy -= params.back_cost;
    return {StepKind::back, from, state.current};
  }

  const NodeId to = random_neighbor(g, from, state.rng);
  state.history.push_back(from);
  if (!state.seen(to)) {
    const double epsilon = params.locality * (2.0 * uniform01(state.rng) - 1.0);
    const double relevance = state.session_delta.at(from) * (1.0 + epsilon);
    state.session_delta.emplace(to, relevance);
    state.energy += relevance - params.forward_cost;
  } else {
    state.energy -= params.forward_cost;
  }
  state.bookmarks.touch(to);
  state.current = to;
  return {StepKind::forward, from, to};
}

StepOutcome step(AgentState& state, const WebGraph& g, const ModelParams& params, Model model) {
  switch (model) {
    case Model::pagerank: return pagerank_step(state, g, params);
    case Model::bookrank: return bookrank_step(state, g, params);
    case Model::abc: return abc_step(state, g, params);
  }
  throw std::logic_error("unknown model");
}

}  // namespace webnav
