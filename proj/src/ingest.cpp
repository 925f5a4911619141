#include "webnav/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "webnav/errors.hpp"

namespace webnav {

std::string strip_query(std::string_view url) {
  const auto cut = url.find_first_of("?#");
  return std::string(url.substr(0, cut));
}

std::string host_of(std::string_view url) {
  if (const auto scheme = url.find("://"); scheme != std::string_view::npos) url.remove_prefix(scheme + 3);
  return std::string(url.substr(0, url.find_first_of("/?#")));
}

bool has_page_extension(std::string_view url, const std::vector<std::string>& extensions) {
  if (extensions.empty()) return true;
  std::string_view path = url.substr(0, url.find_first_of("?#"));
  if (const auto scheme = path.find("://"); scheme != std::string_view::npos) {
    path.remove_prefix(scheme + 3);
    const auto slash = path.find('/');
    path = slash == std::string_view::npos ? std::string_view{} : path.substr(slash);
  }
  const std::string_view segment = path.substr(path.rfind('/') == std::string_view::npos ? 0 : path.rfind('/') + 1);
  const auto dot = segment.rfind('.');
  if (dot == std::string_view::npos) return true;
  std::string ext(segment.substr(dot + 1));
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const auto& allowed : extensions) {
    std::string a = allowed;
    std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return std::tolower(c); });
    if (!a.empty() && a.front() == '.') a.erase(0, 1);
    if (a == ext) return true;
  }
  return false;
}

std::optional<LogRecord> parse_log_line(std::string_view line, const ParseOptions& options, ParseStats& stats) {
  ++stats.lines;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string_view fields[4];
  std::size_t count = 0;
  for (;;) {
    const auto tab = line.find('\t');
    if (count == 4) {
      ++count;
      break;
    }
    fields[count++] = line.substr(0, tab);
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  if (count != 4 || fields[1].empty() || fields[2].empty() || fields[3].empty() || fields[3] == "-") {
    ++stats.malformed;
    return std::nullopt;
  }
  LogRecord rec;
  const auto ts = fields[0];
  auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), rec.timestamp);
  if (ec != std::errc{} || ptr != ts.data() + ts.size() || rec.timestamp < 0) {
    ++stats.malformed;
    return std::nullopt;
  }
  rec.user = std::string(fields[1]);
  if (fields[2] != "-") rec.referrer = options.strip_query ? strip_query(fields[2]) : std::string(fields[2]);
  rec.target = options.strip_query ? strip_query(fields[3]) : std::string(fields[3]);
  if (!has_page_extension(rec.target, options.page_extensions)) {
    ++stats.filtered;
    return std::nullopt;
  }
  ++stats.records;
  return rec;
}

void parse_log(std::istream& in, const ParseOptions& options, ParseStats& stats,
               const std::function<void(LogRecord&&)>& on_record) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (auto rec = parse_log_line(line, options, stats)) on_record(std::move(*rec));
  }
}

void write_log_record(std::ostream& out, const LogRecord& record) {
  out << record.timestamp << '\t' << record.user << '\t' << (record.referrer.empty() ? "-" : record.referrer)
      << '\t' << record.target << '\n';
}

std::uint32_t Interner::intern(std::string_view key) {
  auto it = ids_.find(std::string(key));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.emplace_back(key);
  ids_.emplace(labels_.back(), id);
  return id;
}

std::optional<std::uint32_t> Interner::find(std::string_view key) const {
  auto it = ids_.find(std::string(key));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Sessionizer::Sessionizer(TrafficTally& tally, Sink sink, SessionizeOptions options)
    : tally_(&tally), sink_(std::move(sink)), options_(options) {
  if (options_.timeout < 0) throw ConfigError("session timeout must be non-negative");
}

void Sessionizer::close(UserId user, UserState& state, std::map<std::uint32_t, LiveSession>::iterator it) {
  const std::uint32_t index = it->first;
  for (NodeId page : it->second.tree.pages()) {
    auto rec = state.recency.find(page);
    if (rec == state.recency.end()) continue;
    auto& entries = rec->second;
    std::erase_if(entries, [index](const Recency& r) { return r.session == index; });
    if (entries.empty()) state.recency.erase(rec);
  }
  if (sink_) sink_(close_session(it->second.tree, user, index));
  state.live.erase(it);
  --live_count_;
}

void Sessionizer::expire(UserId user, UserState& state, std::int64_t now) {
  for (auto it = state.live.begin(); it != state.live.end();) {
    auto next = std::next(it);
    if (now - it->second.last_activity > options_.timeout) close(user, state, it);
    it = next;
  }
}

void Sessionizer::touch(UserState& state, std::uint32_t session, NodeId page, std::int64_t time) {
  auto& entries = state.recency[page];
  for (auto& r : entries) {
    if (r.session == session) {
      r.time = std::max(r.time, time);
      return;
    }
  }
  entries.push_back({session, time});
}

void Sessionizer::count_visit(UserId user, NodeId page, std::string_view url) {
  tally_->add_page(page);
  tally_->add_user_visit(user, options_.entropy_by_host ? hosts_.intern(host_of(url)) : page);
}

void Sessionizer::add(const LogRecord& record) {
  const UserId user = users_.intern(record.user);
  UserState& state = states_[user];
  const std::int64_t now = record.timestamp;
  expire(user, state, now);

  const NodeId target = pages_.intern(record.target);

  std::optional<std::uint32_t> session;
  NodeId referrer = 0;
  if (!record.referrer.empty()) {
    if (auto ref = pages_.find(record.referrer)) {
      referrer = *ref;
      if (auto rec = state.recency.find(referrer); rec != state.recency.end()) {
        const Recency* best = nullptr;
        for (const auto& r : rec->second) {
          if (!best || r.time > best->time || (r.time == best->time && r.session > best->session)) best = &r;
        }
        if (best) session = best->session;
      }
    }
  }

  if (!session) {
    const std::uint32_t index = state.next_index++;
    state.live.emplace(index, LiveSession{SessionTree(target), now});
    ++live_count_;
    touch(state, index, target, now);
    tally_->add_session_start(target);
    count_visit(user, target, record.target);
    return;
  }

  LiveSession& live = state.live.at(*session);
  live.last_activity = std::max(live.last_activity, now);
  touch(state, *session, target, now);
  if (live.tree.add_child(referrer, target)) {
    tally_->add_link(referrer, target);
    count_visit(user, target, record.target);
  }
}

void Sessionizer::finish() {
  std::vector<UserId> ids;
  ids.reserve(states_.size());
  for (const auto& [user, state] : states_) ids.push_back(user);
  std::sort(ids.begin(), ids.end());
  for (UserId user : ids) {
    auto& state = states_.at(user);
    while (!state.live.empty()) close(user, state, state.live.begin());
  }
  states_.clear();
}

}  // namespace webnav
