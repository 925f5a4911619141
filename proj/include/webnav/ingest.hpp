#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "webnav/session.hpp"

namespace webnav {

// One request; an empty referrer marks a session start.
struct LogRecord {
  std::int64_t timestamp = 0;
  std::string user;
  std::string referrer;
  std::string target;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct ParseOptions {
  bool strip_query = false;
  // When non-empty, only targets whose last path segment has no extension
  // or one of these (case-insensitive, without the dot) are kept.
  std::vector<std::string> page_extensions;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t records = 0;
  std::size_t malformed = 0;
  std::size_t filtered = 0;
};

std::string strip_query(std::string_view url);
std::string host_of(std::string_view url);
bool has_page_extension(std::string_view url, const std::vector<std::string>& extensions);

// Parses "timestamp<TAB>user<TAB>referrer<TAB>target"; '-' is the empty
// referrer. Malformed lines and filtered targets yield nullopt and are
// counted in stats.
std::optional<LogRecord> parse_log_line(std::string_view line, const ParseOptions& options, ParseStats& stats);

void parse_log(std::istream& in, const ParseOptions& options, ParseStats& stats,
               const std::function<void(LogRecord&&)>& on_record);

// Writes one record in the log format.
void write_log_record(std::ostream& out, const LogRecord& record);

/// Dense ids for strings, in order of first appearance.
class Interner {
 public:
  std::uint32_t intern(std::string_view key);
  std::optional<std::uint32_t> find(std::string_view key) const;
  const std::string& label(std::uint32_t id) const { return labels_.at(id); }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> labels_;
};

struct SessionizeOptions {
  std::int64_t timeout = 1800;  // seconds
  bool entropy_by_host = false;  // per-user visit vectors over hosts instead of URLs
};

/// Builds logical sessions from requests.
///
/// A request with an empty referrer opens a new tree rooted at its target.
/// Otherwise it joins the live session in which the referrer URL was most
/// recently requested (ties go to the newer session) as a child of the
/// referrer; a target already in that tree only refreshes its recency. If no
/// live session holds the referrer, the target roots a new tree. A session
/// whose last request is more than `timeout` seconds before the user's
/// current request is closed and can no longer be joined.
class Sessionizer {
 public:
  using Sink = std::function<void(const SessionDescriptor&)>;

  Sessionizer(TrafficTally& tally, Sink sink, SessionizeOptions options = {});

  void add(const LogRecord& record);
  // Closes every live session, in user id then session index order.
  void finish();

  std::size_t live_sessions() const noexcept { return live_count_; }
  const Interner& pages() const noexcept { return pages_; }
  const Interner& users() const noexcept { return users_; }
  const Interner& hosts() const noexcept { return hosts_; }

 private:
  struct LiveSession {
    SessionTree tree;
    std::int64_t last_activity;
  };
  struct Recency {
    std::uint32_t session;
    std::int64_t time;
  };
  struct UserState {
    std::map<std::uint32_t, LiveSession> live;
    std::unordered_map<NodeId, std::vector<Recency>> recency;
    std::uint32_t next_index = 0;
  };

  void expire(UserId user, UserState& state, std::int64_t now);
  void close(UserId user, UserState& state, std::map<std::uint32_t, LiveSession>::iterator it);
  void touch(UserState& state, std::uint32_t session, NodeId page, std::int64_t time);
  void count_visit(UserId user, NodeId page, std::string_view url);

  TrafficTally* tally_;
  Sink sink_;
  SessionizeOptions options_;
  Interner pages_;
  Interner users_;
  Interner hosts_;
  std::unordered_map<UserId, UserState> states_;
  std::size_t live_count_ = 0;
};

}  // namespace webnav
