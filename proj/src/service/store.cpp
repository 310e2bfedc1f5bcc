#include "vf/service/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include <fmt/format.h>

namespace vf::service {

namespace fs = std::filesystem;
using json = nlohmann::json;
using bench::AnnotationRecord;

namespace {

constexpr const char* kSnapshot = "snapshot.json";
constexpr const char* kSnapshotFormat = "annotations.snapshot.v1";

std::string format_time(std::chrono::system_clock::time_point t, const char* pattern) {
  const std::time_t s = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&s, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, pattern, &tm);
  return buf;
}

struct State {
  std::map<std::tuple<std::string, RunKey>, AnnotationRecord> by_key;
  std::uint64_t seq = 0;
  std::uint64_t next_id = 1;
};

void apply(State& s, AnnotationRecord a) {
  s.next_id = std::max(s.next_id, a.id + 1);
  s.by_key[{a.annotator_id, key_of(a)}] = std::move(a);
}

AnnotationRecord record_of(const json& j) { return bench::annotation_from_json(j.dump()); }

std::vector<fs::path> log_files(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    const std::string name = e.path().filename().string();
    if (name.starts_with("log-") && name.ends_with(".jsonl")) out.push_back(e.path());
  }
  if (ec) throw StoreUnavailable(fmt::format("cannot list '{}': {}", dir.string(), ec.message()));
  std::sort(out.begin(), out.end());
  return out;
}

/// With `repair`, a torn final line (crash mid-append) is cut off the newest log.
State replay(const fs::path& dir, bool repair) {
  State s;
  try {
    const fs::path snap = dir / kSnapshot;
    if (fs::exists(snap)) {
      std::ifstream in(snap);
      const json j = json::parse(in);
      if (j.at("format") != kSnapshotFormat) throw StoreUnavailable("unknown snapshot format");
      s.seq = j.at("last_seq").get<std::uint64_t>();
      s.next_id = j.at("next_id").get<std::uint64_t>();
      for (const auto& r : j.at("records")) apply(s, record_of(r));
    }
    const auto logs = log_files(dir);
    for (std::size_t f = 0; f < logs.size(); ++f) {
      std::ifstream in(logs[f], std::ios::binary);
      std::string text((std::istreambuf_iterator<char>(in)), {});
      std::size_t start = 0;
      while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
          if (f + 1 != logs.size()) throw StoreUnavailable(fmt::format("'{}' ends mid-record", logs[f].string()));
          if (repair) fs::resize_file(logs[f], start);
          break;
        }
        const json line = json::parse(text.substr(start, end - start));
        start = end + 1;
        const auto seq = line.at("seq").get<std::uint64_t>();
        if (seq <= s.seq) continue;
        s.seq = seq;
        apply(s, record_of(line.at("record")));
      }
    }
  } catch (const StoreUnavailable&) {
    throw;
  } catch (const std::exception& e) {
    throw StoreUnavailable(fmt::format("cannot replay '{}': {}", dir.string(), e.what()));
  }
  return s;
}

std::shared_ptr<const std::vector<AnnotationRecord>> to_snapshot(
    const std::map<std::tuple<std::string, RunKey>, AnnotationRecord>& by_key) {
  auto v = std::make_shared<std::vector<AnnotationRecord>>();
  v->reserve(by_key.size());
  for (const auto& [k, a] : by_key) v->push_back(a);
  std::sort(v->begin(), v->end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return v;
}

void write_all(int fd, const std::string& data, const std::string& what) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StoreUnavailable(fmt::format("write to {} failed: {}", what, std::strerror(errno)));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) throw StoreUnavailable(fmt::format("fsync of {} failed: {}", what, std::strerror(errno)));
}

}  // namespace

RunKey key_of(const bench::RunRecord& r) { return {r.task_id, r.model_id, r.mode}; }
RunKey key_of(const AnnotationRecord& a) { return {a.task_id, a.model_id, a.mode}; }

AnnotationStore::AnnotationStore(fs::path dir, std::size_t compact_every, Clock clock)
    : dir_(std::move(dir)), compact_every_(std::max<std::size_t>(1, compact_every)), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return std::chrono::system_clock::now(); };
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw StoreUnavailable(fmt::format("cannot create '{}': {}", dir_.string(), ec.message()));
  State s = replay(dir_, true);
  by_key_ = std::move(s.by_key);
  seq_ = s.seq;
  next_id_ = s.next_id;
  snapshot_ = to_snapshot(by_key_);
}

AnnotationStore::~AnnotationStore() {
  if (fd_ >= 0) ::close(fd_);
}

std::vector<AnnotationRecord> AnnotationStore::read(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw StoreUnavailable(fmt::format("'{}' is not a directory", dir.string()));
  return *to_snapshot(replay(dir, false).by_key);
}

void AnnotationStore::append(const std::string& line, std::chrono::system_clock::time_point now) {
  const std::string day = format_time(now, "%Y-%m-%d");
  if (fd_ < 0 || day != fd_day_) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
    const fs::path file = dir_ / ("log-" + day + ".jsonl");
    fd_ = ::open(file.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw StoreUnavailable(fmt::format("cannot open '{}': {}", file.string(), std::strerror(errno)));
    fd_day_ = day;
  }
  write_all(fd_, line, "annotation log");
}

AnnotationStore::PutResult AnnotationStore::put(AnnotationRecord record) {
  bench::validate(record);
  const std::lock_guard lock(write_mutex_);
  const auto now = clock_();
  record.created_at = format_time(now, "%Y-%m-%dT%H:%M:%SZ");
  const Key key{record.annotator_id, key_of(record)};
  const auto it = by_key_.find(key);
  const bool created = it == by_key_.end();
  record.id = created ? next_id_ : it->second.id;

  const std::uint64_t seq = seq_ + 1;
  append(fmt::format("{{\"seq\":{},\"record\":{}}}\n", seq, bench::annotation_to_json(record)), now);
  seq_ = seq;
  if (created) ++next_id_;
  by_key_[key] = record;
  {
    auto snap = to_snapshot(by_key_);
    const std::lock_guard s(snapshot_mutex_);
    snapshot_ = std::move(snap);
  }
  if (++since_compact_ >= compact_every_) compact_locked();
  return {record.id, created};
}

std::shared_ptr<const std::vector<AnnotationRecord>> AnnotationStore::snapshot() const {
  const std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

void AnnotationStore::compact() {
  const std::lock_guard lock(write_mutex_);
  compact_locked();
}

void AnnotationStore::compact_locked() {
  json records = json::array();
  for (const auto& a : *snapshot()) records.push_back(json::parse(bench::annotation_to_json(a)));
  const json j = {{"format", kSnapshotFormat}, {"last_seq", seq_}, {"next_id", next_id_}, {"records", records}};
  const fs::path tmp = dir_ / "snapshot.json.tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw StoreUnavailable(fmt::format("cannot open '{}': {}", tmp.string(), std::strerror(errno)));
  try {
    write_all(fd, j.dump() + "\n", "snapshot");
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  std::error_code ec;
  fs::rename(tmp, dir_ / kSnapshot, ec);
  if (ec) throw StoreUnavailable(fmt::format("cannot replace snapshot: {}", ec.message()));
  since_compact_ = 0;
}

}  // namespace vf::service
