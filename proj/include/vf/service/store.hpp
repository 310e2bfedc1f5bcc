#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "vf/bench/aggregate.hpp"

namespace vf::service {

/// The annotation directory cannot be read or written.
class StoreUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunKey {
  std::string task_id;
  std::string model_id;
  bench::PromptMode mode = bench::PromptMode::Baseline;
  friend auto operator<=>(const RunKey&, const RunKey&) = default;
};

RunKey key_of(const bench::RunRecord& r);
RunKey key_of(const bench::AnnotationRecord& a);

/// Append-only annotation store. Every accepted record is written as one JSON
/// line to `log-YYYY-MM-DD.jsonl` and fsynced before put() returns; a compacted
/// `snapshot.json` is rewritten every `compact_every` writes. Opening replays
/// the snapshot and then every log entry newer than it.
///
/// One record per (annotator, run): a resubmission keeps the id and replaces
/// the values. Writers are serialized; readers get immutable snapshots.
class AnnotationStore {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  struct PutResult {
    std::uint64_t id = 0;
    bool created = false;
  };

  /// Throws StoreUnavailable.
  explicit AnnotationStore(std::filesystem::path dir, std::size_t compact_every = 256, Clock clock = {});
  ~AnnotationStore();
  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  /// Validates (InvalidAnnotation), stamps created_at and persists.
  /// Throws StoreUnavailable when the write fails; the record is then not stored.
  PutResult put(bench::AnnotationRecord record);

  /// Current records ordered by id.
  std::shared_ptr<const std::vector<bench::AnnotationRecord>> snapshot() const;

  /// Writes snapshot.json now.
  void compact();

  const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Replays `dir` without opening it for writing.
  static std::vector<bench::AnnotationRecord> read(const std::filesystem::path& dir);

 private:
  using Key = std::tuple<std::string, RunKey>;  // annotator, run

  void append(const std::string& line, std::chrono::system_clock::time_point now);
  void compact_locked();

  std::filesystem::path dir_;
  std::size_t compact_every_;
  Clock clock_;
  std::mutex write_mutex_;
  int fd_ = -1;
  std::string fd_day_;
  std::uint64_t seq_ = 0;
  std::uint64_t next_id_ = 1;
  std::size_t since_compact_ = 0;
  std::map<Key, bench::AnnotationRecord> by_key_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const std::vector<bench::AnnotationRecord>> snapshot_;
};

}  // namespace vf::service
