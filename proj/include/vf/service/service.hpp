#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "vf/service/store.hpp"

namespace vf::service {

struct ServiceConfig {
  std::filesystem::path data_dir = "data";  // annotations live in data_dir/annotations
  std::filesystem::path runs_dir;  // defaults to data_dir/runs
  std::filesystem::path static_dir;  // optional annotation UI, served under /ui
  std::string token;  // empty disables the token check
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t compact_every = 256;
};

/// Reads VF_DATA_DIR, VF_TOKEN and VF_PORT over `base`.
ServiceConfig config_from_env(ServiceConfig base = {});

/// Annotation service. Endpoints:
///   GET  /health
///   GET  /queue/next?annotator_id=A     200 item, 204 when A has rated everything
///   POST /annotations                   201 {"id"} new, 200 {"id"} overwrite, 400, 404
///   GET  /annotations?annotator_id=A    records, optionally filtered
///   GET  /annotations/{id}
///   GET  /aggregate?format=csv|text
///   GET  /renders/{mode}/{model}/{task}/renders/{file}.png
/// Everything but /health and /ui needs the token in X-VF-Token,
/// "Authorization: Bearer", or a `token` query parameter.
class EvalService {
 public:
  /// Loads runs; a store that cannot be opened leaves the service answering 503.
  explicit EvalService(ServiceConfig config);
  ~EvalService();
  EvalService(const EvalService&) = delete;
  EvalService& operator=(const EvalService&) = delete;

  /// Rescans the runs directory. Throws IoFailure.
  void reload_runs();

  /// Binds (port 0 picks a free one) and serves on a background thread.
  /// Returns the bound port; throws IoFailure when binding fails.
  int start();
  /// Binds and serves on the calling thread until stop().
  void run();
  void stop();

  std::size_t run_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vf::service
