#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vf/bench/prompt.hpp"
#include "vf/bench/task.hpp"
#include "vf/program/interpreter.hpp"
#include "vf/stamp/stamp_ops.hpp"

namespace vf::bench {

struct CheckResult {
  std::string name;  // "occupied", "bbox" or "materials"
  bool passed = false;
  std::string detail;
};

struct RunRecord {
  std::string task_id;
  std::string model_id;
  Category category = Category::Symbolic;
  Difficulty difficulty = Difficulty::Easy;
  std::string subcategory;
  std::string prompt;  // task prompt shown to annotators
  PromptMode mode = PromptMode::Baseline;
  program::ExecutionOutcome outcome;  // scalar fields only once reloaded
  std::vector<std::string> violations;  // "Kind: message" per violation
  std::vector<std::string> renders;  // paths relative to the run directory, front/side/top/perspective
  std::optional<GeometrySummary> geometry;
  std::vector<CheckResult> checks;
  std::string started_at;  // UTC, ISO 8601
  std::string finished_at;

  bool execution_success() const { return outcome.status == program::Status::Success; }
  bool has_renders() const { return renders.size() == 4; }
};

struct PipelineOptions {
  std::chrono::milliseconds timeout{60'000};
  std::uint64_t op_budget = program::kDefaultOpBudget;
  int render_width = 1920;
  int render_height = 1080;
  kernels::Execution execution = kernels::Execution::Parallel;
  PromptMode mode = PromptMode::Baseline;
};

/// Relative run directory of one (mode, model, task).
std::filesystem::path run_subdir(PromptMode mode, const std::string& model_id, const std::string& task_id);

/// Parse, check, execute, render, export and score one submission. Artifacts
/// go to `out_root / run_subdir(...)`, replacing any previous run there.
/// Program faults are recorded in the result; only IoFailure is thrown.
RunRecord run_task(const TaskSpec& task, const std::string& submission, const std::string& model_id,
                   const std::filesystem::path& out_root, const PipelineOptions& options = {});

/// Runs every task for every model found under `submissions/<model_id>/<task_id>.prog`
/// using `jobs` workers. A missing submission counts as an empty one.
std::vector<RunRecord> run_batch(const std::vector<TaskSpec>& tasks, const std::filesystem::path& submissions,
                                 const std::filesystem::path& out_root, const PipelineOptions& options, int jobs = 1);

std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(const std::string& text);

/// Every `record.json` below `root`, sorted by (mode, model, task).
std::vector<RunRecord> load_records(const std::filesystem::path& root);

std::vector<CheckResult> check_ground_truth(const GroundTruth& truth, const GeometrySummary& summary);

}  // namespace vf::bench
