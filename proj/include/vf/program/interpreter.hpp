#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vf/kernels/field_fill.hpp"
#include "vf/program/compliance.hpp"
#include "vf/program/program.hpp"
#include "vf/program/registry.hpp"
#include "vf/stamp/stamp.hpp"

namespace vf::program {

/// Kernel work is measured in bricks of 32^3 voxels.
inline constexpr std::size_t kBrickVoxels = 32 * 32 * 32;
inline constexpr std::uint64_t kDefaultOpBudget = 1'000'000;

struct ExecutionLimits {
  std::chrono::milliseconds timeout{60'000};
  std::uint64_t op_budget = kDefaultOpBudget;
  std::size_t voxel_budget = kDefaultVoxelBudget;
  GridSpec grid = GridSpec::default_scene();
  kernels::Execution execution = kernels::Execution::Parallel;
};

enum class Status { Success, Failed, TimedOut };
enum class ErrorClass { None, InvalidApiAttribute, TimeoutOrCrash, TypeUnpackingError, SyntaxError };
std::string_view to_string(Status status);
std::string_view to_string(ErrorClass error);
Status parse_status(std::string_view text);
ErrorClass parse_error_class(std::string_view text);

/// Surface-utility requests recorded during execution and applied at export.
struct MeshRequest {
  bool requested = false;
  double iso_level = 0.0;
  int smooth_iterations = 0;
  double smooth_lambda = 0.5;
  friend bool operator==(const MeshRequest&, const MeshRequest&) = default;
};

struct ExecutionOutcome {
  Status status = Status::Success;
  ErrorClass error = ErrorClass::None;
  std::string error_message;
  SourcePos error_pos;
  std::vector<Violation> violations;
  std::vector<std::string> logs;
  double wall_seconds = 0.0;
  std::uint64_t ops_used = 0;
  std::size_t calls_executed = 0;
  std::shared_ptr<const Stamp> stamp;  // final (or partial) scene; null after a syntax error
  MeshRequest mesh;
};

/// A failure raised while executing a call, already classified.
class ProgramError : public std::runtime_error {
 public:
  ProgramError(ErrorClass error, SourcePos pos, const std::string& message)
      : std::runtime_error(message), error_(error), pos_(pos) {}
  ErrorClass error() const noexcept { return error_; }
  SourcePos pos() const noexcept { return pos_; }

 private:
  ErrorClass error_;
  SourcePos pos_;
};

/// Runs `program` against a fresh scene stamp. Never throws for program
/// faults: every failure is classified into the outcome.
ExecutionOutcome execute(const SceneProgram& program, const ExecutionLimits& limits = {},
                         const ApiRegistry& registry = ApiRegistry::standard());

/// Parses then executes; parse failures become SyntaxError outcomes.
ExecutionOutcome run_source(std::string_view text, const ExecutionLimits& limits = {},
                            const ApiRegistry& registry = ApiRegistry::standard());

/// Versioned `outcome.v1` key: value record.
std::string format_outcome(const ExecutionOutcome& outcome);
/// Reads the scalar fields back (stamp and logs are not restored).
ExecutionOutcome parse_outcome(std::string_view text);

}  // namespace vf::program
