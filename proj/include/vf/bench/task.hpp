#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vf/geometry/vec3.hpp"
#include "vf/stamp/grid_spec.hpp"

namespace vf::bench {

enum class Category { Symbolic, Geometric, Artistic };
enum class Difficulty { Easy, Medium, Hard };
inline constexpr Category kCategories[] = {Category::Symbolic, Category::Geometric, Category::Artistic};

std::string_view to_string(Category category);
std::string_view to_string(Difficulty difficulty);
Category parse_category(std::string_view text);
Difficulty parse_difficulty(std::string_view text);

/// Advisory checks; reported with each run, never pass/fail.
struct GroundTruth {
  std::optional<std::pair<std::size_t, std::size_t>> occupied;  // inclusive count range
  std::optional<Aabb> bbox;  // expected occupied bounds
  double bbox_tolerance = 1.0;
  std::vector<std::string> materials;  // expected material names, exact set
  bool empty() const { return !occupied && !bbox && materials.empty(); }
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct TaskSpec {
  std::string id;
  Category category = Category::Symbolic;
  std::string subcategory;
  Difficulty difficulty = Difficulty::Easy;
  std::string prompt;
  std::optional<GridSpec> grid;  // default scene when absent
  GroundTruth truth;
  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

class TaskFormatError : public std::runtime_error {
 public:
  TaskFormatError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// `tasks.v1` text. Throws TaskFormatError on malformed input or duplicate ids.
std::vector<TaskSpec> parse_tasks(std::string_view text);
std::string format_tasks(const std::vector<TaskSpec>& tasks);
std::vector<TaskSpec> load_tasks(const std::string& path);
void save_tasks(const std::string& path, const std::vector<TaskSpec>& tasks);

/// A task paired with its reference program.
struct WorkedExample {
  TaskSpec task;
  std::string program;  // canonical encoding
};

/// The seven worked-example tasks with their reference programs.
const std::vector<WorkedExample>& worked_examples();

/// Single-sphere placement tasks with oracle count ranges and reference
/// programs; the same seed gives the same list.
std::vector<WorkedExample> generate_sphere_tasks(std::uint64_t seed, int count = 30);

/// Worked-example tasks followed by the generated sphere tasks.
std::vector<TaskSpec> seed_dataset(std::uint64_t seed = 0);

/// Voxel centers of `grid` strictly inside the sphere, counted directly.
std::size_t sphere_voxel_count(const GridSpec& grid, const Vec3& center, double radius);

}  // namespace vf::bench
