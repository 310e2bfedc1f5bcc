#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vf/bench/pipeline.hpp"

namespace vf::bench {

/// One human rating of one run.
struct AnnotationRecord {
  std::uint64_t id = 0;  // assigned by the store
  std::string annotator_id;
  std::string task_id;
  std::string model_id;
  PromptMode mode = PromptMode::Baseline;
  bool has_object = false;
  bool position_correct = false;
  bool material_correct = false;
  bool shape_correct = false;
  int visual_quality = 0;  // 0..10
  std::string note;  // free text, not aggregated
  std::string created_at;
  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

class InvalidAnnotation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Annotation naming a run that is not among the records.
class DanglingAnnotation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidAnnotation naming the first bad field.
void validate(const AnnotationRecord& a);

std::string annotation_to_json(const AnnotationRecord& a);
/// Missing optional fields take their defaults; throws InvalidAnnotation.
AnnotationRecord annotation_from_json(const std::string& text);

struct MainRow {
  std::string model;
  std::size_t scored = 0;
  double has_object = 0, position = 0, material = 0, shape = 0;  // percent
  double look = 0;  // 0..10
};

struct CategoryCell {
  std::size_t scored = 0;
  double shape = 0;
  double look = 0;
};

struct CategoryRow {
  std::string model;
  std::array<std::optional<CategoryCell>, 3> cells;  // Symbolic, Geometric, Artistic
};

struct AblationRow {
  std::string model;
  std::size_t baseline_scored = 0, extended_scored = 0;
  double baseline = 0, extended = 0, delta = 0;  // Artistic Shape %, delta = extended - baseline
};

inline constexpr program::ErrorClass kErrorRows[] = {
    program::ErrorClass::InvalidApiAttribute, program::ErrorClass::TimeoutOrCrash,
    program::ErrorClass::TypeUnpackingError, program::ErrorClass::SyntaxError};

struct ErrorTable {
  std::vector<std::string> models;
  std::array<std::vector<std::size_t>, 4> counts;  // [row][model]
  std::array<std::size_t, 4> totals{};
  std::vector<std::size_t> submissions;  // per model
  std::vector<double> error_rate;  // percent of submissions with any error
};

struct Results {
  std::vector<MainRow> main;
  std::vector<CategoryRow> category;
  std::vector<AblationRow> ablation;
  ErrorTable errors;
  std::size_t pending = 0;  // rendered runs that nobody has rated yet
  bool empty() const { return main.empty() && ablation.empty() && errors.models.empty(); }
};

/// Per run: booleans by majority vote (ties false), Look averaged. Runs that
/// never rendered count as all-false with Look 0; rendered runs without
/// ratings are left out. Main, category and error tables use baseline runs;
/// the ablation table compares Artistic Shape across modes.
/// Throws DanglingAnnotation.
Results aggregate(const std::vector<RunRecord>& records, const std::vector<AnnotationRecord>& annotations);

std::string to_csv(const Results& results);
std::string to_text(const Results& results);

}  // namespace vf::bench
