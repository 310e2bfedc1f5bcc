#pragma once

#include <array>
#include <string>
#include <vector>

#include "vf/bench/aggregate.hpp"

namespace vf::bench::replay {

/// Reference results used to build synthetic stores. Percentages are to
/// 0.1, Look to 0.01.
struct MainRef {
  std::string model;
  double has_object, position, material, shape, look;
};
struct CategoryRef {
  std::string model;
  std::array<std::array<double, 2>, 3> cells;  // {Shape, Look} for Symbolic, Geometric, Artistic
};
struct AblationRef {
  std::string model;
  double baseline, extended, delta;
};
struct ErrorRef {
  std::vector<std::string> models;
  std::array<std::vector<std::size_t>, 4> counts;  // rows in kErrorRows order
  std::array<std::size_t, 4> totals;
  std::vector<double> error_rate;  // percent, to 0.1
};

const std::vector<MainRef>& main_reference();
const std::vector<CategoryRef>& category_reference();
const std::vector<AblationRef>& ablation_reference();
const ErrorRef& error_reference();

struct Store {
  std::vector<RunRecord> records;
  std::vector<AnnotationRecord> annotations;
};

/// Smallest synthetic stores (one rating per run) whose aggregates round to
/// the reference values. Error-table models beyond the listed ones are
/// folded into a single "others" column so the totals match.
Store main_store();
Store category_store();
Store ablation_store();
Store error_store();

}  // namespace vf::bench::replay
