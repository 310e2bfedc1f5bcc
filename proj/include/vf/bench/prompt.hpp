#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vf/bench/task.hpp"

namespace vf::bench {

enum class PromptMode { Baseline, Extended };
std::string_view to_string(PromptMode mode);

class UnknownMode : public std::invalid_argument {
 public:
  explicit UnknownMode(std::string_view mode);
};

/// Throws UnknownMode.
PromptMode parse_prompt_mode(std::string_view text);

struct PromptPack {
  std::string api_docs;
  std::vector<const WorkedExample*> examples;
  std::string task_prompt;
  PromptMode mode = PromptMode::Baseline;

  /// The model input: docs, then examples, then the task.
  std::string text() const;
};

/// Baseline packs take up to three examples from the task's own category,
/// topped up to two from the others; extended packs take every example.
/// A task never sees its own reference program.
PromptPack assemble_prompt(const TaskSpec& task, PromptMode mode);

}  // namespace vf::bench
