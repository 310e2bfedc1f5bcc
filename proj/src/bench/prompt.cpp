#include "vf/bench/prompt.hpp"

#include <fmt/format.h>

#include "vf/program/registry.hpp"

namespace vf::bench {

std::string_view to_string(PromptMode mode) { return mode == PromptMode::Baseline ? "baseline" : "extended"; }

UnknownMode::UnknownMode(std::string_view mode)
    : std::invalid_argument(fmt::format("unknown prompt mode '{}' (expected baseline or extended)", mode)) {}

PromptMode parse_prompt_mode(std::string_view text) {
  if (text == "baseline") return PromptMode::Baseline;
  if (text == "extended") return PromptMode::Extended;
  throw UnknownMode(text);
}

std::string PromptPack::text() const {
  std::string out = "# API reference\n\n" + api_docs;
  out += "\n# Worked examples\n";
  for (std::size_t i = 0; i < examples.size(); ++i)
    out += fmt::format("\n## Example {}: {}\n\nTask: {}\n\n{}", i + 1, examples[i]->task.subcategory,
                       examples[i]->task.prompt, examples[i]->program);
  out += "\n# Task\n\n" + task_prompt + "\n";
  return out;
}

PromptPack assemble_prompt(const TaskSpec& task, PromptMode mode) {
  PromptPack pack;
  pack.api_docs = program::ApiRegistry::standard().reference();
  pack.task_prompt = task.prompt;
  pack.mode = mode;
  std::vector<const WorkedExample*> same, other;
  for (const auto& e : worked_examples()) {
    if (e.task.id == task.id) continue;
    (e.task.category == task.category ? same : other).push_back(&e);
  }
  if (mode == PromptMode::Extended) {
    pack.examples = same;
    pack.examples.insert(pack.examples.end(), other.begin(), other.end());
    return pack;
  }
  for (const auto* e : same)
    if (pack.examples.size() < 3) pack.examples.push_back(e);
  for (const auto* e : other)
    if (pack.examples.size() < 2) pack.examples.push_back(e);
  return pack;
}

}  // namespace vf::bench
