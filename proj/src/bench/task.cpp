#include "vf/bench/task.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "vf/geometry/errors.hpp"

namespace vf::bench {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Symbolic: return "Symbolic";
    case Category::Geometric: return "Geometric";
    case Category::Artistic: return "Artistic";
  }
  return "?";
}

std::string_view to_string(Difficulty difficulty) {
  switch (difficulty) {
    case Difficulty::Easy: return "Easy";
    case Difficulty::Medium: return "Medium";
    case Difficulty::Hard: return "Hard";
  }
  return "?";
}

Category parse_category(std::string_view text) {
  for (Category c : kCategories)
    if (to_string(c) == text) return c;
  throw std::invalid_argument(fmt::format("unknown category '{}'", text));
}

Difficulty parse_difficulty(std::string_view text) {
  for (Difficulty d : {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard})
    if (to_string(d) == text) return d;
  throw std::invalid_argument(fmt::format("unknown difficulty '{}'", text));
}

TaskFormatError::TaskFormatError(int line, const std::string& message)
    : std::runtime_error(fmt::format("tasks.v1 line {}: {}", line, message)), line_(line) {}

namespace {

constexpr std::string_view kMagic = "tasks.v1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> numbers(std::string_view text, std::size_t want, int line) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc() || ptr != word.data() + word.size())
      throw TaskFormatError(line, fmt::format("'{}' is not a number", word));
    out.push_back(v);
  }
  if (out.size() != want) throw TaskFormatError(line, fmt::format("expected {} numbers, got {}", want, out.size()));
  return out;
}

void finish(std::vector<TaskSpec>& tasks, std::set<std::string>& ids, int line) {
  if (tasks.empty()) return;
  const TaskSpec& t = tasks.back();
  if (t.id.empty()) throw TaskFormatError(line, "task without id");
  ids.insert(t.id);
}

}  // namespace

std::vector<TaskSpec> parse_tasks(std::string_view text) {
  std::vector<TaskSpec> tasks;
  std::set<std::string> ids;
  bool magic = false;
  bool first_prompt_line = true;
  int n = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++n;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!magic) {
      if (line != kMagic) throw TaskFormatError(n, "missing 'tasks.v1' header");
      magic = true;
      continue;
    }
    if (line == "[task]") {
      finish(tasks, ids, n);
      tasks.emplace_back();
      first_prompt_line = true;
      continue;
    }
    if (tasks.empty()) throw TaskFormatError(n, "field outside a [task] block");
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw TaskFormatError(n, "expected 'key: value'");
    const std::string_view key = trim(line.substr(0, colon));
    // Prompt lines keep their inner spacing; only the single separator space is dropped.
    std::string_view value = raw.substr(raw.find(':') + 1);
    if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (!value.empty() && value.back() == '\r') value.remove_suffix(1);
    TaskSpec& t = tasks.back();
    try {
      if (key == "id") {
        t.id = trim(value);
        if (ids.contains(t.id)) throw TaskFormatError(n, fmt::format("duplicate task id '{}'", t.id));
      }
      else if (key == "category") t.category = parse_category(trim(value));
      else if (key == "subcategory") t.subcategory = trim(value);
      else if (key == "difficulty") t.difficulty = parse_difficulty(trim(value));
      else if (key == "prompt") {
        if (!first_prompt_line) t.prompt += '\n';
        t.prompt += value;
        first_prompt_line = false;
      } else if (key == "grid") {
        const auto v = numbers(value, 7, n);
        GridSpec g;
        g.origin = {v[0], v[1], v[2]};
        for (int a = 0; a < 3; ++a) {
          if (v[3 + a] != static_cast<int>(v[3 + a])) throw TaskFormatError(n, "grid dims must be integers");
          g.dims[static_cast<std::size_t>(a)] = static_cast<int>(v[3 + a]);
        }
        g.spacing = v[6];
        g.validate();
        t.grid = g;
      } else if (key == "expect.occupied") {
        const auto v = numbers(value, 2, n);
        if (v[0] < 0 || v[1] < v[0]) throw TaskFormatError(n, "bad occupied range");
        t.truth.occupied = {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
      } else if (key == "expect.bbox") {
        const auto v = numbers(value, 6, n);
        t.truth.bbox = Aabb{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
      } else if (key == "expect.bbox_tolerance") {
        t.truth.bbox_tolerance = numbers(value, 1, n)[0];
      } else if (key == "expect.materials") {
        std::istringstream in{std::string(value)};
        std::string name;
        while (in >> name) t.truth.materials.push_back(name);
      } else {
        throw TaskFormatError(n, fmt::format("unknown field '{}'", key));
      }
    } catch (const TaskFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw TaskFormatError(n, e.what());
    }
  }
  if (!magic) throw TaskFormatError(1, "missing 'tasks.v1' header");
  finish(tasks, ids, n);
  return tasks;
}

std::string format_tasks(const std::vector<TaskSpec>& tasks) {
  std::string out = fmt::format("{}\n", kMagic);
  for (const auto& t : tasks) {
    out += fmt::format("\n[task]\nid: {}\ncategory: {}\nsubcategory: {}\ndifficulty: {}\n", t.id,
                       to_string(t.category), t.subcategory, to_string(t.difficulty));
    if (t.grid)
      out += fmt::format("grid: {} {} {} {} {} {} {}\n", t.grid->origin.x, t.grid->origin.y, t.grid->origin.z,
                         t.grid->dims[0], t.grid->dims[1], t.grid->dims[2], t.grid->spacing);
    if (t.truth.occupied) out += fmt::format("expect.occupied: {} {}\n", t.truth.occupied->first, t.truth.occupied->second);
    if (t.truth.bbox) {
      const Aabb& b = *t.truth.bbox;
      out += fmt::format("expect.bbox: {} {} {} {} {} {}\n", b.min.x, b.min.y, b.min.z, b.max.x, b.max.y, b.max.z);
      out += fmt::format("expect.bbox_tolerance: {}\n", t.truth.bbox_tolerance);
    }
    if (!t.truth.materials.empty()) out += fmt::format("expect.materials: {}\n", fmt::join(t.truth.materials, " "));
    std::size_t start = 0;
    do {
      const std::size_t end = std::min(t.prompt.find('\n', start), t.prompt.size());
      out += fmt::format("prompt: {}\n", std::string_view(t.prompt).substr(start, end - start));
      start = end + 1;
    } while (start <= t.prompt.size());
  }
  return out;
}

std::vector<TaskSpec> load_tasks(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(fmt::format("cannot open '{}'", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_tasks(text.str());
}

void save_tasks(const std::string& path, const std::vector<TaskSpec>& tasks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure(fmt::format("cannot write '{}'", path));
  out << format_tasks(tasks);
  if (!out) throw IoFailure(fmt::format("cannot write '{}'", path));
}

}  // namespace vf::bench
