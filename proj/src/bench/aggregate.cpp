#include "vf/bench/aggregate.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

namespace vf::bench {

using nlohmann::json;

void validate(const AnnotationRecord& a) {
  if (a.annotator_id.empty()) throw InvalidAnnotation("annotator_id is required");
  if (a.task_id.empty()) throw InvalidAnnotation("task_id is required");
  if (a.model_id.empty()) throw InvalidAnnotation("model_id is required");
  if (a.visual_quality < 0 || a.visual_quality > 10)
    throw InvalidAnnotation(fmt::format("visual_quality must be in 0..10, got {}", a.visual_quality));
}

std::string annotation_to_json(const AnnotationRecord& a) {
  return json{{"id", a.id},
              {"annotator_id", a.annotator_id},
              {"task_id", a.task_id},
              {"model_id", a.model_id},
              {"mode", to_string(a.mode)},
              {"has_object", a.has_object},
              {"position_correct", a.position_correct},
              {"material_correct", a.material_correct},
              {"shape_correct", a.shape_correct},
              {"visual_quality", a.visual_quality},
              {"note", a.note},
              {"created_at", a.created_at}}
      .dump();
}

AnnotationRecord annotation_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidAnnotation(fmt::format("malformed JSON: {}", e.what()));
  }
  if (!j.is_object()) throw InvalidAnnotation("expected a JSON object");
  AnnotationRecord a;
  auto field = [&](const char* name, auto& out, bool required) {
    using T = std::decay_t<decltype(out)>;
    const auto it = j.find(name);
    if (it == j.end() || it->is_null()) {
      if (required) throw InvalidAnnotation(fmt::format("{} is required", name));
      return;
    }
    bool ok = false;
    if constexpr (std::is_same_v<T, bool>) ok = it->is_boolean();
    else if constexpr (std::is_same_v<T, std::string>) ok = it->is_string();
    else ok = it->is_number_integer() || it->is_number_unsigned();
    if (!ok) throw InvalidAnnotation(fmt::format("{} has the wrong type", name));
    out = it->template get<T>();
  };
  field("id", a.id, false);
  field("annotator_id", a.annotator_id, true);
  field("task_id", a.task_id, true);
  field("model_id", a.model_id, true);
  std::string mode = "baseline";
  field("mode", mode, false);
  try {
    a.mode = parse_prompt_mode(mode);
  } catch (const UnknownMode& e) {
    throw InvalidAnnotation(e.what());
  }
  field("has_object", a.has_object, true);
  // With no visible object the other ratings default to false / 0.
  field("position_correct", a.position_correct, a.has_object);
  field("material_correct", a.material_correct, a.has_object);
  field("shape_correct", a.shape_correct, a.has_object);
  field("visual_quality", a.visual_quality, a.has_object);
  field("note", a.note, false);
  field("created_at", a.created_at, false);
  validate(a);
  return a;
}

namespace {

using RunKey = std::tuple<PromptMode, std::string, std::string>;  // mode, model, task

struct Score {
  bool has_object = false, position = false, material = false, shape = false;
  double look = 0;
};

struct Tally {
  std::size_t n = 0, has_object = 0, position = 0, material = 0, shape = 0;
  double look = 0;
  void add(const Score& s) {
    ++n;
    has_object += s.has_object;
    position += s.position;
    material += s.material;
    shape += s.shape;
    look += s.look;
  }
  double pct(std::size_t k) const { return n ? 100.0 * static_cast<double>(k) / static_cast<double>(n) : 0.0; }
  double mean_look() const { return n ? look / static_cast<double>(n) : 0.0; }
};

}  // namespace

Results aggregate(const std::vector<RunRecord>& records, const std::vector<AnnotationRecord>& annotations) {
  std::map<RunKey, const RunRecord*> runs;
  for (const auto& r : records) runs[{r.mode, r.model_id, r.task_id}] = &r;

  struct Votes {
    std::size_t n = 0, has_object = 0, position = 0, material = 0, shape = 0;
    long quality = 0;
  };
  std::map<RunKey, Votes> votes;
  for (const auto& a : annotations) {
    const RunKey key{a.mode, a.model_id, a.task_id};
    if (!runs.count(key))
      throw DanglingAnnotation(fmt::format("annotation {} references unknown run {}/{}/{}", a.id, to_string(a.mode),
                                           a.model_id, a.task_id));
    Votes& v = votes[key];
    ++v.n;
    v.has_object += a.has_object;
    v.position += a.position_correct;
    v.material += a.material_correct;
    v.shape += a.shape_correct;
    v.quality += a.visual_quality;
  }

  Results res;
  // Keyed maps keep every sum in one fixed order, independent of input order.
  std::map<std::string, Tally> main;
  std::map<std::pair<std::string, Category>, Tally> by_category;
  std::map<std::pair<std::string, PromptMode>, Tally> artistic;
  std::map<std::string, std::array<std::size_t, 4>> error_counts;
  std::map<std::string, std::size_t> submissions;
  for (const auto& [key, run] : runs) {
    const auto& [mode, model, task] = key;
    if (mode == PromptMode::Baseline) {
      auto& counts = error_counts[model];
      ++submissions[model];
      for (std::size_t e = 0; e < 4; ++e) counts[e] += run->outcome.error == kErrorRows[e];
    }
    Score s;
    if (const auto it = votes.find(key); it != votes.end()) {
      const Votes& v = it->second;
      auto majority = [&](std::size_t yes) { return 2 * yes > v.n; };
      s = {majority(v.has_object), majority(v.position), majority(v.material), majority(v.shape),
           static_cast<double>(v.quality) / static_cast<double>(v.n)};
    } else if (run->has_renders()) {
      ++res.pending;
      continue;
    }
    if (mode == PromptMode::Baseline) {
      main[model].add(s);
      by_category[{model, run->category}].add(s);
    }
    if (run->category == Category::Artistic) artistic[{model, mode}].add(s);
  }

  for (const auto& [model, t] : main)
    res.main.push_back({model, t.n, t.pct(t.has_object), t.pct(t.position), t.pct(t.material), t.pct(t.shape),
                        t.mean_look()});
  std::stable_sort(res.main.begin(), res.main.end(), [](const MainRow& a, const MainRow& b) { return a.shape > b.shape; });
  for (const auto& row : res.main) {
    CategoryRow c{row.model, {}};
    for (std::size_t i = 0; i < 3; ++i)
      if (const auto it = by_category.find({row.model, kCategories[i]}); it != by_category.end())
        c.cells[i] = CategoryCell{it->second.n, it->second.pct(it->second.shape), it->second.mean_look()};
    res.category.push_back(c);
  }
  for (const auto& [key, base] : artistic) {
    if (key.second != PromptMode::Baseline) continue;
    const auto ext = artistic.find({key.first, PromptMode::Extended});
    if (ext == artistic.end()) continue;
    const double b = base.pct(base.shape), e = ext->second.pct(ext->second.shape);
    res.ablation.push_back({key.first, base.n, ext->second.n, b, e, e - b});
  }
  for (const auto& [model, counts] : error_counts) {
    res.errors.models.push_back(model);
    std::size_t failed = 0;
    for (std::size_t e = 0; e < 4; ++e) {
      res.errors.counts[e].push_back(counts[e]);
      res.errors.totals[e] += counts[e];
      failed += counts[e];
    }
    const std::size_t n = submissions[model];
    res.errors.submissions.push_back(n);
    res.errors.error_rate.push_back(100.0 * static_cast<double>(failed) / static_cast<double>(n));
  }
  return res;
}

namespace {

std::string_view row_label(program::ErrorClass e) {
  switch (e) {
    case program::ErrorClass::InvalidApiAttribute: return "Invalid API Attribute";
    case program::ErrorClass::TimeoutOrCrash: return "Execution Timeout/Crash";
    case program::ErrorClass::TypeUnpackingError: return "Type Unpacking Error";
    case program::ErrorClass::SyntaxError: return "Syntax Error";
    default: return "None";
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string signed_pp(double v) { return fmt::format("{}{:.1f}", v >= 0.05 ? "+" : "", v); }

// Column-aligned text table; the first column is left-aligned.
std::string table(const std::string& title, const std::vector<std::vector<std::string>>& rows) {
  if (rows.size() < 2) return title + "\nno data\n";
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::string out = title + "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      out += c == 0 ? fmt::format("{:<{}}", rows[r][c], width[c]) : fmt::format("  {:>{}}", rows[r][c], width[c]);
    out += "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      out += std::string(total - 2, '-') + "\n";
    }
  }
  return out;
}

struct Tables {
  std::vector<std::vector<std::string>> main, category, ablation, errors;
};

Tables build(const Results& r) {
  Tables t;
  t.main.push_back({"Model", "HasObj", "Pos", "Mat", "Shape", "Look", "N"});
  for (const auto& m : r.main)
    t.main.push_back({m.model, fmt::format("{:.1f}", m.has_object), fmt::format("{:.1f}", m.position),
                      fmt::format("{:.1f}", m.material), fmt::format("{:.1f}", m.shape), fmt::format("{:.2f}", m.look),
                      fmt::format("{}", m.scored)});
  t.category.push_back({"Model", "Symbolic Shape", "Symbolic Look", "Geometric Shape", "Geometric Look",
                        "Artistic Shape", "Artistic Look"});
  for (const auto& c : r.category) {
    std::vector<std::string> row{c.model};
    for (const auto& cell : c.cells) {
      row.push_back(cell ? fmt::format("{:.1f}", cell->shape) : "-");
      row.push_back(cell ? fmt::format("{:.2f}", cell->look) : "-");
    }
    t.category.push_back(row);
  }
  t.ablation.push_back({"Model", "Baseline", "More Ex.", "Delta"});
  for (const auto& a : r.ablation)
    t.ablation.push_back(
        {a.model, fmt::format("{:.1f}", a.baseline), fmt::format("{:.1f}", a.extended), signed_pp(a.delta)});
  std::vector<std::string> head{"Error Type"};
  for (const auto& m : r.errors.models) head.push_back(m);
  head.push_back("Total");
  t.errors.push_back(head);
  for (std::size_t e = 0; e < 4; ++e) {
    std::vector<std::string> row{std::string(row_label(kErrorRows[e]))};
    for (std::size_t count : r.errors.counts[e]) row.push_back(fmt::format("{}", count));
    row.push_back(fmt::format("{}", r.errors.totals[e]));
    t.errors.push_back(row);
  }
  std::vector<std::string> rate{"Error Rate"};
  for (double v : r.errors.error_rate) rate.push_back(fmt::format("{:.1f}%", v));
  rate.push_back("-");
  t.errors.push_back(rate);
  return t;
}

}  // namespace

std::string to_text(const Results& r) {
  if (r.empty()) return "Results\n-------\nno data\n";
  const Tables t = build(r);
  std::string out = table("Main results (baseline prompts, %; Look 0-10)", t.main);
  out += "\n" + table("Shape (%) and Look by category", t.category);
  out += "\n" + table("Artistic Shape (%): baseline vs extended prompts", t.ablation);
  out += "\n" + table("Error type distribution (baseline prompts)", t.errors);
  if (r.pending) out += fmt::format("\n{} rendered run(s) awaiting annotation\n", r.pending);
  return out;
}

std::string to_csv(const Results& r) {
  if (r.empty()) return "table,status\nresults,no data\n";
  const Tables t = build(r);
  std::string out;
  auto emit = [&](std::string_view name, const std::vector<std::vector<std::string>>& rows) {
    if (rows.size() < 2) {
      out += fmt::format("table,status\n{},no data\n\n", name);
      return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out += i == 0 ? "table" : std::string(name);
      for (const auto& cell : rows[i]) out += "," + csv_field(cell);
      out += "\n";
    }
    out += "\n";
  };
  emit("main", t.main);
  emit("category", t.category);
  emit("ablation", t.ablation);
  emit("errors", t.errors);
  return out;
}

}  // namespace vf::bench
