#include "vf/bench/replay.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

namespace vf::bench::replay {

const std::vector<MainRef>& main_reference() {
  static const std::vector<MainRef> rows = {
      {"GPT-5", 88.6, 88.6, 87.9, 87.9, 5.71},
      {"GPT-5 Mini", 85.8, 85.8, 82.4, 80.4, 4.86},
      {"Claude Sonnet 4.5", 86.7, 86.7, 84.6, 80.4, 5.01},
      {"GPT-5 Chat", 77.9, 77.9, 75.9, 69.7, 3.66},
      {"Claude Opus 4", 74.1, 72.8, 72.1, 69.4, 4.13},
      {"Claude 3.5 Sonnet", 71.0, 70.3, 70.3, 66.9, 3.30},
      {"Claude 3 Opus", 59.5, 59.5, 54.8, 45.2, 3.40},
      {"Gemini Pro", 20.1, 20.1, 18.8, 19.5, 1.36},
  };
  return rows;
}

const std::vector<CategoryRef>& category_reference() {
  static const std::vector<CategoryRef> rows = {
      {"GPT-5", {{{87.5, 6.81}, {66.7, 6.56}, {97.5, 4.90}}}},
      {"Claude Sonnet 4.5", {{{90.3, 6.77}, {52.8, 5.28}, {89.5, 4.16}}}},
      {"Claude Opus 4", {{{75.0, 6.25}, {40.0, 3.83}, {80.0, 3.41}}}},
      {"Gemini Pro", {{{15.2, 1.55}, {23.7, 2.08}, {19.2, 0.92}}}},
  };
  return rows;
}

const std::vector<AblationRef>& ablation_reference() {
  static const std::vector<AblationRef> rows = {
      {"GPT-5", 97.5, 96.2, -1.4},
      {"GPT-5 Mini", 92.5, 96.2, 3.7},
      {"GPT-5 Chat", 94.9, 61.5, -33.4},
      {"Claude Sonnet 4.5", 89.5, 72.0, -17.5},
      {"Claude 3.5 Sonnet", 84.8, 50.0, -34.8},
      {"Gemini Pro", 19.2, 44.0, 24.8},
  };
  return rows;
}

const ErrorRef& error_reference() {
  static const ErrorRef ref = {
      {"GPT-5", "Claude Son. 4.5", "Gemini Pro"},
      {{{6, 8, 15}, {2, 10, 1}, {0, 0, 12}, {0, 0, 14}}},
      {89, 55, 15, 15},
      {0.8, 1.6, 5.6},
  };
  return ref;
}

namespace {

constexpr double kSlack = 1e-9;

// Counts k in [0, n] whose percentage lies strictly inside the 0.1 rounding band of `pct`.
std::vector<std::size_t> counts_for(double pct, std::size_t n) {
  std::vector<std::size_t> out;
  const double centre = pct * static_cast<double>(n) / 100.0;
  const long lo = std::max(0L, static_cast<long>(std::floor(centre)) - 2);
  const long hi = std::min(static_cast<long>(n), static_cast<long>(std::ceil(centre)) + 2);
  for (long k = lo; k <= hi; ++k)
    if (std::abs(100.0 * static_cast<double>(k) / static_cast<double>(n) - pct) < 0.05 - kSlack)
      out.push_back(static_cast<std::size_t>(k));
  return out;
}

// Total quality q <= cap with q / n strictly inside the 0.01 rounding band of `look`.
std::optional<long> quality_for(double look, std::size_t n, long cap) {
  const long centre = std::lround(look * static_cast<double>(n));
  for (long q = std::max(0L, centre - 2); q <= std::min(cap, centre + 2); ++q)
    if (std::abs(static_cast<double>(q) / static_cast<double>(n) - look) < 0.005 - kSlack) return q;
  return std::nullopt;
}

RunRecord run(const std::string& model, std::string task, Category category, PromptMode mode) {
  RunRecord r;
  r.task_id = std::move(task);
  r.model_id = model;
  r.category = category;
  r.mode = mode;
  r.renders = {"renders/front.png", "renders/side.png", "renders/top.png", "renders/perspective.png"};
  return r;
}

struct Block {
  std::size_t n, has_object, position, material, shape;
  long quality;  // spread over the first has_object runs
};

// Appends n rated runs realising `b`.
void emit(Store& s, const std::string& model, Category category, PromptMode mode, const Block& b,
          const std::string& prefix) {
  const std::size_t spread = b.has_object ? b.has_object : b.n;
  for (std::size_t i = 0; i < b.n; ++i) {
    RunRecord r = run(model, fmt::format("{}{:04}", prefix, i), category, mode);
    AnnotationRecord a;
    a.id = s.annotations.size() + 1;
    a.annotator_id = "replay";
    a.task_id = r.task_id;
    a.model_id = model;
    a.mode = mode;
    a.has_object = i < b.has_object;
    a.position_correct = i < b.position;
    a.material_correct = i < b.material;
    a.shape_correct = i < b.shape;
    if (i < spread) {
      const long base = b.quality / static_cast<long>(spread);
      const long extra = static_cast<long>(i) < b.quality % static_cast<long>(spread) ? 1 : 0;
      a.visual_quality = static_cast<int>(base + extra);
    }
    s.records.push_back(std::move(r));
    s.annotations.push_back(std::move(a));
  }
}

[[noreturn]] void unreachable(const std::string& what) {
  throw std::logic_error(fmt::format("no synthetic store reproduces {}", what));
}

constexpr std::size_t kMaxRuns = 5000;

}  // namespace

Store main_store() {
  Store s;
  for (const auto& ref : main_reference()) {
    std::optional<Block> found;
    for (std::size_t n = 1; n <= kMaxRuns && !found; ++n) {
      for (std::size_t h : counts_for(ref.has_object, n)) {
        const auto p = counts_for(ref.position, n), m = counts_for(ref.material, n), sh = counts_for(ref.shape, n);
        if (p.empty() || m.empty() || sh.empty() || p.front() > h || m.front() > h || sh.front() > h) continue;
        const auto q = quality_for(ref.look, n, 10L * static_cast<long>(h));
        if (!q) continue;
        found = Block{n, h, p.front(), m.front(), sh.front(), *q};
        break;
      }
    }
    if (!found) unreachable(ref.model);
    emit(s, ref.model, Category::Symbolic, PromptMode::Baseline, *found, "main_");
  }
  return s;
}

Store category_store() {
  Store s;
  for (const auto& ref : category_reference())
    for (std::size_t c = 0; c < 3; ++c) {
      const auto [shape, look] = ref.cells[c];
      std::optional<Block> found;
      for (std::size_t n = 1; n <= kMaxRuns && !found; ++n) {
        const auto k = counts_for(shape, n);
        if (k.empty()) continue;
        if (const auto q = quality_for(look, n, 10L * static_cast<long>(n))) found = Block{n, n, k[0], k[0], k[0], *q};
      }
      if (!found) unreachable(fmt::format("{} {}", ref.model, to_string(kCategories[c])));
      emit(s, ref.model, kCategories[c], PromptMode::Baseline, *found, fmt::format("{}_", to_string(kCategories[c])));
    }
  return s;
}

Store ablation_store() {
  Store s;
  for (const auto& ref : ablation_reference()) {
    std::optional<std::array<std::size_t, 4>> found;  // nb, kb, ne, ke
    for (std::size_t total = 2; total <= 2 * 1000 && !found; ++total)
      for (std::size_t nb = 1; nb < total && !found; ++nb) {
        const std::size_t ne = total - nb;
        for (std::size_t kb : counts_for(ref.baseline, nb)) {
          for (std::size_t ke : counts_for(ref.extended, ne)) {
            const double delta = 100.0 * (static_cast<double>(ke) / static_cast<double>(ne) -
                                          static_cast<double>(kb) / static_cast<double>(nb));
            if (std::abs(delta - ref.delta) < 0.05 - kSlack) {
              found = std::array{nb, kb, ne, ke};
              break;
            }
          }
          if (found) break;
        }
      }
    if (!found) unreachable(ref.model);
    const auto [nb, kb, ne, ke] = *found;
    emit(s, ref.model, Category::Artistic, PromptMode::Baseline, {nb, kb, kb, kb, kb, 0}, "art_");
    emit(s, ref.model, Category::Artistic, PromptMode::Extended, {ne, ke, ke, ke, ke, 0}, "art_");
  }
  return s;
}

Store error_store() {
  const ErrorRef& ref = error_reference();
  Store s;
  auto add_model = [&](const std::string& model, const std::array<std::size_t, 4>& counts, std::size_t n) {
    std::size_t i = 0;
    for (std::size_t e = 0; e < 4; ++e)
      for (std::size_t c = 0; c < counts[e]; ++c, ++i) {
        RunRecord r = run(model, fmt::format("sub_{:05}", i), Category::Symbolic, PromptMode::Baseline);
        r.outcome.status = kErrorRows[e] == program::ErrorClass::TimeoutOrCrash ? program::Status::TimedOut
                                                                               : program::Status::Failed;
        r.outcome.error = kErrorRows[e];
        if (kErrorRows[e] == program::ErrorClass::SyntaxError) r.renders.clear();
        s.records.push_back(std::move(r));
      }
    for (; i < n; ++i) s.records.push_back(run(model, fmt::format("sub_{:05}", i), Category::Symbolic, PromptMode::Baseline));
  };
  std::array<std::size_t, 4> rest = ref.totals;
  for (std::size_t m = 0; m < ref.models.size(); ++m) {
    std::array<std::size_t, 4> counts{};
    std::size_t failed = 0;
    for (std::size_t e = 0; e < 4; ++e) {
      counts[e] = ref.counts[e][m];
      rest[e] -= counts[e];
      failed += counts[e];
    }
    std::size_t n = failed;
    while (n <= kMaxRuns && (n == 0 || std::abs(100.0 * static_cast<double>(failed) / static_cast<double>(n) -
                                                ref.error_rate[m]) >= 0.05 - kSlack))
      ++n;
    if (n > kMaxRuns) unreachable(ref.models[m]);
    add_model(ref.models[m], counts, n);
  }
  // The remaining models are not broken out; 1000 submissions each for five models.
  add_model("others", rest, 5000);
  return s;
}

}  // namespace vf::bench::replay
