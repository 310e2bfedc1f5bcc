#include "vf/bench/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "vf/geometry/errors.hpp"
#include "vf/mesher/mesh.hpp"
#include "vf/render/render.hpp"
#include "vf/stamp/vxg_io.hpp"

namespace vf::bench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now())));
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoFailure(fmt::format("cannot write '{}'", path.string()));
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
Vec3 vec(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

std::string material_name(MaterialId id) {
  const Material* m = Palette::standard().find(id);
  return m ? m->name : fmt::format("material_{}", id);
}

json geometry_json(const GeometrySummary& g) {
  json materials = json::array();
  for (const auto& [id, count] : g.per_material)
    materials.push_back({{"id", id}, {"name", material_name(id)}, {"count", count}});
  const double cell = g.grid.spacing * g.grid.spacing * g.grid.spacing;
  return {
      {"occupied", g.occupied},
      {"volume", static_cast<double>(g.occupied) * cell},
      {"bounds", g.bounds.empty() ? json(nullptr) : json{{"min", vec(g.bounds.min)}, {"max", vec(g.bounds.max)}}},
      {"centroid", vec(g.centroid)},
      {"materials", materials},
      {"layer", g.layer},
      {"grid",
       {{"origin", vec(g.grid.origin)}, {"dims", g.grid.dims}, {"spacing", g.grid.spacing}}},
  };
}

GeometrySummary geometry_from_json(const json& j) {
  GeometrySummary g;
  g.occupied = j.at("occupied").get<std::size_t>();
  if (!j.at("bounds").is_null()) g.bounds = Aabb{vec(j["bounds"].at("min")), vec(j["bounds"].at("max"))};
  g.centroid = vec(j.at("centroid"));
  for (const auto& m : j.at("materials")) g.per_material[m.at("id").get<MaterialId>()] = m.at("count").get<std::size_t>();
  g.layer = j.at("layer").get<int>();
  g.grid.origin = vec(j.at("grid").at("origin"));
  g.grid.dims = j.at("grid").at("dims").get<std::array<int, 3>>();
  g.grid.spacing = j.at("grid").at("spacing").get<double>();
  return g;
}

}  // namespace

std::vector<CheckResult> check_ground_truth(const GroundTruth& truth, const GeometrySummary& g) {
  std::vector<CheckResult> out;
  if (truth.occupied) {
    const auto [lo, hi] = *truth.occupied;
    out.push_back({"occupied", g.occupied >= lo && g.occupied <= hi,
                   fmt::format("{} occupied, expected {}..{}", g.occupied, lo, hi)});
  }
  if (truth.bbox) {
    const Aabb& want = *truth.bbox;
    bool ok = !g.bounds.empty();
    for (int a = 0; ok && a < 3; ++a)
      ok = std::abs(g.bounds.min[a] - want.min[a]) <= truth.bbox_tolerance &&
           std::abs(g.bounds.max[a] - want.max[a]) <= truth.bbox_tolerance;
    out.push_back({"bbox", ok,
                   g.bounds.empty() ? std::string("nothing occupied")
                                    : fmt::format("bounds ({}, {}, {})..({}, {}, {})", g.bounds.min.x, g.bounds.min.y,
                                                  g.bounds.min.z, g.bounds.max.x, g.bounds.max.y, g.bounds.max.z)});
  }
  if (!truth.materials.empty()) {
    std::set<std::string> got, want(truth.materials.begin(), truth.materials.end());
    for (const auto& [id, count] : g.per_material) got.insert(material_name(id));
    out.push_back({"materials", got == want, fmt::format("materials {{{}}}", fmt::join(got, ", "))});
  }
  return out;
}

fs::path run_subdir(PromptMode mode, const std::string& model_id, const std::string& task_id) {
  return fs::path(std::string(to_string(mode))) / model_id / task_id;
}

RunRecord run_task(const TaskSpec& task, const std::string& submission, const std::string& model_id,
                   const fs::path& out_root, const PipelineOptions& options) {
  RunRecord r;
  r.task_id = task.id;
  r.model_id = model_id;
  r.category = task.category;
  r.difficulty = task.difficulty;
  r.subcategory = task.subcategory;
  r.prompt = task.prompt;
  r.mode = options.mode;
  r.started_at = utc_now();

  const fs::path dir = out_root / run_subdir(options.mode, model_id, task.id);
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  write_text(dir / "program.prog", submission);

  program::ExecutionLimits limits;
  limits.timeout = options.timeout;
  limits.op_budget = options.op_budget;
  limits.grid = task.grid.value_or(GridSpec::default_scene());
  limits.execution = options.execution;
  r.outcome = program::run_source(submission, limits);
  for (const auto& v : r.outcome.violations) r.violations.push_back(fmt::format("{}: {}", to_string(v.kind), v.message));

  if (r.outcome.error != program::ErrorClass::SyntaxError) {
    // An interrupted kernel leaves a partial grid; it is replaced by an empty one.
    std::shared_ptr<const Stamp> scene = r.outcome.stamp;
    if (!scene || r.outcome.status == program::Status::TimedOut) scene = std::make_shared<Stamp>(limits.grid);
    write_vxg(*scene, dir / "grid.vxg");
    r.geometry = export_geometry(*scene);
    r.checks = check_ground_truth(task.truth, *r.geometry);
    write_text(dir / "geometry.json", geometry_json(*r.geometry).dump(2) + "\n");
    if (r.geometry->occupied > 0) {
      try {
        TriangleMesh mesh = marching_cubes(*scene, r.outcome.mesh.iso_level);
        if (r.outcome.mesh.smooth_iterations > 0)
          mesh = laplacian_smooth(mesh, r.outcome.mesh.smooth_iterations, r.outcome.mesh.smooth_lambda);
        write_obj(mesh, dir / "mesh.obj");
      } catch (const EmptySurface&) {
      }
    }
    RenderOptions ro;
    ro.execution = options.execution;
    const auto set = render_canonical(*scene, options.render_width, options.render_height, ro);
    for (const auto& p : write_render_set(set, dir / "renders", task.id, model_id, ImageFormat::Png))
      r.renders.push_back(fs::relative(p, dir).generic_string());
  }

  std::string logs;
  for (const auto& line : r.outcome.logs) logs += line + "\n";
  write_text(dir / "logs.txt", logs);
  write_text(dir / "outcome.v1", program::format_outcome(r.outcome));
  r.finished_at = utc_now();
  write_text(dir / "record.json", record_to_json(r));
  return r;
}

std::vector<RunRecord> run_batch(const std::vector<TaskSpec>& tasks, const fs::path& submissions,
                                 const fs::path& out_root, const PipelineOptions& options, int jobs) {
  std::vector<std::string> models;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(submissions, ec))
    if (entry.is_directory()) models.push_back(entry.path().filename().string());
  if (ec) throw IoFailure(fmt::format("cannot list '{}': {}", submissions.string(), ec.message()));
  std::sort(models.begin(), models.end());

  struct Job {
    const TaskSpec* task;
    std::string model;
  };
  std::vector<Job> work;
  for (const auto& m : models)
    for (const auto& t : tasks) work.push_back({&t, m});

  std::vector<RunRecord> out(work.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      try {
        const fs::path file = submissions / work[i].model / (work[i].task->id + ".prog");
        const std::string text = fs::exists(file) ? read_text(file) : std::string();
        out[i] = run_task(*work[i].task, text, work[i].model, out_root, options);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::string record_to_json(const RunRecord& r) {
  const auto& o = r.outcome;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json j = {
      {"format", "record.v1"},
      {"task_id", r.task_id},
      {"model_id", r.model_id},
      {"category", to_string(r.category)},
      {"difficulty", to_string(r.difficulty)},
      {"subcategory", r.subcategory},
      {"prompt", r.prompt},
      {"mode", to_string(r.mode)},
      {"outcome",
       {{"status", program::to_string(o.status)},
        {"error", program::to_string(o.error)},
        {"error_message", o.error_message},
        {"error_line", o.error_pos.line},
        {"error_column", o.error_pos.column},
        {"wall_seconds", o.wall_seconds},
        {"ops_used", o.ops_used},
        {"calls_executed", o.calls_executed}}},
      {"metrics",
       {{"execution_success", r.execution_success()},
        {"api_compliant", r.violations.empty()},
        {"violation_count", r.violations.size()}}},
      {"violations", r.violations},
      {"renders", r.renders},
      {"geometry", r.geometry ? geometry_json(*r.geometry) : json(nullptr)},
      {"checks", checks},
      {"started_at", r.started_at},
      {"finished_at", r.finished_at},
  };
  return j.dump(2) + "\n";
}

RunRecord record_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("format", "") != "record.v1") throw std::invalid_argument("not a record.v1 document");
  RunRecord r;
  r.task_id = j.at("task_id").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.category = parse_category(j.at("category").get<std::string>());
  r.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
  r.subcategory = j.value("subcategory", "");
  r.prompt = j.value("prompt", "");
  r.mode = parse_prompt_mode(j.at("mode").get<std::string>());
  const json& o = j.at("outcome");
  r.outcome.status = program::parse_status(o.at("status").get<std::string>());
  r.outcome.error = program::parse_error_class(o.at("error").get<std::string>());
  r.outcome.error_message = o.at("error_message").get<std::string>();
  r.outcome.error_pos = {o.at("error_line").get<int>(), o.at("error_column").get<int>()};
  r.outcome.wall_seconds = o.at("wall_seconds").get<double>();
  r.outcome.ops_used = o.at("ops_used").get<std::uint64_t>();
  r.outcome.calls_executed = o.at("calls_executed").get<std::size_t>();
  r.violations = j.at("violations").get<std::vector<std::string>>();
  r.renders = j.at("renders").get<std::vector<std::string>>();
  if (!j.at("geometry").is_null()) r.geometry = geometry_from_json(j["geometry"]);
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
  r.started_at = j.at("started_at").get<std::string>();
  r.finished_at = j.at("finished_at").get<std::string>();
  return r;
}

std::vector<RunRecord> load_records(const fs::path& root) {
  std::vector<RunRecord> out;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoFailure(fmt::format("'{}' is not a directory", root.string()));
  for (auto it = fs::recursive_directory_iterator(root, ec); it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw IoFailure(fmt::format("cannot list '{}': {}", root.string(), ec.message()));
    if (it->path().filename() != "record.json") continue;
    try {
      out.push_back(record_from_json(read_text(it->path())));
    } catch (const IoFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw IoFailure(fmt::format("bad record '{}': {}", it->path().string(), e.what()));
    }
  }
  std::sort(out.begin(), out.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tuple(a.mode, a.model_id, a.task_id) < std::tuple(b.mode, b.model_id, b.task_id);
  });
  return out;
}

}  // namespace vf::bench
