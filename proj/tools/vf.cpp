// vf: command-line entry point for the benchmark pipeline and annotation service.
#include <CLI11.hpp>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include <fmt/format.h>

#include "vf/bench/aggregate.hpp"
#include "vf/bench/pipeline.hpp"
#include "vf/bench/prompt.hpp"
#include "vf/bench/task.hpp"
#include "vf/geometry/errors.hpp"
#include "vf/program/compliance.hpp"
#include "vf/service/service.hpp"

namespace fs = std::filesystem;
using namespace vf;

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoFailure(fmt::format("cannot read '{}'", p.string()));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!(out << text)) throw IoFailure(fmt::format("cannot write '{}'", p.string()));
}

/// A store directory, or a file holding one JSON annotation per line (or a JSON array).
std::vector<bench::AnnotationRecord> read_annotations(const fs::path& p) {
  if (p.empty()) return {};
  if (fs::is_directory(p)) {
    try {
      return service::AnnotationStore::read(p);
    } catch (const service::StoreUnavailable& e) {
      throw IoFailure(e.what());
    }
  }
  const std::string text = read_text(p);
  std::vector<bench::AnnotationRecord> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    const auto all = nlohmann::json::parse(text, nullptr, false);
    if (all.is_discarded()) throw bench::InvalidAnnotation("malformed JSON array");
    for (const auto& j : all) out.push_back(bench::annotation_from_json(j.dump()));
    return out;
  }
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(bench::annotation_from_json(line));
  return out;
}

const bench::TaskSpec& find_task(const std::vector<bench::TaskSpec>& tasks, const std::string& id) {
  for (const auto& t : tasks)
    if (t.id == id) return t;
  throw std::invalid_argument(fmt::format("no task '{}'", id));
}

service::EvalService* g_service = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voxel scene benchmark: execute, render, score and aggregate generated programs."};
  app.require_subcommand(1);

  // run
  std::string tasks_file, submissions, out_dir = "runs", mode_name = "baseline", model = "reference", one_task,
                          program_file;
  int jobs = 1, width = 1920, height = 1080;
  double timeout = 60;
  bool serial = false;
  auto* run = app.add_subcommand("run", "Run submissions through the pipeline");
  run->add_option("--tasks", tasks_file, "tasks.v1 file")->required()->check(CLI::ExistingFile);
  run->add_option("--submissions", submissions, "Directory of <model>/<task>.prog");
  run->add_option("--program", program_file, "Single program file (with --task)")->check(CLI::ExistingFile);
  run->add_option("--task", one_task, "Task id for --program");
  run->add_option("--model", model, "Model id for --program");
  run->add_option("--out", out_dir, "Output root")->capture_default_str();
  run->add_option("--mode", mode_name, "Prompt mode: baseline or extended")->capture_default_str();
  run->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
  run->add_option("--timeout", timeout, "Wall-clock limit per run (s)")->capture_default_str();
  run->add_option("--width", width, "Render width")->capture_default_str();
  run->add_option("--height", height, "Render height")->capture_default_str();
  run->add_flag("--serial", serial, "Use the serial reference kernels");

  // aggregate
  std::string runs_dir, annotations, format = "table";
  auto* agg = app.add_subcommand("aggregate", "Print result tables from runs and annotations");
  agg->add_option("--runs", runs_dir, "Run output root")->required();
  agg->add_option("--annotations", annotations, "Annotation store directory or JSONL file");
  agg->add_option("--format", format, "csv or table")->capture_default_str()->check(CLI::IsMember({"csv", "table", "text"}));

  // seed
  std::string seed_out = "tasks.v1", programs_dir;
  std::uint64_t seed = 0;
  auto* seed_cmd = app.add_subcommand("seed", "Write the seed dataset");
  seed_cmd->add_option("--out", seed_out, "tasks.v1 output")->capture_default_str();
  seed_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
  seed_cmd->add_option("--programs", programs_dir, "Also write reference programs to <dir>/reference/<task>.prog");

  // serve
  service::ServiceConfig svc = service::config_from_env();
  auto* serve = app.add_subcommand("serve", "Run the annotation service (VF_DATA_DIR, VF_TOKEN, VF_PORT)");
  serve->add_option("--data", svc.data_dir, "Data directory")->capture_default_str();
  serve->add_option("--runs", svc.runs_dir, "Runs directory (default <data>/runs)");
  serve->add_option("--static", svc.static_dir, "Annotation UI directory, served under /ui");
  serve->add_option("--host", svc.host)->capture_default_str();
  serve->add_option("--port", svc.port)->capture_default_str();

  // prompt
  auto* prompt = app.add_subcommand("prompt", "Print the prompt pack for one task");
  prompt->add_option("--tasks", tasks_file, "tasks.v1 file")->required()->check(CLI::ExistingFile);
  prompt->add_option("--task", one_task, "Task id")->required();
  prompt->add_option("--mode", mode_name, "baseline or extended")->capture_default_str();

  // check
  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "Parse and check programs against the API");
  check->add_option("programs", check_files, "Program files")->required()->check(CLI::ExistingFile);

  app.add_subcommand("reference", "Print the API reference");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto tasks = bench::load_tasks(tasks_file);
      bench::PipelineOptions o;
      o.mode = bench::parse_prompt_mode(mode_name);
      o.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
      o.render_width = width;
      o.render_height = height;
      if (serial) o.execution = kernels::Execution::Serial;
      std::vector<bench::RunRecord> records;
      if (!program_file.empty()) {
        if (one_task.empty()) throw std::invalid_argument("--program needs --task");
        records.push_back(bench::run_task(find_task(tasks, one_task), read_text(program_file), model, out_dir, o));
      } else {
        if (submissions.empty()) throw std::invalid_argument("either --submissions or --program is required");
        records = bench::run_batch(tasks, submissions, out_dir, o, jobs);
      }
      std::size_t ok = 0;
      for (const auto& r : records) {
        ok += r.execution_success();
        std::string checks;
        for (const auto& c : r.checks) checks += fmt::format(" {}={}", c.name, c.passed ? "ok" : "FAIL");
        fmt::print("{:<12} {:<28} {:<8} {:<20} {:6.2f}s{}\n", r.model_id, r.task_id,
                   program::to_string(r.outcome.status), program::to_string(r.outcome.error),
                   r.outcome.wall_seconds, checks);
      }
      fmt::print("{} of {} runs succeeded; artifacts in {}\n", ok, records.size(), out_dir);
    } else if (*agg) {
      const auto results = bench::aggregate(bench::load_records(runs_dir), read_annotations(annotations));
      std::cout << (format == "csv" ? bench::to_csv(results) : bench::to_text(results));
    } else if (*seed_cmd) {
      const auto tasks = bench::seed_dataset(seed);
      bench::save_tasks(seed_out, tasks);
      if (!programs_dir.empty()) {
        for (const auto& e : bench::worked_examples())
          write_text(fs::path(programs_dir) / "reference" / (e.task.id + ".prog"), e.program);
        for (const auto& e : bench::generate_sphere_tasks(seed))
          write_text(fs::path(programs_dir) / "reference" / (e.task.id + ".prog"), e.program);
      }
      fmt::print("wrote {} tasks to {}\n", tasks.size(), seed_out);
    } else if (*serve) {
      service::EvalService service(svc);
      g_service = &service;
      std::signal(SIGINT, [](int) { g_service->stop(); });
      std::signal(SIGTERM, [](int) { g_service->stop(); });
      fmt::print("serving {} runs on http://{}:{}/\n", service.run_count(), svc.host, svc.port);
      std::fflush(stdout);
      service.run();
    } else if (*prompt) {
      const auto tasks = bench::load_tasks(tasks_file);
      std::cout << bench::assemble_prompt(find_task(tasks, one_task), bench::parse_prompt_mode(mode_name)).text();
    } else if (*check) {
      for (const auto& file : check_files) {
        try {
          const auto program = program::parse_program(read_text(file));
          const auto violations = program::check_compliance(program);
          if (violations.empty()) fmt::print("{}: compliant ({} calls)\n", file, program.calls.size());
          for (const auto& v : violations)
            fmt::print("{}:{}:{}: {}: {}\n", file, v.pos.line, v.pos.column, program::to_string(v.kind), v.message);
        } catch (const program::ParseError& e) {
          fmt::print("{}:{}:{}: SyntaxError: {}\n", file, e.pos().line, e.pos().column, e.detail());
        }
      }
    } else {
      std::cout << program::ApiRegistry::standard().reference();
    }
  } catch (const IoFailure& e) {
    fmt::print(stderr, "vf: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    // Bad arguments or input files; program faults never reach here.
    fmt::print(stderr, "vf: {}\n", e.what());
    return 1;
  }
  return 0;
}
