#include "vf/service/service.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <httplib.h>
#include <json.hpp>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "vf/geometry/errors.hpp"
#include "vf/program/program.hpp"

namespace vf::service {

namespace fs = std::filesystem;
using json = nlohmann::json;
using bench::AnnotationRecord;
using bench::RunRecord;

namespace {

constexpr const char* kViews[] = {"front", "side", "top", "perspective"};

struct RunEntry {
  RunRecord record;
  std::vector<std::string> urls;  // empty unless all four renders are on disk
};

struct RunIndex {
  std::vector<RunEntry> runs;  // (mode, model, task) order
  std::map<RunKey, std::size_t> by_key;
  std::vector<RunRecord> records;
};

std::string url_encode(std::string_view s) {
  std::string out;
  for (const unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '/' || c == '~') out += static_cast<char>(c);
    else out += fmt::format("%{:02X}", c);
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoFailure(fmt::format("cannot read '{}'", p.string()));
  return {std::istreambuf_iterator<char>(in), {}};
}

std::shared_ptr<const RunIndex> index_runs(const fs::path& root) {
  auto index = std::make_shared<RunIndex>();
  if (fs::exists(root)) index->records = bench::load_records(root);
  for (const auto& r : index->records) {
    RunEntry e{r, {}};
    if (r.has_renders()) {
      const fs::path sub = bench::run_subdir(r.mode, r.model_id, r.task_id);
      for (const auto& rel : r.renders) {
        const fs::path file = root / sub / rel;
        if (!fs::is_regular_file(file)) {
          e.urls.clear();
          break;
        }
        e.urls.push_back(fmt::format("/renders/{}?v={:016x}", url_encode((sub / rel).generic_string()),
                                     program::fnv1a64(read_file(file))));
      }
    }
    index->by_key[key_of(r)] = index->runs.size();
    index->runs.push_back(std::move(e));
  }
  return index;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json annotation_json(const AnnotationRecord& a) { return json::parse(bench::annotation_to_json(a)); }

}  // namespace

ServiceConfig config_from_env(ServiceConfig base) {
  if (const char* v = std::getenv("VF_DATA_DIR"); v && *v) base.data_dir = v;
  if (const char* v = std::getenv("VF_TOKEN")) base.token = v;
  if (const char* v = std::getenv("VF_PORT"); v && *v) base.port = std::stoi(v);
  return base;
}

struct EvalService::Impl {
  ServiceConfig config;
  fs::path runs_dir;
  httplib::Server server;
  std::unique_ptr<AnnotationStore> store;
  std::string store_error;
  mutable std::mutex runs_mutex;
  std::shared_ptr<const RunIndex> runs;
  std::thread thread;

  std::shared_ptr<const RunIndex> current_runs() const {
    const std::lock_guard lock(runs_mutex);
    return runs;
  }

  bool authorized(const httplib::Request& req) const {
    if (config.token.empty()) return true;
    if (req.get_header_value("X-VF-Token") == config.token) return true;
    if (req.get_header_value("Authorization") == "Bearer " + config.token) return true;
    return req.get_param_value("token") == config.token;
  }

  bool store_ready(httplib::Response& res) const {
    if (store) return true;
    send_error(res, 503, "annotation store unavailable: " + store_error);
    return false;
  }

  void routes();
  void next_item(const httplib::Request& req, httplib::Response& res);
  void post_annotation(const httplib::Request& req, httplib::Response& res);
  void aggregate(const httplib::Request& req, httplib::Response& res);
  void render(const httplib::Request& req, httplib::Response& res);
};

void EvalService::Impl::routes() {
  server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    if (req.path == "/health" || req.path.starts_with("/ui") || authorized(req))
      return httplib::Server::HandlerResponse::Unhandled;
    send_error(res, 401, "missing or wrong token");
    return httplib::Server::HandlerResponse::Handled;
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const StoreUnavailable& e) {
      send_error(res, 503, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  });
  server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"store", store != nullptr}, {"runs", current_runs()->runs.size()}});
  });
  server.Get("/queue/next", [this](const auto& req, auto& res) { next_item(req, res); });
  server.Post("/annotations", [this](const auto& req, auto& res) { post_annotation(req, res); });
  server.Get("/annotations", [this](const httplib::Request& req, httplib::Response& res) {
    if (!store_ready(res)) return;
    const std::string who = req.get_param_value("annotator_id");
    json out = json::array();
    for (const auto& a : *store->snapshot())
      if (who.empty() || a.annotator_id == who) out.push_back(annotation_json(a));
    send_json(res, 200, out);
  });
  server.Get(R"(/annotations/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (!store_ready(res)) return;
    const std::uint64_t id = std::stoull(req.matches[1].str());
    for (const auto& a : *store->snapshot())
      if (a.id == id) return send_json(res, 200, annotation_json(a));
    send_error(res, 404, fmt::format("no annotation {}", id));
  });
  server.Get("/aggregate", [this](const auto& req, auto& res) { aggregate(req, res); });
  server.Get("/renders/(.+)", [this](const auto& req, auto& res) { render(req, res); });
  if (!config.static_dir.empty() && fs::is_directory(config.static_dir))
    server.set_mount_point("/ui", config.static_dir.string());
}

void EvalService::Impl::next_item(const httplib::Request& req, httplib::Response& res) {
  if (!store_ready(res)) return;
  const std::string who = req.get_param_value("annotator_id");
  if (who.empty()) return send_error(res, 400, "annotator_id is required");
  const auto index = current_runs();
  const auto notes = store->snapshot();
  std::map<RunKey, std::size_t> count;
  std::set<RunKey> mine;
  for (const auto& a : *notes) {
    ++count[key_of(a)];
    if (a.annotator_id == who) mine.insert(key_of(a));
  }
  const RunEntry* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& e : index->runs) {
    if (e.urls.empty()) continue;
    const RunKey k = key_of(e.record);
    if (mine.contains(k)) continue;
    const std::size_t c = count[k];
    if (!best || c < best_count) {
      best = &e;
      best_count = c;
    }
  }
  if (!best) {
    res.status = 204;
    return;
  }
  const RunRecord& r = best->record;
  json renders = json::array();
  for (std::size_t v = 0; v < 4; ++v) renders.push_back({{"view", kViews[v]}, {"url", best->urls[v]}});
  send_json(res, 200,
            {{"task_id", r.task_id},
             {"model_id", r.model_id},
             {"mode", bench::to_string(r.mode)},
             {"category", bench::to_string(r.category)},
             {"subcategory", r.subcategory},
             {"difficulty", bench::to_string(r.difficulty)},
             {"prompt", r.prompt},
             {"status", program::to_string(r.outcome.status)},
             {"annotations", best_count},
             {"renders", renders}});
}

void EvalService::Impl::post_annotation(const httplib::Request& req, httplib::Response& res) {
  if (!store_ready(res)) return;
  AnnotationRecord a;
  try {
    a = bench::annotation_from_json(req.body);
    bench::validate(a);
  } catch (const bench::InvalidAnnotation& e) {
    return send_error(res, 400, e.what());
  }
  const auto index = current_runs();
  const auto it = index->by_key.find(key_of(a));
  if (it == index->by_key.end())
    return send_error(res, 404, fmt::format("no run for task '{}', model '{}'", a.task_id, a.model_id));
  if (index->runs[it->second].urls.empty()) return send_error(res, 400, "run has no renders to rate");
  const auto put = store->put(std::move(a));
  send_json(res, put.created ? 201 : 200, {{"id", put.id}});
}

void EvalService::Impl::aggregate(const httplib::Request& req, httplib::Response& res) {
  if (!store_ready(res)) return;
  const std::string format = req.has_param("format") ? req.get_param_value("format") : "text";
  if (format != "csv" && format != "text") return send_error(res, 400, "format must be csv or text");
  try {
    const auto results = bench::aggregate(current_runs()->records, *store->snapshot());
    if (format == "csv") res.set_content(bench::to_csv(results), "text/csv");
    else res.set_content(bench::to_text(results), "text/plain; charset=utf-8");
  } catch (const bench::DanglingAnnotation& e) {
    send_error(res, 409, e.what());
  }
}

void EvalService::Impl::render(const httplib::Request& req, httplib::Response& res) {
  const fs::path rel = fs::path(req.matches[1].str()).lexically_normal();
  if (rel.is_absolute() || rel.empty() || *rel.begin() == ".." || rel.extension() != ".png")
    return send_error(res, 404, "not found");
  const fs::path file = runs_dir / rel;
  if (!fs::is_regular_file(file)) return send_error(res, 404, "not found");
  res.set_content(read_file(file), "image/png");
  if (req.has_param("v")) res.set_header("Cache-Control", "public, max-age=31536000, immutable");
}

EvalService::EvalService(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  impl_->runs_dir = impl_->config.runs_dir.empty() ? impl_->config.data_dir / "runs" : impl_->config.runs_dir;
  try {
    impl_->store = std::make_unique<AnnotationStore>(impl_->config.data_dir / "annotations",
                                                     impl_->config.compact_every);
  } catch (const StoreUnavailable& e) {
    impl_->store_error = e.what();
  }
  reload_runs();
  impl_->routes();
}

EvalService::~EvalService() { stop(); }

void EvalService::reload_runs() {
  auto index = index_runs(impl_->runs_dir);
  const std::lock_guard lock(impl_->runs_mutex);
  impl_->runs = std::move(index);
}

std::size_t EvalService::run_count() const { return impl_->current_runs()->runs.size(); }

int EvalService::start() {
  auto& s = impl_->server;
  int port = impl_->config.port;
  if (port == 0) port = s.bind_to_any_port(impl_->config.host);
  else if (!s.bind_to_port(impl_->config.host, port)) port = -1;
  if (port < 0) throw IoFailure(fmt::format("cannot bind {}:{}", impl_->config.host, impl_->config.port));
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
  return port;
}

void EvalService::run() {
  if (!impl_->server.listen(impl_->config.host, impl_->config.port))
    throw IoFailure(fmt::format("cannot listen on {}:{}", impl_->config.host, impl_->config.port));
}

void EvalService::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace vf::service
