#include "vf/program/interpreter.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <variant>

#include <fmt/format.h>

#include "vf/geometry/errors.hpp"
#include "vf/stamp/material.hpp"
#include "vf/stamp/stamp_ops.hpp"

namespace vf::program {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Success: return "Success";
    case Status::Failed: return "Failed";
    case Status::TimedOut: return "TimedOut";
  }
  return "?";
}

std::string_view to_string(ErrorClass error) {
  switch (error) {
    case ErrorClass::None: return "None";
    case ErrorClass::InvalidApiAttribute: return "InvalidApiAttribute";
    case ErrorClass::TimeoutOrCrash: return "TimeoutOrCrash";
    case ErrorClass::TypeUnpackingError: return "TypeUnpackingError";
    case ErrorClass::SyntaxError: return "SyntaxError";
  }
  return "?";
}

Status parse_status(std::string_view text) {
  for (Status s : {Status::Success, Status::Failed, Status::TimedOut})
    if (to_string(s) == text) return s;
  throw std::invalid_argument(fmt::format("unknown status '{}'", text));
}

ErrorClass parse_error_class(std::string_view text) {
  for (ErrorClass e : {ErrorClass::None, ErrorClass::InvalidApiAttribute, ErrorClass::TimeoutOrCrash,
                       ErrorClass::TypeUnpackingError, ErrorClass::SyntaxError})
    if (to_string(e) == text) return e;
  throw std::invalid_argument(fmt::format("unknown error class '{}'", text));
}

namespace {

using Clock = std::chrono::steady_clock;

struct StampHandle {};
struct MeshHandle {};
struct EnumValue {
  std::string type;
  std::string member;
};
struct RtValue;
struct Sequence {
  std::vector<RtValue> items;
};

struct RtValue {
  std::variant<double, bool, std::string, Vec3, Transform, ShapePtr, StampHandle, MeshHandle, EnumValue, Sequence> v;
};

std::string_view type_name(const RtValue& r) {
  static constexpr std::string_view names[] = {"float", "bool", "str", "FVector", "FTransform",
                                               "ShapeNode", "Stamp", "SurfaceMesh", "enum", "sequence"};
  return names[r.v.index()];
}

class TimedOutSignal : public std::runtime_error {
 public:
  TimedOutSignal() : std::runtime_error("wall-clock timeout exceeded") {}
};

class Interpreter {
 public:
  Interpreter(const ExecutionLimits& limits, const ApiRegistry& registry, ExecutionOutcome& out)
      : limits_(limits), reg_(registry), out_(out), start_(Clock::now()) {
    stop_ = [this] { return expired(); };
  }

  void run(const SceneProgram& program) {
    scene_ = std::make_shared<Stamp>(limits_.grid, 0, limits_.voxel_budget);
    out_.stamp = scene_;
    scope_[std::string(kSceneStamp)] = RtValue{StampHandle{}};
    for (const Call& call : program.calls) {
      if (expired()) throw TimedOutSignal();
      const RtValue result = invoke(call);
      bind(call, result);
      ++out_.calls_executed;
    }
  }

  bool expired() const { return Clock::now() - start_ >= limits_.timeout; }
  Clock::time_point start() const { return start_; }

 private:
  [[noreturn]] static void fail(ErrorClass e, SourcePos pos, const std::string& message) {
    throw ProgramError(e, pos, message);
  }

  void charge(std::uint64_t ops, SourcePos pos) {
    if (out_.ops_used + ops > limits_.op_budget)
      fail(ErrorClass::TimeoutOrCrash, pos,
           fmt::format("operation budget exceeded: {} + {} > {}", out_.ops_used, ops, limits_.op_budget));
    out_.ops_used += ops;
  }

  std::uint64_t stamp_cost(const ShapeNode& node) const {
    const std::size_t voxels = scene_->spec().voxel_count();
    return static_cast<std::uint64_t>(node.evaluation_cost()) * ((voxels + kBrickVoxels - 1) / kBrickVoxels);
  }

  void bind(const Call& call, const RtValue& result) {
    if (call.targets.empty()) return;
    if (call.targets.size() == 1) {
      scope_[call.targets[0]] = result;
      return;
    }
    const Vec3* v = std::get_if<Vec3>(&result.v);
    if (!v || call.targets.size() != 3)
      fail(ErrorClass::TypeUnpackingError, call.pos,
           fmt::format("cannot unpack {} into {} names", type_name(result), call.targets.size()));
    for (int a = 0; a < 3; ++a) scope_[call.targets[static_cast<std::size_t>(a)]] = RtValue{(*v)[a]};
  }

  RtValue eval(const Value& value) {
    struct Visitor {
      Interpreter& self;
      const Value& value;
      RtValue operator()(double d) const { return {d}; }
      RtValue operator()(bool b) const { return {b}; }
      RtValue operator()(const std::string& s) const { return {s}; }
      RtValue operator()(const Identifier& id) const {
        const auto it = self.scope_.find(id.name);
        if (it == self.scope_.end())
          fail(ErrorClass::InvalidApiAttribute, value.pos, fmt::format("name '{}' is not defined", id.name));
        return it->second;
      }
      RtValue operator()(const EnumToken& e) const {
        const EnumSchema* schema = self.reg_.enumeration(e.type);
        if (!schema) fail(ErrorClass::InvalidApiAttribute, value.pos, fmt::format("unknown enum '{}'", e.type));
        if (!schema->contains(e.member))
          fail(ErrorClass::InvalidApiAttribute, value.pos,
               fmt::format("'{}' has no member '{}'", e.type, e.member));
        return {EnumValue{e.type, e.member}};
      }
      RtValue operator()(const Tuple& t) const { return seq(t.items); }
      RtValue operator()(const List& l) const { return seq(l.items); }
      RtValue operator()(const NestedCall& c) const { return self.invoke(*c.call); }
      RtValue seq(const std::vector<Value>& items) const {
        Sequence s;
        for (const auto& item : items) s.items.push_back(self.eval(item));
        return {std::move(s)};
      }
    };
    return std::visit(Visitor{*this, value}, value.data);
  }

  // --- coercion to parameter types; mismatches are unpacking errors -------

  [[noreturn]] static void mismatch(const ParamSchema& p, SourcePos pos, const RtValue& got) {
    fail(ErrorClass::TypeUnpackingError, pos,
         fmt::format("'{}' expects {}, got {}", p.name, to_string(p.type), type_name(got)));
  }

  static double number(const ParamSchema& p, SourcePos pos, const RtValue& r) {
    const double* d = std::get_if<double>(&r.v);
    if (!d) mismatch(p, pos, r);
    return *d;
  }

  static Vec3 vec3(const ParamSchema& p, SourcePos pos, const RtValue& r) {
    if (const Vec3* v = std::get_if<Vec3>(&r.v)) return *v;
    const Sequence* s = std::get_if<Sequence>(&r.v);
    if (!s) mismatch(p, pos, r);
    if (s->items.size() != 3)
      fail(ErrorClass::TypeUnpackingError, pos,
           fmt::format("'{}' expects 3 components, got {}", p.name, s->items.size()));
    Vec3 out;
    for (int a = 0; a < 3; ++a) out[a] = number(p, pos, s->items[static_cast<std::size_t>(a)]);
    return out;
  }

  static std::vector<ShapePtr> shapes(const ParamSchema& p, SourcePos pos, const RtValue& r) {
    const Sequence* s = std::get_if<Sequence>(&r.v);
    if (!s) mismatch(p, pos, r);
    std::vector<ShapePtr> out;
    for (const auto& item : s->items) {
      const ShapePtr* shape = std::get_if<ShapePtr>(&item.v);
      if (!shape) mismatch(p, pos, item);
      out.push_back(*shape);
    }
    return out;
  }

  static void check_range(const ParamSchema& p, SourcePos pos, double x) {
    if (p.range && !p.range->contains(x))
      fail(ErrorClass::TimeoutOrCrash, pos,
           fmt::format("InvalidShapeParameters: '{}' = {} violates {}", p.name, x, p.range->describe()));
  }

  // Bound arguments of one call with typed accessors.
  struct Args {
    const FunctionSchema& fn;
    std::map<std::string, std::pair<RtValue, SourcePos>> values;
    SourcePos call_pos;

    bool has(std::string_view name) const { return values.count(std::string(name)) > 0; }
    const ParamSchema& schema(std::string_view name) const { return *fn.param(name); }
    const std::pair<RtValue, SourcePos>& raw(std::string_view name) const { return values.at(std::string(name)); }

    double number(std::string_view name, double fallback) const {
      if (!has(name)) return fallback;
      const auto& [r, pos] = raw(name);
      const ParamSchema& p = schema(name);
      const double x = Interpreter::number(p, pos, r);
      if (p.type == ParamType::Integer && std::floor(x) != x)
        fail(ErrorClass::TypeUnpackingError, pos, fmt::format("'{}' expects int, got {}", p.name, x));
      check_range(p, pos, x);
      return x;
    }
    bool boolean(std::string_view name, bool fallback) const {
      if (!has(name)) return fallback;
      const auto& [r, pos] = raw(name);
      const bool* b = std::get_if<bool>(&r.v);
      if (!b) mismatch(schema(name), pos, r);
      return *b;
    }
    Vec3 vec(std::string_view name, Vec3 fallback) const {
      if (!has(name)) return fallback;
      const auto& [r, pos] = raw(name);
      const Vec3 v = Interpreter::vec3(schema(name), pos, r);
      for (int a = 0; a < 3; ++a) check_range(schema(name), pos, v[a]);
      return v;
    }
    Transform transform(std::string_view name) const {
      if (!has(name)) return {};
      const auto& [r, pos] = raw(name);
      const Transform* t = std::get_if<Transform>(&r.v);
      if (!t) mismatch(schema(name), pos, r);
      return *t;
    }
    ShapePtr shape(std::string_view name) const {
      const auto& [r, pos] = raw(name);
      const ShapePtr* s = std::get_if<ShapePtr>(&r.v);
      if (!s) mismatch(schema(name), pos, r);
      return *s;
    }
    std::vector<ShapePtr> shape_list(std::string_view name) const {
      const auto& [r, pos] = raw(name);
      auto out = Interpreter::shapes(schema(name), pos, r);
      if (out.empty()) fail(ErrorClass::TimeoutOrCrash, pos, fmt::format("InvalidShapeParameters: '{}' is empty", name));
      return out;
    }
    void stamp(std::string_view name) const {
      const auto& [r, pos] = raw(name);
      if (!std::get_if<StampHandle>(&r.v)) mismatch(schema(name), pos, r);
    }
    std::optional<std::string> member(std::string_view name) const {
      if (!has(name)) return std::nullopt;
      const auto& [r, pos] = raw(name);
      const ParamSchema& p = schema(name);
      const EnumValue* e = std::get_if<EnumValue>(&r.v);
      const std::string_view want = p.type == ParamType::SurfaceType ? kSurfaceEnum : kBlendEnum;
      if (!e || e->type != want) mismatch(p, pos, r);
      return e->member;
    }
    MaterialId surface() const {
      const auto m = member("SurfaceType");
      return m ? *Palette::standard().find_by_name(*m) : kDefaultMaterial;
    }
  };

  Args bind_args(const FunctionSchema& fn, const Call& call) {
    Args args{fn, {}, call.pos};
    std::size_t positional = 0;
    for (const auto& a : call.args) {
      const ParamSchema* p = nullptr;
      if (a.name.empty()) {
        if (positional >= fn.params.size())
          fail(ErrorClass::TypeUnpackingError, a.value.pos,
               fmt::format("{} takes at most {} positional arguments", fn.name, fn.params.size()));
        p = &fn.params[positional++];
      } else {
        p = fn.param(a.name);
        if (!p)
          fail(ErrorClass::InvalidApiAttribute, a.value.pos,
               fmt::format("{} got an unexpected parameter '{}'", fn.name, a.name));
      }
      if (args.values.count(p->name))
        fail(ErrorClass::TypeUnpackingError, a.value.pos, fmt::format("'{}' given more than once", p->name));
      args.values.emplace(p->name, std::make_pair(eval(a.value), a.value.pos));
    }
    for (const auto& p : fn.params)
      if (p.required && !args.values.count(p.name))
        fail(ErrorClass::TypeUnpackingError, call.pos, fmt::format("{} missing required '{}'", fn.name, p.name));
    return args;
  }

  ShapePtr placed(ShapePtr shape, const Args& args) {
    const Transform t = args.transform("Transform");
    return make_transformed(t, std::move(shape));
  }

  StampOptions stamp_options() const { return {limits_.execution, &stop_}; }

  RtValue invoke(const Call& call) {
    const FunctionSchema* fn = reg_.function(call.function);
    if (!fn) fail(ErrorClass::InvalidApiAttribute, call.pos, fmt::format("'{}' is not an API function", call.function));
    charge(1, call.pos);
    const Args args = bind_args(*fn, call);
    try {
      RtValue result = dispatch(*fn, args, call.pos);
      out_.logs.push_back(fmt::format("[{}:{}] {}{}", call.pos.line, call.pos.column, call.function,
                                      call.targets.empty() ? "" : " -> " + fmt::format("{}", fmt::join(call.targets, ", "))));
      return result;
    } catch (const OperationInterrupted&) {
      throw TimedOutSignal();
    } catch (const InvalidShapeParameters& e) {
      fail(ErrorClass::TimeoutOrCrash, call.pos, fmt::format("InvalidShapeParameters: {}", e.what()));
    } catch (const DegenerateMesh& e) {
      fail(ErrorClass::TimeoutOrCrash, call.pos, fmt::format("DegenerateMesh: {}", e.what()));
    } catch (const GridBudgetExceeded& e) {
      fail(ErrorClass::TimeoutOrCrash, call.pos, fmt::format("GridBudgetExceeded: {}", e.what()));
    } catch (const UnknownMaterial& e) {
      fail(ErrorClass::InvalidApiAttribute, call.pos, fmt::format("UnknownMaterial: {}", e.what()));
    }
  }

  RtValue dispatch(const FunctionSchema& fn, const Args& a, SourcePos pos) {
    const std::string& name = fn.name;
    if (name == "FVector") return {Vec3{a.number("X", 0), a.number("Y", 0), a.number("Z", 0)}};
    if (name == "FTransform") {
      Transform t;
      t.location = a.vec("Location", {});
      t.rotation = a.vec("Rotation", {});
      t.scale = a.vec("Scale", {1, 1, 1});
      t.validate();
      return {t};
    }
    if (name == "MakeSphereNode") return {placed(make_sphere(a.number("Radius", 0), a.surface()), a)};
    if (name == "MakeCubeNode")
      return {placed(make_cube(a.vec("Size", {}), a.number("Roundness", 0), a.surface()), a)};
    if (name == "MakeTorusNode")
      return {placed(make_torus(a.number("MajorRadius", 0), a.number("MinorRadius", 0), a.surface()), a)};
    if (name == "MakeCylinderNode")
      return {placed(make_cylinder(a.number("Radius", 0), a.number("HalfHeight", 0), a.surface()), a)};
    if (name == "MakePyramidNode")
      return {placed(make_pyramid(a.number("BaseHalfWidth", 0), a.number("Height", 0), a.surface()), a)};
    if (name == "MakeHouseNode") return {placed(make_house(a.vec("Size", {}), a.surface()), a)};
    if (name == "MakeHermitePipeNode") {
      HermitePipeParams p;
      p.start_position = a.vec("StartPosition", {});
      p.start_velocity = a.vec("StartVelocity", {});
      p.end_position = a.vec("EndPosition", {});
      p.end_velocity = a.vec("EndVelocity", {});
      p.outer_radius = a.number("PipeOuterRadius", 0);
      p.inner_radius = a.number("PipeInnerRadius", 0);
      p.closed_ends = a.boolean("bClosedPipeEnds", true);
      p.num_segments = static_cast<int>(a.number("NumSegments", 16));
      p.smoothness = a.number("Smoothness", 0);
      return {placed(make_hermite_pipe(p, a.surface()), a)};
    }
    if (name == "MakeMeshNode") return {placed(make_mesh(mesh_params(a), a.surface()), a)};
    if (name == "MakeStampFromNode") {
      const ShapePtr shape = a.shape("Shape");
      const Transform t = a.transform("Transform");
      const int layer = static_cast<int>(a.number("Layer", 0));
      const auto blend = a.member("BlendMode").value_or("Union");
      const MaterialId surface = a.has("SurfaceType") ? a.surface() : kNoMaterial;
      const BlendMode mode = blend == "Subtract" ? BlendMode::Subtract
                             : blend == "Intersect" ? BlendMode::Intersect
                                                    : BlendMode::Union;
      charge(stamp_cost(*make_transformed(t, shape)), pos);
      stamp_node(*scene_, shape, surface, t, mode, stamp_options());
      if (a.has("Layer")) scene_->set_layer(layer);
      return {StampHandle{}};
    }
    if (name == "UnionShapes" || name == "IntersectShapes") {
      a.stamp("Stamp");
      const auto list = a.shape_list("Shapes");
      const double k = a.number("Smoothness", 0);
      const bool is_union = name == "UnionShapes";
      charge(stamp_cost(*(is_union ? make_union(list, k) : make_intersect(list, k))), pos);
      if (is_union) union_shapes(*scene_, list, k, stamp_options());
      else intersect_shapes(*scene_, list, k, stamp_options());
      return {StampHandle{}};
    }
    if (name == "SubtractShapes") {
      a.stamp("Stamp");
      const ShapePtr base = a.shape("BaseShape");
      const auto subs = a.shape_list("ShapesToSubtract");
      const double k = a.number("Smoothness", 0);
      const Transform t = a.transform("Transform");
      charge(stamp_cost(*make_subtract(base, subs, k)), pos);
      subtract_shapes(*scene_, base, subs, k, t, stamp_options());
      return {StampHandle{}};
    }
    if (name == "GenerateSurfaceMesh") {
      a.stamp("Stamp");
      out_.mesh.requested = true;
      out_.mesh.iso_level = a.number("IsoLevel", 0);
      return {MeshHandle{}};
    }
    if (name == "SmoothSurfaceMesh") {
      a.stamp("Stamp");
      out_.mesh.requested = true;
      out_.mesh.smooth_iterations = static_cast<int>(a.number("Iterations", 3));
      out_.mesh.smooth_lambda = a.number("Lambda", 0.5);
      return {MeshHandle{}};
    }
    fail(ErrorClass::InvalidApiAttribute, pos, fmt::format("'{}' has no implementation", name));
  }

  static MeshParams mesh_params(const Args& a) {
    MeshParams m;
    const auto& [verts, vpos] = a.raw("Vertices");
    const Sequence* vs = std::get_if<Sequence>(&verts.v);
    if (!vs) mismatch(a.schema("Vertices"), vpos, verts);
    for (const auto& v : vs->items) m.vertices.push_back(vec3(a.schema("Vertices"), vpos, v));
    const auto& [tris, tpos] = a.raw("Triangles");
    const Sequence* ts = std::get_if<Sequence>(&tris.v);
    if (!ts) mismatch(a.schema("Triangles"), tpos, tris);
    for (const auto& t : ts->items) {
      const Vec3 idx = vec3(a.schema("Triangles"), tpos, t);
      Triangle tri;
      for (int c = 0; c < 3; ++c) {
        if (idx[c] < 0 || std::floor(idx[c]) != idx[c])
          fail(ErrorClass::TypeUnpackingError, tpos, "'Triangles' indices must be non-negative integers");
        tri[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(idx[c]);
      }
      m.triangles.push_back(tri);
    }
    m.allow_open = a.boolean("bAllowOpenMesh", false);
    return m;
  }

  const ExecutionLimits& limits_;
  const ApiRegistry& reg_;
  ExecutionOutcome& out_;
  Clock::time_point start_;
  kernels::StopPredicate stop_;
  std::shared_ptr<Stamp> scene_;
  std::map<std::string, RtValue> scope_;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

}  // namespace

ExecutionOutcome execute(const SceneProgram& program, const ExecutionLimits& limits, const ApiRegistry& registry) {
  ExecutionOutcome out;
  out.violations = check_compliance(program, registry);
  Interpreter interp(limits, registry, out);
  auto fail = [&](Status status, ErrorClass error, SourcePos pos, const std::string& message) {
    out.status = status;
    out.error = error;
    out.error_pos = pos;
    out.error_message = message;
    out.logs.push_back(fmt::format("error: {} at {}:{}: {}", to_string(error), pos.line, pos.column, message));
  };
  try {
    interp.run(program);
  } catch (const ProgramError& e) {
    fail(Status::Failed, e.error(), e.pos(), e.what());
  } catch (const TimedOutSignal& e) {
    fail(Status::TimedOut, ErrorClass::TimeoutOrCrash, {}, e.what());
  } catch (const GridBudgetExceeded& e) {
    fail(Status::Failed, ErrorClass::TimeoutOrCrash, {}, fmt::format("GridBudgetExceeded: {}", e.what()));
  } catch (const std::bad_alloc&) {
    fail(Status::Failed, ErrorClass::TimeoutOrCrash, {}, "out of memory");
  } catch (const std::exception& e) {
    fail(Status::Failed, ErrorClass::TimeoutOrCrash, {}, fmt::format("internal error: {}", e.what()));
  }
  out.wall_seconds = seconds_since(interp.start());
  return out;
}

ExecutionOutcome run_source(std::string_view text, const ExecutionLimits& limits, const ApiRegistry& registry) {
  const auto start = Clock::now();
  SceneProgram program;
  try {
    program = parse_program(text);
  } catch (const ParseError& e) {
    ExecutionOutcome out;
    out.status = Status::Failed;
    out.error = ErrorClass::SyntaxError;
    out.error_pos = e.pos();
    out.error_message = e.detail();
    out.logs.push_back(fmt::format("error: SyntaxError at {}:{}: {}", e.pos().line, e.pos().column, e.detail()));
    out.wall_seconds = seconds_since(start);
    return out;
  } catch (const ProgramTooLarge& e) {
    ExecutionOutcome out;
    out.status = Status::Failed;
    out.error = ErrorClass::TimeoutOrCrash;
    out.error_message = e.what();
    out.logs.push_back(fmt::format("error: TimeoutOrCrash: {}", e.what()));
    out.wall_seconds = seconds_since(start);
    return out;
  }
  return execute(program, limits, registry);
}

std::string format_outcome(const ExecutionOutcome& o) {
  std::string out = "outcome.v1\n";
  out += fmt::format("status: {}\n", to_string(o.status));
  out += fmt::format("error: {}\n", to_string(o.error));
  out += fmt::format("error_line: {}\n", o.error_pos.line);
  out += fmt::format("error_column: {}\n", o.error_pos.column);
  std::string message = o.error_message;
  for (char& c : message)
    if (c == '\n' || c == '\r') c = ' ';
  out += fmt::format("error_message: {}\n", message);
  out += fmt::format("violations: {}\n", o.violations.size());
  out += fmt::format("wall_seconds: {:.6f}\n", o.wall_seconds);
  out += fmt::format("ops_used: {}\n", o.ops_used);
  out += fmt::format("calls_executed: {}\n", o.calls_executed);
  out += fmt::format("mesh_requested: {}\n", o.mesh.requested ? 1 : 0);
  out += fmt::format("mesh_iso_level: {}\n", o.mesh.iso_level);
  out += fmt::format("mesh_smooth_iterations: {}\n", o.mesh.smooth_iterations);
  out += fmt::format("mesh_smooth_lambda: {}\n", o.mesh.smooth_lambda);
  return out;
}

ExecutionOutcome parse_outcome(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (first) {
      if (line != "outcome.v1") throw std::invalid_argument("not an outcome.v1 record");
      first = false;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t colon = line.find(": ");
    if (colon == std::string_view::npos) {
      if (!line.empty() && line.back() == ':') kv[std::string(line.substr(0, line.size() - 1))] = "";
      continue;
    }
    kv[std::string(line.substr(0, colon))] = std::string(line.substr(colon + 2));
  }
  if (first) throw std::invalid_argument("not an outcome.v1 record");
  auto get = [&](std::string_view key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(fmt::format("outcome.v1 missing '{}'", key));
    return it->second;
  };
  ExecutionOutcome o;
  o.status = parse_status(get("status"));
  o.error = parse_error_class(get("error"));
  o.error_pos = {std::stoi(get("error_line")), std::stoi(get("error_column"))};
  o.error_message = kv.count("error_message") ? kv.at("error_message") : "";
  o.wall_seconds = std::stod(get("wall_seconds"));
  o.ops_used = std::stoull(get("ops_used"));
  o.calls_executed = std::stoull(get("calls_executed"));
  if (kv.count("mesh_requested")) {
    o.mesh.requested = get("mesh_requested") == "1";
    o.mesh.iso_level = std::stod(get("mesh_iso_level"));
    o.mesh.smooth_iterations = std::stoi(get("mesh_smooth_iterations"));
    o.mesh.smooth_lambda = std::stod(get("mesh_smooth_lambda"));
  }
  return o;
}

}  // namespace vf::program
