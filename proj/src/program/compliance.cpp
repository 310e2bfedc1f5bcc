#include "vf/program/compliance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include <fmt/format.h>

namespace vf::program {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnknownFunction: return "UnknownFunction";
    case ViolationKind::UnknownParameter: return "UnknownParameter";
    case ViolationKind::MissingParameter: return "MissingParameter";
    case ViolationKind::UnknownEnumValue: return "UnknownEnumValue";
    case ViolationKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ViolationKind::TypeMismatch: return "TypeMismatch";
    case ViolationKind::DanglingReference: return "DanglingReference";
    case ViolationKind::ArityMismatch: return "ArityMismatch";
  }
  return "?";
}

namespace {

// Static type of a bound name or value; Unknown suppresses follow-on reports.
enum class Static { Unknown, Number, Bool, String, Vec3, Transform, Shape, Stamp, Mesh, Enum, Sequence };

Static from_result(ResultType r) {
  switch (r) {
    case ResultType::Vec3: return Static::Vec3;
    case ResultType::Transform: return Static::Transform;
    case ResultType::Shape: return Static::Shape;
    case ResultType::Stamp: return Static::Stamp;
    case ResultType::Mesh: return Static::Mesh;
  }
  return Static::Unknown;
}

class Checker {
 public:
  explicit Checker(const ApiRegistry& registry) : reg_(registry) { scope_[std::string(kSceneStamp)] = Static::Stamp; }

  std::vector<Violation> run(const SceneProgram& program) {
    for (std::size_t i = 0; i < program.calls.size(); ++i) {
      index_ = i;
      const Call& call = program.calls[i];
      const Static result = check_call(call);
      bind(call, result);
    }
    return std::move(out_);
  }

 private:
  void report(ViolationKind kind, SourcePos pos, const std::string& function, const std::string& parameter,
              std::string message) {
    Violation v{kind, index_, pos, function, parameter, std::move(message)};
    // Nested values can be visited by more than one check.
    if (std::find(out_.begin(), out_.end(), v) == out_.end()) out_.push_back(std::move(v));
  }

  void bind(const Call& call, Static result) {
    if (call.targets.size() == 1) {
      scope_[call.targets[0]] = result;
      return;
    }
    if (call.targets.size() > 1) {
      const bool ok = result == Static::Unknown || (result == Static::Vec3 && call.targets.size() == 3);
      if (!ok)
        report(ViolationKind::ArityMismatch, call.pos, call.function, "",
               fmt::format("cannot unpack {} into {} names", call.function, call.targets.size()));
      for (const auto& t : call.targets) scope_[t] = result == Static::Vec3 ? Static::Number : Static::Unknown;
    }
  }

  Static check_call(const Call& call) {
    const FunctionSchema* fn = reg_.function(call.function);
    if (!fn) {
      report(ViolationKind::UnknownFunction, call.pos, call.function, "",
             fmt::format("'{}' is not an API function", call.function));
      for (const auto& a : call.args) type_of(a.value, call.function);
      return Static::Unknown;
    }
    std::map<std::string, const Argument*> bound;
    std::size_t positional = 0;
    for (const auto& a : call.args) {
      const ParamSchema* p = nullptr;
      if (a.name.empty()) {
        if (positional >= fn->params.size()) {
          report(ViolationKind::ArityMismatch, a.value.pos, fn->name, "",
                 fmt::format("{} takes at most {} arguments", fn->name, fn->params.size()));
          type_of(a.value, fn->name);
          continue;
        }
        p = &fn->params[positional++];
      } else {
        p = fn->param(a.name);
        if (!p) {
          report(ViolationKind::UnknownParameter, a.value.pos, fn->name, a.name,
                 fmt::format("{} has no parameter '{}'", fn->name, a.name));
          type_of(a.value, fn->name);
          continue;
        }
      }
      if (bound.count(p->name)) {
        report(ViolationKind::ArityMismatch, a.value.pos, fn->name, p->name,
               fmt::format("parameter '{}' given more than once", p->name));
        continue;
      }
      bound[p->name] = &a;
      check_arg(*fn, *p, a.value);
    }
    for (const auto& p : fn->params)
      if (p.required && !bound.count(p.name))
        report(ViolationKind::MissingParameter, call.pos, fn->name, p.name,
               fmt::format("{} requires '{}'", fn->name, p.name));
    return from_result(fn->result);
  }

  Static type_of(const Value& v, const std::string& function) {
    if (v.get_if<double>()) return Static::Number;
    if (v.get_if<bool>()) return Static::Bool;
    if (v.get_if<std::string>()) return Static::String;
    if (const auto* id = v.get_if<Identifier>()) {
      const auto it = scope_.find(id->name);
      if (it == scope_.end()) {
        report(ViolationKind::DanglingReference, v.pos, function, "", fmt::format("'{}' is not defined", id->name));
        return Static::Unknown;
      }
      return it->second;
    }
    if (const auto* e = v.get_if<EnumToken>()) {
      const EnumSchema* schema = reg_.enumeration(e->type);
      if (!schema || !schema->contains(e->member))
        report(ViolationKind::UnknownEnumValue, v.pos, function, "",
               fmt::format("'{}.{}' is not a known enum value", e->type, e->member));
      return Static::Enum;
    }
    if (const auto* t = v.get_if<Tuple>()) {
      for (const auto& item : t->items) type_of(item, function);
      return Static::Sequence;
    }
    if (const auto* l = v.get_if<List>()) {
      for (const auto& item : l->items) type_of(item, function);
      return Static::Sequence;
    }
    if (const auto* c = v.get_if<NestedCall>()) return check_call(*c->call);
    return Static::Unknown;
  }

  static const std::vector<Value>* items(const Value& v) {
    if (const auto* t = v.get_if<Tuple>()) return &t->items;
    if (const auto* l = v.get_if<List>()) return &l->items;
    return nullptr;
  }

  void mismatch(const FunctionSchema& fn, const ParamSchema& p, const Value& v, std::string_view found) {
    report(ViolationKind::TypeMismatch, v.pos, fn.name, p.name,
           fmt::format("'{}' expects {}, got {}", p.name, to_string(p.type), found));
  }

  void range_check(const FunctionSchema& fn, const ParamSchema& p, const Value& v, double x) {
    if (p.range && !p.range->contains(x))
      report(ViolationKind::ParameterOutOfRange, v.pos, fn.name, p.name,
             fmt::format("'{}' = {} violates {}", p.name, x, p.range->describe()));
  }

  // Checks a Vec3-typed value: FVector(...) or a 3-tuple of number literals.
  void check_vec3(const FunctionSchema& fn, const ParamSchema& p, const Value& v, Static t) {
    if (const auto* seq = items(v)) {
      if (seq->size() != 3) {
        report(ViolationKind::ArityMismatch, v.pos, fn.name, p.name,
               fmt::format("'{}' expects 3 components, got {}", p.name, seq->size()));
        return;
      }
      for (const auto& c : *seq) {
        if (const double* x = c.get_if<double>()) {
          range_check(fn, p, c, *x);
          continue;
        }
        const Static ct = type_of(c, fn.name);
        if (ct != Static::Number && ct != Static::Unknown) mismatch(fn, p, c, "a non-numeric component");
      }
      return;
    }
    if (const auto* c = v.get_if<NestedCall>(); c && c->call->function == "FVector") {
      for (const auto& a : c->call->args)
        if (const double* x = a.value.get_if<double>()) range_check(fn, p, a.value, *x);
    }
    if (t != Static::Vec3 && t != Static::Unknown) mismatch(fn, p, v, "a non-vector value");
  }

  void check_arg(const FunctionSchema& fn, const ParamSchema& p, const Value& v) {
    const Static t = type_of(v, fn.name);
    if (t == Static::Unknown) return;
    switch (p.type) {
      case ParamType::Number:
      case ParamType::Integer:
        if (t != Static::Number) return mismatch(fn, p, v, "a non-numeric value");
        if (const double* x = v.get_if<double>()) {
          if (p.type == ParamType::Integer && std::floor(*x) != *x) return mismatch(fn, p, v, "a fractional number");
          range_check(fn, p, v, *x);
        }
        return;
      case ParamType::Bool:
        if (t != Static::Bool) mismatch(fn, p, v, "a non-boolean value");
        return;
      case ParamType::Vec3: return check_vec3(fn, p, v, t);
      case ParamType::Transform:
        if (t != Static::Transform) mismatch(fn, p, v, "a non-transform value");
        return;
      case ParamType::Shape:
        if (t != Static::Shape) mismatch(fn, p, v, "a non-shape value");
        return;
      case ParamType::Stamp:
        if (t != Static::Stamp) mismatch(fn, p, v, "a non-stamp value");
        return;
      case ParamType::ShapeList:
      case ParamType::VertexList:
      case ParamType::TriangleList: {
        const auto* seq = items(v);
        if (!seq) return mismatch(fn, p, v, "a non-list value");
        for (const auto& item : *seq) {
          if (p.type == ParamType::ShapeList) {
            const Static it = type_of(item, fn.name);
            if (it != Static::Shape && it != Static::Unknown) mismatch(fn, p, item, "a non-shape element");
          } else if (const auto* inner = items(item); inner && inner->size() != 3) {
            report(ViolationKind::ArityMismatch, item.pos, fn.name, p.name,
                   fmt::format("'{}' elements need 3 components, got {}", p.name, inner->size()));
          }
        }
        return;
      }
      case ParamType::SurfaceType:
      case ParamType::BlendMode: {
        const auto* e = v.get_if<EnumToken>();
        const std::string_view want = p.type == ParamType::SurfaceType ? kSurfaceEnum : kBlendEnum;
        if (!e || e->type != want) mismatch(fn, p, v, "a value of another type");
        return;
      }
    }
  }

  const ApiRegistry& reg_;
  std::map<std::string, Static> scope_;
  std::vector<Violation> out_;
  std::size_t index_ = 0;
};

}  // namespace

std::vector<Violation> check_compliance(const SceneProgram& program, const ApiRegistry& registry) {
  return Checker(registry).run(program);
}

}  // namespace vf::program
