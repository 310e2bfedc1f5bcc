#include <fmt/format.h>

#include "vf/program/program.hpp"

namespace vf::program {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string join(const std::vector<Value>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += serialize(items[i]);
  }
  return out;
}

std::string call_expr(const Call& call) {
  std::string out = call.function + "(";
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (i) out += ", ";
    if (!call.args[i].name.empty()) out += call.args[i].name + "=";
    out += serialize(call.args[i].value);
  }
  return out + ")";
}

}  // namespace

std::string serialize(const Value& value) {
  struct Visitor {
    std::string operator()(double d) const { return fmt::format("{}", d); }
    std::string operator()(bool b) const { return b ? "True" : "False"; }
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(const Identifier& id) const { return id.name; }
    std::string operator()(const EnumToken& e) const { return e.type + "." + e.member; }
    std::string operator()(const Tuple& t) const {
      return t.items.size() == 1 ? "(" + serialize(t.items[0]) + ",)" : "(" + join(t.items) + ")";
    }
    std::string operator()(const List& l) const { return "[" + join(l.items) + "]"; }
    std::string operator()(const NestedCall& c) const { return call_expr(*c.call); }
  };
  return std::visit(Visitor{}, value.data);
}

std::string serialize(const Call& call) {
  std::string out;
  for (std::size_t i = 0; i < call.targets.size(); ++i) out += (i ? ", " : "") + call.targets[i];
  if (!call.targets.empty()) out += " = ";
  return out + call_expr(call);
}

std::string serialize(const SceneProgram& program) {
  std::string out = fmt::format("#vfprog v1 source={} hash={:016x}\n", to_string(program.meta.source),
                                program.meta.source_hash);
  for (const Call& call : program.calls) out += serialize(call) + "\n";
  return out;
}

}  // namespace vf::program
