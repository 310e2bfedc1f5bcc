#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vf::program {

inline constexpr std::size_t kMaxCalls = 100'000;

struct SourcePos {
  int line = 0;
  int column = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct Call;

struct Identifier {
  std::string name;
  friend bool operator==(const Identifier&, const Identifier&) = default;
};

/// `Type.Member`, e.g. ESurfaceType.Stone.
struct EnumToken {
  std::string type;
  std::string member;
  friend bool operator==(const EnumToken&, const EnumToken&) = default;
};

struct Value;

struct Tuple {
  std::vector<Value> items;
  friend bool operator==(const Tuple&, const Tuple&);
};

struct List {
  std::vector<Value> items;
  friend bool operator==(const List&, const List&);
};

/// A call used as an argument value, e.g. FVector(1, 2, 3).
struct NestedCall {
  std::shared_ptr<const Call> call;
  friend bool operator==(const NestedCall& a, const NestedCall& b);
};

struct Value {
  std::variant<double, bool, std::string, Identifier, EnumToken, Tuple, List, NestedCall> data;
  SourcePos pos;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&data);
  }
  /// Positions are not part of identity.
  friend bool operator==(const Value& a, const Value& b) { return a.data == b.data; }
};

struct Argument {
  std::string name;  // empty for positional
  Value value;
  friend bool operator==(const Argument& a, const Argument& b) { return a.name == b.name && a.value == b.value; }
};

struct Call {
  std::vector<std::string> targets;  // `a, b = F(...)` binds two names
  std::string function;
  std::vector<Argument> args;
  SourcePos pos;

  friend bool operator==(const Call& a, const Call& b) {
    return a.targets == b.targets && a.function == b.function && a.args == b.args;
  }
};

enum class SourceKind { Canonical, TracedScript };
std::string_view to_string(SourceKind kind);

struct ProgramMeta {
  SourceKind source = SourceKind::Canonical;
  std::uint64_t source_hash = 0;
  friend bool operator==(const ProgramMeta&, const ProgramMeta&) = default;
};

struct SceneProgram {
  std::vector<Call> calls;
  ProgramMeta meta;
  friend bool operator==(const SceneProgram&, const SceneProgram&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& message);
  SourcePos pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

/// More than kMaxCalls calls.
class ProgramTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Parses the canonical encoding (grammar in docs/program-grammar.md).
/// Throws ParseError on malformed text and ProgramTooLarge past kMaxCalls.
SceneProgram parse_program(std::string_view text);

/// One call per line behind a `#vfprog v1` header; parse(serialize(p)) == p.
std::string serialize(const SceneProgram& program);
std::string serialize(const Value& value);
std::string serialize(const Call& call);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace vf::program
