#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vf/program/program.hpp"
#include "vf/program/registry.hpp"

namespace vf::program {

enum class ViolationKind {
  UnknownFunction,
  UnknownParameter,
  MissingParameter,
  UnknownEnumValue,
  ParameterOutOfRange,
  TypeMismatch,
  DanglingReference,
  ArityMismatch,
};
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t call_index = 0;
  SourcePos pos;
  std::string function;
  std::string parameter;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Static API-compliance check; an empty result means the program is compliant.
std::vector<Violation> check_compliance(const SceneProgram& program,
                                        const ApiRegistry& registry = ApiRegistry::standard());

}  // namespace vf::program
