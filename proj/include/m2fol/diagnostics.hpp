// Copyright 2026 The m2fol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace m2fol {

// 1-based position of a token or node in an input file.
struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;
  int length = 0;

  bool valid() const { return line > 0; }
  std::string to_string() const;
};

// A parse- or resolution-time problem, always anchored to a span.
struct Diagnostic {
  SourceSpan span;
  std::string code;
  std::string message;

  std::string to_string() const;
};

// A semantic problem found while validating a signature or structure.
// Findings are report content, not failures.
struct Finding {
  std::string code;     // machine-readable, UPPER_SNAKE
  std::string subject;  // offending type/symbol/element name
  std::string detail;

  std::string to_string() const;
  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }
};

enum class ErrCode {
  UnknownType,
  UnknownSymbol,
  UnknownElement,
  UnknownEvent,
  DuplicateElement,
  ArityMismatch,
  TypeMismatch,
  QuantifierOverInfiniteDomain,
  UnboundVariable,
  PartialFunction,
  ValueDomainMismatch,
  MissingAssignment,
  DanglingReference,
  CyclicInheritance,
  PreconditionFailed,
  PostconditionFailed,
  ResultNonconformant,
  NonconformantMetamodel,
  IllTypedExtraConstraint,
  SignatureMismatch,
  UnresolvedNameCollision,
  IllTypedNewConstraint,
  ShapeMismatch,
  DomainTooLarge,
  Internal,
};

const char* err_name(ErrCode code);

// Failure of a kernel operation whose contract names the error code.
class KernelError : public std::runtime_error {
 public:
  KernelError(ErrCode code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message), code_(code) {}

  ErrCode code() const { return code_; }

 private:
  ErrCode code_;
};

}  // namespace m2fol
