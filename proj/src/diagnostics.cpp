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

#include "m2fol/diagnostics.hpp"

namespace m2fol {

std::string SourceSpan::to_string() const {
  if (!valid()) return file.empty() ? "<unknown>" : file;
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::string Diagnostic::to_string() const {
  return span.to_string() + ": error[" + code + "]: " + message;
}

std::string Finding::to_string() const {
  std::string s = "[" + code + "] " + subject;
  if (!detail.empty()) s += ": " + detail;
  return s;
}

const char* err_name(ErrCode code) {
  switch (code) {
    case ErrCode::UnknownType: return "UNKNOWN_TYPE";
    case ErrCode::UnknownSymbol: return "UNKNOWN_SYMBOL";
    case ErrCode::UnknownElement: return "UNKNOWN_ELEMENT";
    case ErrCode::UnknownEvent: return "UNKNOWN_EVENT";
    case ErrCode::DuplicateElement: return "DUPLICATE_ELEMENT";
    case ErrCode::ArityMismatch: return "ARITY_MISMATCH";
    case ErrCode::TypeMismatch: return "TYPE_MISMATCH";
    case ErrCode::QuantifierOverInfiniteDomain: return "QUANTIFIER_OVER_INFINITE_DOMAIN";
    case ErrCode::UnboundVariable: return "UNBOUND_VARIABLE";
    case ErrCode::PartialFunction: return "PARTIAL_FUNCTION";
    case ErrCode::ValueDomainMismatch: return "VALUE_DOMAIN_MISMATCH";
    case ErrCode::MissingAssignment: return "MISSING_ASSIGNMENT";
    case ErrCode::DanglingReference: return "DANGLING_REFERENCE";
    case ErrCode::CyclicInheritance: return "CYCLIC_INHERITANCE";
    case ErrCode::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrCode::PostconditionFailed: return "POSTCONDITION_FAILED";
    case ErrCode::ResultNonconformant: return "RESULT_NONCONFORMANT";
    case ErrCode::NonconformantMetamodel: return "NONCONFORMANT_METAMODEL";
    case ErrCode::IllTypedExtraConstraint: return "ILL_TYPED_EXTRA_CONSTRAINT";
    case ErrCode::SignatureMismatch: return "SIGNATURE_MISMATCH";
    case ErrCode::UnresolvedNameCollision: return "UNRESOLVED_NAME_COLLISION";
    case ErrCode::IllTypedNewConstraint: return "ILL_TYPED_NEW_CONSTRAINT";
    case ErrCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrCode::DomainTooLarge: return "DOMAIN_TOO_LARGE";
    case ErrCode::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

}  // namespace m2fol
