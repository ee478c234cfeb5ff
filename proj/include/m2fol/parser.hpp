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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "m2fol/compose.hpp"
#include "m2fol/structure.hpp"

namespace m2fol {

// Parsing is total: the parser recovers at declaration boundaries and
// collects every diagnostic. `value` is set only when no diagnostics were
// produced.
template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty() && value.has_value(); }
};

// `.m2l`: language IDENT { object/relation/data/attr/func/relsym/constraint/event decls }
ParseResult<SignatureDecl> parse_language(const std::string& text, const std::string& file = "<input>");

// `.m2m`: model IDENT : IDENT { element decls, attribute assignments, relation tuples }
ParseResult<Structure> parse_model(const std::string& text, std::shared_ptr<const SignatureDecl> sig,
                                   const std::string& file = "<input>");

// `.m2c`: a bare list of constraint declarations, resolved against sig.
ParseResult<std::vector<NamedConstraint>> parse_constraints(const std::string& text, const SignatureDecl& sig,
                                                            const std::string& file = "<input>");

// `.m2b`: bindings { rename/bridge/attr/func/relsym/constraint decls },
// resolved against the union of both signatures with renames applied.
ParseResult<FusionBinding> parse_bindings(const std::string& text, const SignatureDecl& a, const SignatureDecl& b,
                                          const std::string& file = "<input>");

// A single formula, used by tests and tools.
ParseResult<FormulaPtr> parse_formula(const std::string& text, const SignatureDecl& sig,
                                      const std::string& file = "<input>");

}  // namespace m2fol
