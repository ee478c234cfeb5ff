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

#include <string>

#include "m2fol/events.hpp"
#include "m2fol/structure.hpp"

namespace m2fol {

// Canonical text: declarations sorted by kind then name, two-space indent,
// LF line endings, minimal parentheses. Structurally equal inputs serialize
// to byte-identical text and parse back to equal values.
std::string serialize_language(const SignatureDecl& sig);
std::string serialize_model(const Structure& m);

std::string print_formula(const FormulaPtr& formula);
std::string print_term(const TermPtr& term);
std::string print_domain(const ValueDomain& domain);

}  // namespace m2fol
