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
#include <set>
#include <string>
#include <vector>

#include "m2fol/structure.hpp"

namespace m2fol {

enum class FusionSide { Left, Right };

struct TypeRename {
  FusionSide side = FusionSide::Left;
  std::string from, to;
};

// A bijection symbol i: from -> to connecting one type of each language.
struct BridgeDecl {
  std::string name;
  std::string from, to;
};

struct FusionBinding {
  std::vector<TypeRename> renames;      // one per colliding name
  std::vector<BridgeDecl> bridges;      // become function symbols + bijectivity constraints
  std::vector<FunctionSymbol> newFunctions;
  std::vector<RelationSymbol> newRelations;
  std::vector<NamedConstraint> newConstraints;
};

// Projects a language onto `keep`: drops relation types with a dropped
// endpoint, symbols mentioning a dropped type, and constraints/events whose
// AST mentions anything dropped. Inheritance keeps direct edges between kept
// types only; recloseInheritance additionally bridges paths through dropped
// intermediates. Throws UnknownType for names outside the signature.
SignatureDecl restrict_signature(const SignatureDecl& sig, const std::set<std::string>& keep,
                                 bool recloseInheritance = false);

// Projects a model onto a sublanguage previously produced by
// restrict_signature. Throws SignatureMismatch when subSig is not a
// restriction of m's language.
Structure restrict_model(const Structure& m, std::shared_ptr<const SignatureDecl> subSig);

// Unites two validated signatures: renames applied per binding (unresolved
// collisions are an error), inheritance kept separate, bridges added as
// function symbols with generated injectivity/surjectivity constraints, new
// symbols and constraints attached after type checking. Throws
// UnresolvedNameCollision, IllTypedNewConstraint, UnknownType.
SignatureDecl fuse_signatures(const SignatureDecl& a, const SignatureDecl& b, const FusionBinding& binding);

}  // namespace m2fol
