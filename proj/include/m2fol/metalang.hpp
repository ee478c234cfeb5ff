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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "m2fol/structure.hpp"

namespace m2fol {

// The metalanguage M2FOL: a modeling language whose models are metamodels.
//
// Object types OT, RT, AT, DT, D and the abstract supertypes ORT, DORT;
// relation types Inh, Fr, To with src_*/tgt_* endpoint symbols; attribute
// symbols valdom (AT -> list of ref DORT), owner (AT -> ref ORT), dtype
// (D -> ref DT); the order symbol sub_OT over OT x OT; the data type
// List_DORT = list of ref DORT; and eleven postulates: single inheritance,
// the two closure axioms tying sub_OT to Inh, existence and uniqueness of
// from/to endpoints per relation type, abstractness of ORT and DORT, and
// transitivity/irreflexivity/asymmetry of sub_OT.
const SignatureDecl& m2fol_signature();
std::shared_ptr<const SignatureDecl> m2fol_signature_ptr();

// Names used by the built-in metalanguage.
inline constexpr const char* kMetaSubOT = "sub_OT";
inline constexpr const char* kMetaValdom = "valdom";
inline constexpr const char* kMetaOwner = "owner";
inline constexpr const char* kMetaDtype = "dtype";
// Reserved metamodel element names understood by derive_signature.
inline constexpr const char* kReservedNat = "Nat";
inline constexpr const char* kReservedListPrefix = "list_";

// The built-in metamodel of M2FOL itself (the self-description fixture):
// 7 OT, 3 RT, 3 AT and 1 DT element, 4 Inh / 3 Fr / 3 To edges and 26
// assignments, with sub_OT completed to the closure.
Structure m2fol_metamodel();

// Replaces the sub_OT interpretation with the transitive closure of the Inh
// edges. Idempotent. Throws CyclicInheritance when the closure would touch
// the diagonal.
Structure complete_closure(const Structure& metamodel);

// The Table-1 algorithm: object types from OT elements (inheritance = the
// transitive reduction of sub_OT), relation types with endpoint symbols from
// RT/Fr/To, data types and constants from DT/D (name "Nat" -> naturals,
// "list_<x>" -> list of <x>), attribute symbols from AT elements, then the
// supplied constraints, type-checked against the result. Throws
// NonconformantMetamodel, IllTypedExtraConstraint.
SignatureDecl derive_signature(const Structure& metamodel, const std::vector<NamedConstraint>& extraConstraints);

// Conformance of the built-in M2FOL metamodel against m2fol_signature().
ConformanceReport bootstrap_check();

// m2fol_signature() with the postulate package removed: no constraints and no
// sub_OT symbol. This is the part of Def. 3 that Table 1 can reproduce.
SignatureDecl m2fol_signature_without_postulates();

// The rename map under which deriving from m2fol_metamodel() reproduces the
// built-in declaration (metamodel element names -> built-in names).
const std::map<std::string, std::string>& m2fol_bootstrap_renames();

}  // namespace m2fol
