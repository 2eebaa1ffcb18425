// Copyright 2026 The x509strict Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef X509STRICT_SRC_WALKER_H_
#define X509STRICT_SRC_WALKER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "x509strict/algorithm.h"
#include "x509strict/der.h"
#include "x509strict/diagnostics.h"
#include "x509strict/extensions.h"
#include "x509strict/general_names.h"
#include "x509strict/name.h"
#include "x509strict/parsed.h"
#include "x509strict/registry.h"
#include "x509strict/values.h"

namespace x509strict::internal {

// Thrown once a structural diagnostic has been recorded. Caught at the
// nearest boundary where the walk can carry on: an extension body, or the
// certificate as a whole.
struct StructuralError {};

class Walker {
 public:
  Walker(const Registry& registry, DiagnosticSink& sink)
      : registry_(registry), sink_(sink) {}

  const Registry& registry() const { return registry_; }
  DiagnosticSink& sink() { return sink_; }

  void Report(Code code, size_t offset, std::string message) {
    sink_.Add(code, offset, std::move(message));
  }
  void Report(const ValueError& error) {
    sink_.Add(error.code, error.offset, error.message);
  }
  [[noreturn]] void Fail(Code code, size_t offset, std::string message) {
    Report(code, offset, std::move(message));
    throw StructuralError{};
  }

  void Expect(const TlvNode& node, TagClass tag_class, uint32_t number,
              bool constructed, std::string_view what);
  void ExpectUniversal(const TlvNode& node, uint32_t number, bool constructed,
                       std::string_view what) {
    Expect(node, TagClass::kUniversal, number, constructed, what);
  }

  template <typename T>
  std::optional<T> Take(ValueResult<T>&& result) {
    if (!result) {
      Report(result.error());
      return std::nullopt;
    }
    return std::move(*result);
  }

  // Decodes an OID; OID_MALFORMED is reported as `malformed_code` so the
  // slot it appears in is visible in the diagnostic.
  std::optional<ObjectIdentifier> Oid(const TlvNode& node,
                                      Code malformed_code = Code::OID_MALFORMED);

  // Parses `bytes` as exactly one TLV. DER failures are reported with
  // `override_code` when given, else with the code for the DER error, and
  // end the walk.
  TlvNode ParseNested(std::span<const uint8_t> bytes, size_t base_offset,
                      std::optional<Code> override_code = std::nullopt);

  // Runs `f`, absorbing a StructuralError. Returns whether `f` completed.
  template <typename F>
  bool Guard(F&& f) {
    try {
      f();
      return true;
    } catch (const StructuralError&) {
      return false;
    }
  }

 private:
  const Registry& registry_;
  DiagnosticSink& sink_;
};

// Sequential reader over the children of a constructed node.
class ChildCursor {
 public:
  ChildCursor(Walker& walker, const TlvNode& parent, std::string_view what)
      : walker_(walker), parent_(parent), what_(what) {}

  bool AtEnd() const { return index_ >= parent_.children.size(); }
  const TlvNode* Peek() const {
    return AtEnd() ? nullptr : &parent_.children[index_];
  }

  // Consumes the next child if it has the given tag.
  const TlvNode* TakeIf(TagClass tag_class, uint32_t number, bool constructed);
  const TlvNode* TakeContext(uint32_t number, bool constructed) {
    return TakeIf(TagClass::kContextSpecific, number, constructed);
  }
  const TlvNode* TakeUniversal(uint32_t number, bool constructed) {
    return TakeIf(TagClass::kUniversal, number, constructed);
  }

  // Consumes the next child, which must exist.
  const TlvNode& Next(std::string_view field);
  // Consumes the next child, which must exist and have the given tag.
  const TlvNode& Next(std::string_view field, TagClass tag_class,
                      uint32_t number, bool constructed);
  const TlvNode& NextUniversal(std::string_view field, uint32_t number,
                               bool constructed) {
    return Next(field, TagClass::kUniversal, number, constructed);
  }

  // Fails if children remain.
  void Finish();

 private:
  Walker& walker_;
  const TlvNode& parent_;
  std::string_view what_;
  size_t index_ = 0;
};

// Copy of an IMPLICIT-tagged node carrying the universal tag it replaces.
TlvNode Retag(const TlvNode& node, uint32_t universal_tag);

std::string TagDescription(const TlvNode& node);

std::vector<uint8_t> ToBytes(std::span<const uint8_t> bytes);

// Module walkers. Each records diagnostics into the walker's sink and
// throws StructuralError when the subtree cannot be recognized.
AlgorithmIdentifierValue WalkAlgorithmIdentifier(Walker& w, const TlvNode& node,
                                                 AlgorithmContext context);
SpkiValue WalkSpki(Walker& w, const TlvNode& node);
SignatureValue WalkSignatureValue(Walker& w, const TlvNode& node,
                                  const AlgorithmIdentifierValue& algorithm);
NameValue WalkName(Walker& w, const TlvNode& node, NameRole role);
GeneralNameValue WalkGeneralName(Walker& w, const TlvNode& node,
                                 GeneralNameContext context);
std::vector<GeneralNameValue> WalkGeneralNames(Walker& w, const TlvNode& node,
                                               GeneralNameContext context);
// Same as WalkGeneralNames for an IMPLICIT-tagged GeneralNames; the tag of
// `node` is not checked.
std::vector<GeneralNameValue> WalkGeneralNameList(Walker& w,
                                                  const TlvNode& node,
                                                  GeneralNameContext context);
ExtensionSet WalkExtensions(Walker& w, const TlvNode& wrapper);
ExtensionBody WalkExtensionBody(Walker& w, const ExtensionEntry& entry);

template <typename T, typename F>
Parsed<T> RunWalk(const Registry& registry, F&& f) {
  DiagnosticSink sink;
  Walker walker(registry, sink);
  Parsed<T> out;
  try {
    out.value = f(walker);
  } catch (const StructuralError&) {
  }
  out.diagnostics = sink.Take();
  return out;
}

}  // namespace x509strict::internal

#endif  // X509STRICT_SRC_WALKER_H_
