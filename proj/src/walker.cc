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

#include "walker.h"

#include "x509strict/certificate.h"

namespace x509strict::internal {

namespace {

std::string_view ClassName(TagClass tag_class) {
  switch (tag_class) {
    case TagClass::kUniversal:
      return "universal";
    case TagClass::kApplication:
      return "application";
    case TagClass::kContextSpecific:
      return "context";
    case TagClass::kPrivate:
      return "private";
  }
  return "?";
}

std::string Describe(TagClass tag_class, uint32_t number, bool constructed) {
  std::string out(ClassName(tag_class));
  out += ' ';
  out += std::to_string(number);
  out += constructed ? " constructed" : " primitive";
  return out;
}

}  // namespace

std::string TagDescription(const TlvNode& node) {
  return Describe(node.tag_class, node.tag_number, node.constructed);
}

std::vector<uint8_t> ToBytes(std::span<const uint8_t> bytes) {
  return std::vector<uint8_t>(bytes.begin(), bytes.end());
}

TlvNode Retag(const TlvNode& node, uint32_t universal_tag) {
  TlvNode copy = node;
  copy.tag_class = TagClass::kUniversal;
  copy.tag_number = universal_tag;
  return copy;
}

void Walker::Expect(const TlvNode& node, TagClass tag_class, uint32_t number,
                    bool constructed, std::string_view what) {
  if (node.Is(tag_class, number, constructed)) return;
  Fail(Code::GENERIC_ERROR, node.header_offset,
       std::string(what) + ": expected " +
           Describe(tag_class, number, constructed) + ", found " +
           TagDescription(node));
}

std::optional<ObjectIdentifier> Walker::Oid(const TlvNode& node,
                                            Code malformed_code) {
  auto result = DecodeOid(node);
  if (!result) {
    ValueError error = result.error();
    if (error.code == Code::OID_MALFORMED) error.code = malformed_code;
    Report(error);
    return std::nullopt;
  }
  return std::move(*result);
}

TlvNode Walker::ParseNested(std::span<const uint8_t> bytes, size_t base_offset,
                            std::optional<Code> override_code) {
  auto parsed = ParseTlvTree(bytes, base_offset);
  if (!parsed) {
    const DerFailure failure = parsed.error();
    Fail(
        override_code.value_or(CodeForDerError(failure.error)), failure.offset,
        std::string("nested DER: ") + std::string(DerErrorName(failure.error)));
  }
  return std::move(*parsed);
}

const TlvNode* ChildCursor::TakeIf(TagClass tag_class, uint32_t number,
                                   bool constructed) {
  const TlvNode* next = Peek();
  if (!next || !next->Is(tag_class, number, constructed)) return nullptr;
  ++index_;
  return next;
}

const TlvNode& ChildCursor::Next(std::string_view field) {
  if (AtEnd()) {
    walker_.Fail(Code::GENERIC_ERROR, parent_.end_offset(),
                 std::string(what_) + ": missing " + std::string(field));
  }
  return parent_.children[index_++];
}

const TlvNode& ChildCursor::Next(std::string_view field, TagClass tag_class,
                                 uint32_t number, bool constructed) {
  const TlvNode& node = Next(field);
  walker_.Expect(node, tag_class, number, constructed,
                 std::string(what_) + "." + std::string(field));
  return node;
}

void ChildCursor::Finish() {
  if (const TlvNode* extra = Peek()) {
    walker_.Fail(Code::GENERIC_ERROR, extra->header_offset,
                 std::string(what_) + ": unexpected " + TagDescription(*extra));
  }
}

}  // namespace x509strict::internal
