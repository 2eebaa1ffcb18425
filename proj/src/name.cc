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

#include "x509strict/name.h"

#include <algorithm>
#include <initializer_list>

#include "walker.h"

namespace x509strict {

namespace internal {

namespace {

// X.690 SET OF ordering: encodings compared as octet strings, the shorter
// one padded with trailing zero octets.
bool SetOfOrdered(const TlvNode& a, const TlvNode& b) {
  const auto& x = a.encoding;
  const auto& y = b.encoding;
  const size_t n = std::max(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    const uint8_t p = i < x.size() ? x[i] : 0;
    const uint8_t q = i < y.size() ? y[i] : 0;
    if (p != q) return p < q;
  }
  return true;
}

bool IsStringTag(uint32_t tag_number) {
  switch (tag_number) {
    case tag::kUtf8String:
    case tag::kPrintableString:
    case tag::kTeletexString:
    case tag::kIa5String:
    case tag::kVisibleString:
    case tag::kUniversalString:
    case tag::kBmpString:
      return true;
    default:
      return false;
  }
}

bool Allowed(uint32_t tag_number, std::initializer_list<uint32_t> tags) {
  return std::find(tags.begin(), tags.end(), tag_number) != tags.end();
}

bool TagPermitted(Grammar grammar, uint32_t tag_number) {
  switch (grammar) {
    case Grammar::kDirectoryString:
      return Allowed(tag_number, {tag::kPrintableString, tag::kUtf8String});
    case Grammar::kPrintable:
    case Grammar::kCountry:
      return tag_number == tag::kPrintableString;
    case Grammar::kIa5:
      return tag_number == tag::kIa5String;
    default:
      return false;
  }
}

void CheckAttributeValue(Walker& w, Grammar grammar, const TlvNode& node,
                         AttributeTypeAndValue& out) {
  out.value_tag = node.tag_number;
  out.value.assign(node.content.begin(), node.content.end());
  if (node.tag_class != TagClass::kUniversal || node.constructed ||
      !IsStringTag(node.tag_number) ||
      !TagPermitted(grammar, node.tag_number)) {
    w.Report(Code::WRONG_STRING_TYPE, node.header_offset,
             TagDescription(node) + " not permitted for attribute " +
                 out.type.ToString());
    return;
  }
  if (node.content.empty()) {
    w.Report(Code::EMPTY_STRING, node.header_offset,
             "empty value for attribute " + out.type.ToString());
    return;
  }
  auto text = w.Take(ValidateCharset(node));
  if (!text) return;
  out.value = std::move(*text);
  if (grammar == Grammar::kCountry && node.content.size() != 2) {
    w.Report(Code::INVALID_DISTINGUISHED_NAME, node.header_offset,
             "country code must be two characters");
  }
}

}  // namespace

NameValue WalkName(Walker& w, const TlvNode& node, NameRole role) {
  w.ExpectUniversal(node, tag::kSequence, true, "Name");
  NameValue value;
  value.raw_encoding = ToBytes(node.encoding);
  if (role == NameRole::kIssuer && node.children.empty()) {
    w.Report(Code::EMPTY_ISSUER_DN, node.header_offset,
             "issuer Name has no RDNs");
  }

  for (size_t i = 0; i < node.children.size(); ++i) {
    const TlvNode& rdn = node.children[i];
    DiagnosticSink::Scope scope(w.sink(), "rdn[" + std::to_string(i) + "]");
    if (!rdn.IsUniversal(tag::kSet, true) || rdn.children.empty()) {
      w.Report(Code::INVALID_DISTINGUISHED_NAME, rdn.header_offset,
               "RDN must be a non-empty SET");
      continue;
    }
    for (size_t k = 1; k < rdn.children.size(); ++k) {
      if (!SetOfOrdered(rdn.children[k - 1], rdn.children[k])) {
        w.Report(Code::INVALID_DISTINGUISHED_NAME,
                 rdn.children[k].header_offset,
                 "RDN SET elements not in DER order");
        break;
      }
    }

    RelativeDistinguishedName attributes;
    for (const TlvNode& atv : rdn.children) {
      if (!atv.IsUniversal(tag::kSequence, true) || atv.children.size() != 2 ||
          !atv.children[0].IsUniversal(tag::kOid, false)) {
        w.Report(Code::INVALID_DISTINGUISHED_NAME, atv.header_offset,
                 "AttributeTypeAndValue must be SEQUENCE {OID, value}");
        continue;
      }
      AttributeTypeAndValue attribute;
      attribute.offset = atv.header_offset;
      auto type = w.Oid(atv.children[0], Code::WRONG_OID_IN_DN);
      if (!type) continue;
      attribute.type = *type;
      const TlvNode& v = atv.children[1];
      const RegistryEntry* entry =
          w.registry().Find(RegistryRole::kNameAttribute, attribute.type);
      if (!entry) {
        w.Report(Code::WRONG_OID_IN_DN, atv.children[0].header_offset,
                 "unknown naming attribute " + attribute.type.ToString());
        attribute.value_tag = v.tag_number;
        attribute.value.assign(v.content.begin(), v.content.end());
      } else {
        CheckAttributeValue(w, entry->grammar, v, attribute);
      }
      attributes.push_back(std::move(attribute));
    }
    value.rdns.push_back(std::move(attributes));
  }
  return value;
}

}  // namespace internal

Parsed<NameValue> ParseName(const TlvNode& node, NameRole role,
                            const Registry& registry) {
  return internal::RunWalk<NameValue>(registry, [&](internal::Walker& w) {
    return internal::WalkName(w, node, role);
  });
}

}  // namespace x509strict
