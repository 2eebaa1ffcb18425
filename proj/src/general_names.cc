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

#include "x509strict/general_names.h"

#include <cctype>

#include "walker.h"

namespace x509strict {

namespace {

bool IsAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

bool IsAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsAtext(char c) {
  if (IsAlnum(c)) return true;
  switch (c) {
    case '!':
    case '#':
    case '$':
    case '%':
    case '&':
    case '\'':
    case '*':
    case '+':
    case '-':
    case '/':
    case '=':
    case '?':
    case '^':
    case '_':
    case '`':
    case '{':
    case '|':
    case '}':
    case '~':
      return true;
    default:
      return false;
  }
}

bool IsDotAtom(std::string_view s) {
  if (s.empty() || s.front() == '.' || s.back() == '.') return false;
  char previous = 0;
  for (char c : s) {
    if (c == '.') {
      if (previous == '.') return false;
    } else if (!IsAtext(c)) {
      return false;
    }
    previous = c;
  }
  return true;
}

}  // namespace

bool IsValidDnsName(std::string_view name, GeneralNameContext context) {
  if (context == GeneralNameContext::kConstraint && !name.empty() &&
      name.front() == '.') {
    name.remove_prefix(1);
  }
  if (name.empty() || name.size() > 253) return false;
  while (true) {
    const size_t dot = name.find('.');
    std::string_view label = name.substr(0, dot);
    if (label.empty() || label.size() > 63) return false;
    if (label.front() == '-' || label.back() == '-') return false;
    for (char c : label) {
      if (!IsAlnum(c) && c != '-') return false;
    }
    if (dot == std::string_view::npos) return true;
    name.remove_prefix(dot + 1);
  }
}

bool IsValidEmail(std::string_view address, GeneralNameContext context) {
  const size_t at = address.find('@');
  if (at == std::string_view::npos) {
    return context == GeneralNameContext::kConstraint &&
           IsValidDnsName(address, context);
  }
  if (address.find('@', at + 1) != std::string_view::npos) return false;
  return IsDotAtom(address.substr(0, at)) &&
         IsValidDnsName(address.substr(at + 1));
}

bool IsValidUri(std::string_view uri, GeneralNameContext context) {
  if (context == GeneralNameContext::kConstraint) {
    return IsValidDnsName(uri, context);
  }
  for (char c : uri) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == 0x7F) return false;
  }
  const size_t colon = uri.find(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 == uri.size()) {
    return false;
  }
  if (!IsAlpha(uri[0])) return false;
  for (char c : uri.substr(1, colon - 1)) {
    if (!IsAlnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

namespace internal {

namespace {

// Returns false when the content is not IA5 text.
bool CheckText(Walker& w, const TlvNode& node, GeneralNameValue& out) {
  auto text = w.Take(ValidateCharset(Retag(node, tag::kIa5String)));
  if (!text) return false;
  out.text = std::move(*text);
  return true;
}

}  // namespace

GeneralNameValue WalkGeneralName(Walker& w, const TlvNode& node,
                                 GeneralNameContext context) {
  if (node.tag_class != TagClass::kContextSpecific || node.tag_number > 8) {
    w.Fail(Code::GENERIC_ERROR, node.header_offset,
           "GeneralName: unexpected " + TagDescription(node));
  }
  GeneralNameValue value;
  value.kind = static_cast<GeneralNameKind>(node.tag_number);
  value.offset = node.header_offset;

  const bool constructed = value.kind == GeneralNameKind::kOtherName ||
                           value.kind == GeneralNameKind::kX400Address ||
                           value.kind == GeneralNameKind::kDirectoryName ||
                           value.kind == GeneralNameKind::kEdiPartyName;
  if (node.constructed != constructed) {
    w.Fail(Code::GENERIC_ERROR, node.header_offset,
           "GeneralName: wrong form for " + TagDescription(node));
  }

  switch (value.kind) {
    case GeneralNameKind::kOtherName: {
      ChildCursor cursor(w, node, "otherName");
      const TlvNode& type = cursor.NextUniversal("type-id", tag::kOid, false);
      const TlvNode& inner =
          cursor.Next("value", TagClass::kContextSpecific, 0, true);
      cursor.Finish();
      if (inner.children.size() != 1) {
        w.Fail(Code::GENERIC_ERROR, inner.header_offset,
               "otherName value must hold exactly one element");
      }
      value.oid = w.Oid(type, Code::WRONG_OID);
      value.bytes = ToBytes(inner.content);
      break;
    }
    case GeneralNameKind::kRfc822Name:
      if (CheckText(w, node, value) && !IsValidEmail(value.text, context)) {
        w.Report(Code::BAD_DNS_URI_EMAIL_FORMAT, node.header_offset,
                 "malformed rfc822Name '" + value.text + "'");
      }
      break;
    case GeneralNameKind::kDnsName:
      if (CheckText(w, node, value) && !IsValidDnsName(value.text, context)) {
        w.Report(Code::BAD_DNS_URI_EMAIL_FORMAT, node.header_offset,
                 "malformed dNSName '" + value.text + "'");
      }
      break;
    case GeneralNameKind::kUri:
      if (CheckText(w, node, value) && !IsValidUri(value.text, context)) {
        w.Report(Code::BAD_DNS_URI_EMAIL_FORMAT, node.header_offset,
                 "malformed URI '" + value.text + "'");
      }
      break;
    case GeneralNameKind::kIpAddress: {
      value.bytes = ToBytes(node.content);
      const size_t n = node.content.size();
      const bool ok = context == GeneralNameContext::kName
                          ? (n == 4 || n == 16)
                          : (n == 8 || n == 32);
      if (!ok) {
        w.Report(Code::GENERIC_ERROR, node.header_offset,
                 "iPAddress of " + std::to_string(n) + " octets");
      }
      break;
    }
    case GeneralNameKind::kDirectoryName: {
      if (node.children.size() != 1) {
        w.Fail(Code::GENERIC_ERROR, node.header_offset,
               "directoryName must hold exactly one Name");
      }
      DiagnosticSink::Scope scope(w.sink(), "directoryName");
      value.directory_name = WalkName(w, node.children[0], NameRole::kOther);
      break;
    }
    case GeneralNameKind::kRegisteredId:
      value.oid = w.Oid(Retag(node, tag::kOid), Code::WRONG_OID);
      break;
    case GeneralNameKind::kX400Address:
    case GeneralNameKind::kEdiPartyName:
      value.bytes = ToBytes(node.content);
      break;
  }
  return value;
}

std::vector<GeneralNameValue> WalkGeneralNameList(Walker& w,
                                                  const TlvNode& node,
                                                  GeneralNameContext context) {
  std::vector<GeneralNameValue> names;
  if (node.children.empty()) {
    w.Report(Code::EMPTY_GENERAL_NAMES, node.header_offset,
             "GeneralNames must not be empty");
    return names;
  }
  for (size_t i = 0; i < node.children.size(); ++i) {
    DiagnosticSink::Scope scope(w.sink(), "name[" + std::to_string(i) + "]");
    names.push_back(WalkGeneralName(w, node.children[i], context));
  }
  return names;
}

std::vector<GeneralNameValue> WalkGeneralNames(Walker& w, const TlvNode& node,
                                               GeneralNameContext context) {
  w.ExpectUniversal(node, tag::kSequence, true, "GeneralNames");
  return WalkGeneralNameList(w, node, context);
}

}  // namespace internal

Parsed<std::vector<GeneralNameValue>> ParseGeneralNames(
    const TlvNode& node, GeneralNameContext context, const Registry& registry) {
  return internal::RunWalk<std::vector<GeneralNameValue>>(
      registry, [&](internal::Walker& w) {
        return internal::WalkGeneralNames(w, node, context);
      });
}

}  // namespace x509strict
