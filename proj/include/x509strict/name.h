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

#ifndef X509STRICT_NAME_H_
#define X509STRICT_NAME_H_

#include <cstdint>
#include <string>
#include <vector>

#include "x509strict/der.h"
#include "x509strict/parsed.h"
#include "x509strict/registry.h"
#include "x509strict/values.h"

namespace x509strict {

struct AttributeTypeAndValue {
  ObjectIdentifier type;
  uint32_t value_tag = 0;
  // UTF-8 for string values that validated, raw content otherwise.
  std::string value;
  size_t offset = 0;
};

using RelativeDistinguishedName = std::vector<AttributeTypeAndValue>;

struct NameValue {
  std::vector<RelativeDistinguishedName> rdns;
  std::vector<uint8_t> raw_encoding;

  bool empty() const { return rdns.empty(); }
};

// kOther is used for names nested inside GeneralName and similar slots,
// where no issuer/subject specific rule applies.
enum class NameRole { kIssuer, kSubject, kOther };

Parsed<NameValue> ParseName(const TlvNode& node, NameRole role,
                            const Registry& registry = Registry::Default());

}  // namespace x509strict

#endif  // X509STRICT_NAME_H_
