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

#ifndef X509STRICT_GENERAL_NAMES_H_
#define X509STRICT_GENERAL_NAMES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "x509strict/der.h"
#include "x509strict/name.h"
#include "x509strict/parsed.h"
#include "x509strict/registry.h"
#include "x509strict/values.h"

namespace x509strict {

// Values are the GeneralName context tag numbers.
enum class GeneralNameKind : uint32_t {
  kOtherName = 0,
  kRfc822Name = 1,
  kDnsName = 2,
  kX400Address = 3,
  kDirectoryName = 4,
  kEdiPartyName = 5,
  kUri = 6,
  kIpAddress = 7,
  kRegisteredId = 8,
};

// Name constraints reuse GeneralName with relaxed forms: domain-only
// email/URI constraints, a leading '.' on domains, and address/mask pairs.
enum class GeneralNameContext { kName, kConstraint };

struct GeneralNameValue {
  GeneralNameKind kind = GeneralNameKind::kDnsName;
  // IA5 text for rfc822Name, dNSName and URI.
  std::string text;
  // Raw content for iPAddress, otherName, x400Address and ediPartyName.
  std::vector<uint8_t> bytes;
  std::optional<NameValue> directory_name;
  // registeredID, or the type-id of an otherName.
  std::optional<ObjectIdentifier> oid;
  size_t offset = 0;
};

// Preferred name syntax: dot-separated labels of 1-63 letters, digits and
// hyphens, no hyphen at either end of a label, at most 253 octets overall.
bool IsValidDnsName(std::string_view name,
                    GeneralNameContext context = GeneralNameContext::kName);
// local-part "@" domain with exactly one '@'. In constraints a bare domain
// (optionally starting with '.') is also accepted.
bool IsValidEmail(std::string_view address,
                  GeneralNameContext context = GeneralNameContext::kName);
// scheme ":" rest, scheme per RFC 3986. In constraints the value is a host
// or a '.'-prefixed domain instead.
bool IsValidUri(std::string_view uri,
                GeneralNameContext context = GeneralNameContext::kName);

Parsed<std::vector<GeneralNameValue>> ParseGeneralNames(
    const TlvNode& node, GeneralNameContext context = GeneralNameContext::kName,
    const Registry& registry = Registry::Default());

}  // namespace x509strict

#endif  // X509STRICT_GENERAL_NAMES_H_
