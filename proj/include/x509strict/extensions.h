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

#ifndef X509STRICT_EXTENSIONS_H_
#define X509STRICT_EXTENSIONS_H_

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "x509strict/algorithm.h"
#include "x509strict/der.h"
#include "x509strict/general_names.h"
#include "x509strict/parsed.h"
#include "x509strict/registry.h"
#include "x509strict/values.h"

namespace x509strict {

enum class KeyUsageBit : size_t {
  kDigitalSignature = 0,
  kNonRepudiation = 1,
  kKeyEncipherment = 2,
  kDataEncipherment = 3,
  kKeyAgreement = 4,
  kKeyCertSign = 5,
  kCrlSign = 6,
  kEncipherOnly = 7,
  kDecipherOnly = 8,
};

inline constexpr size_t kKeyUsageBitCount = 9;

struct KeyUsageValue {
  BitStringValue bits;

  bool Has(KeyUsageBit bit) const { return bits.Bit(static_cast<size_t>(bit)); }
};

struct BasicConstraintsValue {
  bool ca = false;
  std::optional<Integer> path_len;
};

struct AuthorityKeyIdentifierValue {
  std::optional<std::vector<uint8_t>> key_identifier;
  std::optional<std::vector<GeneralNameValue>> authority_cert_issuer;
  std::optional<Integer> authority_cert_serial;
};

struct SubjectKeyIdentifierValue {
  std::vector<uint8_t> key_identifier;
};

struct GeneralNamesValue {
  std::vector<GeneralNameValue> names;
};

// ExtendedKeyUsage purposes, CertificatePolicies identifiers and
// SubjectDirectoryAttributes types.
struct OidListValue {
  std::vector<ObjectIdentifier> oids;
};

struct PolicyMappingsValue {
  std::vector<std::pair<ObjectIdentifier, ObjectIdentifier>> mappings;
};

struct GeneralSubtreeValue {
  GeneralNameValue base;
  std::optional<Integer> minimum;
  std::optional<Integer> maximum;
};

struct NameConstraintsValue {
  std::optional<std::vector<GeneralSubtreeValue>> permitted;
  std::optional<std::vector<GeneralSubtreeValue>> excluded;
};

struct PolicyConstraintsValue {
  std::optional<Integer> require_explicit_policy;
  std::optional<Integer> inhibit_policy_mapping;
};

struct DistributionPointValue {
  std::optional<std::vector<GeneralNameValue>> full_name;
  bool relative_name = false;
  std::optional<BitStringValue> reasons;
  std::optional<std::vector<GeneralNameValue>> crl_issuer;
};

struct CrlDistributionPointsValue {
  std::vector<DistributionPointValue> points;
};

struct InhibitAnyPolicyValue {
  Integer skip_certs;
};

struct AccessDescriptionValue {
  ObjectIdentifier method;
  GeneralNameValue location;
};

struct InfoAccessValue {
  std::vector<AccessDescriptionValue> descriptions;
};

// Body of an extension outside the registry, or of a registered extension
// whose body failed to parse. The payload is never interpreted.
struct OpaqueBody {};

using ExtensionBody = std::variant<
    OpaqueBody, AuthorityKeyIdentifierValue, SubjectKeyIdentifierValue,
    KeyUsageValue, OidListValue, PolicyMappingsValue, GeneralNamesValue,
    BasicConstraintsValue, NameConstraintsValue, PolicyConstraintsValue,
    CrlDistributionPointsValue, InhibitAnyPolicyValue, InfoAccessValue>;

struct ExtensionEntry {
  ObjectIdentifier extn_id;
  bool critical = false;
  // Content octets of the extnValue OCTET STRING.
  std::vector<uint8_t> value_raw;
  // Absolute offset of value_raw[0] in the certificate.
  size_t value_offset = 0;
  size_t offset = 0;
  // Registered body grammar; empty for unknown extensions.
  std::optional<Grammar> grammar;
  ExtensionBody body;
  // False when a registered body failed to parse and `body` is opaque.
  bool body_parsed = false;
};

struct ExtensionSet {
  std::vector<ExtensionEntry> entries;
  std::set<ObjectIdentifier> seen_oids;

  // First entry with the given grammar, if any.
  const ExtensionEntry* Find(Grammar grammar) const;
  const ExtensionEntry* Find(const ObjectIdentifier& oid) const;

  template <typename T>
  const T* Body(Grammar grammar) const {
    const ExtensionEntry* entry = Find(grammar);
    return entry ? std::get_if<T>(&entry->body) : nullptr;
  }

  // Unknown extensions marked critical. Callers that honor the must-fail
  // rule for unrecognized critical extensions read this.
  std::vector<const ExtensionEntry*> UnknownCritical() const;
};

// `node` is the [3] EXPLICIT wrapper. Entries are parsed under the relaxed
// grammar first, then the extnID uniqueness check runs, then registered
// bodies are parsed.
Parsed<ExtensionSet> ParseExtensions(
    const TlvNode& node, const Registry& registry = Registry::Default());

// Parses entry.value_raw under the registered grammar for entry.grammar.
Parsed<ExtensionBody> ParseStandardExtensionBody(
    const ExtensionEntry& entry,
    const Registry& registry = Registry::Default());

Parsed<BasicConstraintsValue> ParseBasicConstraints(
    const ExtensionEntry& entry);
Parsed<KeyUsageValue> ParseKeyUsage(const ExtensionEntry& entry);

std::vector<Diagnostic> CheckKeyCertSignRules(const ExtensionSet& extensions);
std::vector<Diagnostic> CheckSubjectKeyIdRule(const ExtensionSet& extensions);
std::vector<Diagnostic> CheckKeyUsageVsAlgorithm(const KeyUsageValue& key_usage,
                                                 const SpkiValue& spki);

// Key usage bits permitted for a public key grammar. Empty when the key
// family has no defined constraint.
std::optional<std::set<KeyUsageBit>> AllowedKeyUsages(Grammar key_grammar);

}  // namespace x509strict

#endif  // X509STRICT_EXTENSIONS_H_
