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

#ifndef X509STRICT_REGISTRY_H_
#define X509STRICT_REGISTRY_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "x509strict/expected.h"
#include "x509strict/values.h"

namespace x509strict {

enum class RegistryRole {
  kSignature,
  kPublicKey,
  kNamedCurve,
  kHash,
  kMgf,
  kExtension,
  kNameAttribute,
};

// Parameter or body grammar bound to a registered OID. Each role accepts a
// fixed subset; the parser rejects records that pair a role with a grammar
// it does not accept.
enum class Grammar {
  // signature
  kRsaPkcs1,
  kRsassaPss,
  kDsaSig,
  kEcdsaSig,
  kGostSig,
  // public-key
  kRsaKey,
  kRsaPssKey,
  kEcKey,
  kDsaKey,
  kDhKey,
  kKeaKey,
  kGost2001Key,
  kGost94Key,
  // named-curve (coordinate size kept in RegistryEntry)
  kCurve,
  // hash, mgf
  kHash,
  kMgf1,
  // extension
  kAuthorityKeyIdentifier,
  kSubjectKeyIdentifier,
  kKeyUsage,
  kCertificatePolicies,
  kPolicyMappings,
  kSubjectAltName,
  kIssuerAltName,
  kSubjectDirectoryAttributes,
  kBasicConstraints,
  kNameConstraints,
  kPolicyConstraints,
  kExtKeyUsage,
  kCrlDistributionPoints,
  kInhibitAnyPolicy,
  kFreshestCrl,
  kAuthorityInfoAccess,
  kSubjectInfoAccess,
  // name-attribute
  kDirectoryString,
  kPrintable,
  kCountry,
  kIa5,
};

std::string_view RoleName(RegistryRole role);
std::string_view GrammarName(Grammar grammar);

struct RegistryEntry {
  std::vector<uint32_t> arcs;
  RegistryRole role;
  Grammar grammar;
  // Octets per curve coordinate; only meaningful for kCurve.
  uint32_t coordinate_size = 0;
  size_t line = 0;
};

class Registry {
 public:
  // Parses the line format "dotted-OID ; role ; grammar". Errors name the
  // offending line.
  static Expected<Registry, std::string> Parse(std::string_view text);
  static Expected<Registry, std::string> Load(const std::string& path);

  // The registry compiled in from data/registry.txt.
  static const Registry& Default();

  const RegistryEntry* Find(RegistryRole role,
                            const std::vector<uint32_t>& arcs) const;
  const RegistryEntry* Find(RegistryRole role,
                            const ObjectIdentifier& oid) const {
    return Find(role, oid.arcs());
  }
  const RegistryEntry* Find(RegistryRole role, std::string_view dotted) const;

  bool Contains(const std::vector<uint32_t>& arcs) const;
  size_t size() const { return entries_.size(); }
  std::vector<const RegistryEntry*> EntriesFor(RegistryRole role) const;

 private:
  std::map<std::pair<RegistryRole, std::vector<uint32_t>>, RegistryEntry>
      entries_;
};

}  // namespace x509strict

#endif  // X509STRICT_REGISTRY_H_
