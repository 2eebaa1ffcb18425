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

#include "x509strict/registry.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace x509strict {

namespace internal {
extern const std::string_view kEmbeddedRegistry;
}  // namespace internal

namespace {

struct GrammarInfo {
  Grammar grammar;
  RegistryRole role;
  std::string_view name;
};

constexpr GrammarInfo kGrammars[] = {
    {Grammar::kRsaPkcs1, RegistryRole::kSignature, "rsa-pkcs1"},
    {Grammar::kRsassaPss, RegistryRole::kSignature, "rsassa-pss"},
    {Grammar::kDsaSig, RegistryRole::kSignature, "dsa-sig"},
    {Grammar::kEcdsaSig, RegistryRole::kSignature, "ecdsa-sig"},
    {Grammar::kGostSig, RegistryRole::kSignature, "gost-sig"},
    {Grammar::kRsaKey, RegistryRole::kPublicKey, "rsa-key"},
    {Grammar::kRsaPssKey, RegistryRole::kPublicKey, "rsa-pss-key"},
    {Grammar::kEcKey, RegistryRole::kPublicKey, "ec-key"},
    {Grammar::kDsaKey, RegistryRole::kPublicKey, "dsa-key"},
    {Grammar::kDhKey, RegistryRole::kPublicKey, "dh-key"},
    {Grammar::kKeaKey, RegistryRole::kPublicKey, "kea-key"},
    {Grammar::kGost2001Key, RegistryRole::kPublicKey, "gost2001-key"},
    {Grammar::kGost94Key, RegistryRole::kPublicKey, "gost94-key"},
    {Grammar::kCurve, RegistryRole::kNamedCurve, "coord-"},
    {Grammar::kHash, RegistryRole::kHash, "hash"},
    {Grammar::kMgf1, RegistryRole::kMgf, "mgf1"},
    {Grammar::kAuthorityKeyIdentifier, RegistryRole::kExtension,
     "authority-key-identifier"},
    {Grammar::kSubjectKeyIdentifier, RegistryRole::kExtension,
     "subject-key-identifier"},
    {Grammar::kKeyUsage, RegistryRole::kExtension, "key-usage"},
    {Grammar::kCertificatePolicies, RegistryRole::kExtension,
     "certificate-policies"},
    {Grammar::kPolicyMappings, RegistryRole::kExtension, "policy-mappings"},
    {Grammar::kSubjectAltName, RegistryRole::kExtension, "subject-alt-name"},
    {Grammar::kIssuerAltName, RegistryRole::kExtension, "issuer-alt-name"},
    {Grammar::kSubjectDirectoryAttributes, RegistryRole::kExtension,
     "subject-directory-attributes"},
    {Grammar::kBasicConstraints, RegistryRole::kExtension, "basic-constraints"},
    {Grammar::kNameConstraints, RegistryRole::kExtension, "name-constraints"},
    {Grammar::kPolicyConstraints, RegistryRole::kExtension,
     "policy-constraints"},
    {Grammar::kExtKeyUsage, RegistryRole::kExtension, "ext-key-usage"},
    {Grammar::kCrlDistributionPoints, RegistryRole::kExtension,
     "crl-distribution-points"},
    {Grammar::kInhibitAnyPolicy, RegistryRole::kExtension,
     "inhibit-any-policy"},
    {Grammar::kFreshestCrl, RegistryRole::kExtension, "freshest-crl"},
    {Grammar::kAuthorityInfoAccess, RegistryRole::kExtension,
     "authority-info-access"},
    {Grammar::kSubjectInfoAccess, RegistryRole::kExtension,
     "subject-info-access"},
    {Grammar::kDirectoryString, RegistryRole::kNameAttribute,
     "directory-string"},
    {Grammar::kPrintable, RegistryRole::kNameAttribute, "printable"},
    {Grammar::kCountry, RegistryRole::kNameAttribute, "country"},
    {Grammar::kIa5, RegistryRole::kNameAttribute, "ia5"},
};

struct RoleInfo {
  RegistryRole role;
  std::string_view name;
};

constexpr RoleInfo kRoles[] = {
    {RegistryRole::kSignature, "signature"},
    {RegistryRole::kPublicKey, "public-key"},
    {RegistryRole::kNamedCurve, "named-curve"},
    {RegistryRole::kHash, "hash"},
    {RegistryRole::kMgf, "mgf"},
    {RegistryRole::kExtension, "extension"},
    {RegistryRole::kNameAttribute, "name-attribute"},
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string LineError(size_t line, std::string_view what) {
  return "registry line " + std::to_string(line) + ": " + std::string(what);
}

}  // namespace

std::string_view RoleName(RegistryRole role) {
  for (const auto& info : kRoles) {
    if (info.role == role) return info.name;
  }
  return "?";
}

std::string_view GrammarName(Grammar grammar) {
  for (const auto& info : kGrammars) {
    if (info.grammar == grammar) return info.name;
  }
  return "?";
}

Expected<Registry, std::string> Registry::Parse(std::string_view text) {
  Registry registry;
  size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    line = Trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;

    const size_t first = line.find(';');
    const size_t second =
        first == std::string_view::npos ? first : line.find(';', first + 1);
    if (second == std::string_view::npos ||
        line.find(';', second + 1) != std::string_view::npos) {
      return MakeUnexpected(
          LineError(line_number, "expected 'dotted-OID ; role ; grammar'"));
    }
    const std::string_view oid_text = Trim(line.substr(0, first));
    const std::string_view role_text =
        Trim(line.substr(first + 1, second - first - 1));
    const std::string_view grammar_text = Trim(line.substr(second + 1));

    auto arcs = ParseDottedOid(oid_text);
    if (!arcs) {
      return MakeUnexpected(LineError(
          line_number, "malformed OID '" + std::string(oid_text) + "'"));
    }

    const RoleInfo* role = nullptr;
    for (const auto& info : kRoles) {
      if (info.name == role_text) role = &info;
    }
    if (!role) {
      return MakeUnexpected(LineError(
          line_number, "unknown role '" + std::string(role_text) + "'"));
    }

    RegistryEntry entry{*arcs, role->role, Grammar::kHash, 0, line_number};
    bool matched = false;
    if (role->role == RegistryRole::kNamedCurve) {
      constexpr std::string_view kPrefix = "coord-";
      if (grammar_text.substr(0, kPrefix.size()) == kPrefix) {
        std::string_view digits = grammar_text.substr(kPrefix.size());
        uint32_t size = 0;
        auto [end, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), size);
        if (ec == std::errc() && end == digits.data() + digits.size() &&
            size > 0 && size <= 1024) {
          entry.grammar = Grammar::kCurve;
          entry.coordinate_size = size;
          matched = true;
        }
      }
    } else {
      for (const auto& info : kGrammars) {
        if (info.role == role->role && info.name == grammar_text) {
          entry.grammar = info.grammar;
          matched = true;
        }
      }
    }
    if (!matched) {
      return MakeUnexpected(
          LineError(line_number, "grammar '" + std::string(grammar_text) +
                                     "' is not valid for role '" +
                                     std::string(role_text) + "'"));
    }

    auto key = std::make_pair(entry.role, entry.arcs);
    if (registry.entries_.count(key)) {
      return MakeUnexpected(LineError(
          line_number, "duplicate record for " + std::string(oid_text)));
    }
    registry.entries_.emplace(std::move(key), std::move(entry));
  }
  return registry;
}

Expected<Registry, std::string> Registry::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeUnexpected("cannot open registry file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto parsed = Parse(buffer.str());
  if (!parsed) return MakeUnexpected(path + ": " + parsed.error());
  return parsed;
}

const Registry& Registry::Default() {
  static const Registry registry = [] {
    auto parsed = Parse(internal::kEmbeddedRegistry);
    if (!parsed) {
      throw std::logic_error("embedded registry is invalid: " + parsed.error());
    }
    return std::move(*parsed);
  }();
  return registry;
}

const RegistryEntry* Registry::Find(RegistryRole role,
                                    const std::vector<uint32_t>& arcs) const {
  auto it = entries_.find(std::make_pair(role, arcs));
  return it == entries_.end() ? nullptr : &it->second;
}

const RegistryEntry* Registry::Find(RegistryRole role,
                                    std::string_view dotted) const {
  auto arcs = ParseDottedOid(dotted);
  return arcs ? Find(role, *arcs) : nullptr;
}

bool Registry::Contains(const std::vector<uint32_t>& arcs) const {
  for (const auto& info : kRoles) {
    if (Find(info.role, arcs)) return true;
  }
  return false;
}

std::vector<const RegistryEntry*> Registry::EntriesFor(
    RegistryRole role) const {
  std::vector<const RegistryEntry*> out;
  for (const auto& [key, entry] : entries_) {
    if (key.first == role) out.push_back(&entry);
  }
  return out;
}

}  // namespace x509strict
