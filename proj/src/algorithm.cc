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

#include "x509strict/algorithm.h"

#include "walker.h"

namespace x509strict {

namespace internal {

namespace {

// Structural issue found inside algorithm parameters.
struct ParamIssue {
  Code code;
  size_t offset;
  std::string message;
};

using ParamCheck = std::optional<ParamIssue>;

ParamIssue Malformed(const TlvNode& node, std::string message) {
  return ParamIssue{Code::MALFORMED_PARAMETERS, node.header_offset,
                    std::move(message)};
}

bool IsNull(const TlvNode& node) { return node.IsUniversal(tag::kNull, false); }

bool IsInteger(const TlvNode& node) {
  return node.IsUniversal(tag::kInteger, false) && DecodeInteger(node);
}

std::optional<Integer> IntegerOf(const TlvNode& node) {
  if (!node.IsUniversal(tag::kInteger, false)) return std::nullopt;
  auto value = DecodeInteger(node);
  if (!value) return std::nullopt;
  return *value;
}

// SEQUENCE of exactly `count` INTEGERs.
bool IsIntegerSequence(const TlvNode& node, size_t count) {
  if (!node.IsUniversal(tag::kSequence, true) ||
      node.children.size() != count) {
    return false;
  }
  for (const TlvNode& child : node.children) {
    if (!IsInteger(child)) return false;
  }
  return true;
}

// Hash AlgorithmIdentifier inside RSASSA-PSS parameters. Parameters may be
// absent or NULL.
ParamCheck CheckHashAlgorithm(const Registry& registry, const TlvNode& node,
                              std::optional<ObjectIdentifier>* oid_out) {
  if (!node.IsUniversal(tag::kSequence, true) || node.children.empty() ||
      node.children.size() > 2) {
    return Malformed(node, "hash AlgorithmIdentifier malformed");
  }
  auto oid = DecodeOid(node.children[0]);
  if (!oid || !registry.Find(RegistryRole::kHash, *oid)) {
    return Malformed(node, "hash algorithm not registered");
  }
  if (node.children.size() == 2 &&
      !(IsNull(node.children[1]) && node.children[1].content.empty())) {
    return Malformed(node.children[1],
                     "hash parameters must be NULL or absent");
  }
  *oid_out = *oid;
  return std::nullopt;
}

bool IsSha1(const ObjectIdentifier& oid) {
  return oid.arcs() == std::vector<uint32_t>{1, 3, 14, 3, 2, 26};
}

// RSASSA-PSS-params. Fields equal to their DEFAULT must be omitted.
ParamCheck CheckPssParameters(const Registry& registry, const TlvNode& node) {
  if (!node.IsUniversal(tag::kSequence, true)) {
    return Malformed(node, "RSASSA-PSS-params must be a SEQUENCE");
  }
  uint32_t expected_tag = 0;
  for (const TlvNode& field : node.children) {
    if (field.tag_class != TagClass::kContextSpecific || !field.constructed ||
        field.tag_number > 3 || field.tag_number < expected_tag ||
        field.children.size() != 1) {
      return Malformed(field, "unexpected field in RSASSA-PSS-params");
    }
    expected_tag = field.tag_number + 1;
    const TlvNode& inner = field.children[0];
    switch (field.tag_number) {
      case 0: {
        std::optional<ObjectIdentifier> hash;
        if (auto issue = CheckHashAlgorithm(registry, inner, &hash)) {
          return issue;
        }
        if (IsSha1(*hash)) {
          return ParamIssue{Code::DEFAULT_VALUE_ENCODED, field.header_offset,
                            "hashAlgorithm equal to its default"};
        }
        break;
      }
      case 1: {
        if (!inner.IsUniversal(tag::kSequence, true) ||
            inner.children.size() != 2) {
          return Malformed(inner, "maskGenAlgorithm malformed");
        }
        auto mgf = DecodeOid(inner.children[0]);
        if (!mgf || !registry.Find(RegistryRole::kMgf, *mgf)) {
          return Malformed(inner, "mask generation function not registered");
        }
        std::optional<ObjectIdentifier> hash;
        if (auto issue =
                CheckHashAlgorithm(registry, inner.children[1], &hash)) {
          return issue;
        }
        if (IsSha1(*hash)) {
          return ParamIssue{Code::DEFAULT_VALUE_ENCODED, field.header_offset,
                            "maskGenAlgorithm equal to its default"};
        }
        break;
      }
      case 2: {
        auto salt = IntegerOf(inner);
        if (!salt || salt->IsNegative()) {
          return Malformed(inner, "saltLength must be a non-negative INTEGER");
        }
        if (salt->ToInt64() == 20) {
          return ParamIssue{Code::DEFAULT_VALUE_ENCODED, field.header_offset,
                            "saltLength equal to its default"};
        }
        break;
      }
      case 3: {
        auto trailer = IntegerOf(inner);
        if (!trailer || trailer->ToInt64() != 1) {
          return Malformed(inner, "trailerField must be 1");
        }
        return ParamIssue{Code::DEFAULT_VALUE_ENCODED, field.header_offset,
                          "trailerField equal to its default"};
      }
    }
  }
  return std::nullopt;
}

// DomainParameters ::= SEQUENCE { p, g, q INTEGER, j INTEGER OPTIONAL,
//   validationParms SEQUENCE { seed BIT STRING, pgenCounter INTEGER }
//   OPTIONAL }
bool IsDhDomainParameters(const TlvNode& node) {
  if (!node.IsUniversal(tag::kSequence, true)) return false;
  const auto& c = node.children;
  if (c.size() < 3 || c.size() > 5) return false;
  for (size_t i = 0; i < 3; ++i) {
    if (!IsInteger(c[i])) return false;
  }
  size_t i = 3;
  if (i < c.size() && c[i].IsUniversal(tag::kInteger, false)) {
    if (!IsInteger(c[i])) return false;
    ++i;
  }
  if (i < c.size()) {
    const TlvNode& v = c[i];
    if (!v.IsUniversal(tag::kSequence, true) || v.children.size() != 2 ||
        !DecodeBitString(v.children[0]) || !IsInteger(v.children[1])) {
      return false;
    }
    ++i;
  }
  return i == c.size();
}

// GOST R 34.10 public key parameters: SEQUENCE { publicKeyParamSet OID,
// digestParamSet OID, encryptionParamSet OID OPTIONAL }.
bool IsGostParameters(const TlvNode& node) {
  if (!node.IsUniversal(tag::kSequence, true)) return false;
  if (node.children.size() < 2 || node.children.size() > 3) return false;
  for (const TlvNode& child : node.children) {
    if (!child.IsUniversal(tag::kOid, false) || !DecodeOid(child)) return false;
  }
  return true;
}

enum class ParamRule { kNull, kAbsent, kRequired, kOptional };

ParamRule RuleFor(Grammar grammar) {
  switch (grammar) {
    case Grammar::kRsaPkcs1:
    case Grammar::kRsaKey:
      return ParamRule::kNull;
    case Grammar::kDsaSig:
    case Grammar::kEcdsaSig:
    case Grammar::kGostSig:
      return ParamRule::kAbsent;
    case Grammar::kRsassaPss:
    case Grammar::kEcKey:
    case Grammar::kDhKey:
    case Grammar::kKeaKey:
      return ParamRule::kRequired;
    default:
      return ParamRule::kOptional;
  }
}

}  // namespace

AlgorithmIdentifierValue WalkAlgorithmIdentifier(Walker& w, const TlvNode& node,
                                                 AlgorithmContext context) {
  w.ExpectUniversal(node, tag::kSequence, true, "AlgorithmIdentifier");
  ChildCursor cursor(w, node, "AlgorithmIdentifier");
  const TlvNode& algorithm =
      cursor.NextUniversal("algorithm", tag::kOid, false);
  const TlvNode* parameters = cursor.Peek();
  if (parameters) cursor.Next("parameters");
  cursor.Finish();

  AlgorithmIdentifierValue value;
  value.raw_encoding = ToBytes(node.encoding);
  value.offset = node.header_offset;
  if (parameters) {
    value.parameters_raw = ToBytes(parameters->encoding);
    if (IsNull(*parameters)) {
      value.parameters_kind = ParametersKind::kNull;
    } else if (parameters->IsUniversal(tag::kOid, false)) {
      value.parameters_kind = ParametersKind::kNamedCurve;
    } else {
      value.parameters_kind = ParametersKind::kStructured;
    }
  }

  auto oid = w.Oid(algorithm);
  if (!oid) return value;
  value.oid = *oid;

  const RegistryRole role = context == AlgorithmContext::kSignature
                                ? RegistryRole::kSignature
                                : RegistryRole::kPublicKey;
  const RegistryEntry* entry = w.registry().Find(role, value.oid);
  if (!entry) {
    w.Report(Code::WRONG_ALGORITHM, algorithm.header_offset,
             "algorithm " + value.oid.ToString() + " is not registered as " +
                 std::string(RoleName(role)));
    return value;
  }
  value.grammar = entry->grammar;

  if (parameters && IsNull(*parameters) && !parameters->content.empty()) {
    w.Report(Code::MALFORMED_PARAMETERS, parameters->header_offset,
             "NULL with content octets");
    return value;
  }

  const ParamRule rule = RuleFor(entry->grammar);
  const std::string name = value.oid.ToString();
  if (!parameters) {
    if (rule == ParamRule::kNull || rule == ParamRule::kRequired) {
      w.Report(Code::MISSING_PARAMETERS, node.header_offset,
               "parameters required for " + name);
    }
    return value;
  }
  if (rule == ParamRule::kNull) {
    if (!IsNull(*parameters)) {
      w.Report(Code::MALFORMED_PARAMETERS, parameters->header_offset,
               "parameters for " + name + " must be NULL");
    }
    return value;
  }
  if (IsNull(*parameters)) {
    w.Report(Code::UNEXPECTED_NULL_IN_ALGORITHM_PARAMS,
             parameters->header_offset,
             "NULL parameters not allowed for " + name);
    return value;
  }
  if (rule == ParamRule::kAbsent) {
    w.Report(Code::MALFORMED_PARAMETERS, parameters->header_offset,
             "parameters must be absent for " + name);
    return value;
  }

  ParamCheck issue;
  switch (entry->grammar) {
    case Grammar::kRsassaPss:
    case Grammar::kRsaPssKey:
      issue = CheckPssParameters(w.registry(), *parameters);
      break;
    case Grammar::kEcKey: {
      const RegistryEntry* curve = nullptr;
      if (parameters->IsUniversal(tag::kOid, false)) {
        if (auto curve_oid = DecodeOid(*parameters)) {
          curve = w.registry().Find(RegistryRole::kNamedCurve, *curve_oid);
          if (curve) {
            value.named_curve = *curve_oid;
            value.coordinate_size = curve->coordinate_size;
          }
        }
      }
      if (!curve) {
        issue = Malformed(*parameters,
                          "EC parameters must name a registered "
                          "curve");
      }
      break;
    }
    case Grammar::kDsaKey:
      if (!IsIntegerSequence(*parameters, 3)) {
        issue = Malformed(*parameters, "Dss-Parms must be SEQUENCE {p, q, g}");
      }
      break;
    case Grammar::kDhKey:
      if (!IsDhDomainParameters(*parameters)) {
        issue = Malformed(*parameters, "malformed DH DomainParameters");
      }
      break;
    case Grammar::kKeaKey:
      if (!parameters->IsUniversal(tag::kOctetString, false)) {
        issue = Malformed(*parameters, "KEA-Parms-Id must be an OCTET STRING");
      }
      break;
    case Grammar::kGost2001Key:
    case Grammar::kGost94Key:
      if (!IsGostParameters(*parameters)) {
        issue = Malformed(*parameters, "malformed GOST key parameters");
      }
      break;
    default:
      issue = Malformed(*parameters, "unexpected parameters for " + name);
      break;
  }
  if (issue) w.Report(issue->code, issue->offset, issue->message);
  return value;
}

namespace {

// Parses the payload of a BIT STRING as one TLV followed by nothing.
// Reports and returns nullopt on failure; reports trailing octets as
// REDUNDANT_TRAILING_BYTES but still returns the inner node.
std::optional<TlvNode> ParseKeyPayload(Walker& w,
                                       std::span<const uint8_t> payload,
                                       size_t base) {
  size_t consumed = 0;
  auto inner = ParseTlvPrefix(payload, base, &consumed);
  if (!inner) {
    w.Report(
        Code::MALFORMED_PUBLIC_KEY, inner.error().offset,
        "public key DER: " + std::string(DerErrorName(inner.error().error)));
    return std::nullopt;
  }
  if (consumed < payload.size()) {
    w.Report(Code::REDUNDANT_TRAILING_BYTES, base + consumed,
             std::to_string(payload.size() - consumed) +
                 " octets after the public key structure");
  }
  return std::move(*inner);
}

std::optional<Integer> KeyInteger(Walker& w, const TlvNode& node,
                                  std::string_view what) {
  if (!node.IsUniversal(tag::kInteger, false)) {
    w.Report(Code::MALFORMED_PUBLIC_KEY, node.header_offset,
             std::string(what) + " must be an INTEGER");
    return std::nullopt;
  }
  auto value = w.Take(DecodeInteger(node));
  if (value && (value->IsNegative() || value->IsZero())) {
    w.Report(Code::MALFORMED_PUBLIC_KEY, node.header_offset,
             std::string(what) + " must be positive");
  }
  return value;
}

DecodedKey DecodeKey(Walker& w, const AlgorithmIdentifierValue& algorithm,
                     const TlvNode& key_node) {
  std::span<const uint8_t> payload = key_node.content.subspan(1);
  const size_t base = key_node.content_offset + 1;
  if (payload.empty()) {
    w.Report(Code::MALFORMED_PUBLIC_KEY, key_node.header_offset,
             "empty public key");
    return std::monostate{};
  }

  switch (*algorithm.grammar) {
    case Grammar::kRsaKey:
    case Grammar::kRsaPssKey: {
      auto inner = ParseKeyPayload(w, payload, base);
      if (!inner) return std::monostate{};
      if (!inner->IsUniversal(tag::kSequence, true) ||
          inner->children.size() != 2) {
        w.Report(Code::MALFORMED_PUBLIC_KEY, inner->header_offset,
                 "RSAPublicKey must be SEQUENCE {modulus, publicExponent}");
        return std::monostate{};
      }
      auto n = KeyInteger(w, inner->children[0], "modulus");
      auto e = KeyInteger(w, inner->children[1], "publicExponent");
      if (!n || !e) return std::monostate{};
      return RsaPublicKey{*n, *e};
    }
    case Grammar::kDsaKey:
    case Grammar::kDhKey: {
      auto inner = ParseKeyPayload(w, payload, base);
      if (!inner) return std::monostate{};
      auto y = KeyInteger(w, *inner, "public key");
      if (!y) return std::monostate{};
      return *y;
    }
    case Grammar::kEcKey: {
      const size_t n = algorithm.coordinate_size;
      if (n == 0) return std::monostate{};
      const uint8_t form = payload[0];
      const bool ok =
          (form == 0x04 && payload.size() == 1 + 2 * n) ||
          ((form == 0x02 || form == 0x03) && payload.size() == 1 + n);
      if (!ok) {
        w.Report(Code::MALFORMED_PUBLIC_KEY, base,
                 "EC point of " + std::to_string(payload.size()) +
                     " octets does not match a " + std::to_string(n) +
                     "-octet curve");
        return std::monostate{};
      }
      return EcPoint{ToBytes(payload), form != 0x04};
    }
    case Grammar::kGost2001Key:
    case Grammar::kGost94Key: {
      auto inner = ParseKeyPayload(w, payload, base);
      if (!inner) return std::monostate{};
      const size_t expected =
          *algorithm.grammar == Grammar::kGost2001Key ? 64 : 128;
      if (!inner->IsUniversal(tag::kOctetString, false) ||
          inner->content.size() != expected) {
        w.Report(Code::MALFORMED_PUBLIC_KEY, inner->header_offset,
                 "GOST public key must be an OCTET STRING of " +
                     std::to_string(expected) + " octets");
        return std::monostate{};
      }
      return ToBytes(inner->content);
    }
    default:
      return ToBytes(payload);
  }
}

}  // namespace

SpkiValue WalkSpki(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kSequence, true, "SubjectPublicKeyInfo");
  ChildCursor cursor(w, node, "SubjectPublicKeyInfo");
  const TlvNode& algorithm =
      cursor.NextUniversal("algorithm", tag::kSequence, true);
  const TlvNode& key =
      cursor.NextUniversal("subjectPublicKey", tag::kBitString, false);
  cursor.Finish();

  SpkiValue value;
  value.raw_encoding = ToBytes(node.encoding);
  {
    DiagnosticSink::Scope scope(w.sink(), "algorithm");
    value.algorithm =
        WalkAlgorithmIdentifier(w, algorithm, AlgorithmContext::kPublicKey);
  }

  DiagnosticSink::Scope scope(w.sink(), "subjectPublicKey");
  auto bits = w.Take(DecodeBitString(key));
  if (!bits) return value;
  value.public_key_bits = std::move(*bits);
  if (!value.algorithm.grammar) return value;
  if (value.public_key_bits.unused_bits != 0) {
    w.Report(Code::MALFORMED_PUBLIC_KEY, key.content_offset,
             "public key BIT STRING must be octet aligned");
    return value;
  }
  value.decoded_key = DecodeKey(w, value.algorithm, key);
  return value;
}

SignatureValue WalkSignatureValue(Walker& w, const TlvNode& node,
                                  const AlgorithmIdentifierValue& algorithm) {
  w.ExpectUniversal(node, tag::kBitString, false, "signatureValue");
  SignatureValue value;
  auto bits = w.Take(DecodeBitString(node));
  if (!bits) return value;
  value.bits = std::move(*bits);
  if (value.bits.unused_bits != 0) {
    w.Report(Code::BAD_BIT_STRING_ENCODING, node.content_offset,
             "signature BIT STRING must be octet aligned");
    return value;
  }
  if (value.bits.bits.empty()) {
    w.Report(Code::EMPTY_VALUE_FIELD, node.header_offset, "empty signature");
    return value;
  }
  if (!algorithm.grammar || (*algorithm.grammar != Grammar::kDsaSig &&
                             *algorithm.grammar != Grammar::kEcdsaSig)) {
    return value;
  }

  auto inner = ParseTlvTree(node.content.subspan(1), node.content_offset + 1);
  if (!inner) {
    w.Report(
        Code::MALFORMED_SIGNATURE_STRUCTURE, inner.error().offset,
        "signature DER: " + std::string(DerErrorName(inner.error().error)));
    return value;
  }
  const auto& c = inner->children;
  if (!inner->IsUniversal(tag::kSequence, true) || c.size() != 2 ||
      !c[0].IsUniversal(tag::kInteger, false) ||
      !c[1].IsUniversal(tag::kInteger, false)) {
    w.Report(Code::MALFORMED_SIGNATURE_STRUCTURE, inner->header_offset,
             "signature must be SEQUENCE {r INTEGER, s INTEGER}");
    return value;
  }
  auto r = w.Take(DecodeInteger(c[0]));
  auto s = w.Take(DecodeInteger(c[1]));
  if (!r || !s) return value;
  if (r->IsNegative() || r->IsZero() || s->IsNegative() || s->IsZero()) {
    w.Report(Code::MALFORMED_SIGNATURE_STRUCTURE, inner->header_offset,
             "signature components must be positive");
    return value;
  }
  value.decoded = DssSignature{*r, *s};
  return value;
}

}  // namespace internal

Parsed<AlgorithmIdentifierValue> ParseAlgorithmIdentifier(
    const TlvNode& node, AlgorithmContext context, const Registry& registry) {
  return internal::RunWalk<AlgorithmIdentifierValue>(
      registry, [&](internal::Walker& w) {
        return internal::WalkAlgorithmIdentifier(w, node, context);
      });
}

Parsed<SpkiValue> ParseSpki(const TlvNode& node, const Registry& registry) {
  return internal::RunWalk<SpkiValue>(registry, [&](internal::Walker& w) {
    return internal::WalkSpki(w, node);
  });
}

Parsed<SignatureValue> ParseSignatureValue(
    const TlvNode& node, const AlgorithmIdentifierValue& algorithm) {
  return internal::RunWalk<SignatureValue>(
      Registry::Default(), [&](internal::Walker& w) {
        return internal::WalkSignatureValue(w, node, algorithm);
      });
}

}  // namespace x509strict
