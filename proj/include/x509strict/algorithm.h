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

#ifndef X509STRICT_ALGORITHM_H_
#define X509STRICT_ALGORITHM_H_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "x509strict/der.h"
#include "x509strict/parsed.h"
#include "x509strict/registry.h"
#include "x509strict/values.h"

namespace x509strict {

enum class ParametersKind { kAbsent, kNull, kNamedCurve, kStructured };

enum class AlgorithmContext { kSignature, kPublicKey };

struct AlgorithmIdentifierValue {
  ObjectIdentifier oid;
  ParametersKind parameters_kind = ParametersKind::kAbsent;
  // Full TLV of the parameters, empty when absent.
  std::vector<uint8_t> parameters_raw;
  // Full TLV of the AlgorithmIdentifier SEQUENCE.
  std::vector<uint8_t> raw_encoding;
  // Registered grammar; empty for an OID outside the registry.
  std::optional<Grammar> grammar;
  std::optional<ObjectIdentifier> named_curve;
  uint32_t coordinate_size = 0;
  size_t offset = 0;
};

struct RsaPublicKey {
  Integer modulus;
  Integer public_exponent;
};

struct EcPoint {
  std::vector<uint8_t> octets;
  bool compressed = false;
};

// RSA: modulus/exponent. EC: point. DSA/DH: the public integer. GOST: the
// inner OCTET STRING. KEA and unknown keys stay as raw octets.
using DecodedKey = std::variant<std::monostate, RsaPublicKey, EcPoint, Integer,
                                std::vector<uint8_t>>;

struct SpkiValue {
  AlgorithmIdentifierValue algorithm;
  BitStringValue public_key_bits;
  DecodedKey decoded_key;
  std::vector<uint8_t> raw_encoding;
};

// DSA and ECDSA signature payload.
struct DssSignature {
  Integer r;
  Integer s;
};

struct SignatureValue {
  BitStringValue bits;
  std::optional<DssSignature> decoded;
};

Parsed<AlgorithmIdentifierValue> ParseAlgorithmIdentifier(
    const TlvNode& node, AlgorithmContext context,
    const Registry& registry = Registry::Default());

Parsed<SpkiValue> ParseSpki(const TlvNode& node,
                            const Registry& registry = Registry::Default());

Parsed<SignatureValue> ParseSignatureValue(
    const TlvNode& node, const AlgorithmIdentifierValue& algorithm);

}  // namespace x509strict

#endif  // X509STRICT_ALGORITHM_H_
