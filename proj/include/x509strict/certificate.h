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

#ifndef X509STRICT_CERTIFICATE_H_
#define X509STRICT_CERTIFICATE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "x509strict/algorithm.h"
#include "x509strict/der.h"
#include "x509strict/diagnostics.h"
#include "x509strict/extensions.h"
#include "x509strict/name.h"
#include "x509strict/registry.h"
#include "x509strict/values.h"

namespace x509strict {

struct ByteRange {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool operator==(const ByteRange&) const = default;
};

struct ValidityValue {
  TimeValue not_before;
  TimeValue not_after;
};

struct ParsedTbs {
  // 1, 2 or 3.
  int version = 1;
  bool version_encoded = false;
  Integer serial_number;
  AlgorithmIdentifierValue signature;
  NameValue issuer;
  ValidityValue validity;
  NameValue subject;
  SpkiValue spki;
  std::optional<BitStringValue> issuer_unique_id;
  std::optional<BitStringValue> subject_unique_id;
  std::optional<ExtensionSet> extensions;

  // Header offsets of the optional fields, for diagnostics.
  size_t version_offset = 0;
  size_t unique_id_offset = 0;
  size_t extensions_offset = 0;
};

struct ParsedCertificate {
  ParsedTbs tbs;
  AlgorithmIdentifierValue signature_algorithm;
  SignatureValue signature_value;
  ByteRange tbs_raw_span;
  ByteRange signature_algorithm_span;
  ByteRange signature_value_span;
  std::vector<Diagnostic> diagnostics;
  // True when the structural walk reached the end of the certificate.
  bool complete = false;

  bool Accepted() const {
    return complete && !HasRejectingDiagnostic(diagnostics);
  }
};

struct ParseOptions {
  // Defaults to Registry::Default().
  const Registry* registry = nullptr;
  bool run_cs_checks = true;
};

// Runs the DER layer, the certificate grammar, the extension checks and the
// context-sensitive checks, in that order.
ParsedCertificate ParseCertificate(std::span<const uint8_t> input,
                                   const ParseOptions& options = {});

std::vector<Diagnostic> CheckVersionGating(const ParsedTbs& tbs);

// Diagnostic code for a DER-layer failure.
Code CodeForDerError(DerError error);

}  // namespace x509strict

#endif  // X509STRICT_CERTIFICATE_H_
