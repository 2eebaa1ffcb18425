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

#include "x509strict/cs_checks.h"

#include <algorithm>

namespace x509strict {

CsCheckInput MakeCsCheckInput(const ParsedCertificate& certificate) {
  CsCheckInput input;
  input.inner_alg_raw = certificate.tbs.signature.raw_encoding;
  input.outer_alg_raw = certificate.signature_algorithm.raw_encoding;
  input.subject_raw = certificate.tbs.subject.raw_encoding;
  input.issuer_raw = certificate.tbs.issuer.raw_encoding;
  if (certificate.tbs.extensions) {
    if (const auto* aki =
            certificate.tbs.extensions->Body<AuthorityKeyIdentifierValue>(
                Grammar::kAuthorityKeyIdentifier)) {
      input.aki = *aki;
    }
  }
  return input;
}

bool IsSelfIssued(const CsCheckInput& input) {
  return std::ranges::equal(input.subject_raw, input.issuer_raw);
}

std::vector<Diagnostic> CheckAidMatch(const CsCheckInput& input) {
  std::vector<Diagnostic> out;
  if (!std::ranges::equal(input.inner_alg_raw, input.outer_alg_raw)) {
    out.push_back(MakeDiagnostic(
        Code::SIGNATURE_ALGORITHM_MISMATCH, std::nullopt, "signatureAlgorithm",
        "signatureAlgorithm differs from tbsCertificate.signature"));
  }
  return out;
}

std::vector<Diagnostic> CheckSelfIssuedAki(const CsCheckInput& input,
                                           SelfIssuedRule rule) {
  std::vector<Diagnostic> out;
  if (input.aki && input.aki->key_identifier) return out;
  const bool self_issued = IsSelfIssued(input);
  constexpr const char* kPath = "tbsCertificate.extensions";
  if (self_issued) {
    out.push_back(MakeDiagnostic(
        Code::MISSING_KEY_IDENTIFIER_SELF_ISSUED, std::nullopt, kPath,
        "self-issued certificate without authorityKeyIdentifier "
        "keyIdentifier"));
  } else if (rule == SelfIssuedRule::kNotSelfIssued) {
    out.push_back(MakeDiagnostic(
        Code::MISSING_KEY_IDENTIFIER_NOT_SELF_ISSUED, std::nullopt, kPath,
        "certificate not self-issued and without authorityKeyIdentifier "
        "keyIdentifier"));
  }
  return out;
}

}  // namespace x509strict
