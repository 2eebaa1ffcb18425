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

#ifndef X509STRICT_CS_CHECKS_H_
#define X509STRICT_CS_CHECKS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "x509strict/certificate.h"
#include "x509strict/diagnostics.h"
#include "x509strict/extensions.h"

namespace x509strict {

struct CsCheckInput {
  std::span<const uint8_t> inner_alg_raw;
  std::span<const uint8_t> outer_alg_raw;
  std::span<const uint8_t> subject_raw;
  std::span<const uint8_t> issuer_raw;
  std::optional<AuthorityKeyIdentifierValue> aki;
};

// Which certificates must carry an AKI keyIdentifier. kNotSelfIssued is the
// rule applied by ParseCertificate; kSelfIssued is the reversed reading,
// kept so both can be exercised side by side.
enum class SelfIssuedRule { kNotSelfIssued, kSelfIssued };

CsCheckInput MakeCsCheckInput(const ParsedCertificate& certificate);

bool IsSelfIssued(const CsCheckInput& input);

std::vector<Diagnostic> CheckAidMatch(const CsCheckInput& input);
std::vector<Diagnostic> CheckSelfIssuedAki(
    const CsCheckInput& input,
    SelfIssuedRule rule = SelfIssuedRule::kNotSelfIssued);

}  // namespace x509strict

#endif  // X509STRICT_CS_CHECKS_H_
