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

#ifndef X509STRICT_TESTS_SUPPORT_TEST_UTIL_H_
#define X509STRICT_TESTS_SUPPORT_TEST_UTIL_H_

#include <set>
#include <string>
#include <vector>

#include "der_builder.h"
#include "x509strict/certificate.h"
#include "x509strict/diagnostics.h"

namespace x509test {

inline std::set<x509strict::Code> CodeSet(
    const std::vector<x509strict::Diagnostic>& diagnostics) {
  std::set<x509strict::Code> codes;
  for (const auto& d : diagnostics) codes.insert(d.code);
  return codes;
}

inline std::string Describe(
    const std::vector<x509strict::Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    out += std::string(x509strict::CodeName(d.code)) + " at " + d.grammar_path +
           ": " + d.message + "\n";
  }
  return out.empty() ? "(none)" : out;
}

inline x509strict::ParsedCertificate ParseBytes(const Bytes& der) {
  return x509strict::ParseCertificate(der);
}

// Parses `der`, which must be one complete TLV.
inline x509strict::TlvNode MustParseTlv(const Bytes& der) {
  auto node = x509strict::ParseTlvTree(der);
  if (!node) throw std::runtime_error("fixture is not DER");
  return *node;
}

}  // namespace x509test

#endif  // X509STRICT_TESTS_SUPPORT_TEST_UTIL_H_
