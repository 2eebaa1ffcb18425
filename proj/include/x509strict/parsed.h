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

#ifndef X509STRICT_PARSED_H_
#define X509STRICT_PARSED_H_

#include <optional>
#include <vector>

#include "x509strict/diagnostics.h"

namespace x509strict {

// Result of a grammar-level parse. `value` is empty when a structural
// mismatch stopped the walk; `diagnostics` holds everything found up to
// that point.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value && !HasRejectingDiagnostic(diagnostics); }
};

}  // namespace x509strict

#endif  // X509STRICT_PARSED_H_
