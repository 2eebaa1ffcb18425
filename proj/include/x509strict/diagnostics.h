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

#ifndef X509STRICT_DIAGNOSTICS_H_
#define X509STRICT_DIAGNOSTICS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "x509strict/expected.h"

namespace x509strict {

enum class Severity { kSecurityCritical, kNonCritical };

// Error categories used when classifying the messages of external
// validators. Everything this library emits is kSyntactic.
enum class Category { kSyntactic, kValidation, kGeneric };

// The closed set of diagnostic codes. Columns: identifier, severity, whether
// the code rejects the certificate, and the prose label used in reports.
//
// The first block refines "Lexing Error": DER encoding violations found by
// the TLV layer or by primitive value decoding.
#define X509STRICT_DIAGNOSTIC_CODES(X)                                         \
  X(LEXING_ERROR, kSecurityCritical, true, "Lexing Error")                     \
  X(LENGTH_BYTE_FORBIDDEN, kSecurityCritical, true, "Indefinite length octet") \
  X(LENGTH_TOO_LARGE, kSecurityCritical, true, "Length exceeds 2^32-1")        \
  X(NON_MINIMAL_LENGTH, kSecurityCritical, true, "Non-minimal length")         \
  X(CHILD_OVERFLOW, kSecurityCritical, true,                                   \
    "Element exceeds enclosing length")                                        \
  X(TRAILING_BYTES, kSecurityCritical, true, "Trailing bytes")                 \
  X(TRUNCATED_INPUT, kSecurityCritical, true, "Truncated input")               \
  X(NESTING_TOO_DEEP, kSecurityCritical, true, "Nesting too deep")             \
  X(NON_MINIMAL_INTEGER, kSecurityCritical, true, "Non-minimal INTEGER")       \
  X(NON_CANONICAL_BOOLEAN, kSecurityCritical, true, "Non-canonical BOOLEAN")   \
  X(DEFAULT_VALUE_ENCODED, kSecurityCritical, true,                            \
    "DEFAULT value explicitly encoded")                                        \
  X(OID_MALFORMED, kSecurityCritical, true, "Malformed OID")                   \
  X(MALFORMED_TIME, kSecurityCritical, true, "Malformed time")                 \
  X(MALFORMED_PUBLIC_KEY, kSecurityCritical, true, "Malformed public key")     \
  X(MALFORMED_SIGNATURE_STRUCTURE, kSecurityCritical, true,                    \
    "Malformed signature structure")                                           \
  X(KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS, kSecurityCritical, true,          \
    "keyCertSign in leaf certificates w/o basicConstraints")                   \
  X(KEY_USAGE_VIOLATION_ON_PK_ALGORITHM, kSecurityCritical, true,              \
    "keyUsage violation on PK algorithm")                                      \
  X(KEY_CERT_SIGN_IN_LEAF, kSecurityCritical, true,                            \
    "keyCertSign in leaf certificates")                                        \
  X(WRONG_STRING_TYPE, kSecurityCritical, true, "Wrong string type")           \
  X(CHAR_SET_VIOLATION, kSecurityCritical, true, "Char Set Violation")         \
  X(BAD_DNS_URI_EMAIL_FORMAT, kSecurityCritical, true,                         \
    "Bad DNS/URI/email format")                                                \
  X(EMPTY_ISSUER_DN, kSecurityCritical, true,                                  \
    "Empty Issuer Distinguished Name")                                         \
  X(DUPLICATED_EXTENSION, kSecurityCritical, true, "Duplicated Extension")     \
  X(UNEXPECTED_NULL_IN_ALGORITHM_PARAMS, kSecurityCritical, true,              \
    "Unexpected NULL in AlgorithmIdP")                                         \
  X(OID_ARC_OVERFLOW, kSecurityCritical, true, "OID Arc overflow")             \
  X(WRONG_ALGORITHM, kSecurityCritical, true, "Wrong algorithm")               \
  X(INVALID_DATE, kSecurityCritical, true, "Invalid date")                     \
  X(EXTENSIONS_REQUIRE_V3, kSecurityCritical, true,                            \
    "Extension found but version != 3")                                        \
  X(UNIQUE_ID_REQUIRES_V2PLUS, kSecurityCritical, true,                        \
    "Unique identifier found but version < 2")                                 \
  X(SIGNATURE_ALGORITHM_MISMATCH, kSecurityCritical, true,                     \
    "Signature algorithm mismatch")                                            \
  X(MISSING_PARAMETERS, kSecurityCritical, true,                               \
    "Missing algorithm parameters")                                            \
  X(MALFORMED_PARAMETERS, kSecurityCritical, true,                             \
    "Malformed algorithm parameters")                                          \
  X(WRONG_KEY_CERT_SIGN_ENCODING, kNonCritical, true, "keyCertSign encoding")  \
  X(EMPTY_VALUE_FIELD, kNonCritical, true, "Empty value field")                \
  X(WRONG_OID_IN_DN, kNonCritical, true, "Wrong OID in Distinguished Name")    \
  X(PATH_LEN_IN_NON_CRITICAL_BC, kNonCritical, true,                           \
    "pathLenConstraint in not critical basicConstraints")                      \
  X(WRONG_EXTN_ID, kNonCritical, true, "Wrong extnId")                         \
  X(GENERIC_ERROR, kNonCritical, true, "generic error")                        \
  X(MISSING_SUBJECT_KEY_ID, kNonCritical, true, "missing subjectKeyId")        \
  X(NON_CRITICAL_BASIC_CONSTRAINTS, kNonCritical, true,                        \
    "not critical basicConstraints")                                           \
  X(WRONG_OID, kNonCritical, true, "wrong OID")                                \
  X(PATH_LEN_IN_LEAF, kNonCritical, true,                                      \
    "pathLenConstraint in leaf certificates")                                  \
  X(EMPTY_GENERAL_NAMES, kNonCritical, true, "empty generalNames")             \
  X(EMPTY_STRING, kNonCritical, true, "empty string")                          \
  X(INVALID_DISTINGUISHED_NAME, kNonCritical, true,                            \
    "invalid Distinguished Name")                                              \
  X(MISSING_KEY_IDENTIFIER_NOT_SELF_ISSUED, kNonCritical, true,                \
    "missing keyIdentifier in not self-issued cert")                           \
  X(BAD_BIT_STRING_ENCODING, kNonCritical, true, "Bad BIT STRING encoding")    \
  X(REDUNDANT_TRAILING_BYTES, kNonCritical, true, "Redundant Trailing Bytes")  \
  X(EMPTY_SEQUENCE_IN_INFO_ACCESS, kNonCritical, true,                         \
    "Empty sequence in Authority/Subject Information Access")                  \
  X(EMPTY_EXTENSION_SEQUENCE, kNonCritical, true, "Empty extensions sequence") \
  X(EMPTY_KEY_USAGE, kNonCritical, true, "keyUsage with no bit set")           \
  X(NEGATIVE_PATH_LEN, kNonCritical, true, "Negative pathLenConstraint")       \
  X(MISSING_KEY_IDENTIFIER_SELF_ISSUED, kNonCritical, false,                   \
    "missing keyIdentifier in self-issued certificate")                        \
  X(NON_POSITIVE_SERIAL, kNonCritical, false,                                  \
    "Serial number is zero or negative")

enum class Code : uint16_t {
#define X509STRICT_ENUM_ENTRY(name, severity, rejects, label) name,
  X509STRICT_DIAGNOSTIC_CODES(X509STRICT_ENUM_ENTRY)
#undef X509STRICT_ENUM_ENTRY
};

inline constexpr size_t kCodeCount = []() {
  size_t n = 0;
#define X509STRICT_COUNT_ENTRY(name, severity, rejects, label) ++n;
  X509STRICT_DIAGNOSTIC_CODES(X509STRICT_COUNT_ENTRY)
#undef X509STRICT_COUNT_ENTRY
  return n;
}();

struct CodeInfo {
  Code code;
  std::string_view name;
  Severity severity;
  bool rejects;
  std::string_view label;
};

// Registry of all codes, indexed by the enum value.
std::span<const CodeInfo> AllCodes();
const CodeInfo& InfoFor(Code code);

std::string_view CodeName(Code code);
Severity SeverityOf(Code code);
bool IsRejecting(Code code);

enum class LookupError { kUnknownCode };

// Looks a code up by its SCREAMING_SNAKE identifier.
Expected<Code, LookupError> CodeFromName(std::string_view name);
Expected<Severity, LookupError> SeverityOf(std::string_view name);

std::string_view SeverityName(Severity severity);
std::string_view CategoryName(Category category);
std::optional<Category> CategoryFromName(std::string_view name);

struct Diagnostic {
  Code code;
  Severity severity;
  Category category = Category::kSyntactic;
  std::optional<size_t> byte_offset;
  std::string grammar_path;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic MakeDiagnostic(Code code, std::optional<size_t> offset,
                          std::string grammar_path, std::string message);

bool HasRejectingDiagnostic(std::span<const Diagnostic> diagnostics);
bool HasCode(std::span<const Diagnostic> diagnostics, Code code);

// Collects diagnostics while a grammar walk is in progress. Scope objects
// maintain the dotted grammar path attached to each diagnostic.
class DiagnosticSink {
 public:
  class Scope {
   public:
    Scope(DiagnosticSink& sink, std::string_view segment);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    DiagnosticSink& sink_;
    size_t previous_length_;
  };

  void Add(Code code, std::optional<size_t> offset, std::string message);
  void Append(std::span<const Diagnostic> diagnostics);

  std::string_view path() const { return path_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  std::vector<Diagnostic> Take() { return std::move(diagnostics_); }

 private:
  std::string path_;
  std::vector<Diagnostic> diagnostics_;
};

// Per-code certificate counts over a corpus. Codes are counted once per
// certificate.
struct Histogram {
  std::map<Code, uint64_t> counts;
  uint64_t total = 0;
  uint64_t accepted = 0;
  uint64_t rejected = 0;

  void Add(std::span<const Diagnostic> certificate_diagnostics);
  void Merge(const Histogram& other);

  bool operator==(const Histogram&) const = default;
};

Histogram Aggregate(std::span<const std::vector<Diagnostic>> results);

// Exact-match table mapping (validator, message) pairs reported by external
// TLS libraries to an error category.
class ExternalMessageTable {
 public:
  // Line format: "validator ; message ; category". '#' starts a comment.
  static Expected<ExternalMessageTable, std::string> Parse(
      std::string_view text);
  static const ExternalMessageTable& Default();

  enum class Error { kUnmappedMessage };
  Expected<Category, Error> Classify(std::string_view validator,
                                     std::string_view message) const;

  size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, Category> entries_;
};

Expected<Category, ExternalMessageTable::Error> ClassifyExternalMessage(
    std::string_view validator, std::string_view message);

}  // namespace x509strict

#endif  // X509STRICT_DIAGNOSTICS_H_
