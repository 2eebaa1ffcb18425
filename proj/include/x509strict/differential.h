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

#ifndef X509STRICT_DIFFERENTIAL_H_
#define X509STRICT_DIFFERENTIAL_H_

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "x509strict/diagnostics.h"
#include "x509strict/expected.h"
#include "x509strict/report.h"

namespace x509strict {

inline constexpr std::string_view kValidLabel = "VALID";

// Separates certificate ids inside a chain id, trust anchor first.
inline constexpr char kChainSeparator = '|';

// One validator's outcome for one chain. outcome_label is kValidLabel or an
// error label specific to the validator.
struct ChainOutcomeRecord {
  std::string chain_id;
  std::string leaf_cert_id;
  std::string validator_id;
  std::string outcome_label;

  bool operator==(const ChainOutcomeRecord&) const = default;
};

enum class Verdict { kValid, kInvalid };
enum class RuleApplied { kLeafValid, kCaShadowed, kDistinctError };

std::string_view VerdictName(Verdict verdict);
std::string_view RuleName(RuleApplied rule);

struct DifferentialVerdict {
  std::string leaf_cert_id;
  std::string validator_id;
  Verdict verdict = Verdict::kInvalid;
  RuleApplied rule_applied = RuleApplied::kDistinctError;

  bool operator==(const DifferentialVerdict&) const = default;
};

// A leaf is invalid only if its chain fails with an error other than the one
// reported for the chain ending at its CA. Labels are compared as strings.
DifferentialVerdict ClassifyDifferential(std::string_view leaf_outcome,
                                         std::string_view ca_outcome);

// Same, for a chain that has no CA sub-chain (a single certificate).
DifferentialVerdict ClassifyWithoutCa(std::string_view leaf_outcome);

// Columns: chain_id,leaf_cert_id,validator_id,outcome_label. An identical
// header row is skipped. Fields may be quoted as in RFC 4180.
Expected<std::vector<ChainOutcomeRecord>, std::string> ParseOutcomeCsv(
    std::string_view text);

std::vector<std::string> SplitChainId(std::string_view chain_id);
// The chain with its last certificate removed; empty for a one-element chain.
std::string CaChainId(std::string_view chain_id);

enum class AnalysisIssueKind {
  kMissingCaRecord,
  kDuplicateRecord,
  kLeafMismatch,
  kEmptyChain,
};

std::string_view AnalysisIssueName(AnalysisIssueKind kind);

struct AnalysisIssue {
  AnalysisIssueKind kind;
  std::string chain_id;
  std::string validator_id;
  std::string detail;
};

struct ChainAnalysis {
  // One verdict per (certificate, validator). A certificate that ends
  // several chains is valid if any of them is.
  std::vector<DifferentialVerdict> verdicts;
  std::vector<AnalysisIssue> issues;
};

ChainAnalysis AnalyzeChains(const std::vector<ChainOutcomeRecord>& records);

struct ValidatorCounts {
  uint64_t rejected_valid = 0;  // disagreement
  uint64_t rejected_invalid = 0;
  uint64_t accepted_valid = 0;
  uint64_t accepted_invalid = 0;
  // Rejecting codes of the disagreeing certificates, once per certificate.
  std::map<Code, uint64_t> disagreement_codes;

  bool operator==(const ValidatorCounts&) const = default;
};

struct DisagreementTable {
  std::map<std::string, ValidatorCounts> validators;
  // Verdicts whose certificate has no report, and reports with no verdict.
  std::vector<std::string> unjoined_verdicts;
  std::vector<std::string> unjoined_reports;
};

// Joins verdicts to reports on the report id or its SHA-256 hex digest.
DisagreementTable CrossTabulate(
    const std::vector<CertificateReport>& reports,
    const std::vector<DifferentialVerdict>& verdicts);

// Reads the certificate lines of lint JSONL output; error and summary lines
// are skipped.
Expected<std::vector<CertificateReport>, std::string> ReadReportLines(
    std::istream& in);

nlohmann::ordered_json VerdictsToJson(
    const std::vector<DifferentialVerdict>& verdicts);
nlohmann::ordered_json TableToJson(const DisagreementTable& table,
                                   const std::vector<AnalysisIssue>& issues);

}  // namespace x509strict

#endif  // X509STRICT_DIFFERENTIAL_H_
