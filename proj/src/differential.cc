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

#include "x509strict/differential.h"

#include <set>
#include <tuple>
#include <unordered_map>

namespace x509strict {
namespace {

constexpr std::string_view kCsvHeader[] = {"chain_id", "leaf_cert_id",
                                           "validator_id", "outcome_label"};

struct CsvRow {
  std::vector<std::string> fields;
  size_t line = 0;
};

// Splits RFC 4180 text into rows. Blank lines are dropped.
Expected<std::vector<CsvRow>, std::string> SplitCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::vector<std::string> row;
  size_t row_line = 1;
  std::string field;
  bool in_quotes = false;
  bool quoted = false;
  bool row_has_content = false;
  size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    quoted = false;
  };
  auto end_row = [&] {
    end_field();
    if (row_has_content || row.size() > 1) {
      rows.push_back({std::move(row), row_line});
    }
    row.clear();
    row_has_content = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == ',') {
      end_field();
      row_has_content = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
      ++line;
      row_line = line;
    } else if (c == '"') {
      if (!field.empty() || quoted) {
        return MakeUnexpected("line " + std::to_string(line) +
                              ": stray quote inside field");
      }
      in_quotes = true;
      quoted = true;
      row_has_content = true;
    } else {
      if (quoted) {
        return MakeUnexpected("line " + std::to_string(line) +
                              ": text after closing quote");
      }
      field += c;
      row_has_content = true;
    }
  }
  if (in_quotes) {
    return MakeUnexpected("line " + std::to_string(line) +
                          ": unterminated quoted field");
  }
  end_row();
  return rows;
}

bool IsHeader(const std::vector<std::string>& row) {
  if (row.size() != std::size(kCsvHeader)) return false;
  for (size_t i = 0; i < row.size(); ++i) {
    if (row[i] != kCsvHeader[i]) return false;
  }
  return true;
}

}  // namespace

std::string_view VerdictName(Verdict verdict) {
  return verdict == Verdict::kValid ? "valid" : "invalid";
}

std::string_view RuleName(RuleApplied rule) {
  switch (rule) {
    case RuleApplied::kLeafValid:
      return "leaf-valid";
    case RuleApplied::kCaShadowed:
      return "ca-shadowed";
    case RuleApplied::kDistinctError:
      return "distinct-error";
  }
  return "unknown";
}

DifferentialVerdict ClassifyDifferential(std::string_view leaf_outcome,
                                         std::string_view ca_outcome) {
  DifferentialVerdict v;
  if (leaf_outcome == kValidLabel) {
    v.verdict = Verdict::kValid;
    v.rule_applied = RuleApplied::kLeafValid;
  } else if (leaf_outcome == ca_outcome) {
    v.verdict = Verdict::kValid;
    v.rule_applied = RuleApplied::kCaShadowed;
  } else {
    v.verdict = Verdict::kInvalid;
    v.rule_applied = RuleApplied::kDistinctError;
  }
  return v;
}

DifferentialVerdict ClassifyWithoutCa(std::string_view leaf_outcome) {
  DifferentialVerdict v;
  if (leaf_outcome == kValidLabel) {
    v.verdict = Verdict::kValid;
    v.rule_applied = RuleApplied::kLeafValid;
  }
  return v;
}

Expected<std::vector<ChainOutcomeRecord>, std::string> ParseOutcomeCsv(
    std::string_view text) {
  auto rows = SplitCsv(text);
  if (!rows) return MakeUnexpected(rows.error());
  std::vector<ChainOutcomeRecord> records;
  for (size_t i = 0; i < rows->size(); ++i) {
    auto& row = (*rows)[i].fields;
    if (i == 0 && IsHeader(row)) continue;
    if (row.size() != 4) {
      return MakeUnexpected("line " + std::to_string((*rows)[i].line) +
                            ": expected 4 fields, found " +
                            std::to_string(row.size()));
    }
    records.push_back({std::move(row[0]), std::move(row[1]), std::move(row[2]),
                       std::move(row[3])});
  }
  return records;
}

std::vector<std::string> SplitChainId(std::string_view chain_id) {
  std::vector<std::string> parts;
  if (chain_id.empty()) return parts;
  size_t start = 0;
  while (true) {
    const size_t pos = chain_id.find(kChainSeparator, start);
    parts.emplace_back(chain_id.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string CaChainId(std::string_view chain_id) {
  const size_t pos = chain_id.rfind(kChainSeparator);
  if (pos == std::string_view::npos) return {};
  return std::string(chain_id.substr(0, pos));
}

std::string_view AnalysisIssueName(AnalysisIssueKind kind) {
  switch (kind) {
    case AnalysisIssueKind::kMissingCaRecord:
      return "missing_ca_record";
    case AnalysisIssueKind::kDuplicateRecord:
      return "duplicate_record";
    case AnalysisIssueKind::kLeafMismatch:
      return "leaf_mismatch";
    case AnalysisIssueKind::kEmptyChain:
      return "empty_chain";
  }
  return "unknown";
}

ChainAnalysis AnalyzeChains(const std::vector<ChainOutcomeRecord>& records) {
  ChainAnalysis analysis;
  using Key = std::pair<std::string, std::string>;
  std::map<Key, const ChainOutcomeRecord*> by_chain;
  std::vector<const ChainOutcomeRecord*> unique;
  for (const ChainOutcomeRecord& r : records) {
    auto [it, inserted] = by_chain.emplace(Key{r.chain_id, r.validator_id}, &r);
    if (!inserted) {
      if (it->second->outcome_label != r.outcome_label ||
          it->second->leaf_cert_id != r.leaf_cert_id) {
        analysis.issues.push_back({AnalysisIssueKind::kDuplicateRecord,
                                   r.chain_id, r.validator_id,
                                   "conflicting record ignored"});
      }
      continue;
    }
    unique.push_back(&r);
  }

  std::map<Key, DifferentialVerdict> merged;
  for (const ChainOutcomeRecord* r : unique) {
    const std::vector<std::string> chain = SplitChainId(r->chain_id);
    if (chain.empty()) {
      analysis.issues.push_back({AnalysisIssueKind::kEmptyChain, r->chain_id,
                                 r->validator_id, "chain id is empty"});
      continue;
    }
    if (chain.back() != r->leaf_cert_id) {
      analysis.issues.push_back(
          {AnalysisIssueKind::kLeafMismatch, r->chain_id, r->validator_id,
           "chain ends with '" + chain.back() + "', record names '" +
               r->leaf_cert_id + "'"});
      continue;
    }

    DifferentialVerdict v;
    if (r->outcome_label == kValidLabel || chain.size() == 1) {
      v = ClassifyWithoutCa(r->outcome_label);
    } else {
      auto ca = by_chain.find(Key{CaChainId(r->chain_id), r->validator_id});
      if (ca == by_chain.end()) {
        analysis.issues.push_back(
            {AnalysisIssueKind::kMissingCaRecord, r->chain_id, r->validator_id,
             "no record for chain '" + CaChainId(r->chain_id) + "'"});
        continue;
      }
      v = ClassifyDifferential(r->outcome_label, ca->second->outcome_label);
    }
    v.leaf_cert_id = r->leaf_cert_id;
    v.validator_id = r->validator_id;

    auto [it, inserted] =
        merged.emplace(Key{v.leaf_cert_id, v.validator_id}, v);
    if (!inserted && it->second.verdict == Verdict::kInvalid &&
        v.verdict == Verdict::kValid) {
      it->second = v;
    }
  }

  for (auto& [key, v] : merged) analysis.verdicts.push_back(std::move(v));
  return analysis;
}

DisagreementTable CrossTabulate(
    const std::vector<CertificateReport>& reports,
    const std::vector<DifferentialVerdict>& verdicts) {
  DisagreementTable table;
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < reports.size(); ++i) {
    index.emplace(reports[i].id, i);
    if (!reports[i].sha256_hex.empty()) index.emplace(reports[i].sha256_hex, i);
  }

  std::vector<bool> joined(reports.size(), false);
  std::set<std::string> unjoined;
  for (const DifferentialVerdict& v : verdicts) {
    auto it = index.find(v.leaf_cert_id);
    if (it == index.end()) {
      unjoined.insert(v.leaf_cert_id);
      continue;
    }
    const CertificateReport& report = reports[it->second];
    joined[it->second] = true;
    ValidatorCounts& counts = table.validators[v.validator_id];
    const bool rejected = report.outcome == Outcome::kRejected;
    const bool valid = v.verdict == Verdict::kValid;
    if (rejected && valid) {
      ++counts.rejected_valid;
      std::set<Code> codes;
      for (const Diagnostic& d : report.diagnostics) {
        if (IsRejecting(d.code)) codes.insert(d.code);
      }
      for (Code code : codes) ++counts.disagreement_codes[code];
    } else if (rejected) {
      ++counts.rejected_invalid;
    } else if (valid) {
      ++counts.accepted_valid;
    } else {
      ++counts.accepted_invalid;
    }
  }

  table.unjoined_verdicts.assign(unjoined.begin(), unjoined.end());
  for (size_t i = 0; i < reports.size(); ++i) {
    if (!joined[i]) table.unjoined_reports.push_back(reports[i].id);
  }
  return table;
}

Expected<std::vector<CertificateReport>, std::string> ReadReportLines(
    std::istream& in) {
  std::vector<CertificateReport> reports;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json object = nlohmann::json::parse(line, nullptr, false);
    if (object.is_discarded() || !object.is_object()) {
      return MakeUnexpected("line " + std::to_string(number) +
                            ": not a JSON object");
    }
    if (object.contains("summary") || object.contains("error")) continue;
    auto report = ReportFromJson(object);
    if (!report) {
      return MakeUnexpected("line " + std::to_string(number) + ": " +
                            report.error());
    }
    reports.push_back(std::move(*report));
  }
  return reports;
}

nlohmann::ordered_json VerdictsToJson(
    const std::vector<DifferentialVerdict>& verdicts) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const DifferentialVerdict& v : verdicts) {
    nlohmann::ordered_json item;
    item["leaf_cert_id"] = v.leaf_cert_id;
    item["validator_id"] = v.validator_id;
    item["verdict"] = VerdictName(v.verdict);
    item["rule_applied"] = RuleName(v.rule_applied);
    out.push_back(std::move(item));
  }
  return out;
}

nlohmann::ordered_json TableToJson(const DisagreementTable& table,
                                   const std::vector<AnalysisIssue>& issues) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json validators = nlohmann::ordered_json::object();
  for (const auto& [name, counts] : table.validators) {
    nlohmann::ordered_json item;
    item["disagreements"] = counts.rejected_valid;
    item["rejected_invalid"] = counts.rejected_invalid;
    item["accepted_valid"] = counts.accepted_valid;
    item["accepted_invalid"] = counts.accepted_invalid;
    nlohmann::ordered_json codes = nlohmann::ordered_json::object();
    for (const auto& [code, n] : counts.disagreement_codes) {
      codes[std::string(CodeName(code))] = n;
    }
    item["disagreement_codes"] = std::move(codes);
    validators[name] = std::move(item);
  }
  out["validators"] = std::move(validators);
  out["unjoined_verdicts"] = table.unjoined_verdicts;
  out["unjoined_reports"] = table.unjoined_reports;
  nlohmann::ordered_json issue_list = nlohmann::ordered_json::array();
  for (const AnalysisIssue& issue : issues) {
    nlohmann::ordered_json item;
    item["kind"] = AnalysisIssueName(issue.kind);
    item["chain_id"] = issue.chain_id;
    item["validator_id"] = issue.validator_id;
    item["detail"] = issue.detail;
    issue_list.push_back(std::move(item));
  }
  out["issues"] = std::move(issue_list);
  return out;
}

}  // namespace x509strict
