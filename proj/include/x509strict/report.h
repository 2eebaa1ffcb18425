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

#ifndef X509STRICT_REPORT_H_
#define X509STRICT_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "x509strict/certificate.h"
#include "x509strict/diagnostics.h"
#include "x509strict/expected.h"
#include "x509strict/ingest.h"

namespace x509strict {

enum class Outcome { kAccepted, kRejected };

std::string_view OutcomeName(Outcome outcome);

struct CertificateReport {
  std::string id;
  std::string sha256_hex;
  Outcome outcome = Outcome::kRejected;
  std::vector<Diagnostic> diagnostics;
  uint64_t parse_time_micros = 0;
  uint64_t size_bytes = 0;
};

// Parses one document and times the parse.
CertificateReport Lint(const InputDocument& document,
                       const ParseOptions& options = {});

// An input that could not be loaded; never aborts a batch.
struct InputErrorRecord {
  std::string id;
  IngestError error;
  std::string message;
};

struct BatchOptions {
  InputFormat format = InputFormat::kAuto;
  uint64_t max_size = kMaxContentLength;
  ParseOptions parse;
  unsigned jobs = 1;
};

struct BatchResult {
  std::vector<CertificateReport> reports;
  std::vector<InputErrorRecord> errors;
  Histogram histogram;
};

// Regular files under each root (directories are walked recursively), in
// sorted path order.
std::vector<std::filesystem::path> CollectInputs(
    const std::vector<std::filesystem::path>& roots,
    std::vector<InputErrorRecord>* errors);

// Lints every input. Output order depends only on the paths, never on the
// number of jobs.
BatchResult RunBatch(const std::vector<std::filesystem::path>& roots,
                     const BatchOptions& options = {});

nlohmann::ordered_json DiagnosticToJson(const Diagnostic& diagnostic);
nlohmann::ordered_json ReportToJson(const CertificateReport& report,
                                    bool include_timing = true);
nlohmann::ordered_json ErrorToJson(const InputErrorRecord& error);
nlohmann::ordered_json SummaryToJson(const BatchResult& result);

// One JSON object per line: reports, then input errors, then the summary.
std::string FormatJsonLines(const BatchResult& result,
                            bool include_timing = true);
std::string FormatText(const BatchResult& result, bool include_timing = true);

Expected<CertificateReport, std::string> ReportFromJson(
    const nlohmann::json& object);

// 0 when every input loaded and was accepted, 1 when any certificate was
// rejected, 2 when any input could not be loaded.
int ExitCodeFor(const BatchResult& result);

}  // namespace x509strict

#endif  // X509STRICT_REPORT_H_
