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

#include "x509strict/report.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace x509strict {

std::string_view OutcomeName(Outcome outcome) {
  return outcome == Outcome::kAccepted ? "accepted" : "rejected";
}

CertificateReport Lint(const InputDocument& document,
                       const ParseOptions& options) {
  CertificateReport report;
  report.id = document.id;
  report.sha256_hex = document.sha256_hex;
  report.size_bytes = document.der_bytes.size();

  const auto start = std::chrono::steady_clock::now();
  ParsedCertificate parsed = ParseCertificate(document.der_bytes, options);
  const auto stop = std::chrono::steady_clock::now();

  report.parse_time_micros = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(stop - start)
          .count());
  report.outcome = parsed.Accepted() ? Outcome::kAccepted : Outcome::kRejected;
  report.diagnostics = std::move(parsed.diagnostics);
  return report;
}

std::vector<std::filesystem::path> CollectInputs(
    const std::vector<std::filesystem::path>& roots,
    std::vector<InputErrorRecord>* errors) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const fs::path& root : roots) {
    std::error_code ec;
    const fs::file_status status = fs::status(root, ec);
    if (ec || !fs::exists(status)) {
      errors->push_back({root.string(), IngestError::kIo,
                         ec ? ec.message() : "no such file or directory"});
      continue;
    }
    if (!fs::is_directory(status)) {
      files.push_back(root);
      continue;
    }
    fs::recursive_directory_iterator it(
        root, fs::directory_options::skip_permission_denied, ec);
    if (ec) {
      errors->push_back({root.string(), IngestError::kIo, ec.message()});
      continue;
    }
    for (const fs::directory_entry& entry : it) {
      std::error_code type_ec;
      if (entry.is_regular_file(type_ec)) {
        files.push_back(entry.path());
      } else if (entry.is_symlink(type_ec) && !entry.exists(type_ec)) {
        errors->push_back({entry.path().string(), IngestError::kIo,
                           "dangling symbolic link"});
      }
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

BatchResult RunBatch(const std::vector<std::filesystem::path>& roots,
                     const BatchOptions& options) {
  BatchResult result;
  std::vector<InputDocument> documents;
  for (const auto& path : CollectInputs(roots, &result.errors)) {
    auto loaded = LoadInput(path, options.format, options.max_size);
    if (!loaded) {
      result.errors.push_back(
          {path.string(), loaded.error().error, loaded.error().message});
      continue;
    }
    for (InputDocument& doc : *loaded) documents.push_back(std::move(doc));
  }

  result.reports.resize(documents.size());
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(options.jobs,
                                      static_cast<unsigned>(documents.size())));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < documents.size(); i = next++) {
      result.reports[i] = Lint(documents[i], options.parse);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& thread : threads) thread.join();
  }

  for (const CertificateReport& report : result.reports) {
    result.histogram.Add(report.diagnostics);
  }
  std::stable_sort(result.errors.begin(), result.errors.end(),
                   [](const InputErrorRecord& a, const InputErrorRecord& b) {
                     return a.id < b.id;
                   });
  return result;
}

nlohmann::ordered_json DiagnosticToJson(const Diagnostic& diagnostic) {
  nlohmann::ordered_json out;
  out["code"] = CodeName(diagnostic.code);
  out["severity"] = SeverityName(diagnostic.severity);
  out["category"] = CategoryName(diagnostic.category);
  if (diagnostic.byte_offset) {
    out["offset"] = *diagnostic.byte_offset;
  } else {
    out["offset"] = nullptr;
  }
  out["path"] = diagnostic.grammar_path;
  out["message"] = diagnostic.message;
  return out;
}

nlohmann::ordered_json ReportToJson(const CertificateReport& report,
                                    bool include_timing) {
  nlohmann::ordered_json out;
  out["id"] = report.id;
  out["sha256_hex"] = report.sha256_hex;
  out["outcome"] = OutcomeName(report.outcome);
  out["diagnostics"] = nlohmann::ordered_json::array();
  for (const Diagnostic& d : report.diagnostics) {
    out["diagnostics"].push_back(DiagnosticToJson(d));
  }
  if (include_timing) out["parse_time_micros"] = report.parse_time_micros;
  out["size_bytes"] = report.size_bytes;
  return out;
}

nlohmann::ordered_json ErrorToJson(const InputErrorRecord& error) {
  nlohmann::ordered_json out;
  out["id"] = error.id;
  out["error"] = IngestErrorName(error.error);
  out["message"] = error.message;
  return out;
}

nlohmann::ordered_json SummaryToJson(const BatchResult& result) {
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [code, count] : result.histogram.counts) {
    counts[std::string(CodeName(code))] = count;
  }
  nlohmann::ordered_json summary;
  summary["total"] = result.histogram.total;
  summary["accepted"] = result.histogram.accepted;
  summary["rejected"] = result.histogram.rejected;
  summary["input_errors"] = result.errors.size();
  summary["counts"] = std::move(counts);
  nlohmann::ordered_json out;
  out["summary"] = std::move(summary);
  return out;
}

std::string FormatJsonLines(const BatchResult& result, bool include_timing) {
  std::string out;
  for (const CertificateReport& report : result.reports) {
    out += ReportToJson(report, include_timing).dump();
    out += '\n';
  }
  for (const InputErrorRecord& error : result.errors) {
    out += ErrorToJson(error).dump();
    out += '\n';
  }
  out += SummaryToJson(result).dump();
  out += '\n';
  return out;
}

std::string FormatText(const BatchResult& result, bool include_timing) {
  std::ostringstream out;
  for (const CertificateReport& report : result.reports) {
    out << report.id << ": " << OutcomeName(report.outcome);
    if (include_timing) out << " (" << report.parse_time_micros << " us)";
    out << '\n';
    for (const Diagnostic& d : report.diagnostics) {
      out << "  " << CodeName(d.code) << " [" << SeverityName(d.severity)
          << "]";
      if (d.byte_offset) out << " @" << *d.byte_offset;
      if (!d.grammar_path.empty()) out << " " << d.grammar_path;
      out << ": " << d.message << '\n';
    }
  }
  for (const InputErrorRecord& error : result.errors) {
    out << error.id << ": error " << IngestErrorName(error.error) << ": "
        << error.message << '\n';
  }
  out << "total " << result.histogram.total << ", accepted "
      << result.histogram.accepted << ", rejected " << result.histogram.rejected
      << ", input errors " << result.errors.size() << '\n';
  return out.str();
}

Expected<CertificateReport, std::string> ReportFromJson(
    const nlohmann::json& object) {
  try {
    CertificateReport report;
    report.id = object.at("id").get<std::string>();
    report.sha256_hex = object.at("sha256_hex").get<std::string>();
    const std::string outcome = object.at("outcome").get<std::string>();
    if (outcome == "accepted") {
      report.outcome = Outcome::kAccepted;
    } else if (outcome == "rejected") {
      report.outcome = Outcome::kRejected;
    } else {
      return MakeUnexpected("unknown outcome '" + outcome + "'");
    }
    for (const auto& d : object.at("diagnostics")) {
      auto code = CodeFromName(d.at("code").get<std::string>());
      if (!code) {
        return MakeUnexpected("unknown code '" +
                              d.at("code").get<std::string>() + "'");
      }
      std::optional<size_t> offset;
      if (d.contains("offset") && !d.at("offset").is_null()) {
        offset = d.at("offset").get<size_t>();
      }
      report.diagnostics.push_back(
          MakeDiagnostic(*code, offset, d.value("path", std::string()),
                         d.value("message", std::string())));
    }
    report.parse_time_micros = object.value("parse_time_micros", uint64_t{0});
    report.size_bytes = object.value("size_bytes", uint64_t{0});
    return report;
  } catch (const nlohmann::json::exception& e) {
    return MakeUnexpected(std::string("malformed report: ") + e.what());
  }
}

int ExitCodeFor(const BatchResult& result) {
  if (!result.errors.empty()) return 2;
  return result.histogram.rejected > 0 ? 1 : 0;
}

}  // namespace x509strict
