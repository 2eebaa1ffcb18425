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

#include "x509strict/diagnostics.h"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace x509strict {

namespace internal {
extern const std::string_view kEmbeddedExternalMessages;
}  // namespace internal

namespace {

constexpr std::array<CodeInfo, kCodeCount> kCodeTable = {{
#define X509STRICT_TABLE_ENTRY(name, severity, rejects, label) \
  {Code::name, #name, Severity::severity, rejects, label},
    X509STRICT_DIAGNOSTIC_CODES(X509STRICT_TABLE_ENTRY)
#undef X509STRICT_TABLE_ENTRY
}};

constexpr bool TableIsDense() {
  for (size_t i = 0; i < kCodeTable.size(); ++i) {
    if (static_cast<size_t>(kCodeTable[i].code) != i) return false;
  }
  return true;
}
static_assert(TableIsDense(), "diagnostic table must be indexed by code");

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::span<const CodeInfo> AllCodes() { return kCodeTable; }

const CodeInfo& InfoFor(Code code) {
  return kCodeTable[static_cast<size_t>(code)];
}

std::string_view CodeName(Code code) { return InfoFor(code).name; }
Severity SeverityOf(Code code) { return InfoFor(code).severity; }
bool IsRejecting(Code code) { return InfoFor(code).rejects; }

Expected<Code, LookupError> CodeFromName(std::string_view name) {
  for (const CodeInfo& info : kCodeTable) {
    if (info.name == name) return info.code;
  }
  return MakeUnexpected(LookupError::kUnknownCode);
}

Expected<Severity, LookupError> SeverityOf(std::string_view name) {
  auto code = CodeFromName(name);
  if (!code) return MakeUnexpected(code.error());
  return SeverityOf(*code);
}

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kSecurityCritical ? "security-critical"
                                                 : "non-critical";
}

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kSyntactic:
      return "syntactic";
    case Category::kValidation:
      return "validation";
    case Category::kGeneric:
      return "generic";
  }
  return "generic";
}

std::optional<Category> CategoryFromName(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "syntactic") return Category::kSyntactic;
  if (lower == "validation") return Category::kValidation;
  if (lower == "generic") return Category::kGeneric;
  return std::nullopt;
}

Diagnostic MakeDiagnostic(Code code, std::optional<size_t> offset,
                          std::string grammar_path, std::string message) {
  Diagnostic d;
  d.code = code;
  d.severity = SeverityOf(code);
  d.category = Category::kSyntactic;
  d.byte_offset = offset;
  d.grammar_path = std::move(grammar_path);
  d.message = std::move(message);
  return d;
}

bool HasRejectingDiagnostic(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return IsRejecting(d.code); });
}

bool HasCode(std::span<const Diagnostic> diagnostics, Code code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [code](const Diagnostic& d) { return d.code == code; });
}

DiagnosticSink::Scope::Scope(DiagnosticSink& sink, std::string_view segment)
    : sink_(sink), previous_length_(sink.path_.size()) {
  if (!sink_.path_.empty()) sink_.path_ += '.';
  sink_.path_ += segment;
}

DiagnosticSink::Scope::~Scope() { sink_.path_.resize(previous_length_); }

void DiagnosticSink::Add(Code code, std::optional<size_t> offset,
                         std::string message) {
  diagnostics_.push_back(
      MakeDiagnostic(code, offset, path_, std::move(message)));
}

void DiagnosticSink::Append(std::span<const Diagnostic> diagnostics) {
  diagnostics_.insert(diagnostics_.end(), diagnostics.begin(),
                      diagnostics.end());
}

void Histogram::Add(std::span<const Diagnostic> certificate_diagnostics) {
  ++total;
  if (HasRejectingDiagnostic(certificate_diagnostics)) {
    ++rejected;
  } else {
    ++accepted;
  }
  std::set<Code> seen;
  for (const Diagnostic& d : certificate_diagnostics) {
    if (seen.insert(d.code).second) ++counts[d.code];
  }
}

void Histogram::Merge(const Histogram& other) {
  total += other.total;
  accepted += other.accepted;
  rejected += other.rejected;
  for (const auto& [code, n] : other.counts) counts[code] += n;
}

Histogram Aggregate(std::span<const std::vector<Diagnostic>> results) {
  Histogram h;
  for (const auto& r : results) h.Add(r);
  return h;
}

Expected<ExternalMessageTable, std::string> ExternalMessageTable::Parse(
    std::string_view text) {
  ExternalMessageTable table;
  size_t line_number = 0;
  while (!text.empty()) {
    size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_number;

    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;

    size_t first = line.find(';');
    size_t last = line.rfind(';');
    if (first == std::string_view::npos || first == last) {
      return MakeUnexpected("line " + std::to_string(line_number) +
                            ": expected 'validator ; message ; category'");
    }
    std::string_view validator = Trim(line.substr(0, first));
    std::string_view message = Trim(line.substr(first + 1, last - first - 1));
    std::optional<Category> category =
        CategoryFromName(Trim(line.substr(last + 1)));
    if (validator.empty() || message.empty() || !category) {
      return MakeUnexpected("line " + std::to_string(line_number) +
                            ": malformed record");
    }
    table.entries_[{std::string(validator), std::string(message)}] = *category;
  }
  return table;
}

const ExternalMessageTable& ExternalMessageTable::Default() {
  static const ExternalMessageTable table = [] {
    auto parsed = Parse(internal::kEmbeddedExternalMessages);
    if (!parsed) {
      throw std::logic_error("embedded message table: " + parsed.error());
    }
    return std::move(parsed).value();
  }();
  return table;
}

Expected<Category, ExternalMessageTable::Error> ExternalMessageTable::Classify(
    std::string_view validator, std::string_view message) const {
  auto it = entries_.find({std::string(validator), std::string(message)});
  if (it == entries_.end()) return MakeUnexpected(Error::kUnmappedMessage);
  return it->second;
}

Expected<Category, ExternalMessageTable::Error> ClassifyExternalMessage(
    std::string_view validator, std::string_view message) {
  return ExternalMessageTable::Default().Classify(validator, message);
}

}  // namespace x509strict
