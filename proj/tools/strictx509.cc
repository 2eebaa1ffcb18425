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

// Command-line front end: lint certificates, run the differential analysis,
// classify validator messages.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "x509strict/differential.h"
#include "x509strict/registry.h"
#include "x509strict/report.h"

namespace {

using namespace x509strict;

constexpr int kExitUsage = 2;

struct LintArgs {
  std::vector<std::string> paths;
  InputFormat format = InputFormat::kAuto;
  std::string report = "json";
  bool no_timing = false;
  uint64_t max_size = kMaxContentLength;
  std::string registry;
  unsigned jobs = 1;
};

int RunLint(const LintArgs& args) {
  std::string registry_path = args.registry;
  if (registry_path.empty()) {
    if (const char* env = std::getenv("X509STRICT_REGISTRY")) {
      registry_path = env;
    }
  }
  std::optional<Registry> custom;
  if (!registry_path.empty()) {
    auto loaded = Registry::Load(registry_path);
    if (!loaded) {
      std::cerr << "strictx509: " << loaded.error() << '\n';
      return kExitUsage;
    }
    custom = std::move(*loaded);
  }

  BatchOptions options;
  options.format = args.format;
  options.max_size = args.max_size;
  options.jobs = args.jobs;
  if (custom) options.parse.registry = &*custom;

  std::vector<std::filesystem::path> roots(args.paths.begin(),
                                           args.paths.end());
  BatchResult result = RunBatch(roots, options);
  const bool timing = !args.no_timing;
  std::cout << (args.report == "text" ? FormatText(result, timing)
                                      : FormatJsonLines(result, timing));
  std::cout.flush();
  return ExitCodeFor(result);
}

std::optional<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int RunDiff(const std::string& csv_path, const std::string& reports_path,
            bool verdicts_only) {
  auto csv = ReadFile(csv_path);
  if (!csv) {
    std::cerr << "strictx509: cannot read " << csv_path << '\n';
    return kExitUsage;
  }
  auto records = ParseOutcomeCsv(*csv);
  if (!records) {
    std::cerr << "strictx509: " << csv_path << ": " << records.error() << '\n';
    return kExitUsage;
  }
  ChainAnalysis analysis = AnalyzeChains(*records);
  if (verdicts_only) {
    std::cout << VerdictsToJson(analysis.verdicts).dump(2) << '\n';
    return 0;
  }

  std::ifstream in(reports_path);
  if (!in) {
    std::cerr << "strictx509: cannot read " << reports_path << '\n';
    return kExitUsage;
  }
  auto reports = ReadReportLines(in);
  if (!reports) {
    std::cerr << "strictx509: " << reports_path << ": " << reports.error()
              << '\n';
    return kExitUsage;
  }
  DisagreementTable table = CrossTabulate(*reports, analysis.verdicts);
  std::cout << TableToJson(table, analysis.issues).dump(2) << '\n';
  return 0;
}

int RunClassify(const std::string& validator, const std::string& message) {
  auto category = ClassifyExternalMessage(validator, message);
  if (!category) {
    std::cerr << "strictx509: no mapping for " << validator << " message '"
              << message << "'\n";
    return 1;
  }
  std::cout << CategoryName(*category) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strict X.509 DER certificate recognizer"};
  app.require_subcommand(1);

  LintArgs lint;
  CLI::App* lint_cmd = app.add_subcommand("lint", "Lint certificate files");
  lint_cmd->add_option("paths", lint.paths, "Files or directories")->required();
  const std::map<std::string, InputFormat> formats{{"auto", InputFormat::kAuto},
                                                   {"pem", InputFormat::kPem},
                                                   {"der", InputFormat::kDer}};
  lint_cmd->add_option("--format", lint.format, "Input encoding")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case)
                      .description("{auto,pem,der}"));
  lint_cmd->add_option("--report", lint.report, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  lint_cmd->add_flag("--no-timing", lint.no_timing,
                     "Omit parse_time_micros from the report");
  lint_cmd
      ->add_option("--max-size", lint.max_size,
                   "Largest accepted input in bytes")
      ->check(CLI::Range(uint64_t{1}, kMaxContentLength));
  lint_cmd->add_option("--registry", lint.registry,
                       "OID registry file replacing the built-in one");
  lint_cmd->add_option("--jobs,-j", lint.jobs, "Worker threads")
      ->check(CLI::Range(1u, 256u));

  std::string csv_path;
  std::string reports_path;
  bool verdicts_only = false;
  CLI::App* diff_cmd = app.add_subcommand(
      "diff", "Cross-tabulate lint reports against validator outcomes");
  diff_cmd->add_option("outcomes", csv_path, "Chain outcome CSV")->required();
  diff_cmd->add_option("reports", reports_path, "Lint JSON Lines report");
  diff_cmd->add_flag("--verdicts", verdicts_only,
                     "Print per-certificate verdicts only");

  std::string validator;
  std::string message;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Map a validator error message to a category");
  classify_cmd->add_option("validator", validator)->required();
  classify_cmd->add_option("message", message)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*lint_cmd) return RunLint(lint);
  if (*diff_cmd) {
    if (!verdicts_only && reports_path.empty()) {
      std::cerr << "strictx509: diff needs a report file unless --verdicts "
                   "is given\n";
      return kExitUsage;
    }
    return RunDiff(csv_path, reports_path, verdicts_only);
  }
  return RunClassify(validator, message);
}
