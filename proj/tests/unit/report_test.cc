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

#include <gtest/gtest.h>
#include <unistd.h>

#include <sstream>

#include "cert_builder.h"
#include "corpus.h"
#include "test_util.h"

namespace x509strict {
namespace {

using namespace x509test;
namespace fs = std::filesystem;

class ReportTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("x509strict_report_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    manifest_ = WriteCorpus(dir_ / "corpus");
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  Manifest manifest_;
};

TEST_F(ReportTest, HistogramMatchesManifest) {
  BatchResult result = RunBatch({dir_ / "corpus"});
  ASSERT_TRUE(result.errors.empty());
  EXPECT_EQ(result.reports.size(), 10u);
  EXPECT_EQ(result.histogram.total, 10u);
  EXPECT_EQ(result.histogram.rejected, manifest_.planted.size());
  EXPECT_EQ(result.histogram.accepted, manifest_.clean);

  std::map<Code, uint64_t> expected;
  for (const auto& [path, code] : manifest_.planted) ++expected[code];
  std::map<Code, uint64_t> rejecting;
  for (const auto& [code, n] : result.histogram.counts) {
    if (IsRejecting(code)) rejecting[code] = n;
  }
  EXPECT_EQ(rejecting, expected);

  for (const CertificateReport& report : result.reports) {
    auto it = manifest_.planted.find(report.id);
    if (it == manifest_.planted.end()) {
      EXPECT_EQ(report.outcome, Outcome::kAccepted)
          << report.id << "\n"
          << Describe(report.diagnostics);
    } else {
      EXPECT_EQ(report.outcome, Outcome::kRejected) << report.id;
      EXPECT_EQ(CodeSet(report.diagnostics), std::set<Code>{it->second})
          << report.id;
    }
  }
  EXPECT_EQ(ExitCodeFor(result), 1);
}

TEST_F(ReportTest, OrderIsSortedAndIndependentOfJobs) {
  BatchResult one = RunBatch({dir_ / "corpus"});
  std::vector<std::string> ids;
  for (const auto& r : one.reports) ids.push_back(r.id);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  for (unsigned jobs : {2u, 4u, 16u}) {
    BatchOptions options;
    options.jobs = jobs;
    BatchResult many = RunBatch({dir_ / "corpus"}, options);
    EXPECT_EQ(FormatJsonLines(many, false), FormatJsonLines(one, false))
        << jobs;
    EXPECT_EQ(many.histogram, one.histogram);
  }
}

TEST_F(ReportTest, RunsAreByteIdenticalWithoutTiming) {
  const std::string a = FormatJsonLines(RunBatch({dir_ / "corpus"}), false);
  const std::string b = FormatJsonLines(RunBatch({dir_ / "corpus"}), false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("parse_time_micros"), std::string::npos);
  EXPECT_NE(FormatJsonLines(RunBatch({dir_ / "corpus"}), true)
                .find("parse_time_micros"),
            std::string::npos);
}

TEST_F(ReportTest, EmptyDirectory) {
  fs::create_directories(dir_ / "empty");
  BatchResult result = RunBatch({dir_ / "empty"});
  EXPECT_TRUE(result.reports.empty());
  EXPECT_TRUE(result.errors.empty());
  EXPECT_EQ(result.histogram, Histogram{});
  EXPECT_EQ(ExitCodeFor(result), 0);
  EXPECT_EQ(FormatJsonLines(result),
            "{\"summary\":{\"total\":0,\"accepted\":0,\"rejected\":0,"
            "\"input_errors\":0,\"counts\":{}}}\n");
}

TEST_F(ReportTest, UnreadableEntriesAreIsolated) {
  fs::create_symlink(dir_ / "nowhere.der", dir_ / "corpus" / "dangling.der");
  BatchResult result = RunBatch({dir_ / "corpus", dir_ / "missing"});
  EXPECT_EQ(result.reports.size(), 10u);
  ASSERT_EQ(result.errors.size(), 2u);
  EXPECT_EQ(result.errors[0].id, (dir_ / "corpus" / "dangling.der").string());
  EXPECT_EQ(result.errors[1].id, (dir_ / "missing").string());
  for (const auto& e : result.errors) EXPECT_EQ(e.error, IngestError::kIo);
  EXPECT_EQ(result.histogram.total, 10u);
  EXPECT_EQ(ExitCodeFor(result), 2);
}

TEST_F(ReportTest, PermissionDeniedFileIsReported) {
  if (::geteuid() == 0) GTEST_SKIP() << "file permissions do not bind root";
  const fs::path locked = dir_ / "corpus" / "locked.der";
  WriteFile(locked, BaseLeaf().Build());
  fs::permissions(locked, fs::perms::none);
  BatchResult result = RunBatch({dir_ / "corpus"});
  EXPECT_EQ(result.reports.size(), 10u);
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0].error, IngestError::kIo);
}

TEST_F(ReportTest, IngestErrorsBecomeRecords) {
  WriteFile(dir_ / "corpus" / "notes.txt", FromString("hello"));
  BatchResult result = RunBatch({dir_ / "corpus"});
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0].error, IngestError::kUnrecognizedFormat);
  const auto json = ErrorToJson(result.errors[0]);
  EXPECT_EQ(json["error"], "unrecognized_format");
}

TEST_F(ReportTest, DuplicateRootsAreLintedOnce) {
  const fs::path one = dir_ / "corpus" / "ca.pem";
  BatchResult result = RunBatch({one, one, dir_ / "corpus"});
  EXPECT_EQ(result.reports.size(), 10u);
}

TEST(LintTest, Examples) {
  InputDocument doc;
  doc.id = "leaf";
  doc.der_bytes = BaseLeaf().Build();
  doc.sha256_hex = Sha256Hex(doc.der_bytes);
  CertificateReport report = Lint(doc);
  EXPECT_EQ(report.outcome, Outcome::kAccepted);
  EXPECT_EQ(report.size_bytes, doc.der_bytes.size());
  EXPECT_EQ(report.sha256_hex, doc.sha256_hex);

  doc.der_bytes = AttackFixture();
  report = Lint(doc);
  EXPECT_EQ(report.outcome, Outcome::kRejected);
  EXPECT_TRUE(HasCode(report.diagnostics,
                      Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS));

  doc.der_bytes = BaseLeaf().Build();
  doc.der_bytes.resize(doc.der_bytes.size() / 2);
  report = Lint(doc);
  EXPECT_EQ(report.outcome, Outcome::kRejected);
  ASSERT_TRUE(HasCode(report.diagnostics, Code::TRUNCATED_INPUT));
  for (const auto& d : report.diagnostics) {
    if (d.code == Code::TRUNCATED_INPUT) {
      EXPECT_TRUE(d.byte_offset.has_value());
    }
  }
}

TEST(JsonTest, ReportSchemaAndRoundTrip) {
  CertificateReport report;
  report.id = "a.der";
  report.sha256_hex = "00ff";
  report.outcome = Outcome::kRejected;
  report.diagnostics = {
      MakeDiagnostic(Code::EMPTY_STRING, 12, "tbsCertificate.subject", "m"),
      MakeDiagnostic(Code::SIGNATURE_ALGORITHM_MISMATCH, std::nullopt,
                     "signatureAlgorithm", "n")};
  report.parse_time_micros = 5;
  report.size_bytes = 99;
  const auto json = ReportToJson(report);
  EXPECT_EQ(
      json.dump(),
      "{\"id\":\"a.der\",\"sha256_hex\":\"00ff\",\"outcome\":\"rejected\","
      "\"diagnostics\":[{\"code\":\"EMPTY_STRING\",\"severity\":"
      "\"non-critical\",\"category\":\"syntactic\",\"offset\":12,\"path\":"
      "\"tbsCertificate.subject\",\"message\":\"m\"},{\"code\":"
      "\"SIGNATURE_ALGORITHM_MISMATCH\",\"severity\":\"security-critical\","
      "\"category\":\"syntactic\",\"offset\":null,\"path\":"
      "\"signatureAlgorithm\",\"message\":\"n\"}],\"parse_time_micros\":5,"
      "\"size_bytes\":99}");
  auto back = ReportFromJson(nlohmann::json::parse(json.dump()));
  ASSERT_TRUE(back) << back.error();
  EXPECT_EQ(back->id, report.id);
  EXPECT_EQ(back->outcome, report.outcome);
  EXPECT_EQ(back->diagnostics, report.diagnostics);
  EXPECT_EQ(back->size_bytes, 99u);
  EXPECT_FALSE(ReportFromJson(nlohmann::json::parse("{\"id\":1}")));
  EXPECT_FALSE(ReportFromJson(nlohmann::json::parse(
      "{\"id\":\"x\",\"sha256_hex\":\"\",\"outcome\":\"maybe\","
      "\"diagnostics\":[]}")));
}

TEST(JsonTest, TextFormat) {
  BatchResult result;
  CertificateReport report;
  report.id = "a.der";
  report.outcome = Outcome::kAccepted;
  report.diagnostics = {MakeDiagnostic(Code::NON_POSITIVE_SERIAL, 15,
                                       "tbsCertificate.serialNumber", "zero")};
  result.reports.push_back(report);
  result.errors.push_back({"b.pem", IngestError::kBadBase64, "bad"});
  result.histogram.Add(report.diagnostics);
  const std::string text = FormatText(result, false);
  EXPECT_NE(text.find("a.der: accepted"), std::string::npos) << text;
  EXPECT_NE(text.find("NON_POSITIVE_SERIAL"), std::string::npos) << text;
  EXPECT_NE(text.find("b.pem: error bad_base64: bad"), std::string::npos)
      << text;
  EXPECT_EQ(ExitCodeFor(result), 2);
}

}  // namespace
}  // namespace x509strict
