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

#include "x509strict/certificate.h"

#include <gtest/gtest.h>

#include "cert_builder.h"
#include "test_util.h"

namespace x509strict {
namespace {

using namespace x509test;

TEST(CertificateTest, BaseLeafIsAccepted) {
  const Bytes der = BaseLeaf().Build();
  ParsedCertificate cert = ParseCertificate(der);
  EXPECT_TRUE(cert.complete);
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
  EXPECT_TRUE(cert.diagnostics.empty()) << Describe(cert.diagnostics);
  EXPECT_EQ(cert.tbs.version, 3);
  EXPECT_EQ(cert.tbs.serial_number.ToHex(), "0f3a5c7e9b");
  EXPECT_EQ(cert.tbs.signature.oid.ToString(), oid::kSha256WithRsa);
  EXPECT_EQ(cert.tbs.issuer.rdns.size(), 3u);
  EXPECT_EQ(cert.tbs.subject.rdns[2][0].value, "www.example.com");
  ASSERT_TRUE(cert.tbs.extensions);
  EXPECT_EQ(cert.tbs.extensions->entries.size(), 4u);
  EXPECT_TRUE(std::holds_alternative<RsaPublicKey>(cert.tbs.spki.decoded_key));
}

TEST(CertificateTest, SelfSignedCaIsAccepted) {
  const Bytes der = SelfSignedCa().Build();
  ParsedCertificate cert = ParseCertificate(der);
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
  EXPECT_TRUE(cert.diagnostics.empty()) << Describe(cert.diagnostics);
}

TEST(CertificateTest, EcLeafIsAccepted) {
  CertSpec spec = BaseLeaf();
  spec.spki = EcSpki();
  spec.signature = EcdsaSha256Alg();
  spec.signature_algorithm = EcdsaSha256Alg();
  spec.signature_value =
      BitString(Sequence({IntBytes(FromHex("00c1")), IntBytes(FromHex("05"))}));
  spec.SetExtension(oid::kKeyUsage, KeyUsage({ku::kDigitalSignature}));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
  ASSERT_TRUE(cert.signature_value.decoded);
  EXPECT_EQ(cert.signature_value.decoded->s.ToHex(), "05");
}

TEST(CertificateTest, SpansCoverTheThreeTopLevelFields) {
  const CertSpec spec = BaseLeaf();
  const Bytes der = spec.Build();
  ParsedCertificate cert = ParseCertificate(der);
  const Bytes tbs = spec.Tbs();
  EXPECT_EQ(cert.tbs_raw_span.size(), tbs.size());
  EXPECT_EQ(Bytes(der.begin() + cert.tbs_raw_span.begin,
                  der.begin() + cert.tbs_raw_span.end),
            tbs);
  EXPECT_EQ(cert.signature_algorithm_span.begin, cert.tbs_raw_span.end);
  EXPECT_EQ(cert.signature_value_span.end, der.size());
}

TEST(CertificateTest, TruncatedInputIsRejectedWithOffset) {
  Bytes der = BaseLeaf().Build();
  der.resize(der.size() - 10);
  ParsedCertificate cert = ParseCertificate(der);
  EXPECT_FALSE(cert.Accepted());
  ASSERT_EQ(cert.diagnostics.size(), 1u);
  EXPECT_EQ(cert.diagnostics[0].code, Code::TRUNCATED_INPUT);
  EXPECT_TRUE(cert.diagnostics[0].byte_offset.has_value());
}

TEST(CertificateTest, TrailingByteIsRejected) {
  Bytes der = BaseLeaf().Build();
  der.push_back(0);
  ParsedCertificate cert = ParseCertificate(der);
  EXPECT_TRUE(HasCode(cert.diagnostics, Code::TRAILING_BYTES))
      << Describe(cert.diagnostics);
  EXPECT_EQ(cert.diagnostics[0].byte_offset, der.size() - 1);
}

TEST(CertificateTest, EmptyInputIsRejected) {
  ParsedCertificate cert = ParseCertificate(Bytes{});
  EXPECT_FALSE(cert.Accepted());
  EXPECT_FALSE(cert.diagnostics.empty());
}

TEST(CertificateTest, WrongTopLevelShapeIsGenericError) {
  ParsedCertificate cert = ParseCertificate(Sequence({Int(1)}));
  EXPECT_FALSE(cert.Accepted());
  EXPECT_FALSE(cert.complete);
  EXPECT_TRUE(HasCode(cert.diagnostics, Code::GENERIC_ERROR));
}

TEST(CertificateTest, ExplicitV1IsDefaultValueEncoded) {
  CertSpec spec = BaseLeaf();
  spec.version = Explicit(0, Int(0));
  spec.extensions.reset();
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_EQ(CodeSet(cert.diagnostics),
            (std::set<Code>{Code::DEFAULT_VALUE_ENCODED}))
      << Describe(cert.diagnostics);
}

TEST(CertificateTest, V1WithoutExtensionsIsAccepted) {
  CertSpec spec = BaseLeaf();
  spec.version.reset();
  spec.extensions.reset();
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
  EXPECT_EQ(cert.tbs.version, 1);
  EXPECT_FALSE(cert.tbs.version_encoded);
}

TEST(CertificateTest, ExtensionsRequireV3) {
  CertSpec spec = BaseLeaf();
  spec.version = Explicit(0, Int(1));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_EQ(CodeSet(cert.diagnostics),
            (std::set<Code>{Code::EXTENSIONS_REQUIRE_V3}))
      << Describe(cert.diagnostics);
}

TEST(CertificateTest, UniqueIdsRequireV2) {
  CertSpec spec = BaseLeaf();
  spec.version.reset();
  spec.extensions.reset();
  spec.issuer_unique_id = Implicit(1, FromHex("00a1b2"));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_EQ(CodeSet(cert.diagnostics),
            (std::set<Code>{Code::UNIQUE_ID_REQUIRES_V2PLUS}))
      << Describe(cert.diagnostics);
}

TEST(CertificateTest, UniqueIdsAllowedInV2) {
  CertSpec spec = BaseLeaf();
  spec.version = Explicit(0, Int(1));
  spec.extensions.reset();
  spec.subject_unique_id = Implicit(2, FromHex("00a1b2"));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
  ASSERT_TRUE(cert.tbs.subject_unique_id);
}

TEST(CertificateTest, VersionOutOfRangeIsRejected) {
  CertSpec spec = BaseLeaf();
  spec.version = Explicit(0, Int(3));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_FALSE(cert.Accepted());
}

TEST(CertificateTest, ZeroSerialIsANoteOnly) {
  CertSpec spec = BaseLeaf();
  spec.serial = Int(0);
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted());
  EXPECT_EQ(CodeSet(cert.diagnostics),
            (std::set<Code>{Code::NON_POSITIVE_SERIAL}));
}

TEST(CertificateTest, NonMinimalSerialIsRejected) {
  CertSpec spec = BaseLeaf();
  spec.serial = IntBytes(FromHex("0001"));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_EQ(CodeSet(cert.diagnostics),
            (std::set<Code>{Code::NON_MINIMAL_INTEGER}));
  EXPECT_FALSE(cert.Accepted());
}

TEST(CertificateTest, GeneralizedTimeBefore2050IsMalformed) {
  CertSpec spec = BaseLeaf();
  spec.validity =
      Validity(GeneralizedTime("20250101000000Z"), UtcTime("261231235959Z"));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_EQ(CodeSet(cert.diagnostics), (std::set<Code>{Code::MALFORMED_TIME}));
}

TEST(CertificateTest, GeneralizedTimeFrom2050IsAccepted) {
  CertSpec spec = BaseLeaf();
  spec.validity =
      Validity(UtcTime("250101000000Z"), GeneralizedTime("20500101000000Z"));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
}

TEST(CertificateTest, EmptySubjectNeedsCriticalSan) {
  CertSpec spec = BaseLeaf();
  spec.subject = Sequence({});
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(HasCode(cert.diagnostics, Code::INVALID_DISTINGUISHED_NAME));

  spec.SetExtension(oid::kSubjectAltName,
                    SubjectAltNameDns({"www.example.com"}, true));
  cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
}

TEST(CertificateTest, EmptyIssuerIsRejected) {
  CertSpec spec = BaseLeaf();
  spec.issuer = Sequence({});
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(HasCode(cert.diagnostics, Code::EMPTY_ISSUER_DN));
}

TEST(CertificateTest, SignatureAlgorithmMismatch) {
  CertSpec spec = BaseLeaf();
  spec.signature_algorithm = AlgId(oid::kSha1WithRsa, Null());
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_EQ(CodeSet(cert.diagnostics),
            (std::set<Code>{Code::SIGNATURE_ALGORITHM_MISMATCH}));
}

TEST(CertificateTest, CsChecksCanBeDisabled) {
  CertSpec spec = BaseLeaf();
  spec.signature_algorithm = AlgId(oid::kSha1WithRsa, Null());
  ParseOptions options;
  options.run_cs_checks = false;
  ParsedCertificate cert = ParseCertificate(spec.Build(), options);
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
}

TEST(CertificateTest, AttackFixtureIsRejected) {
  CertSpec spec = BaseLeaf();
  spec.SetExtension(oid::kKeyUsage,
                    KeyUsage({ku::kDigitalSignature, ku::kKeyCertSign}));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(
      HasCode(cert.diagnostics, Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS))
      << Describe(cert.diagnostics);
  EXPECT_FALSE(cert.Accepted());

  spec.SetExtension(oid::kBasicConstraints, BasicConstraints(true, true));
  cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.Accepted()) << Describe(cert.diagnostics);
}

TEST(CertificateTest, StructuralErrorInsideOneExtensionKeepsOthers) {
  CertSpec spec = BaseLeaf();
  spec.SetExtension(oid::kSubjectKeyId,
                    Extension(oid::kSubjectKeyId, false, Int(5)));
  ParsedCertificate cert = ParseCertificate(spec.Build());
  EXPECT_TRUE(cert.complete);
  EXPECT_FALSE(cert.Accepted());
  ASSERT_TRUE(cert.tbs.extensions);
  EXPECT_NE(cert.tbs.extensions->Body<KeyUsageValue>(Grammar::kKeyUsage),
            nullptr);
}

TEST(CertificateTest, OutcomeMatchesRejectingDiagnostics) {
  for (const Bytes& der : {BaseLeaf().Build(), SelfSignedCa().Build(),
                           Bytes{0x30, 0x00}, Bytes{0x02}}) {
    ParsedCertificate cert = ParseCertificate(der);
    EXPECT_EQ(cert.Accepted(), !HasRejectingDiagnostic(cert.diagnostics));
  }
}

}  // namespace
}  // namespace x509strict
