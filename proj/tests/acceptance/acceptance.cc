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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cert_builder.h"
#include "corpus.h"
#include "der_builder.h"
#include "test_util.h"
#include "x509strict/certificate.h"
#include "x509strict/cs_checks.h"
#include "x509strict/der.h"
#include "x509strict/differential.h"
#include "x509strict/extensions.h"

namespace {

using namespace x509test;
using namespace x509strict;

struct Result {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void Fail(std::string why) {
    pass = false;
    if (failures.size() < 10) failures.push_back(std::move(why));
  }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// 1. Random trees round-trip, and single length-octet mutations never yield
// a silent mis-parse.
Result DerOracleEquivalence() {
  Result out;
  const auto start = Clock::now();
  std::mt19937_64 rng(0x5eed0001);
  constexpr int kTrees = 10000;
  int round_trips = 0, rejected = 0, reparsed = 0;
  for (int i = 0; i < kTrees; ++i) {
    const RefNode tree = RandomTree(rng, 4, 64);
    std::vector<size_t> positions;
    const Bytes der = Encode(tree, &positions);
    auto parsed = ParseTlvTree(der);
    if (!parsed || !SameTree(*parsed, tree) ||
        !TilingHolds(*parsed, der.size())) {
      out.Fail("round trip failed for " + ToHex(der));
      continue;
    }
    ++round_trips;

    Bytes mutated = der;
    const size_t pos = positions[rng() % positions.size()];
    mutated[pos] = static_cast<uint8_t>(mutated[pos] ^ (1 + rng() % 255));
    auto again = ParseTlvTree(mutated);
    const auto reference = ReferenceDecode(mutated);
    if (!again) {
      ++rejected;
      if (reference)
        out.Fail("mutation rejected but is DER: " + ToHex(mutated));
      continue;
    }
    // Accepted: the bytes must be a different, correctly tiled tree that
    // the reference decoder agrees with.
    if (SameTree(*again, tree) || !reference || !SameTree(*again, *reference) ||
        !TilingHolds(*again, mutated.size())) {
      out.Fail("silent mis-parse of " + ToHex(mutated));
      continue;
    }
    ++reparsed;
  }
  const double elapsed = Seconds(start);
  if (elapsed >= 10.0) out.Fail("runtime " + std::to_string(elapsed) + " s");
  char buffer[200];
  std::snprintf(buffer, sizeof buffer,
                "%d/%d round trips; mutations: %d rejected, %d re-parsed as a "
                "different valid tree; %.2f s",
                round_trips, kTrees, rejected, reparsed, elapsed);
  out.detail = buffer;
  return out;
}

bool ToyDefinition(const std::string& s) {
  if (s.size() < 2) return false;
  if (s[0] < '0' || s[0] > '3' || s[1] < '0' || s[1] > '3') return false;
  const size_t n = 4 * static_cast<size_t>(s[0] - '0') + (s[1] - '0');
  if (s.size() != 2 + n) return false;
  return std::all_of(s.begin() + 2, s.end(), [](char c) { return c == 'a'; });
}

// 2. Toy radix-4 automaton against its set definition.
Result ToyBruteForce() {
  Result out;
  static constexpr char kAlphabet[] = {'0', '1', '2', '3', 'a'};
  size_t checked = 0, accepted = 0;
  auto check = [&](const std::string& s) {
    ++checked;
    const bool expected = ToyDefinition(s);
    accepted += expected;
    if (RecognizeToy(s) != expected) out.Fail("disagreement on '" + s + "'");
  };
  for (size_t length = 0; length <= 8; ++length) {
    std::vector<int> digits(length, 0);
    while (true) {
      std::string s;
      for (int d : digits) s += kAlphabet[d];
      check(s);
      size_t k = 0;
      while (k < length && ++digits[k] == 5) digits[k++] = 0;
      if (k == length) break;
    }
  }
  const size_t exhaustive = checked;
  std::mt19937_64 rng(0x5eed0002);
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    if (i % 2 == 0) {
      const int d1 = static_cast<int>(rng() % 4),
                d2 = static_cast<int>(rng() % 4);
      const int n = std::max(0, 4 * d1 + d2 + static_cast<int>(rng() % 5) - 2);
      s = std::string{char('0' + d1), char('0' + d2)} + std::string(n, 'a');
      if (n > 0 && rng() % 4 == 0) s[2 + rng() % n] = kAlphabet[rng() % 5];
      if (s.size() <= 8) s += std::string(9 - s.size(), 'a');
    } else {
      s.resize(9 + rng() % 24);
      for (char& c : s) c = kAlphabet[rng() % 5];
    }
    check(s);
  }
  out.detail = std::to_string(exhaustive) + " strings of length <= 8 and " +
               std::to_string(checked - exhaustive) +
               " longer random strings, " + std::to_string(accepted) +
               " members";
  return out;
}

Expected<LengthState, DerError> FeedLength(const Bytes& octets) {
  Expected<LengthState, DerError> state = LengthState::Initial();
  for (uint8_t octet : octets) {
    if (!state) break;
    state = DeltaLength(*state, octet);
  }
  return state;
}

// 3. Length transition function truth table.
Result LengthTruthTable() {
  Result out;
  size_t cases = 0;
  auto expect_state = [&](const Bytes& in, uint64_t encoded) {
    ++cases;
    auto s = FeedLength(in);
    if (!s || s->encoded() != encoded)
      out.Fail("state mismatch for " + ToHex(in));
  };
  auto expect_error = [&](const Bytes& in, DerError error) {
    ++cases;
    auto s = FeedLength(in);
    if (s || s.error() != error) out.Fail("error mismatch for " + ToHex(in));
  };
  if (LengthState::kInitialValue != (uint64_t{1} << 36)) out.Fail("q0 != 2^36");
  for (int a = 0; a <= 127; ++a) expect_state({static_cast<uint8_t>(a)}, a);
  expect_state({0x81}, uint64_t{1} << 32);
  expect_state({0x82}, uint64_t{1} << 33);
  expect_state({0x83}, uint64_t{1} << 34);
  expect_state({0x84}, uint64_t{1} << 35);
  expect_error({0x80}, DerError::kLengthByteForbidden);
  for (int a = 0x85; a <= 0xfe; ++a) {
    expect_error({static_cast<uint8_t>(a)}, DerError::kLengthTooLarge);
  }
  expect_error({0xff}, DerError::kLengthReserved);
  for (int b = 0; b < 128; ++b) {
    expect_error({0x81, static_cast<uint8_t>(b)}, DerError::kNonMinimalLength);
  }
  for (int b = 128; b < 256; ++b)
    expect_state({0x81, static_cast<uint8_t>(b)}, b);
  expect_error({0x82, 0x00}, DerError::kNonMinimalLength);
  expect_error({0x83, 0x00}, DerError::kNonMinimalLength);
  expect_error({0x84, 0x00}, DerError::kNonMinimalLength);
  expect_state({0x82, 0x01, 0x00}, 256);
  expect_state({0x82, 0xff, 0xff}, 65535);
  expect_state({0x83, 0x01, 0x00, 0x00}, 65536);
  expect_state({0x84, 0x01, 0x00, 0x00, 0x00}, 1u << 24);
  expect_state({0x84, 0xff, 0xff, 0xff, 0xff}, 0xffffffffu);
  auto counting = DeltaLength(LengthState::Counting(3), 0x00);
  ++cases;
  if (!counting || counting->encoded() != 2) out.Fail("counting state 3 -> 2");
  ++cases;
  if (DeltaLength(LengthState::Counting(0), 0x00)) out.Fail("counting from 0");
  out.detail = std::to_string(cases) + " transitions; delta(q0, 0x81) = 2^32";
  return out;
}

// 4. keyCertSign without basicConstraints.
Result AttackDetection() {
  Result out;
  const ParsedCertificate attack = ParseCertificate(AttackFixture());
  if (attack.Accepted()) out.Fail("attack certificate accepted");
  bool found = false;
  for (const Diagnostic& d : attack.diagnostics) {
    if (d.code == Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS) {
      found = true;
      if (d.severity != Severity::kSecurityCritical) {
        out.Fail("diagnostic is not security-critical");
      }
    }
  }
  if (!found)
    out.Fail("KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS missing: " +
             Describe(attack.diagnostics));

  CertSpec fixed = BaseLeaf();
  fixed.SetExtension(oid::kKeyUsage, KeyUsage({ku::kKeyCertSign}));
  fixed.AddExtension(oid::kBasicConstraints, BasicConstraints(true, true));
  const ParsedCertificate repaired = ParseCertificate(fixed.Build());
  if (!repaired.tbs.extensions) {
    out.Fail("extensions of the repaired certificate did not parse");
  } else if (!CheckKeyCertSignRules(*repaired.tbs.extensions).empty()) {
    out.Fail("keyCertSign rules still fire with cA=true");
  }
  if (!repaired.Accepted()) {
    out.Fail("repaired certificate rejected: " +
             Describe(repaired.diagnostics));
  }
  out.detail = "attack rejected (security-critical); with critical cA=true: " +
               std::string(repaired.Accepted() ? "accepted" : "rejected");
  return out;
}

struct TaxonomyFixture {
  Code planted;
  std::set<Code> implied;
  std::string note;
  Bytes der;
};

Bytes WithExtension(const char* id, Bytes ext) {
  CertSpec spec = BaseLeaf();
  spec.SetExtension(id, std::move(ext));
  return spec.Build();
}

CertSpec EcLeaf() {
  CertSpec spec = BaseLeaf();
  spec.spki = EcSpki();
  spec.signature = EcdsaSha256Alg();
  spec.signature_algorithm = EcdsaSha256Alg();
  spec.signature_value =
      BitString(Sequence({IntBytes(FromHex("00c1")), IntBytes(FromHex("05"))}));
  spec.SetExtension(oid::kKeyUsage, KeyUsage({ku::kDigitalSignature}));
  return spec;
}

Bytes SubjectWith(std::vector<Attribute> attributes) {
  CertSpec spec = BaseLeaf();
  spec.subject = Name(attributes);
  return spec.Build();
}

std::vector<TaxonomyFixture> TaxonomyFixtures() {
  std::vector<TaxonomyFixture> f;
  auto add = [&](Code code, Bytes der, std::set<Code> implied = {},
                 std::string note = "") {
    f.push_back({code, std::move(implied), std::move(note), std::move(der)});
  };

  add(Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS, AttackFixture());
  add(Code::KEY_USAGE_VIOLATION_ON_PK_ALGORITHM,
      WithExtension(oid::kKeyUsage, KeyUsage({ku::kKeyAgreement})));
  {
    CertSpec spec = BaseLeaf();
    spec.SetExtension(oid::kKeyUsage, KeyUsage({ku::kKeyCertSign}));
    spec.AddExtension(oid::kBasicConstraints, BasicConstraints(false, true));
    add(Code::KEY_CERT_SIGN_IN_LEAF, spec.Build());
  }
  add(Code::WRONG_STRING_TYPE,
      SubjectWith({{oid::kCountry, Printable("US")},
                   {oid::kCommonName, Ia5("www.example.com")}}));
  add(Code::CHAR_SET_VIOLATION,
      SubjectWith({{oid::kCountry, Printable("US")},
                   {oid::kCommonName, Printable("www@example.com")}}));
  add(Code::BAD_DNS_URI_EMAIL_FORMAT,
      WithExtension(oid::kSubjectAltName,
                    SubjectAltNameDns({"bad..example.com"})));
  {
    Bytes der = BaseLeaf().Build();
    // Reserved length octet 0xFF in the outer signatureAlgorithm.
    const Bytes alg = RsaSha256Alg();
    auto at = std::search(der.rbegin(), der.rend(), alg.rbegin(), alg.rend());
    const size_t alg_offset = static_cast<size_t>(der.rend() - at) - alg.size();
    der[alg_offset + 1] = 0xff;
    add(Code::LEXING_ERROR, der);
  }
  {
    CertSpec spec = BaseLeaf();
    spec.issuer = Sequence({});
    add(Code::EMPTY_ISSUER_DN, spec.Build());
  }
  {
    CertSpec spec = BaseLeaf();
    spec.AddExtension(oid::kSubjectKeyId, SubjectKeyId(KeyId(0x41)));
    add(Code::DUPLICATED_EXTENSION, spec.Build());
  }
  {
    CertSpec spec = EcLeaf();
    spec.signature = AlgId(oid::kEcdsaWithSha256, Null());
    spec.signature_algorithm = spec.signature;
    add(Code::UNEXPECTED_NULL_IN_ALGORITHM_PARAMS, spec.Build());
  }
  add(Code::OID_ARC_OVERFLOW,
      WithExtension(oid::kExtKeyUsage,
                    Extension(oid::kExtKeyUsage, false,
                              Sequence({Oid("1.3.6.1.4294967296")}))));
  {
    CertSpec spec = BaseLeaf();
    spec.signature = AlgId("1.2.3.4", Null());
    spec.signature_algorithm = spec.signature;
    add(Code::WRONG_ALGORITHM, spec.Build());
  }
  {
    CertSpec spec = BaseLeaf();
    spec.validity =
        Validity(UtcTime("220229000000Z"), UtcTime("261231235959Z"));
    add(Code::INVALID_DATE, spec.Build());
  }
  {
    CertSpec spec = SelfSignedCa();
    spec.SetExtension(oid::kKeyUsage, Extension(oid::kKeyUsage, true,
                                                BitString({0x06, 0x00}, 0)));
    add(Code::WRONG_KEY_CERT_SIGN_ENCODING, spec.Build());
  }
  add(Code::EMPTY_VALUE_FIELD,
      WithExtension(oid::kSubjectKeyId, SubjectKeyId({})));
  add(Code::WRONG_OID_IN_DN, SubjectWith({{oid::kCountry, Printable("US")},
                                          {"1.3.6.1.4.1.99999.7", Utf8("x")}}));
  {
    CertSpec spec = SelfSignedCa();
    spec.SetExtension(oid::kBasicConstraints, BasicConstraints(true, false, 0));
    add(Code::PATH_LEN_IN_NON_CRITICAL_BC, spec.Build(),
        {Code::NON_CRITICAL_BASIC_CONSTRAINTS},
        "a non-critical cA=true basicConstraints is itself flagged");
  }
  {
    CertSpec spec = BaseLeaf();
    spec.AddExtension("bad-extn-id", Sequence({Tlv(0x06, {0x55, 0x1d, 0x8f}),
                                               OctetString({0x05, 0x00})}));
    add(Code::WRONG_EXTN_ID, spec.Build());
  }
  {
    CertSpec spec = BaseLeaf();
    spec.SetExtension(oid::kSubjectAltName,
                      Extension(oid::kSubjectAltName, false,
                                Sequence({Implicit(7, {10, 0, 0, 1, 2})})));
    add(Code::GENERIC_ERROR, spec.Build());
  }
  {
    CertSpec spec = SelfSignedCa();
    spec.RemoveExtension(oid::kSubjectKeyId);
    add(Code::MISSING_SUBJECT_KEY_ID, spec.Build());
  }
  {
    CertSpec spec = SelfSignedCa();
    spec.SetExtension(oid::kBasicConstraints, BasicConstraints(true, false));
    add(Code::NON_CRITICAL_BASIC_CONSTRAINTS, spec.Build());
  }
  add(Code::WRONG_OID,
      WithExtension(oid::kExtKeyUsage,
                    Extension(oid::kExtKeyUsage, false,
                              Sequence({Tlv(0x06, {0x2b, 0x80})}))));
  {
    CertSpec spec = BaseLeaf();
    spec.AddExtension(oid::kBasicConstraints, BasicConstraints(false, true, 0));
    add(Code::PATH_LEN_IN_LEAF, spec.Build());
  }
  add(Code::EMPTY_GENERAL_NAMES,
      WithExtension(oid::kSubjectAltName,
                    Extension(oid::kSubjectAltName, false, Sequence({}))));
  add(Code::EMPTY_STRING, SubjectWith({{oid::kCountry, Printable("US")},
                                       {oid::kCommonName, Utf8("")}}));
  add(Code::INVALID_DISTINGUISHED_NAME,
      SubjectWith({{oid::kCountry, Printable("USA")},
                   {oid::kCommonName, Utf8("www.example.com")}}));
  {
    CertSpec spec = SelfSignedCa();
    spec.RemoveExtension(oid::kAuthorityKeyId);
    add(Code::MISSING_KEY_IDENTIFIER_SELF_ISSUED, spec.Build());
  }
  {
    CertSpec spec = BaseLeaf();
    spec.RemoveExtension(oid::kAuthorityKeyId);
    add(Code::MISSING_KEY_IDENTIFIER_NOT_SELF_ISSUED, spec.Build());
  }
  return f;
}

// Severity column of each taxonomy code.
const std::map<Code, Severity>& TaxonomyColumns() {
  static const std::map<Code, Severity> columns = [] {
    std::map<Code, Severity> m;
    for (Code c :
         {Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS,
          Code::KEY_USAGE_VIOLATION_ON_PK_ALGORITHM,
          Code::KEY_CERT_SIGN_IN_LEAF, Code::WRONG_STRING_TYPE,
          Code::CHAR_SET_VIOLATION, Code::BAD_DNS_URI_EMAIL_FORMAT,
          Code::LEXING_ERROR, Code::EMPTY_ISSUER_DN, Code::DUPLICATED_EXTENSION,
          Code::UNEXPECTED_NULL_IN_ALGORITHM_PARAMS, Code::OID_ARC_OVERFLOW,
          Code::WRONG_ALGORITHM, Code::INVALID_DATE}) {
      m[c] = Severity::kSecurityCritical;
    }
    for (Code c :
         {Code::WRONG_KEY_CERT_SIGN_ENCODING, Code::EMPTY_VALUE_FIELD,
          Code::WRONG_OID_IN_DN, Code::PATH_LEN_IN_NON_CRITICAL_BC,
          Code::WRONG_EXTN_ID, Code::GENERIC_ERROR,
          Code::MISSING_SUBJECT_KEY_ID, Code::NON_CRITICAL_BASIC_CONSTRAINTS,
          Code::WRONG_OID, Code::PATH_LEN_IN_LEAF, Code::EMPTY_GENERAL_NAMES,
          Code::EMPTY_STRING, Code::INVALID_DISTINGUISHED_NAME,
          Code::MISSING_KEY_IDENTIFIER_SELF_ISSUED,
          Code::MISSING_KEY_IDENTIFIER_NOT_SELF_ISSUED}) {
      m[c] = Severity::kNonCritical;
    }
    return m;
  }();
  return columns;
}

// 5. One fixture per taxonomy code.
Result TaxonomySuite() {
  Result out;
  const auto fixtures = TaxonomyFixtures();
  std::set<Code> covered;
  for (const TaxonomyFixture& fixture : fixtures) {
    const ParsedCertificate cert = ParseCertificate(fixture.der);
    std::set<Code> expected = fixture.implied;
    expected.insert(fixture.planted);
    const std::set<Code> got = CodeSet(cert.diagnostics);
    const std::string name(CodeName(fixture.planted));
    if (got != expected) {
      out.Fail(name + " produced " + Describe(cert.diagnostics));
      continue;
    }
    if (cert.Accepted() == IsRejecting(fixture.planted)) {
      out.Fail(name + " has the wrong outcome");
    }
    for (const Diagnostic& d : cert.diagnostics) {
      auto column = TaxonomyColumns().find(d.code);
      if (column != TaxonomyColumns().end() && column->second != d.severity) {
        out.Fail(std::string(CodeName(d.code)) + " has the wrong severity");
      }
    }
    covered.insert(fixture.planted);
  }
  for (const auto& [code, severity] : TaxonomyColumns()) {
    if (!covered.count(code))
      out.Fail(std::string(CodeName(code)) + " uncovered");
  }
  out.detail = std::to_string(covered.size()) + "/" +
               std::to_string(fixtures.size()) +
               " fixtures trigger exactly their planted code; " +
               std::to_string(TaxonomyColumns().size()) + " taxonomy codes";
  return out;
}

// 6. Leap days.
Result CalendarCheck() {
  Result out;
  struct Case {
    const char* label;
    Bytes not_after;
    bool accept;
  };
  const Case cases[] = {
      {"2022-02-29", UtcTime("220229000000Z"), false},
      {"2020-02-29", UtcTime("200229000000Z"), true},
      {"2100-02-29", GeneralizedTime("21000229000000Z"), false},
      {"2100-02-28", GeneralizedTime("21000228000000Z"), true},
  };
  std::string detail;
  for (const Case& c : cases) {
    CertSpec spec = BaseLeaf();
    spec.validity = Validity(UtcTime("200101000000Z"), c.not_after);
    const ParsedCertificate cert = ParseCertificate(spec.Build());
    const bool invalid = HasCode(cert.diagnostics, Code::INVALID_DATE);
    if (cert.Accepted() != c.accept || invalid == c.accept) {
      out.Fail(std::string(c.label) + ": " + Describe(cert.diagnostics));
    }
    detail += std::string(detail.empty() ? "" : ", ") + c.label + " " +
              (cert.Accepted() ? "accepted" : "rejected");
  }
  out.detail = detail;
  return out;
}

// 7. Differential truth table over four labels.
Result DifferentialTable() {
  Result out;
  const std::vector<std::string> labels = {"VALID", "Ex", "Ey", "Ez"};
  // Rows: leaf label; columns: CA label. 1 = valid.
  const int table[4][4] = {
      {1, 1, 1, 1},
      {0, 1, 0, 0},
      {0, 0, 1, 0},
      {0, 0, 0, 1},
  };
  int cells = 0;
  for (int leaf = 0; leaf < 4; ++leaf) {
    for (int ca = 0; ca < 4; ++ca) {
      ++cells;
      const auto v = ClassifyDifferential(labels[leaf], labels[ca]);
      if ((v.verdict == Verdict::kValid) != (table[leaf][ca] == 1)) {
        out.Fail(labels[leaf] + " / " + labels[ca]);
      }
    }
  }
  out.detail = std::to_string(cells) + " label pairs";
  return out;
}

// 8. AlgorithmIdentifier byte equality.
Result CsLayerChecks() {
  Result out;
  const std::vector<Bytes> algorithms = {
      RsaSha256Alg(), EcdsaSha256Alg(), AlgId(oid::kSha1WithRsa, Null()),
      AlgId(
          oid::kRsaPss,
          Sequence({Explicit(0, AlgId(oid::kSha256, Null())),
                    Explicit(1, AlgId(oid::kMgf1, AlgId(oid::kSha256, Null()))),
                    Explicit(2, Int(32))}))};
  int identical = 0, misses = 0, rejected_certs = 0;
  for (const Bytes& a : algorithms) {
    const Bytes copy = a;
    CsCheckInput in;
    in.inner_alg_raw = a;
    in.outer_alg_raw = copy;
    if (!CheckAidMatch(in).empty()) out.Fail("identical pair flagged");
    ++identical;
  }
  std::mt19937_64 rng(0x5eed0008);
  constexpr int kPerturbations = 1000;
  for (int i = 0; i < kPerturbations; ++i) {
    const Bytes& base = algorithms[rng() % algorithms.size()];
    Bytes perturbed = base;
    perturbed[rng() % perturbed.size()] ^=
        static_cast<uint8_t>(1 + rng() % 255);
    const bool outer = rng() % 2;
    CsCheckInput in;
    in.inner_alg_raw = outer ? std::span<const uint8_t>(base) : perturbed;
    in.outer_alg_raw = outer ? std::span<const uint8_t>(perturbed) : base;
    if (!HasCode(CheckAidMatch(in), Code::SIGNATURE_ALGORITHM_MISMATCH)) {
      ++misses;
      out.Fail("missed perturbation " + ToHex(perturbed));
    }
    CertSpec spec = BaseLeaf();
    spec.signature = outer ? base : perturbed;
    spec.signature_algorithm = outer ? perturbed : base;
    if (!ParseCertificate(spec.Build()).Accepted()) ++rejected_certs;
  }
  if (rejected_certs != kPerturbations) {
    out.Fail(std::to_string(kPerturbations - rejected_certs) +
             " perturbed certificates accepted");
  }
  out.detail = std::to_string(identical) + " identical pairs pass; " +
               std::to_string(kPerturbations - misses) + "/" +
               std::to_string(kPerturbations) + " perturbations caught; " +
               std::to_string(rejected_certs) +
               " perturbed certificates rejected";
  return out;
}

// Enough parses per sample to dwarf timer resolution.
size_t BatchSize(const Bytes& der) {
  size_t reps = 1;
  while (true) {
    const auto t0 = Clock::now();
    for (size_t r = 0; r < reps; ++r) ParseCertificate(der);
    if (Seconds(t0) > 0.004 || reps >= (1u << 16)) return reps;
    reps *= 2;
  }
}

// 9. Parse time grows linearly with size.
Result RuntimeLinearity() {
  Result out;
  std::vector<Bytes> inputs;
  std::vector<size_t> batches;
  std::vector<double> xs, ys;
  for (double kib = 1; kib <= 256.0 + 1e-9; kib *= std::sqrt(2.0)) {
    Bytes der = LeafOfSize(static_cast<size_t>(kib * 1024));
    const ParsedCertificate cert = ParseCertificate(der);
    if (!cert.Accepted()) {
      out.Fail("size fixture rejected: " + Describe(cert.diagnostics));
      return out;
    }
    xs.push_back(static_cast<double>(der.size()) / 1024.0);
    batches.push_back(BatchSize(der));
    inputs.push_back(std::move(der));
  }
  // Rounds visit every size in turn so host noise spreads across sizes.
  constexpr int kRounds = 21;
  std::vector<std::vector<double>> samples(inputs.size());
  for (int round = 0; round < kRounds; ++round) {
    for (size_t i = 0; i < inputs.size(); ++i) {
      const auto t0 = Clock::now();
      for (size_t r = 0; r < batches[i]; ++r) ParseCertificate(inputs[i]);
      samples[i].push_back(Seconds(t0) * 1e6 / static_cast<double>(batches[i]));
    }
  }
  for (auto& s : samples) {
    std::nth_element(s.begin(), s.begin() + kRounds / 2, s.end());
    ys.push_back(s[kRounds / 2]);
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = (sxy * sxy) / (sxx * syy);
  double lo = 1e300, hi = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double per_kib = ys[i] / xs[i];
    lo = std::min(lo, per_kib);
    hi = std::max(hi, per_kib);
  }
  const double ratio = hi / lo;
  if (r2 < 0.95) out.Fail("R^2 " + std::to_string(r2));
  if (ratio > 3.0) out.Fail("per-KiB cost ratio " + std::to_string(ratio));
  char buffer[240];
  std::snprintf(buffer, sizeof buffer,
                "%zu sizes %.1f..%.1f KiB; slope %.2f us/KiB; R^2 %.4f; "
                "per-KiB cost %.2f..%.2f us (ratio %.2f)",
                xs.size(), xs.front(), xs.back(), slope, r2, lo, hi, ratio);
  out.detail = buffer;
  return out;
}

uint64_t Fingerprint(const ParsedCertificate& cert) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t v) { h = (h ^ v) * 1099511628211ull; };
  mix(cert.Accepted());
  mix(cert.complete);
  for (const Diagnostic& d : cert.diagnostics) {
    mix(static_cast<uint64_t>(d.code));
    mix(d.byte_offset.value_or(~uint64_t{0}));
    for (char c : d.grammar_path) mix(static_cast<uint8_t>(c));
  }
  return h;
}

// 10. Random inputs always terminate, and repeated runs agree.
Result DeterminismFuzz() {
  Result out;
  const auto start = Clock::now();
  constexpr size_t kInputs = 1000000;
  const std::vector<Bytes> seeds = {BaseLeaf().Build(), SelfSignedCa().Build(),
                                    EcLeaf().Build(), AttackFixture()};
  auto generate = [&](std::mt19937_64& rng) {
    Bytes input;
    switch (rng() % 3) {
      case 0:
        input.resize(rng() % 4097);
        for (auto& b : input) b = static_cast<uint8_t>(rng());
        break;
      case 1: {
        // Plausible outer SEQUENCE header over random content.
        const size_t n = rng() % 4093;
        input = {0x30, 0x82, static_cast<uint8_t>(n >> 8),
                 static_cast<uint8_t>(n)};
        input.resize(4 + n);
        for (size_t i = 4; i < input.size(); ++i)
          input[i] = static_cast<uint8_t>(rng());
        break;
      }
      default: {
        input = seeds[rng() % seeds.size()];
        const int edits = 1 + static_cast<int>(rng() % 4);
        for (int e = 0; e < edits; ++e) {
          const size_t pos = rng() % input.size();
          switch (rng() % 3) {
            case 0:
              input[pos] = static_cast<uint8_t>(rng());
              break;
            case 1:
              input.resize(pos + 1);
              break;
            default:
              input.insert(input.begin() + static_cast<long>(pos),
                           static_cast<uint8_t>(rng()));
          }
        }
        if (input.size() > 4096) input.resize(4096);
      }
    }
    return input;
  };

  std::vector<uint64_t> first(kInputs);
  size_t accepted = 0;
  for (int pass = 0; pass < 2; ++pass) {
    std::mt19937_64 rng(0x5eed0010);
    for (size_t i = 0; i < kInputs; ++i) {
      const Bytes input = generate(rng);
      const ParsedCertificate cert = ParseCertificate(input);
      const uint64_t fp = Fingerprint(cert);
      if (pass == 0) {
        first[i] = fp;
        accepted += cert.Accepted();
        if (!cert.Accepted() && !HasRejectingDiagnostic(cert.diagnostics) &&
            cert.complete) {
          out.Fail("rejected without a rejecting diagnostic: " + ToHex(input));
        }
      } else if (first[i] != fp) {
        out.Fail("outcome differs between runs for input " + std::to_string(i));
      }
    }
  }
  char buffer[200];
  std::snprintf(buffer, sizeof buffer,
                "%zu inputs x 2 runs terminated with identical outcomes "
                "(%zu accepted); %.1f s",
                kInputs, accepted, Seconds(start));
  out.detail = buffer;
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Result()> run;
  };
  const Criterion criteria[] = {
      {"DER oracle equivalence", DerOracleEquivalence},
      {"Toy automaton brute force", ToyBruteForce},
      {"Length transition truth table", LengthTruthTable},
      {"keyCertSign attack detection", AttackDetection},
      {"Taxonomy fixture suite", TaxonomySuite},
      {"Calendar check", CalendarCheck},
      {"Differential truth table", DifferentialTable},
      {"AlgorithmIdentifier match checks", CsLayerChecks},
      {"Runtime linearity", RuntimeLinearity},
      {"Determinism and termination fuzz", DeterminismFuzz},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Result o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] C%d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str());
    for (const std::string& why : o.failures) {
      std::printf("       %s\n", why.c_str());
    }
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
