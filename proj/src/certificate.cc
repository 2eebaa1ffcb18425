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

#include "walker.h"
#include "x509strict/cs_checks.h"

namespace x509strict {

Code CodeForDerError(DerError error) {
  switch (error) {
    case DerError::kLengthByteForbidden:
      return Code::LENGTH_BYTE_FORBIDDEN;
    case DerError::kLengthTooLarge:
      return Code::LENGTH_TOO_LARGE;
    case DerError::kNonMinimalLength:
      return Code::NON_MINIMAL_LENGTH;
    case DerError::kChildOverflow:
      return Code::CHILD_OVERFLOW;
    case DerError::kTrailingBytes:
      return Code::TRAILING_BYTES;
    case DerError::kTruncatedInput:
      return Code::TRUNCATED_INPUT;
    case DerError::kNestingTooDeep:
      return Code::NESTING_TOO_DEEP;
    case DerError::kEmptyInput:
    case DerError::kBadIdentifier:
    case DerError::kLengthReserved:
    case DerError::kInvalidState:
      return Code::LEXING_ERROR;
  }
  return Code::LEXING_ERROR;
}

namespace internal {

namespace {

using Scope = DiagnosticSink::Scope;

TimeValue WalkTime(Walker& w, const TlvNode& node) {
  if (!node.IsUniversal(tag::kUtcTime, false) &&
      !node.IsUniversal(tag::kGeneralizedTime, false)) {
    w.Fail(Code::GENERIC_ERROR, node.header_offset,
           "Time: expected UTCTime or GeneralizedTime, found " +
               TagDescription(node));
  }
  auto time = w.Take(ValidateTime(node));
  if (!time) return TimeValue{};
  if (time->kind == TimeKind::kGeneralizedTime && time->year < 2050) {
    w.Report(Code::MALFORMED_TIME, node.header_offset,
             "validity dates before 2050 must be UTCTime");
  }
  return *time;
}

void WalkTbs(Walker& w, const TlvNode& node, ParsedTbs& tbs) {
  ChildCursor cursor(w, node, "TBSCertificate");

  if (const TlvNode* version = cursor.TakeContext(0, true)) {
    Scope scope(w.sink(), "version");
    tbs.version_encoded = true;
    tbs.version_offset = version->header_offset;
    if (version->children.size() != 1 ||
        !version->children[0].IsUniversal(tag::kInteger, false)) {
      w.Fail(Code::GENERIC_ERROR, version->header_offset,
             "version must hold exactly one INTEGER");
    }
    if (auto value = w.Take(DecodeInteger(version->children[0]))) {
      const auto v = value->ToInt64();
      if (!v || *v < 0 || *v > 2) {
        w.Fail(Code::GENERIC_ERROR, version->children[0].header_offset,
               "unsupported version");
      }
      tbs.version = static_cast<int>(*v) + 1;
    }
  }

  {
    const TlvNode& serial =
        cursor.NextUniversal("serialNumber", tag::kInteger, false);
    Scope scope(w.sink(), "serialNumber");
    if (auto value = w.Take(DecodeInteger(serial))) {
      if (value->IsNegative() || value->IsZero()) {
        w.Report(Code::NON_POSITIVE_SERIAL, serial.header_offset,
                 "serial number is not positive");
      }
      tbs.serial_number = std::move(*value);
    }
  }
  {
    const TlvNode& signature =
        cursor.NextUniversal("signature", tag::kSequence, true);
    Scope scope(w.sink(), "signature");
    tbs.signature =
        WalkAlgorithmIdentifier(w, signature, AlgorithmContext::kSignature);
  }
  {
    const TlvNode& issuer =
        cursor.NextUniversal("issuer", tag::kSequence, true);
    Scope scope(w.sink(), "issuer");
    tbs.issuer = WalkName(w, issuer, NameRole::kIssuer);
  }
  {
    const TlvNode& validity =
        cursor.NextUniversal("validity", tag::kSequence, true);
    Scope scope(w.sink(), "validity");
    ChildCursor fields(w, validity, "Validity");
    const TlvNode& not_before = fields.Next("notBefore");
    const TlvNode& not_after = fields.Next("notAfter");
    fields.Finish();
    {
      Scope time_scope(w.sink(), "notBefore");
      tbs.validity.not_before = WalkTime(w, not_before);
    }
    Scope time_scope(w.sink(), "notAfter");
    tbs.validity.not_after = WalkTime(w, not_after);
  }
  {
    const TlvNode& subject =
        cursor.NextUniversal("subject", tag::kSequence, true);
    Scope scope(w.sink(), "subject");
    tbs.subject = WalkName(w, subject, NameRole::kSubject);
  }
  {
    const TlvNode& spki =
        cursor.NextUniversal("subjectPublicKeyInfo", tag::kSequence, true);
    Scope scope(w.sink(), "subjectPublicKeyInfo");
    tbs.spki = WalkSpki(w, spki);
  }
  if (const TlvNode* id = cursor.TakeContext(1, false)) {
    Scope scope(w.sink(), "issuerUniqueID");
    tbs.unique_id_offset = id->header_offset;
    tbs.issuer_unique_id = w.Take(DecodeBitString(Retag(*id, tag::kBitString)));
    if (!tbs.issuer_unique_id) tbs.issuer_unique_id = BitStringValue{};
  }
  if (const TlvNode* id = cursor.TakeContext(2, false)) {
    Scope scope(w.sink(), "subjectUniqueID");
    if (!tbs.issuer_unique_id) tbs.unique_id_offset = id->header_offset;
    tbs.subject_unique_id =
        w.Take(DecodeBitString(Retag(*id, tag::kBitString)));
    if (!tbs.subject_unique_id) tbs.subject_unique_id = BitStringValue{};
  }
  if (const TlvNode* extensions = cursor.TakeContext(3, true)) {
    Scope scope(w.sink(), "extensions");
    tbs.extensions_offset = extensions->header_offset;
    tbs.extensions = WalkExtensions(w, *extensions);
  }
  cursor.Finish();
}

void WalkCertificate(Walker& w, const TlvNode& root, ParsedCertificate& cert) {
  w.ExpectUniversal(root, tag::kSequence, true, "Certificate");
  ChildCursor cursor(w, root, "Certificate");
  const TlvNode& tbs =
      cursor.NextUniversal("tbsCertificate", tag::kSequence, true);
  const TlvNode& algorithm =
      cursor.NextUniversal("signatureAlgorithm", tag::kSequence, true);
  const TlvNode& signature =
      cursor.NextUniversal("signatureValue", tag::kBitString, false);
  cursor.Finish();

  cert.tbs_raw_span = {tbs.header_offset, tbs.end_offset()};
  cert.signature_algorithm_span = {algorithm.header_offset,
                                   algorithm.end_offset()};
  cert.signature_value_span = {signature.header_offset, signature.end_offset()};

  {
    Scope scope(w.sink(), "tbsCertificate");
    WalkTbs(w, tbs, cert.tbs);
  }
  {
    Scope scope(w.sink(), "signatureAlgorithm");
    cert.signature_algorithm =
        WalkAlgorithmIdentifier(w, algorithm, AlgorithmContext::kSignature);
  }
  Scope scope(w.sink(), "signatureValue");
  cert.signature_value =
      WalkSignatureValue(w, signature, cert.signature_algorithm);
}

// Checks that need the whole certificate: subject emptiness against the
// subjectAltName, and the extension cross-checks.
void CheckCertificate(DiagnosticSink& sink, const ParsedCertificate& cert) {
  const ParsedTbs& tbs = cert.tbs;
  const ExtensionSet* extensions = tbs.extensions ? &*tbs.extensions : nullptr;

  // DER "30 00" is the only encoding of an empty Name.
  if (tbs.subject.raw_encoding.size() == 2) {
    const ExtensionEntry* san =
        extensions ? extensions->Find(Grammar::kSubjectAltName) : nullptr;
    if (!san || !san->critical) {
      sink.Append(std::vector<Diagnostic>{
          MakeDiagnostic(Code::INVALID_DISTINGUISHED_NAME, std::nullopt,
                         "tbsCertificate.subject",
                         "empty subject requires a critical subjectAltName")});
    }
  }
  if (!extensions) return;

  sink.Append(CheckKeyCertSignRules(*extensions));
  sink.Append(CheckSubjectKeyIdRule(*extensions));
  if (const auto* ku = extensions->Body<KeyUsageValue>(Grammar::kKeyUsage)) {
    sink.Append(CheckKeyUsageVsAlgorithm(*ku, tbs.spki));
  }
}

}  // namespace

}  // namespace internal

std::vector<Diagnostic> CheckVersionGating(const ParsedTbs& tbs) {
  std::vector<Diagnostic> out;
  if (tbs.version_encoded && tbs.version == 1) {
    out.push_back(MakeDiagnostic(Code::DEFAULT_VALUE_ENCODED,
                                 tbs.version_offset, "tbsCertificate.version",
                                 "version v1 is the default and must be "
                                 "omitted"));
  }
  if ((tbs.issuer_unique_id || tbs.subject_unique_id) && tbs.version < 2) {
    out.push_back(MakeDiagnostic(Code::UNIQUE_ID_REQUIRES_V2PLUS,
                                 tbs.unique_id_offset, "tbsCertificate",
                                 "unique identifiers require v2 or v3"));
  }
  if (tbs.extensions && tbs.version != 3) {
    out.push_back(
        MakeDiagnostic(Code::EXTENSIONS_REQUIRE_V3, tbs.extensions_offset,
                       "tbsCertificate.extensions", "extensions require v3"));
  }
  return out;
}

ParsedCertificate ParseCertificate(std::span<const uint8_t> input,
                                   const ParseOptions& options) {
  const Registry& registry =
      options.registry ? *options.registry : Registry::Default();
  ParsedCertificate cert;
  DiagnosticSink sink;

  auto root = ParseTlvTree(input);
  if (!root) {
    const DerFailure failure = root.error();
    sink.Add(CodeForDerError(failure.error), failure.offset,
             std::string(DerErrorName(failure.error)));
    cert.diagnostics = sink.Take();
    return cert;
  }

  internal::Walker walker(registry, sink);
  try {
    internal::WalkCertificate(walker, *root, cert);
    cert.complete = true;
  } catch (const internal::StructuralError&) {
  }

  if (cert.complete) {
    sink.Append(CheckVersionGating(cert.tbs));
    internal::CheckCertificate(sink, cert);
    if (options.run_cs_checks) {
      const CsCheckInput cs = MakeCsCheckInput(cert);
      sink.Append(CheckAidMatch(cs));
      // Only v3 certificates can carry an authorityKeyIdentifier.
      if (cert.tbs.version == 3) sink.Append(CheckSelfIssuedAki(cs));
    }
  }
  cert.diagnostics = sink.Take();
  return cert;
}

}  // namespace x509strict
