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

#include "x509strict/extensions.h"

#include "walker.h"

namespace x509strict {

const ExtensionEntry* ExtensionSet::Find(Grammar grammar) const {
  for (const ExtensionEntry& entry : entries) {
    if (entry.grammar == grammar) return &entry;
  }
  return nullptr;
}

const ExtensionEntry* ExtensionSet::Find(const ObjectIdentifier& oid) const {
  for (const ExtensionEntry& entry : entries) {
    if (entry.extn_id == oid) return &entry;
  }
  return nullptr;
}

std::vector<const ExtensionEntry*> ExtensionSet::UnknownCritical() const {
  std::vector<const ExtensionEntry*> out;
  for (const ExtensionEntry& entry : entries) {
    if (entry.critical && !entry.grammar) out.push_back(&entry);
  }
  return out;
}

namespace internal {

namespace {

std::string_view FieldName(Grammar grammar) {
  switch (grammar) {
    case Grammar::kAuthorityKeyIdentifier:
      return "authorityKeyIdentifier";
    case Grammar::kSubjectKeyIdentifier:
      return "subjectKeyIdentifier";
    case Grammar::kKeyUsage:
      return "keyUsage";
    case Grammar::kCertificatePolicies:
      return "certificatePolicies";
    case Grammar::kPolicyMappings:
      return "policyMappings";
    case Grammar::kSubjectAltName:
      return "subjectAltName";
    case Grammar::kIssuerAltName:
      return "issuerAltName";
    case Grammar::kSubjectDirectoryAttributes:
      return "subjectDirectoryAttributes";
    case Grammar::kBasicConstraints:
      return "basicConstraints";
    case Grammar::kNameConstraints:
      return "nameConstraints";
    case Grammar::kPolicyConstraints:
      return "policyConstraints";
    case Grammar::kExtKeyUsage:
      return "extKeyUsage";
    case Grammar::kCrlDistributionPoints:
      return "cRLDistributionPoints";
    case Grammar::kInhibitAnyPolicy:
      return "inhibitAnyPolicy";
    case Grammar::kFreshestCrl:
      return "freshestCRL";
    case Grammar::kAuthorityInfoAccess:
      return "authorityInfoAccess";
    case Grammar::kSubjectInfoAccess:
      return "subjectInfoAccess";
    default:
      return "extnValue";
  }
}

std::string Index(std::string_view name, size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

// Reports EMPTY_VALUE_FIELD for an empty SEQUENCE OF with SIZE (1..MAX).
void ExpectNonEmptySequence(Walker& w, const TlvNode& node,
                            std::string_view what,
                            Code empty_code = Code::EMPTY_VALUE_FIELD) {
  w.ExpectUniversal(node, tag::kSequence, true, what);
  if (node.children.empty()) {
    w.Report(empty_code, node.header_offset,
             std::string(what) + " must not be empty");
  }
}

std::optional<Integer> ImplicitInteger(Walker& w, const TlvNode& node) {
  return w.Take(DecodeInteger(Retag(node, tag::kInteger)));
}

void ReportIfNegative(Walker& w, const std::optional<Integer>& value,
                      const TlvNode& node, std::string_view what,
                      Code code = Code::GENERIC_ERROR) {
  if (value && value->IsNegative()) {
    w.Report(code, node.header_offset,
             std::string(what) + " must not be negative");
  }
}

AuthorityKeyIdentifierValue WalkAki(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kSequence, true, "AuthorityKeyIdentifier");
  ChildCursor cursor(w, node, "AuthorityKeyIdentifier");
  AuthorityKeyIdentifierValue value;
  if (const TlvNode* key_id = cursor.TakeContext(0, false)) {
    if (key_id->content.empty()) {
      w.Report(Code::EMPTY_VALUE_FIELD, key_id->header_offset,
               "empty keyIdentifier");
    }
    value.key_identifier = ToBytes(key_id->content);
  }
  const TlvNode* issuer = cursor.TakeContext(1, true);
  if (issuer) {
    DiagnosticSink::Scope scope(w.sink(), "authorityCertIssuer");
    value.authority_cert_issuer =
        WalkGeneralNameList(w, *issuer, GeneralNameContext::kName);
  }
  const TlvNode* serial = cursor.TakeContext(2, false);
  if (serial) value.authority_cert_serial = ImplicitInteger(w, *serial);
  cursor.Finish();
  if ((issuer == nullptr) != (serial == nullptr)) {
    w.Report(Code::GENERIC_ERROR, node.header_offset,
             "authorityCertIssuer and authorityCertSerialNumber must be "
             "present together");
  }
  return value;
}

SubjectKeyIdentifierValue WalkSki(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kOctetString, false, "SubjectKeyIdentifier");
  if (node.content.empty()) {
    w.Report(Code::EMPTY_VALUE_FIELD, node.header_offset,
             "empty SubjectKeyIdentifier");
  }
  return SubjectKeyIdentifierValue{ToBytes(node.content)};
}

KeyUsageValue WalkKeyUsage(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kBitString, false, "KeyUsage");
  KeyUsageValue value;
  auto plain = w.Take(DecodeBitString(node));
  if (!plain) return value;
  bool any = false;
  for (uint8_t octet : plain->bits) any = any || octet != 0;
  if (!any) {
    w.Report(Code::EMPTY_KEY_USAGE, node.header_offset,
             "KeyUsage asserts no bits");
    value.bits = std::move(*plain);
    return value;
  }
  auto named = w.Take(DecodeBitString(node, kKeyUsageBitCount));
  value.bits = named ? std::move(*named) : std::move(*plain);
  value.bits.named_bit_count = kKeyUsageBitCount;
  return value;
}

BasicConstraintsValue WalkBasicConstraints(Walker& w, const TlvNode& node,
                                           bool critical) {
  w.ExpectUniversal(node, tag::kSequence, true, "BasicConstraints");
  ChildCursor cursor(w, node, "BasicConstraints");
  BasicConstraintsValue value;
  if (const TlvNode* ca = cursor.TakeUniversal(tag::kBoolean, false)) {
    if (auto flag = w.Take(DecodeBoolean(*ca))) {
      value.ca = *flag;
      if (!*flag) {
        w.Report(Code::DEFAULT_VALUE_ENCODED, ca->header_offset,
                 "cA FALSE is the default and must be omitted");
      }
    }
  }
  const TlvNode* path_len = cursor.TakeUniversal(tag::kInteger, false);
  cursor.Finish();
  if (!path_len) {
    if (value.ca && !critical) {
      w.Report(Code::NON_CRITICAL_BASIC_CONSTRAINTS, node.header_offset,
               "basicConstraints with cA TRUE must be critical");
    }
    return value;
  }

  value.path_len = w.Take(DecodeInteger(*path_len));
  if (value.path_len && value.path_len->IsNegative()) {
    w.Report(Code::NEGATIVE_PATH_LEN, path_len->header_offset,
             "pathLenConstraint is negative");
  }
  if (!value.ca) {
    w.Report(Code::PATH_LEN_IN_LEAF, path_len->header_offset,
             "pathLenConstraint without cA TRUE");
  }
  if (!critical) {
    w.Report(Code::PATH_LEN_IN_NON_CRITICAL_BC, path_len->header_offset,
             "pathLenConstraint in non-critical basicConstraints");
    if (value.ca) {
      w.Report(Code::NON_CRITICAL_BASIC_CONSTRAINTS, node.header_offset,
               "basicConstraints with cA TRUE must be critical");
    }
  }
  return value;
}

OidListValue WalkOidSequence(Walker& w, const TlvNode& node,
                             std::string_view what) {
  ExpectNonEmptySequence(w, node, what);
  OidListValue value;
  for (const TlvNode& child : node.children) {
    w.ExpectUniversal(child, tag::kOid, false, what);
    if (auto oid = w.Oid(child, Code::WRONG_OID)) {
      value.oids.push_back(std::move(*oid));
    }
  }
  return value;
}

void WalkDisplayText(Walker& w, const TlvNode& node) {
  if (node.tag_class != TagClass::kUniversal ||
      (node.tag_number != tag::kIa5String &&
       node.tag_number != tag::kVisibleString &&
       node.tag_number != tag::kBmpString &&
       node.tag_number != tag::kUtf8String)) {
    w.Report(Code::WRONG_STRING_TYPE, node.header_offset,
             "DisplayText: " + TagDescription(node));
    return;
  }
  w.Take(ValidateCharset(node));
}

void WalkPolicyQualifier(Walker& w, const TlvNode& node) {
  static const std::vector<uint32_t> kCps = {1, 3, 6, 1, 5, 5, 7, 2, 1};
  static const std::vector<uint32_t> kUserNotice = {1, 3, 6, 1, 5, 5, 7, 2, 2};

  w.ExpectUniversal(node, tag::kSequence, true, "PolicyQualifierInfo");
  ChildCursor cursor(w, node, "PolicyQualifierInfo");
  const TlvNode& id =
      cursor.NextUniversal("policyQualifierId", tag::kOid, false);
  const TlvNode& qualifier = cursor.Next("qualifier");
  cursor.Finish();
  auto oid = w.Oid(id, Code::WRONG_OID);
  if (!oid) return;
  if (oid->arcs() == kCps) {
    w.ExpectUniversal(qualifier, tag::kIa5String, false, "cPSuri");
    w.Take(ValidateCharset(qualifier));
  } else if (oid->arcs() == kUserNotice) {
    w.ExpectUniversal(qualifier, tag::kSequence, true, "UserNotice");
    ChildCursor notice(w, qualifier, "UserNotice");
    if (const TlvNode* ref = notice.TakeUniversal(tag::kSequence, true)) {
      ChildCursor fields(w, *ref, "noticeRef");
      WalkDisplayText(w, fields.Next("organization"));
      const TlvNode& numbers =
          fields.NextUniversal("noticeNumbers", tag::kSequence, true);
      fields.Finish();
      for (const TlvNode& number : numbers.children) {
        w.ExpectUniversal(number, tag::kInteger, false, "noticeNumbers");
        w.Take(DecodeInteger(number));
      }
    }
    if (const TlvNode* text = notice.Peek()) {
      notice.Next("explicitText");
      WalkDisplayText(w, *text);
    }
    notice.Finish();
  }
}

OidListValue WalkCertificatePolicies(Walker& w, const TlvNode& node) {
  ExpectNonEmptySequence(w, node, "certificatePolicies");
  OidListValue value;
  std::set<ObjectIdentifier> seen;
  for (size_t i = 0; i < node.children.size(); ++i) {
    DiagnosticSink::Scope scope(w.sink(), Index("policy", i));
    const TlvNode& info = node.children[i];
    w.ExpectUniversal(info, tag::kSequence, true, "PolicyInformation");
    ChildCursor cursor(w, info, "PolicyInformation");
    const TlvNode& id =
        cursor.NextUniversal("policyIdentifier", tag::kOid, false);
    const TlvNode* qualifiers = cursor.TakeUniversal(tag::kSequence, true);
    cursor.Finish();
    if (auto oid = w.Oid(id, Code::WRONG_OID)) {
      if (!seen.insert(*oid).second) {
        w.Report(Code::GENERIC_ERROR, id.header_offset,
                 "policy " + oid->ToString() + " listed twice");
      }
      value.oids.push_back(std::move(*oid));
    }
    if (qualifiers) {
      ExpectNonEmptySequence(w, *qualifiers, "policyQualifiers");
      for (const TlvNode& qualifier : qualifiers->children) {
        WalkPolicyQualifier(w, qualifier);
      }
    }
  }
  return value;
}

PolicyMappingsValue WalkPolicyMappings(Walker& w, const TlvNode& node) {
  ExpectNonEmptySequence(w, node, "PolicyMappings");
  PolicyMappingsValue value;
  for (const TlvNode& mapping : node.children) {
    w.ExpectUniversal(mapping, tag::kSequence, true, "PolicyMapping");
    ChildCursor cursor(w, mapping, "PolicyMapping");
    const TlvNode& issuer =
        cursor.NextUniversal("issuerDomainPolicy", tag::kOid, false);
    const TlvNode& subject =
        cursor.NextUniversal("subjectDomainPolicy", tag::kOid, false);
    cursor.Finish();
    auto a = w.Oid(issuer, Code::WRONG_OID);
    auto b = w.Oid(subject, Code::WRONG_OID);
    if (a && b) value.mappings.emplace_back(std::move(*a), std::move(*b));
  }
  return value;
}

OidListValue WalkSubjectDirectoryAttributes(Walker& w, const TlvNode& node) {
  ExpectNonEmptySequence(w, node, "SubjectDirectoryAttributes");
  OidListValue value;
  for (const TlvNode& attribute : node.children) {
    w.ExpectUniversal(attribute, tag::kSequence, true, "Attribute");
    ChildCursor cursor(w, attribute, "Attribute");
    const TlvNode& type = cursor.NextUniversal("type", tag::kOid, false);
    const TlvNode& values = cursor.NextUniversal("values", tag::kSet, true);
    cursor.Finish();
    if (values.children.empty()) {
      w.Report(Code::EMPTY_VALUE_FIELD, values.header_offset,
               "attribute values must not be empty");
    }
    if (auto oid = w.Oid(type, Code::WRONG_OID)) {
      value.oids.push_back(std::move(*oid));
    }
  }
  return value;
}

std::vector<GeneralSubtreeValue> WalkSubtrees(Walker& w, const TlvNode& node) {
  std::vector<GeneralSubtreeValue> subtrees;
  if (node.children.empty()) {
    w.Report(Code::EMPTY_VALUE_FIELD, node.header_offset,
             "GeneralSubtrees must not be empty");
  }
  for (size_t i = 0; i < node.children.size(); ++i) {
    DiagnosticSink::Scope scope(w.sink(), Index("subtree", i));
    const TlvNode& subtree = node.children[i];
    w.ExpectUniversal(subtree, tag::kSequence, true, "GeneralSubtree");
    ChildCursor cursor(w, subtree, "GeneralSubtree");
    GeneralSubtreeValue value;
    value.base = WalkGeneralName(w, cursor.Next("base"),
                                 GeneralNameContext::kConstraint);
    if (const TlvNode* minimum = cursor.TakeContext(0, false)) {
      value.minimum = ImplicitInteger(w, *minimum);
      if (value.minimum && value.minimum->IsZero()) {
        w.Report(Code::DEFAULT_VALUE_ENCODED, minimum->header_offset,
                 "minimum 0 is the default and must be omitted");
      } else if (value.minimum) {
        w.Report(Code::GENERIC_ERROR, minimum->header_offset,
                 "minimum must be zero");
      }
    }
    if (const TlvNode* maximum = cursor.TakeContext(1, false)) {
      value.maximum = ImplicitInteger(w, *maximum);
      w.Report(Code::GENERIC_ERROR, maximum->header_offset,
               "maximum must be absent");
    }
    cursor.Finish();
    subtrees.push_back(std::move(value));
  }
  return subtrees;
}

NameConstraintsValue WalkNameConstraints(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kSequence, true, "NameConstraints");
  ChildCursor cursor(w, node, "NameConstraints");
  NameConstraintsValue value;
  if (const TlvNode* permitted = cursor.TakeContext(0, true)) {
    DiagnosticSink::Scope scope(w.sink(), "permittedSubtrees");
    value.permitted = WalkSubtrees(w, *permitted);
  }
  if (const TlvNode* excluded = cursor.TakeContext(1, true)) {
    DiagnosticSink::Scope scope(w.sink(), "excludedSubtrees");
    value.excluded = WalkSubtrees(w, *excluded);
  }
  cursor.Finish();
  if (!value.permitted && !value.excluded) {
    w.Report(Code::EMPTY_VALUE_FIELD, node.header_offset,
             "NameConstraints must not be empty");
  }
  return value;
}

PolicyConstraintsValue WalkPolicyConstraints(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kSequence, true, "PolicyConstraints");
  ChildCursor cursor(w, node, "PolicyConstraints");
  PolicyConstraintsValue value;
  if (const TlvNode* require = cursor.TakeContext(0, false)) {
    value.require_explicit_policy = ImplicitInteger(w, *require);
    ReportIfNegative(w, value.require_explicit_policy, *require,
                     "requireExplicitPolicy");
  }
  if (const TlvNode* inhibit = cursor.TakeContext(1, false)) {
    value.inhibit_policy_mapping = ImplicitInteger(w, *inhibit);
    ReportIfNegative(w, value.inhibit_policy_mapping, *inhibit,
                     "inhibitPolicyMapping");
  }
  cursor.Finish();
  if (node.children.empty()) {
    w.Report(Code::EMPTY_VALUE_FIELD, node.header_offset,
             "PolicyConstraints must not be empty");
  }
  return value;
}

CrlDistributionPointsValue WalkDistributionPoints(Walker& w,
                                                  const TlvNode& node) {
  ExpectNonEmptySequence(w, node, "CRLDistributionPoints");
  CrlDistributionPointsValue value;
  for (size_t i = 0; i < node.children.size(); ++i) {
    DiagnosticSink::Scope scope(w.sink(), Index("distributionPoint", i));
    const TlvNode& dp = node.children[i];
    w.ExpectUniversal(dp, tag::kSequence, true, "DistributionPoint");
    ChildCursor cursor(w, dp, "DistributionPoint");
    DistributionPointValue point;
    if (const TlvNode* name = cursor.TakeContext(0, true)) {
      if (name->children.size() != 1) {
        w.Fail(Code::GENERIC_ERROR, name->header_offset,
               "distributionPoint must hold one DistributionPointName");
      }
      const TlvNode& choice = name->children[0];
      if (choice.Is(TagClass::kContextSpecific, 0, true)) {
        point.full_name =
            WalkGeneralNameList(w, choice, GeneralNameContext::kName);
      } else if (choice.Is(TagClass::kContextSpecific, 1, true)) {
        point.relative_name = true;
        if (choice.children.empty()) {
          w.Report(Code::INVALID_DISTINGUISHED_NAME, choice.header_offset,
                   "nameRelativeToCRLIssuer must not be empty");
        }
        for (const TlvNode& atv : choice.children) {
          if (!atv.IsUniversal(tag::kSequence, true) ||
              atv.children.size() != 2 ||
              !atv.children[0].IsUniversal(tag::kOid, false)) {
            w.Report(Code::INVALID_DISTINGUISHED_NAME, atv.header_offset,
                     "AttributeTypeAndValue must be SEQUENCE {OID, value}");
          }
        }
      } else {
        w.Fail(Code::GENERIC_ERROR, choice.header_offset,
               "DistributionPointName: unexpected " + TagDescription(choice));
      }
    }
    if (const TlvNode* reasons = cursor.TakeContext(1, false)) {
      auto bits = DecodeBitString(Retag(*reasons, tag::kBitString), 9);
      if (!bits) {
        ValueError error = bits.error();
        if (error.code == Code::WRONG_KEY_CERT_SIGN_ENCODING) {
          error.code = Code::BAD_BIT_STRING_ENCODING;
        }
        w.Report(error);
      } else {
        point.reasons = std::move(*bits);
      }
    }
    if (const TlvNode* issuer = cursor.TakeContext(2, true)) {
      point.crl_issuer =
          WalkGeneralNameList(w, *issuer, GeneralNameContext::kName);
    }
    cursor.Finish();
    if (!point.full_name && !point.relative_name && !point.crl_issuer) {
      w.Report(Code::EMPTY_VALUE_FIELD, dp.header_offset,
               "DistributionPoint needs distributionPoint or cRLIssuer");
    }
    value.points.push_back(std::move(point));
  }
  return value;
}

InhibitAnyPolicyValue WalkInhibitAnyPolicy(Walker& w, const TlvNode& node) {
  w.ExpectUniversal(node, tag::kInteger, false, "InhibitAnyPolicy");
  InhibitAnyPolicyValue value;
  auto skip = w.Take(DecodeInteger(node));
  ReportIfNegative(w, skip, node, "SkipCerts");
  if (skip) value.skip_certs = std::move(*skip);
  return value;
}

InfoAccessValue WalkInfoAccess(Walker& w, const TlvNode& node) {
  ExpectNonEmptySequence(w, node, "InfoAccessSyntax",
                         Code::EMPTY_SEQUENCE_IN_INFO_ACCESS);
  InfoAccessValue value;
  for (size_t i = 0; i < node.children.size(); ++i) {
    DiagnosticSink::Scope scope(w.sink(), Index("accessDescription", i));
    const TlvNode& description = node.children[i];
    w.ExpectUniversal(description, tag::kSequence, true, "AccessDescription");
    ChildCursor cursor(w, description, "AccessDescription");
    const TlvNode& method =
        cursor.NextUniversal("accessMethod", tag::kOid, false);
    const TlvNode& location = cursor.Next("accessLocation");
    cursor.Finish();
    AccessDescriptionValue entry;
    auto oid = w.Oid(method, Code::WRONG_OID);
    entry.location = WalkGeneralName(w, location, GeneralNameContext::kName);
    if (oid) {
      entry.method = std::move(*oid);
      value.descriptions.push_back(std::move(entry));
    }
  }
  return value;
}

TlvNode BodyNode(Walker& w, const ExtensionEntry& entry) {
  if (entry.value_raw.empty()) {
    w.Fail(Code::EMPTY_VALUE_FIELD, entry.value_offset, "empty extnValue");
  }
  return w.ParseNested(entry.value_raw, entry.value_offset);
}

}  // namespace

ExtensionBody WalkExtensionBody(Walker& w, const ExtensionEntry& entry) {
  if (!entry.grammar) return OpaqueBody{};
  const TlvNode node = BodyNode(w, entry);
  switch (*entry.grammar) {
    case Grammar::kAuthorityKeyIdentifier:
      return WalkAki(w, node);
    case Grammar::kSubjectKeyIdentifier:
      return WalkSki(w, node);
    case Grammar::kKeyUsage:
      return WalkKeyUsage(w, node);
    case Grammar::kCertificatePolicies:
      return WalkCertificatePolicies(w, node);
    case Grammar::kPolicyMappings:
      return WalkPolicyMappings(w, node);
    case Grammar::kSubjectAltName:
    case Grammar::kIssuerAltName:
      return GeneralNamesValue{
          WalkGeneralNames(w, node, GeneralNameContext::kName)};
    case Grammar::kSubjectDirectoryAttributes:
      return WalkSubjectDirectoryAttributes(w, node);
    case Grammar::kBasicConstraints:
      return WalkBasicConstraints(w, node, entry.critical);
    case Grammar::kNameConstraints:
      return WalkNameConstraints(w, node);
    case Grammar::kPolicyConstraints:
      return WalkPolicyConstraints(w, node);
    case Grammar::kExtKeyUsage:
      return WalkOidSequence(w, node, "ExtKeyUsageSyntax");
    case Grammar::kCrlDistributionPoints:
    case Grammar::kFreshestCrl:
      return WalkDistributionPoints(w, node);
    case Grammar::kInhibitAnyPolicy:
      return WalkInhibitAnyPolicy(w, node);
    case Grammar::kAuthorityInfoAccess:
    case Grammar::kSubjectInfoAccess:
      return WalkInfoAccess(w, node);
    default:
      return OpaqueBody{};
  }
}

ExtensionSet WalkExtensions(Walker& w, const TlvNode& wrapper) {
  w.Expect(wrapper, TagClass::kContextSpecific, 3, true, "extensions");
  if (wrapper.children.size() != 1) {
    w.Fail(Code::GENERIC_ERROR, wrapper.header_offset,
           "extensions [3] must hold exactly one SEQUENCE");
  }
  const TlvNode& sequence = wrapper.children[0];
  w.ExpectUniversal(sequence, tag::kSequence, true, "Extensions");

  ExtensionSet set;
  if (sequence.children.empty()) {
    w.Report(Code::EMPTY_EXTENSION_SEQUENCE, sequence.header_offset,
             "Extensions must contain at least one Extension");
    return set;
  }

  // Relaxed pass: every Extension on its own, in any order, repeats allowed.
  std::vector<size_t> positions;
  for (size_t i = 0; i < sequence.children.size(); ++i) {
    DiagnosticSink::Scope scope(w.sink(), Index("extension", i));
    const TlvNode& node = sequence.children[i];
    w.Guard([&] {
      w.ExpectUniversal(node, tag::kSequence, true, "Extension");
      ChildCursor cursor(w, node, "Extension");
      const TlvNode& id = cursor.NextUniversal("extnID", tag::kOid, false);
      const TlvNode* critical = cursor.TakeUniversal(tag::kBoolean, false);
      const TlvNode& value =
          cursor.NextUniversal("extnValue", tag::kOctetString, false);
      cursor.Finish();

      ExtensionEntry entry;
      entry.offset = node.header_offset;
      if (critical) {
        if (auto flag = w.Take(DecodeBoolean(*critical))) {
          entry.critical = *flag;
          if (!*flag) {
            w.Report(Code::DEFAULT_VALUE_ENCODED, critical->header_offset,
                     "critical FALSE is the default and must be omitted");
          }
        }
      }
      auto oid = w.Oid(id, Code::WRONG_EXTN_ID);
      if (!oid) return;
      entry.extn_id = std::move(*oid);
      entry.value_raw = ToBytes(value.content);
      entry.value_offset = value.content_offset;
      if (const RegistryEntry* registered =
              w.registry().Find(RegistryRole::kExtension, entry.extn_id)) {
        entry.grammar = registered->grammar;
      }
      set.entries.push_back(std::move(entry));
      positions.push_back(i);
    });
  }

  // Uniqueness post-check over the extnIDs collected above.
  for (size_t k = 0; k < set.entries.size(); ++k) {
    const ExtensionEntry& entry = set.entries[k];
    if (!set.seen_oids.insert(entry.extn_id).second) {
      DiagnosticSink::Scope scope(w.sink(), Index("extension", positions[k]));
      w.Report(Code::DUPLICATED_EXTENSION, entry.offset,
               "extension " + entry.extn_id.ToString() + " appears twice");
    }
  }

  for (size_t k = 0; k < set.entries.size(); ++k) {
    ExtensionEntry& entry = set.entries[k];
    if (!entry.grammar) continue;
    DiagnosticSink::Scope scope(w.sink(), Index("extension", positions[k]));
    DiagnosticSink::Scope body(w.sink(), FieldName(*entry.grammar));
    w.Guard([&] {
      entry.body = WalkExtensionBody(w, entry);
      entry.body_parsed = true;
    });
  }
  return set;
}

}  // namespace internal

Parsed<ExtensionSet> ParseExtensions(const TlvNode& node,
                                     const Registry& registry) {
  return internal::RunWalk<ExtensionSet>(registry, [&](internal::Walker& w) {
    return internal::WalkExtensions(w, node);
  });
}

Parsed<ExtensionBody> ParseStandardExtensionBody(const ExtensionEntry& entry,
                                                 const Registry& registry) {
  return internal::RunWalk<ExtensionBody>(registry, [&](internal::Walker& w) {
    return internal::WalkExtensionBody(w, entry);
  });
}

Parsed<BasicConstraintsValue> ParseBasicConstraints(
    const ExtensionEntry& entry) {
  return internal::RunWalk<BasicConstraintsValue>(
      Registry::Default(), [&](internal::Walker& w) {
        return internal::WalkBasicConstraints(w, internal::BodyNode(w, entry),
                                              entry.critical);
      });
}

Parsed<KeyUsageValue> ParseKeyUsage(const ExtensionEntry& entry) {
  return internal::RunWalk<KeyUsageValue>(
      Registry::Default(), [&](internal::Walker& w) {
        return internal::WalkKeyUsage(w, internal::BodyNode(w, entry));
      });
}

std::vector<Diagnostic> CheckKeyCertSignRules(const ExtensionSet& extensions) {
  std::vector<Diagnostic> out;
  const ExtensionEntry* ku_entry = extensions.Find(Grammar::kKeyUsage);
  const auto* ku = extensions.Body<KeyUsageValue>(Grammar::kKeyUsage);
  if (!ku_entry || !ku || !ku->Has(KeyUsageBit::kKeyCertSign)) return out;

  const ExtensionEntry* bc_entry = extensions.Find(Grammar::kBasicConstraints);
  if (!bc_entry) {
    out.push_back(MakeDiagnostic(
        Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS, ku_entry->offset,
        "tbsCertificate.extensions.keyUsage",
        "keyCertSign asserted without a basicConstraints extension"));
    return out;
  }
  const auto* bc =
      extensions.Body<BasicConstraintsValue>(Grammar::kBasicConstraints);
  if (bc && !bc->ca) {
    out.push_back(MakeDiagnostic(Code::KEY_CERT_SIGN_IN_LEAF, ku_entry->offset,
                                 "tbsCertificate.extensions.keyUsage",
                                 "keyCertSign asserted but cA is not TRUE"));
  }
  return out;
}

std::vector<Diagnostic> CheckSubjectKeyIdRule(const ExtensionSet& extensions) {
  std::vector<Diagnostic> out;
  const auto* bc =
      extensions.Body<BasicConstraintsValue>(Grammar::kBasicConstraints);
  if (bc && bc->ca && !extensions.Find(Grammar::kSubjectKeyIdentifier)) {
    out.push_back(
        MakeDiagnostic(Code::MISSING_SUBJECT_KEY_ID,
                       extensions.Find(Grammar::kBasicConstraints)->offset,
                       "tbsCertificate.extensions.basicConstraints",
                       "CA certificate without subjectKeyIdentifier"));
  }
  return out;
}

std::optional<std::set<KeyUsageBit>> AllowedKeyUsages(Grammar key_grammar) {
  using B = KeyUsageBit;
  const std::set<B> kSigning = {B::kDigitalSignature, B::kNonRepudiation,
                                B::kKeyCertSign, B::kCrlSign};
  switch (key_grammar) {
    case Grammar::kRsaKey:
      return std::set<B>{B::kDigitalSignature, B::kNonRepudiation,
                         B::kKeyEncipherment,  B::kDataEncipherment,
                         B::kKeyCertSign,      B::kCrlSign};
    case Grammar::kRsaPssKey:
    case Grammar::kDsaKey:
      return kSigning;
    case Grammar::kEcKey: {
      std::set<B> allowed = kSigning;
      allowed.insert({B::kKeyAgreement, B::kEncipherOnly, B::kDecipherOnly});
      return allowed;
    }
    case Grammar::kDhKey:
    case Grammar::kKeaKey:
      return std::set<B>{B::kKeyAgreement, B::kEncipherOnly, B::kDecipherOnly};
    default:
      return std::nullopt;
  }
}

std::vector<Diagnostic> CheckKeyUsageVsAlgorithm(const KeyUsageValue& key_usage,
                                                 const SpkiValue& spki) {
  static constexpr const char* kBitNames[kKeyUsageBitCount] = {
      "digitalSignature", "nonRepudiation", "keyEncipherment",
      "dataEncipherment", "keyAgreement",   "keyCertSign",
      "cRLSign",          "encipherOnly",   "decipherOnly"};
  std::vector<Diagnostic> out;
  if (!spki.algorithm.grammar) return out;
  auto allowed = AllowedKeyUsages(*spki.algorithm.grammar);
  if (!allowed) return out;
  std::string violations;
  for (size_t bit = 0; bit < kKeyUsageBitCount; ++bit) {
    if (key_usage.bits.Bit(bit) &&
        !allowed->count(static_cast<KeyUsageBit>(bit))) {
      if (!violations.empty()) violations += ", ";
      violations += kBitNames[bit];
    }
  }
  if (!violations.empty()) {
    out.push_back(MakeDiagnostic(
        Code::KEY_USAGE_VIOLATION_ON_PK_ALGORITHM, std::nullopt,
        "tbsCertificate.extensions.keyUsage",
        violations + " not permitted for a " +
            std::string(GrammarName(*spki.algorithm.grammar)) + " key"));
  }
  return out;
}

}  // namespace x509strict
