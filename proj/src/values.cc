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

#include "x509strict/values.h"

#include <charconv>
#include <cstdio>

namespace x509strict {

namespace {

Unexpected<ValueError> Error(Code code, size_t offset, std::string message) {
  return MakeUnexpected(ValueError{code, offset, std::move(message)});
}

void AppendUtf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool IsSurrogate(uint32_t cp) { return cp >= 0xD800 && cp <= 0xDFFF; }

// Returns the index of the first invalid octet, or nullopt.
std::optional<size_t> FirstInvalidUtf8(std::span<const uint8_t> s) {
  size_t i = 0;
  while (i < s.size()) {
    const uint8_t lead = s[i];
    if (lead < 0x80) {
      ++i;
      continue;
    }
    size_t extra;
    uint32_t cp;
    uint32_t min;
    if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
      min = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
      min = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
      min = 0x10000;
    } else {
      return i;
    }
    if (i + extra >= s.size()) return i;
    for (size_t k = 1; k <= extra; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || IsSurrogate(cp)) return i;
    i += extra + 1;
  }
  return std::nullopt;
}

int Digits(std::string_view s, size_t pos, size_t count) {
  int value = 0;
  for (size_t i = pos; i < pos + count; ++i) value = value * 10 + (s[i] - '0');
  return value;
}

}  // namespace

std::optional<int64_t> Integer::ToInt64() const {
  if (bytes_.empty() || bytes_.size() > 8) return std::nullopt;
  uint64_t value = IsNegative() ? ~uint64_t{0} : 0;
  for (uint8_t b : bytes_) value = (value << 8) | b;
  return static_cast<int64_t>(value);
}

std::string Integer::ToHex() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (uint8_t b : bytes_) {
    out += kHex[b >> 4];
    out += kHex[b & 0xF];
  }
  return out;
}

std::string ObjectIdentifier::ToString() const {
  std::string out;
  for (size_t i = 0; i < arcs_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(arcs_[i]);
  }
  return out;
}

std::optional<std::vector<uint32_t>> ParseDottedOid(std::string_view text) {
  std::vector<uint32_t> arcs;
  while (true) {
    size_t dot = text.find('.');
    std::string_view part = text.substr(0, dot);
    if (part.empty() || (part.size() > 1 && part[0] == '0')) {
      return std::nullopt;
    }
    uint32_t arc = 0;
    auto [end, ec] =
        std::from_chars(part.data(), part.data() + part.size(), arc);
    if (ec != std::errc() || end != part.data() + part.size()) {
      return std::nullopt;
    }
    arcs.push_back(arc);
    if (dot == std::string_view::npos) break;
    text.remove_prefix(dot + 1);
  }
  if (arcs.size() < 2 || arcs[0] > 2) return std::nullopt;
  if (arcs[0] < 2 && arcs[1] > 39) return std::nullopt;
  if (arcs[0] == 2 && arcs[1] > 0xFFFFFFFFu - 80) return std::nullopt;
  return arcs;
}

bool BitStringValue::Bit(size_t index) const {
  if (index >= bit_length()) return false;
  return (bits[index / 8] >> (7 - index % 8)) & 1;
}

bool IsLeapYear(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int DaysInMonth(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && IsLeapYear(year)) return 29;
  return kDays[month - 1];
}

ValueResult<Integer> DecodeInteger(const TlvNode& node) {
  if (!node.IsUniversal(tag::kInteger, false)) {
    return Error(Code::GENERIC_ERROR, node.header_offset, "expected INTEGER");
  }
  std::span<const uint8_t> c = node.content;
  if (c.empty()) {
    return Error(Code::EMPTY_VALUE_FIELD, node.header_offset,
                 "INTEGER with no content octets");
  }
  if (c.size() >= 2 &&
      ((c[0] == 0x00 && c[1] < 0x80) || (c[0] == 0xFF && c[1] >= 0x80))) {
    return Error(Code::NON_MINIMAL_INTEGER, node.content_offset,
                 "INTEGER has a redundant leading octet");
  }
  return Integer(std::vector<uint8_t>(c.begin(), c.end()));
}

ValueResult<ObjectIdentifier> DecodeOid(const TlvNode& node) {
  if (!node.IsUniversal(tag::kOid, false)) {
    return Error(Code::GENERIC_ERROR, node.header_offset,
                 "expected OBJECT IDENTIFIER");
  }
  std::span<const uint8_t> c = node.content;
  if (c.empty()) {
    return Error(Code::EMPTY_VALUE_FIELD, node.header_offset,
                 "OBJECT IDENTIFIER with no content octets");
  }

  constexpr uint64_t kArcMax = 0xFFFFFFFFu;
  std::vector<uint32_t> arcs;
  size_t i = 0;
  bool first = true;
  while (i < c.size()) {
    const size_t start = i;
    if (c[i] == 0x80) {
      return Error(Code::OID_MALFORMED, node.content_offset + i,
                   "arc encoded with a leading 0x80 octet");
    }
    // The first subidentifier also carries the first arc (up to 2*40).
    const uint64_t limit = first ? kArcMax + 80 : kArcMax;
    uint64_t value = 0;
    bool done = false;
    while (i < c.size()) {
      const uint8_t octet = c[i++];
      value = (value << 7) | (octet & 0x7F);
      if (value > limit) {
        return Error(Code::OID_ARC_OVERFLOW, node.content_offset + start,
                     "arc exceeds 2^32-1");
      }
      if ((octet & 0x80) == 0) {
        done = true;
        break;
      }
    }
    if (!done) {
      return Error(Code::OID_MALFORMED, node.content_offset + c.size() - 1,
                   "OID truncated: last octet has the continuation bit set");
    }
    if (first) {
      if (value < 40) {
        arcs.push_back(0);
        arcs.push_back(static_cast<uint32_t>(value));
      } else if (value < 80) {
        arcs.push_back(1);
        arcs.push_back(static_cast<uint32_t>(value - 40));
      } else {
        arcs.push_back(2);
        arcs.push_back(static_cast<uint32_t>(value - 80));
      }
      first = false;
    } else {
      arcs.push_back(static_cast<uint32_t>(value));
    }
  }
  return ObjectIdentifier(std::move(arcs),
                          std::vector<uint8_t>(c.begin(), c.end()));
}

ValueResult<bool> DecodeBoolean(const TlvNode& node) {
  if (!node.IsUniversal(tag::kBoolean, false)) {
    return Error(Code::GENERIC_ERROR, node.header_offset, "expected BOOLEAN");
  }
  if (node.content.empty()) {
    return Error(Code::EMPTY_VALUE_FIELD, node.header_offset,
                 "BOOLEAN with no content octets");
  }
  if (node.content.size() != 1) {
    return Error(Code::NON_CANONICAL_BOOLEAN, node.header_offset,
                 "BOOLEAN must have exactly one content octet");
  }
  const uint8_t v = node.content[0];
  if (v == 0x00) return false;
  if (v == 0xFF) return true;
  return Error(Code::NON_CANONICAL_BOOLEAN, node.content_offset,
               "BOOLEAN true must be encoded as 0xFF");
}

ValueResult<BitStringValue> DecodeBitString(const TlvNode& node,
                                            std::optional<size_t> named_bits) {
  if (!node.IsUniversal(tag::kBitString, false)) {
    return Error(Code::GENERIC_ERROR, node.header_offset,
                 "expected BIT STRING");
  }
  std::span<const uint8_t> c = node.content;
  if (c.empty()) {
    return Error(Code::BAD_BIT_STRING_ENCODING, node.header_offset,
                 "BIT STRING without the unused-bits octet");
  }
  BitStringValue value;
  value.unused_bits = c[0];
  value.bits.assign(c.begin() + 1, c.end());
  value.named_bit_count = named_bits;
  if (value.unused_bits > 7) {
    return Error(Code::BAD_BIT_STRING_ENCODING, node.content_offset,
                 "unused-bits count above 7");
  }
  if (value.bits.empty() && value.unused_bits != 0) {
    return Error(Code::BAD_BIT_STRING_ENCODING, node.content_offset,
                 "empty BIT STRING with non-zero unused bits");
  }
  if (!value.bits.empty()) {
    const uint8_t pad_mask =
        static_cast<uint8_t>((1u << value.unused_bits) - 1);
    if (value.bits.back() & pad_mask) {
      return Error(Code::BAD_BIT_STRING_ENCODING, node.end_offset() - 1,
                   "padding bits are not zero");
    }
  }
  if (named_bits && !value.bits.empty()) {
    const size_t length = value.bit_length();
    if (!value.Bit(length - 1)) {
      return Error(Code::WRONG_KEY_CERT_SIGN_ENCODING, node.content_offset,
                   "named-bit list has trailing zero bits");
    }
    if (length > *named_bits) {
      return Error(Code::WRONG_KEY_CERT_SIGN_ENCODING, node.content_offset,
                   "bit set beyond the last named bit");
    }
  }
  return value;
}

ValueResult<TimeValue> ValidateTime(const TlvNode& node) {
  TimeValue t;
  size_t year_digits;
  if (node.IsUniversal(tag::kUtcTime, false)) {
    t.kind = TimeKind::kUtcTime;
    year_digits = 2;
  } else if (node.IsUniversal(tag::kGeneralizedTime, false)) {
    t.kind = TimeKind::kGeneralizedTime;
    year_digits = 4;
  } else {
    return Error(Code::GENERIC_ERROR, node.header_offset,
                 "expected UTCTime or GeneralizedTime");
  }

  std::string_view s(reinterpret_cast<const char*>(node.content.data()),
                     node.content.size());
  const size_t expected_length = year_digits + 10 + 1;
  if (s.size() != expected_length) {
    return Error(Code::MALFORMED_TIME, node.header_offset,
                 "time must have the form " +
                     std::string(year_digits == 2 ? "YYMMDDHHMMSSZ"
                                                  : "YYYYMMDDHHMMSSZ"));
  }
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      return Error(Code::MALFORMED_TIME, node.content_offset + i,
                   "non-digit in time value");
    }
  }
  if (s.back() != 'Z') {
    return Error(Code::MALFORMED_TIME, node.end_offset() - 1,
                 "time must end with 'Z'");
  }

  if (year_digits == 2) {
    const int yy = Digits(s, 0, 2);
    t.year = yy >= 50 ? 1900 + yy : 2000 + yy;
  } else {
    t.year = Digits(s, 0, 4);
  }
  const size_t p = year_digits;
  t.month = Digits(s, p, 2);
  t.day = Digits(s, p + 2, 2);
  t.hour = Digits(s, p + 4, 2);
  t.minute = Digits(s, p + 6, 2);
  t.second = Digits(s, p + 8, 2);
  t.zulu = true;

  if (t.month < 1 || t.month > 12 || t.day < 1 ||
      t.day > DaysInMonth(t.year, t.month) || t.hour > 23 || t.minute > 59 ||
      t.second > 59) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", t.year,
                  t.month, t.day, t.hour, t.minute, t.second);
    return Error(Code::INVALID_DATE, node.content_offset,
                 std::string("non-existent date ") + buf);
  }
  return t;
}

bool IsPrintableStringChar(uint8_t c) {
  if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
      (c >= '0' && c <= '9')) {
    return true;
  }
  switch (c) {
    case ' ':
    case '\'':
    case '(':
    case ')':
    case '+':
    case ',':
    case '-':
    case '.':
    case '/':
    case ':':
    case '=':
    case '?':
      return true;
    default:
      return false;
  }
}

bool IsValidUtf8(std::span<const uint8_t> bytes) {
  return !FirstInvalidUtf8(bytes).has_value();
}

ValueResult<std::string> ValidateCharset(const TlvNode& node) {
  if (node.tag_class != TagClass::kUniversal || node.constructed) {
    return Error(Code::WRONG_STRING_TYPE, node.header_offset,
                 "expected a character string");
  }
  std::span<const uint8_t> c = node.content;
  const size_t base = node.content_offset;
  auto violation = [&](size_t i, const char* what) {
    return Error(Code::CHAR_SET_VIOLATION, base + i, what);
  };

  switch (node.tag_number) {
    case tag::kPrintableString:
      for (size_t i = 0; i < c.size(); ++i) {
        if (!IsPrintableStringChar(c[i])) {
          return violation(i, "character not allowed in PrintableString");
        }
      }
      return std::string(c.begin(), c.end());

    case tag::kIa5String:
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0 || c[i] >= 0x80) {
          return violation(i, "character not allowed in IA5String");
        }
      }
      return std::string(c.begin(), c.end());

    case tag::kVisibleString:
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0x20 || c[i] > 0x7E) {
          return violation(i, "character not allowed in VisibleString");
        }
      }
      return std::string(c.begin(), c.end());

    case tag::kUtf8String: {
      if (auto bad = FirstInvalidUtf8(c)) {
        return violation(*bad, "malformed UTF-8");
      }
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) return violation(i, "embedded NUL");
      }
      return std::string(c.begin(), c.end());
    }

    case tag::kBmpString: {
      if (c.size() % 2 != 0) {
        return violation(c.size() - 1, "BMPString with odd length");
      }
      std::string out;
      for (size_t i = 0; i < c.size(); i += 2) {
        const uint32_t unit = (uint32_t{c[i]} << 8) | c[i + 1];
        if (unit == 0) return violation(i, "embedded NUL");
        if (IsSurrogate(unit)) return violation(i, "surrogate in BMPString");
        AppendUtf8(out, unit);
      }
      return out;
    }

    case tag::kUniversalString: {
      if (c.size() % 4 != 0) {
        return violation(c.size() - 1, "UniversalString length not 4n");
      }
      std::string out;
      for (size_t i = 0; i < c.size(); i += 4) {
        const uint32_t cp = (uint32_t{c[i]} << 24) |
                            (uint32_t{c[i + 1]} << 16) |
                            (uint32_t{c[i + 2]} << 8) | c[i + 3];
        if (cp == 0) return violation(i, "embedded NUL");
        if (cp > 0x10FFFF || IsSurrogate(cp)) {
          return violation(i, "invalid code point in UniversalString");
        }
        AppendUtf8(out, cp);
      }
      return out;
    }

    case tag::kTeletexString:
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) return violation(i, "embedded NUL");
      }
      return std::string(c.begin(), c.end());

    default:
      return Error(Code::WRONG_STRING_TYPE, node.header_offset,
                   "tag " + std::to_string(node.tag_number) +
                       " is not a character string type");
  }
}

}  // namespace x509strict
