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

#ifndef X509STRICT_VALUES_H_
#define X509STRICT_VALUES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "x509strict/der.h"
#include "x509strict/diagnostics.h"
#include "x509strict/expected.h"

namespace x509strict {

// Failure of a primitive value decode. `offset` points at the offending
// octet when one can be singled out, otherwise at the element header.
struct ValueError {
  Code code;
  size_t offset;
  std::string message;
};

template <typename T>
using ValueResult = Expected<T, ValueError>;

// Arbitrary-precision integer kept in its minimal two's-complement
// big-endian form.
class Integer {
 public:
  Integer() = default;
  explicit Integer(std::vector<uint8_t> twos_complement)
      : bytes_(std::move(twos_complement)) {}

  std::span<const uint8_t> bytes() const { return bytes_; }
  bool IsNegative() const { return !bytes_.empty() && (bytes_[0] & 0x80); }
  bool IsZero() const { return bytes_.size() == 1 && bytes_[0] == 0; }
  std::optional<int64_t> ToInt64() const;
  std::string ToHex() const;

  bool operator==(const Integer&) const = default;

 private:
  std::vector<uint8_t> bytes_;
};

class ObjectIdentifier {
 public:
  ObjectIdentifier() = default;
  ObjectIdentifier(std::vector<uint32_t> arcs, std::vector<uint8_t> raw)
      : arcs_(std::move(arcs)), raw_(std::move(raw)) {}

  const std::vector<uint32_t>& arcs() const { return arcs_; }
  std::span<const uint8_t> raw_bytes() const { return raw_; }
  std::string ToString() const;

  // Equality is on the content octets; the decoder guarantees one encoding
  // per arc sequence.
  bool operator==(const ObjectIdentifier& other) const {
    return raw_ == other.raw_;
  }
  bool operator<(const ObjectIdentifier& other) const {
    return raw_ < other.raw_;
  }

 private:
  std::vector<uint32_t> arcs_;
  std::vector<uint8_t> raw_;
};

// Parses "1.2.840.113549" into arcs. Returns nullopt on malformed text or
// when the arcs violate the first/second arc rules.
std::optional<std::vector<uint32_t>> ParseDottedOid(std::string_view text);

struct BitStringValue {
  uint8_t unused_bits = 0;
  std::vector<uint8_t> bits;
  std::optional<size_t> named_bit_count;

  size_t bit_length() const { return bits.size() * 8 - unused_bits; }
  // Bit 0 is the most significant bit of the first octet.
  bool Bit(size_t index) const;
};

enum class TimeKind { kUtcTime, kGeneralizedTime };

struct TimeValue {
  TimeKind kind = TimeKind::kUtcTime;
  int year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;
  int minute = 0;
  int second = 0;
  bool zulu = true;
};

bool IsLeapYear(int year);
int DaysInMonth(int year, int month);

ValueResult<Integer> DecodeInteger(const TlvNode& node);
ValueResult<ObjectIdentifier> DecodeOid(const TlvNode& node);
ValueResult<bool> DecodeBoolean(const TlvNode& node);

// With `named_bits` set, the value is a named-bit list of that many bits
// and must be in canonical form: no trailing zero bits, no bits beyond the
// named ones.
ValueResult<BitStringValue> DecodeBitString(
    const TlvNode& node, std::optional<size_t> named_bits = std::nullopt);

ValueResult<TimeValue> ValidateTime(const TlvNode& node);

// Validates the content of a character string against the alphabet implied
// by its tag and returns it as UTF-8 (TeletexString is returned as raw
// bytes). Tags that are not character strings yield WRONG_STRING_TYPE.
ValueResult<std::string> ValidateCharset(const TlvNode& node);

bool IsPrintableStringChar(uint8_t c);
bool IsValidUtf8(std::span<const uint8_t> bytes);

}  // namespace x509strict

#endif  // X509STRICT_VALUES_H_
