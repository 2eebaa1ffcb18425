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

#ifndef X509STRICT_DER_H_
#define X509STRICT_DER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "x509strict/expected.h"

namespace x509strict {

enum class TagClass : uint8_t {
  kUniversal = 0,
  kApplication = 1,
  kContextSpecific = 2,
  kPrivate = 3,
};

// Universal tag numbers used by the certificate grammar.
namespace tag {
inline constexpr uint32_t kBoolean = 1;
inline constexpr uint32_t kInteger = 2;
inline constexpr uint32_t kBitString = 3;
inline constexpr uint32_t kOctetString = 4;
inline constexpr uint32_t kNull = 5;
inline constexpr uint32_t kOid = 6;
inline constexpr uint32_t kUtf8String = 12;
inline constexpr uint32_t kSequence = 16;
inline constexpr uint32_t kSet = 17;
inline constexpr uint32_t kPrintableString = 19;
inline constexpr uint32_t kTeletexString = 20;
inline constexpr uint32_t kIa5String = 22;
inline constexpr uint32_t kUtcTime = 23;
inline constexpr uint32_t kGeneralizedTime = 24;
inline constexpr uint32_t kVisibleString = 26;
inline constexpr uint32_t kUniversalString = 28;
inline constexpr uint32_t kBmpString = 30;
}  // namespace tag

enum class DerError {
  kEmptyInput,
  kBadIdentifier,
  kLengthByteForbidden,
  kLengthReserved,
  kLengthTooLarge,
  kNonMinimalLength,
  kChildOverflow,
  kTrailingBytes,
  kTruncatedInput,
  kNestingTooDeep,
  kInvalidState,
};

std::string_view DerErrorName(DerError error);

struct DerFailure {
  DerError error;
  size_t offset;
};

inline constexpr uint64_t kMaxContentLength = 0xFFFFFFFFu;

// State of the length/content automaton, encoded in a single 64-bit integer:
//
//   [0, 2^32)            counting states; the value is the number of content
//                        octets still expected, 0 is the only accepting state
//   2^32                 one long-form length octet to read
//   2^33, 2^33+1+x       two-octet long form, before/after the first octet
//   2^34, 2^34+1+x       three-octet long form, x accumulating the prefix
//   2^35, 2^35+1+x       four-octet long form, x accumulating the prefix
//   2^36                 initial state, before the first length octet
//
// Because DER forbids a leading zero length octet, the accumulated prefix x
// lies in [2^(8k), 2^(8k+8)) after k+1 octets, so the depth within a path is
// recoverable from the value alone.
class LengthState {
 public:
  static constexpr uint64_t kOneOctet = uint64_t{1} << 32;
  static constexpr uint64_t kTwoOctets = uint64_t{1} << 33;
  static constexpr uint64_t kThreeOctets = uint64_t{1} << 34;
  static constexpr uint64_t kFourOctets = uint64_t{1} << 35;
  static constexpr uint64_t kInitialValue = uint64_t{1} << 36;

  constexpr LengthState() = default;
  static constexpr LengthState Initial() { return LengthState(kInitialValue); }
  static constexpr LengthState Counting(uint32_t remaining) {
    return LengthState(remaining);
  }
  static constexpr LengthState FromEncoded(uint64_t encoded) {
    return LengthState(encoded);
  }

  constexpr uint64_t encoded() const { return encoded_; }
  constexpr bool IsAccepting() const { return encoded_ == 0; }
  constexpr bool IsCounting() const { return encoded_ <= kMaxContentLength; }
  constexpr uint32_t remaining() const {
    return static_cast<uint32_t>(encoded_);
  }

  constexpr bool operator==(const LengthState&) const = default;

 private:
  explicit constexpr LengthState(uint64_t encoded) : encoded_(encoded) {}

  uint64_t encoded_ = kInitialValue;
};

// Closed-form transition function of the length/content automaton. From the
// initial and accumulation states it consumes length octets; from a counting
// state q >= 1 it consumes one content octet and yields q - 1. Any transition
// not defined by DER leads to an error.
Expected<LengthState, DerError> DeltaLength(LengthState state, uint8_t octet);

// One counting state per open TLV, outermost first. Constructed and primitive
// elements both open a level; the innermost level of a primitive element
// counts its content octets.
class NestingStack {
 public:
  static constexpr size_t kMaxDepth = 64;

  // Opens a level expecting `length` content octets. Fails with
  // kChildOverflow if the length exceeds the remaining count of the
  // enclosing level and kNestingTooDeep beyond kMaxDepth levels.
  [[nodiscard]] std::optional<DerError> Push(uint32_t length);

  // Consumes one octet at every open level. Fails with kChildOverflow when
  // the innermost level has nothing left to consume.
  [[nodiscard]] std::optional<DerError> Step();

  // Pops exhausted levels from the top and returns how many were popped.
  size_t PopExhausted();

  bool empty() const { return levels_.empty(); }
  size_t depth() const { return levels_.size(); }
  std::span<const LengthState> levels() const { return levels_; }

  bool operator==(const NestingStack&) const = default;

 private:
  std::vector<LengthState> levels_;
};

// One content octet step over the whole nesting vector: every open level is
// decremented and levels that reach zero are popped.
Expected<NestingStack, DerError> StepCounting(NestingStack stack,
                                              uint8_t octet);

struct TlvNode {
  TagClass tag_class = TagClass::kUniversal;
  bool constructed = false;
  uint32_t tag_number = 0;
  size_t header_offset = 0;
  size_t content_offset = 0;
  size_t content_length = 0;
  std::vector<TlvNode> children;

  // Views into the parsed input; valid while the input buffer is alive.
  std::span<const uint8_t> encoding;
  std::span<const uint8_t> content;

  size_t end_offset() const { return content_offset + content_length; }

  bool Is(TagClass cls, uint32_t number, bool is_constructed) const {
    return tag_class == cls && tag_number == number &&
           constructed == is_constructed;
  }
  bool IsUniversal(uint32_t number, bool is_constructed) const {
    return Is(TagClass::kUniversal, number, is_constructed);
  }
  bool IsContext(uint32_t number) const {
    return tag_class == TagClass::kContextSpecific && tag_number == number;
  }
};

// Parses exactly one DER TLV spanning the whole input, driving the length
// automaton and the nesting stack one octet at a time. Offsets in the result
// and in errors are `base_offset` plus the position within `input`.
Expected<TlvNode, DerFailure> ParseTlvTree(std::span<const uint8_t> input,
                                           size_t base_offset = 0);

// Like ParseTlvTree, but stops after the first complete TLV and reports how
// many octets it used through `consumed`. Octets after it are not examined.
Expected<TlvNode, DerFailure> ParseTlvPrefix(std::span<const uint8_t> input,
                                             size_t base_offset,
                                             size_t* consumed);

// Recognizer for { d1 d2 a^n : n = 4*d1 + d2 } over the alphabet {0,1,2,3,a},
// using the same integer-encoded transition scheme as the length automaton:
// counting states 0..15, second-digit states 16+d1, initial state 32.
bool RecognizeToy(std::string_view input);

}  // namespace x509strict

#endif  // X509STRICT_DER_H_
