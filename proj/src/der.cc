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

#include "x509strict/der.h"

namespace x509strict {

namespace {

using Result = Expected<LengthState, DerError>;

Unexpected<DerError> Fail(DerError error) { return MakeUnexpected(error); }

}  // namespace

std::string_view DerErrorName(DerError error) {
  switch (error) {
    case DerError::kEmptyInput:
      return "EmptyInput";
    case DerError::kBadIdentifier:
      return "BadIdentifier";
    case DerError::kLengthByteForbidden:
      return "LengthByteForbidden";
    case DerError::kLengthReserved:
      return "LengthReserved";
    case DerError::kLengthTooLarge:
      return "LengthTooLarge";
    case DerError::kNonMinimalLength:
      return "NonMinimalLength";
    case DerError::kChildOverflow:
      return "ChildOverflow";
    case DerError::kTrailingBytes:
      return "TrailingBytes";
    case DerError::kTruncatedInput:
      return "TruncatedInput";
    case DerError::kNestingTooDeep:
      return "NestingTooDeep";
    case DerError::kInvalidState:
      return "InvalidState";
  }
  return "Unknown";
}

Result DeltaLength(LengthState state, uint8_t octet) {
  const uint64_t q = state.encoded();
  const uint64_t a = octet;

  if (q <= kMaxContentLength) {
    // Content octet: count down towards the accepting state.
    if (q == 0) return Fail(DerError::kTrailingBytes);
    return LengthState::Counting(static_cast<uint32_t>(q - 1));
  }

  if (q == LengthState::kInitialValue) {
    if (a <= 127) return LengthState::Counting(static_cast<uint32_t>(a));
    switch (a) {
      case 128:
        return Fail(DerError::kLengthByteForbidden);
      case 129:
        return LengthState::FromEncoded(LengthState::kOneOctet);
      case 130:
        return LengthState::FromEncoded(LengthState::kTwoOctets);
      case 131:
        return LengthState::FromEncoded(LengthState::kThreeOctets);
      case 132:
        return LengthState::FromEncoded(LengthState::kFourOctets);
      case 255:
        return Fail(DerError::kLengthReserved);
      default:
        return Fail(DerError::kLengthTooLarge);
    }
  }

  if (q == LengthState::kOneOctet) {
    // Values below 128 must use the short form.
    if (a < 128) return Fail(DerError::kNonMinimalLength);
    return LengthState::Counting(static_cast<uint32_t>(a));
  }

  // Entering a multi-octet path: the first octet must be non-zero.
  if (q == LengthState::kTwoOctets || q == LengthState::kThreeOctets ||
      q == LengthState::kFourOctets) {
    if (a == 0) return Fail(DerError::kNonMinimalLength);
    return LengthState::FromEncoded(q + 1 + a);
  }

  constexpr uint64_t kTwoBase = LengthState::kTwoOctets + 1;
  if (q > kTwoBase && q < kTwoBase + 256) {
    return LengthState::Counting(
        static_cast<uint32_t>(a + (q - kTwoBase) * 256));
  }

  constexpr uint64_t kThreeBase = LengthState::kThreeOctets + 1;
  if (q > kThreeBase && q < kThreeBase + (uint64_t{1} << 16)) {
    const uint64_t prefix = q - kThreeBase;
    if (prefix < 256)
      return LengthState::FromEncoded(kThreeBase + a + prefix * 256);
    return LengthState::Counting(static_cast<uint32_t>(a + prefix * 256));
  }

  constexpr uint64_t kFourBase = LengthState::kFourOctets + 1;
  if (q > kFourBase && q < kFourBase + (uint64_t{1} << 24)) {
    const uint64_t prefix = q - kFourBase;
    if (prefix < (uint64_t{1} << 16)) {
      return LengthState::FromEncoded(kFourBase + a + prefix * 256);
    }
    return LengthState::Counting(static_cast<uint32_t>(a + prefix * 256));
  }

  return Fail(DerError::kInvalidState);
}

std::optional<DerError> NestingStack::Push(uint32_t length) {
  if (!levels_.empty() && length > levels_.back().remaining()) {
    return DerError::kChildOverflow;
  }
  if (levels_.size() >= kMaxDepth) return DerError::kNestingTooDeep;
  levels_.push_back(LengthState::Counting(length));
  return std::nullopt;
}

std::optional<DerError> NestingStack::Step() {
  if (levels_.empty()) return std::nullopt;
  // Inner counts never exceed outer ones, so checking the top suffices.
  if (levels_.back().IsAccepting()) return DerError::kChildOverflow;
  for (LengthState& level : levels_) {
    level = LengthState::Counting(level.remaining() - 1);
  }
  return std::nullopt;
}

size_t NestingStack::PopExhausted() {
  size_t popped = 0;
  while (!levels_.empty() && levels_.back().IsAccepting()) {
    levels_.pop_back();
    ++popped;
  }
  return popped;
}

Expected<NestingStack, DerError> StepCounting(NestingStack stack,
                                              uint8_t /*octet*/) {
  if (stack.empty()) return Fail(DerError::kTrailingBytes);
  if (auto error = stack.Step()) return Fail(*error);
  stack.PopExhausted();
  return stack;
}

namespace {

Expected<TlvNode, DerFailure> ParseTlv(std::span<const uint8_t> input,
                                       size_t base_offset, bool allow_trailing,
                                       size_t* consumed) {
  auto fail = [base_offset](DerError error, size_t at) {
    return MakeUnexpected(DerFailure{error, base_offset + at});
  };

  const size_t n = input.size();
  if (n == 0) return fail(DerError::kEmptyInput, 0);
  if (n > kMaxContentLength) return fail(DerError::kLengthTooLarge, 0);

  NestingStack stack;
  std::vector<TlvNode> open;
  std::optional<TlvNode> root;
  size_t pos = 0;

  // Feeds the octet at `pos` to every open level.
  auto step = [&]() -> std::optional<DerError> { return stack.Step(); };

  while (pos < n) {
    if (root) {
      if (allow_trailing) break;
      return fail(DerError::kTrailingBytes, pos);
    }

    const size_t header = pos;
    const uint8_t identifier = input[pos];
    if (auto error = step()) return fail(*error, pos);
    ++pos;

    TlvNode node;
    node.tag_class = static_cast<TagClass>(identifier >> 6);
    node.constructed = (identifier & 0x20) != 0;
    node.tag_number = identifier & 0x1f;

    if (node.tag_number == 0x1f) {
      // High-tag-number form: base-128, minimal, at least 31.
      uint64_t value = 0;
      bool first = true;
      for (;;) {
        if (pos >= n) return fail(DerError::kTruncatedInput, pos);
        const uint8_t octet = input[pos];
        if (first && octet == 0x80) return fail(DerError::kBadIdentifier, pos);
        if (auto error = step()) return fail(*error, pos);
        ++pos;
        first = false;
        value = (value << 7) | (octet & 0x7f);
        if (value > 0xFFFFFFFFu) return fail(DerError::kBadIdentifier, pos - 1);
        if ((octet & 0x80) == 0) break;
      }
      if (value < 31) return fail(DerError::kBadIdentifier, header);
      node.tag_number = static_cast<uint32_t>(value);
    }

    LengthState state = LengthState::Initial();
    do {
      if (pos >= n) return fail(DerError::kTruncatedInput, pos);
      const uint8_t octet = input[pos];
      if (auto error = step()) return fail(*error, pos);
      auto next = DeltaLength(state, octet);
      if (!next) return fail(next.error(), pos);
      state = *next;
      ++pos;
    } while (!state.IsCounting());

    const uint32_t length = state.remaining();
    // Reported at the last length octet, where the overflow becomes known.
    if (auto error = stack.Push(length)) {
      return fail(*error,
                  *error == DerError::kChildOverflow ? pos - 1 : header);
    }
    if (length > n - pos) return fail(DerError::kTruncatedInput, header);

    node.header_offset = base_offset + header;
    node.content_offset = base_offset + pos;
    node.content_length = length;
    node.encoding = input.subspan(header, pos - header + length);
    node.content = input.subspan(pos, length);

    if (!node.constructed) {
      for (uint32_t i = 0; i < length; ++i) {
        if (auto error = step()) return fail(*error, pos);
        ++pos;
      }
    }
    open.push_back(std::move(node));

    for (size_t popped = stack.PopExhausted(); popped > 0; --popped) {
      TlvNode done = std::move(open.back());
      open.pop_back();
      if (open.empty()) {
        root = std::move(done);
      } else {
        open.back().children.push_back(std::move(done));
      }
    }
  }

  if (!root) return fail(DerError::kTruncatedInput, n);
  if (consumed) *consumed = pos;
  return std::move(*root);
}

}  // namespace

Expected<TlvNode, DerFailure> ParseTlvTree(std::span<const uint8_t> input,
                                           size_t base_offset) {
  return ParseTlv(input, base_offset, false, nullptr);
}

Expected<TlvNode, DerFailure> ParseTlvPrefix(std::span<const uint8_t> input,
                                             size_t base_offset,
                                             size_t* consumed) {
  return ParseTlv(input, base_offset, true, consumed);
}

bool RecognizeToy(std::string_view input) {
  constexpr uint32_t kInitial = 32;
  constexpr uint32_t kSecondDigit = 16;

  uint32_t state = kInitial;
  for (char c : input) {
    const bool digit = c >= '0' && c <= '3';
    if (state == kInitial) {
      if (!digit) return false;
      state = kSecondDigit + static_cast<uint32_t>(c - '0');
    } else if (state >= kSecondDigit && state < kSecondDigit + 4) {
      if (!digit) return false;
      state = (state - kSecondDigit) * 4 + static_cast<uint32_t>(c - '0');
    } else {
      if (c != 'a' || state == 0) return false;
      state -= 1;
    }
  }
  return state == 0;
}

}  // namespace x509strict
