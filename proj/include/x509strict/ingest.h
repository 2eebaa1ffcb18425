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

#ifndef X509STRICT_INGEST_H_
#define X509STRICT_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "x509strict/der.h"
#include "x509strict/expected.h"

namespace x509strict {

enum class InputFormat { kAuto, kPem, kDer };

enum class IngestError {
  kBadPemArmor,
  kBadBase64,
  kUnrecognizedFormat,
  kTooLarge,
  kIo,
};

std::string_view IngestErrorName(IngestError error);
std::string_view InputFormatName(InputFormat format);

struct IngestFailure {
  IngestError error;
  std::string message;
};

struct InputDocument {
  // Source path, with "#<block>" appended for multi-certificate PEM files.
  std::string id;
  std::string source_path;
  InputFormat encoding = InputFormat::kDer;
  std::vector<uint8_t> der_bytes;
  std::string sha256_hex;
};

// RFC 4648 base64 with the standard alphabet. Whitespace is not skipped;
// padding is mandatory and the unused bits of the last group must be zero.
Expected<std::vector<uint8_t>, IngestFailure> DecodeBase64(
    std::string_view text);

std::string Sha256Hex(std::span<const uint8_t> bytes);

// Splits `data` into documents. PEM input yields one document per
// CERTIFICATE block; blocks with other labels are ignored, and input with
// no CERTIFICATE block at all is UnrecognizedFormat.
Expected<std::vector<InputDocument>, IngestFailure> LoadBytes(
    std::span<const uint8_t> data, std::string_view source_path,
    InputFormat format = InputFormat::kAuto,
    uint64_t max_size = kMaxContentLength);

Expected<std::vector<InputDocument>, IngestFailure> LoadInput(
    const std::filesystem::path& path, InputFormat format = InputFormat::kAuto,
    uint64_t max_size = kMaxContentLength);

}  // namespace x509strict

#endif  // X509STRICT_INGEST_H_
