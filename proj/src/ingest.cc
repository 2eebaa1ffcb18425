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

#include "x509strict/ingest.h"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>

namespace x509strict {

namespace {

constexpr std::string_view kBegin = "-----BEGIN ";
constexpr std::string_view kEnd = "-----END ";
constexpr std::string_view kDashes = "-----";

Unexpected<IngestFailure> Failure(IngestError error, std::string message) {
  return MakeUnexpected(IngestFailure{error, std::move(message)});
}

int Base64Value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view StripLineEnd(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Label of an armor line such as "-----BEGIN CERTIFICATE-----".
bool ArmorLabel(std::string_view line, std::string_view prefix,
                std::string_view* label) {
  if (line.substr(0, prefix.size()) != prefix) return false;
  line.remove_prefix(prefix.size());
  if (line.size() < kDashes.size() ||
      line.substr(line.size() - kDashes.size()) != kDashes) {
    return false;
  }
  *label = line.substr(0, line.size() - kDashes.size());
  return true;
}

Expected<std::vector<InputDocument>, IngestFailure> LoadPem(
    std::string_view text, std::string_view source_path) {
  std::vector<std::vector<uint8_t>> blocks;
  size_t other_blocks = 0;

  bool in_block = false;
  std::string label;
  std::string body;
  size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const size_t eol = text.find('\n');
    const std::string_view line = StripLineEnd(text.substr(0, eol));
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    const std::string where = " at line " + std::to_string(line_number);

    std::string_view found;
    if (!in_block) {
      if (ArmorLabel(line, kBegin, &found)) {
        in_block = true;
        label = std::string(found);
        body.clear();
      } else if (ArmorLabel(line, kEnd, &found)) {
        return Failure(IngestError::kBadPemArmor, "END without BEGIN" + where);
      }
      continue;
    }
    if (ArmorLabel(line, kEnd, &found)) {
      if (found != label) {
        return Failure(IngestError::kBadPemArmor,
                       "END label '" + std::string(found) +
                           "' does not match BEGIN label '" + label + "'" +
                           where);
      }
      in_block = false;
      if (label != "CERTIFICATE") {
        ++other_blocks;
        continue;
      }
      auto decoded = DecodeBase64(body);
      if (!decoded) return MakeUnexpected(decoded.error());
      if (decoded->empty()) {
        return Failure(IngestError::kBadPemArmor, "empty CERTIFICATE block");
      }
      blocks.push_back(std::move(*decoded));
      continue;
    }
    if (ArmorLabel(line, kBegin, &found)) {
      return Failure(IngestError::kBadPemArmor, "nested BEGIN" + where);
    }
    if (label == "CERTIFICATE") {
      if (line.find(':') != std::string_view::npos) {
        return Failure(
            IngestError::kBadPemArmor,
            "headers are not allowed in a CERTIFICATE block" + where);
      }
      std::string_view trimmed = line;
      while (!trimmed.empty() &&
             (trimmed.back() == ' ' || trimmed.back() == '\t')) {
        trimmed.remove_suffix(1);
      }
      body.append(trimmed);
    }
  }
  if (in_block) {
    return Failure(IngestError::kBadPemArmor,
                   "missing END line for '" + label + "'");
  }
  if (blocks.empty()) {
    return Failure(IngestError::kUnrecognizedFormat,
                   other_blocks ? "no CERTIFICATE block in PEM input"
                                : "no PEM block found");
  }

  std::vector<InputDocument> documents;
  for (size_t i = 0; i < blocks.size(); ++i) {
    InputDocument doc;
    doc.source_path = std::string(source_path);
    doc.id = blocks.size() == 1 ? doc.source_path
                                : doc.source_path + "#" + std::to_string(i);
    doc.encoding = InputFormat::kPem;
    doc.sha256_hex = Sha256Hex(blocks[i]);
    doc.der_bytes = std::move(blocks[i]);
    documents.push_back(std::move(doc));
  }
  return documents;
}

}  // namespace

std::string_view IngestErrorName(IngestError error) {
  switch (error) {
    case IngestError::kBadPemArmor:
      return "bad_pem_armor";
    case IngestError::kBadBase64:
      return "bad_base64";
    case IngestError::kUnrecognizedFormat:
      return "unrecognized_format";
    case IngestError::kTooLarge:
      return "too_large";
    case IngestError::kIo:
      return "io";
  }
  return "?";
}

std::string_view InputFormatName(InputFormat format) {
  switch (format) {
    case InputFormat::kAuto:
      return "auto";
    case InputFormat::kPem:
      return "pem";
    case InputFormat::kDer:
      return "der";
  }
  return "?";
}

Expected<std::vector<uint8_t>, IngestFailure> DecodeBase64(
    std::string_view text) {
  if (text.size() % 4 != 0) {
    return Failure(IngestError::kBadBase64, "base64 length " +
                                                std::to_string(text.size()) +
                                                " is not a multiple of 4");
  }
  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    const bool last = i + 4 == text.size();
    int v[4];
    size_t padding = 0;
    for (size_t k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=' && last && k >= 2) {
        v[k] = 0;
        ++padding;
        continue;
      }
      if (padding > 0 || (v[k] = Base64Value(c)) < 0) {
        return Failure(
            IngestError::kBadBase64,
            "invalid base64 character at position " + std::to_string(i + k));
      }
    }
    const uint32_t group = (uint32_t(v[0]) << 18) | (uint32_t(v[1]) << 12) |
                           (uint32_t(v[2]) << 6) | uint32_t(v[3]);
    const uint32_t unused_mask = padding == 2   ? 0xFFFF
                                 : padding == 1 ? 0xFF
                                                : 0;
    if (group & unused_mask) {
      return Failure(IngestError::kBadBase64,
                     "non-zero bits in base64 padding");
    }
    out.push_back(static_cast<uint8_t>(group >> 16));
    if (padding < 2) out.push_back(static_cast<uint8_t>(group >> 8));
    if (padding < 1) out.push_back(static_cast<uint8_t>(group));
  }
  return out;
}

std::string Sha256Hex(std::span<const uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
             nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

Expected<std::vector<InputDocument>, IngestFailure> LoadBytes(
    std::span<const uint8_t> data, std::string_view source_path,
    InputFormat format, uint64_t max_size) {
  if (data.size() > max_size) {
    return Failure(IngestError::kTooLarge, std::to_string(data.size()) +
                                               " bytes exceeds the limit of " +
                                               std::to_string(max_size));
  }
  const std::string_view text(reinterpret_cast<const char*>(data.data()),
                              data.size());
  if (format == InputFormat::kAuto) {
    size_t start = 0;
    while (start < text.size() && IsSpace(text[start])) ++start;
    if (text.substr(start, kBegin.size()) == kBegin) {
      format = InputFormat::kPem;
    } else if (!data.empty() && data[0] == 0x30) {
      format = InputFormat::kDer;
    } else {
      return Failure(IngestError::kUnrecognizedFormat,
                     "input is neither PEM nor DER");
    }
  }
  if (format == InputFormat::kPem) return LoadPem(text, source_path);

  if (data.empty()) {
    return Failure(IngestError::kUnrecognizedFormat, "empty input");
  }
  InputDocument doc;
  doc.id = std::string(source_path);
  doc.source_path = doc.id;
  doc.encoding = InputFormat::kDer;
  doc.der_bytes.assign(data.begin(), data.end());
  doc.sha256_hex = Sha256Hex(doc.der_bytes);
  std::vector<InputDocument> out;
  out.push_back(std::move(doc));
  return out;
}

Expected<std::vector<InputDocument>, IngestFailure> LoadInput(
    const std::filesystem::path& path, InputFormat format, uint64_t max_size) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) return Failure(IngestError::kIo, ec.message());
  if (size > max_size) {
    return Failure(IngestError::kTooLarge, std::to_string(size) +
                                               " bytes exceeds the limit of " +
                                               std::to_string(max_size));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return Failure(IngestError::kIo, "cannot open " + path.string());
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (in.bad()) return Failure(IngestError::kIo, "read error");
  return LoadBytes(data, path.string(), format, max_size);
}

}  // namespace x509strict
