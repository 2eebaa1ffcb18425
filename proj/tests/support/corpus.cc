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

#include "corpus.h"

#include <fstream>

#include "cert_builder.h"

namespace x509test {

namespace {

std::string Base64(const Bytes& data) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  for (size_t i = 0; i < data.size(); i += 3) {
    uint32_t group = uint32_t(data[i]) << 16;
    if (i + 1 < data.size()) group |= uint32_t(data[i + 1]) << 8;
    if (i + 2 < data.size()) group |= data[i + 2];
    out += kAlphabet[(group >> 18) & 63];
    out += kAlphabet[(group >> 12) & 63];
    out += i + 1 < data.size() ? kAlphabet[(group >> 6) & 63] : '=';
    out += i + 2 < data.size() ? kAlphabet[group & 63] : '=';
  }
  return out;
}

}  // namespace

void WriteFile(const std::filesystem::path& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
}

std::string PemArmor(const Bytes& der) {
  const std::string body = Base64(der);
  std::string out = "-----BEGIN CERTIFICATE-----\n";
  for (size_t i = 0; i < body.size(); i += 64) out += body.substr(i, 64) + "\n";
  return out + "-----END CERTIFICATE-----\n";
}

Bytes AttackFixture() {
  CertSpec spec = BaseLeaf();
  spec.SetExtension(oid::kKeyUsage, KeyUsage({ku::kKeyCertSign}));
  return spec.Build();
}

Manifest WriteCorpus(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Manifest manifest;
  auto clean = [&](const std::string& name, const Bytes& der, bool pem) {
    WriteFile(dir / name, pem ? FromString(PemArmor(der)) : der);
    ++manifest.clean;
  };
  auto flawed = [&](const std::string& name, const Bytes& der,
                    x509strict::Code code) {
    WriteFile(dir / name, der);
    manifest.planted[(dir / name).string()] = code;
  };

  for (int i = 0; i < 4; ++i) {
    CertSpec spec = BaseLeaf();
    spec.serial = Int(1000 + i);
    spec.SetExtension(
        oid::kSubjectAltName,
        SubjectAltNameDns({"host" + std::to_string(i) + ".example.com"}));
    clean("leaf" + std::to_string(i) + (i % 2 ? ".pem" : ".der"), spec.Build(),
          i % 2 == 1);
  }
  clean("ca.pem", SelfSignedCa().Build(), true);
  {
    CertSpec spec = BaseLeaf();
    spec.spki = EcSpki();
    spec.signature = EcdsaSha256Alg();
    spec.signature_algorithm = EcdsaSha256Alg();
    spec.signature_value = BitString(
        Sequence({IntBytes(FromHex("00c1")), IntBytes(FromHex("05"))}));
    spec.SetExtension(oid::kKeyUsage, KeyUsage({ku::kDigitalSignature}));
    clean("ec.der", spec.Build(), false);
  }
  {
    CertSpec spec = SelfSignedCa();
    spec.serial = Int(77);
    clean("ca2.der", spec.Build(), false);
  }

  flawed("attack.der", AttackFixture(),
         x509strict::Code::KEY_CERT_SIGN_WITHOUT_BASIC_CONSTRAINTS);
  {
    CertSpec spec = BaseLeaf();
    spec.AddExtension(oid::kSubjectKeyId, SubjectKeyId(KeyId(0x41)));
    flawed("duplicate.der", spec.Build(),
           x509strict::Code::DUPLICATED_EXTENSION);
  }
  {
    CertSpec spec = BaseLeaf();
    spec.signature_algorithm = AlgId("1.2.840.113549.1.1.12", Null());
    flawed("mismatch.der", spec.Build(),
           x509strict::Code::SIGNATURE_ALGORITHM_MISMATCH);
  }
  return manifest;
}

}  // namespace x509test
