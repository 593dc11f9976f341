// Copyright 2026 The glyphbreak Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP client for detectors served behind the /detect wire protocol:
//
//   POST <base>/detect   {"text": "..."}
//   200                  {"prob_machine": 0.97, "echo_sha256": "<hex>"}
//
// echo_sha256 is the SHA-256 of the exact UTF-8 bytes the service received;
// the client rejects verdicts computed on different bytes, which is how
// Unicode normalization in transit shows up.

#ifndef GLYPHBREAK_REMOTE_HPP_
#define GLYPHBREAK_REMOTE_HPP_

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <string>
#include <string_view>

#include "httplib.h"
#include "json.hpp"

#include "glyphbreak/detector.hpp"
#include "glyphbreak/error.hpp"

namespace glyphbreak {

inline std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

struct Endpoint {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;              // "/detect" or "<prefix>/detect"
};

// Accepts "http://host[:port][/prefix]"; "/detect" is appended unless the
// URL already ends with it.
inline Endpoint ParseEndpoint(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme) {
    throw InvalidArgument("detector URL must start with http://: " +
                          std::string(url));
  }
  const auto slash = url.find('/', kScheme.size());
  Endpoint endpoint;
  endpoint.scheme_host_port = std::string(url.substr(0, slash));
  if (endpoint.scheme_host_port.size() == kScheme.size()) {
    throw InvalidArgument("detector URL has no host: " + std::string(url));
  }
  std::string path =
      slash == std::string_view::npos ? "" : std::string(url.substr(slash));
  while (!path.empty() && path.back() == '/') path.pop_back();
  constexpr std::string_view kDetect = "/detect";
  if (path.size() < kDetect.size() ||
      path.compare(path.size() - kDetect.size(), kDetect.size(), kDetect) != 0) {
    path += kDetect;
  }
  endpoint.path = std::move(path);
  return endpoint;
}

// Parses a success body and checks the echoed checksum against sent_text.
inline DetectorVerdict ParseDetectResponse(std::string_view body,
                                           std::string_view sent_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("detector response is not JSON: ") +
                        e.what());
  }
  if (!j.is_object()) throw ProtocolError("detector response is not an object");
  const auto prob = j.find("prob_machine");
  const auto echo = j.find("echo_sha256");
  if (prob == j.end() || !prob->is_number()) {
    throw ProtocolError("detector response lacks numeric prob_machine");
  }
  if (echo == j.end() || !echo->is_string()) {
    throw ProtocolError("detector response lacks echo_sha256");
  }
  const double p = prob->get<double>();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ProtocolError("prob_machine outside [0, 1]");
  }
  std::string echoed = echo->get<std::string>();
  std::transform(echoed.begin(), echoed.end(), echoed.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  const std::string expected = Sha256Hex(sent_text);
  if (echoed != expected) throw ChecksumMismatch(expected, echoed);
  return MakeVerdict(p);
}

class RemoteDetector : public Detector {
 public:
  explicit RemoteDetector(std::string url,
                          std::chrono::seconds timeout = std::chrono::seconds(60))
      : url_(std::move(url)), endpoint_(ParseEndpoint(url_)), timeout_(timeout) {}

  // One connection per call; safe for concurrent use.
  DetectorVerdict Classify(std::string_view text) const override {
    httplib::Client client(endpoint_.scheme_host_port);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    std::string payload;
    try {
      payload = nlohmann::json{{"text", std::string(text)}}.dump();
    } catch (const nlohmann::json::type_error& e) {
      throw InvalidArgument(std::string("text is not valid UTF-8: ") +
                            e.what());
    }
    const auto response =
        client.Post(endpoint_.path, payload, "application/json");
    if (!response) {
      throw TransportError(0, httplib::to_string(response.error()));
    }
    if (response->status != 200) {
      throw TransportError(response->status, response->body);
    }
    return ParseDetectResponse(response->body, text);
  }

  nlohmann::json Describe() const override {
    return {{"type", "remote"}, {"url", url_}};
  }

 private:
  std::string url_;
  Endpoint endpoint_;
  std::chrono::seconds timeout_;
};

}  // namespace glyphbreak

#endif  // GLYPHBREAK_REMOTE_HPP_
