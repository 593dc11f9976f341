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

#ifndef GLYPHBREAK_ERROR_HPP_
#define GLYPHBREAK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glyphbreak {

// Base of every error raised by the library. Callers that only need a
// diagnostic line can catch this; the harness inspects concrete types.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class MalformedLine : public Error {
 public:
  explicit MalformedLine(std::size_t line_no, const std::string& detail = {})
      : Error("malformed JSONL line " + std::to_string(line_no) +
              (detail.empty() ? "" : ": " + detail)),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class NotEnoughSamples : public Error {
 public:
  NotEnoughSamples(std::size_t requested, std::size_t available)
      : Error("requested " + std::to_string(requested) +
              " samples but corpus has " + std::to_string(available)),
        requested_(requested),
        available_(available) {}
  std::size_t requested() const { return requested_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t requested_;
  std::size_t available_;
};

// Raised when a text cannot meet a homoglyph replacement quota. The harness
// treats this as "discard the sample".
class InsufficientTargets : public Error {
 public:
  InsufficientTargets(std::size_t eligible, std::size_t quota)
      : Error("only " + std::to_string(eligible) +
              " eligible characters for a quota of " + std::to_string(quota)),
        eligible_(eligible),
        quota_(quota) {}
  std::size_t eligible() const { return eligible_; }
  std::size_t quota() const { return quota_; }

 private:
  std::size_t eligible_;
  std::size_t quota_;
};

class InsufficientEligibleWords : public Error {
 public:
  InsufficientEligibleWords(std::size_t eligible, std::size_t quota)
      : Error("only " + std::to_string(eligible) +
              " misspellable words for a quota of " + std::to_string(quota)),
        eligible_(eligible),
        quota_(quota) {}
  std::size_t eligible() const { return eligible_; }
  std::size_t quota() const { return quota_; }

 private:
  std::size_t eligible_;
  std::size_t quota_;
};

class MalformedEntry : public Error {
 public:
  explicit MalformedEntry(std::size_t line_no)
      : Error("malformed misspelling entry on line " +
              std::to_string(line_no)),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

class NoTokens : public Error {
 public:
  NoTokens() : Error("corpus tokenizes to zero tokens") {}
};

class DegenerateCalibration : public Error {
 public:
  DegenerateCalibration()
      : Error("calibration features are identical across both corpora") {}
};

class TransportError : public Error {
 public:
  TransportError(int status, const std::string& detail)
      : Error("transport error (status " + std::to_string(status) +
              "): " + detail),
        status_(status) {}
  // HTTP status, or 0 when no response was received.
  int status() const { return status_; }

 private:
  int status_;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class ChecksumMismatch : public Error {
 public:
  ChecksumMismatch(const std::string& expected, const std::string& echoed)
      : Error("detector read different bytes: sent sha256 " + expected +
              ", echoed " + echoed) {}
};

class EmptyExperiment : public Error {
 public:
  explicit EmptyExperiment(const std::string& name)
      : Error("experiment '" + name + "' evaluated zero samples") {}
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace glyphbreak

#endif  // GLYPHBREAK_ERROR_HPP_
