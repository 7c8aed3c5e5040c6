// Copyright 2026 The rdfmsg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdfmsg {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An IRI failed validation (empty, relative, or contains forbidden bytes).
class InvalidIriError : public Error {
 public:
  using Error::Error;
};

/// A blank node label violates the BLANK_NODE_LABEL lexical rules.
class InvalidLabelError : public Error {
 public:
  using Error::Error;
};

/// A literal violates the language-tag/datatype coupling rules.
class InvalidLiteralError : public Error {
 public:
  using Error::Error;
};

/// Input blank nodes carry two different pre-existing message scopes.
class MixedScopeError : public Error {
 public:
  using Error::Error;
};

/// Skolemization base is not an absolute IRI.
class InvalidBaseError : public Error {
 public:
  using Error::Error;
};

/// A byte sink failed while serializing.
class SinkError : public Error {
 public:
  using Error::Error;
};

/// Generic file I/O failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Log creation target already exists.
class AlreadyExistsError : public Error {
 public:
  using Error::Error;
};

/// Log open target does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// The sidecar index disagrees with the data file or is malformed.
class IndexCorruptError : public Error {
 public:
  using Error::Error;
};

/// Sequence number outside the log's range.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Two quads match the ordering predicate with distinct instants.
class AmbiguousTimestampError : public Error {
 public:
  using Error::Error;
};

/// An xsd:dateTime lexical form does not parse.
class BadDatetimeError : public Error {
 public:
  using Error::Error;
};

/// A merge input stream violated its own chronology mid-merge.
class UnorderedInputError : public Error {
 public:
  using Error::Error;
};

enum class SyntaxErrorKind {
  UnexpectedToken,
  BadIri,
  BadLiteral,
  VersionMissing,
  VersionUnsupported,
  PredicateBlankNode,
};

inline const char* to_string(SyntaxErrorKind kind) {
  switch (kind) {
    case SyntaxErrorKind::UnexpectedToken: return "UnexpectedToken";
    case SyntaxErrorKind::BadIri: return "BadIri";
    case SyntaxErrorKind::BadLiteral: return "BadLiteral";
    case SyntaxErrorKind::VersionMissing: return "VersionMissing";
    case SyntaxErrorKind::VersionUnsupported: return "VersionUnsupported";
    case SyntaxErrorKind::PredicateBlankNode: return "PredicateBlankNode";
  }
  return "?";
}

/// Parse error. Line and column are 1-based; offset is the byte offset of
/// the offending token start within the whole input.
class SyntaxError : public Error {
 public:
  SyntaxError(SyntaxErrorKind kind, std::string text, uint32_t line,
              uint32_t column, uint64_t offset)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              std::string(to_string(kind)) + ": " + text),
        kind_(kind),
        text_(std::move(text)),
        line_(line),
        column_(column),
        offset_(offset) {}

  SyntaxErrorKind kind() const { return kind_; }
  const std::string& text() const { return text_; }
  uint32_t line() const { return line_; }
  uint32_t column() const { return column_; }
  uint64_t offset() const { return offset_; }

 private:
  SyntaxErrorKind kind_;
  std::string text_;
  uint32_t line_;
  uint32_t column_;
  uint64_t offset_;
};

}  // namespace rdfmsg
