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

// Streaming vocabulary shared by the serialization formats: the incremental
// parser event types and a byte-counting output sink.

#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <variant>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/message.hpp"

namespace rdfmsg {

/// The version token this library reads and writes.
inline constexpr std::string_view kMessagesVersion = "1.2-messages";

/// Half-open byte range [start, end) within the whole input document.
struct ByteSpan {
  uint64_t start = 0;
  uint64_t end = 0;

  friend bool operator==(const ByteSpan& a, const ByteSpan& b) {
    return a.start == b.start && a.end == b.end;
  }
};

/// A complete message plus the input bytes it was parsed from.  Slicing the
/// span out of the original document and parsing it alone (with the
/// document's prefixes and base) reproduces an isomorphic message.
struct MessageReady {
  Message message;
  ByteSpan span;
};

/// The buffered input ends mid-statement; feed more bytes or call finish().
struct NeedMoreInput {};

/// finish() consumed everything; the parser is done.
struct EndOfLog {};

using ParserEvent = std::variant<MessageReady, NeedMoreInput, EndOfLog>;

namespace detail {

class CountingSink {
 public:
  explicit CountingSink(std::ostream& out) : out_(out) {}

  void write(std::string_view s) {
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!out_) throw SinkError("byte sink failed while writing");
    count_ += s.size();
  }
  uint64_t count() const { return count_; }

 private:
  std::ostream& out_;
  uint64_t count_ = 0;
};

}  // namespace detail

}  // namespace rdfmsg
