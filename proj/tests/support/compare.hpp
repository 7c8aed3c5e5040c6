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

// Textual message comparison for tests.  Renders quads as canonical lines
// with blank node labels kept verbatim, so two parses of the same bytes
// compare equal (label-for-label) no matter how the input was chunked,
// while messages from different parses still differ in scope.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rdfmsg/message.hpp"
#include "rdfmsg/term.hpp"

namespace compare {

using namespace rdfmsg;

inline std::string quad_line(const Quad& q) {
  std::string line = to_nquads(q.subject);
  line += " " + to_nquads(q.predicate) + " " + to_nquads(q.object);
  if (const Iri* iri = std::get_if<Iri>(&q.graph)) {
    line += " " + to_nquads(*iri);
  } else if (const BlankNode* b = std::get_if<BlankNode>(&q.graph)) {
    line += " " + to_nquads(*b);
  }
  return line + " .";
}

/// The message's quads as text lines, in stored order.
inline std::vector<std::string> quad_lines(const Message& m) {
  std::vector<std::string> lines;
  lines.reserve(m.size());
  for (const Quad& q : m.quads()) lines.push_back(quad_line(q));
  return lines;
}

/// Label-exact, scope-insensitive equality of message sequences.
inline bool same_messages(const std::vector<Message>& a,
                          const std::vector<Message>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (quad_lines(a[i]) != quad_lines(b[i])) return false;
  }
  return true;
}

}  // namespace compare
