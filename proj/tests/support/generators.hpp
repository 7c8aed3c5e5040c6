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

// Deterministic random generators for property tests: messages, message
// sequences, and message-log documents with varied surface syntax.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rdfmsg/message.hpp"
#include "rdfmsg/term.hpp"

namespace gen {

using namespace rdfmsg;

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // Uniform in [0, n).
  size_t below(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(eng_);
  }
  // Uniform in [lo, hi].
  int range(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p;
  }
  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[below(pool.size())];
  }

 private:
  std::mt19937_64 eng_;
};

inline Iri random_iri(Rng& rng) {
  static const std::vector<std::string> pool = {
      "http://example.org/s", "http://example.org/temp",
      "http://example.org/a/b", "http://example.org/x%20y",
      "https://data.example.com/obs#frag", "urn:example:42",
      "http://example.org/caf\xc3\xa9",
  };
  std::string base = rng.pick(pool);
  if (rng.chance(0.5)) base += std::to_string(rng.below(8));
  return Iri(base);
}

inline Iri random_predicate(Rng& rng) {
  static const std::vector<std::string> pool = {
      "http://example.org/p", "http://example.org/q",
      "http://www.w3.org/ns/sosa/hasSimpleResult",
      "http://www.w3.org/ns/prov#generatedAtTime",
  };
  return Iri(rng.pick(pool));
}

inline BlankNode random_blank(Rng& rng, int max_blanks) {
  return BlankNode("b" + std::to_string(rng.below(max_blanks)));
}

inline Literal random_literal(Rng& rng) {
  switch (rng.below(7)) {
    case 0:
      return Literal::plain("hello world");
    case 1:
      return Literal::plain("line\nbreak \"quoted\" back\\slash\ttab");
    case 2:
      return Literal::lang("bonjour", "fr");
    case 3:
      return Literal::typed(std::to_string(rng.range(-99, 99)),
                            xsd::integer_type());
    case 4:
      return Literal::typed(std::to_string(rng.range(0, 99)) + "." +
                                std::to_string(rng.below(100)),
                            xsd::decimal_type());
    case 5:
      return Literal::typed("2026-05-12T18:2" + std::to_string(rng.below(10)) +
                                ":00Z",
                            xsd::date_time_type());
    default:
      return Literal::plain("caf\xc3\xa9 \xe2\x98\x95");
  }
}

inline Quad random_quad(Rng& rng, int max_blanks) {
  SubjectName subject = rng.chance(0.5)
                            ? SubjectName(random_blank(rng, max_blanks))
                            : SubjectName(random_iri(rng));
  Iri predicate = random_predicate(rng);
  Term object = [&]() -> Term {
    switch (rng.below(3)) {
      case 0: return random_iri(rng);
      case 1: return random_blank(rng, max_blanks);
      default: return random_literal(rng);
    }
  }();
  GraphName graph = DefaultGraph{};
  if (rng.chance(0.3)) {
    graph = random_iri(rng);
  } else if (rng.chance(0.2)) {
    graph = random_blank(rng, max_blanks);
  }
  return Quad(std::move(subject), std::move(predicate), std::move(object),
              std::move(graph));
}

inline Message random_message(Rng& rng, int max_quads = 6,
                              int max_blanks = 3) {
  std::vector<Quad> quads;
  int n = rng.range(0, max_quads);
  quads.reserve(n);
  for (int i = 0; i < n; ++i) quads.push_back(random_quad(rng, max_blanks));
  return new_message(std::move(quads));
}

inline std::vector<Message> random_messages(Rng& rng, int count,
                                            int max_quads = 6,
                                            int max_blanks = 3,
                                            double empty_share = 0.1) {
  std::vector<Message> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (rng.chance(empty_share)) {
      out.emplace_back();
    } else {
      out.push_back(random_message(rng, max_quads, max_blanks));
    }
  }
  return out;
}

}  // namespace gen
