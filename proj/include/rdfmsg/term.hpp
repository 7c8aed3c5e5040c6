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

// Terms and quads: the atoms of every message. All types here are immutable
// values with structural equality. Blank nodes compare by label AND scope,
// which is what makes per-message blank node scoping enforceable.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/text.hpp"

namespace rdfmsg {

/// An absolute IRI.
class Iri {
 public:
  explicit Iri(std::string value) : value_(std::move(value)) {
    if (!text::iri_body_ok(value_))
      throw InvalidIriError("IRI is empty or contains whitespace/control: <" +
                            value_ + ">");
    if (!text::has_scheme(value_))
      throw InvalidIriError("IRI is not absolute: <" + value_ + ">");
  }

  const std::string& str() const { return value_; }

  friend bool operator==(const Iri& a, const Iri& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Iri& a, const Iri& b) { return !(a == b); }
  friend bool operator<(const Iri& a, const Iri& b) {
    return a.value_ < b.value_;
  }

 private:
  std::string value_;
};

/// Opaque message-scope token. Zero means "not yet owned by a message".
struct ScopeId {
  uint64_t value = 0;

  bool unscoped() const { return value == 0; }
  friend bool operator==(ScopeId a, ScopeId b) { return a.value == b.value; }
  friend bool operator!=(ScopeId a, ScopeId b) { return a.value != b.value; }
};

/// A blank node. Two blank nodes denote the same node iff label and scope
/// are both equal; identical labels in different messages are different
/// nodes.
class BlankNode {
 public:
  explicit BlankNode(std::string label, ScopeId scope = {})
      : label_(std::move(label)), scope_(scope) {
    if (!text::valid_blank_label(label_))
      throw InvalidLabelError("invalid blank node label: _:" + label_);
  }

  const std::string& label() const { return label_; }
  ScopeId scope() const { return scope_; }

  BlankNode with_scope(ScopeId scope) const {
    BlankNode copy = *this;
    copy.scope_ = scope;
    return copy;
  }

  friend bool operator==(const BlankNode& a, const BlankNode& b) {
    return a.label_ == b.label_ && a.scope_ == b.scope_;
  }
  friend bool operator!=(const BlankNode& a, const BlankNode& b) {
    return !(a == b);
  }

 private:
  std::string label_;
  ScopeId scope_;
};

namespace xsd {
inline const Iri& string_type() {
  static const Iri iri{"http://www.w3.org/2001/XMLSchema#string"};
  return iri;
}
inline const Iri& integer_type() {
  static const Iri iri{"http://www.w3.org/2001/XMLSchema#integer"};
  return iri;
}
inline const Iri& decimal_type() {
  static const Iri iri{"http://www.w3.org/2001/XMLSchema#decimal"};
  return iri;
}
inline const Iri& double_type() {
  static const Iri iri{"http://www.w3.org/2001/XMLSchema#double"};
  return iri;
}
inline const Iri& boolean_type() {
  static const Iri iri{"http://www.w3.org/2001/XMLSchema#boolean"};
  return iri;
}
inline const Iri& date_time_type() {
  static const Iri iri{"http://www.w3.org/2001/XMLSchema#dateTime"};
  return iri;
}
}  // namespace xsd

namespace rdf {
inline const Iri& lang_string_type() {
  static const Iri iri{
      "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"};
  return iri;
}
inline const Iri& type_predicate() {
  static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
  return iri;
}
inline const Iri& first() {
  static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#first"};
  return iri;
}
inline const Iri& rest() {
  static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#rest"};
  return iri;
}
inline const Iri& nil() {
  static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#nil"};
  return iri;
}
}  // namespace rdf

/// An RDF literal. The lexical form is kept exactly as read; no value-space
/// normalization ever happens ("22" and "22.0" stay distinct).
class Literal {
 public:
  static Literal plain(std::string lexical) {
    return Literal(std::move(lexical), xsd::string_type(), std::nullopt);
  }
  static Literal typed(std::string lexical, Iri datatype) {
    if (datatype == rdf::lang_string_type())
      throw InvalidLiteralError(
          "langString literal requires a language tag; use Literal::lang");
    return Literal(std::move(lexical), std::move(datatype), std::nullopt);
  }
  static Literal lang(std::string lexical, std::string tag) {
    if (!text::valid_lang_tag(tag))
      throw InvalidLiteralError("invalid language tag: @" + tag);
    return Literal(std::move(lexical), rdf::lang_string_type(),
                   std::move(tag));
  }

  const std::string& lexical() const { return lexical_; }
  const Iri& datatype() const { return datatype_; }
  const std::optional<std::string>& language() const { return language_; }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.lexical_ == b.lexical_ && a.datatype_ == b.datatype_ &&
           a.language_ == b.language_;
  }
  friend bool operator!=(const Literal& a, const Literal& b) {
    return !(a == b);
  }

 private:
  Literal(std::string lexical, Iri datatype, std::optional<std::string> lang)
      : lexical_(std::move(lexical)),
        datatype_(std::move(datatype)),
        language_(std::move(lang)) {}

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> language_;
};

struct DefaultGraph {
  friend bool operator==(DefaultGraph, DefaultGraph) { return true; }
  friend bool operator!=(DefaultGraph, DefaultGraph) { return false; }
};

using SubjectName = std::variant<Iri, BlankNode>;
using Term = std::variant<Iri, BlankNode, Literal>;
using GraphName = std::variant<DefaultGraph, Iri, BlankNode>;

inline Term to_term(const SubjectName& s) {
  return std::visit([](const auto& v) { return Term(v); }, s);
}

inline bool is_blank(const Term& t) {
  return std::holds_alternative<BlankNode>(t);
}
inline bool is_default_graph(const GraphName& g) {
  return std::holds_alternative<DefaultGraph>(g);
}

/// One RDF statement in a dataset. The type system already guarantees the
/// spec's positional constraints: subjects are never literals, predicates
/// are always IRIs.
struct Quad {
  SubjectName subject;
  Iri predicate;
  Term object;
  GraphName graph;

  Quad(SubjectName s, Iri p, Term o, GraphName g = DefaultGraph{})
      : subject(std::move(s)),
        predicate(std::move(p)),
        object(std::move(o)),
        graph(std::move(g)) {}

  friend bool operator==(const Quad& a, const Quad& b) {
    return a.subject == b.subject && a.predicate == b.predicate &&
           a.object == b.object && a.graph == b.graph;
  }
  friend bool operator!=(const Quad& a, const Quad& b) { return !(a == b); }
};

// --- canonical term text (N-Quads shaped, also used for hashing) ---

inline std::string to_nquads(const Iri& iri) {
  return "<" + text::escape_iri(iri.str()) + ">";
}

inline std::string to_nquads(const BlankNode& b) { return "_:" + b.label(); }

inline std::string to_nquads(const Literal& lit) {
  std::string out = "\"" + text::escape_string(lit.lexical()) + "\"";
  if (lit.language()) {
    out += "@" + *lit.language();
  } else if (lit.datatype() != xsd::string_type()) {
    out += "^^" + to_nquads(lit.datatype());
  }
  return out;
}

inline std::string to_nquads(const Term& t) {
  return std::visit([](const auto& v) { return to_nquads(v); }, t);
}

inline std::string to_nquads(const SubjectName& s) {
  return std::visit([](const auto& v) { return to_nquads(v); }, s);
}

// --- hashing ---

inline void hash_combine(size_t& seed, size_t h) {
  seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct TermHash {
  size_t operator()(const Iri& iri) const {
    return std::hash<std::string>{}(iri.str());
  }
  size_t operator()(const BlankNode& b) const {
    size_t h = std::hash<std::string>{}(b.label());
    hash_combine(h, std::hash<uint64_t>{}(b.scope().value));
    return h;
  }
  size_t operator()(const Literal& lit) const {
    size_t h = std::hash<std::string>{}(lit.lexical());
    hash_combine(h, std::hash<std::string>{}(lit.datatype().str()));
    if (lit.language()) hash_combine(h, std::hash<std::string>{}(*lit.language()));
    return h;
  }
  size_t operator()(const DefaultGraph&) const { return 0x5115; }

  template <typename... Ts>
  size_t operator()(const std::variant<Ts...>& v) const {
    size_t h = v.index();
    hash_combine(h, std::visit(*this, v));
    return h;
  }
};

struct QuadHash {
  size_t operator()(const Quad& q) const {
    TermHash th;
    size_t h = th(q.subject);
    hash_combine(h, th(q.predicate));
    hash_combine(h, th(q.object));
    hash_combine(h, th(q.graph));
    return h;
  }
};

}  // namespace rdfmsg
