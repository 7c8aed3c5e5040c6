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

// The Message type plus the scope-aware operations on it: construction,
// skolemization and explicit union.

#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/term.hpp"

namespace rdfmsg {

namespace detail {

inline ScopeId fresh_scope() {
  static std::atomic<uint64_t> counter{0};
  return ScopeId{counter.fetch_add(1, std::memory_order_relaxed) + 1};
}

// Applies fn to every blank node position of a quad. fn may substitute an
// IRI (skolemization) or another blank node (rescoping/relabeling).
inline Quad map_blanks(const Quad& q,
                       const std::function<SubjectName(const BlankNode&)>& fn) {
  SubjectName subject = q.subject;
  if (auto* b = std::get_if<BlankNode>(&subject)) subject = fn(*b);
  Term object = q.object;
  if (auto* b = std::get_if<BlankNode>(&object)) {
    SubjectName mapped = fn(*b);
    object = to_term(mapped);
  }
  GraphName graph = q.graph;
  if (auto* b = std::get_if<BlankNode>(&graph)) {
    SubjectName mapped = fn(*b);
    if (auto* iri = std::get_if<Iri>(&mapped)) {
      graph = *iri;
    } else {
      graph = std::get<BlankNode>(mapped);
    }
  }
  return Quad(std::move(subject), q.predicate, std::move(object),
              std::move(graph));
}

inline void for_each_blank(const Quad& q,
                           const std::function<void(const BlankNode&)>& fn) {
  if (auto* b = std::get_if<BlankNode>(&q.subject)) fn(*b);
  if (auto* b = std::get_if<BlankNode>(&q.object)) fn(*b);
  if (auto* b = std::get_if<BlankNode>(&q.graph)) fn(*b);
}

}  // namespace detail

/// An immutable, possibly empty, duplicate-free ordered collection of quads:
/// one communicative act. Owns the scope of every blank node it contains.
/// Cheap to copy and safe to share across threads once constructed.
class Message {
 public:
  /// Empty message (a heartbeat) with its own fresh scope.
  Message() : Message(std::vector<Quad>{}) {}

  /// Builds a message from quads: assigns a fresh scope to every blank node
  /// and drops duplicate quads, keeping first-occurrence order. Input blank
  /// nodes must be unscoped or carry one uniform pre-existing scope.
  static Message from_quads(std::vector<Quad> quads) {
    ScopeId seen{};
    for (const Quad& q : quads) {
      detail::for_each_blank(q, [&](const BlankNode& b) {
        if (b.scope().unscoped()) return;
        if (seen.unscoped()) {
          seen = b.scope();
        } else if (seen != b.scope()) {
          throw MixedScopeError(
              "input blank nodes carry two different message scopes");
        }
      });
    }
    return Message(std::move(quads));
  }

  const std::vector<Quad>& quads() const { return impl_->quads; }
  ScopeId scope() const { return impl_->scope; }
  size_t size() const { return impl_->quads.size(); }
  bool empty() const { return impl_->quads.empty(); }

  /// Distinct blank node labels, in first-occurrence order.
  std::vector<std::string> blank_labels() const {
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const Quad& q : impl_->quads) {
      detail::for_each_blank(q, [&](const BlankNode& b) {
        if (seen.insert(b.label()).second) labels.push_back(b.label());
      });
    }
    return labels;
  }

 private:
  struct Impl {
    std::vector<Quad> quads;
    ScopeId scope;
  };

  explicit Message(std::vector<Quad> input) {
    ScopeId scope = detail::fresh_scope();
    std::vector<Quad> quads;
    quads.reserve(input.size());
    std::unordered_set<size_t> hashes;
    std::vector<Quad> kept;
    for (Quad& q : input) {
      Quad scoped = detail::map_blanks(q, [&](const BlankNode& b) {
        return SubjectName(b.with_scope(scope));
      });
      size_t h = QuadHash{}(scoped);
      bool duplicate = false;
      if (hashes.count(h)) {
        for (const Quad& k : kept) {
          if (k == scoped) {
            duplicate = true;
            break;
          }
        }
      }
      if (!duplicate) {
        hashes.insert(h);
        kept.push_back(std::move(scoped));
      }
    }
    impl_ = std::make_shared<const Impl>(Impl{std::move(kept), scope});
  }

  std::shared_ptr<const Impl> impl_;
};

/// Builds a Message from a quad sequence (fresh scope, duplicates removed,
/// first-occurrence order kept). Throws MixedScopeError if the input blank
/// nodes carry two different pre-existing scopes.
inline Message new_message(std::vector<Quad> quads) {
  return Message::from_quads(std::move(quads));
}

/// Replaces every blank node of `m` by the IRI
/// `<base>/.well-known/genid/<message_id>/<label>`. The result has a fresh
/// scope, zero blank nodes, and the same quads in the same order.
inline Message skolemize(const Message& m, std::string_view base,
                         const std::string& message_id) {
  std::string root(base);
  if (!text::has_scheme(root) || !text::iri_body_ok(root))
    throw InvalidBaseError("skolem base must be an absolute IRI");
  if (message_id.empty())
    throw InvalidBaseError("skolem message id must be non-empty");
  for (char c : message_id) {
    if (!text::is_alpha(c) && !text::is_digit(c) && c != '-' && c != '.' &&
        c != '_' && c != '~')
      throw InvalidBaseError("skolem message id must be URL-path-safe: " +
                             message_id);
  }
  if (root.back() == '/') root.pop_back();
  std::string prefix = root + "/.well-known/genid/" + message_id + "/";
  std::vector<Quad> out;
  out.reserve(m.size());
  for (const Quad& q : m.quads()) {
    out.push_back(detail::map_blanks(q, [&](const BlankNode& b) {
      return SubjectName(Iri(prefix + b.label()));
    }));
  }
  return new_message(std::move(out));
}

/// Explicit, opt-in merge of messages into one. Quads are concatenated in
/// input order and deduplicated; blank nodes from different inputs are kept
/// apart: when a label was already taken by an earlier input, the node from
/// input k is relabeled `<label>_m<k>` (repeated until free).
inline Message union_messages(const std::vector<Message>& messages) {
  std::set<std::string> taken;
  std::vector<Quad> out;
  for (size_t k = 0; k < messages.size(); ++k) {
    const Message& m = messages[k];
    // One rename table per input message.
    std::map<std::string, std::string> rename;
    for (const std::string& label : m.blank_labels()) {
      std::string candidate = label;
      while (taken.count(candidate)) candidate += "_m" + std::to_string(k);
      taken.insert(candidate);
      rename[label] = candidate;
    }
    for (const Quad& q : m.quads()) {
      out.push_back(detail::map_blanks(q, [&](const BlankNode& b) {
        return SubjectName(BlankNode(rename.at(b.label())));
      }));
    }
  }
  return new_message(std::move(out));
}

}  // namespace rdfmsg
