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

// Per-message dataset isomorphism: exhaustive search over blank node
// bijections, pruned by per-node quad signatures. Messages are desk-scale
// communicative units, so correctness wins over asymptotics here.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "rdfmsg/message.hpp"
#include "rdfmsg/term.hpp"

namespace rdfmsg {

namespace detail {

// Quad rendered as text with each blank label passed through `rename`.
// Blank labels suffice as node identity inside one message.
inline std::string quad_text(
    const Quad& q, const std::map<std::string, std::string>& rename) {
  auto blank_text = [&](const BlankNode& b) {
    auto it = rename.find(b.label());
    return "_:" + (it == rename.end() ? b.label() : it->second);
  };
  std::string out;
  if (auto* b = std::get_if<BlankNode>(&q.subject)) {
    out += blank_text(*b);
  } else {
    out += to_nquads(std::get<Iri>(q.subject));
  }
  out += ' ';
  out += to_nquads(q.predicate);
  out += ' ';
  if (auto* b = std::get_if<BlankNode>(&q.object)) {
    out += blank_text(*b);
  } else {
    out += to_nquads(q.object);
  }
  out += ' ';
  if (auto* b = std::get_if<BlankNode>(&q.graph)) {
    out += blank_text(*b);
  } else if (auto* iri = std::get_if<Iri>(&q.graph)) {
    out += to_nquads(*iri);
  }
  return out;
}

// Quad template seen from one node: that node becomes a bullet, every other
// blank becomes a wildcard. Sorted multiset of these is the node signature.
inline std::string node_signature(const Message& m, const std::string& label) {
  std::vector<std::string> parts;
  for (const Quad& q : m.quads()) {
    bool touches = false;
    for_each_blank(q, [&](const BlankNode& b) {
      if (b.label() == label) touches = true;
    });
    if (!touches) continue;
    std::map<std::string, std::string> rename;
    for (const std::string& other : m.blank_labels())
      rename[other] = other == label ? "\x01" : "\x02";
    parts.push_back(quad_text(q, rename));
  }
  std::sort(parts.begin(), parts.end());
  std::string sig;
  for (const std::string& p : parts) {
    sig += p;
    sig += '\n';
  }
  return sig;
}

}  // namespace detail

/// True iff some bijection between the blank nodes of `a` and `b` makes the
/// quad sets equal, graph names included.
inline bool isomorphic(const Message& a, const Message& b) {
  if (a.size() != b.size()) return false;

  std::vector<std::string> a_labels = a.blank_labels();
  std::vector<std::string> b_labels = b.blank_labels();
  if (a_labels.size() != b_labels.size()) return false;

  // Ground quads must match exactly.
  std::unordered_set<std::string> a_ground, b_ground;
  std::vector<const Quad*> a_blank_quads, b_blank_quads;
  auto split = [](const Message& m, std::unordered_set<std::string>& ground,
                  std::vector<const Quad*>& blanks) {
    for (const Quad& q : m.quads()) {
      bool has_blank = false;
      detail::for_each_blank(q, [&](const BlankNode&) { has_blank = true; });
      if (has_blank) {
        blanks.push_back(&q);
      } else {
        ground.insert(detail::quad_text(q, {}));
      }
    }
  };
  split(a, a_ground, a_blank_quads);
  split(b, b_ground, b_blank_quads);
  if (a_ground != b_ground) return false;
  if (a_blank_quads.size() != b_blank_quads.size()) return false;
  if (a_labels.empty()) return true;

  // Signature pruning: a node can only map to nodes with an equal signature.
  std::map<std::string, std::string> a_sig, b_sig;
  for (const std::string& l : a_labels) a_sig[l] = detail::node_signature(a, l);
  for (const std::string& l : b_labels) b_sig[l] = detail::node_signature(b, l);

  std::vector<std::vector<std::string>> candidates(a_labels.size());
  for (size_t i = 0; i < a_labels.size(); ++i) {
    for (const std::string& bl : b_labels)
      if (a_sig[a_labels[i]] == b_sig[bl]) candidates[i].push_back(bl);
    if (candidates[i].empty()) return false;
  }

  // Try the most constrained nodes first.
  std::vector<size_t> order(a_labels.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return candidates[x].size() < candidates[y].size();
  });

  std::unordered_set<std::string> b_blank_texts;
  for (const Quad* q : b_blank_quads)
    b_blank_texts.insert(detail::quad_text(*q, {}));

  std::map<std::string, std::string> mapping;
  std::unordered_set<std::string> used;

  auto leaf_check = [&]() {
    for (const Quad* q : a_blank_quads)
      if (!b_blank_texts.count(detail::quad_text(*q, mapping))) return false;
    return true;
  };

  std::function<bool(size_t)> assign = [&](size_t depth) -> bool {
    if (depth == order.size()) return leaf_check();
    const std::string& al = a_labels[order[depth]];
    for (const std::string& bl : candidates[order[depth]]) {
      if (used.count(bl)) continue;
      mapping[al] = bl;
      used.insert(bl);
      if (assign(depth + 1)) return true;
      mapping.erase(al);
      used.erase(bl);
    }
    return false;
  };
  return assign(0);
}

}  // namespace rdfmsg
