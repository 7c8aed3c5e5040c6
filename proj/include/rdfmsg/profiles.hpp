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

// Message profiles: a small declaration of which predicate carries a
// stream's chronological order (and optionally which carries its version
// order), plus the operations built on it — extracting an instant from a
// message, checking that a stream is monotone, and merging several ordered
// streams into one.
//
// Messages without a timestamp are first-class citizens throughout: empty
// keep-alives can never carry one, so every operation here carries them
// along by stream position instead of rejecting them.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdfmsg/datetime.hpp"
#include "rdfmsg/errors.hpp"
#include "rdfmsg/message.hpp"
#include "rdfmsg/term.hpp"
#include "rdfmsg/text.hpp"

namespace rdfmsg {

/// Which quads extract_instant may look at.
enum class GraphScope {
  DefaultGraphOnly,  ///< ordering metadata lives in the default graph
  AllGraphs,
};

/// Which of the profile's two orderings an operation should use.
enum class OrderKey { Chronology, Version };

struct Profile {
  Iri chronology_predicate;
  std::optional<Iri> version_predicate;
  GraphScope graph_scope = GraphScope::DefaultGraphOnly;
};

/// Parses a profile configuration: plain text lines `chronology=<IRI>`,
/// optional `version=<IRI>`, optional `scope=default|all`.  Blank lines and
/// `#` comments are ignored.  Throws Error on malformed or missing keys and
/// InvalidIriError on bad predicate IRIs.
inline Profile parse_profile(std::string_view text) {
  std::optional<Iri> chronology;
  std::optional<Iri> version;
  GraphScope scope = GraphScope::DefaultGraphOnly;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error("profile line is not key=value: '" + std::string(line) +
                  "'");
    }
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '\t'))
        v.remove_prefix(1);
      while (!v.empty() && (v.back() == ' ' || v.back() == '\t'))
        v.remove_suffix(1);
      return v;
    };
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "chronology") {
      chronology = Iri(std::string(value));
    } else if (key == "version") {
      version = Iri(std::string(value));
    } else if (key == "scope") {
      if (value == "default") {
        scope = GraphScope::DefaultGraphOnly;
      } else if (value == "all") {
        scope = GraphScope::AllGraphs;
      } else {
        throw Error("profile scope must be 'default' or 'all', got '" +
                    std::string(value) + "'");
      }
    } else {
      throw Error("unknown profile key '" + std::string(key) + "'");
    }
  }
  if (!chronology) throw Error("profile must declare chronology=<IRI>");
  Profile p{std::move(*chronology), std::move(version), scope};
  return p;
}

/// Finds the message's instant under the selected ordering: the value of the
/// first quad in scope whose predicate matches and whose object is an
/// xsd:dateTime literal.  Messages without such a quad (heartbeats, plain
/// data) yield nothing.  Two matching quads with distinct timeline values
/// make the message's position ambiguous and are an error; repeating the
/// same value (even spelled differently) is fine.
inline std::optional<Instant> extract_instant(
    const Message& m, const Profile& p,
    OrderKey which = OrderKey::Chronology) {
  const Iri* predicate = nullptr;
  if (which == OrderKey::Chronology) {
    predicate = &p.chronology_predicate;
  } else if (p.version_predicate) {
    predicate = &*p.version_predicate;
  } else {
    return std::nullopt;  // no version ordering declared
  }

  std::optional<Instant> found;
  for (const Quad& q : m.quads()) {
    if (p.graph_scope == GraphScope::DefaultGraphOnly &&
        !is_default_graph(q.graph)) {
      continue;
    }
    if (q.predicate != *predicate) continue;
    const Literal* lit = std::get_if<Literal>(&q.object);
    if (lit == nullptr || lit->datatype() != xsd::date_time_type()) continue;
    Instant instant = parse_datetime(lit->lexical());
    if (found && *found != instant) {
      throw AmbiguousTimestampError(
          "two quads give distinct instants for <" + predicate->str() +
          ">: \"" + found->lexical + "\" and \"" + instant.lexical + "\"");
    }
    if (!found) found = std::move(instant);
  }
  return found;
}

/// One out-of-order adjacency: the message at later_seq carries an instant
/// strictly before the one at earlier_seq.
struct OrderViolation {
  uint64_t earlier_seq = 0;
  uint64_t later_seq = 0;
  Instant earlier;
  Instant later;
};

/// Streaming chronology check.  Feed messages in stream order; every
/// adjacent pair of instant-bearing messages where the later instant is
/// strictly earlier is recorded.  Messages without instants pass through
/// transparently.  The latest instant always becomes the new reference, so
/// one stray early message yields one violation, not a cascade.
class OrderChecker {
 public:
  explicit OrderChecker(Profile profile, OrderKey which = OrderKey::Chronology)
      : profile_(std::move(profile)), which_(which) {}

  void observe(uint64_t seq, const Message& m) {
    std::optional<Instant> instant;
    try {
      instant = extract_instant(m, profile_, which_);
    } catch (const AmbiguousTimestampError& e) {
      throw AmbiguousTimestampError("message " + std::to_string(seq) + ": " +
                                    e.what());
    } catch (const BadDatetimeError& e) {
      throw BadDatetimeError("message " + std::to_string(seq) + ": " +
                             e.what());
    }
    if (!instant) return;
    if (last_ && *instant < last_->second) {
      violations_.push_back(
          {last_->first, seq, last_->second, *instant});
    }
    last_ = {seq, std::move(*instant)};
  }

  const std::vector<OrderViolation>& violations() const { return violations_; }
  bool ok() const { return violations_.empty(); }

 private:
  Profile profile_;
  OrderKey which_;
  std::optional<std::pair<uint64_t, Instant>> last_;
  std::vector<OrderViolation> violations_;
};

/// Checks a whole stream at once; sequence numbers are the vector indices.
inline std::vector<OrderViolation> check_order(
    const std::vector<Message>& messages, const Profile& p,
    OrderKey which = OrderKey::Chronology) {
  OrderChecker checker(p, which);
  for (size_t i = 0; i < messages.size(); ++i) {
    checker.observe(i, messages[i]);
  }
  return checker.violations();
}

/// Pull source for merge inputs: returns messages in stream order, then
/// nothing.
using MessagePull = std::function<std::optional<Message>()>;

/// K-way merge of individually ordered streams into one stream ordered by
/// instant (nondecreasing).  Ties go to the lower input index, then to
/// within-stream order.  A message without an instant rides with its
/// within-stream predecessor: it is emitted immediately after it, before any
/// other stream gets a turn.  Messages before the first instant-bearing one
/// of a stream have no predecessor and are emitted ahead of all timed ones.
///
/// Pull-based and single-owner; memory is bounded by the largest run of
/// timestamp-less messages plus one lookahead per stream.
class ChronologyMerge {
 public:
  ChronologyMerge(std::vector<MessagePull> sources, Profile profile)
      : profile_(std::move(profile)) {
    streams_.reserve(sources.size());
    for (MessagePull& pull : sources) {
      Stream stream;
      stream.pull = std::move(pull);
      streams_.push_back(std::move(stream));
    }
    groups_.resize(streams_.size());
  }

  /// Next message of the merged stream, or nothing when all inputs are
  /// exhausted.
  std::optional<Message> next() {
    if (emit_at_ < emitting_.size()) return take();

    // Refill: every live stream keeps one whole group (an instant-bearing
    // head plus its timestamp-less riders) as its merge candidate.
    size_t best = streams_.size();
    for (size_t k = 0; k < streams_.size(); ++k) {
      if (!groups_[k]) groups_[k] = next_group(k);
      const std::optional<Group>& g = groups_[k];
      if (!g->exists) continue;
      if (best == streams_.size()) {
        best = k;
        continue;
      }
      const Group& champion = *groups_[best];
      // Headless groups (leading timestamp-less messages) sort first.
      bool earlier;
      if (!g->instant || !champion.instant) {
        earlier = !g->instant && champion.instant.has_value();
      } else {
        earlier = *g->instant < *champion.instant;
      }
      if (earlier) best = k;
    }
    if (best == streams_.size()) return std::nullopt;

    emitting_ = std::move(groups_[best]->members);
    emit_at_ = 0;
    groups_[best].reset();
    if (emitting_.empty()) return next();  // exhausted stream; keep going
    return take();
  }

 private:
  struct Stream {
    MessagePull pull;
    bool pull_done = false;
    std::optional<Message> lookahead;    // head of the stream's next group
    std::optional<Instant> lookahead_instant;
    std::optional<Instant> last_instant;  // monotonicity guard
    uint64_t position = 0;                // messages pulled, for errors
    bool started = false;
  };

  /// A merge candidate.  exists=false marks a permanently exhausted stream
  /// (distinct from a group with no members, which cannot occur).
  struct Group {
    bool exists = false;
    std::optional<Instant> instant;
    std::vector<Message> members;
  };

  Message take() {
    Message m = std::move(emitting_[emit_at_++]);
    if (emit_at_ == emitting_.size()) {
      emitting_.clear();
      emit_at_ = 0;
    }
    return m;
  }

  std::optional<Instant> instant_of(size_t k, uint64_t position,
                                    const Message& m) {
    try {
      return extract_instant(m, profile_);
    } catch (const AmbiguousTimestampError& e) {
      throw AmbiguousTimestampError("stream " + std::to_string(k) +
                                    " message " + std::to_string(position) +
                                    ": " + e.what());
    } catch (const BadDatetimeError& e) {
      throw BadDatetimeError("stream " + std::to_string(k) + " message " +
                             std::to_string(position) + ": " + e.what());
    }
  }

  Group next_group(size_t k) {
    Stream& s = streams_[k];
    Group g;
    if (s.started && !s.lookahead && s.pull_done) return g;  // exhausted

    g.exists = true;
    if (s.lookahead) {
      g.instant = std::move(s.lookahead_instant);
      g.members.push_back(std::move(*s.lookahead));
      s.lookahead.reset();
      s.lookahead_instant.reset();
    }
    // Collect riders until the next instant-bearing message (the following
    // group's head) or the end of the stream.
    while (!s.pull_done) {
      std::optional<Message> m = s.pull();
      if (!m) {
        s.pull_done = true;
        break;
      }
      uint64_t position = s.position++;
      std::optional<Instant> instant = instant_of(k, position, *m);
      if (instant) {
        if (s.last_instant && *instant < *s.last_instant) {
          throw UnorderedInputError(
              "stream " + std::to_string(k) + " message " +
              std::to_string(position) + " carries \"" + instant->lexical +
              "\", earlier than \"" + s.last_instant->lexical +
              "\" before it");
        }
        s.last_instant = instant;
        s.lookahead = std::move(m);
        s.lookahead_instant = std::move(instant);
        break;
      }
      g.members.push_back(std::move(*m));
    }

    if (!s.started) {
      s.started = true;
      if (g.members.empty()) {
        // The stream opens with an instant-bearing message: no headless
        // leading group to emit, so the first real group starts here.
        return s.lookahead || !s.pull_done ? next_group(k) : Group{};
      }
    }
    if (g.members.empty()) g.exists = false;  // stream ended exactly here
    return g;
  }

  Profile profile_;
  std::vector<Stream> streams_;
  std::vector<std::optional<Group>> groups_;
  std::vector<Message> emitting_;
  size_t emit_at_ = 0;
};

/// Merges in-memory streams; see ChronologyMerge for the ordering rules.
inline std::vector<Message> merge_by_chronology(
    std::vector<std::vector<Message>> streams, const Profile& p) {
  std::vector<MessagePull> sources;
  sources.reserve(streams.size());
  for (std::vector<Message>& stream : streams) {
    auto shared = std::make_shared<std::vector<Message>>(std::move(stream));
    auto at = std::make_shared<size_t>(0);
    sources.push_back([shared, at]() -> std::optional<Message> {
      if (*at >= shared->size()) return std::nullopt;
      return std::move((*shared)[(*at)++]);
    });
  }
  ChronologyMerge merge(std::move(sources), p);
  std::vector<Message> out;
  while (std::optional<Message> m = merge.next()) {
    out.push_back(std::move(*m));
  }
  return out;
}

}  // namespace rdfmsg
