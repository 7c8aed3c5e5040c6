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

// Acceptance gate: one self-contained check per core guarantee, each
// printing a single PASS/FAIL line with its wall-clock time.  Every check
// has a time budget; blowing the budget fails the check even if the
// assertions hold.  The process exit status is the number of failures.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "rdfmsg/rdfmsg.hpp"
#include "support/compare.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;
using namespace rdfmsg;

namespace {

// ---------------------------------------------------------------------------
// Harness

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool condition, const std::string& what) {
  if (!condition) throw CheckFailure(what);
}

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    auto tick = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = fs::temp_directory_path() /
            ("rdfmsg-acceptance-" + std::to_string(tick) + "-" +
             std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  expect(in.is_open(), "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::string pad6(size_t n) {
  std::string digits = std::to_string(n);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return digits;
}

Profile result_time_profile() {
  return Profile{Iri(fixtures::kSosa + "resultTime"), std::nullopt,
                 GraphScope::DefaultGraphOnly};
}

/// Render an instant counter as an xsd:dateTime lexical on 2026-05-12.
std::string clock_lexical(uint64_t seconds_past_noon) {
  uint64_t h = 12 + seconds_past_noon / 3600;
  uint64_t m = (seconds_past_noon / 60) % 60;
  uint64_t s = seconds_past_noon % 60;
  char buf[32];
  std::snprintf(buf, sizeof buf, "2026-05-12T%02u:%02u:%02uZ",
                static_cast<unsigned>(h), static_cast<unsigned>(m),
                static_cast<unsigned>(s));
  return buf;
}

bool term_is_blank(const Term& t) { return is_blank(t); }

size_t count_blank_nodes(const Message& m) {
  std::unordered_set<Term, TermHash> nodes;
  for (const Quad& q : m.quads()) {
    if (const auto* b = std::get_if<BlankNode>(&q.subject)) nodes.insert(*b);
    if (term_is_blank(q.object)) nodes.insert(q.object);
    if (const auto* b = std::get_if<BlankNode>(&q.graph)) nodes.insert(*b);
  }
  return nodes.size();
}

bool message_has_blank(const Message& m) {
  for (const Quad& q : m.quads()) {
    if (std::holds_alternative<BlankNode>(q.subject)) return true;
    if (term_is_blank(q.object)) return true;
    if (std::holds_alternative<BlankNode>(q.graph)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Checks

// The observation document: one message, one default-graph quad whose
// subject blank node also names the graph holding the other three quads.
void check_observation_fidelity() {
  std::vector<Message> msgs = parse_document(fixtures::observation_message_trig());
  expect(msgs.size() == 1, "expected exactly one message");
  const Message& m = msgs[0];
  expect(m.size() == 4, "expected 4 quads, got " + std::to_string(m.size()));

  const Quad* stamp = nullptr;
  size_t named = 0;
  for (const Quad& q : m.quads()) {
    if (is_default_graph(q.graph)) {
      expect(stamp == nullptr, "more than one default-graph quad");
      stamp = &q;
    } else {
      ++named;
    }
  }
  expect(stamp != nullptr, "no default-graph quad");
  expect(named == 3, "expected 3 named-graph quads");
  expect(stamp->predicate.str() == fixtures::kProv + "generatedAtTime",
         "default-graph predicate is not the generation timestamp");

  const auto* subject = std::get_if<BlankNode>(&stamp->subject);
  expect(subject != nullptr, "default-graph subject is not a blank node");
  for (const Quad& q : m.quads()) {
    if (is_default_graph(q.graph)) continue;
    const auto* graph = std::get_if<BlankNode>(&q.graph);
    expect(graph != nullptr, "named graph is not blank-node named");
    expect(*graph == *subject,
           "graph name and default-graph subject are different nodes");
  }
}

// The sensor log: three messages with quad counts [2, 0, 2], and the two
// readings' blank nodes stay distinct despite sharing the label b0.
void check_sensor_log_fidelity() {
  std::vector<Message> msgs = parse_document(fixtures::sensor_log_trig());
  expect(msgs.size() == 3, "expected 3 messages");
  expect(msgs[0].size() == 2, "first reading should carry 2 quads");
  expect(msgs[1].size() == 0, "heartbeat should be empty");
  expect(msgs[2].size() == 2, "second reading should carry 2 quads");

  const auto* first = std::get_if<BlankNode>(&msgs[0].quads()[0].subject);
  const auto* second = std::get_if<BlankNode>(&msgs[2].quads()[0].subject);
  expect(first != nullptr && second != nullptr,
         "reading subjects should be blank nodes");
  expect(first->label() == "b0" && second->label() == "b0",
         "both readings should use the label b0");
  expect(!(*first == *second),
         "readings in different messages must not share a node");
}

// Byte-by-byte parsing emits each message on exactly the feed call that
// consumes its terminator's newline, leaving no quads pending.
void check_incremental_emission() {
  const std::string text = fixtures::sensor_log_trig();

  // A terminator line is MESSAGE as a whole token, optionally followed by
  // a comment.  The fixture has two; its third message is closed by end of
  // input rather than a terminator.
  std::vector<size_t> expected;
  size_t line_start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string_view line(text.data() + line_start, i - line_start);
      if (line.substr(0, 7) == "MESSAGE" &&
          (line.size() == 7 || line[7] == ' ' || line[7] == '\t' ||
           line[7] == '#')) {
        expected.push_back(i);
      }
      line_start = i + 1;
    }
  }
  expect(expected.size() == 2, "fixture should have two terminator lines");

  MessageParser parser;
  std::vector<size_t> emitted;
  for (size_t i = 0; i < text.size(); ++i) {
    for (ParserEvent& ev : parser.feed(std::string_view(&text[i], 1))) {
      if (std::holds_alternative<MessageReady>(ev)) {
        emitted.push_back(i);
        expect(parser.pending_quad_count() == 0,
               "quads still pending right after an emission");
      }
    }
  }
  expect(emitted == expected,
         "emissions did not land on the terminator newlines");

  size_t at_eof = 0;
  for (ParserEvent& ev : parser.finish()) {
    if (std::holds_alternative<MessageReady>(ev)) ++at_eof;
  }
  expect(at_eof == 1, "end of input should close exactly the third message");
  expect(parser.pending_quad_count() == 0,
         "quads still pending after end of input");
}

// Chunking invariance: however a document is sliced into feed() calls, the
// emitted message sequence matches the single-chunk parse.
void check_chunking_invariance() {
  gen::Rng rng(0xc4a11e5);
  for (int doc = 0; doc < 200; ++doc) {
    std::vector<Message> messages =
        random_messages(rng, rng.range(0, 10), 6);
    std::ostringstream out;
    write_document(out, messages, fixtures::sample_prefixes());
    const std::string text = out.str();

    std::vector<Message> whole = parse_document(text);
    for (int trial = 0; trial < 5; ++trial) {
      std::set<size_t> cut_set;
      int cuts = rng.range(1, 8);
      for (int c = 0; c < cuts; ++c) {
        cut_set.insert(static_cast<size_t>(rng.below(text.size() + 1)));
      }
      cut_set.insert(text.size());

      MessageParser parser;
      std::vector<Message> chunked;
      auto take = [&](std::vector<ParserEvent> events) {
        for (ParserEvent& ev : events) {
          if (auto* ready = std::get_if<MessageReady>(&ev)) {
            chunked.push_back(std::move(ready->message));
          }
        }
      };
      size_t previous = 0;
      for (size_t cut : cut_set) {
        take(parser.feed(
            std::string_view(text.data() + previous, cut - previous)));
        previous = cut;
      }
      take(parser.finish());
      expect(compare::same_messages(whole, chunked),
             "chunked parse diverged from whole parse");
    }
  }
}

// Round-trip: write→parse in both formats, plus a full conversion cycle,
// all index-wise isomorphic to the source.
void check_round_trips() {
  gen::Rng rng(0x5e41a112);
  for (int run = 0; run < 500; ++run) {
    std::vector<Message> messages =
        random_messages(rng, rng.range(0, 6), 6, 3);

    std::ostringstream trig_out;
    write_document(trig_out, messages, fixtures::sample_prefixes());
    std::vector<Message> from_trig = parse_document(trig_out.str());
    expect(from_trig.size() == messages.size(), "trig count drifted");

    std::ostringstream nqm_out;
    nqm_write(nqm_out, messages);
    std::vector<Message> from_nqm = nqm_parse(nqm_out.str());
    expect(from_nqm.size() == messages.size(), "nqm count drifted");

    std::ostringstream converted_out;
    nqm_write(converted_out, from_trig);
    std::vector<Message> converted = nqm_parse(converted_out.str());
    std::ostringstream back_out;
    write_document(back_out, converted);
    std::vector<Message> back = parse_document(back_out.str());
    expect(back.size() == messages.size(), "conversion count drifted");

    for (size_t i = 0; i < messages.size(); ++i) {
      expect(isomorphic(messages[i], from_trig[i]),
             "trig round trip broke message " + std::to_string(i));
      expect(isomorphic(messages[i], from_nqm[i]),
             "nqm round trip broke message " + std::to_string(i));
      expect(isomorphic(messages[i], back[i]),
             "conversion cycle broke message " + std::to_string(i));
    }
  }
}

// Log replay: appends read back elementwise, point reads agree with the
// replay, and re-deriving the index from the data file reproduces it
// byte-for-byte.
void check_log_replay() {
  TempDir dir;
  const std::string path = dir.file("big.log");
  gen::Rng rng(0xb16106);
  std::vector<Message> originals = random_messages(rng, 1000, 5, 3, 0.15);

  size_t empty = 0;
  for (const Message& m : originals) {
    if (m.empty()) ++empty;
  }
  expect(empty >= 100, "generator should produce at least 10% heartbeats");

  {
    MessageLog log = MessageLog::create(path);
    for (const Message& m : originals) log.append(m);
  }

  MessageLog log = MessageLog::open(path, LogMode::Read);
  expect(log.index().size() == originals.size(), "index count drifted");

  LogReplay replay = log.replay();
  std::vector<Message> replayed;
  while (std::optional<Message> m = replay.next()) {
    replayed.push_back(std::move(*m));
  }
  expect(replayed.size() == originals.size(), "replay count drifted");
  for (size_t i = 0; i < originals.size(); ++i) {
    expect(isomorphic(replayed[i], originals[i]),
           "replay element " + std::to_string(i) + " drifted");
    expect(compare::same_messages({log.read(i)}, {replayed[i]}),
           "read(" + std::to_string(i) + ") disagrees with replay");
  }

  std::string rederived(detail::kIndexMagic);
  detail::ParsedLog parsed = detail::parse_log_bytes(slurp(path));
  expect(parsed.messages.size() == originals.size(),
         "re-parse count drifted");
  for (size_t i = 0; i < parsed.messages.size(); ++i) {
    IndexRecord r;
    r.seq = i;
    r.offset = parsed.spans[i].start;
    r.length = parsed.spans[i].end - parsed.spans[i].start;
    r.quad_count = parsed.messages[i].size();
    rederived += detail::format_index_line(r);
  }
  expect(rederived == slurp(path + ".idx"),
         "re-derived index differs from the stored one");
}

// Crash consistency: cutting the data file at any byte exposes exactly the
// messages whose complete records precede the cut, and the survivor is
// still appendable.
void check_crash_consistency() {
  TempDir dir;
  const std::string source = dir.file("source.log");
  gen::Rng rng(0xdeadfa11);
  std::vector<Message> originals = random_messages(rng, 40, 4, 2, 0.1);
  {
    MessageLog log = MessageLog::create(source);
    for (const Message& m : originals) log.append(m);
  }
  std::vector<IndexRecord> records =
      MessageLog::open(source, LogMode::Read).index();
  const uint64_t data_size = fs::file_size(source);

  for (int trial = 0; trial < 50; ++trial) {
    uint64_t cut = rng.below(data_size + 1);
    const std::string path = dir.file("cut-" + std::to_string(trial) + ".log");
    fs::copy_file(source, path);
    fs::copy_file(source + ".idx", path + ".idx");
    fs::resize_file(path, cut);

    size_t survivors = 0;
    for (const IndexRecord& r : records) {
      if (r.offset + r.length <= cut) ++survivors;
    }

    {
      MessageLog log = MessageLog::open(path, LogMode::Write);
      expect(log.index().size() == survivors,
             "cut at " + std::to_string(cut) + ": expected " +
                 std::to_string(survivors) + " messages, got " +
                 std::to_string(log.index().size()));
      for (size_t i = 0; i < survivors; ++i) {
        expect(compare::same_messages({log.read(i)}, {originals[i]}),
               "cut at " + std::to_string(cut) + ": surviving message " +
                   std::to_string(i) + " drifted");
      }
      log.append(fixtures::sensor_reading("2026-05-12T19:00:00Z", "30"));
    }

    LogOptions paranoid;
    paranoid.paranoid = true;
    MessageLog reopened = MessageLog::open(path, LogMode::Read, paranoid);
    expect(reopened.index().size() == survivors + 1,
           "append after cut did not commit");
  }
}

// Chronology: order checking on the sensor log and its reversal, then a
// three-stream merge that must stay ordered and preserve the multiset.
void check_chronology() {
  Profile profile = result_time_profile();

  std::vector<Message> forward = fixtures::sensor_log_messages();
  expect(check_order(forward, profile).empty(),
         "the sensor log should be in order");

  std::vector<Message> reversed{forward[2], forward[1], forward[0]};
  std::vector<OrderViolation> violations = check_order(reversed, profile);
  expect(violations.size() == 1, "reversal should yield exactly one violation");
  expect(violations[0].earlier_seq == 0 && violations[0].later_seq == 2,
         "violation should span the two readings");

  gen::Rng rng(0x3141592);
  std::vector<std::vector<Message>> streams(3);
  std::multiset<std::vector<std::string>> sent;
  for (auto& stream : streams) {
    uint64_t clock = rng.below(1800);
    int length = 25 + static_cast<int>(rng.below(6));
    for (int i = 0; i < length; ++i) {
      std::vector<Quad> quads;
      int extras = static_cast<int>(rng.below(3));
      for (int e = 0; e < extras; ++e) {
        quads.push_back(gen::random_quad(rng, 2));
      }
      if (!rng.chance(0.15)) {
        clock += rng.below(120);
        quads.emplace_back(Iri(fixtures::kEx + "reading"),
                           Iri(fixtures::kSosa + "resultTime"),
                           Literal::typed(clock_lexical(clock),
                                          xsd::date_time_type()),
                           DefaultGraph{});
      }
      Message m = new_message(std::move(quads));
      sent.insert(compare::quad_lines(m));
      stream.push_back(std::move(m));
    }
    expect(check_order(stream, profile).empty(),
           "generated stream should be pre-sorted");
  }

  std::vector<Message> merged = merge_by_chronology(streams, profile);
  expect(merged.size() == sent.size(), "merge changed the message count");
  expect(check_order(merged, profile).empty(), "merge output is unordered");
  std::multiset<std::vector<std::string>> received;
  for (const Message& m : merged) received.insert(compare::quad_lines(m));
  expect(received == sent, "merge changed the message multiset");
}

// Skolemization: no blank nodes survive, quad counts hold, and the same
// label in different messages maps to different IRIs.
void check_skolemization() {
  gen::Rng rng(0x5c01e);
  std::set<std::string> shared_label_iris;
  const std::string base = "https://acceptance.example";

  for (size_t i = 0; i < 60; ++i) {
    std::vector<Quad> quads;
    quads.emplace_back(BlankNode("b0"), Iri(fixtures::kEx + "value"),
                       Literal::typed(std::to_string(i), xsd::integer_type()),
                       DefaultGraph{});
    int extras = static_cast<int>(rng.below(4));
    for (int e = 0; e < extras; ++e) {
      quads.push_back(gen::random_quad(rng, 3));
    }
    Message m = new_message(std::move(quads));

    Message skolemized = skolemize(m, base, pad6(i));
    expect(skolemized.size() == m.size(),
           "skolemization changed the quad count of message " +
               std::to_string(i));
    expect(!message_has_blank(skolemized),
           "blank node survived skolemization in message " +
               std::to_string(i));

    const auto* subject = std::get_if<Iri>(&skolemized.quads()[0].subject);
    expect(subject != nullptr, "b0 was not replaced by an IRI");
    expect(subject->str().find("/.well-known/genid/") != std::string::npos,
           "skolem IRI is not under the well-known namespace");
    shared_label_iris.insert(subject->str());
  }
  expect(shared_label_iris.size() == 60,
         "colliding labels from distinct messages must map to distinct IRIs");
}

// Union scoping: merging the two readings keeps their blank nodes apart,
// so the union has 4 quads over 2 nodes and cannot collapse to one reading.
void check_union_scoping() {
  std::vector<Message> msgs = fixtures::sensor_log_messages();
  Message u = union_messages({msgs[0], msgs[2]});
  expect(u.size() == 4, "union should keep all 4 quads");
  expect(count_blank_nodes(u) == 2, "union should keep 2 distinct nodes");
  expect(!isomorphic(u, msgs[0]),
         "union must not be isomorphic to a single 2-quad reading");
  expect(!isomorphic(u, msgs[2]),
         "union must not be isomorphic to a single 2-quad reading");
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"observation message: 4 quads across default and blank-named graph",
       1.0, check_observation_fidelity},
      {"sensor log: 3 messages [2,0,2] with per-message blank scopes", 1.0,
       check_sensor_log_fidelity},
      {"incremental emission lands on terminator newlines, nothing pending",
       1.0, check_incremental_emission},
      {"chunking invariance across 200 documents x 5 slicings", 30.0,
       check_chunking_invariance},
      {"round trips in both formats plus conversion, 500 sequences", 60.0,
       check_round_trips},
      {"log of 1000 appends: replay, point reads, index re-derivation", 60.0,
       check_log_replay},
      {"crash cuts at 50 random bytes recover and stay appendable", 30.0,
       check_crash_consistency},
      {"chronology checking and three-stream merge", 10.0, check_chronology},
      {"skolemization is blank-free with per-message distinct IRIs", 10.0,
       check_skolemization},
      {"union keeps the readings' blank nodes distinct", 1.0,
       check_union_scoping},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.body();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (verdict == "PASS" && elapsed > c.budget_seconds) {
      verdict = "FAIL";
      detail = "exceeded the " + std::to_string(c.budget_seconds) +
               "s budget";
    }
    if (verdict == "FAIL") ++failures;
    std::printf("%s  %2zu. %s (%.3fs)%s%s\n", verdict.c_str(), i + 1, c.name,
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
