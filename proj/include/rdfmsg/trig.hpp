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

// Incremental parser and canonical writer for message-bounded TriG
// ("TriG-Messages", extension .trigm): a `VERSION "1.2-messages"` header,
// TriG statements, and bare `MESSAGE` lines that terminate messages.
//
// The parser consumes byte chunks of arbitrary size and emits each message
// the moment the feed consumes its terminator; chunk boundaries may fall
// anywhere, including inside tokens and multi-byte UTF-8 sequences.  It
// works by re-scanning from the start of the current statement whenever the
// buffered input ends before the statement does, so no token is ever
// finalized against a buffer boundary that more input could extend.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/message.hpp"
#include "rdfmsg/stream.hpp"
#include "rdfmsg/term.hpp"
#include "rdfmsg/text.hpp"

namespace rdfmsg {

struct ParserOptions {
  /// Require the `VERSION "1.2-messages"` announcement as the first
  /// statement.  When false, plain TriG parses as a single message
  /// (interop path for legacy archives); a VERSION line is still honored
  /// and validated if present.
  bool require_version = true;

  /// Pre-seeded prefix and base state, e.g. for re-parsing a byte-span
  /// slice of a larger document.  Values must be absolute IRIs.
  std::map<std::string, std::string> prefixes;
  std::optional<std::string> base;
};

namespace detail {

/// Internal control-flow signal: the current statement runs past the end of
/// the buffered input and more bytes may still arrive.  Never escapes the
/// parser.
struct need_more_input {};

}  // namespace detail

/// Incremental TriG-Messages parser.  Single-owner: calls to feed()/finish()
/// must be serialized by the caller.  Emitted Messages are immutable and may
/// be shared across threads freely.
class MessageParser {
 public:
  explicit MessageParser(ParserOptions options = {})
      : require_version_(options.require_version),
        prefixes_(std::move(options.prefixes)),
        base_(std::move(options.base)) {
    for (const auto& [prefix, iri] : prefixes_) {
      (void)prefix;
      Iri check(iri);  // throws InvalidIriError on a bad seed
      (void)check;
    }
    if (base_) {
      Iri check(*base_);
      (void)check;
    }
  }

  /// Appends a chunk and returns every MessageReady completed by it, in
  /// document order, followed by NeedMoreInput.  Throws SyntaxError on the
  /// first malformed token; after that the parser is poisoned and rejects
  /// all further calls with the same error.
  std::vector<ParserEvent> feed(std::string_view chunk) {
    if (finished_) throw Error("feed called after finish");
    if (poison_) throw *poison_;
    buf_.append(chunk.data(), chunk.size());
    std::vector<ParserEvent> events;
    run(events);
    events.emplace_back(NeedMoreInput{});
    return events;
  }

  /// Declares end of input.  Emits the final message if any statement
  /// followed the last MESSAGE terminator, then EndOfLog.  Throws
  /// SyntaxError if the input ends mid-statement.
  std::vector<ParserEvent> finish() {
    if (poison_) throw *poison_;
    std::vector<ParserEvent> events;
    if (finished_) {
      events.emplace_back(EndOfLog{});
      return events;
    }
    at_eof_ = true;
    run(events);
    if (require_version_ && !version_) {
      throw poison(SyntaxError(SyntaxErrorKind::VersionMissing,
                               "input ended without a VERSION announcement",
                               line_, col_, offset()));
    }
    if (stmts_since_terminator_) commit_message(events, total_size());
    finished_ = true;
    events.emplace_back(EndOfLog{});
    return events;
  }

  /// Number of quads buffered for the message currently being read.  Zero
  /// right after every MessageReady (emitted messages are handed off, not
  /// retained).
  size_t pending_quad_count() const { return pending_.size(); }

  /// Document-scoped prefix map accumulated so far (prefix → absolute IRI).
  const std::map<std::string, std::string>& prefixes() const {
    return prefixes_;
  }
  const std::optional<std::string>& base() const { return base_; }
  /// The announced version string, once seen.
  const std::optional<std::string>& version() const { return version_; }

 private:
  // ---- pending message content ------------------------------------------
  //
  // Blank nodes are kept as indices into a per-message node table until the
  // message commits, because anonymous nodes ([...] and collections) only
  // get real labels once all explicit labels of the message are known.

  struct BRef {
    uint32_t id;
  };
  using PSubj = std::variant<Iri, BRef>;
  using PTerm = std::variant<Iri, Literal, BRef>;
  using PGraph = std::variant<DefaultGraph, Iri, BRef>;
  struct PQuad {
    PSubj subject;
    Iri predicate;
    PTerm object;
    PGraph graph;
  };

  BRef labeled_node(const std::string& label) {
    auto it = label_ids_.find(label);
    if (it != label_ids_.end()) return BRef{it->second};
    uint32_t id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(label);
    label_ids_.emplace(label, id);
    return BRef{id};
  }

  BRef anon_node() {
    uint32_t id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(std::nullopt);
    return BRef{id};
  }

  void commit_message(std::vector<ParserEvent>& events, uint64_t span_end) {
    // Give anonymous nodes labels anon0, anon1, ... skipping any label the
    // document used explicitly in this message.
    std::vector<std::string> names(nodes_.size());
    int counter = 0;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i]) names[i] = *nodes_[i];
    }
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i]) continue;
      std::string candidate;
      do {
        candidate = "anon" + std::to_string(counter++);
      } while (label_ids_.count(candidate));
      names[i] = candidate;
    }

    auto subj = [&](const PSubj& s) -> SubjectName {
      if (const Iri* iri = std::get_if<Iri>(&s)) return *iri;
      return BlankNode(names[std::get<BRef>(s).id]);
    };
    auto term = [&](const PTerm& t) -> Term {
      if (const Iri* iri = std::get_if<Iri>(&t)) return *iri;
      if (const Literal* lit = std::get_if<Literal>(&t)) return *lit;
      return BlankNode(names[std::get<BRef>(t).id]);
    };
    auto graph = [&](const PGraph& g) -> GraphName {
      if (std::holds_alternative<DefaultGraph>(g)) return DefaultGraph{};
      if (const Iri* iri = std::get_if<Iri>(&g)) return *iri;
      return BlankNode(names[std::get<BRef>(g).id]);
    };

    std::vector<Quad> quads;
    quads.reserve(pending_.size());
    for (const PQuad& q : pending_) {
      quads.emplace_back(subj(q.subject), q.predicate, term(q.object),
                         graph(q.graph));
    }
    pending_.clear();
    nodes_.clear();
    label_ids_.clear();
    stmts_since_terminator_ = false;

    events.emplace_back(
        MessageReady{new_message(std::move(quads)), {span_start_, span_end}});
    span_start_ = span_end;
  }

  // ---- cursor -------------------------------------------------------------

  uint64_t offset() const { return buf_base_ + pos_; }
  uint64_t total_size() const { return buf_base_ + buf_.size(); }

  /// Byte at the cursor, or -1 at true end of input.  Throws
  /// need_more_input when the buffer ends but the document has not: the
  /// current statement re-parses once more bytes arrive.
  int look() {
    if (pos_ < buf_.size()) return static_cast<unsigned char>(buf_[pos_]);
    if (at_eof_) return -1;
    throw detail::need_more_input{};
  }

  /// Byte k positions past the cursor, with the same end-of-input rules.
  int look_ahead(size_t k) {
    if (pos_ + k < buf_.size())
      return static_cast<unsigned char>(buf_[pos_ + k]);
    if (at_eof_) return -1;
    throw detail::need_more_input{};
  }

  void bump() {
    if (buf_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  struct Mark {
    size_t pos;
    uint32_t line, col;
  };
  Mark mark() const { return {pos_, line_, col_}; }
  void rewind(const Mark& m) {
    pos_ = m.pos;
    line_ = m.line;
    col_ = m.col;
  }

  SyntaxError poison(SyntaxError e) {
    poison_ = e;
    return e;
  }

  SyntaxError err(SyntaxErrorKind kind, std::string text, const Mark& at) {
    return poison(SyntaxError(kind, std::move(text), at.line, at.col,
                              buf_base_ + at.pos));
  }
  SyntaxError err_here(SyntaxErrorKind kind, std::string text) {
    return err(kind, std::move(text), mark());
  }

  // ---- whitespace and comments -------------------------------------------

  void skip_comment() {
    // Cursor sits on '#'.  The newline itself is left for the caller.
    while (true) {
      if (pos_ >= buf_.size()) {
        if (at_eof_) return;
        throw detail::need_more_input{};
      }
      char c = buf_[pos_];
      if (c == '\n' || c == '\r') return;
      bump();
    }
  }

  void skip_ws_comments() {
    while (pos_ < buf_.size()) {
      char c = buf_[pos_];
      if (text::is_ws(c)) {
        bump();
      } else if (c == '#') {
        skip_comment();
      } else {
        return;
      }
    }
  }

  /// Rest of a line-oriented directive (VERSION / MESSAGE): optional spaces
  /// and a trailing comment, then newline or end of input.
  void expect_line_end(const char* what) {
    while (look() == ' ' || look() == '\t') bump();
    if (look() == '#') skip_comment();
    int c = look();
    if (c == '\r') {
      bump();
      if (look() == '\n') bump();
      return;
    }
    if (c == '\n') {
      bump();
      return;
    }
    if (c == -1) return;
    throw err_here(SyntaxErrorKind::UnexpectedToken,
                   std::string("unexpected token after ") + what);
  }

  // ---- statement loop ------------------------------------------------------

  void run(std::vector<ParserEvent>& events) {
    while (true) {
      Mark save = mark();
      // A statement may be abandoned halfway through when the buffer runs
      // dry, so quads and blank nodes it already recorded must be dropped
      // with it — the retry will record them again.
      size_t saved_quads = pending_.size();
      size_t saved_nodes = nodes_.size();
      try {
        skip_bom();
        skip_ws_comments();
        if (pos_ >= buf_.size()) {
          if (at_eof_) break;  // clean end of input
          throw detail::need_more_input{};
        }
        parse_statement(events);
        // Commit: drop consumed bytes so the buffer stays bounded by the
        // longest statement, not the document.
        buf_.erase(0, pos_);
        buf_base_ += pos_;
        pos_ = 0;
      } catch (const detail::need_more_input&) {
        rewind(save);
        pending_.erase(pending_.begin() + saved_quads, pending_.end());
        // Labels first seen in the failed attempt point past the truncated
        // node table; earlier labels keep their original slots.
        nodes_.erase(nodes_.begin() + saved_nodes, nodes_.end());
        for (auto it = label_ids_.begin(); it != label_ids_.end();) {
          if (it->second >= saved_nodes) {
            it = label_ids_.erase(it);
          } else {
            ++it;
          }
        }
        break;
      }
    }
  }

  void skip_bom() {
    if (buf_base_ != 0 || pos_ != 0 || bom_checked_) return;
    if (buf_.size() < 3 && !at_eof_) {
      if (std::string_view("\xEF\xBB\xBF").substr(0, buf_.size()) == buf_)
        throw detail::need_more_input{};
    }
    if (buf_.size() >= 3 && buf_.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      pos_ += 3;  // invisible: no column change
      buf_.erase(0, 3);
      buf_base_ += 3;
      pos_ = 0;
      span_start_ = 3;
    }
    bom_checked_ = true;
  }

  /// Scans the bareword at the cursor without consuming it.  Empty when the
  /// cursor is not on a name character.
  std::string peek_bareword() {
    std::string word;
    size_t k = 0;
    while (true) {
      int c = look_ahead(k);
      if (c == -1 || !text::is_name_char(static_cast<char>(c))) break;
      word.push_back(static_cast<char>(c));
      ++k;
    }
    return word;
  }

  void consume_word(size_t n) {
    for (size_t i = 0; i < n; ++i) bump();
  }

  static std::string ascii_lower(std::string s) {
    for (char& c : s)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
  }

  void parse_statement(std::vector<ParserEvent>& events) {
    Mark at = mark();
    int c = look();
    if (c == '@') {
      require_version_first(at);
      parse_at_directive();
      any_statement_ = true;
      return;
    }

    std::string word = peek_bareword();
    if (!word.empty() && look_ahead(word.size()) != ':') {
      if (word == "VERSION") {
        parse_version(at);
        any_statement_ = true;
        return;
      }
      if (word == "MESSAGE") {
        require_version_first(at);
        consume_word(word.size());
        expect_line_end("MESSAGE");
        any_statement_ = true;
        commit_message(events, offset());
        return;
      }
      std::string lower = ascii_lower(word);
      if (lower == "prefix" || lower == "base") {
        require_version_first(at);
        consume_word(word.size());
        if (lower == "prefix") {
          parse_prefix_binding(/*sparql_form=*/true);
        } else {
          parse_base_binding(/*sparql_form=*/true);
        }
        any_statement_ = true;
        return;
      }
      if (lower == "graph") {
        require_version_first(at);
        consume_word(word.size());
        skip_ws_comments();
        PGraph g = parse_graph_label();
        parse_graph_block(g);
        any_statement_ = true;
        stmts_since_terminator_ = true;
        return;
      }
      throw err(SyntaxErrorKind::UnexpectedToken,
                "unexpected token '" + word + "' at statement start", at);
    }

    require_version_first(at);
    parse_triples_or_graph();
    any_statement_ = true;
    stmts_since_terminator_ = true;
  }

  void require_version_first(const Mark& at) {
    if (require_version_ && !version_) {
      throw err(SyntaxErrorKind::VersionMissing,
                "first statement must announce VERSION \"" +
                    std::string(kMessagesVersion) + "\"",
                at);
    }
  }

  void parse_version(const Mark& at) {
    if (version_) {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "VERSION announced more than once", at);
    }
    if (any_statement_) {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "VERSION must precede every other statement", at);
    }
    consume_word(7);  // VERSION
    skip_ws_comments();
    Mark val = mark();
    int q = look();
    if (q != '"' && q != '\'') {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "VERSION expects a quoted version string", val);
    }
    std::string text = lex_string_body();
    expect_line_end("VERSION");
    if (text != kMessagesVersion) {
      throw err(SyntaxErrorKind::VersionUnsupported,
                "unsupported version \"" + text + "\" (expected \"" +
                    std::string(kMessagesVersion) + "\")",
                val);
    }
    version_ = text;
    span_start_ = offset();
  }

  // ---- directives ----------------------------------------------------------

  void parse_at_directive() {
    Mark at = mark();
    bump();  // '@'
    std::string word = peek_bareword();
    if (word == "prefix") {
      consume_word(word.size());
      parse_prefix_binding(/*sparql_form=*/false);
    } else if (word == "base") {
      consume_word(word.size());
      parse_base_binding(/*sparql_form=*/false);
    } else {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "unknown directive '@" + word + "'", at);
    }
  }

  void parse_prefix_binding(bool sparql_form) {
    skip_ws_comments();
    Mark at = mark();
    std::string prefix = lex_prefix_label();
    if (look() != ':') {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "prefix declaration expects 'name:'", at);
    }
    bump();
    skip_ws_comments();
    Iri iri = lex_iriref();
    if (!sparql_form) expect_dot();
    prefixes_[prefix] = iri.str();
  }

  void parse_base_binding(bool sparql_form) {
    skip_ws_comments();
    Iri iri = lex_iriref();
    if (!sparql_form) expect_dot();
    base_ = iri.str();
  }

  void expect_dot() {
    skip_ws_comments();
    if (look() != '.') {
      throw err_here(SyntaxErrorKind::UnexpectedToken,
                     "expected '.' at end of statement");
    }
    bump();
  }

  // ---- graph blocks and triples ---------------------------------------------

  /// Graph label after the GRAPH keyword: IRI or blank node only.
  PGraph parse_graph_label() {
    Mark at = mark();
    int c = look();
    if (c == '<') return PGraph(lex_iriref());
    if (c == '_') return PGraph(labeled_node(lex_blank_label()));
    if (c == '[') {
      bump();
      skip_ws_comments();
      if (look() != ']') {
        throw err(SyntaxErrorKind::UnexpectedToken,
                  "graph label must be an IRI or blank node", at);
      }
      bump();
      return PGraph(anon_node());
    }
    if (text::is_name_char(static_cast<char>(c)) || c == ':')
      return PGraph(lex_pname());
    throw err(SyntaxErrorKind::UnexpectedToken,
              "graph label must be an IRI or blank node", at);
  }

  void parse_graph_block(const PGraph& graph) {
    skip_ws_comments();
    if (look() != '{') {
      throw err_here(SyntaxErrorKind::UnexpectedToken,
                     "expected '{' after graph label");
    }
    bump();
    while (true) {
      skip_ws_comments();
      int c = look();
      if (c == '}') {
        bump();
        break;
      }
      if (c == -1) {
        throw err_here(SyntaxErrorKind::UnexpectedToken,
                       "input ended inside a graph block");
      }
      parse_triples(graph);
      skip_ws_comments();
      c = look();
      if (c == '.') {
        bump();
        continue;
      }
      if (c == '}') {
        bump();
        break;
      }
      throw err_here(SyntaxErrorKind::UnexpectedToken,
                     "expected '.' or '}' in graph block");
    }
    // TriG allows an optional '.' after a closing brace; consume it so
    // third-party output re-parses too.
    Mark after = mark();
    skip_ws_comments();
    if (look() == '.') {
      bump();
      return;
    }
    rewind(after);
  }

  void parse_triples_or_graph() {
    Mark at = mark();
    int c = look();

    // Disambiguate graph blocks from triples: parse the first term, then
    // look for '{'.
    if (c == '<' || text::is_name_char(static_cast<char>(c)) || c == ':' ||
        c == '_') {
      PSubj s = (c == '<')   ? PSubj(lex_iriref())
                : (c == '_') ? PSubj(labeled_node(lex_blank_label()))
                             : PSubj(lex_pname());
      skip_ws_comments();
      if (look() == '{') {
        PGraph g = std::holds_alternative<Iri>(s)
                       ? PGraph(std::get<Iri>(s))
                       : PGraph(std::get<BRef>(s));
        parse_graph_block(g);
        return;
      }
      parse_predicate_object_list(s, DefaultGraph{});
      expect_dot();
      return;
    }

    if (c == '[') {
      bump();
      skip_ws_comments();
      if (look() == ']') {
        bump();
        BRef b = anon_node();
        skip_ws_comments();
        if (look() == '{') {
          parse_graph_block(PGraph(b));
          return;
        }
        parse_predicate_object_list(PSubj(b), DefaultGraph{});
        expect_dot();
        return;
      }
      // Non-empty property list: a subject, with the trailing
      // predicate-object list optional.
      BRef b = parse_property_list_body(DefaultGraph{});
      skip_ws_comments();
      int n = look();
      if (n == '.') {
        bump();
        return;
      }
      if (n == '{') {
        throw err_here(SyntaxErrorKind::UnexpectedToken,
                       "a property list cannot label a graph");
      }
      parse_predicate_object_list(PSubj(b), DefaultGraph{});
      expect_dot();
      return;
    }

    if (c == '(') {
      PTerm head = parse_collection(DefaultGraph{});
      PSubj s = std::holds_alternative<Iri>(head)
                    ? PSubj(std::get<Iri>(head))
                    : PSubj(std::get<BRef>(head));
      parse_predicate_object_list(s, DefaultGraph{});
      expect_dot();
      return;
    }

    throw err(SyntaxErrorKind::UnexpectedToken, "expected a statement", at);
  }

  /// One `subject predicateObjectList` group inside a graph block.
  void parse_triples(const PGraph& graph) {
    int c = look();
    if (c == '<' || text::is_name_char(static_cast<char>(c)) || c == ':' ||
        c == '_') {
      PSubj s = (c == '<')   ? PSubj(lex_iriref())
                : (c == '_') ? PSubj(labeled_node(lex_blank_label()))
                             : PSubj(lex_pname());
      parse_predicate_object_list(s, graph);
      return;
    }
    if (c == '[') {
      bump();
      skip_ws_comments();
      if (look() == ']') {
        bump();
        parse_predicate_object_list(PSubj(anon_node()), graph);
        return;
      }
      BRef b = parse_property_list_body(graph);
      Mark after = mark();
      skip_ws_comments();
      int n = look();
      if (n == '.' || n == '}') {
        rewind(after);  // bare property list; block loop owns the delimiter
        return;
      }
      parse_predicate_object_list(PSubj(b), graph);
      return;
    }
    if (c == '(') {
      PTerm head = parse_collection(graph);
      PSubj s = std::holds_alternative<Iri>(head)
                    ? PSubj(std::get<Iri>(head))
                    : PSubj(std::get<BRef>(head));
      parse_predicate_object_list(s, graph);
      return;
    }
    throw err_here(SyntaxErrorKind::UnexpectedToken,
                   "expected a subject in graph block");
  }

  void parse_predicate_object_list(const PSubj& subject, const PGraph& graph) {
    while (true) {
      skip_ws_comments();
      Iri verb = parse_verb();
      while (true) {
        skip_ws_comments();
        PTerm object = parse_object(graph);
        pending_.push_back(PQuad{subject, verb, std::move(object), graph});
        skip_ws_comments();
        if (look() == ',') {
          bump();
          continue;
        }
        break;
      }
      if (look() != ';') return;
      // One or more ';' separators; the list may also end right here
      // (trailing semicolon before '.', '}' or ']').
      while (look() == ';') {
        bump();
        skip_ws_comments();
      }
      int c = look();
      if (c == '.' || c == '}' || c == ']' || c == -1) return;
    }
  }

  Iri parse_verb() {
    Mark at = mark();
    int c = look();
    if (c == '<') return lex_iriref();
    if (c == '_' || c == '[') {
      throw err(SyntaxErrorKind::PredicateBlankNode,
                "a blank node cannot be used as predicate", at);
    }
    if (text::is_name_char(static_cast<char>(c)) || c == ':') {
      std::string word = peek_bareword();
      if (word == "a" && look_ahead(1) != ':') {
        bump();
        return rdf::type_predicate();
      }
      return lex_pname();
    }
    throw err(SyntaxErrorKind::UnexpectedToken, "expected a predicate", at);
  }

  PTerm parse_object(const PGraph& graph) {
    Mark at = mark();
    int c = look();
    if (c == '<') return PTerm(lex_iriref());
    if (c == '_') return PTerm(labeled_node(lex_blank_label()));
    if (c == '"' || c == '\'') return PTerm(lex_literal());
    if (c == '[') {
      bump();
      skip_ws_comments();
      if (look() == ']') {
        bump();
        return PTerm(anon_node());
      }
      return PTerm(parse_property_list_body(graph));
    }
    if (c == '(') return parse_collection(graph);
    if (text::is_digit(static_cast<char>(c)) || c == '+' || c == '-' ||
        c == '.') {
      return PTerm(lex_number());
    }
    if (text::is_name_char(static_cast<char>(c)) || c == ':') {
      std::string word = peek_bareword();
      if ((word == "true" || word == "false") &&
          look_ahead(word.size()) != ':') {
        consume_word(word.size());
        return PTerm(Literal::typed(word, xsd::boolean_type()));
      }
      return PTerm(lex_pname());
    }
    throw err(SyntaxErrorKind::UnexpectedToken, "expected an object", at);
  }

  /// Body of a non-empty `[ verb objectList ; ... ]`; the cursor is past
  /// the '[' and leading whitespace.  Returns the fresh node.
  BRef parse_property_list_body(const PGraph& graph) {
    BRef node = anon_node();
    parse_predicate_object_list(PSubj(node), graph);
    skip_ws_comments();
    if (look() != ']') {
      throw err_here(SyntaxErrorKind::UnexpectedToken,
                     "expected ']' to close a property list");
    }
    bump();
    return node;
  }

  /// `( object* )` built into an rdf:first/rdf:rest chain.
  PTerm parse_collection(const PGraph& graph) {
    bump();  // '('
    skip_ws_comments();
    if (look() == ')') {
      bump();
      return PTerm(rdf::nil());
    }
    BRef head = anon_node();
    BRef cell = head;
    while (true) {
      PTerm item = parse_object(graph);
      pending_.push_back(PQuad{PSubj(cell), rdf::first(), std::move(item), graph});
      skip_ws_comments();
      if (look() == ')') {
        bump();
        pending_.push_back(
            PQuad{PSubj(cell), rdf::rest(), PTerm(rdf::nil()), graph});
        return PTerm(head);
      }
      BRef next = anon_node();
      pending_.push_back(
          PQuad{PSubj(cell), rdf::rest(), PTerm(next), graph});
      cell = next;
    }
  }

  // ---- token lexers -----------------------------------------------------------

  std::string lex_prefix_label() {
    // PNAME_NS prefix part: empty allowed; name characters otherwise.
    std::string out;
    while (true) {
      int c = look();
      if (c == -1 || !text::is_name_char(static_cast<char>(c))) break;
      out.push_back(static_cast<char>(c));
      bump();
    }
    return out;
  }

  std::string lex_blank_label() {
    Mark at = mark();
    bump();  // '_'
    if (look() != ':') {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "expected ':' after '_' in blank node label", at);
    }
    bump();
    std::string label;
    while (true) {
      int c = look();
      if (c == '.') {
        // A dot is part of the label only when label characters follow.
        int n = look_ahead(1);
        if (n != -1 && (text::is_name_char(static_cast<char>(n)) || n == '.')) {
          label.push_back('.');
          bump();
          continue;
        }
        break;
      }
      if (c == -1 || !text::is_name_char(static_cast<char>(c))) break;
      label.push_back(static_cast<char>(c));
      bump();
    }
    if (!text::valid_blank_label(label)) {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "malformed blank node label '_:" + label + "'", at);
    }
    return label;
  }

  Iri lex_iriref() {
    Mark at = mark();
    if (look() != '<') {
      throw err(SyntaxErrorKind::BadIri, "expected an IRI", at);
    }
    bump();
    std::string body;
    while (true) {
      int c = look();
      if (c == '>') {
        bump();
        break;
      }
      if (c == -1) {
        throw err(SyntaxErrorKind::BadIri, "input ended inside an IRI", at);
      }
      if (c == '\\') {
        bump();
        int e = look();
        if (e == 'u') {
          bump();
          lex_ucs(body, 4, at, SyntaxErrorKind::BadIri);
        } else if (e == 'U') {
          bump();
          lex_ucs(body, 8, at, SyntaxErrorKind::BadIri);
        } else {
          throw err(SyntaxErrorKind::BadIri,
                    "only \\u and \\U escapes are allowed in IRIs", at);
        }
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        throw err(SyntaxErrorKind::BadIri,
                  "whitespace or forbidden character in IRI", at);
      }
      body.push_back(static_cast<char>(c));
      bump();
    }
    return resolve_reference(body, at);
  }

  Iri resolve_reference(const std::string& ref, const Mark& at) {
    std::string absolute;
    if (text::has_scheme(ref)) {
      absolute = ref;
    } else if (base_) {
      absolute = text::resolve_iri(*base_, ref);
    } else {
      throw err(SyntaxErrorKind::BadIri,
                "relative IRI <" + ref + "> without a base", at);
    }
    try {
      return Iri(absolute);
    } catch (const InvalidIriError& e) {
      throw err(SyntaxErrorKind::BadIri, e.what(), at);
    }
  }

  Iri lex_pname() {
    Mark at = mark();
    std::string prefix = lex_prefix_label();
    if (look() != ':') {
      throw err(SyntaxErrorKind::UnexpectedToken,
                "expected ':' in prefixed name", at);
    }
    bump();
    std::string local;
    while (true) {
      int c = look();
      if (c == -1) break;
      char ch = static_cast<char>(c);
      if (text::is_name_char(ch) || ch == ':') {
        local.push_back(ch);
        bump();
        continue;
      }
      if (ch == '.') {
        int n = look_ahead(1);
        if (n != -1 && (text::is_name_char(static_cast<char>(n)) ||
                        n == ':' || n == '.' || n == '%' || n == '\\')) {
          local.push_back('.');
          bump();
          continue;
        }
        break;
      }
      if (ch == '%') {
        bump();
        int h1 = look();
        if (h1 == -1 || !text::is_hex(static_cast<char>(h1)))
          throw err(SyntaxErrorKind::BadIri,
                    "malformed %-escape in prefixed name", at);
        bump();
        int h2 = look();
        if (h2 == -1 || !text::is_hex(static_cast<char>(h2)))
          throw err(SyntaxErrorKind::BadIri,
                    "malformed %-escape in prefixed name", at);
        bump();
        local.push_back('%');
        local.push_back(static_cast<char>(h1));
        local.push_back(static_cast<char>(h2));
        continue;
      }
      if (ch == '\\') {
        bump();
        int e = look();
        static const std::string_view allowed = "_~.-!$&'()*+,;=/?#@%";
        if (e == -1 || allowed.find(static_cast<char>(e)) ==
                           std::string_view::npos) {
          throw err(SyntaxErrorKind::BadIri,
                    "invalid local-name escape in prefixed name", at);
        }
        local.push_back(static_cast<char>(e));
        bump();
        continue;
      }
      break;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      throw err(SyntaxErrorKind::BadIri, "undeclared prefix '" + prefix + ":'",
                at);
    }
    try {
      return Iri(it->second + local);
    } catch (const InvalidIriError& e) {
      throw err(SyntaxErrorKind::BadIri, e.what(), at);
    }
  }

  void lex_ucs(std::string& out, int digits, const Mark& at,
               SyntaxErrorKind kind) {
    uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      int c = look();
      if (c == -1 || !text::is_hex(static_cast<char>(c))) {
        throw err(kind, "malformed \\u escape", at);
      }
      cp = cp * 16 + static_cast<uint32_t>(text::hex_value(static_cast<char>(c)));
      bump();
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw err(kind, "escape is not a Unicode scalar value", at);
    }
    text::append_utf8(out, cp);
  }

  /// A quoted string body (short or long form), cursor on the open quote.
  std::string lex_string_body() {
    Mark at = mark();
    int q = look();
    bump();
    bool long_form = false;
    if (look() == q) {
      if (look_ahead(1) == q) {
        bump();
        bump();
        long_form = true;
      } else {
        bump();
        return "";  // empty short string
      }
    }
    std::string out;
    while (true) {
      int c = look();
      if (c == -1) {
        throw err(SyntaxErrorKind::BadLiteral, "input ended inside a string",
                  at);
      }
      if (c == q) {
        if (!long_form) {
          bump();
          return out;
        }
        // Count the quote run; the first three close the string, any
        // preceding quotes belong to the content.
        size_t run = 1;
        while (look_ahead(run) == q) ++run;
        if (run >= 3) {
          // Any quotes before the closing three belong to the content.
          for (size_t i = 3; i < run; ++i) out.push_back(static_cast<char>(q));
          consume_word(run);
          return out;
        }
        for (size_t i = 0; i < run; ++i) {
          out.push_back(static_cast<char>(q));
          bump();
        }
        continue;
      }
      if (c == '\\') {
        bump();
        int e = look();
        switch (e) {
          case 't': out.push_back('\t'); bump(); break;
          case 'b': out.push_back('\b'); bump(); break;
          case 'n': out.push_back('\n'); bump(); break;
          case 'r': out.push_back('\r'); bump(); break;
          case 'f': out.push_back('\f'); bump(); break;
          case '"': out.push_back('"'); bump(); break;
          case '\'': out.push_back('\''); bump(); break;
          case '\\': out.push_back('\\'); bump(); break;
          case 'u': bump(); lex_ucs(out, 4, at, SyntaxErrorKind::BadLiteral); break;
          case 'U': bump(); lex_ucs(out, 8, at, SyntaxErrorKind::BadLiteral); break;
          default:
            throw err(SyntaxErrorKind::BadLiteral, "invalid string escape",
                      at);
        }
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) {
        throw err(SyntaxErrorKind::BadLiteral,
                  "newline inside a single-line string", at);
      }
      out.push_back(static_cast<char>(c));
      bump();
    }
  }

  Literal lex_literal() {
    Mark at = mark();
    std::string body = lex_string_body();
    {
      // Language tag or datatype must follow immediately (no whitespace).
      Mark after = mark();
      int c = look();
      if (c == '@') {
        bump();
        std::string tag;
        while (true) {
          int t = look();
          if (t == -1) break;
          char ch = static_cast<char>(t);
          if (text::is_alpha(ch) || text::is_digit(ch) || ch == '-') {
            tag.push_back(ch);
            bump();
          } else {
            break;
          }
        }
        if (!text::valid_lang_tag(tag)) {
          throw err(SyntaxErrorKind::BadLiteral,
                    "malformed language tag '@" + tag + "'", at);
        }
        return Literal::lang(body, tag);
      }
      if (c == '^') {
        bump();
        if (look() != '^') {
          throw err(SyntaxErrorKind::BadLiteral, "expected '^^'", at);
        }
        bump();
        skip_ws_comments();
        int d = look();
        Iri dt = (d == '<') ? lex_iriref()
                 : (text::is_name_char(static_cast<char>(d)) || d == ':')
                     ? lex_pname()
                     : throw err(SyntaxErrorKind::BadLiteral,
                                 "datatype must be an IRI", at);
        if (dt == rdf::lang_string_type()) {
          throw err(SyntaxErrorKind::BadLiteral,
                    "rdf:langString requires a language tag", at);
        }
        return Literal::typed(body, dt);
      }
      rewind(after);
    }
    return Literal::plain(body);
  }

  Literal lex_number() {
    Mark at = mark();
    std::string lex;
    int c = look();
    if (c == '+' || c == '-') {
      lex.push_back(static_cast<char>(c));
      bump();
    }
    size_t int_digits = 0;
    while ((c = look()) != -1 && text::is_digit(static_cast<char>(c))) {
      lex.push_back(static_cast<char>(c));
      bump();
      ++int_digits;
    }
    size_t frac_digits = 0;
    bool has_dot = false;
    if (look() == '.') {
      Mark dot = mark();
      bump();
      while ((c = look()) != -1 && text::is_digit(static_cast<char>(c))) {
        ++frac_digits;
        bump();
      }
      int after = look();
      if (frac_digits == 0 && after != 'e' && after != 'E') {
        // The dot was a statement terminator after an integer, not a
        // fraction: hand it back.
        rewind(dot);
        if (int_digits == 0) {
          throw err(SyntaxErrorKind::BadLiteral, "malformed numeric literal",
                    at);
        }
        return Literal::typed(lex, xsd::integer_type());
      }
      has_dot = true;
      lex.push_back('.');
      lex.append(buf_, dot.pos + 1, frac_digits);
    }
    if (int_digits == 0 && frac_digits == 0) {
      throw err(SyntaxErrorKind::BadLiteral, "malformed numeric literal", at);
    }
    c = look();
    if (c == 'e' || c == 'E') {
      lex.push_back(static_cast<char>(c));
      bump();
      c = look();
      if (c == '+' || c == '-') {
        lex.push_back(static_cast<char>(c));
        bump();
      }
      size_t exp_digits = 0;
      while ((c = look()) != -1 && text::is_digit(static_cast<char>(c))) {
        lex.push_back(static_cast<char>(c));
        bump();
        ++exp_digits;
      }
      if (exp_digits == 0) {
        throw err(SyntaxErrorKind::BadLiteral,
                  "exponent requires at least one digit", at);
      }
      return Literal::typed(lex, xsd::double_type());
    }
    if (has_dot) return Literal::typed(lex, xsd::decimal_type());
    return Literal::typed(lex, xsd::integer_type());
  }

  // ---- state ------------------------------------------------------------------

  bool require_version_;
  std::string buf_;
  uint64_t buf_base_ = 0;
  size_t pos_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
  bool at_eof_ = false;
  bool finished_ = false;
  bool bom_checked_ = false;
  std::optional<SyntaxError> poison_;

  std::map<std::string, std::string> prefixes_;
  std::optional<std::string> base_;
  std::optional<std::string> version_;
  bool any_statement_ = false;
  bool stmts_since_terminator_ = false;
  uint64_t span_start_ = 0;

  std::vector<PQuad> pending_;
  std::vector<std::optional<std::string>> nodes_;
  std::unordered_map<std::string, uint32_t> label_ids_;
};

/// Parses a whole document held in memory; returns its messages in order.
inline std::vector<Message> parse_document(std::string_view text,
                                           ParserOptions options = {}) {
  MessageParser parser(std::move(options));
  std::vector<Message> out;
  auto collect = [&](std::vector<ParserEvent> events) {
    for (ParserEvent& ev : events) {
      if (MessageReady* ready = std::get_if<MessageReady>(&ev)) {
        out.push_back(std::move(ready->message));
      }
    }
  };
  collect(parser.feed(text));
  collect(parser.finish());
  return out;
}

// ---------------------------------------------------------------------------
// Canonical writer.

namespace detail {

inline bool integer_lexical(std::string_view s) {
  size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!text::is_digit(s[i])) return false;
  return true;
}

inline bool decimal_lexical(std::string_view s) {
  size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  size_t dot = s.find('.', i);
  if (dot == std::string_view::npos || dot + 1 >= s.size()) return false;
  for (size_t k = i; k < dot; ++k)
    if (!text::is_digit(s[k])) return false;
  for (size_t k = dot + 1; k < s.size(); ++k)
    if (!text::is_digit(s[k])) return false;
  return true;
}

inline bool double_lexical(std::string_view s) {
  size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  size_t e = s.find_first_of("eE", i);
  if (e == std::string_view::npos) return false;
  std::string_view mantissa = s.substr(i, e - i);
  std::string_view exponent = s.substr(e + 1);
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-'))
    exponent.remove_prefix(1);
  if (exponent.empty()) return false;
  for (char c : exponent)
    if (!text::is_digit(c)) return false;
  size_t dot = mantissa.find('.');
  std::string_view ip = dot == std::string_view::npos
                            ? mantissa
                            : mantissa.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos
                            ? std::string_view{}
                            : mantissa.substr(dot + 1);
  if (ip.empty() && fp.empty()) return false;
  for (char c : ip)
    if (!text::is_digit(c)) return false;
  for (char c : fp)
    if (!text::is_digit(c)) return false;
  return true;
}

/// Local part the conservative prefixed-name emitter accepts: re-lexes
/// identically under the parser above, no escape forms needed.
inline bool safe_pn_local(std::string_view s) {
  if (s.empty()) return true;  // `ex:` is a fine name
  if (!(text::is_alpha(s[0]) || text::is_digit(s[0]) || s[0] == '_'))
    return false;
  if (s.back() == '.') return false;
  for (char c : s) {
    if (!(text::is_alpha(c) || text::is_digit(c) || c == '_' || c == '-' ||
          c == '.'))
      return false;
  }
  return true;
}

class TrigTermWriter {
 public:
  explicit TrigTermWriter(const std::map<std::string, std::string>& prefixes)
      : prefixes_(prefixes) {}

  std::string iri(const Iri& value) const {
    // Longest declared namespace that leaves a cleanly writable local part.
    const std::string& full = value.str();
    size_t best_len = 0;
    const std::string* best_prefix = nullptr;
    for (const auto& [prefix, ns] : prefixes_) {
      if (ns.size() > best_len && full.size() >= ns.size() &&
          full.compare(0, ns.size(), ns) == 0 &&
          safe_pn_local(std::string_view(full).substr(ns.size()))) {
        best_len = ns.size();
        best_prefix = &prefix;
      }
    }
    if (best_prefix) {
      return *best_prefix + ":" + full.substr(best_len);
    }
    return "<" + text::escape_iri(full) + ">";
  }

  std::string predicate(const Iri& value) const {
    if (value == rdf::type_predicate()) return "a";
    return iri(value);
  }

  std::string literal(const Literal& value) const {
    const std::string& lex = value.lexical();
    if (value.datatype() == xsd::integer_type() && integer_lexical(lex))
      return lex;
    if (value.datatype() == xsd::decimal_type() && decimal_lexical(lex))
      return lex;
    if (value.datatype() == xsd::double_type() && double_lexical(lex))
      return lex;
    if (value.datatype() == xsd::boolean_type() &&
        (lex == "true" || lex == "false"))
      return lex;
    std::string out = "\"" + text::escape_string(lex) + "\"";
    if (value.language()) {
      out += "@" + *value.language();
    } else if (value.datatype() != xsd::string_type()) {
      out += "^^" + iri(value.datatype());
    }
    return out;
  }

  std::string term(const Term& value) const {
    if (const Iri* i = std::get_if<Iri>(&value)) return iri(*i);
    if (const BlankNode* b = std::get_if<BlankNode>(&value))
      return "_:" + b->label();
    return literal(std::get<Literal>(value));
  }

  std::string subject(const SubjectName& value) const {
    if (const Iri* i = std::get_if<Iri>(&value)) return iri(*i);
    return "_:" + std::get<BlankNode>(value).label();
  }

  std::string graph(const GraphName& value) const {
    if (const Iri* i = std::get_if<Iri>(&value)) return iri(*i);
    return "_:" + std::get<BlankNode>(value).label();
  }

 private:
  const std::map<std::string, std::string>& prefixes_;
};

inline void write_message_body(CountingSink& sink, const Message& m,
                               const TrigTermWriter& terms) {
  // Default-graph statements first (stored order), then one block per named
  // graph in first-occurrence order, each block's triples in stored order.
  for (const Quad& q : m.quads()) {
    if (!is_default_graph(q.graph)) continue;
    sink.write(terms.subject(q.subject));
    sink.write(" ");
    sink.write(terms.predicate(q.predicate));
    sink.write(" ");
    sink.write(terms.term(q.object));
    sink.write(" .\n");
  }
  std::vector<GraphName> graph_order;
  for (const Quad& q : m.quads()) {
    if (is_default_graph(q.graph)) continue;
    bool seen = false;
    for (const GraphName& g : graph_order) {
      if (g == q.graph) {
        seen = true;
        break;
      }
    }
    if (!seen) graph_order.push_back(q.graph);
  }
  for (const GraphName& g : graph_order) {
    sink.write(terms.graph(g));
    sink.write(" {\n");
    for (const Quad& q : m.quads()) {
      if (q.graph != g) continue;
      sink.write("    ");
      sink.write(terms.subject(q.subject));
      sink.write(" ");
      sink.write(terms.predicate(q.predicate));
      sink.write(" ");
      sink.write(terms.term(q.object));
      sink.write(" .\n");
    }
    sink.write("}\n");
  }
}

}  // namespace detail

/// Writes messages as a canonical TriG-Messages document: the VERSION line,
/// the prefix declarations in name order, then every message terminated by
/// its own `MESSAGE` line.  Returns the number of bytes written.  Blank node
/// labels are written per message and may repeat across messages.
inline uint64_t write_document(
    std::ostream& out, const std::vector<Message>& messages,
    const std::map<std::string, std::string>& prefixes = {}) {
  detail::CountingSink sink(out);
  sink.write("VERSION \"");
  sink.write(kMessagesVersion);
  sink.write("\"\n");
  for (const auto& [prefix, iri] : prefixes) {
    sink.write("@prefix " + prefix + ": <" + text::escape_iri(iri) + "> .\n");
  }
  detail::TrigTermWriter terms(prefixes);
  for (const Message& m : messages) {
    detail::write_message_body(sink, m, terms);
    sink.write("MESSAGE\n");
  }
  return sink.count();
}

/// Writes one message as plain TriG (no VERSION line, no MESSAGE terminator),
/// with prefix declarations.  Used for exporting single messages.
inline uint64_t write_plain_message(
    std::ostream& out, const Message& m,
    const std::map<std::string, std::string>& prefixes = {}) {
  detail::CountingSink sink(out);
  for (const auto& [prefix, iri] : prefixes) {
    sink.write("@prefix " + prefix + ": <" + text::escape_iri(iri) + "> .\n");
  }
  detail::TrigTermWriter terms(prefixes);
  detail::write_message_body(sink, m, terms);
  return sink.count();
}

}  // namespace rdfmsg
