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

// Line-oriented quad serialization with explicit message boundaries
// ("N-Quads-Messages", extension .nqm): a `VERSION "1.2-messages"` first
// line, standard N-Quads statements one per line, and bare `MESSAGE` lines
// that terminate messages.  Every line is classifiable by its first token
// alone (VERSION, MESSAGE, '#', or a quad), which makes the format the
// natural choice for logs and wire streams that downstream text tools may
// need to split without a full parser.
//
// The parser consumes byte chunks of arbitrary size and needs only one line
// of lookahead: a line is acted on as soon as its newline arrives.  The
// terminator semantics and per-message blank-node scoping are identical to
// the TriG variant.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/message.hpp"
#include "rdfmsg/stream.hpp"
#include "rdfmsg/term.hpp"
#include "rdfmsg/text.hpp"

namespace rdfmsg {

struct NqmParserOptions {
  /// Require the `VERSION "1.2-messages"` announcement as the first line.
  /// When false, plain N-Quads parses as a single message; a VERSION line
  /// is still honored and validated if present.
  bool require_version = true;
};

/// Incremental N-Quads-Messages parser.  Single-owner: calls to
/// feed()/finish() must be serialized by the caller.  Emitted Messages are
/// immutable and may be shared across threads freely.
class NqmParser {
 public:
  explicit NqmParser(NqmParserOptions options = {})
      : require_version_(options.require_version) {}

  /// Consumes a chunk of input.  Returns zero or more MessageReady events —
  /// one per terminator line the chunk completes — followed by a
  /// NeedMoreInput marker.  Incomplete trailing lines stay buffered.
  std::vector<ParserEvent> feed(std::string_view chunk) {
    if (finished_) throw Error("feed() called after finish()");
    if (poison_) throw *poison_;
    buf_.append(chunk.data(), chunk.size());
    std::vector<ParserEvent> events;
    drain(events);
    events.emplace_back(NeedMoreInput{});
    return events;
  }

  /// Declares end of input.  A trailing message that has quad lines after
  /// the last terminator is emitted even without a final MESSAGE line.
  /// Idempotent; later calls return just EndOfLog again.
  std::vector<ParserEvent> finish() {
    if (poison_) throw *poison_;
    std::vector<ParserEvent> events;
    if (finished_) {
      events.emplace_back(EndOfLog{});
      return events;
    }
    at_eof_ = true;
    drain(events);
    if (!buf_.empty()) {
      // Final line without a trailing newline.
      handle_line(buf_, total_size(), events);
      buf_base_ += buf_.size();
      buf_.clear();
    }
    if (require_version_ && !version_) {
      throw poison(SyntaxError(SyntaxErrorKind::VersionMissing,
                               "input ended without a VERSION announcement",
                               line_no_, 1, total_size()));
    }
    if (stmts_since_terminator_) commit_message(events, total_size());
    finished_ = true;
    events.emplace_back(EndOfLog{});
    return events;
  }

  /// Quads buffered for the message still being read.  Bounded by the
  /// largest single message, never by the document.
  size_t pending_quad_count() const { return pending_.size(); }

  const std::optional<std::string>& version() const { return version_; }

 private:
  uint64_t total_size() const { return buf_base_ + buf_.size(); }

  SyntaxError poison(SyntaxError e) {
    poison_ = e;
    return e;
  }

  void drain(std::vector<ParserEvent>& events) {
    if (!bom_checked_ && buf_base_ == 0) {
      if (buf_.size() < 3 && !at_eof_) {
        // Could still turn out to be a byte-order mark; wait for the rest.
        if (std::string_view("\xEF\xBB\xBF").substr(0, buf_.size()) == buf_)
          return;
      }
      if (buf_.size() >= 3 && buf_.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        buf_.erase(0, 3);
        buf_base_ = 3;
        span_start_ = 3;
      }
      bom_checked_ = true;
    }
    size_t nl;
    while ((nl = buf_.find('\n')) != std::string::npos) {
      std::string_view line(buf_.data(), nl);
      handle_line(line, buf_base_ + nl + 1, events);
      buf_.erase(0, nl + 1);
      buf_base_ += nl + 1;
    }
  }

  /// One complete line, newline already excluded from the view.  line_end is
  /// the document offset just past the line, including its newline when
  /// there is one; spans always cover the raw bytes.
  void handle_line(std::string_view line, uint64_t line_end,
                   std::vector<ParserEvent>& events) {
    ++line_no_;
    uint64_t line_start = buf_base_;  // lines always begin the buffer
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    size_t i = 0;
    auto fail = [&](SyntaxErrorKind kind, std::string text,
                    size_t at) -> SyntaxError {
      return poison(SyntaxError(kind, std::move(text), line_no_,
                                static_cast<uint32_t>(at + 1),
                                line_start + at));
    };

    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) return;  // blank line
    if (line[i] == '#') return;    // comment line

    size_t word_end = i;
    while (word_end < line.size() && line[word_end] != ' ' &&
           line[word_end] != '\t')
      ++word_end;
    std::string_view word = line.substr(i, word_end - i);

    if (word == "VERSION") {
      parse_version_line(line, i, line_end, fail);
      return;
    }
    if (word == "MESSAGE") {
      require_version_first(fail, i);
      i = word_end;
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != '#') {
        throw fail(SyntaxErrorKind::UnexpectedToken,
                   "unexpected token after MESSAGE", i);
      }
      seen_statement_ = true;
      commit_message(events, line_end);
      return;
    }

    require_version_first(fail, i);
    parse_quad_line(line, i, fail);
    seen_statement_ = true;
    stmts_since_terminator_ = true;
  }

  template <typename Fail>
  void require_version_first(Fail&& fail, size_t at) {
    if (require_version_ && !version_) {
      throw fail(SyntaxErrorKind::VersionMissing,
                 "first line must announce VERSION \"" +
                     std::string(kMessagesVersion) + "\"",
                 at);
    }
  }

  template <typename Fail>
  void parse_version_line(std::string_view line, size_t i, uint64_t line_end,
                          Fail&& fail) {
    if (version_) {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "VERSION announced more than once", i);
    }
    if (seen_statement_) {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "VERSION must precede every other line", i);
    }
    i += 7;  // VERSION
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] != '"') {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "VERSION expects a quoted version string", i);
    }
    size_t open = i++;
    std::string text;
    while (i < line.size() && line[i] != '"') text.push_back(line[i++]);
    if (i >= line.size()) {
      throw fail(SyntaxErrorKind::BadLiteral,
                 "line ended inside the VERSION string", open);
    }
    ++i;  // closing quote
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i < line.size() && line[i] != '#') {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "unexpected token after VERSION", i);
    }
    if (text != kMessagesVersion) {
      throw fail(SyntaxErrorKind::VersionUnsupported,
                 "unsupported version \"" + text + "\" (expected \"" +
                     std::string(kMessagesVersion) + "\")",
                 open);
    }
    version_ = text;
    span_start_ = line_end;
  }

  void commit_message(std::vector<ParserEvent>& events, uint64_t span_end) {
    events.emplace_back(MessageReady{new_message(std::move(pending_)),
                                     {span_start_, span_end}});
    pending_.clear();
    stmts_since_terminator_ = false;
    span_start_ = span_end;
  }

  // ---- one N-Quads statement ----------------------------------------------

  template <typename Fail>
  void parse_quad_line(std::string_view s, size_t i, Fail&& fail) {
    auto ws = [&] {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };

    SubjectName subject = [&]() -> SubjectName {
      if (i < s.size() && s[i] == '<') return lex_iriref(s, i, fail);
      if (i < s.size() && s[i] == '_') return lex_blank(s, i, fail);
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "expected a subject (IRI or blank node)", i);
    }();
    ws();

    if (i < s.size() && s[i] == '_') {
      throw fail(SyntaxErrorKind::PredicateBlankNode,
                 "a blank node cannot be used as predicate", i);
    }
    if (i >= s.size() || s[i] != '<') {
      throw fail(SyntaxErrorKind::UnexpectedToken, "expected a predicate IRI",
                 i);
    }
    Iri predicate = lex_iriref(s, i, fail);
    ws();

    Term object = [&]() -> Term {
      if (i < s.size() && s[i] == '<') return lex_iriref(s, i, fail);
      if (i < s.size() && s[i] == '_') return lex_blank(s, i, fail);
      if (i < s.size() && s[i] == '"') return lex_literal(s, i, fail);
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "expected an object (IRI, blank node, or literal)", i);
    }();
    ws();

    GraphName graph = DefaultGraph{};
    if (i < s.size() && s[i] == '<') {
      graph = lex_iriref(s, i, fail);
      ws();
    } else if (i < s.size() && s[i] == '_') {
      graph = lex_blank(s, i, fail);
      ws();
    }

    if (i >= s.size() || s[i] != '.') {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "quad line must end with '.'", i);
    }
    ++i;
    ws();
    if (i < s.size()) {
      // Quad lines stay strictly standard N-Quads; even comments would make
      // them unsplittable by naive text tools.
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 s[i] == '#' ? "comments are not allowed after a quad"
                             : "unexpected token after '.'",
                 i);
    }

    pending_.emplace_back(std::move(subject), std::move(predicate),
                          std::move(object), std::move(graph));
  }

  template <typename Fail>
  uint32_t lex_ucs(std::string_view s, size_t& i, size_t digits,
                   size_t token_start, SyntaxErrorKind kind, Fail&& fail) {
    uint32_t cp = 0;
    for (size_t k = 0; k < digits; ++k) {
      if (i >= s.size() || !text::is_hex(s[i])) {
        throw fail(kind, "bad numeric escape", token_start);
      }
      cp = cp * 16 + static_cast<uint32_t>(text::hex_value(s[i++]));
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw fail(kind, "numeric escape is not a Unicode scalar value",
                 token_start);
    }
    return cp;
  }

  template <typename Fail>
  Iri lex_iriref(std::string_view s, size_t& i, Fail&& fail) {
    size_t at = i;
    ++i;  // '<'
    std::string body;
    while (true) {
      if (i >= s.size()) {
        throw fail(SyntaxErrorKind::BadIri, "line ended inside an IRI", at);
      }
      char c = s[i];
      if (c == '>') {
        ++i;
        break;
      }
      if (c == '\\') {
        ++i;
        if (i < s.size() && s[i] == 'u') {
          ++i;
          text::append_utf8(body, lex_ucs(s, i, 4, at,
                                          SyntaxErrorKind::BadIri, fail));
        } else if (i < s.size() && s[i] == 'U') {
          ++i;
          text::append_utf8(body, lex_ucs(s, i, 8, at,
                                          SyntaxErrorKind::BadIri, fail));
        } else {
          throw fail(SyntaxErrorKind::BadIri,
                     "only \\u and \\U escapes are allowed in IRIs", at);
        }
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
          c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        throw fail(SyntaxErrorKind::BadIri,
                   "whitespace or forbidden character in IRI", at);
      }
      body.push_back(c);
      ++i;
    }
    if (!text::has_scheme(body)) {
      throw fail(SyntaxErrorKind::BadIri,
                 "IRI <" + body + "> must be absolute", at);
    }
    try {
      return Iri(body);
    } catch (const InvalidIriError& e) {
      throw fail(SyntaxErrorKind::BadIri, e.what(), at);
    }
  }

  template <typename Fail>
  BlankNode lex_blank(std::string_view s, size_t& i, Fail&& fail) {
    size_t at = i;
    ++i;  // '_'
    if (i >= s.size() || s[i] != ':') {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "expected ':' after '_' in blank node label", at);
    }
    ++i;
    std::string label;
    while (i < s.size()) {
      char c = s[i];
      if (c == '.') {
        // A dot is part of the label only when label characters follow.
        if (i + 1 < s.size() &&
            (text::is_name_char(s[i + 1]) || s[i + 1] == '.')) {
          label.push_back('.');
          ++i;
          continue;
        }
        break;
      }
      if (!text::is_name_char(c)) break;
      label.push_back(c);
      ++i;
    }
    if (!text::valid_blank_label(label)) {
      throw fail(SyntaxErrorKind::UnexpectedToken,
                 "malformed blank node label '_:" + label + "'", at);
    }
    return BlankNode(label);
  }

  template <typename Fail>
  Literal lex_literal(std::string_view s, size_t& i, Fail&& fail) {
    size_t at = i;
    ++i;  // opening '"'
    std::string value;
    while (true) {
      if (i >= s.size()) {
        throw fail(SyntaxErrorKind::BadLiteral, "line ended inside a string",
                   at);
      }
      char c = s[i];
      if (c == '"') {
        ++i;
        break;
      }
      if (c == '\\') {
        ++i;
        if (i >= s.size()) {
          throw fail(SyntaxErrorKind::BadLiteral,
                     "line ended inside a string escape", at);
        }
        switch (s[i]) {
          case 't': value.push_back('\t'); ++i; break;
          case 'b': value.push_back('\b'); ++i; break;
          case 'n': value.push_back('\n'); ++i; break;
          case 'r': value.push_back('\r'); ++i; break;
          case 'f': value.push_back('\f'); ++i; break;
          case '"': value.push_back('"'); ++i; break;
          case '\'': value.push_back('\''); ++i; break;
          case '\\': value.push_back('\\'); ++i; break;
          case 'u':
            ++i;
            text::append_utf8(value, lex_ucs(s, i, 4, at,
                                             SyntaxErrorKind::BadLiteral,
                                             fail));
            break;
          case 'U':
            ++i;
            text::append_utf8(value, lex_ucs(s, i, 8, at,
                                             SyntaxErrorKind::BadLiteral,
                                             fail));
            break;
          default:
            throw fail(SyntaxErrorKind::BadLiteral,
                       std::string("unknown string escape '\\") + s[i] + "'",
                       at);
        }
        continue;
      }
      value.push_back(c);
      ++i;
    }

    if (i < s.size() && s[i] == '@') {
      size_t tag_at = i++;
      std::string tag;
      while (i < s.size() &&
             (text::is_alpha(s[i]) || text::is_digit(s[i]) || s[i] == '-'))
        tag.push_back(s[i++]);
      if (!text::valid_lang_tag(tag)) {
        throw fail(SyntaxErrorKind::BadLiteral,
                   "malformed language tag '@" + tag + "'", tag_at);
      }
      return Literal::lang(value, tag);
    }
    if (i + 1 < s.size() && s[i] == '^' && s[i + 1] == '^') {
      i += 2;
      if (i >= s.size() || s[i] != '<') {
        throw fail(SyntaxErrorKind::BadIri, "expected a datatype IRI", i);
      }
      size_t dt_at = i;
      Iri datatype = lex_iriref(s, i, fail);
      try {
        return Literal::typed(value, datatype);
      } catch (const InvalidLiteralError& e) {
        throw fail(SyntaxErrorKind::BadLiteral, e.what(), dt_at);
      }
    }
    return Literal::plain(value);
  }

  // ---- state ----------------------------------------------------------------

  bool require_version_;
  std::string buf_;
  uint64_t buf_base_ = 0;
  uint32_t line_no_ = 0;
  uint64_t span_start_ = 0;
  bool bom_checked_ = false;
  bool at_eof_ = false;
  bool finished_ = false;
  bool seen_statement_ = false;
  bool stmts_since_terminator_ = false;
  std::optional<std::string> version_;
  std::optional<SyntaxError> poison_;
  std::vector<Quad> pending_;
};

/// Parses a complete in-memory document.
inline std::vector<Message> nqm_parse(std::string_view text,
                                      NqmParserOptions options = {}) {
  NqmParser parser(options);
  std::vector<Message> out;
  auto collect = [&](std::vector<ParserEvent> events) {
    for (ParserEvent& ev : events) {
      if (MessageReady* r = std::get_if<MessageReady>(&ev)) {
        out.push_back(std::move(r->message));
      }
    }
  };
  collect(parser.feed(text));
  collect(parser.finish());
  return out;
}

// ---------------------------------------------------------------------------
// Writer.  Output is a pure function of the message sequence: quads in
// stored order, one per line, every message closed with MESSAGE.

/// One N-Quads statement for the quad, without the trailing newline.
inline std::string nqm_quad_line(const Quad& q) {
  std::string line = to_nquads(q.subject);
  line += ' ';
  line += to_nquads(q.predicate);
  line += ' ';
  line += to_nquads(q.object);
  if (const Iri* g = std::get_if<Iri>(&q.graph)) {
    line += ' ';
    line += to_nquads(*g);
  } else if (const BlankNode* b = std::get_if<BlankNode>(&q.graph)) {
    line += ' ';
    line += to_nquads(*b);
  }
  line += " .";
  return line;
}

/// Writes the VERSION line.  Returns the bytes written.
inline uint64_t nqm_write_header(std::ostream& out) {
  detail::CountingSink sink(out);
  sink.write("VERSION \"");
  sink.write(kMessagesVersion);
  sink.write("\"\n");
  return sink.count();
}

/// Writes one message record: its quad lines and the MESSAGE terminator.
/// Returns the bytes written.
inline uint64_t nqm_write_record(std::ostream& out, const Message& m) {
  detail::CountingSink sink(out);
  for (const Quad& q : m.quads()) {
    sink.write(nqm_quad_line(q));
    sink.write("\n");
  }
  sink.write("MESSAGE\n");
  return sink.count();
}

/// Writes a whole document.  Returns the bytes written.
inline uint64_t nqm_write(std::ostream& out,
                          const std::vector<Message>& messages) {
  uint64_t count = nqm_write_header(out);
  for (const Message& m : messages) count += nqm_write_record(out, m);
  return count;
}

}  // namespace rdfmsg
