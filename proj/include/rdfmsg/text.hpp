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

// Character classes, escape handling and IRI reference resolution shared by
// the TriG-Messages and N-Quads-Messages syntaxes.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rdfmsg::text {

inline bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_hex(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Bytes >= 0x80 are UTF-8 continuation/lead bytes; names admit them wholesale
// instead of tracking the exact PN_CHARS code point ranges.
inline bool is_name_start(char c) {
  return is_alpha(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_name_char(char c) {
  return is_name_start(c) || is_digit(c) || c == '-';
}

// BLANK_NODE_LABEL ::= (PN_CHARS_U | [0-9]) ((PN_CHARS | '.')* PN_CHARS)?
inline bool valid_blank_label(std::string_view label) {
  if (label.empty()) return false;
  if (!is_name_start(label.front()) && !is_digit(label.front())) return false;
  for (size_t i = 1; i < label.size(); ++i) {
    char c = label[i];
    if (!is_name_char(c) && c != '.') return false;
  }
  return label.back() != '.';
}

// BCP-47 shaped tag: [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
inline bool valid_lang_tag(std::string_view tag) {
  if (tag.empty()) return false;
  size_t i = 0;
  while (i < tag.size() && is_alpha(tag[i])) ++i;
  if (i == 0) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    size_t start = i;
    while (i < tag.size() && (is_alpha(tag[i]) || is_digit(tag[i]))) ++i;
    if (i == start) return false;
  }
  return true;
}

// scheme ::= ALPHA (ALPHA / DIGIT / '+' / '-' / '.')* ':'
inline bool has_scheme(std::string_view iri) {
  if (iri.empty() || !is_alpha(iri.front())) return false;
  for (size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.')
      return false;
  }
  return false;
}

inline bool iri_body_ok(std::string_view iri) {
  if (iri.empty()) return false;
  for (char c : iri) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) return false;
  }
  return true;
}

inline void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

inline void append_u_escape(std::string& out, uint32_t cp) {
  static const char* hex = "0123456789ABCDEF";
  if (cp <= 0xffff) {
    out += "\\u";
    for (int shift = 12; shift >= 0; shift -= 4)
      out.push_back(hex[(cp >> shift) & 0xf]);
  } else {
    out += "\\U";
    for (int shift = 28; shift >= 0; shift -= 4)
      out.push_back(hex[(cp >> shift) & 0xf]);
  }
}

// N-Quads STRING_LITERAL_QUOTE escaping. Mandatory escapes plus \uXXXX for
// the remaining control bytes so every emitted line stays single-line.
inline std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (u < 0x20 || u == 0x7f) {
          append_u_escape(out, u);
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

// IRIREF body escaping: IRIREF excludes #x00-#x20, <, >, ", {, }, |, ^, `, \.
// Our Iri invariant already bans whitespace/control; the printable exclusions
// can still occur (e.g. written via \u escapes) and must be re-escaped.
inline std::string escape_iri(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f || c == '<' || c == '>' || c == '"' ||
        c == '{' || c == '}' || c == '|' || c == '^' || c == '`' ||
        c == '\\') {
      append_u_escape(out, u);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

namespace detail {

struct IriParts {
  std::optional<std::string_view> scheme;
  std::optional<std::string_view> authority;
  std::string_view path;
  std::optional<std::string_view> query;
  std::optional<std::string_view> fragment;
};

inline IriParts split_iri(std::string_view s) {
  IriParts p;
  auto hash = s.find('#');
  if (hash != std::string_view::npos) {
    p.fragment = s.substr(hash + 1);
    s = s.substr(0, hash);
  }
  auto q = s.find('?');
  if (q != std::string_view::npos) {
    p.query = s.substr(q + 1);
    s = s.substr(0, q);
  }
  // Scheme ends at the first ':' that precedes any '/' and looks like one.
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == ':') {
      if (i > 0 && is_alpha(s[0])) {
        p.scheme = s.substr(0, i);
        s = s.substr(i + 1);
      }
      break;
    }
    if (!is_alpha(c) && !is_digit(c) && c != '+' && c != '-' && c != '.') break;
  }
  if (s.size() >= 2 && s[0] == '/' && s[1] == '/') {
    s = s.substr(2);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      p.authority = s;
      s = std::string_view{};
    } else {
      p.authority = s.substr(0, slash);
      s = s.substr(slash);
    }
  }
  p.path = s;
  return p;
}

// RFC 3986 section 5.2.4.
inline std::string remove_dot_segments(std::string_view path) {
  std::string input(path);
  std::string output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.erase(0, 2);
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0) {
      input.erase(0, 3);
      auto pos = output.find_last_of('/');
      output.erase(pos == std::string::npos ? 0 : pos);
    } else if (input == "/..") {
      input = "/";
      auto pos = output.find_last_of('/');
      output.erase(pos == std::string::npos ? 0 : pos);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      size_t start = input.front() == '/' ? 1 : 0;
      auto end = input.find('/', start);
      output += input.substr(0, end == std::string::npos ? input.size() : end);
      input.erase(0, end == std::string::npos ? input.size() : end);
    }
  }
  return output;
}

inline std::string recompose(const IriParts& p) {
  std::string out;
  if (p.scheme) {
    out += *p.scheme;
    out += ':';
  }
  if (p.authority) {
    out += "//";
    out += *p.authority;
  }
  out += p.path;
  if (p.query) {
    out += '?';
    out += *p.query;
  }
  if (p.fragment) {
    out += '#';
    out += *p.fragment;
  }
  return out;
}

}  // namespace detail

// RFC 3986 section 5.2 reference resolution. `base` must be absolute.
inline std::string resolve_iri(std::string_view base, std::string_view ref) {
  using namespace detail;
  IriParts r = split_iri(ref);
  IriParts b = split_iri(base);
  IriParts t;
  if (r.scheme) {
    t.scheme = r.scheme;
    t.authority = r.authority;
    std::string path = remove_dot_segments(r.path);
    t.query = r.query;
    t.fragment = r.fragment;
    t.path = path;
    return recompose(t);
  }
  t.scheme = b.scheme;
  t.fragment = r.fragment;
  std::string path;
  if (r.authority) {
    t.authority = r.authority;
    path = remove_dot_segments(r.path);
    t.query = r.query;
  } else {
    t.authority = b.authority;
    if (r.path.empty()) {
      path = std::string(b.path);
      t.query = r.query ? r.query : b.query;
    } else {
      t.query = r.query;
      if (r.path.front() == '/') {
        path = remove_dot_segments(r.path);
      } else {
        // Merge: base path up to its last slash, then the reference.
        std::string merged;
        if (b.authority && b.path.empty()) {
          merged = "/";
        } else {
          auto pos = b.path.find_last_of('/');
          if (pos != std::string_view::npos)
            merged = std::string(b.path.substr(0, pos + 1));
        }
        merged += r.path;
        path = remove_dot_segments(merged);
      }
    }
  }
  t.path = path;
  return recompose(t);
}

}  // namespace rdfmsg::text

namespace rdfmsg {
using text::resolve_iri;
}  // namespace rdfmsg
