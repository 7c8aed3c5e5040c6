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

// Append-only message log: a line-oriented messages document on disk plus a
// sidecar index (data path + ".idx") mapping each sequence number to the
// byte range of its record.  The terminator line is the commit point: a
// message is durable exactly when its index line is complete, and the data
// bytes are always flushed before the index line is written, so a crash can
// only ever lose the tail that was never acknowledged.
//
// A data file without a sidecar index is treated as an imported document:
// it is parsed whole, a record ending at end-of-file without a terminator
// is adopted as the final message, and opening for write materializes the
// missing terminator and builds the index.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rdfmsg/errors.hpp"
#include "rdfmsg/message.hpp"
#include "rdfmsg/nquads.hpp"
#include "rdfmsg/profiles.hpp"
#include "rdfmsg/stream.hpp"

namespace rdfmsg {

enum class LogMode { Read, Write };

struct LogOptions {
  /// Re-derive the whole index from the data on open and compare it to the
  /// stored one, failing with IndexCorruptError on any mismatch.
  bool paranoid = false;
  /// When set, every index record carries the message's chronology instant
  /// (its lexical form) as a fifth column.  Verification compares the
  /// column, so verify a log with the same profile it was written with.
  std::optional<Profile> chronology;
};

/// One line of the sidecar index.  Record byte ranges tile the data file:
/// the first record starts where the header region ends and each further
/// record starts where its predecessor ends.  The length includes the
/// record's terminator line.
struct IndexRecord {
  uint64_t seq = 0;
  uint64_t offset = 0;
  uint64_t length = 0;
  uint64_t quad_count = 0;
  std::optional<std::string> timestamp;
};

namespace detail {

inline constexpr std::string_view kIndexMagic = "#rdfmlog-index v1\n";

struct ParsedLog {
  std::vector<Message> messages;
  std::vector<ByteSpan> spans;
};

/// Parses a whole messages document, keeping the byte span of each record.
inline ParsedLog parse_log_bytes(std::string_view bytes) {
  NqmParser parser;
  ParsedLog out;
  auto collect = [&](std::vector<ParserEvent> events) {
    for (ParserEvent& ev : events) {
      if (MessageReady* ready = std::get_if<MessageReady>(&ev)) {
        out.messages.push_back(std::move(ready->message));
        out.spans.push_back(ready->span);
      }
    }
  };
  collect(parser.feed(bytes));
  collect(parser.finish());
  return out;
}

inline std::string read_whole_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return std::move(buf).str();
}

inline std::string format_index_line(const IndexRecord& r) {
  std::string line = std::to_string(r.seq);
  line += '\t';
  line += std::to_string(r.offset);
  line += '\t';
  line += std::to_string(r.length);
  line += '\t';
  line += std::to_string(r.quad_count);
  if (r.timestamp) {
    line += '\t';
    line += *r.timestamp;
  }
  line += '\n';
  return line;
}

inline uint64_t parse_index_number(std::string_view field,
                                   const std::string& path) {
  if (field.empty()) {
    throw IndexCorruptError("empty numeric field in index: " + path);
  }
  uint64_t value = 0;
  for (char c : field) {
    if (c < '0' || c > '9') {
      throw IndexCorruptError("non-numeric index field '" +
                              std::string(field) + "' in " + path);
    }
    uint64_t digit = static_cast<uint64_t>(c - '0');
    if (value > (UINT64_MAX - digit) / 10) {
      throw IndexCorruptError("index field out of range in " + path);
    }
    value = value * 10 + digit;
  }
  return value;
}

}  // namespace detail

/// Pull-based reader over a range of log records.  Holds its own file
/// handle and a copy of the relevant index slice, so it stays valid
/// independently of the log object; memory use is bounded by the largest
/// single message.
class LogReplay {
 public:
  /// The next message of the range, or nothing once it is exhausted.
  std::optional<Message> next() {
    if (at_ >= records_.size()) return std::nullopt;
    if (!in_.is_open()) {
      in_.open(path_, std::ios::binary);
      if (!in_) throw IoError("cannot open for reading: " + path_);
    }
    const IndexRecord& r = records_[at_++];
    in_.seekg(static_cast<std::streamoff>(r.offset));
    std::string bytes(r.length, '\0');
    in_.read(bytes.data(), static_cast<std::streamsize>(r.length));
    if (static_cast<uint64_t>(in_.gcount()) != r.length) {
      throw IoError("short read of record " + std::to_string(r.seq) +
                    " from " + path_);
    }
    NqmParserOptions options{.require_version = false};
    std::vector<Message> parsed = nqm_parse(bytes, options);
    if (parsed.size() != 1) {
      throw IndexCorruptError("record " + std::to_string(r.seq) + " of " +
                              path_ + " does not hold exactly one message");
    }
    return std::move(parsed.front());
  }

 private:
  friend class MessageLog;
  LogReplay(std::string path, std::vector<IndexRecord> records)
      : path_(std::move(path)), records_(std::move(records)) {}

  std::string path_;
  std::vector<IndexRecord> records_;
  size_t at_ = 0;
  std::ifstream in_;
};

class MessageLog {
 public:
  MessageLog(const MessageLog&) = delete;
  MessageLog& operator=(const MessageLog&) = delete;
  MessageLog(MessageLog&&) = default;
  MessageLog& operator=(MessageLog&&) = default;

  /// Creates a fresh, empty log.  The data path must not exist yet.
  static MessageLog create(const std::string& path, LogOptions options = {}) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) {
      throw AlreadyExistsError("log already exists: " + path);
    }
    MessageLog log(path, LogMode::Write, std::move(options));
    log.data_out_.open(path, std::ios::binary);
    if (!log.data_out_) throw IoError("cannot create: " + path);
    log.header_end_ = nqm_write_header(log.data_out_);
    log.data_out_.flush();
    if (!log.data_out_) throw IoError("write failed: " + path);
    log.data_end_ = log.header_end_;
    log.index_out_.open(log.index_path_, std::ios::binary | std::ios::trunc);
    if (!log.index_out_) {
      throw IoError("cannot create: " + log.index_path_);
    }
    log.index_out_ << detail::kIndexMagic;
    log.index_out_.flush();
    if (!log.index_out_) throw IoError("write failed: " + log.index_path_);
    return log;
  }

  /// Opens an existing log.  With a sidecar index, torn tails (an
  /// incomplete final index line, or index records pointing past the end of
  /// the data) are uncommitted: read mode hides them, write mode truncates
  /// both files back to the last committed record.  Without a sidecar
  /// index the data file is imported as a document; see the file comment.
  static MessageLog open(const std::string& path, LogMode mode,
                         LogOptions options = {}) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw NotFoundError("no such log: " + path);
    MessageLog log(path, mode, std::move(options));
    uint64_t data_size = fs::file_size(path);
    if (fs::exists(log.index_path_)) {
      log.open_indexed(data_size);
    } else {
      log.open_import(data_size);
    }
    if (log.options_.paranoid) log.verify();
    if (mode == LogMode::Write) log.open_write_streams();
    return log;
  }

  /// Appends one message and returns its sequence number.  Once this
  /// returns, the message survives reopening; on failure the log is left
  /// consistent (the record is simply not committed).
  uint64_t append(const Message& m) {
    if (mode_ != LogMode::Write) {
      throw IoError("log is opened read-only: " + data_path_);
    }
    IndexRecord r;
    r.seq = records_.size();
    r.offset = data_end_;
    r.quad_count = m.size();
    if (options_.chronology) {
      if (std::optional<Instant> t = extract_instant(m, *options_.chronology))
        r.timestamp = t->lexical;
    }
    std::ostringstream record;
    // Byte ranges tile, so stray bytes past the last record (trailing
    // comments of an imported document) are charged to this one.
    r.length = gap_ + nqm_write_record(record, m);

    // The record's bytes must be on disk before its index line: whatever
    // the index acknowledges must be readable after any crash.
    data_out_ << record.str();
    data_out_.flush();
    if (!data_out_) throw IoError("append failed: " + data_path_);
    index_out_ << detail::format_index_line(r);
    index_out_.flush();
    if (!index_out_) throw IoError("append failed: " + index_path_);

    data_end_ += r.length;
    gap_ = 0;
    records_.push_back(std::move(r));
    return records_.back().seq;
  }

  /// Reads one message by sequence number, touching only its byte range.
  Message read(uint64_t seq) const {
    if (seq >= records_.size()) {
      throw OutOfRangeError("no record " + std::to_string(seq) + " in log " +
                            data_path_ + " (" +
                            std::to_string(records_.size()) + " messages)");
    }
    const IndexRecord& r = records_[seq];
    std::ifstream in(data_path_, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + data_path_);
    in.seekg(static_cast<std::streamoff>(r.offset));
    std::string bytes(r.length, '\0');
    in.read(bytes.data(), static_cast<std::streamsize>(r.length));
    if (static_cast<uint64_t>(in.gcount()) != r.length) {
      throw IoError("short read of record " + std::to_string(seq) + " from " +
                    data_path_);
    }
    NqmParserOptions options{.require_version = false};
    std::vector<Message> parsed = nqm_parse(bytes, options);
    if (parsed.size() != 1) {
      throw IndexCorruptError("record " + std::to_string(seq) + " of " +
                              data_path_ +
                              " does not hold exactly one message");
    }
    return std::move(parsed.front());
  }

  /// Replays the inclusive range [from, to], by default the whole log.
  LogReplay replay(std::optional<uint64_t> from = std::nullopt,
                   std::optional<uint64_t> to = std::nullopt) const {
    if (records_.empty()) {
      if (from || to) {
        throw OutOfRangeError("log " + data_path_ + " is empty");
      }
      return LogReplay(data_path_, {});
    }
    uint64_t first = from.value_or(0);
    uint64_t last = to.value_or(records_.size() - 1);
    if (first >= records_.size() || last >= records_.size() || first > last) {
      throw OutOfRangeError(
          "bad replay range [" + std::to_string(first) + ", " +
          std::to_string(last) + "] for log with " +
          std::to_string(records_.size()) + " messages");
    }
    std::vector<IndexRecord> slice(records_.begin() + first,
                                   records_.begin() + last + 1);
    return LogReplay(data_path_, std::move(slice));
  }

  uint64_t message_count() const { return records_.size(); }
  const std::vector<IndexRecord>& index() const { return records_; }
  const std::string& data_path() const { return data_path_; }
  const std::string& index_path() const { return index_path_; }
  LogMode mode() const { return mode_; }

  /// Re-derives the index from the committed region of the data file and
  /// compares it record-by-record with the one in memory.  Timestamps are
  /// compared only when the log was opened with a chronology profile.
  void verify() const {
    if (records_.empty()) return;
    uint64_t committed_end = records_.back().offset + records_.back().length;
    std::string bytes = detail::read_whole_file(data_path_);
    if (bytes.size() < committed_end) {
      throw IndexCorruptError("index of " + data_path_ +
                              " extends past the end of the data");
    }
    bytes.resize(committed_end);
    detail::ParsedLog parsed;
    try {
      parsed = detail::parse_log_bytes(bytes);
    } catch (const SyntaxError& e) {
      throw IndexCorruptError("data of " + data_path_ +
                              " does not parse as indexed: " + e.what());
    }
    if (parsed.messages.size() != records_.size()) {
      throw IndexCorruptError(
          "index of " + data_path_ + " lists " +
          std::to_string(records_.size()) + " messages but the data holds " +
          std::to_string(parsed.messages.size()));
    }
    for (size_t k = 0; k < records_.size(); ++k) {
      const IndexRecord& r = records_[k];
      const ByteSpan& span = parsed.spans[k];
      std::optional<std::string> timestamp;
      if (options_.chronology) {
        if (std::optional<Instant> t =
                extract_instant(parsed.messages[k], *options_.chronology))
          timestamp = t->lexical;
      }
      bool timestamps_agree =
          !options_.chronology || timestamp == r.timestamp;
      if (span.start != r.offset || span.end != r.offset + r.length ||
          parsed.messages[k].size() != r.quad_count || !timestamps_agree) {
        throw IndexCorruptError("index record " + std::to_string(k) + " of " +
                                data_path_ + " does not match the data");
      }
    }
  }

 private:
  MessageLog(std::string path, LogMode mode, LogOptions options)
      : data_path_(std::move(path)),
        index_path_(data_path_ + ".idx"),
        mode_(mode),
        options_(std::move(options)) {}

  /// Loads and validates the sidecar index, then drops whatever the data
  /// file can no longer back (the crash-torn tail).
  void open_indexed(uint64_t data_size) {
    std::string contents = detail::read_whole_file(index_path_);
    if (contents.compare(0, detail::kIndexMagic.size(),
                         detail::kIndexMagic) != 0) {
      throw IndexCorruptError("bad index magic in " + index_path_);
    }
    size_t pos = detail::kIndexMagic.size();
    while (pos < contents.size()) {
      size_t nl = contents.find('\n', pos);
      if (nl == std::string::npos) {
        // Incomplete final line: the record was never acknowledged.
        index_torn_ = true;
        break;
      }
      std::string_view line(contents.data() + pos, nl - pos);
      pos = nl + 1;
      records_.push_back(parse_index_line(line));
    }
    // Records the data file cannot back in full were lost to a crash; they
    // are uncommitted, indistinguishable from never-written.
    while (!records_.empty() &&
           records_.back().offset + records_.back().length > data_size) {
      records_.pop_back();
      index_torn_ = true;
    }
    if (!records_.empty()) {
      header_end_ = records_.front().offset;
      data_end_ = records_.back().offset + records_.back().length;
      data_truncate_needed_ = data_end_ < data_size;
    } else {
      header_end_ = data_size;
      data_end_ = data_size;
      if (mode_ == LogMode::Write) recover_empty_log();
    }
  }

  IndexRecord parse_index_line(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      fields.push_back(line.substr(
          start, tab == std::string_view::npos ? line.size() - start
                                               : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4 && fields.size() != 5) {
      throw IndexCorruptError("index line with " +
                              std::to_string(fields.size()) + " fields in " +
                              index_path_);
    }
    IndexRecord r;
    r.seq = detail::parse_index_number(fields[0], index_path_);
    r.offset = detail::parse_index_number(fields[1], index_path_);
    r.length = detail::parse_index_number(fields[2], index_path_);
    r.quad_count = detail::parse_index_number(fields[3], index_path_);
    if (fields.size() == 5) r.timestamp = std::string(fields[4]);
    if (r.seq != records_.size()) {
      throw IndexCorruptError("index record out of sequence in " +
                              index_path_ + ": expected seq " +
                              std::to_string(records_.size()) + ", found " +
                              std::to_string(r.seq));
    }
    if (r.length < 8) {  // smallest possible record is "MESSAGE\n"
      throw IndexCorruptError("impossible record length " +
                              std::to_string(r.length) + " in " +
                              index_path_);
    }
    if (!records_.empty() &&
        r.offset != records_.back().offset + records_.back().length) {
      throw IndexCorruptError("record byte ranges do not tile in " +
                              index_path_ + " at seq " +
                              std::to_string(r.seq));
    }
    return r;
  }

  /// Write-mode recovery for a log whose index holds no committed record:
  /// the data must be an empty document.  Complete orphan records (flushed
  /// data whose crash preceded the index line) are cut away; a torn header
  /// is rewritten outright, since the committed state is "empty" anyway.
  void recover_empty_log() {
    namespace fs = std::filesystem;
    std::string bytes = detail::read_whole_file(data_path_);
    bool reset = false;
    try {
      detail::ParsedLog parsed = detail::parse_log_bytes(bytes);
      if (!parsed.spans.empty()) {
        fs::resize_file(data_path_, parsed.spans.front().start);
        header_end_ = parsed.spans.front().start;
        data_end_ = header_end_;
      }
    } catch (const SyntaxError&) {
      reset = true;
    }
    if (reset) {
      std::ofstream out(data_path_, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot rewrite: " + data_path_);
      header_end_ = nqm_write_header(out);
      out.flush();
      if (!out) throw IoError("write failed: " + data_path_);
      data_end_ = header_end_;
    }
  }

  /// A data file with no sidecar index: an imported document.  The byte
  /// spans of its records become the index; a final record closed by
  /// end-of-file instead of a terminator line is adopted as-is.
  void open_import(uint64_t data_size) {
    std::string bytes = detail::read_whole_file(data_path_);
    detail::ParsedLog parsed = detail::parse_log_bytes(bytes);
    records_.reserve(parsed.messages.size());
    for (size_t k = 0; k < parsed.messages.size(); ++k) {
      IndexRecord r;
      r.seq = k;
      r.offset = parsed.spans[k].start;
      r.length = parsed.spans[k].end - parsed.spans[k].start;
      r.quad_count = parsed.messages[k].size();
      if (options_.chronology) {
        if (std::optional<Instant> t =
                extract_instant(parsed.messages[k], *options_.chronology))
          r.timestamp = t->lexical;
      }
      records_.push_back(std::move(r));
    }
    header_end_ = records_.empty() ? data_size : records_.front().offset;
    data_end_ = records_.empty()
                    ? data_size
                    : records_.back().offset + records_.back().length;
    // Comment or blank lines after the final terminator sit outside every
    // record; they will be absorbed into the byte range of the next
    // appended record, the same way the parser tiles spans.
    gap_ = bytes.size() - data_end_;

    if (mode_ == LogMode::Write) {
      if (!records_.empty()) materialize_terminator(bytes);
      index_rewrite_needed_ = true;
    }
  }

  /// Write-mode import: make sure the data ends in a complete terminator
  /// line, so appends start a fresh record.  The final record may be closed
  /// by end-of-file (no terminator at all) or end in a terminator line that
  /// lacks its newline; both get the missing bytes appended, on the final
  /// record's account.
  void materialize_terminator(const std::string& bytes) {
    std::string_view record(bytes.data() + records_.back().offset,
                            records_.back().length);
    bool final_newline = !record.empty() && record.back() == '\n';
    std::string_view body = record;
    if (final_newline) body.remove_suffix(1);
    size_t nl = body.rfind('\n');
    std::string_view last_line =
        nl == std::string_view::npos ? body : body.substr(nl + 1);
    bool terminated =
        last_line.size() >= 7 && last_line.compare(0, 7, "MESSAGE") == 0 &&
        (last_line.size() == 7 || last_line[7] == ' ' ||
         last_line[7] == '\t' || last_line[7] == '#' || last_line[7] == '\r');
    std::string missing;
    if (terminated) {
      if (!final_newline) missing = "\n";
    } else {
      missing = final_newline ? "MESSAGE\n" : "\nMESSAGE\n";
    }
    if (missing.empty()) return;
    std::ofstream out(data_path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot open for appending: " + data_path_);
    out << missing;
    out.flush();
    if (!out) throw IoError("write failed: " + data_path_);
    records_.back().length += missing.size();
    data_end_ += missing.size();
  }

  /// Puts both files into their committed shape and opens append streams.
  void open_write_streams() {
    namespace fs = std::filesystem;
    if (data_truncate_needed_) fs::resize_file(data_path_, data_end_);
    if (index_torn_ || index_rewrite_needed_) {
      std::ofstream out(index_path_, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot rewrite: " + index_path_);
      out << detail::kIndexMagic;
      for (const IndexRecord& r : records_) {
        out << detail::format_index_line(r);
      }
      out.flush();
      if (!out) throw IoError("write failed: " + index_path_);
    }
    data_out_.open(data_path_, std::ios::binary | std::ios::app);
    if (!data_out_) throw IoError("cannot open for appending: " + data_path_);
    index_out_.open(index_path_, std::ios::binary | std::ios::app);
    if (!index_out_) {
      throw IoError("cannot open for appending: " + index_path_);
    }
  }

  std::string data_path_;
  std::string index_path_;
  LogMode mode_;
  LogOptions options_;
  std::vector<IndexRecord> records_;
  uint64_t header_end_ = 0;
  uint64_t data_end_ = 0;
  uint64_t gap_ = 0;
  bool index_torn_ = false;
  bool index_rewrite_needed_ = false;
  bool data_truncate_needed_ = false;
  std::ofstream data_out_;
  std::ofstream index_out_;
};

}  // namespace rdfmsg
