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

// rdfmsg: command-line front end for working with message-bounded RDF
// datasets.  Subcommands: validate, convert, split, log (append / read /
// replay / verify), check-order, skolemize.
//
// Exit statuses are uniform across subcommands:
//   0  success
//   1  the input is well-formed-rejected: syntax error, bad timestamp,
//      ambiguous chronology, ordering violation
//   2  usage error: bad flags, out-of-range sequence number, unusable
//      output directory
//   3  environment trouble: I/O failure, missing or corrupt log

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rdfmsg/rdfmsg.hpp"

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing

/// Serialization formats the CLI understands.  "trigm" is the TriG-based
/// syntax, "nqm" the line-oriented N-Quads-based one.
enum class Format { Trigm, Nqm };

/// Thrown for conditions that are the caller's fault but only detectable
/// after CLI11 parsing (bad --format values resolved from extensions,
/// unusable directories, ...).  Mapped to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "trigm") return Format::Trigm;
  if (name == "nqm") return Format::Nqm;
  return std::nullopt;
}

std::optional<Format> format_from_extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  if (ext == ".trig" || ext == ".trigm") return Format::Trigm;
  if (ext == ".nqm" || ext == ".nq" || ext == ".nquads") return Format::Nqm;
  return std::nullopt;
}

/// Resolve the format for one file.  Precedence: explicit flag, then the
/// file extension, then the RDFMSG_DEFAULT_FORMAT environment variable,
/// then trigm.  `path` may be "-" (stdin/stdout), which has no extension.
Format resolve_format(const std::string& flag, const std::string& path) {
  if (!flag.empty()) {
    if (auto f = format_from_name(flag)) return *f;
    throw UsageError("unknown format '" + flag + "' (expected trigm or nqm)");
  }
  if (path != "-") {
    if (auto f = format_from_extension(path)) return *f;
  }
  if (const char* env = std::getenv("RDFMSG_DEFAULT_FORMAT")) {
    if (auto f = format_from_name(env)) return *f;
    throw UsageError(std::string("RDFMSG_DEFAULT_FORMAT is '") + env +
                     "' (expected trigm or nqm)");
  }
  return Format::Trigm;
}

/// Read a whole input: "-" means stdin, anything else is a file path.
std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    if (std::cin.bad()) throw rdfmsg::IoError("read failed: <stdin>");
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rdfmsg::IoError("cannot open for reading: " + path);
    buf << in.rdbuf();
    if (in.bad()) throw rdfmsg::IoError("read failed: " + path);
  }
  return std::move(buf).str();
}

/// Parsed document plus whatever prefix table the parser ended up with.
/// Prefixes only exist for trigm inputs; converting or re-serializing
/// keeps them so output stays readable.
struct ParsedInput {
  std::vector<rdfmsg::Message> messages;
  std::map<std::string, std::string> prefixes;
};

ParsedInput parse_input(const std::string& text, Format format, bool strict) {
  ParsedInput out;
  if (format == Format::Trigm) {
    rdfmsg::ParserOptions options;
    options.require_version = strict;
    rdfmsg::MessageParser parser(options);
    auto collect = [&](std::vector<rdfmsg::ParserEvent> events) {
      for (rdfmsg::ParserEvent& ev : events) {
        if (auto* ready = std::get_if<rdfmsg::MessageReady>(&ev)) {
          out.messages.push_back(std::move(ready->message));
        }
      }
    };
    collect(parser.feed(text));
    collect(parser.finish());
    out.prefixes = parser.prefixes();
  } else {
    rdfmsg::NqmParserOptions options;
    options.require_version = strict;
    out.messages = rdfmsg::nqm_parse(text, options);
  }
  return out;
}

/// Serialize a document to `path` ("-" means stdout) in `format`.
void write_output(const std::string& path, Format format,
                  const std::vector<rdfmsg::Message>& messages,
                  const std::map<std::string, std::string>& prefixes) {
  auto emit = [&](std::ostream& out) {
    if (format == Format::Trigm) {
      rdfmsg::write_document(out, messages, prefixes);
    } else {
      rdfmsg::nqm_write(out, messages);
    }
    out.flush();
    if (!out) throw rdfmsg::IoError("write failed: " + path);
  };
  if (path == "-") {
    emit(std::cout);
  } else {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw rdfmsg::IoError("cannot open for writing: " + path);
    emit(out);
  }
}

/// Build a chronology profile from the flag set shared by the ordering
/// commands: either --profile FILE (a key=value config) or the individual
/// --chronology-predicate / --version-predicate / --scope flags.
rdfmsg::Profile profile_from_flags(const std::string& profile_path,
                                   const std::string& chronology,
                                   const std::string& version,
                                   const std::string& scope) {
  if (!profile_path.empty()) {
    if (!chronology.empty() || !version.empty()) {
      throw UsageError("--profile conflicts with --chronology-predicate "
                       "and --version-predicate");
    }
    return rdfmsg::parse_profile(read_input(profile_path));
  }
  if (chronology.empty()) {
    throw UsageError("either --chronology-predicate or --profile is required");
  }
  rdfmsg::Profile profile{rdfmsg::Iri(chronology), std::nullopt,
                          rdfmsg::GraphScope::DefaultGraphOnly};
  if (!version.empty()) profile.version_predicate = rdfmsg::Iri(version);
  if (scope == "all") {
    profile.graph_scope = rdfmsg::GraphScope::AllGraphs;
  } else if (!scope.empty() && scope != "default") {
    throw UsageError("unknown --scope '" + scope +
                     "' (expected default or all)");
  }
  return profile;
}

std::string pad_seq(uint64_t seq) {
  std::string digits = std::to_string(seq);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return digits;
}

/// FNV-1a 64-bit over the message's canonical nqm record bytes, as 16 hex
/// digits.  Stable across runs, so hash-derived skolem ids are reproducible.
std::string content_hash(const rdfmsg::Message& m) {
  std::ostringstream record;
  rdfmsg::nqm_write_record(record, m);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : record.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand options

struct ValidateArgs {
  std::string file;
  std::string format;
  bool strict = true;
};

struct ConvertArgs {
  std::string in;
  std::string out;
  std::string from;
  std::string to;
  bool strict = true;
};

struct SplitArgs {
  std::string file;
  std::string format;
  std::string out_dir;
  bool strict = true;
};

struct LogArgs {
  std::string path;
  uint64_t seq = 0;
  std::optional<uint64_t> from;
  std::optional<uint64_t> to;
  std::string pace = "none";
  double speed = 1.0;
  std::string chronology;
  std::string scope;
};

struct CheckOrderArgs {
  std::string file;
  std::string format;
  std::string profile_path;
  std::string chronology;
  std::string version;
  std::string scope;
  bool strict = true;
};

struct SkolemizeArgs {
  std::string file;
  std::string format;
  std::string base;
  std::string id_template = "seq";
  bool strict = true;
};

// ---------------------------------------------------------------------------
// Subcommand bodies

int cmd_validate(const ValidateArgs& args) {
  Format format = resolve_format(args.format, args.file);
  ParsedInput doc =
      parse_input(read_input(args.file), format, args.strict);
  size_t quads = 0;
  size_t empty = 0;
  for (const rdfmsg::Message& m : doc.messages) {
    quads += m.size();
    if (m.empty()) ++empty;
  }
  std::cout << "messages=" << doc.messages.size() << " quads=" << quads
            << " empty=" << empty << "\n";
  return 0;
}

int cmd_convert(const ConvertArgs& args) {
  Format from = resolve_format(args.from, args.in);
  Format to = resolve_format(args.to, args.out);
  ParsedInput doc = parse_input(read_input(args.in), from, args.strict);
  write_output(args.out, to, doc.messages, doc.prefixes);
  return 0;
}

int cmd_split(const SplitArgs& args) {
  Format format = resolve_format(args.format, args.file);
  ParsedInput doc =
      parse_input(read_input(args.file), format, args.strict);

  fs::path dir(args.out_dir);
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      throw UsageError("--out-dir exists and is not a directory: " +
                       args.out_dir);
    }
    if (!fs::is_empty(dir)) {
      throw UsageError("--out-dir is not empty: " + args.out_dir);
    }
  } else {
    fs::create_directories(dir);
  }

  for (size_t i = 0; i < doc.messages.size(); ++i) {
    fs::path file = dir / ("msg-" + pad_seq(i) + ".trig");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw rdfmsg::IoError("cannot open for writing: " +
                                    file.string());
    // Plain TriG, one message per file: no VERSION announcement, no
    // terminator, and no prefix table so an empty message stays an
    // empty file.
    rdfmsg::write_plain_message(out, doc.messages[i]);
    out.flush();
    if (!out) throw rdfmsg::IoError("write failed: " + file.string());
  }
  return 0;
}

rdfmsg::LogOptions log_options(const LogArgs& args) {
  rdfmsg::LogOptions options;
  if (!args.chronology.empty()) {
    rdfmsg::Profile profile{rdfmsg::Iri(args.chronology), std::nullopt,
                            rdfmsg::GraphScope::DefaultGraphOnly};
    if (args.scope == "all") {
      profile.graph_scope = rdfmsg::GraphScope::AllGraphs;
    } else if (!args.scope.empty() && args.scope != "default") {
      throw UsageError("unknown --scope '" + args.scope +
                       "' (expected default or all)");
    }
    options.chronology = std::move(profile);
  }
  return options;
}

int cmd_log_append(const LogArgs& args) {
  rdfmsg::LogOptions options = log_options(args);
  rdfmsg::MessageLog log =
      fs::exists(args.path)
          ? rdfmsg::MessageLog::open(args.path, rdfmsg::LogMode::Write,
                                     options)
          : rdfmsg::MessageLog::create(args.path, options);

  // Stream stdin through the parser chunk by chunk so an arbitrarily long
  // pipe of messages appends in bounded memory.
  rdfmsg::NqmParser parser;
  size_t appended = 0;
  auto take = [&](std::vector<rdfmsg::ParserEvent> events) {
    for (rdfmsg::ParserEvent& ev : events) {
      if (auto* ready = std::get_if<rdfmsg::MessageReady>(&ev)) {
        log.append(ready->message);
        ++appended;
      }
    }
  };
  char buf[1 << 16];
  while (std::cin.read(buf, sizeof buf), std::cin.gcount() > 0) {
    take(parser.feed(
        std::string_view(buf, static_cast<size_t>(std::cin.gcount()))));
  }
  if (std::cin.bad()) throw rdfmsg::IoError("read failed: <stdin>");
  take(parser.finish());

  std::cout << "appended=" << appended
            << " total=" << log.index().size() << "\n";
  return 0;
}

int cmd_log_read(const LogArgs& args) {
  rdfmsg::MessageLog log =
      rdfmsg::MessageLog::open(args.path, rdfmsg::LogMode::Read);
  rdfmsg::Message m = log.read(args.seq);
  rdfmsg::nqm_write_header(std::cout);
  rdfmsg::nqm_write_record(std::cout, m);
  std::cout.flush();
  if (!std::cout) throw rdfmsg::IoError("write failed: <stdout>");
  return 0;
}

int cmd_log_replay(const LogArgs& args) {
  bool pace_chronology;
  if (args.pace == "none") {
    pace_chronology = false;
  } else if (args.pace == "chronology") {
    pace_chronology = true;
  } else {
    throw UsageError("unknown --pace '" + args.pace +
                     "' (expected none or chronology)");
  }
  if (pace_chronology && args.chronology.empty()) {
    throw UsageError("--pace chronology requires --chronology-predicate");
  }
  if (args.speed <= 0.0) {
    throw UsageError("--speed must be positive");
  }

  rdfmsg::LogOptions options = log_options(args);
  rdfmsg::MessageLog log =
      rdfmsg::MessageLog::open(args.path, rdfmsg::LogMode::Read, options);
  rdfmsg::LogReplay replay = log.replay(args.from, args.to);

  rdfmsg::nqm_write_header(std::cout);
  std::cout.flush();
  std::optional<rdfmsg::Instant> previous;
  while (std::optional<rdfmsg::Message> m = replay.next()) {
    if (pace_chronology) {
      std::optional<rdfmsg::Instant> now =
          rdfmsg::extract_instant(*m, *options.chronology);
      if (now && previous && *previous < *now) {
        double seconds =
            static_cast<double>(now->seconds - previous->seconds) +
            (static_cast<double>(now->nanos) -
             static_cast<double>(previous->nanos)) /
                1e9;
        std::this_thread::sleep_for(
            std::chrono::duration<double>(seconds / args.speed));
      }
      if (now) previous = now;
    }
    // One flush per message, right after its terminator, so a consumer on
    // the other end of the pipe sees whole messages as they happen.
    rdfmsg::nqm_write_record(std::cout, *m);
    std::cout.flush();
    if (!std::cout) throw rdfmsg::IoError("write failed: <stdout>");
  }
  return 0;
}

int cmd_log_verify(const LogArgs& args) {
  rdfmsg::MessageLog log = rdfmsg::MessageLog::open(
      args.path, rdfmsg::LogMode::Read, log_options(args));
  log.verify();
  std::cout << "ok messages=" << log.index().size() << "\n";
  return 0;
}

int cmd_check_order(const CheckOrderArgs& args) {
  rdfmsg::Profile profile = profile_from_flags(
      args.profile_path, args.chronology, args.version, args.scope);
  Format format = resolve_format(args.format, args.file);
  ParsedInput doc =
      parse_input(read_input(args.file), format, args.strict);

  std::vector<rdfmsg::OrderViolation> violations =
      rdfmsg::check_order(doc.messages, profile, rdfmsg::OrderKey::Chronology);
  if (profile.version_predicate) {
    std::vector<rdfmsg::OrderViolation> more =
        rdfmsg::check_order(doc.messages, profile, rdfmsg::OrderKey::Version);
    violations.insert(violations.end(), more.begin(), more.end());
  }
  for (const rdfmsg::OrderViolation& v : violations) {
    std::cout << "(" << v.earlier_seq << ", " << v.later_seq << ", "
              << v.earlier.lexical << ", " << v.later.lexical << ")\n";
  }
  return violations.empty() ? 0 : 1;
}

int cmd_skolemize(const SkolemizeArgs& args) {
  if (args.id_template != "seq" && args.id_template != "hash") {
    throw UsageError("unknown --id-template '" + args.id_template +
                     "' (expected seq or hash)");
  }
  Format format = resolve_format(args.format, args.file);
  ParsedInput doc =
      parse_input(read_input(args.file), format, args.strict);

  std::vector<rdfmsg::Message> out;
  out.reserve(doc.messages.size());
  for (size_t i = 0; i < doc.messages.size(); ++i) {
    std::string id = args.id_template == "seq" ? pad_seq(i)
                                               : content_hash(doc.messages[i]);
    out.push_back(rdfmsg::skolemize(doc.messages[i], args.base, id));
  }
  write_output("-", format, out, doc.prefixes);
  return 0;
}

// ---------------------------------------------------------------------------
// Wiring

/// Run a subcommand body and fold every failure mode into the documented
/// exit statuses.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const rdfmsg::SyntaxError& e) {
    std::cerr << "rdfmsg: syntax error at line " << e.line() << ", column "
              << e.column() << ": " << rdfmsg::to_string(e.kind()) << ": "
              << e.text() << "\n";
    return 1;
  } catch (const rdfmsg::OutOfRangeError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 2;
  } catch (const rdfmsg::UnorderedInputError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::AmbiguousTimestampError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::BadDatetimeError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::InvalidIriError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::InvalidLabelError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::InvalidLiteralError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::InvalidBaseError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::MixedScopeError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 1;
  } catch (const rdfmsg::IndexCorruptError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  } catch (const rdfmsg::NotFoundError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  } catch (const rdfmsg::AlreadyExistsError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  } catch (const rdfmsg::IoError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  } catch (const rdfmsg::SinkError& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  } catch (const rdfmsg::Error& e) {
    // Residual library errors (malformed profile config, ...) are caller
    // mistakes, not data or environment failures.
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "rdfmsg: " << e.what() << "\n";
    return 3;
  }
}

void add_strict_flag(CLI::App* cmd, bool& strict) {
  cmd->add_flag("--strict-version,!--no-strict-version", strict,
                "require the version announcement (default: required)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work with message-bounded RDF datasets."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);
  app.footer(
      "Exit status (all subcommands):\n"
      "  0  success\n"
      "  1  input rejected: syntax error, bad timestamp, ordering violation\n"
      "  2  usage error, including out-of-range sequence numbers\n"
      "  3  I/O failure, missing log, or corruption");

  ValidateArgs validate_args;
  CLI::App* validate =
      app.add_subcommand("validate", "parse a document and report its shape");
  validate->add_option("file", validate_args.file, "input file, or - for stdin")
      ->required();
  validate->add_option("--format", validate_args.format,
                       "input format: trigm or nqm");
  add_strict_flag(validate, validate_args.strict);

  ConvertArgs convert_args;
  CLI::App* convert =
      app.add_subcommand("convert", "re-serialize a document across formats");
  convert->add_option("in", convert_args.in, "input file, or - for stdin")
      ->required();
  convert->add_option("out", convert_args.out, "output file, or - for stdout")
      ->required();
  convert->add_option("--from", convert_args.from,
                      "input format: trigm or nqm");
  convert->add_option("--to", convert_args.to, "output format: trigm or nqm");
  add_strict_flag(convert, convert_args.strict);

  SplitArgs split_args;
  CLI::App* split = app.add_subcommand(
      "split", "write each message to its own plain TriG file");
  split->add_option("file", split_args.file, "input file, or - for stdin")
      ->required();
  split->add_option("--format", split_args.format,
                    "input format: trigm or nqm");
  split->add_option("--out-dir", split_args.out_dir,
                    "directory for msg-<seq>.trig files (created if missing; "
                    "must be empty if present)")
      ->required();
  add_strict_flag(split, split_args.strict);

  LogArgs log_args;
  CLI::App* log = app.add_subcommand("log", "operate on an append-only log");
  log->require_subcommand(1);

  CLI::App* log_append = log->add_subcommand(
      "append", "append every message read from stdin (nqm)");
  CLI::App* log_read =
      log->add_subcommand("read", "print one message as an nqm document");
  CLI::App* log_replay = log->add_subcommand(
      "replay", "stream a range of messages to stdout as nqm");
  CLI::App* log_verify = log->add_subcommand(
      "verify", "re-derive the index and compare it to the stored one");
  for (CLI::App* sub : {log_append, log_read, log_replay, log_verify}) {
    sub->add_option("logpath", log_args.path, "log data file")->required();
    sub->add_option("--chronology-predicate", log_args.chronology,
                    "predicate whose xsd:dateTime object timestamps a "
                    "message");
    sub->add_option("--scope", log_args.scope,
                    "where to look for timestamps: default or all");
  }
  log_read->add_option("--seq", log_args.seq, "sequence number to read")
      ->required();
  log_replay->add_option("--from", log_args.from,
                         "first sequence number (default: start of log)");
  log_replay->add_option("--to", log_args.to,
                         "last sequence number, inclusive (default: end)");
  log_replay->add_option("--pace", log_args.pace,
                         "none (default) or chronology: sleep between "
                         "messages proportional to their timestamp deltas");
  log_replay->add_option("--speed", log_args.speed,
                         "chronology pace divisor (2.0 = twice as fast)");

  CheckOrderArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check-order", "verify chronological order across a document");
  check->add_option("file", check_args.file, "input file, or - for stdin")
      ->required();
  check->add_option("--format", check_args.format,
                    "input format: trigm or nqm");
  check->add_option("--profile", check_args.profile_path,
                    "profile config file (chronology=, version=, scope=)");
  check->add_option("--chronology-predicate", check_args.chronology,
                    "predicate whose xsd:dateTime object timestamps a "
                    "message");
  check->add_option("--version-predicate", check_args.version,
                    "optional second predicate that must also be monotone");
  check->add_option("--scope", check_args.scope,
                    "where to look for timestamps: default or all");
  add_strict_flag(check, check_args.strict);

  SkolemizeArgs skolem_args;
  CLI::App* skolem = app.add_subcommand(
      "skolemize", "replace blank nodes with well-known genid IRIs");
  skolem->add_option("file", skolem_args.file, "input file, or - for stdin")
      ->required();
  skolem->add_option("--format", skolem_args.format,
                     "input format: trigm or nqm");
  skolem->add_option("--base", skolem_args.base,
                     "base IRI for /.well-known/genid/ skolem IRIs")
      ->required();
  skolem->add_option("--id-template", skolem_args.id_template,
                     "message id scheme: seq (zero-padded index, default) "
                     "or hash (content hash)");
  add_strict_flag(skolem, skolem_args.strict);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*validate) return guarded([&] { return cmd_validate(validate_args); });
  if (*convert) return guarded([&] { return cmd_convert(convert_args); });
  if (*split) return guarded([&] { return cmd_split(split_args); });
  if (*log_append) return guarded([&] { return cmd_log_append(log_args); });
  if (*log_read) return guarded([&] { return cmd_log_read(log_args); });
  if (*log_replay) return guarded([&] { return cmd_log_replay(log_args); });
  if (*log_verify) return guarded([&] { return cmd_log_verify(log_args); });
  if (*check) return guarded([&] { return cmd_check_order(check_args); });
  if (*skolem) return guarded([&] { return cmd_skolemize(skolem_args); });
  return 2;
}
