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

// Shared sample documents: a single sensor observation message that mixes
// the default graph with a blank-node-named graph, and a three-message
// sensor log whose middle message is an empty heartbeat. Hand-built Message
// twins of both serve as frozen expected values.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdfmsg/message.hpp"
#include "rdfmsg/term.hpp"

namespace fixtures {

using namespace rdfmsg;

inline const std::string kProv = "http://www.w3.org/ns/prov#";
inline const std::string kSosa = "http://www.w3.org/ns/sosa/";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kEx = "http://example.org/";

inline Iri sosa(const std::string& local) { return Iri(kSosa + local); }
inline Iri prov(const std::string& local) { return Iri(kProv + local); }
inline Iri ex(const std::string& local) { return Iri(kEx + local); }

inline std::map<std::string, std::string> sample_prefixes() {
  return {{"prov", kProv}, {"sosa", kSosa}, {"xsd", kXsd}, {"ex", kEx}};
}

// One message: a default-graph provenance quad about a blank node that also
// names a graph holding the observation itself.
inline std::string observation_message_trig() {
  return
      "VERSION \"1.2-messages\"\n"
      "@prefix prov: <http://www.w3.org/ns/prov#> .\n"
      "@prefix sosa: <http://www.w3.org/ns/sosa/> .\n"
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
      "@prefix ex: <http://example.org/> .\n"
      "_:b0 prov:generatedAtTime \"2026-01-30T10:05:34Z\"^^xsd:dateTime .\n"
      "_:b0 {  ex:Observation1 a sosa:Observation ;\n"
      "          sosa:resultTime \"2026-01-30T09:52:30Z\"^^xsd:dateTime ;\n"
      "          sosa:hasSimpleResult 21.4 . }\n";
}

inline Message observation_message() {
  BlankNode b0("b0");
  SubjectName obs = ex("Observation1");
  std::vector<Quad> quads;
  quads.emplace_back(b0, prov("generatedAtTime"),
                     Literal::typed("2026-01-30T10:05:34Z",
                                    xsd::date_time_type()),
                     DefaultGraph{});
  quads.emplace_back(obs, rdf::type_predicate(), sosa("Observation"), b0);
  quads.emplace_back(obs, sosa("resultTime"),
                     Literal::typed("2026-01-30T09:52:30Z",
                                    xsd::date_time_type()),
                     b0);
  quads.emplace_back(obs, sosa("hasSimpleResult"),
                     Literal::typed("21.4", xsd::decimal_type()), b0);
  return new_message(std::move(quads));
}

// Three messages: observation, empty heartbeat, newer observation. The
// blank node label b0 is deliberately reused across messages.
inline std::string sensor_log_trig() {
  return
      "VERSION \"1.2-messages\"\n"
      "@prefix sosa: <http://www.w3.org/ns/sosa/> .\n"
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
      "_:b0 sosa:resultTime \"2026-05-12T18:20:00Z\"^^xsd:dateTime ;\n"
      "    sosa:hasSimpleResult 22 .\n"
      "MESSAGE # an empty message, e.g., a heartbeat\n"
      "MESSAGE # the third message is another observation\n"
      "_:b0 sosa:resultTime \"2026-05-12T18:25:00Z\"^^xsd:dateTime ;\n"
      "    sosa:hasSimpleResult 23 .\n";
}

inline Message sensor_reading(const std::string& instant,
                              const std::string& value) {
  BlankNode b0("b0");
  std::vector<Quad> quads;
  quads.emplace_back(b0, sosa("resultTime"),
                     Literal::typed(instant, xsd::date_time_type()),
                     DefaultGraph{});
  quads.emplace_back(b0, sosa("hasSimpleResult"),
                     Literal::typed(value, xsd::integer_type()),
                     DefaultGraph{});
  return new_message(std::move(quads));
}

inline std::vector<Message> sensor_log_messages() {
  return {sensor_reading("2026-05-12T18:20:00Z", "22"), Message{},
          sensor_reading("2026-05-12T18:25:00Z", "23")};
}

// The same log transcribed into the line-oriented format.
inline std::string sensor_log_nqm() {
  return
      "VERSION \"1.2-messages\"\n"
      "_:b0 <http://www.w3.org/ns/sosa/resultTime> "
      "\"2026-05-12T18:20:00Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime> "
      ".\n"
      "_:b0 <http://www.w3.org/ns/sosa/hasSimpleResult> "
      "\"22\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
      "MESSAGE\n"
      "MESSAGE\n"
      "_:b0 <http://www.w3.org/ns/sosa/resultTime> "
      "\"2026-05-12T18:25:00Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime> "
      ".\n"
      "_:b0 <http://www.w3.org/ns/sosa/hasSimpleResult> "
      "\"23\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n";
}

inline std::string observation_message_nqm() {
  return
      "VERSION \"1.2-messages\"\n"
      "_:b0 <http://www.w3.org/ns/prov#generatedAtTime> "
      "\"2026-01-30T10:05:34Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime> "
      ".\n"
      "<http://example.org/Observation1> "
      "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
      "<http://www.w3.org/ns/sosa/Observation> _:b0 .\n"
      "<http://example.org/Observation1> "
      "<http://www.w3.org/ns/sosa/resultTime> "
      "\"2026-01-30T09:52:30Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime> "
      "_:b0 .\n"
      "<http://example.org/Observation1> "
      "<http://www.w3.org/ns/sosa/hasSimpleResult> "
      "\"21.4\"^^<http://www.w3.org/2001/XMLSchema#decimal> _:b0 .\n"
      "MESSAGE\n";
}

}  // namespace fixtures
