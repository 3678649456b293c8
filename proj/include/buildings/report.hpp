/* Reproducible run reports.  A report is a schema-versioned JSON document
   (kind, input digest, verdict, data tables, failure witnesses) plus the
   wall time of the run.  The JSON rendering is byte-stable for identical
   inputs -- timing appears only in the text rendering -- and every dumped
   report reparses into an equal value. */

#pragma once

#include <string>

#include "json.hpp"

namespace buildings::report {

using Json = nlohmann::ordered_json;

struct Report {
  Json doc;
  double seconds = 0.0;  // text rendering only

  bool operator==(const Report& o) const { return doc == o.doc; }
  bool operator!=(const Report& o) const { return doc != o.doc; }

  std::string kind() const;
  std::string verdict() const;  // "pass" | "fail" | "info"
  bool failed() const { return verdict() == "fail"; }
};

Report make_report(const std::string& kind, const std::string& digest,
                   const std::string& verdict, Json data,
                   Json witnesses = Json::array());

/* Stable two-space-indented JSON, newline terminated. */
std::string emit_json(const Report& r);
/* Key/value walk of the same document plus an elapsed-time line. */
std::string emit_text(const Report& r);
/* Inverse of emit_json; ParseError on malformed or wrong-schema input. */
Report parse_report(const std::string& text);

/* FNV-1a 64 over the canonical scenario serialization, as "fnv1a:hex". */
std::string digest_of(const std::string& canonical);

}  // namespace buildings::report
