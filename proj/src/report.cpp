/* Report assembly and rendering.  The text form is produced by a generic
   walk of the JSON document, so the two renderings cannot drift apart. */

#include "buildings/report.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "buildings/errors.hpp"

namespace buildings::report {

namespace {

constexpr const char* SCHEMA = "buildings-report/1";

/* Scalars and flat arrays inline; nested structures indent. */
void walk(const Json& j, const std::string& key, int depth,
          std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const bool flat =
      j.is_array() &&
      std::all_of(j.begin(), j.end(), [](const Json& v) {
        return v.is_primitive() ||
               (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& w) {
                  return w.is_primitive();
                }));
      });
  if (j.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, v] : j.items()) walk(v, k, depth + 1, out);
  } else if (j.is_array() && !flat) {
    out << pad << key << ":\n";
    int i = 0;
    for (const auto& v : j) walk(v, "- " + std::to_string(i++), depth + 1, out);
  } else if (j.is_string()) {
    out << pad << key << " = " << j.get<std::string>() << "\n";
  } else {
    out << pad << key << " = " << j.dump() << "\n";
  }
}

}  // namespace

std::string Report::kind() const {
  return doc.contains("kind") ? doc["kind"].get<std::string>() : "";
}

std::string Report::verdict() const {
  return doc.contains("verdict") ? doc["verdict"].get<std::string>() : "";
}

Report make_report(const std::string& kind, const std::string& digest,
                   const std::string& verdict, Json data, Json witnesses) {
  Report r;
  r.doc = Json::object();
  r.doc["schema"] = SCHEMA;
  r.doc["kind"] = kind;
  r.doc["digest"] = digest;
  r.doc["verdict"] = verdict;
  r.doc["data"] = std::move(data);
  r.doc["witnesses"] = std::move(witnesses);
  return r;
}

std::string emit_json(const Report& r) { return r.doc.dump(2) + "\n"; }

std::string emit_text(const Report& r) {
  std::ostringstream out;
  for (const auto& [k, v] : r.doc.items()) {
    if (k == "schema") continue;
    walk(v, k, 0, out);
  }
  out << "elapsed_ms: " << std::fixed << std::setprecision(1)
      << r.seconds * 1000.0 << "\n";
  return out.str();
}

Report parse_report(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("report is not valid JSON");
  if (!doc.is_object() || !doc.contains("schema") ||
      doc["schema"] != SCHEMA)
    throw ParseError("report does not carry the expected schema marker");
  for (const char* field : {"kind", "digest", "verdict", "data", "witnesses"})
    if (!doc.contains(field))
      throw ParseError(std::string("report lacks the '") + field + "' field");
  Report r;
  r.doc = std::move(doc);
  return r;
}

std::string digest_of(const std::string& canonical) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace buildings::report
