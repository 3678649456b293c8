/* Scenario dispatch: one canonical JSON document describes a computation
   (a 'kind' field plus kind-specific inputs), and run() routes it to the
   owning module and returns the finished report.  The report digest is
   taken over the canonical serialization of the scenario, so equal
   scenarios yield byte-identical reports.  Both the command-line tool and
   the python bindings go through this entry point. */

#pragma once

#include "buildings/json_io.hpp"
#include "buildings/report.hpp"

namespace buildings::scenario {

using Json = json_io::Json;

/* Dispatch by scenario kind: spherical | weyl-ball | davis |
   resolution-check | hecke-mul | involution | spherical-hecke |
   cosheaf-homology | tree-resolution | verify-idempotents.
   ParseError on a missing or unknown kind or malformed inputs;
   module errors surface verbatim. */
report::Report run(const Json& scenario);

}  // namespace buildings::scenario
