/* JSON readers and writers for the domain objects: Cartan matrices, group
   specs, ordered simplicial complexes, crossed actions, cosheaf scenarios,
   group functions, and Hecke term maps.  Readers throw ParseError naming
   the offending field; numeric entries are exact (integers, or [num, den]
   pairs in characteristic zero). */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "buildings/cartan.hpp"
#include "buildings/cosheaf.hpp"
#include "buildings/coxeter.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/hecke.hpp"
#include "buildings/measure.hpp"
#include "buildings/simplicial.hpp"

namespace buildings::json_io {

using Json = nlohmann::ordered_json;

/* {"matrix": [[2,-1],[-1,2]]} */
cartan::GeneralizedCartanMatrix parse_cartan(const Json& j);

/* {"kind":"gl","n":2,"q":2} | {"kind":"table","mul":[[...]]} |
   {"kind":"perm","degree":3,"gens":[[1,0,2],[0,2,1]]}; the gl kind also
   carries its BN-pair. */
struct GroupSpec {
  fingroup::GroupPtr group;
  std::shared_ptr<const fingroup::BNPairData> bn;
};
GroupSpec parse_group(const Json& j);

/* "gl:2,2" as used by --group flags. */
std::pair<int, long long> parse_gl_token(const std::string& token);

/* {"complex": [[[0],[1]], [[0,1]]]}: nondegenerate simplices per
   dimension as ordered vertex tuples. */
simplicial::SimplicialSet parse_complex(const Json& j);

/* {"trivial": true} or {"generators": [{"on": [[...], ...],
   "r": [[[...]], ...]}, ...]} with one entry per preferred group
   generator, each in the per-dimension, per-simplex layout. */
simplicial::CrossedAction parse_action(const Json& j,
                                       const simplicial::SimplicialSet& x,
                                       const fingroup::GroupPtr& g);

/* {"kind":"trivial"} | {"kind":"regular"} | {"kind":"matrices",
   "matrices": [row-major entries per generator]}. */
cosheaf::GModule parse_module(const Json& j, const fingroup::GroupPtr& g,
                              long long characteristic);

/* The cosheaf scenario: group, tree, action, vertex subgroups as
   element-index lists, optional module, field characteristic. */
struct CosheafScenario {
  fingroup::GroupPtr group;
  std::shared_ptr<const fingroup::BNPairData> bn;
  simplicial::SimplicialSet tree;
  simplicial::CrossedAction action;
  std::vector<fingroup::Subgroup> vertex_subgroups;
  std::optional<cosheaf::GModule> module;
  long long characteristic = 0;
};
CosheafScenario parse_cosheaf_scenario(const Json& j);

/* Exact scalar: integer in characteristic p, [numerator, denominator]
   otherwise. */
Json field_scalar_json(const FieldScalar& v);

/* {"support": [[index, numerator, denominator], ...]} in characteristic
   zero, {"support": [[index, residue], ...]} otherwise. */
Json group_function_json(const fingroup::FiniteGroup& g,
                         const measure::GroupFunction& f);

/* {"terms": [{"word": [...], "monomials": [[exponents, coefficient],
   ...], "str": "..."}], "str": "..."} */
Json hecke_element_json(const coxeter::CoxeterSystem& sys,
                        const hecke::HeckeElement& a);

/* Comma-separated generator indices; empty or blank means the identity. */
std::vector<int> parse_word_csv(const std::string& text);

Json load_json_file(const std::string& path);

}  // namespace buildings::json_io
