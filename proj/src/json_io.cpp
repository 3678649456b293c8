/* JSON parsing with field-by-field validation.  Every reader names the
   missing or malformed field in its ParseError so CLI users can fix
   scenario files without reading source. */

#include "buildings/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace buildings::json_io {

namespace {

const Json& need(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw ParseError(std::string("missing field '") + field + "'");
  return j[field];
}

long long need_int(const Json& j, const char* field) {
  const Json& v = need(j, field);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + field + "' must be an integer");
  return v.get<long long>();
}

std::vector<int> int_vector(const Json& j, const std::string& what) {
  if (!j.is_array())
    throw ParseError(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw ParseError(what + " must contain only integers");
    out.push_back(v.get<int>());
  }
  return out;
}

/* An exact entry: integer, or [numerator, denominator]. */
Rational rational_entry(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
      j[1].is_number_integer())
    return Rational(BigInt(j[0].get<long long>()), BigInt(j[1].get<long long>()));
  throw ParseError(what + " must be an integer or a [numerator, denominator] pair");
}

long long checked_characteristic(const Json& j) {
  if (!j.contains("field")) return 0;
  return need_int(need(j, "field"), "characteristic");
}

}  // namespace

cartan::GeneralizedCartanMatrix parse_cartan(const Json& j) {
  const Json& m = need(j, "matrix");
  if (!m.is_array() || m.empty())
    throw ParseError("field 'matrix' must be a nonempty array of rows");
  std::vector<std::vector<long long>> rows;
  for (const auto& row : m) {
    if (!row.is_array())
      throw ParseError("field 'matrix' must contain integer rows");
    std::vector<long long> r;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw ParseError("field 'matrix' must contain only integers");
      r.push_back(v.get<long long>());
    }
    rows.push_back(std::move(r));
  }
  return cartan::GeneralizedCartanMatrix(rows);
}

GroupSpec parse_group(const Json& j) {
  const Json& kind = need(j, "kind");
  GroupSpec spec;
  if (kind == "gl") {
    const auto bn = fingroup::gl_n_fq(static_cast<int>(need_int(j, "n")),
                                      need_int(j, "q"));
    spec.bn = std::make_shared<fingroup::BNPairData>(bn);
    spec.group = spec.bn->group;
  } else if (kind == "table") {
    const Json& mul = need(j, "mul");
    std::vector<std::vector<int>> table;
    for (const auto& row : mul) table.push_back(int_vector(row, "field 'mul' row"));
    spec.group = fingroup::group_from_table(table);
  } else if (kind == "perm") {
    const int degree = static_cast<int>(need_int(j, "degree"));
    std::vector<std::vector<int>> gens;
    for (const auto& g : need(j, "gens"))
      gens.push_back(int_vector(g, "field 'gens' entry"));
    spec.group = fingroup::group_from_permutations(degree, gens);
  } else {
    throw ParseError("group kind must be 'gl', 'table', or 'perm'");
  }
  return spec;
}

std::pair<int, long long> parse_gl_token(const std::string& token) {
  // gl:N,Q
  if (token.rfind("gl:", 0) != 0)
    throw ParseError("group token must look like gl:2,2");
  const auto comma = token.find(',', 3);
  if (comma == std::string::npos)
    throw ParseError("group token must look like gl:2,2");
  try {
    const int n = std::stoi(token.substr(3, comma - 3));
    const long long q = std::stoll(token.substr(comma + 1));
    return {n, q};
  } catch (const std::exception&) {
    throw ParseError("group token must look like gl:2,2");
  }
}

simplicial::SimplicialSet parse_complex(const Json& j) {
  const Json& c = need(j, "complex");
  if (!c.is_array() || c.empty())
    throw ParseError("field 'complex' must be a nonempty array of dimensions");
  std::vector<std::vector<std::vector<int>>> by_dim;
  for (const auto& dim : c) {
    std::vector<std::vector<int>> simplices;
    if (!dim.is_array())
      throw ParseError("each dimension of 'complex' must be an array");
    for (const auto& s : dim)
      simplices.push_back(int_vector(s, "simplex vertex tuple"));
    by_dim.push_back(std::move(simplices));
  }
  return simplicial::SimplicialSet::from_ordered_complex(by_dim);
}

simplicial::CrossedAction parse_action(const Json& j,
                                       const simplicial::SimplicialSet& x,
                                       const fingroup::GroupPtr& g) {
  if (j.is_object() && j.contains("trivial") && j["trivial"] == true)
    return simplicial::trivial_action(x, g);
  const Json& gens = need(j, "generators");
  if (!gens.is_array() || gens.size() != g->generators().size())
    throw ParseError("field 'generators' must list one action per group generator");
  std::vector<std::vector<std::vector<int>>> gen_on;
  std::vector<std::vector<std::vector<std::vector<int>>>> gen_r;
  for (const auto& entry : gens) {
    const Json& on = need(entry, "on");
    std::vector<std::vector<int>> on_k;
    for (const auto& dim : on)
      on_k.push_back(int_vector(dim, "field 'on' dimension"));
    gen_on.push_back(std::move(on_k));
    const Json& r = need(entry, "r");
    std::vector<std::vector<std::vector<int>>> r_k;
    for (const auto& dim : r) {
      std::vector<std::vector<int>> r_n;
      if (!dim.is_array())
        throw ParseError("field 'r' must nest per dimension and simplex");
      for (const auto& perm : dim)
        r_n.push_back(int_vector(perm, "field 'r' permutation"));
      r_k.push_back(std::move(r_n));
    }
    gen_r.push_back(std::move(r_k));
  }
  return simplicial::action_from_generators(x, g, gen_on, gen_r);
}

cosheaf::GModule parse_module(const Json& j, const fingroup::GroupPtr& g,
                              long long characteristic) {
  const Json& kind = need(j, "kind");
  if (kind == "trivial") return cosheaf::trivial_module(g, characteristic);
  if (kind == "regular") return cosheaf::regular_module(g, characteristic);
  if (kind != "matrices")
    throw ParseError("module kind must be 'trivial', 'regular', or 'matrices'");
  const Json& mats = need(j, "matrices");
  if (!mats.is_array() || mats.size() != g->generators().size())
    throw ParseError("field 'matrices' must list one matrix per group generator");
  std::vector<FMat> generator_images;
  for (const auto& m : mats) {
    if (!m.is_array() || m.empty())
      throw ParseError("each module matrix must be a nonempty array of rows");
    const std::size_t d = m.size();
    FMat fm(d, d, FieldScalar::zero(characteristic));
    for (std::size_t r = 0; r < d; ++r) {
      if (!m[r].is_array() || m[r].size() != d)
        throw ParseError("module matrices must be square");
      for (std::size_t c = 0; c < d; ++c)
        fm.at(r, c) = FieldScalar::from_rational(
            characteristic, rational_entry(m[r][c], "module matrix entry"));
    }
    generator_images.push_back(std::move(fm));
  }
  return cosheaf::GModule(g, characteristic, generator_images);
}

CosheafScenario parse_cosheaf_scenario(const Json& j) {
  const auto spec = parse_group(need(j, "group"));
  const long long characteristic = checked_characteristic(j);
  auto tree = parse_complex(need(j, "tree"));
  auto action = parse_action(need(j, "action"), tree, spec.group);
  const Json& subs = need(j, "vertex_subgroups");
  if (!subs.is_array() ||
      static_cast<int>(subs.size()) != tree.count(0))
    throw ParseError("field 'vertex_subgroups' must list one subgroup per vertex");
  std::vector<fingroup::Subgroup> vertex_subgroups;
  for (const auto& sub : subs)
    vertex_subgroups.emplace_back(
        spec.group, int_vector(sub, "vertex subgroup element list"));
  CosheafScenario s{spec.group,
                    spec.bn,
                    std::move(tree),
                    std::move(action),
                    std::move(vertex_subgroups),
                    std::nullopt,
                    characteristic};
  if (j.contains("module"))
    s.module = parse_module(j["module"], s.group, s.characteristic);
  return s;
}

Json field_scalar_json(const FieldScalar& v) {
  if (v.characteristic() != 0)
    return Json(v.value().num().convert_to<long long>());
  return Json::array({v.value().num().convert_to<long long>(),
                      v.value().den().convert_to<long long>()});
}

Json group_function_json(const fingroup::FiniteGroup& g,
                         const measure::GroupFunction& f) {
  Json support = Json::array();
  for (int x = 0; x < g.order(); ++x) {
    const auto& v = f.values[static_cast<std::size_t>(x)];
    if (v.is_zero()) continue;
    if (f.characteristic == 0)
      support.push_back(Json::array({x, v.value().num().convert_to<long long>(),
                                     v.value().den().convert_to<long long>()}));
    else
      support.push_back(Json::array({x, v.value().num().convert_to<long long>()}));
  }
  Json out = Json::object();
  out["support"] = std::move(support);
  return out;
}

Json hecke_element_json(const coxeter::CoxeterSystem& sys,
                        const hecke::HeckeElement& a) {
  Json terms = Json::array();
  for (const auto& [w, c] : a.terms) {
    Json monomials = Json::array();
    for (const auto& [e, coeff] : c.terms())
      monomials.push_back(Json::array({Json(e), Json(coeff.convert_to<long long>())}));
    Json term = Json::object();
    term["word"] = w;
    term["monomials"] = std::move(monomials);
    term["str"] = c.str();
    terms.push_back(std::move(term));
  }
  Json out = Json::object();
  out["terms"] = std::move(terms);
  out["str"] = hecke::hecke_str(sys, a);
  return out;
}

std::vector<int> parse_word_csv(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    // allow surrounding blanks and a wholly empty word
    std::string digits;
    for (char ch : token)
      if (!std::isspace(static_cast<unsigned char>(ch))) digits += ch;
    if (digits.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("word entries must be generator indices, got '" + token + "'");
    }
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ParseError("'" + path + "' is not valid JSON");
  return j;
}

}  // namespace buildings::json_io
