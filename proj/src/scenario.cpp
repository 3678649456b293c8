/* Scenario dispatch.  Builds each report's data tables from the owning
   module's results; the digest is computed here from the canonical
   serialization, so every entry path that produces the same scenario
   document produces the same report. */

#include "buildings/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

#include "buildings/cartan.hpp"
#include "buildings/cosheaf.hpp"
#include "buildings/coxeter.hpp"
#include "buildings/davis.hpp"
#include "buildings/errors.hpp"
#include "buildings/fingroup.hpp"
#include "buildings/hecke.hpp"
#include "buildings/measure.hpp"
#include "buildings/simplicial.hpp"

namespace buildings::scenario {

namespace {

using report::Report;



const Json& field(const Json& j, const std::string& name) {
  if (!j.is_object() || !j.contains(name))
    throw buildings::ParseError("scenario lacks required field '" + name + "'");
  return j[name];
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array())
    throw buildings::ParseError(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw buildings::ParseError(what + " must hold only integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Json cartan_json(const cartan::GeneralizedCartanMatrix& a) {
  Json rows = Json::array();
  for (const auto& row : a.entries()) rows.push_back(row);
  return Json{{"matrix", rows}};
}

/* Homology dimensions as named entries so the text rendering carries one
   H_k line per degree. */
Json homology_table(const std::vector<int>& h) {
  Json t = Json::object();
  for (std::size_t k = 0; k < h.size(); ++k)
    t["H_" + std::to_string(k)] = h[k];
  return t;
}

Json word_list(const std::vector<coxeter::WeylElement>& elems) {
  Json words = Json::array();
  for (const auto& e : elems) words.push_back(e.word);
  return words;
}

long long characteristic_of(const Json& scen) {
  if (!scen.contains("field")) return 0;
  const Json& f = field(scen, "field");
  if (!f.is_object() || !f.contains("characteristic") ||
      !f["characteristic"].is_number_integer())
    throw buildings::ParseError("field spec must carry an integer characteristic");
  return f["characteristic"].get<long long>();
}

std::size_t budget_of(const Json& scen) {
  if (!scen.contains("budget")) return coxeter::DEFAULT_ELEMENT_BUDGET;
  if (!scen["budget"].is_number_integer() || scen["budget"].get<long long>() <= 0)
    throw buildings::ParseError("budget must be a positive integer");
  return scen["budget"].get<std::size_t>();
}

std::optional<int> radius_of(const Json& scen) {
  if (!scen.contains("radius") || scen["radius"].is_null()) return std::nullopt;
  if (!scen["radius"].is_number_integer() || scen["radius"].get<int>() < 0)
    throw buildings::ParseError("radius must be a nonnegative integer");
  return scen["radius"].get<int>();
}

bool flag_of(const Json& scen, const std::string& name) {
  if (!scen.contains(name)) return false;
  if (!scen[name].is_boolean())
    throw buildings::ParseError("field '" + name + "' must be a boolean");
  return scen[name].get<bool>();
}

// ---------------------------------------------------------------- runners

Report run_spherical(const Json& scen, const std::string& digest) {
  const auto a = json_io::parse_cartan(field(scen, "cartan"));
  const auto sph = cartan::spherical_subsets(a);
  Json data;
  data["rank"] = a.rank();
  data["f"] = sph.f;
  data["subset_count"] = sph.subsets.size();
  Json subs = Json::array();
  for (const auto& j : sph.subsets) subs.push_back(j);
  data["subsets"] = subs;
  return report::make_report("spherical", digest, "info", std::move(data));
}

Report run_weyl_ball(const Json& scen, const std::string& digest) {
  const auto a = json_io::parse_cartan(field(scen, "cartan"));
  const coxeter::CoxeterSystem sys(a);
  const auto radius = radius_of(scen);
  const auto b = coxeter::ball(sys, radius, budget_of(scen));
  Json data;
  data["rank"] = a.rank();
  data["radius"] = radius ? Json(*radius) : Json(nullptr);
  data["whole_group"] = b.whole_group;
  data["count"] = b.elements.size();
  data["words"] = word_list(b.elements);
  return report::make_report("weyl-ball", digest, "info", std::move(data));
}

Report run_davis(const Json& scen, const std::string& digest) {
  const bool want_resolution = flag_of(scen, "resolution_check") ||
                               field(scen, "kind") == Json("resolution-check");
  const bool want_homology = flag_of(scen, "homology");
  const long long characteristic = characteristic_of(scen);

  std::optional<davis::DavisPoset> poset;
  std::string provenance;
  if (scen.contains("group")) {
    const auto spec = json_io::parse_group(scen["group"]);
    if (!spec.bn)
      throw buildings::ParseError(
          "davis scenarios over a group need BN-pair provenance (kind 'gl')");
    poset = davis::davis_building_group(*spec.bn);
    provenance = "bn-pair";
  } else {
    const auto a = json_io::parse_cartan(field(scen, "cartan"));
    const coxeter::CoxeterSystem sys(a);
    poset = davis::davis_poset_coxeter(sys, radius_of(scen), budget_of(scen));
    provenance = "coxeter";
  }
  const davis::DavisPoset& p = *poset;
  const auto oc = davis::order_complex(p);

  Json data;
  data["provenance"] = provenance;
  data["complete"] = p.complete;
  data["f"] = p.f;
  data["node_count"] = p.nodes.size();
  Json subs = Json::array();
  for (const auto& j : p.subsets)
    subs.push_back(Json{{"subset", j},
                        {"nodes", davis::node_count_for_subset(p, j)}});
  data["subsets"] = subs;
  Json chain_counts = Json::array();
  for (int n = 0; n <= oc.x.dimension(); ++n) chain_counts.push_back(oc.x.count(n));
  data["chain_counts"] = chain_counts;

  std::string verdict = "info";
  Json witnesses = Json::array();
  if (want_homology) {
    const auto cc = simplicial::chain_complex(oc.x, characteristic);
    data["characteristic"] = characteristic;
    data["dims"] = cc.dims;
    data["homology"] = homology_table(simplicial::homology(cc));
  }
  if (want_resolution) {
    const auto rr = davis::resolution_check(oc.x, oc.act, characteristic,
                                            !p.complete);
    Json res;
    res["characteristic"] = rr.characteristic;
    res["dims"] = rr.dims;
    res["boundary_ranks"] = rr.boundary_ranks;
    res["augmentation_rank"] = rr.augmentation_rank;
    res["homology"] = homology_table(rr.homology);
    res["exact"] = rr.exact;
    res["ordinary"] = rr.ordinary;
    res["truncated"] = rr.truncated;
    res["verdict"] = rr.verdict;
    data["resolution"] = res;
    for (const auto& v : rr.ordinary_violations) witnesses.push_back(v);
    verdict = rr.exact ? "pass" : "fail";
  }
  return report::make_report("davis", digest, verdict, std::move(data),
                             std::move(witnesses));
}

Report run_hecke_mul(const Json& scen, const std::string& digest) {
  const auto a = json_io::parse_cartan(field(scen, "cartan"));
  const coxeter::CoxeterSystem sys(a);
  const auto wa = int_list(field(scen, "a"), "word 'a'");
  const auto wb = int_list(field(scen, "b"), "word 'b'");
  const auto prod = hecke::hecke_multiply(sys, hecke::basis_element(sys, wa),
                                          hecke::basis_element(sys, wb));
  Json data;
  data["a"] = wa;
  data["b"] = wb;
  data["product"] = json_io::hecke_element_json(sys, prod);
  return report::make_report("hecke-mul", digest, "info", std::move(data));
}

Report run_involution(const Json& scen, const std::string& digest) {
  const auto a = json_io::parse_cartan(field(scen, "cartan"));
  const coxeter::CoxeterSystem sys(a);
  const std::string kind = field(scen, "involution").get<std::string>();
  const auto w = int_list(field(scen, "word"), "word");
  const auto t = hecke::basis_element(sys, w);
  hecke::HeckeElement image = t;
  if (kind == "im")
    image = hecke::iota_im(sys, t);
  else if (kind == "antipode")
    image = hecke::antipode(sys, t);
  else if (kind == "sigma-im")
    image = hecke::sigma_im(sys, t);
  else
    throw buildings::ParseError(
        "involution kind must be one of im, antipode, sigma-im");
  Json data;
  data["involution"] = kind;
  data["word"] = w;
  data["image"] = json_io::hecke_element_json(sys, image);
  return report::make_report("involution", digest, "info", std::move(data));
}

Report run_spherical_hecke(const Json& scen, const std::string& digest) {
  const auto spec = json_io::parse_group(field(scen, "group"));
  if (!spec.bn)
    throw buildings::ParseError(
        "spherical-hecke scenarios need BN-pair provenance (kind 'gl')");
  const long long characteristic = characteristic_of(scen);
  const measure::MeasureContext ctx(spec.group, spec.bn->b, characteristic);
  const auto sph = hecke::spherical_hecke(*spec.bn, ctx);

  Json data;
  data["characteristic"] = characteristic;
  data["q"] = sph.q;
  data["basis_size"] = sph.weyl_elements.size();
  data["basis"] = word_list(sph.weyl_elements);
  Json table = Json::array();
  const std::size_t n = sph.weyl_elements.size();
  for (std::size_t u = 0; u < n; ++u) {
    Json row = Json::array();
    for (std::size_t v = 0; v < n; ++v) {
      Json cell = Json::array();
      for (std::size_t w = 0; w < n; ++w)
        cell.push_back(json_io::field_scalar_json(sph.constants[u][v][w]));
      row.push_back(cell);
    }
    table.push_back(row);
  }
  data["constants"] = table;

  std::string verdict = "info";
  Json witnesses = Json::array();
  if (flag_of(scen, "verify_iso")) {
    const auto rep = hecke::iso_check(*spec.bn, ctx);
    Json iso;
    iso["isomorphism"] = rep.isomorphism();
    iso["pairs_checked"] = rep.pairs_checked;
    iso["mismatch_count"] = rep.mismatches.size();
    data["iso"] = iso;
    for (const auto& m : rep.mismatches)
      witnesses.push_back(Json{{"u", m.u}, {"v", m.v}, {"w", m.w},
                               {"detail", m.detail}});
    verdict = rep.isomorphism() ? "pass" : "fail";
  }
  return report::make_report("spherical-hecke", digest, verdict,
                             std::move(data), std::move(witnesses));
}

Report run_cosheaf_homology(const Json& scen, const std::string& digest) {
  const auto s = json_io::parse_cosheaf_scenario(scen);
  const auto sys = cosheaf::build_exquisite(s.tree, s.action, s.vertex_subgroups);
  const cosheaf::GModule mod =
      s.module ? *s.module
               : cosheaf::regular_module(s.group, s.characteristic);
  const auto inv = cosheaf::invariants_cosheaf(s.tree, s.action, mod, sys);
  const auto cx = cosheaf::cosheaf_chain_complex(s.tree, s.action, inv.cosheaf,
                                                 s.characteristic);
  Json data;
  data["characteristic"] = s.characteristic;
  data["module_dim"] = mod.dimension();
  data["stalk_dims"] = inv.cosheaf.stalk_dims;
  data["dims"] = cx.complex.dims;
  data["homology"] = homology_table(simplicial::homology(cx.complex));
  return report::make_report("cosheaf-homology", digest, "info",
                             std::move(data));
}

Report run_tree_resolution(const Json& scen, const std::string& digest) {
  const auto s = json_io::parse_cosheaf_scenario(scen);
  const auto sys = cosheaf::build_exquisite(s.tree, s.action, s.vertex_subgroups);
  const cosheaf::GModule mod =
      s.module ? *s.module
               : cosheaf::regular_module(s.group, s.characteristic);
  const auto rep = cosheaf::schneider_stuhler_check(s.tree, s.action, mod, sys);
  Json data;
  data["characteristic"] = rep.characteristic;
  data["module_dim"] = rep.module_dim;
  data["dim_c0"] = rep.dim_c0;
  data["dim_c1"] = rep.dim_c1;
  data["rank_d1"] = rep.rank_d1;
  data["rank_w"] = rep.rank_w;
  data["d1_injective"] = rep.d1_injective;
  data["kernel_w_is_image_d1"] = rep.kernel_w_is_image_d1;
  data["w_surjective"] = rep.w_surjective;
  data["exact"] = rep.exact;
  data["generated_by_vertex_invariants"] = rep.generated_by_vertex_invariants;
  data["hyp_vertex_products"] = rep.hyp_vertex_products;
  data["hyp_geodesic"] = rep.hyp_geodesic;
  data["hyp_ordinary"] = rep.hyp_ordinary;
  data["verdict"] = rep.verdict;
  return report::make_report("tree-resolution", digest,
                             rep.exact ? "pass" : "fail", std::move(data));
}

Report run_verify_idempotents(const Json& scen, const std::string& digest) {
  const auto s = json_io::parse_cosheaf_scenario(scen);
  const auto sys = cosheaf::build_exquisite(s.tree, s.action, s.vertex_subgroups);
  const measure::MeasureContext ctx(s.group, fingroup::trivial_subgroup(s.group),
                                    s.characteristic);
  const auto rep = cosheaf::verify_idempotent_identities(ctx, s.tree, s.action,
                                                         sys);
  Json data;
  data["characteristic"] = s.characteristic;
  data["idempotents_checked"] = rep.idempotents_checked;
  data["adjacent_pairs_checked"] = rep.adjacent_pairs_checked;
  data["product_formulas_checked"] = rep.product_formulas_checked;
  data["conjugations_checked"] = rep.conjugations_checked;
  data["geodesic_triples_checked"] = rep.geodesic_triples_checked;
  data["violation_count"] = rep.violations.size();
  if (!rep.note.empty()) data["note"] = rep.note;
  Json witnesses = Json::array();
  for (const auto& v : rep.violations)
    witnesses.push_back(Json{{"identity", v.identity}, {"witness", v.witness}});
  return report::make_report("verify-idempotents", digest,
                             rep.ok() ? "pass" : "fail", std::move(data),
                             std::move(witnesses));
}

}  // namespace

report::Report run(const Json& scen) {
  const std::string kind = field(scen, "kind").get<std::string>();
  const std::string digest = report::digest_of(scen.dump());
  if (kind == "spherical") return run_spherical(scen, digest);
  if (kind == "weyl-ball") return run_weyl_ball(scen, digest);
  if (kind == "davis" || kind == "resolution-check")
    return run_davis(scen, digest);
  if (kind == "hecke-mul") return run_hecke_mul(scen, digest);
  if (kind == "involution") return run_involution(scen, digest);
  if (kind == "spherical-hecke") return run_spherical_hecke(scen, digest);
  if (kind == "cosheaf-homology") return run_cosheaf_homology(scen, digest);
  if (kind == "tree-resolution") return run_tree_resolution(scen, digest);
  if (kind == "verify-idempotents") return run_verify_idempotents(scen, digest);
  throw buildings::ParseError("unknown scenario kind '" + kind + "'");
}

}  // namespace buildings::scenario
