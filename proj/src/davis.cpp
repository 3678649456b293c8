/* Davis posets, their order complexes with the left-translation crossed
   action, chain stabilizers, and exactness reports for the augmented
   chain ladder. */

#include "buildings/davis.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "buildings/linalg.hpp"

namespace buildings::davis {

namespace {

std::string subset_token(const std::vector<int>& j) {
  std::string s = "{";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(j[i]);
  }
  return s + "}";
}

std::string word_str(const coxeter::WeylElement& e) {
  if (e.word.empty()) return "e";
  std::string s;
  for (int i : e.word) s += "s" + std::to_string(i);
  return s;
}

/* small ⊊ big, both sorted. */
bool proper_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return small.size() < big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

int subset_index(const DavisPoset& p, const std::vector<int>& j) {
  for (std::size_t i = 0; i < p.subsets.size(); ++i)
    if (p.subsets[i] == j) return static_cast<int>(i);
  throw InputError("subset " + subset_token(j) + " is not spherical here");
}

/* A chain is a nonempty strictly increasing node sequence; consecutive
   comparability suffices because the order is transitive. */
void check_chain(const DavisPoset& p, const std::vector<int>& chain) {
  if (!p.complete)
    throw WrongProvenance(
        "stabilizers need a complete poset carrying its group action");
  if (chain.empty()) throw InputError("empty chain");
  const int n = static_cast<int>(p.nodes.size());
  for (int v : chain)
    if (v < 0 || v >= n)
      throw IndexOutOfRange("chain node " + std::to_string(v) +
                            " out of range");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!p.less[chain[i]][chain[i + 1]])
      throw InputError("not a chain: node " + std::to_string(chain[i]) +
                       " is not below node " + std::to_string(chain[i + 1]));
}

}  // namespace

DavisPoset davis_poset_coxeter(const coxeter::CoxeterSystem& sys,
                               std::optional<int> radius,
                               std::size_t max_elements) {
  if (radius && *radius < 0) throw InputError("negative truncation radius");

  DavisPoset p;
  p.from_group = false;
  p.truncation = radius;
  p.sys = std::make_shared<coxeter::CoxeterSystem>(sys);

  const cartan::SphericalSubsets sph = cartan::spherical_subsets(sys.cartan());
  p.subsets = sph.subsets;
  p.f = sph.f;

  coxeter::Ball b = coxeter::ball(sys, radius, max_elements);
  p.complete = b.whole_group;
  if (p.complete) {
    fingroup::WeylGroupTable wg = fingroup::weyl_finite_group(sys, max_elements);
    if (wg.elements.size() != b.elements.size())
      throw Error("group enumeration disagrees with the ball");
    p.elements = std::move(wg.elements);
    p.group = std::move(wg.group);
  } else {
    p.elements = std::move(b.elements);
  }
  const int ne = static_cast<int>(p.elements.size());

  /* Ball elements with no right descent in J are exactly the
     length-minimal representatives of the cosets w W_J meeting the ball. */
  for (const auto& j : p.subsets) {
    for (int e = 0; e < ne; ++e) {
      bool minimal = true;
      for (int s : j)
        if (coxeter::is_right_descent(sys, p.elements[e], s)) {
          minimal = false;
          break;
        }
      if (minimal)
        p.nodes.push_back(
            {j, e, word_str(p.elements[e]) + ".W" + subset_token(j)});
    }
  }

  const int nn = static_cast<int>(p.nodes.size());
  p.less.assign(nn, std::vector<char>(nn, 0));
  for (int a = 0; a < nn; ++a)
    for (int bn = 0; bn < nn; ++bn) {
      if (!proper_subset(p.nodes[a].j, p.nodes[bn].j)) continue;
      const coxeter::WeylElement m =
          coxeter::min_coset_rep(sys, p.elements[p.nodes[a].rep], p.nodes[bn].j);
      p.less[a][bn] = (m == p.elements[p.nodes[bn].rep]) ? 1 : 0;
    }

  if (p.complete) {
    std::map<coxeter::IMat, int> elem_index;
    for (int e = 0; e < ne; ++e) elem_index[p.elements[e].mat] = e;
    std::map<std::pair<int, int>, int> node_of;  // (subset index, rep) -> node
    std::vector<int> ji_of_node(nn);
    for (int v = 0; v < nn; ++v) {
      ji_of_node[v] = subset_index(p, p.nodes[v].j);
      node_of[{ji_of_node[v], p.nodes[v].rep}] = v;
    }
    p.node_action.assign(ne, std::vector<int>(nn));
    for (int g = 0; g < ne; ++g)
      for (int v = 0; v < nn; ++v) {
        const coxeter::WeylElement prod =
            coxeter::multiply(sys, p.elements[g], p.elements[p.nodes[v].rep]);
        const coxeter::WeylElement m =
            coxeter::min_coset_rep(sys, prod, p.nodes[v].j);
        p.node_action[g][v] = node_of.at({ji_of_node[v], elem_index.at(m.mat)});
      }
  }
  return p;
}

DavisPoset davis_building_group(const fingroup::BNPairData& bn) {
  DavisPoset p;
  p.from_group = true;
  p.complete = true;
  p.bn = std::make_shared<fingroup::BNPairData>(bn);
  p.group = bn.group;
  const int order = bn.group->order();

  const cartan::SphericalSubsets sph =
      cartan::spherical_subsets(bn.weyl->cartan());
  p.subsets = sph.subsets;
  p.f = sph.f;
  for (const auto& j : p.subsets)
    p.parabolics.push_back(fingroup::parabolic(bn, j));

  /* Left cosets per subset, discovered in ascending least-element order. */
  std::vector<std::vector<int>> coset_of;  // [ji][g] -> local coset index
  std::vector<int> offset(p.subsets.size());
  for (std::size_t ji = 0; ji < p.subsets.size(); ++ji) {
    offset[ji] = static_cast<int>(p.nodes.size());
    coset_of.emplace_back(order, -1);
    for (int g = 0; g < order; ++g) {
      if (coset_of[ji][g] != -1) continue;
      const int local =
          static_cast<int>(p.nodes.size()) - offset[ji];
      std::vector<int> members;
      for (int h : p.parabolics[ji].elements())
        members.push_back(bn.group->mul(g, h));
      std::sort(members.begin(), members.end());
      for (int m : members) coset_of[ji][m] = local;
      p.nodes.push_back({p.subsets[ji], g,
                         "g" + std::to_string(g) + ".P" + subset_token(p.subsets[ji])});
      p.coset_elements.push_back(std::move(members));
    }
  }

  const int nn = static_cast<int>(p.nodes.size());
  std::vector<std::vector<char>> member(nn, std::vector<char>(order, 0));
  for (int v = 0; v < nn; ++v)
    for (int m : p.coset_elements[v]) member[v][m] = 1;

  p.less.assign(nn, std::vector<char>(nn, 0));
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b)
      if (proper_subset(p.nodes[a].j, p.nodes[b].j))
        p.less[a][b] = member[b][p.nodes[a].rep];

  std::vector<int> ji_of_node(nn);
  {
    int v = 0;
    for (std::size_t ji = 0; ji < p.subsets.size(); ++ji)
      while (v < nn && p.nodes[v].j == p.subsets[ji]) ji_of_node[v++] = static_cast<int>(ji);
  }
  p.node_action.assign(order, std::vector<int>(nn));
  for (int g = 0; g < order; ++g)
    for (int v = 0; v < nn; ++v) {
      const int ji = ji_of_node[v];
      p.node_action[g][v] =
          offset[ji] + coset_of[ji][bn.group->mul(g, p.nodes[v].rep)];
    }
  return p;
}

int node_count_for_subset(const DavisPoset& p, const std::vector<int>& j) {
  std::vector<int> key = j;
  std::sort(key.begin(), key.end());
  int count = 0;
  for (const auto& n : p.nodes)
    if (n.j == key) ++count;
  return count;
}

OrderComplex order_complex(const DavisPoset& p) {
  const int nn = static_cast<int>(p.nodes.size());

  std::vector<std::vector<std::vector<int>>> chains(1);
  for (int v = 0; v < nn; ++v) chains[0].push_back({v});
  while (true) {
    std::vector<std::vector<int>> next;
    for (const auto& c : chains.back())
      for (int w = c.back() + 1; w < nn; ++w)
        if (p.less[c.back()][w]) {
          next.push_back(c);
          next.back().push_back(w);
        }
    if (next.empty()) break;
    chains.push_back(std::move(next));
  }

  simplicial::SimplicialSet x = simplicial::SimplicialSet::from_ordered_complex(chains);

  if (!p.complete) {
    fingroup::GroupPtr one = fingroup::group_from_table({{0}}, {"e"});
    simplicial::CrossedAction act = simplicial::trivial_action(x, one);
    return OrderComplex{std::move(x), std::move(act), std::move(chains)};
  }

  /* Left translation preserves the order and node ids are a linear
     extension, so image tuples stay sorted and every rank permutation is
     the identity. */
  const int order = p.group->order();
  std::vector<std::map<std::vector<int>, int>> index(chains.size());
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (std::size_t i = 0; i < chains[n].size(); ++i)
      index[n][chains[n][i]] = static_cast<int>(i);

  std::vector<std::vector<std::vector<int>>> on(chains.size());
  std::vector<std::vector<std::vector<std::vector<int>>>> r(chains.size());
  for (std::size_t n = 0; n < chains.size(); ++n) {
    on[n].assign(order, std::vector<int>(chains[n].size()));
    r[n].assign(order, std::vector<std::vector<int>>(
                           chains[n].size(),
                           simplicial::identity_perm(static_cast<int>(n) + 1)));
    for (int g = 0; g < order; ++g)
      for (std::size_t i = 0; i < chains[n].size(); ++i) {
        std::vector<int> image;
        for (int v : chains[n][i]) image.push_back(p.node_action[g][v]);
        const auto it = index[n].find(image);
        if (it == index[n].end())
          throw Error("translated chain left the chain list");
        on[n][g][i] = it->second;
      }
  }
  simplicial::CrossedAction act =
      simplicial::make_action(x, p.group, std::move(on), std::move(r));
  return OrderComplex{std::move(x), std::move(act), std::move(chains)};
}

fingroup::Subgroup stabilizer(const DavisPoset& p,
                              const std::vector<int>& chain) {
  check_chain(p, chain);
  std::vector<int> elems;
  for (int g = 0; g < p.group->order(); ++g) {
    bool fixes = true;
    for (int v : chain)
      if (p.node_action[g][v] != v) {
        fixes = false;
        break;
      }
    if (fixes) elems.push_back(g);
  }
  return fingroup::Subgroup(p.group, elems);
}

fingroup::Subgroup expected_chain_stabilizer(const DavisPoset& p,
                                             const std::vector<int>& chain) {
  check_chain(p, chain);
  const DavisNode& least = p.nodes[chain.front()];
  if (p.from_group)
    return fingroup::conjugate_subgroup(p.parabolics[subset_index(p, least.j)],
                                        least.rep);
  /* Coxeter case: element indices are group element ids, so W_J is
     generated by the ids of the generators in J. */
  std::vector<int> gens;
  for (int s : least.j) {
    int id = -1;
    for (std::size_t e = 0; e < p.elements.size(); ++e)
      if (p.elements[e].word == std::vector<int>{s}) {
        id = static_cast<int>(e);
        break;
      }
    if (id < 0) throw Error("generator element missing from the enumeration");
    gens.push_back(id);
  }
  return fingroup::conjugate_subgroup(
      fingroup::subgroup_generated(p.group, gens), least.rep);
}

ResolutionReport resolution_check(const simplicial::SimplicialSet& x,
                                  const simplicial::CrossedAction& act,
                                  long long characteristic, bool truncated) {
  if (act.set_tag != x.tag())
    throw ContextMismatch("action belongs to a different simplicial set");

  ResolutionReport rep;
  rep.characteristic = characteristic;
  rep.truncated = truncated;

  const simplicial::ChainComplex c = simplicial::chain_complex(x, characteristic);
  rep.dims = c.dims;
  const int top = static_cast<int>(c.dims.size()) - 1;
  for (int k = 1; k <= top; ++k)
    rep.boundary_ranks.push_back(
        static_cast<int>(rank(c.boundaries[k], characteristic)));
  rep.augmentation_rank = c.dims[0] > 0 ? 1 : 0;

  /* The augmentation kills every boundary: columns of d_1 sum to zero. */
  if (top >= 1)
    for (std::size_t col = 0; col < c.boundaries[1].cols(); ++col) {
      FieldScalar sum = FieldScalar::zero(characteristic);
      for (std::size_t row = 0; row < c.boundaries[1].rows(); ++row)
        sum = sum + c.boundaries[1].at(row, col);
      if (!sum.is_zero())
        throw Error("augmentation does not annihilate boundaries");
    }

  rep.homology = simplicial::homology(c);
  rep.exact = rep.homology[0] == 1;
  for (std::size_t k = 1; k < rep.homology.size(); ++k)
    if (rep.homology[k] != 0) rep.exact = false;

  rep.ordinary = true;
  if (characteristic > 0) {
    const int order = act.group->order();
    for (int n = 0; n <= top; ++n)
      for (int id = 0; id < c.dims[n]; ++id) {
        int stab = 0;
        for (int g = 0; g < order; ++g)
          if (act.on[n][g][id] == id) ++stab;
        if (stab % characteristic == 0) {
          rep.ordinary = false;
          rep.ordinary_violations.push_back(
              simplicial::ref_label(x.nondeg_ref(n, id)) +
              " has stabilizer order " + std::to_string(stab) +
              " divisible by " + std::to_string(characteristic));
        }
      }
  }

  std::ostringstream v;
  if (truncated) {
    v << "truncated complex: homology (";
    for (std::size_t k = 0; k < rep.homology.size(); ++k)
      v << (k ? ", " : "") << rep.homology[k];
    v << ") reported without an exactness claim; truncation can distort"
         " homology near the boundary";
  } else if (rep.exact) {
    v << "exact: the augmented chain ladder has vanishing reduced homology"
         " in characteristic "
      << characteristic;
  } else {
    int bad = rep.homology[0] != 1 ? 0 : -1;
    for (std::size_t k = 1; bad < 0 && k < rep.homology.size(); ++k)
      if (rep.homology[k] != 0) bad = static_cast<int>(k);
    v << "not exact at degree " << bad;
  }
  if (!rep.ordinary)
    v << "; characteristic divides " << rep.ordinary_violations.size()
      << " stabilizer order(s)";
  rep.verdict = v.str();
  return rep;
}

}  // namespace buildings::davis
