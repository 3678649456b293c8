#include "buildings/fingroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace buildings::fingroup {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table,
                         std::vector<std::string> labels,
                         std::vector<int> generators)
    : table_(std::move(table)), labels_(std::move(labels)),
      generators_(std::move(generators)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) throw NotAGroup("empty multiplication table");
  if (n > MAX_GROUP_ORDER)
    throw InputError("group order " + std::to_string(n) + " exceeds cap " +
                     std::to_string(MAX_GROUP_ORDER));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table_[i].size()) != n)
      throw NotAGroup("row " + std::to_string(i) + " has wrong length");
    for (int j = 0; j < n; ++j)
      if (table_[i][j] < 0 || table_[i][j] >= n)
        throw NotAGroup("entry [" + std::to_string(i) + "][" + std::to_string(j) +
                        "] out of range");
  }
  // identity
  identity_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) { identity_ = e; break; }
  }
  if (identity_ < 0) throw NotAGroup("no two-sided identity");
  // inverses
  inv_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (table_[x][y] == identity_ && table_[y][x] == identity_) {
        inv_[x] = y;
        break;
      }
    if (inv_[x] < 0)
      throw NotAGroup("element " + std::to_string(x) + " has no inverse");
  }
  // associativity, exhaustive (order is capped at desk scale)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = table_[a][b];
      for (int c = 0; c < n; ++c)
        if (table_[ab][c] != table_[a][table_[b][c]])
          throw NotAGroup("associativity fails at (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
    }
  if (labels_.empty()) {
    labels_.reserve(n);
    for (int i = 0; i < n; ++i) labels_.push_back("g" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != n)
    throw InputError("label count does not match group order");
  if (generators_.empty())
    for (int i = 0; i < n; ++i) generators_.push_back(i);
  for (int g : generators_)
    if (g < 0 || g >= n) throw IndexOutOfRange("generator index out of range");
  std::uint64_t h = 1469598103934665603ULL;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      h ^= static_cast<std::uint64_t>(table_[i][j]) + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
  tag_ = h;
}

GroupPtr group_from_table(std::vector<std::vector<int>> table,
                          std::vector<std::string> labels) {
  return std::make_shared<FiniteGroup>(std::move(table), std::move(labels),
                                       std::vector<int>{});
}

namespace {

std::string perm_label(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace

GroupPtr group_from_permutations(int degree,
                                 const std::vector<std::vector<int>>& gens) {
  if (degree <= 0) throw InputError("permutation degree must be positive");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != degree)
      throw InputError("permutation length differs from degree");
    std::vector<char> hit(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || hit[v])
        throw InputError("not a permutation: " + perm_label(g));
      hit[v] = 1;
    }
  }
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  // breadth-first closure under composition with the generators
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems{id};
  index.emplace(id, 0);
  std::vector<int> gen_indices;
  std::size_t head = 0;
  while (head < elems.size()) {
    std::vector<int> cur = elems[head];
    for (const auto& g : gens) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = cur[g[i]];  // cur after g
      if (!index.count(prod)) {
        if (static_cast<int>(elems.size()) >= MAX_GROUP_ORDER)
          throw InputError("permutation closure exceeds order cap");
        index.emplace(prod, static_cast<int>(elems.size()));
        elems.push_back(std::move(prod));
      }
    }
    ++head;
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = elems[a][elems[b][i]];
      table[a][b] = index.at(prod);
    }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& p : elems) labels.push_back(perm_label(p));
  for (const auto& g : gens) gen_indices.push_back(index.at(g));
  return std::make_shared<FiniteGroup>(std::move(table), std::move(labels),
                                       std::move(gen_indices));
}

WeylGroupTable weyl_finite_group(const coxeter::CoxeterSystem& sys,
                                 std::size_t max_elements) {
  coxeter::Ball b = coxeter::ball(sys, std::nullopt, max_elements);
  if (!b.whole_group)
    throw InputError("Coxeter group is not finite");
  std::map<coxeter::IMat, int> index;
  for (std::size_t i = 0; i < b.elements.size(); ++i)
    index.emplace(b.elements[i].mat, static_cast<int>(i));
  const int n = static_cast<int>(b.elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      table[x][y] = index.at(coxeter::imul(b.elements[x].mat, b.elements[y].mat));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& w : b.elements) {
    if (w.word.empty()) { labels.push_back("e"); continue; }
    std::string s;
    for (std::size_t k = 0; k < w.word.size(); ++k) {
      if (k) s += "*";
      s += "s" + std::to_string(w.word[k]);
    }
    labels.push_back(s);
  }
  std::vector<int> gens;
  for (int i = 0; i < sys.rank(); ++i)
    gens.push_back(index.at(coxeter::generator_element(sys, i).mat));
  WeylGroupTable out;
  out.group = std::make_shared<FiniteGroup>(std::move(table), std::move(labels),
                                            std::move(gens));
  out.elements = std::move(b.elements);
  return out;
}

Subgroup::Subgroup(GroupPtr g, std::vector<int> elements)
    : group_(std::move(g)), elems_(std::move(elements)) {
  if (!group_) throw InputError("subgroup of null group");
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  member_.assign(group_->order(), 0);
  for (int x : elems_) {
    if (x < 0 || x >= group_->order())
      throw IndexOutOfRange("subgroup element " + std::to_string(x));
    member_[x] = 1;
  }
  if (elems_.empty() || !member_[group_->identity()])
    throw NotASubgroup("missing identity");
  for (int x : elems_) {
    if (!member_[group_->inv(x)])
      throw NotASubgroup("not closed under inverse at " + group_->label(x));
    for (int y : elems_)
      if (!member_[group_->mul(x, y)])
        throw NotASubgroup("not closed under product at " + group_->label(x) +
                           " * " + group_->label(y));
  }
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens) {
  std::vector<char> member(g->order(), 0);
  std::vector<int> stack = gens;
  for (int x : stack)
    if (x < 0 || x >= g->order()) throw IndexOutOfRange("generator index");
  member[g->identity()] = 1;
  std::vector<int> elems{g->identity()};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (member[x]) continue;
    member[x] = 1;
    elems.push_back(x);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      int p = g->mul(elems[i], x), q = g->mul(x, elems[i]);
      if (!member[p]) stack.push_back(p);
      if (!member[q]) stack.push_back(q);
    }
    if (!member[g->inv(x)]) stack.push_back(g->inv(x));
  }
  return Subgroup(g, std::move(elems));
}

Subgroup trivial_subgroup(const GroupPtr& g) {
  return Subgroup(g, {g->identity()});
}

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < g->order(); ++i) all[i] = i;
  return Subgroup(g, std::move(all));
}

Subgroup conjugate_subgroup(const Subgroup& h, int x) {
  const FiniteGroup& g = *h.group();
  if (x < 0 || x >= g.order()) throw IndexOutOfRange("conjugator index");
  std::vector<int> out;
  out.reserve(h.order());
  for (int a : h.elements()) out.push_back(g.mul(g.mul(x, a), g.inv(x)));
  return Subgroup(h.group(), std::move(out));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (a.group()->tag() != b.group()->tag())
    throw ContextMismatch("intersecting subgroups of different groups");
  std::vector<int> out;
  for (int x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return Subgroup(a.group(), std::move(out));
}

Rational subgroup_index(const Subgroup& h, const Subgroup& k) {
  if (h.group()->tag() != k.group()->tag())
    throw ContextMismatch("index of subgroups of different groups");
  for (int x : k.elements())
    if (!h.contains(x))
      throw NotASubgroup("element " + h.group()->label(x) + " of K outside H");
  return Rational(h.order(), k.order());
}

std::vector<int> product_set(const Subgroup& h1, const Subgroup& h2) {
  if (h1.group()->tag() != h2.group()->tag())
    throw ContextMismatch("product of subgroups of different groups");
  const FiniteGroup& g = *h1.group();
  std::vector<char> seen(g.order(), 0);
  for (int a : h1.elements())
    for (int b : h2.elements()) seen[g.mul(a, b)] = 1;
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

bool set_is_subgroup(const FiniteGroup& g, const std::vector<int>& sorted_set) {
  std::vector<char> member(g.order(), 0);
  for (int x : sorted_set) member[x] = 1;
  if (!member[g.identity()]) return false;
  for (int x : sorted_set) {
    if (!member[g.inv(x)]) return false;
    for (int y : sorted_set)
      if (!member[g.mul(x, y)]) return false;
  }
  return true;
}

std::vector<std::vector<int>> double_cosets(const Subgroup& h1, const Subgroup& h2) {
  if (h1.group()->tag() != h2.group()->tag())
    throw ContextMismatch("double cosets over different groups");
  const FiniteGroup& g = *h1.group();
  std::vector<int> block_of(g.order(), -1);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < g.order(); ++x) {
    if (block_of[x] >= 0) continue;
    std::vector<int> block;
    for (int a : h1.elements())
      for (int b : h2.elements()) {
        int y = g.mul(g.mul(a, x), b);
        if (block_of[y] < 0) {
          block_of[y] = static_cast<int>(blocks.size());
          block.push_back(y);
        }
      }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

namespace {

/* Lift of a Weyl element: product of simple lifts along its canonical word. */
int lift_of_word(const FiniteGroup& g, const std::vector<int>& simple_lifts,
                 const std::vector<int>& word) {
  int x = g.identity();
  for (int i : word) x = g.mul(x, simple_lifts[i]);
  return x;
}

std::vector<int> bwb_cell(const FiniteGroup& g, const Subgroup& b, int lift) {
  std::vector<char> seen(g.order(), 0);
  for (int x : b.elements())
    for (int y : b.elements()) seen[g.mul(g.mul(x, lift), y)] = 1;
  std::vector<int> out;
  for (int z = 0; z < g.order(); ++z)
    if (seen[z]) out.push_back(z);
  return out;
}

}  // namespace

BNPairData make_bn_pair(GroupPtr g, Subgroup b, Subgroup n,
                        std::vector<int> simple_lifts,
                        coxeter::CoxeterSystem weyl,
                        std::vector<int> omega_lifts) {
  if (b.group()->tag() != g->tag() || n.group()->tag() != g->tag())
    throw ContextMismatch("B or N lives in a different group");
  if (static_cast<int>(simple_lifts.size()) != weyl.rank())
    throw InputError("one simple lift per Coxeter generator required");
  for (int x : simple_lifts)
    if (x < 0 || x >= g->order()) throw IndexOutOfRange("simple lift index");
  for (int x : omega_lifts)
    if (x < 0 || x >= g->order()) throw IndexOutOfRange("omega lift index");
  BNPairData bn;
  bn.group = std::move(g);
  bn.b = std::move(b);
  bn.n = std::move(n);
  bn.simple_lifts = std::move(simple_lifts);
  bn.weyl = std::make_shared<coxeter::CoxeterSystem>(std::move(weyl));
  bn.omega_lifts = std::move(omega_lifts);
  bn.weyl_elements = coxeter::ball(*bn.weyl, std::nullopt).elements;
  for (const auto& w : bn.weyl_elements)
    bn.lift_of_weyl.push_back(
        lift_of_word(*bn.group, bn.simple_lifts, w.word));
  bn.cell_of_element.assign(bn.group->order(), -1);
  for (std::size_t wi = 0; wi < bn.weyl_elements.size(); ++wi)
    for (int z : bwb_cell(*bn.group, bn.b, bn.lift_of_weyl[wi])) {
      if (bn.cell_of_element[z] >= 0 &&
          bn.cell_of_element[z] != static_cast<int>(wi))
        bn.cells_overlap = true;
      else
        bn.cell_of_element[z] = static_cast<int>(wi);
    }
  return bn;
}

namespace {

std::string fq_matrix_label(const std::vector<int>& flat, int n) {
  std::string s = "[";
  for (int r = 0; r < n; ++r) {
    if (r) s += ",";
    s += "[";
    for (int c = 0; c < n; ++c) {
      if (c) s += ",";
      s += std::to_string(flat[r * n + c]);
    }
    s += "]";
  }
  return s + "]";
}

long long det_mod(const std::vector<int>& flat, int n, long long q) {
  // Laplace expansion; n <= 3 here
  if (n == 1) return flat[0] % q;
  if (n == 2) return ((flat[0] * flat[3] - flat[1] * flat[2]) % q + q) % q;
  long long d = 0;
  for (int c = 0; c < 3; ++c) {
    std::vector<int> minor;
    for (int r = 1; r < 3; ++r)
      for (int cc = 0; cc < 3; ++cc)
        if (cc != c) minor.push_back(flat[r * 3 + cc]);
    long long m2 = ((minor[0] * minor[3] - minor[1] * minor[2]) % q + q) % q;
    d += (c % 2 ? -1 : 1) * flat[c] * m2;
  }
  return (d % q + q) % q;
}

}  // namespace

BNPairData gl_n_fq(int n, long long q) {
  const bool supported =
      (n == 2 && q == 2) || (n == 2 && q == 3) || (n == 3 && q == 2);
  if (!supported)
    throw UnsupportedParameters("gl_n_fq supports (2,2), (2,3), (3,2); got (" +
                                std::to_string(n) + "," + std::to_string(q) + ")");
  // enumerate invertible matrices in lex order of the flattened entries
  std::vector<std::vector<int>> elems;
  const int cells = n * n;
  std::vector<int> flat(cells, 0);
  while (true) {
    if (det_mod(flat, n, q) != 0) elems.push_back(flat);
    int pos = cells - 1;
    while (pos >= 0 && flat[pos] == q - 1) flat[pos--] = 0;
    if (pos < 0) break;
    ++flat[pos];
  }
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index.emplace(elems[i], static_cast<int>(i));
  const int order = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> prod(cells, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          long long acc = 0;
          for (int k = 0; k < n; ++k)
            acc += static_cast<long long>(elems[a][i * n + k]) * elems[b][k * n + j];
          prod[i * n + j] = static_cast<int>(acc % q);
        }
      table[a][b] = index.at(prod);
    }
  std::vector<std::string> labels;
  labels.reserve(order);
  for (const auto& m : elems) labels.push_back(fq_matrix_label(m, n));

  std::vector<int> b_elems, n_elems;
  for (int i = 0; i < order; ++i) {
    const auto& m = elems[i];
    bool upper = true;
    for (int r = 0; r < n && upper; ++r)
      for (int c = 0; c < r; ++c)
        if (m[r * n + c] != 0) { upper = false; break; }
    if (upper) b_elems.push_back(i);
    bool monomial = true;
    for (int r = 0; r < n && monomial; ++r) {
      int nz = 0;
      for (int c = 0; c < n; ++c)
        if (m[r * n + c] != 0) ++nz;
      monomial = nz == 1;
    }
    if (monomial)
      for (int c = 0; c < n && monomial; ++c) {
        int nz = 0;
        for (int r = 0; r < n; ++r)
          if (m[r * n + c] != 0) ++nz;
        monomial = nz == 1;
      }
    if (monomial) n_elems.push_back(i);
  }

  std::vector<int> lifts;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> m(cells, 0);
    for (int r = 0; r < n; ++r) {
      int c = r == i ? i + 1 : (r == i + 1 ? i : r);
      m[r * n + c] = 1;
    }
    lifts.push_back(index.at(m));
  }

  std::vector<std::vector<long long>> cart(n - 1, std::vector<long long>(n - 1, 0));
  for (int i = 0; i < n - 1; ++i) {
    cart[i][i] = 2;
    if (i + 1 < n - 1) { cart[i][i + 1] = -1; cart[i + 1][i] = -1; }
  }

  // generators: the simple lifts plus enough of B to generate G
  std::vector<int> gens = lifts;
  for (int x : b_elems) gens.push_back(x);
  auto group = std::make_shared<FiniteGroup>(std::move(table), std::move(labels),
                                             std::move(gens));
  Subgroup b(group, std::move(b_elems));
  Subgroup nn(group, std::move(n_elems));
  return make_bn_pair(group, std::move(b), std::move(nn), std::move(lifts),
                      coxeter::CoxeterSystem{cartan::GeneralizedCartanMatrix(cart)});
}

const coxeter::WeylElement& bruhat_class(const BNPairData& bn, int g) {
  if (g < 0 || g >= bn.group->order()) throw IndexOutOfRange("element index");
  int cell = bn.cell_of_element[g];
  if (cell < 0)
    throw NotInBWB("element " + bn.group->label(g) + " lies in no Bruhat cell");
  return bn.weyl_elements[cell];
}

Subgroup parabolic(const BNPairData& bn, const std::vector<int>& j) {
  for (int i : j)
    if (i < 0 || i >= bn.weyl->rank())
      throw IndexOutOfRange("generator index " + std::to_string(i));
  std::vector<char> in_j(bn.weyl->rank(), 0);
  for (int i : j) in_j[i] = 1;
  std::vector<char> member(bn.group->order(), 0);
  for (std::size_t wi = 0; wi < bn.weyl_elements.size(); ++wi) {
    bool inside = true;
    for (int letter : bn.weyl_elements[wi].word)
      if (!in_j[letter]) { inside = false; break; }
    if (!inside) continue;
    for (int z : bwb_cell(*bn.group, bn.b, bn.lift_of_weyl[wi])) member[z] = 1;
  }
  std::vector<int> elems;
  for (int z = 0; z < bn.group->order(); ++z)
    if (member[z]) elems.push_back(z);
  return Subgroup(bn.group, std::move(elems));  // constructor verifies closure
}

namespace {

bool same_set(const std::vector<int>& a, const std::vector<int>& b) {
  return a == b;
}

}  // namespace

BNAxiomReport check_bn_axioms(const BNPairData& bn) {
  BNAxiomReport rep;
  const FiniteGroup& g = *bn.group;
  auto add = [&rep](std::string axiom, bool ok, std::string witness = "") {
    rep.checks.push_back({std::move(axiom), ok, ok ? "" : std::move(witness)});
  };

  // (i) B and N are subgroups (guaranteed by type); H = B cap N normal in N
  Subgroup h = intersect(bn.b, bn.n);
  bool h_normal = true;
  std::string h_wit;
  for (int x : bn.n.elements()) {
    Subgroup c = conjugate_subgroup(h, x);
    if (c.elements() != h.elements()) {
      h_normal = false;
      h_wit = "H not fixed by conjugation with " + g.label(x);
      break;
    }
  }
  add("(i) H = B meet N is normal in N", h_normal, h_wit);

  // (ii) N/H is Omega semidirect W: every H-coset of N is a*lift(w)*H for
  // exactly one pair, and the W part multiplies like W
  {
    std::vector<int> omega = {g.identity()};
    for (int a : bn.omega_lifts) omega.push_back(a);
    auto coset_of = [&](int x) {
      std::vector<int> c;
      for (int hh : h.elements()) c.push_back(g.mul(x, hh));
      std::sort(c.begin(), c.end());
      return c;
    };
    std::set<std::vector<int>> n_cosets;
    for (int x : bn.n.elements()) n_cosets.insert(coset_of(x));
    std::map<std::vector<int>, int> hits;  // coset -> count of (a,w) pairs
    bool all_in_n = true;
    std::string wit;
    for (int a : omega)
      for (std::size_t wi = 0; wi < bn.weyl_elements.size(); ++wi) {
        int x = g.mul(a, bn.lift_of_weyl[wi]);
        if (!bn.n.contains(x)) {
          all_in_n = false;
          wit = "lift " + g.label(x) + " outside N";
        }
        ++hits[coset_of(x)];
      }
    bool cover = all_in_n;
    if (cover) {
      for (const auto& c : n_cosets)
        if (!hits.count(c)) {
          cover = false;
          wit = "an H-coset of N is hit by no (omega, w) pair";
          break;
        }
      for (const auto& [c, k] : hits)
        if (k != 1 || !n_cosets.count(c)) {
          cover = false;
          wit = "an H-coset is hit " + std::to_string(k) + " times";
          break;
        }
    }
    // W multiplies like N/H: lift(u) lift(v) H = lift(uv) H
    bool hom = true;
    std::string hom_wit;
    for (std::size_t ui = 0; ui < bn.weyl_elements.size() && hom; ++ui)
      for (std::size_t vi = 0; vi < bn.weyl_elements.size() && hom; ++vi) {
        coxeter::WeylElement uv = coxeter::multiply(
            *bn.weyl, bn.weyl_elements[ui], bn.weyl_elements[vi]);
        int target = -1;
        for (std::size_t k = 0; k < bn.weyl_elements.size(); ++k)
          if (bn.weyl_elements[k] == uv) { target = static_cast<int>(k); break; }
        int prod = g.mul(bn.lift_of_weyl[ui], bn.lift_of_weyl[vi]);
        if (target < 0 ||
            coset_of(prod) != coset_of(bn.lift_of_weyl[target])) {
          hom = false;
          hom_wit = "lift product escapes its H-coset at (" +
                    std::to_string(ui) + "," + std::to_string(vi) + ")";
        }
      }
    add("(ii) N/H = Omega semidirect W", cover && hom, cover ? hom_wit : wit);
  }

  // (iii.1) for t in W, s in S: tBs subset of B(ts)B union BtB
  {
    bool ok = true;
    std::string wit;
    for (std::size_t ti = 0; ti < bn.weyl_elements.size() && ok; ++ti)
      for (int s = 0; s < bn.weyl->rank() && ok; ++s) {
        coxeter::WeylElement ts =
            coxeter::multiply(*bn.weyl, bn.weyl_elements[ti],
                              coxeter::generator_element(*bn.weyl, s));
        int ts_cell = -1;
        for (std::size_t k = 0; k < bn.weyl_elements.size(); ++k)
          if (bn.weyl_elements[k] == ts) { ts_cell = static_cast<int>(k); break; }
        for (int x : bn.b.elements()) {
          int z = g.mul(g.mul(bn.lift_of_weyl[ti], x), bn.simple_lifts[s]);
          int cell = bn.cell_of_element[z];
          if (cell < 0 || (cell != static_cast<int>(ti) && cell != ts_cell)) {
            ok = false;
            wit = "t B s escapes BtsB and BtB at t=" + std::to_string(ti) +
                  " s=" + std::to_string(s);
            break;
          }
        }
      }
    add("(iii.1) t B s inside BtsB or BtB", ok, wit);
  }

  // (iii.2) each s has order two in W and sBs^{-1} != B
  {
    bool ok = true;
    std::string wit;
    for (int s = 0; s < bn.weyl->rank(); ++s) {
      coxeter::WeylElement ss = coxeter::generator_element(*bn.weyl, s);
      if (coxeter::multiply(*bn.weyl, ss, ss).length() != 0) {
        ok = false;
        wit = "s" + std::to_string(s) + " is not an involution in W";
        break;
      }
      Subgroup conj = conjugate_subgroup(bn.b, bn.simple_lifts[s]);
      if (conj.elements() == bn.b.elements()) {
        ok = false;
        wit = "s B s^-1 = B at s" + std::to_string(s);
        break;
      }
    }
    add("(iii.2) s^2 = 1 and s B s^-1 != B", ok, wit);
  }

  // (iv) omega normalises S: a s a^{-1} lies in some tH with t in S
  {
    bool ok = true;
    std::string wit;
    for (int a : bn.omega_lifts) {
      for (int s = 0; s < bn.weyl->rank(); ++s) {
        int x = g.mul(g.mul(a, bn.simple_lifts[s]), g.inv(a));
        bool found = false;
        for (int t = 0; t < bn.weyl->rank() && !found; ++t)
          for (int hh : h.elements())
            if (x == g.mul(bn.simple_lifts[t], hh)) { found = true; break; }
        if (!found) {
          ok = false;
          wit = "a S a^-1 escapes S at a=" + g.label(a) +
                " s=" + std::to_string(s);
        }
      }
    }
    add("(iv) Omega normalises S", ok, wit);
  }

  // (v) omega lifts normalise B and lie outside it
  {
    bool ok = true;
    std::string wit;
    for (int a : bn.omega_lifts) {
      Subgroup conj = conjugate_subgroup(bn.b, a);
      if (conj.elements() != bn.b.elements()) {
        ok = false;
        wit = "a B a^-1 != B at a=" + g.label(a);
        break;
      }
      std::vector<int> ba;
      for (int x : bn.b.elements()) ba.push_back(g.mul(x, a));
      std::sort(ba.begin(), ba.end());
      if (same_set(ba, bn.b.elements())) {
        ok = false;
        wit = "B a = B at a=" + g.label(a);
        break;
      }
    }
    add("(v) Omega lifts normalise B", ok, wit);
  }

  // (vi) G is generated by B and N
  {
    std::vector<int> gens = bn.b.elements();
    gens.insert(gens.end(), bn.n.elements().begin(), bn.n.elements().end());
    Subgroup span = subgroup_generated(bn.group, gens);
    add("(vi) G = <B, N>", span.order() == g.order(),
        "<B,N> has order " + std::to_string(span.order()));
  }

  // Bruhat partition: every element in exactly one cell
  {
    bool ok = !bn.cells_overlap;
    std::string wit = bn.cells_overlap ? "two cells overlap" : "";
    if (ok)
      for (int z = 0; z < g.order(); ++z)
        if (bn.cell_of_element[z] < 0) {
          ok = false;
          wit = "element " + g.label(z) + " lies in no cell";
          break;
        }
    add("Bruhat cells partition G", ok, wit);
  }

  return rep;
}

}  // namespace buildings::fingroup
