/* Simplicial sets, crossed group actions, normalized chains.

   Everything runs on the Eilenberg-Zilber normal form: a simplex is a
   monotone surjection u applied to a nondegenerate core, and apply()
   renormalizes after composing with an arbitrary monotone map by repeatedly
   splitting off the largest missing value as a coface and replacing the
   core by its stored face.  The loop terminates because the core dimension
   drops at every step. */

#include "buildings/simplicial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace buildings::simplicial {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_characteristic(long long c) {
  if (c != 0 && !is_prime(c))
    throw InputError("characteristic must be 0 or a prime, got " +
                     std::to_string(c));
}

bool monotone(const std::vector<int>& f) {
  for (std::size_t j = 1; j < f.size(); ++j)
    if (f[j] < f[j - 1]) return false;
  return true;
}

bool surjective_onto(const std::vector<int>& u, int target_dim) {
  std::vector<char> seen(static_cast<std::size_t>(target_dim) + 1, 0);
  for (int v : u) {
    if (v < 0 || v > target_dim) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

/* v with the gap at i closed; v must not equal i. */
int collapse_at(int v, int i) { return v < i ? v : v - 1; }

/* Monotone surjections [n] ->> [k], lexicographically by value vector. */
std::vector<std::vector<int>> monotone_surjections(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n) + 1, 0);
  /* cur[0] = 0 always; each later entry repeats or increments. */
  auto rec = [&](auto&& self, int pos, int top) -> void {
    if (pos == n + 1) {
      if (top == k) out.push_back(cur);
      return;
    }
    cur[static_cast<std::size_t>(pos)] = top;
    self(self, pos + 1, top);
    if (top < k) {
      cur[static_cast<std::size_t>(pos)] = top + 1;
      self(self, pos + 1, top + 1);
    }
  };
  if (n < 0 || k < 0 || k > n) return out;
  rec(rec, 1, 0);
  return out;
}

struct RefLess {
  bool operator()(const SimplexRef& a, const SimplexRef& b) const {
    if (a.core_dim != b.core_dim) return a.core_dim < b.core_dim;
    if (a.core_id != b.core_id) return a.core_id < b.core_id;
    return a.u < b.u;
  }
};

}  // namespace

std::vector<int> identity_perm(int size) {
  std::vector<int> p(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size())) return false;
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

std::vector<int> compose_perms(const std::vector<int>& p,
                               const std::vector<int>& q) {
  if (p.size() != q.size())
    throw InputError("permutation size mismatch in composition");
  std::vector<int> r(p.size());
  for (std::size_t k = 0; k < q.size(); ++k)
    r[k] = p[static_cast<std::size_t>(q[k])];
  return r;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  if (!is_permutation(p)) throw InputError("not a permutation");
  std::vector<int> r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    r[static_cast<std::size_t>(p[k])] = static_cast<int>(k);
  return r;
}

int perm_parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv & 1;
}

std::vector<int> symmetric_face(const std::vector<int>& phi, int i) {
  const int n = static_cast<int>(phi.size()) - 1;
  if (n < 1) throw IndexOutOfRange("face of a permutation of a single slot");
  if (i < 0 || i > n) throw IndexOutOfRange("face index " + std::to_string(i));
  if (!is_permutation(phi)) throw InputError("not a permutation");
  /* Delete source slot i, close the target gap at phi(i). */
  const int gap = phi[static_cast<std::size_t>(i)];
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int src = k < i ? k : k + 1;
    out[static_cast<std::size_t>(k)] =
        collapse_at(phi[static_cast<std::size_t>(src)], gap);
  }
  return out;
}

std::vector<int> symmetric_degeneracy(const std::vector<int>& phi, int i) {
  const int n = static_cast<int>(phi.size()) - 1;
  if (n < 0) throw InputError("empty permutation");
  if (i < 0 || i > n) throw IndexOutOfRange("degeneracy index " + std::to_string(i));
  if (!is_permutation(phi)) throw InputError("not a permutation");
  /* Double source slot i onto the target pair (phi(i), phi(i)+1); every
     other value is phi with the gap above phi(i) opened. */
  const int dbl = phi[static_cast<std::size_t>(i)];
  std::vector<int> out(static_cast<std::size_t>(n) + 2);
  for (int k = 0; k <= n + 1; ++k) {
    int val;
    if (k == i) {
      val = dbl;
    } else if (k == i + 1) {
      val = dbl + 1;
    } else {
      const int v = k < i ? k : k - 1;
      const int w = phi[static_cast<std::size_t>(v)];
      val = w < dbl ? w : w + 1;
    }
    out[static_cast<std::size_t>(k)] = val;
  }
  return out;
}

std::string ref_label(const SimplexRef& z) {
  std::ostringstream os;
  os << "d" << z.core_dim << "#" << z.core_id;
  if (z.degenerate()) {
    os << "[";
    for (std::size_t j = 0; j < z.u.size(); ++j) {
      if (j) os << ",";
      os << z.u[j];
    }
    os << "]";
  }
  return os.str();
}

SimplicialSet::SimplicialSet(std::vector<int> counts,
                             std::vector<std::vector<std::vector<SimplexRef>>> faces)
    : counts_(std::move(counts)), faces_(std::move(faces)) {
  if (faces_.size() != counts_.size())
    throw MalformedSimplicialSet("face table does not match dimension count");
  while (!counts_.empty() && counts_.back() == 0) {
    if (!faces_.back().empty())
      throw MalformedSimplicialSet("faces listed for an empty dimension");
    counts_.pop_back();
    faces_.pop_back();
  }
  if (counts_.empty())
    throw MalformedSimplicialSet("a simplicial set needs at least one vertex");
  for (int n = 0; n <= dimension(); ++n) {
    const std::size_t sn = static_cast<std::size_t>(n);
    if (counts_[sn] < 0) throw MalformedSimplicialSet("negative simplex count");
    if (counts_[sn] == 0 && n < dimension())
      throw MalformedSimplicialSet("empty dimension below a nonempty one");
    if (n == 0) {
      if (!faces_[0].empty())
        throw MalformedSimplicialSet("vertices have no faces");
      continue;
    }
    if (static_cast<int>(faces_[sn].size()) != counts_[sn])
      throw MalformedSimplicialSet("face table size mismatch at dimension " +
                                   std::to_string(n));
    for (int x = 0; x < counts_[sn]; ++x) {
      const auto& fx = faces_[sn][static_cast<std::size_t>(x)];
      if (static_cast<int>(fx.size()) != n + 1)
        throw MalformedSimplicialSet("simplex needs " + std::to_string(n + 1) +
                                     " faces at dimension " + std::to_string(n));
      for (const SimplexRef& fr : fx) {
        if (fr.dim() != n - 1)
          throw MalformedSimplicialSet("face of an n-simplex must have dimension n-1");
        if (fr.core_dim < 0 || fr.core_dim > n - 1 ||
            fr.core_id < 0 || fr.core_id >= counts_[static_cast<std::size_t>(fr.core_dim)])
          throw MalformedSimplicialSet("face reference does not resolve");
        if (!monotone(fr.u) || !surjective_onto(fr.u, fr.core_dim))
          throw MalformedSimplicialSet("face degeneracy word is not a monotone surjection");
      }
    }
  }
  /* Simplicial identities on the stored data: del^i del^j = del^{j-1} del^i
     for i < j, evaluated through the normal form. */
  for (int n = 2; n <= dimension(); ++n)
    for (int x = 0; x < counts_[static_cast<std::size_t>(n)]; ++x) {
      const SimplexRef z = nondeg_ref(n, x);
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (face(face(z, j), i) != face(face(z, i), j - 1))
            throw MalformedSimplicialSet(
                "simplicial identity fails at dimension " + std::to_string(n) +
                " simplex " + std::to_string(x) + " (i=" + std::to_string(i) +
                ", j=" + std::to_string(j) + ")");
    }
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(counts_.size()));
  for (int c : counts_) mix(static_cast<std::uint64_t>(c) + 1);
  for (const auto& level : faces_)
    for (const auto& fx : level)
      for (const SimplexRef& fr : fx) {
        mix(static_cast<std::uint64_t>(fr.core_dim) + 1);
        mix(static_cast<std::uint64_t>(fr.core_id) + 1);
        for (int v : fr.u) mix(static_cast<std::uint64_t>(v) + 1);
      }
  tag_ = h;
}

SimplicialSet SimplicialSet::from_ordered_complex(
    const std::vector<std::vector<std::vector<int>>>& by_dim) {
  if (by_dim.empty() || by_dim[0].empty())
    throw MalformedSimplicialSet("an ordered complex needs at least one vertex");
  const int vertices = static_cast<int>(by_dim[0].size());
  for (int k = 0; k < vertices; ++k)
    if (by_dim[0][static_cast<std::size_t>(k)] != std::vector<int>{k})
      throw MalformedSimplicialSet("vertex list must be {0}, {1}, ... in order");
  std::vector<std::map<std::vector<int>, int>> index(by_dim.size());
  for (std::size_t n = 0; n < by_dim.size(); ++n)
    for (std::size_t x = 0; x < by_dim[n].size(); ++x) {
      const auto& tup = by_dim[n][x];
      if (tup.size() != n + 1)
        throw MalformedSimplicialSet("tuple length does not match its dimension");
      for (std::size_t j = 0; j < tup.size(); ++j) {
        if (tup[j] < 0 || tup[j] >= vertices)
          throw MalformedSimplicialSet("vertex id out of range in a tuple");
        if (j > 0 && tup[j] <= tup[j - 1])
          throw MalformedSimplicialSet("tuples must be strictly increasing");
      }
      if (!index[n].emplace(tup, static_cast<int>(x)).second)
        throw MalformedSimplicialSet("duplicate tuple in dimension " +
                                     std::to_string(n));
    }
  std::vector<int> counts;
  std::vector<std::vector<std::vector<SimplexRef>>> faces(by_dim.size());
  for (const auto& level : by_dim) counts.push_back(static_cast<int>(level.size()));
  for (std::size_t n = 1; n < by_dim.size(); ++n) {
    faces[n].resize(by_dim[n].size());
    for (std::size_t x = 0; x < by_dim[n].size(); ++x) {
      const auto& tup = by_dim[n][x];
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<int> sub;
        for (std::size_t j = 0; j <= n; ++j)
          if (j != i) sub.push_back(tup[j]);
        auto it = index[n - 1].find(sub);
        if (it == index[n - 1].end())
          throw MalformedSimplicialSet("face of a listed simplex is not listed");
        faces[n][x].push_back(SimplexRef{static_cast<int>(n) - 1, it->second,
                                         identity_perm(static_cast<int>(n))});
      }
    }
  }
  return SimplicialSet(std::move(counts), std::move(faces));
}

int SimplicialSet::count(int n) const {
  if (n < 0) throw IndexOutOfRange("negative dimension");
  if (n > dimension()) return 0;
  return counts_[static_cast<std::size_t>(n)];
}

SimplexRef SimplicialSet::nondeg_ref(int n, int id) const {
  if (n < 0 || n > dimension() || id < 0 || id >= count(n))
    throw IndexOutOfRange("no nondegenerate simplex " + std::to_string(id) +
                          " in dimension " + std::to_string(n));
  return SimplexRef{n, id, identity_perm(n + 1)};
}

const SimplexRef& SimplicialSet::stored_face(int n, int id, int i) const {
  if (n < 1 || n > dimension() || id < 0 || id >= count(n) || i < 0 || i > n)
    throw IndexOutOfRange("no stored face (" + std::to_string(n) + ", " +
                          std::to_string(id) + ", " + std::to_string(i) + ")");
  return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(id)]
               [static_cast<std::size_t>(i)];
}

SimplexRef SimplicialSet::apply(const std::vector<int>& f,
                                const SimplexRef& z) const {
  if (f.empty()) throw InputError("a monotone map needs a nonempty value list");
  if (!monotone(f)) throw InputError("map is not monotone");
  for (int v : f)
    if (v < 0 || v > z.dim())
      throw InputError("map value out of range of the simplex dimension");
  std::vector<int> t(f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    t[j] = z.u[static_cast<std::size_t>(f[j])];
  int d = z.core_dim;
  int id = z.core_id;
  for (;;) {
    std::vector<char> seen(static_cast<std::size_t>(d) + 1, 0);
    for (int v : t) seen[static_cast<std::size_t>(v)] = 1;
    int c = -1;
    for (int v = d; v >= 0; --v)
      if (!seen[static_cast<std::size_t>(v)]) {
        c = v;
        break;
      }
    if (c < 0) return SimplexRef{d, id, std::move(t)};
    const SimplexRef& fr = stored_face(d, id, c);
    for (int& v : t) {
      const int shifted = v < c ? v : v - 1;
      v = fr.u[static_cast<std::size_t>(shifted)];
    }
    d = fr.core_dim;
    id = fr.core_id;
  }
}

SimplexRef SimplicialSet::face(const SimplexRef& z, int i) const {
  const int n = z.dim();
  if (n < 1) throw IndexOutOfRange("a vertex has no faces");
  if (i < 0 || i > n) throw IndexOutOfRange("face index " + std::to_string(i));
  std::vector<int> f(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    f[static_cast<std::size_t>(k)] = k < i ? k : k + 1;
  return apply(f, z);
}

SimplexRef SimplicialSet::degeneracy(const SimplexRef& z, int i) const {
  const int n = z.dim();
  if (i < 0 || i > n) throw IndexOutOfRange("degeneracy index " + std::to_string(i));
  std::vector<int> f(static_cast<std::size_t>(n) + 2);
  for (int k = 0; k <= n + 1; ++k)
    f[static_cast<std::size_t>(k)] = k <= i ? k : k - 1;
  return apply(f, z);
}

std::vector<SimplexRef> SimplicialSet::simplices_of_dim(int n) const {
  if (n < 0) throw IndexOutOfRange("negative dimension");
  std::vector<SimplexRef> out;
  for (int k = 0; k <= std::min(n, dimension()); ++k)
    for (const auto& u : monotone_surjections(n, k))
      for (int id = 0; id < count(k); ++id)
        out.push_back(SimplexRef{k, id, u});
  return out;
}

CrossedAction make_action(const SimplicialSet& x, fingroup::GroupPtr group,
                          std::vector<std::vector<std::vector<int>>> on,
                          std::vector<std::vector<std::vector<std::vector<int>>>> r) {
  if (!group) throw InputError("make_action needs a group");
  const int top = x.dimension();
  const int ord = group->order();
  if (static_cast<int>(on.size()) != top + 1 || static_cast<int>(r.size()) != top + 1)
    throw NotAnAction("action tables must cover dimensions 0.." + std::to_string(top));
  for (int n = 0; n <= top; ++n) {
    const auto& level = on[static_cast<std::size_t>(n)];
    const auto& rlevel = r[static_cast<std::size_t>(n)];
    if (static_cast<int>(level.size()) != ord || static_cast<int>(rlevel.size()) != ord)
      throw NotAnAction("action tables must cover every group element");
    for (int g = 0; g < ord; ++g) {
      const auto& row = level[static_cast<std::size_t>(g)];
      const auto& rrow = rlevel[static_cast<std::size_t>(g)];
      if (static_cast<int>(row.size()) != x.count(n) ||
          static_cast<int>(rrow.size()) != x.count(n))
        throw NotAnAction("action tables must cover every simplex in dimension " +
                          std::to_string(n));
      std::vector<char> hit(static_cast<std::size_t>(x.count(n)), 0);
      for (int s = 0; s < x.count(n); ++s) {
        const int img = row[static_cast<std::size_t>(s)];
        if (img < 0 || img >= x.count(n))
          throw NotAnAction("image simplex out of range");
        if (hit[static_cast<std::size_t>(img)])
          throw NotAnAction("group element is not injective on dimension " +
                            std::to_string(n));
        hit[static_cast<std::size_t>(img)] = 1;
        const auto& perm = rrow[static_cast<std::size_t>(s)];
        if (static_cast<int>(perm.size()) != n + 1 || !is_permutation(perm))
          throw NotAnAction("crossed datum is not a permutation of the face slots");
      }
    }
  }
  return CrossedAction{std::move(group), x.tag(), std::move(on), std::move(r)};
}

CrossedAction trivial_action(const SimplicialSet& x, fingroup::GroupPtr group) {
  if (!group) throw InputError("trivial_action needs a group");
  const int top = x.dimension();
  const int ord = group->order();
  std::vector<std::vector<std::vector<int>>> on(static_cast<std::size_t>(top) + 1);
  std::vector<std::vector<std::vector<std::vector<int>>>> r(
      static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    std::vector<int> fix(static_cast<std::size_t>(x.count(n)));
    for (int s = 0; s < x.count(n); ++s) fix[static_cast<std::size_t>(s)] = s;
    on[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(ord), fix);
    r[static_cast<std::size_t>(n)].assign(
        static_cast<std::size_t>(ord),
        std::vector<std::vector<int>>(static_cast<std::size_t>(x.count(n)),
                                      identity_perm(n + 1)));
  }
  return make_action(x, std::move(group), std::move(on), std::move(r));
}

CrossedAction action_from_generators(
    const SimplicialSet& x, fingroup::GroupPtr group,
    const std::vector<std::vector<std::vector<int>>>& gen_on,
    const std::vector<std::vector<std::vector<std::vector<int>>>>& gen_r) {
  if (!group) throw InputError("action_from_generators needs a group");
  const auto& gens = group->generators();
  if (gen_on.size() != gens.size() || gen_r.size() != gens.size())
    throw NotAnAction("one action table per generator is required");
  const int top = x.dimension();
  const int ord = group->order();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (static_cast<int>(gen_on[k].size()) != top + 1 ||
        static_cast<int>(gen_r[k].size()) != top + 1)
      throw NotAnAction("generator table must cover dimensions 0.." +
                        std::to_string(top));
    for (int n = 0; n <= top; ++n) {
      const std::size_t sn = static_cast<std::size_t>(n);
      if (static_cast<int>(gen_on[k][sn].size()) != x.count(n) ||
          static_cast<int>(gen_r[k][sn].size()) != x.count(n))
        throw NotAnAction("generator table must cover every simplex in dimension " +
                          std::to_string(n));
      for (int s = 0; s < x.count(n); ++s) {
        const int img = gen_on[k][sn][static_cast<std::size_t>(s)];
        if (img < 0 || img >= x.count(n))
          throw NotAnAction("generator image simplex out of range");
        const auto& perm = gen_r[k][sn][static_cast<std::size_t>(s)];
        if (static_cast<int>(perm.size()) != n + 1 || !is_permutation(perm))
          throw NotAnAction("generator crossed datum is not a permutation");
      }
    }
  }
  /* Seed identity, then a Cayley breadth-first search: data for g.v is the
     generator datum chained onto the datum of v through the cocycle rule
     R(g v, z) = R(g, v.z) R(v, z). */
  std::vector<std::vector<std::vector<int>>> on(
      static_cast<std::size_t>(top) + 1,
      std::vector<std::vector<int>>(static_cast<std::size_t>(ord)));
  std::vector<std::vector<std::vector<std::vector<int>>>> r(
      static_cast<std::size_t>(top) + 1,
      std::vector<std::vector<std::vector<int>>>(static_cast<std::size_t>(ord)));
  std::vector<char> known(static_cast<std::size_t>(ord), 0);
  const int e = group->identity();
  known[static_cast<std::size_t>(e)] = 1;
  for (int n = 0; n <= top; ++n) {
    auto& level = on[static_cast<std::size_t>(n)][static_cast<std::size_t>(e)];
    level.resize(static_cast<std::size_t>(x.count(n)));
    for (int s = 0; s < x.count(n); ++s) level[static_cast<std::size_t>(s)] = s;
    r[static_cast<std::size_t>(n)][static_cast<std::size_t>(e)].assign(
        static_cast<std::size_t>(x.count(n)), identity_perm(n + 1));
  }
  std::vector<int> queue{e};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const int w = group->mul(gens[k], v);
      if (known[static_cast<std::size_t>(w)]) continue;
      known[static_cast<std::size_t>(w)] = 1;
      for (int n = 0; n <= top; ++n) {
        const std::size_t sn = static_cast<std::size_t>(n);
        auto& wo = on[sn][static_cast<std::size_t>(w)];
        auto& wr = r[sn][static_cast<std::size_t>(w)];
        wo.resize(static_cast<std::size_t>(x.count(n)));
        wr.resize(static_cast<std::size_t>(x.count(n)));
        const auto& vo = on[sn][static_cast<std::size_t>(v)];
        const auto& vr = r[sn][static_cast<std::size_t>(v)];
        for (int s = 0; s < x.count(n); ++s) {
          const int mid = vo[static_cast<std::size_t>(s)];
          wo[static_cast<std::size_t>(s)] =
              gen_on[k][sn][static_cast<std::size_t>(mid)];
          wr[static_cast<std::size_t>(s)] = compose_perms(
              gen_r[k][sn][static_cast<std::size_t>(mid)],
              vr[static_cast<std::size_t>(s)]);
        }
      }
      queue.push_back(w);
    }
  }
  if (static_cast<int>(queue.size()) != ord)
    throw NotAnAction("the listed generators do not generate the group");
  return make_action(x, std::move(group), std::move(on), std::move(r));
}

ActedSimplex act(const SimplicialSet& x, const CrossedAction& a, int g,
                 const SimplexRef& z) {
  if (a.set_tag != x.tag())
    throw ContextMismatch("action belongs to a different simplicial set");
  if (g < 0 || g >= a.group->order())
    throw IndexOutOfRange("group element " + std::to_string(g));
  if (!z.degenerate()) {
    const std::size_t sn = static_cast<std::size_t>(z.core_dim);
    return ActedSimplex{
        x.nondeg_ref(z.core_dim,
                     a.on[sn][static_cast<std::size_t>(g)]
                         [static_cast<std::size_t>(z.core_id)]),
        a.r[sn][static_cast<std::size_t>(g)][static_cast<std::size_t>(z.core_id)]};
  }
  /* Peel the smallest repeated slot: z = s^i(z') forces both the image and
     the crossed permutation of z from those of z'. */
  int i = 0;
  while (z.u[static_cast<std::size_t>(i)] != z.u[static_cast<std::size_t>(i) + 1]) ++i;
  SimplexRef inner{z.core_dim, z.core_id, {}};
  inner.u.reserve(z.u.size() - 1);
  for (std::size_t j = 0; j < z.u.size(); ++j)
    if (j != static_cast<std::size_t>(i) + 1) inner.u.push_back(z.u[j]);
  const ActedSimplex sub = act(x, a, g, inner);
  ActedSimplex out;
  out.image = x.degeneracy(sub.image, sub.r[static_cast<std::size_t>(i)]);
  out.r = symmetric_degeneracy(sub.r, i);
  return out;
}

CrossedReport check_crossed(const SimplicialSet& x, const CrossedAction& a) {
  if (a.set_tag != x.tag())
    throw ContextMismatch("action belongs to a different simplicial set");
  CrossedReport report;
  auto flag = [&report](const std::string& cond, const std::string& wit) {
    report.violations.push_back(CrossedViolation{cond, wit});
  };
  const fingroup::FiniteGroup& grp = *a.group;
  const int ord = grp.order();
  const int e = grp.identity();
  const int top = x.dimension();

  /* Precompute act on every simplex of dimension <= top+1 so the pair loop
     is pure lookup. */
  std::vector<std::vector<SimplexRef>> all(static_cast<std::size_t>(top) + 2);
  std::vector<std::map<SimplexRef, int, RefLess>> index(
      static_cast<std::size_t>(top) + 2);
  std::vector<std::vector<std::vector<ActedSimplex>>> acted(
      static_cast<std::size_t>(top) + 2);
  for (int n = 0; n <= top + 1; ++n) {
    const std::size_t sn = static_cast<std::size_t>(n);
    all[sn] = x.simplices_of_dim(n);
    for (std::size_t z = 0; z < all[sn].size(); ++z)
      index[sn].emplace(all[sn][z], static_cast<int>(z));
    acted[sn].resize(static_cast<std::size_t>(ord));
    for (int g = 0; g < ord; ++g) {
      acted[sn][static_cast<std::size_t>(g)].reserve(all[sn].size());
      for (const SimplexRef& z : all[sn])
        acted[sn][static_cast<std::size_t>(g)].push_back(act(x, a, g, z));
    }
  }
  auto at = [&](int n, int g, int zi) -> const ActedSimplex& {
    return acted[static_cast<std::size_t>(n)][static_cast<std::size_t>(g)]
                [static_cast<std::size_t>(zi)];
  };
  auto pos = [&](int n, const SimplexRef& z) {
    return index[static_cast<std::size_t>(n)].at(z);
  };

  for (int n = 0; n <= top + 1; ++n) {
    const std::size_t sn = static_cast<std::size_t>(n);
    for (std::size_t zi = 0; zi < all[sn].size(); ++zi) {
      const SimplexRef& z = all[sn][zi];
      const std::string zl = "dim " + std::to_string(n) + " simplex " + ref_label(z);
      /* Identity element acts trivially with R = id. */
      if (at(n, e, static_cast<int>(zi)).image != z)
        flag("action", "identity moves " + zl);
      if (at(n, e, static_cast<int>(zi)).r != identity_perm(n + 1))
        flag("x1", "R(e, -) is not the identity at " + zl);
      for (int h = 0; h < ord; ++h) {
        const ActedSimplex& hz = at(n, h, static_cast<int>(zi));
        const int hzi = pos(n, hz.image);
        for (int g = 0; g < ord; ++g) {
          const ActedSimplex& ghz = at(n, g, hzi);
          const ActedSimplex& prod = at(n, grp.mul(g, h), static_cast<int>(zi));
          if (prod.image != ghz.image)
            flag("action", "(g h).z != g.(h.z) for g=" + grp.label(g) +
                               ", h=" + grp.label(h) + ", " + zl);
          if (prod.r != compose_perms(ghz.r, hz.r))
            flag("x1", "R(g h, z) != R(g, h.z) R(h, z) for g=" + grp.label(g) +
                           ", h=" + grp.label(h) + ", " + zl);
        }
      }
      for (int g = 0; g < ord; ++g) {
        const ActedSimplex& gz = at(n, g, static_cast<int>(zi));
        if (n >= 1)
          for (int i = 0; i <= n; ++i) {
            const SimplexRef fz = x.face(z, i);
            const ActedSimplex& gfz = at(n - 1, g, pos(n - 1, fz));
            if (symmetric_face(gz.r, i) != gfz.r)
              flag("x2", "S(del^" + std::to_string(i) + ") breaks R for g=" +
                             grp.label(g) + ", " + zl);
            if (gfz.image != x.face(gz.image, gz.r[static_cast<std::size_t>(i)]))
              flag("x3", "g.del^" + std::to_string(i) + "(z) != del^{R(g,z)(" +
                             std::to_string(i) + ")}(g.z) for g=" + grp.label(g) +
                             ", " + zl);
          }
        if (n <= top)
          for (int i = 0; i <= n; ++i) {
            const SimplexRef dz = x.degeneracy(z, i);
            const ActedSimplex& gdz = at(n + 1, g, pos(n + 1, dz));
            if (symmetric_degeneracy(gz.r, i) != gdz.r)
              flag("x2", "S(sig^" + std::to_string(i) + ") breaks R for g=" +
                             grp.label(g) + ", " + zl);
            if (gdz.image != x.degeneracy(gz.image, gz.r[static_cast<std::size_t>(i)]))
              flag("x4", "g.sig^" + std::to_string(i) + "(z) != sig^{R(g,z)(" +
                             std::to_string(i) + ")}(g.z) for g=" + grp.label(g) +
                             ", " + zl);
          }
      }
    }
  }
  return report;
}

ChainComplex chain_complex(const SimplicialSet& x, long long characteristic) {
  check_characteristic(characteristic);
  ChainComplex c;
  c.characteristic = characteristic;
  c.dims = x.counts();
  const FieldScalar zero = FieldScalar::zero(characteristic);
  const FieldScalar one = FieldScalar::one(characteristic);
  c.boundaries.push_back(FMat(0, static_cast<std::size_t>(x.count(0)), zero));
  for (int k = 1; k <= x.dimension(); ++k) {
    FMat d(static_cast<std::size_t>(x.count(k - 1)),
           static_cast<std::size_t>(x.count(k)), zero);
    for (int s = 0; s < x.count(k); ++s)
      for (int i = 0; i <= k; ++i) {
        const SimplexRef& fr = x.stored_face(k, s, i);
        if (fr.degenerate()) continue;
        FieldScalar& cell = d.at(static_cast<std::size_t>(fr.core_id),
                                 static_cast<std::size_t>(s));
        cell = (i % 2 == 0) ? cell + one : cell - one;
      }
    c.boundaries.push_back(std::move(d));
  }
  for (std::size_t k = 1; k + 1 < c.boundaries.size(); ++k) {
    const FMat square = fmat_mul(c.boundaries[k], c.boundaries[k + 1]);
    for (std::size_t i = 0; i < square.rows(); ++i)
      for (std::size_t j = 0; j < square.cols(); ++j)
        if (!square.at(i, j).is_zero())
          throw Error("boundary square is nonzero; face data is inconsistent");
  }
  return c;
}

std::vector<int> homology(const ChainComplex& c) {
  std::vector<int> h;
  const int top = static_cast<int>(c.dims.size()) - 1;
  for (int k = 0; k <= top; ++k) {
    const std::size_t rk = rank(c.boundaries[static_cast<std::size_t>(k)],
                                c.characteristic);
    const std::size_t rnext =
        k < top ? rank(c.boundaries[static_cast<std::size_t>(k) + 1], c.characteristic)
                : 0;
    h.push_back(c.dims[static_cast<std::size_t>(k)] - static_cast<int>(rk) -
                static_cast<int>(rnext));
  }
  return h;
}

std::vector<std::vector<FMat>> equivariant_chain_action(const SimplicialSet& x,
                                                        const CrossedAction& a,
                                                        const ChainComplex& c) {
  if (a.set_tag != x.tag())
    throw ContextMismatch("action belongs to a different simplicial set");
  if (c.dims != x.counts())
    throw ContextMismatch("chain complex belongs to a different simplicial set");
  const CrossedReport report = check_crossed(x, a);
  if (!report.ok())
    throw CrossedConditionViolated(report.violations.front().condition + ": " +
                                   report.violations.front().witness);
  const int ord = a.group->order();
  const FieldScalar zero = FieldScalar::zero(c.characteristic);
  const FieldScalar one = FieldScalar::one(c.characteristic);
  std::vector<std::vector<FMat>> out(static_cast<std::size_t>(ord));
  for (int g = 0; g < ord; ++g) {
    out[static_cast<std::size_t>(g)].reserve(c.dims.size());
    for (int k = 0; k <= x.dimension(); ++k) {
      const std::size_t sk = static_cast<std::size_t>(k);
      FMat m(static_cast<std::size_t>(x.count(k)),
             static_cast<std::size_t>(x.count(k)), zero);
      for (int s = 0; s < x.count(k); ++s) {
        const int img = a.on[sk][static_cast<std::size_t>(g)][static_cast<std::size_t>(s)];
        const int sign =
            perm_parity(a.r[sk][static_cast<std::size_t>(g)][static_cast<std::size_t>(s)]);
        m.at(static_cast<std::size_t>(img), static_cast<std::size_t>(s)) =
            sign == 0 ? one : zero - one;
      }
      out[static_cast<std::size_t>(g)].push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace buildings::simplicial
