#include "preord/finitegroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace preord {

namespace {

using Perm = std::vector<int>;

FiniteGroup from_permutations(const std::vector<Perm>& perms) {
  const std::size_t n = perms.size();
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Perm c(perms[a].size());
      for (std::size_t x = 0; x < c.size(); ++x) c[x] = perms[a][perms[b][x]];
      auto it = std::find(perms.begin(), perms.end(), c);
      table[a][b] = static_cast<Elem>(it - perms.begin());
    }
  return FiniteGroup::validate(table);
}

std::string elem_str(Elem e) { return std::to_string(e); }

}  // namespace

FiniteGroup FiniteGroup::validate(const std::vector<std::vector<Elem>>& table,
                                  std::size_t order_cap) {
  using K = GroupAxiomError::Kind;
  const std::size_t n = table.size();
  if (n == 0) throw GroupAxiomError(K::shape, "empty Cayley table");
  if (n > order_cap) {
    throw GroupAxiomError(K::order_cap, "group order " + std::to_string(n) +
                                            " exceeds the cap " + std::to_string(order_cap));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw GroupAxiomError(K::shape, "row " + std::to_string(i) + " has " +
                                          std::to_string(table[i].size()) + " entries, expected " +
                                          std::to_string(n));
    for (Elem x : table[i])
      if (x >= n) throw GroupAxiomError(K::shape, "entry " + elem_str(x) + " out of range");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n), col_seen(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[table[i][j]])
        throw GroupAxiomError(K::latin_square, "row " + std::to_string(i) + " repeats element " +
                                                   elem_str(table[i][j]));
      if (col_seen[table[j][i]])
        throw GroupAxiomError(K::latin_square, "column " + std::to_string(i) +
                                                   " repeats element " + elem_str(table[j][i]));
      row_seen[table[i][j]] = col_seen[table[j][i]] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (table[0][i] != i || table[i][0] != i)
      throw GroupAxiomError(K::identity, "element 0 is not an identity (fails at " +
                                             std::to_string(i) + ")");

  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.table_[i * n + j] = table[i][j];
  g.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) {
        g.inverse_[a] = static_cast<Elem>(b);
        found = true;
      }
    if (!found)
      throw GroupAxiomError(K::inverse, "element " + std::to_string(a) + " has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Elem ab = table[a][b];
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab][c] != table[a][table[b][c]])
          throw GroupAxiomError(K::associativity, "(" + std::to_string(a) + "*" +
                                                      std::to_string(b) + ")*" + std::to_string(c) +
                                                      " != " + std::to_string(a) + "*(" +
                                                      std::to_string(b) + "*" + std::to_string(c) +
                                                      ")");
    }
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Elem>((a + b) % n);
  return validate(t, std::max(n, kDefaultOrderCap));
}

FiniteGroup FiniteGroup::symmetric3() {
  return from_permutations({{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}});
}

FiniteGroup FiniteGroup::symmetric4() {
  std::vector<Perm> perms;
  Perm p{0, 1, 2, 3};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(perms);
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t a = x % n, b = y % n;
      bool sx = x >= n, sy = y >= n;
      std::size_t r;
      bool s;
      if (!sx && !sy) { r = (a + b) % n; s = false; }
      else if (!sx && sy) { r = (b + n - a) % n; s = true; }
      else if (sx && !sy) { r = (a + b) % n; s = true; }
      else { r = (b + n - a) % n; s = false; }
      t[x][y] = static_cast<Elem>(s ? n + r : r);
    }
  return validate(t);
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  std::vector<std::vector<Elem>> t(order_, std::vector<Elem>(order_));
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) t[i][j] = table_[i * order_ + j];
  return t;
}

// ---------------------------------------------------------------------------

bool contains(const ElemSet& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

ElemSet submonoid_closure(const FiniteGroup& g, std::span<const Elem> elems) {
  for (Elem e : elems)
    if (e >= g.order()) throw std::out_of_range("element " + std::to_string(e) + " out of range");
  std::vector<bool> in(g.order());
  std::deque<Elem> queue{0};
  in[0] = true;
  while (!queue.empty()) {
    Elem y = queue.front();
    queue.pop_front();
    for (Elem x : elems) {
      Elem z = g.mul(y, x);
      if (!in[z]) {
        in[z] = true;
        queue.push_back(z);
      }
    }
  }
  ElemSet out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(static_cast<Elem>(i));
  return out;
}

ElemSet normal_closure(const FiniteGroup& g, std::span<const Elem> elems) {
  std::vector<bool> seen(g.order());
  ElemSet conjugates;
  for (Elem x : elems)
    for (std::size_t h = 0; h < g.order(); ++h) {
      Elem c = g.conj(static_cast<Elem>(h), x);
      if (!seen[c]) {
        seen[c] = true;
        conjugates.push_back(c);
      }
    }
  return submonoid_closure(g, conjugates);
}

bool is_normal(const FiniteGroup& g, const ElemSet& s) {
  if (s.empty() || s.front() != 0) return false;
  for (Elem a : s)
    for (Elem b : s)
      if (!contains(s, g.mul(a, b))) return false;
  for (Elem x : s)
    for (std::size_t h = 0; h < g.order(); ++h)
      if (!contains(s, g.conj(static_cast<Elem>(h), x))) return false;
  return true;
}

std::vector<Elem> generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  ElemSet span{0};
  for (std::size_t x = 1; x < g.order(); ++x) {
    if (contains(span, static_cast<Elem>(x))) continue;
    gens.push_back(static_cast<Elem>(x));
    span = submonoid_closure(g, gens);
  }
  return gens;
}

// ---------------------------------------------------------------------------

FinMorphism::FinMorphism(FiniteGroup dom, FiniteGroup cod, std::vector<Elem> map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  if (map_.size() != dom_.order())
    throw HomomorphismError(0, 0, "map has " + std::to_string(map_.size()) +
                                      " entries for a group of order " +
                                      std::to_string(dom_.order()));
  for (Elem y : map_)
    if (y >= cod_.order())
      throw HomomorphismError(0, 0, "image " + std::to_string(y) + " out of range");
  for (std::size_t a = 0; a < dom_.order(); ++a)
    for (std::size_t b = 0; b < dom_.order(); ++b) {
      Elem ab = dom_.mul(static_cast<Elem>(a), static_cast<Elem>(b));
      if (map_[ab] != cod_.mul(map_[a], map_[b]))
        throw HomomorphismError(static_cast<Elem>(a), static_cast<Elem>(b),
                                "map(" + std::to_string(a) + "*" + std::to_string(b) +
                                    ") != map(" + std::to_string(a) + ")*map(" +
                                    std::to_string(b) + ")");
    }
}

FinMorphism FinMorphism::identity(const FiniteGroup& g) {
  std::vector<Elem> m(g.order());
  std::iota(m.begin(), m.end(), Elem{0});
  return FinMorphism(g, g, m);
}

FinMorphism FinMorphism::trivial(const FiniteGroup& dom, const FiniteGroup& cod) {
  return FinMorphism(dom, cod, std::vector<Elem>(dom.order(), 0));
}

ElemSet FinMorphism::image() const {
  ElemSet s(map_.begin(), map_.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

ElemSet FinMorphism::kernel() const {
  ElemSet s;
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] == 0) s.push_back(static_cast<Elem>(i));
  return s;
}

bool FinMorphism::is_trivial() const {
  return std::all_of(map_.begin(), map_.end(), [](Elem y) { return y == 0; });
}

FinMorphism hom_verify(const FiniteGroup& dom, const FiniteGroup& cod,
                       const std::vector<Elem>& map) {
  return FinMorphism(dom, cod, map);
}

FinMorphism compose(const FinMorphism& first, const FinMorphism& second) {
  if (!(first.cod() == second.dom()))
    throw std::invalid_argument("compose: codomain of the first map is not the domain of the second");
  std::vector<Elem> m(first.dom().order());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = second.apply(first.apply(static_cast<Elem>(x)));
  return FinMorphism(first.dom(), second.cod(), m);
}

bool is_injective(const FinMorphism& f) { return f.kernel().size() == 1; }
bool is_surjective(const FinMorphism& f) { return f.image().size() == f.cod().order(); }

FinSubgroup subgroup(const FiniteGroup& g, const ElemSet& s) {
  if (s.empty() || s.front() != 0) throw std::invalid_argument("subgroup must contain the identity");
  std::vector<std::vector<Elem>> t(s.size(), std::vector<Elem>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      Elem p = g.mul(s[i], s[j]);
      auto it = std::lower_bound(s.begin(), s.end(), p);
      if (it == s.end() || *it != p) throw std::invalid_argument("element set is not closed");
      t[i][j] = static_cast<Elem>(it - s.begin());
    }
  FiniteGroup sub = FiniteGroup::validate(t, std::max(s.size(), kDefaultOrderCap));
  return FinSubgroup{sub, FinMorphism(sub, g, std::vector<Elem>(s.begin(), s.end()))};
}

FinQuotient quotient(const FiniteGroup& g, const ElemSet& n) {
  if (!is_normal(g, n)) throw NotNormal("element set is not a normal subgroup");
  const std::size_t order = g.order();
  std::vector<Elem> coset(order, 0);
  std::vector<bool> assigned(order);
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < order; ++x) {
    if (assigned[x]) continue;
    Elem idx = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(x));
    for (Elem k : n) {
      Elem y = g.mul(static_cast<Elem>(x), k);
      coset[y] = idx;
      assigned[y] = true;
    }
  }
  std::vector<std::vector<Elem>> t(reps.size(), std::vector<Elem>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) t[i][j] = coset[g.mul(reps[i], reps[j])];
  FiniteGroup q = FiniteGroup::validate(t, std::max(reps.size(), kDefaultOrderCap));
  return FinQuotient{q, FinMorphism(g, q, coset)};
}

std::optional<FinMorphism> extend_hom(const FiniteGroup& dom, const FiniteGroup& cod,
                                      std::span<const Elem> gens,
                                      std::span<const Elem> images) {
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> phi(dom.order(), unset);
  phi[0] = 0;
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem y = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem z = dom.mul(y, gens[i]);
      Elem v = cod.mul(phi[y], images[i]);
      if (phi[z] == unset) {
        phi[z] = v;
        queue.push_back(z);
      } else if (phi[z] != v) {
        return std::nullopt;
      }
    }
  }
  if (std::find(phi.begin(), phi.end(), unset) != phi.end()) return std::nullopt;
  // every edge y -> y*g is consistent, so phi is multiplicative
  return FinMorphism(dom, cod, phi);
}

std::vector<FinMorphism> enumerate_homs(
    const FiniteGroup& dom, const FiniteGroup& cod, std::span<const Elem> gens,
    const std::vector<std::vector<Elem>>& candidates,
    const std::function<bool(const FinMorphism&)>& accept, std::size_t limit) {
  std::vector<FinMorphism> out;
  std::vector<Elem> images(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == gens.size()) {
      auto h = extend_hom(dom, cod, gens, images);
      if (h && accept(*h)) out.push_back(std::move(*h));
      return;
    }
    for (Elem c : candidates[i]) {
      images[i] = c;
      rec(i + 1);
      if (out.size() >= limit) return;
    }
  };
  rec(0);
  return out;
}

}  // namespace preord
