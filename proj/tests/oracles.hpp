#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's arithmetic: pairings, closures, automorphisms and
// the duality condition are recomputed from residue vectors in plain floating
// point or brute force.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Residues = std::vector<std::int64_t>;

struct Group {
  std::vector<std::int64_t> orders;
  std::int64_t size = 1;
  std::int64_t exponent = 1;
  std::vector<Residues> elems;  // lexicographic order, first coordinate most significant

  explicit Group(std::vector<std::int64_t> o) : orders(std::move(o)) {
    for (auto n : orders) {
      size *= n;
      exponent = std::lcm(exponent, n);
    }
    Residues r(orders.size(), 0);
    for (std::int64_t i = 0; i < size; ++i) {
      elems.push_back(r);
      for (std::size_t j = orders.size(); j-- > 0;) {
        if (++r[j] < orders[j]) break;
        r[j] = 0;
      }
    }
  }

  std::int64_t index(const Residues& r) const {
    std::int64_t idx = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) idx = idx * orders[j] + r[j];
    return idx;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    Residues r(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) r[j] = (elems[a][j] + elems[b][j]) % orders[j];
    return index(r);
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    Residues r(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) r[j] = ((elems[a][j] - elems[b][j]) % orders[j] + orders[j]) % orders[j];
    return index(r);
  }
  std::int64_t scale(std::int64_t a, std::int64_t k) const {
    Residues r(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) r[j] = (elems[a][j] * k) % orders[j];
    return index(r);
  }
  // sum_j x_j y_j (L / n_j) mod L
  std::int64_t pair_exp(std::int64_t x, std::int64_t y) const {
    std::int64_t e = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) e += (elems[x][j] * elems[y][j] % orders[j]) * (exponent / orders[j]);
    return e % exponent;
  }
  // <x, y> = exp(2 pi i sum_j x_j y_j / n_j)
  std::complex<double> character(std::int64_t x, std::int64_t y) const {
    double phase = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) {
      phase += static_cast<double>((elems[x][j] * elems[y][j]) % orders[j]) / static_cast<double>(orders[j]);
    }
    return std::polar(1.0, 2 * std::numbers::pi * phase);
  }
};

// Multiplicity of each difference w - w' over ordered pairs.
inline std::vector<std::int64_t> differences(const Group& g, const std::vector<std::int64_t>& x) {
  std::vector<std::int64_t> nu(static_cast<std::size_t>(g.size), 0);
  for (auto a : x) {
    for (auto b : x) ++nu[static_cast<std::size_t>(g.sub(a, b))];
  }
  return nu;
}

inline std::vector<double> power_spectrum(const Group& g, const std::vector<std::int64_t>& s) {
  std::vector<double> out(static_cast<std::size_t>(g.size));
  for (std::int64_t y = 0; y < g.size; ++y) {
    std::complex<double> acc = 0;
    for (auto v : s) acc += g.character(v, y);
    out[static_cast<std::size_t>(y)] = std::norm(acc);
  }
  return out;
}

// |T| |sum_S <v,y>|^2 == |S|^2 nu_T(y) for every y, in floating point.
inline bool dual_from_spectrum(const std::vector<double>& spectrum, std::size_t s_size, const std::vector<std::int64_t>& nu_t,
                               std::size_t t_size) {
  if (s_size * t_size != spectrum.size()) return false;
  const double ss = static_cast<double>(s_size);
  for (std::size_t y = 0; y < spectrum.size(); ++y) {
    const double lhs = static_cast<double>(t_size) * spectrum[y];
    const double rhs = ss * ss * static_cast<double>(nu_t[y]);
    if (std::abs(lhs - rhs) > 1e-6 * (1 + rhs)) return false;
  }
  return true;
}

inline bool is_dual(const Group& g, const std::vector<std::int64_t>& s, const std::vector<std::int64_t>& t) {
  return dual_from_spectrum(power_spectrum(g, s), s.size(), differences(g, t), t.size());
}

// The subgroup generated by the differences x - x_0 is the whole group.
inline bool is_primitive(const Group& g, const std::vector<std::int64_t>& x) {
  std::set<std::int64_t> span{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::int64_t> cur(span.begin(), span.end());
    for (auto a : cur) {
      for (auto v : x) {
        if (span.insert(g.add(a, g.sub(v, x.front()))).second) grew = true;
      }
    }
  }
  return static_cast<std::int64_t>(span.size()) == g.size;
}

// All subsets of {1, ..., size-1} of size k - 1, each with 0 prepended.
inline std::vector<std::vector<std::int64_t>> subsets_with_zero(std::int64_t size, std::int64_t k) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur{0};
  auto rec = [&](auto&& self, std::int64_t next) -> void {
    if (static_cast<std::int64_t>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t x = next; x < size; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

struct Automorphism {
  std::vector<std::int64_t> forward;       // psi
  std::vector<std::int64_t> dual_inverse;  // (psi*)^{-1}
};

// Every automorphism, found by trying all generator images and keeping the
// bijective ones; the adjoint is found by searching for z with <psi x, y> = <x, z>.
inline std::vector<Automorphism> automorphisms(const Group& g) {
  const auto rank = g.orders.size();
  std::vector<Automorphism> out;
  std::vector<std::int64_t> images(rank, 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == rank) {
      std::vector<std::int64_t> fwd(static_cast<std::size_t>(g.size));
      std::vector<char> hit(static_cast<std::size_t>(g.size), 0);
      for (std::int64_t x = 0; x < g.size; ++x) {
        std::int64_t v = 0;
        for (std::size_t i = 0; i < rank; ++i) v = g.add(v, g.scale(images[i], g.elems[x][i]));
        if (hit[static_cast<std::size_t>(v)]) return;
        hit[static_cast<std::size_t>(v)] = 1;
        fwd[static_cast<std::size_t>(x)] = v;
      }
      std::vector<std::int64_t> adj(static_cast<std::size_t>(g.size), -1);
      for (std::int64_t y = 0; y < g.size; ++y) {
        for (std::int64_t z = 0; z < g.size && adj[static_cast<std::size_t>(y)] < 0; ++z) {
          bool ok = true;
          for (std::int64_t x = 0; x < g.size && ok; ++x) {
            ok = g.pair_exp(fwd[static_cast<std::size_t>(x)], y) == g.pair_exp(x, z);
          }
          if (ok) adj[static_cast<std::size_t>(y)] = z;
        }
      }
      std::vector<std::int64_t> inv(static_cast<std::size_t>(g.size));
      for (std::int64_t y = 0; y < g.size; ++y) inv[static_cast<std::size_t>(adj[static_cast<std::size_t>(y)])] = y;
      out.push_back({std::move(fwd), std::move(inv)});
      return;
    }
    for (std::int64_t c = 0; c < g.size; ++c) {
      if (g.scale(c, g.orders[j]) != 0) continue;
      images[j] = c;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<std::int64_t> translation_min(const Group& g, const std::vector<std::int64_t>& x) {
  std::vector<std::int64_t> best;
  for (auto base : x) {
    std::vector<std::int64_t> cur;
    for (auto v : x) cur.push_back(g.sub(v, base));
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

using Pair = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;

inline std::vector<std::int64_t> mapped(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& table) {
  std::vector<std::int64_t> out;
  for (auto v : x) out.push_back(table[static_cast<std::size_t>(v)]);
  return out;
}

// Least (S, T) under independent translations and simultaneous automorphisms.
inline Pair canonical_pair(const Group& g, const Pair& p, const std::vector<Automorphism>& autos) {
  Pair best{translation_min(g, p.first), translation_min(g, p.second)};
  for (const auto& a : autos) {
    Pair cand{translation_min(g, mapped(p.first, a.forward)), translation_min(g, mapped(p.second, a.dual_inverse))};
    if (cand < best) best = std::move(cand);
  }
  return best;
}

// Filter-free double enumeration: every S and T containing 0 of the right sizes.
struct Census {
  std::set<Pair> pairs;   // primitive dual pairs, both containing 0
  std::set<Pair> orbits;  // their canonical forms
};

inline Census census(const Group& g, std::int64_t n) {
  Census out;
  const auto m = g.size / n;
  const auto ss = subsets_with_zero(g.size, n);
  const auto ts = subsets_with_zero(g.size, m);
  std::vector<std::vector<std::int64_t>> t_diffs;
  for (const auto& t : ts) t_diffs.push_back(differences(g, t));
  for (const auto& s : ss) {
    const auto spec = power_spectrum(g, s);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!dual_from_spectrum(spec, s.size(), t_diffs[i], ts[i].size())) continue;
      if (!is_primitive(g, s) || !is_primitive(g, ts[i])) continue;
      out.pairs.emplace(s, ts[i]);
    }
  }
  const auto autos = automorphisms(g);
  for (const auto& p : out.pairs) out.orbits.insert(canonical_pair(g, p, autos));
  return out;
}

// Invariant-factor presentations of every abelian group of order at most 16,
// plus a few non-canonical presentations of the same groups.
inline std::vector<std::vector<std::int64_t>> small_groups() {
  return {{1},     {2},       {3},    {4},    {2, 2},    {5},       {6},       {2, 3},       {7},
          {8},     {2, 4},    {2, 2, 2},    {9},       {3, 3},    {10},      {11},         {12},
          {2, 6},  {3, 4},    {13},   {14},   {15},      {16},      {2, 8},    {4, 4},       {2, 2, 4},
          {2, 2, 2, 2}};
}

}  // namespace oracle
