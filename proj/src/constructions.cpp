#include "fdk/constructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdk {

namespace {

std::string join_orders(const FiniteAbelianGroup& g) {
  std::string out;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    if (j) out += ",";
    out += std::to_string(g.order(j));
  }
  return out;
}

}  // namespace

DualPair::DualPair(SubsetConfig s, SubsetConfig t, Provenance provenance)
    : s_(std::move(s)), t_(std::move(t)), provenance_(std::move(provenance)) {
  const auto cert = check_formal_dual(s_, t_);
  if (!cert.is_dual()) {
    throw std::logic_error("constructed pair (" + provenance_.kind + ") failed verification: " +
                           to_string(cert.verdict));
  }
}

Homomorphism::Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<GroupElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.rank()) {
    throw std::invalid_argument("homomorphism needs one image per cyclic factor of the source");
  }
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if (!(images_[j].group() == target_)) throw std::invalid_argument("generator image outside target group");
    if (target_.scale(images_[j].index(), source_.order(j)) != 0) {
      throw std::invalid_argument("generator image " + std::to_string(j) + " has order not dividing " +
                                  std::to_string(source_.order(j)));
    }
  }
}

Homomorphism Homomorphism::from_matrix(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target,
                                       const std::vector<std::vector<std::int64_t>>& matrix) {
  if (matrix.size() != target.rank()) throw std::invalid_argument("matrix needs one row per target factor");
  std::vector<GroupElement> images;
  for (std::size_t j = 0; j < source.rank(); ++j) {
    std::vector<std::int64_t> col(target.rank());
    for (std::size_t i = 0; i < target.rank(); ++i) {
      if (matrix[i].size() != source.rank()) throw std::invalid_argument("matrix needs one column per source factor");
      col[i] = matrix[i][j];
    }
    images.emplace_back(target, col);
  }
  return {source, target, std::move(images)};
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) {
  std::vector<GroupElement> images;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    std::vector<std::int64_t> e(g.rank(), 0);
    e[j] = 1;
    images.emplace_back(g, e);
  }
  return {g, g, std::move(images)};
}

Index Homomorphism::apply(Index x) const {
  const auto r = source_.residues_of(x);
  Index out = 0;
  for (std::size_t j = 0; j < r.size(); ++j) out = target_.add(out, target_.scale(images_[j].index(), r[j]));
  return out;
}

std::vector<Index> Homomorphism::image_table() const {
  std::vector<Index> table(static_cast<std::size_t>(source_.size()));
  for (Index x = 0; x < source_.size(); ++x) table[static_cast<std::size_t>(x)] = apply(x);
  return table;
}

bool Homomorphism::is_injective() const {
  auto table = image_table();
  std::sort(table.begin(), table.end());
  return std::adjacent_find(table.begin(), table.end()) == table.end();
}

Index Homomorphism::restrict_character(Index z) const {
  const auto L = target_.exponent();
  std::vector<std::int64_t> w(source_.rank());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto e = target_.pairing_exponent(images_[j].index(), z);
    const auto n = source_.order(j);
    // n * image_j = 0 makes e * n a multiple of L.
    w[j] = static_cast<std::int64_t>((static_cast<__int128>(e) * n / L) % n);
  }
  return source_.index_of(w);
}

std::vector<Index> adjoint_table(const Homomorphism& psi) {
  if (!(psi.source() == psi.target())) throw std::invalid_argument("adjoint_table needs an endomorphism");
  std::vector<Index> table(static_cast<std::size_t>(psi.source().size()));
  for (Index y = 0; y < psi.source().size(); ++y) table[static_cast<std::size_t>(y)] = psi.restrict_character(y);
  return table;
}

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

DualPair tito() {
  FiniteAbelianGroup g({4});
  return {SubsetConfig(g, std::vector<Index>{0, 1}), SubsetConfig(g, std::vector<Index>{0, 1}), {"tito", {}}};
}

DualPair trivial_pair(const FiniteAbelianGroup& g) {
  std::vector<Index> all(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return {SubsetConfig(g, std::vector<Index>{0}), SubsetConfig(g, std::move(all)),
          {"trivial", {{"group", join_orders(g)}}}};
}

DualPair subgroup_pair(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  const auto h = subgroup_closure(g, gens);
  const auto perp = annihilator(h);
  return {SubsetConfig(g, h.elements()), SubsetConfig(g, perp.elements()),
          {"subgroup", {{"group", join_orders(g)}, {"order", std::to_string(h.size())}}}};
}

DualPair gauss_pair(std::int64_t p, std::int64_t alpha, std::int64_t beta) {
  if (!is_odd_prime(p)) throw std::invalid_argument("gauss_pair: p must be an odd prime");
  const auto a = ((alpha % p) + p) % p;
  const auto b = ((beta % p) + p) % p;
  if (a == 0 || b == 0) throw std::invalid_argument("gauss_pair: alpha and beta must be nonzero mod p");
  FiniteAbelianGroup g({p, p});
  std::vector<GroupElement> s;
  std::vector<GroupElement> t;
  for (std::int64_t n = 0; n < p; ++n) {
    const auto n2 = n * n % p;
    s.emplace_back(g, std::vector<std::int64_t>{a * n2 % p, b * n % p});
    t.emplace_back(g, std::vector<std::int64_t>{n, n2});
  }
  return {SubsetConfig(g, s), SubsetConfig(g, t),
          {"gauss", {{"p", std::to_string(p)}, {"alpha", std::to_string(a)}, {"beta", std::to_string(b)}}}};
}

DualPair product(const DualPair& p1, const DualPair& p2) {
  auto orders = p1.group().orders();
  orders.insert(orders.end(), p2.group().orders().begin(), p2.group().orders().end());
  FiniteAbelianGroup g(orders);
  const auto n2 = p2.group().size();
  auto cross = [&](const SubsetConfig& a, const SubsetConfig& b) {
    std::vector<Index> out;
    out.reserve(a.indices().size() * b.indices().size());
    for (auto i : a.indices()) {
      for (auto j : b.indices()) out.push_back(i * n2 + j);
    }
    return SubsetConfig(g, std::move(out));
  };
  return {cross(p1.s(), p2.s()), cross(p1.t(), p2.t()),
          {"product", {{"left", p1.provenance().kind}, {"right", p2.provenance().kind}}}};
}

DualPair lift(const DualPair& pair, const Homomorphism& embedding) {
  if (!(pair.group() == embedding.source())) throw std::invalid_argument("lift: pair does not live in the source group");
  if (!embedding.is_injective()) throw std::invalid_argument("lift: embedding is not injective");
  const auto& g = embedding.target();
  std::vector<Index> s;
  for (auto v : pair.s().indices()) s.push_back(embedding.apply(v));
  std::vector<Index> t;
  for (Index z = 0; z < g.size(); ++z) {
    if (pair.t().contains(embedding.restrict_character(z))) t.push_back(z);
  }
  return {SubsetConfig(g, std::move(s)), SubsetConfig(g, std::move(t)),
          {"lift", {{"from", join_orders(embedding.source())}, {"to", join_orders(g)}}}};
}

DualPair project(const DualPair& pair, const Homomorphism& embedding) {
  if (!(pair.group() == embedding.target())) throw std::invalid_argument("project: pair does not live in the target group");
  if (!embedding.is_injective()) throw std::invalid_argument("project: embedding is not injective");
  const auto& h = embedding.source();
  const auto table = embedding.image_table();
  std::vector<Index> preimage(static_cast<std::size_t>(pair.group().size()), -1);
  for (Index x = 0; x < h.size(); ++x) preimage[static_cast<std::size_t>(table[static_cast<std::size_t>(x)])] = x;

  std::vector<Index> s;
  for (auto v : pair.s().indices()) {
    const auto x = preimage[static_cast<std::size_t>(v)];
    if (x < 0) throw std::invalid_argument("project: S is not contained in the embedded subgroup");
    s.push_back(x);
  }
  const auto perp = annihilator(subgroup_closure(pair.group(), embedding.images()));
  for (auto w : pair.t().indices()) {
    for (auto y : perp.elements()) {
      if (!pair.t().contains(pair.group().add(w, y))) {
        throw std::logic_error("project: T is not invariant under the annihilator of the subgroup");
      }
    }
  }
  std::vector<Index> t;
  for (auto w : pair.t().indices()) t.push_back(embedding.restrict_character(w));
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return {SubsetConfig(h, std::move(s)), SubsetConfig(h, std::move(t)),
          {"project", {{"from", join_orders(pair.group())}, {"to", join_orders(h)}}}};
}

DualPair translate(const DualPair& pair, const GroupElement& x, const GroupElement& y) {
  if (!(x.group() == pair.group()) || !(y.group() == pair.group())) {
    throw std::invalid_argument("translate: offsets must lie in the pair's group");
  }
  auto prov = pair.provenance();
  prov.params["translated_from"] = prov.kind;
  prov.kind = "translate";
  return {pair.s().translated(x.index()), pair.t().translated(y.index()), std::move(prov)};
}

DualPair apply_automorphism(const DualPair& pair, const Homomorphism& psi) {
  const auto& g = pair.group();
  if (!(psi.source() == g) || !(psi.target() == g)) {
    throw std::invalid_argument("apply_automorphism: map must be an endomorphism of the pair's group");
  }
  if (!psi.is_injective()) throw std::invalid_argument("apply_automorphism: map is not bijective");
  std::vector<Index> s;
  for (auto v : pair.s().indices()) s.push_back(psi.apply(v));
  const auto adj = adjoint_table(psi);
  std::vector<Index> t;
  for (Index z = 0; z < g.size(); ++z) {
    if (pair.t().contains(adj[static_cast<std::size_t>(z)])) t.push_back(z);
  }
  auto prov = pair.provenance();
  prov.params["transformed_from"] = prov.kind;
  prov.kind = "automorphism";
  return {SubsetConfig(g, std::move(s)), SubsetConfig(g, std::move(t)), std::move(prov)};
}

}  // namespace fdk
