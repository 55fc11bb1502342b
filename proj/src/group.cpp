#include "fdk/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fdk {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

void require_same_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b, const char* op) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(op) + ": group mismatch (" + a.to_string() + " vs " +
                                b.to_string() + ")");
  }
}

std::vector<Index> indices_of_points(const FiniteAbelianGroup& group, const std::vector<GroupElement>& points) {
  std::vector<Index> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    require_same_group(group, p.group(), "SubsetConfig");
    out.push_back(p.index());
  }
  return out;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<std::int64_t>{1}) {}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders) {
  if (orders.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  auto data = std::make_shared<Data>();
  std::int64_t size = 1;
  std::int64_t lcm = 1;
  for (auto n : orders) {
    if (n < 1) throw std::invalid_argument("cyclic factor orders must be >= 1");
    if (size > (std::int64_t{1} << 40) / n) throw std::invalid_argument("group too large");
    size *= n;
    lcm = std::lcm(lcm, n);
  }
  data->strides.assign(orders.size(), 1);
  for (std::size_t j = orders.size(); j-- > 1;) data->strides[j - 1] = data->strides[j] * orders[j];
  data->pair_scale.resize(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j) data->pair_scale[j] = lcm / orders[j];
  data->orders = std::move(orders);
  data->size = size;
  data->exponent = lcm;
  data_ = std::move(data);
}

Index FiniteAbelianGroup::index_of(std::span<const std::int64_t> residues) const {
  if (residues.size() != rank()) {
    throw std::invalid_argument("element has " + std::to_string(residues.size()) +
                                " coordinates, group " + to_string() + " has rank " +
                                std::to_string(rank()));
  }
  Index idx = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto n = data_->orders[j];
    const auto r = ((residues[j] % n) + n) % n;
    idx += r * data_->strides[j];
  }
  return idx;
}

std::vector<std::int64_t> FiniteAbelianGroup::residues_of(Index idx) const {
  if (idx < 0 || idx >= size()) throw std::out_of_range("element index out of range");
  std::vector<std::int64_t> r(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    r[j] = idx / data_->strides[j];
    idx %= data_->strides[j];
  }
  return r;
}

Index FiniteAbelianGroup::add(Index a, Index b) const {
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto s = data_->strides[j];
    const auto n = data_->orders[j];
    const auto aj = (a / s) % n;
    const auto bj = (b / s) % n;
    auto r = aj + bj;
    if (r >= n) r -= n;
    out += r * s;
  }
  return out;
}

Index FiniteAbelianGroup::neg(Index a) const {
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto s = data_->strides[j];
    const auto n = data_->orders[j];
    const auto aj = (a / s) % n;
    out += (aj == 0 ? 0 : n - aj) * s;
  }
  return out;
}

Index FiniteAbelianGroup::scale(Index a, std::int64_t k) const {
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto s = data_->strides[j];
    const auto n = data_->orders[j];
    const auto aj = (a / s) % n;
    const auto km = ((k % n) + n) % n;
    out += mulmod(aj, km, n) * s;
  }
  return out;
}

std::int64_t FiniteAbelianGroup::pairing_exponent(Index x, Index y) const {
  const auto L = data_->exponent;
  std::int64_t e = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto s = data_->strides[j];
    const auto n = data_->orders[j];
    const auto xj = (x / s) % n;
    const auto yj = (y / s) % n;
    e += mulmod(xj, yj, n) * data_->pair_scale[j];
    if (e >= L) e %= L;
  }
  return e;
}

std::int64_t FiniteAbelianGroup::element_order(Index a) const {
  std::int64_t ord = 1;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto n = data_->orders[j];
    const auto aj = (a / data_->strides[j]) % n;
    ord = std::lcm(ord, n / std::gcd(aj, n));
  }
  return ord;
}

std::string FiniteAbelianGroup::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (j) os << " x ";
    os << "Z/" << data_->orders[j];
  }
  return os.str();
}

GroupElement::GroupElement(FiniteAbelianGroup group, std::vector<std::int64_t> residues)
    : group_(std::move(group)), index_(group_.index_of(residues)) {
  residues_ = group_.residues_of(index_);
}

GroupElement::GroupElement(FiniteAbelianGroup group, Index idx)
    : group_(std::move(group)), residues_(group_.residues_of(idx)), index_(idx) {}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  require_same_group(a.group(), b.group(), "add");
  return {a.group(), a.group().add(a.index(), b.index())};
}

GroupElement neg(const GroupElement& a) { return {a.group(), a.group().neg(a.index())}; }

GroupElement sub(const GroupElement& a, const GroupElement& b) {
  require_same_group(a.group(), b.group(), "sub");
  return {a.group(), a.group().sub(a.index(), b.index())};
}

std::int64_t pairing_exponent(const GroupElement& x, const GroupElement& y) {
  require_same_group(x.group(), y.group(), "pairing_exponent");
  return x.group().pairing_exponent(x.index(), y.index());
}

Subgroup::Subgroup(FiniteAbelianGroup group, std::vector<GroupElement> generators, std::vector<Index> elements)
    : group_(std::move(group)), generators_(std::move(generators)), elements_(std::move(elements)) {}

bool Subgroup::contains(Index idx) const {
  return std::binary_search(elements_.begin(), elements_.end(), idx);
}

std::vector<Index> closure_indices(const FiniteAbelianGroup& group, std::span<const Index> gens) {
  // Breadth-first closure under addition by generators; finite, so this also
  // yields negatives.
  std::vector<char> seen(static_cast<std::size_t>(group.size()), 0);
  std::vector<Index> frontier{0};
  std::vector<Index> all{0};
  seen[0] = 1;
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (auto a : frontier) {
      for (auto g : gens) {
        const auto c = group.add(a, g);
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = 1;
          next.push_back(c);
          all.push_back(c);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

Subgroup subgroup_closure(const FiniteAbelianGroup& group, const std::vector<GroupElement>& gens) {
  std::vector<Index> idx;
  idx.reserve(gens.size());
  for (const auto& g : gens) {
    require_same_group(group, g.group(), "subgroup_closure");
    idx.push_back(g.index());
  }
  return {group, gens, closure_indices(group, idx)};
}

Subgroup annihilator(const Subgroup& h) {
  const auto& g = h.group();
  // Characters are homomorphisms, so testing the generators suffices; the
  // materialized element list stands in when no generators were recorded.
  std::vector<Index> test;
  if (h.generators().empty() && h.size() > 1) {
    test = h.elements();
  } else {
    for (const auto& x : h.generators()) test.push_back(x.index());
  }
  std::vector<Index> out;
  std::vector<GroupElement> gens;
  for (Index y = 0; y < g.size(); ++y) {
    bool ok = true;
    for (auto x : test) {
      if (g.pairing_exponent(x, y) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(y);
  }
  for (auto y : out) gens.emplace_back(g, y);
  return {g, std::move(gens), std::move(out)};
}

SubsetConfig::SubsetConfig(FiniteAbelianGroup group, const std::vector<GroupElement>& points)
    : SubsetConfig(group, indices_of_points(group, points)) {}

SubsetConfig::SubsetConfig(FiniteAbelianGroup group, std::vector<Index> indices)
    : group_(std::move(group)), indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("subset must be nonempty");
  for (auto i : indices_) {
    if (i < 0 || i >= group_.size()) throw std::out_of_range("subset element outside group");
  }
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("subset contains duplicate elements");
  }
}

std::vector<GroupElement> SubsetConfig::points() const {
  std::vector<GroupElement> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.emplace_back(group_, i);
  return out;
}

bool SubsetConfig::contains(Index idx) const {
  return std::binary_search(indices_.begin(), indices_.end(), idx);
}

SubsetConfig SubsetConfig::translated(Index by) const {
  std::vector<Index> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.push_back(group_.add(i, by));
  return {group_, std::move(out)};
}

GroupTables::GroupTables(FiniteAbelianGroup group) : group_(std::move(group)), n_(group_.size()) {
  if (n_ > kMaxOrder) {
    throw std::invalid_argument("GroupTables: group of order " + std::to_string(n_) + " exceeds " +
                                std::to_string(kMaxOrder));
  }
  const auto nn = static_cast<std::size_t>(n_ * n_);
  sub_.resize(nn);
  add_.resize(nn);
  pair_.resize(nn);
  std::vector<Index> negs(static_cast<std::size_t>(n_));
  for (Index a = 0; a < n_; ++a) negs[static_cast<std::size_t>(a)] = group_.neg(a);
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      const auto k = static_cast<std::size_t>(a * n_ + b);
      add_[k] = static_cast<std::int32_t>(group_.add(a, b));
      pair_[k] = static_cast<std::int32_t>(group_.pairing_exponent(a, b));
    }
  }
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      sub_[static_cast<std::size_t>(a * n_ + b)] = add_[static_cast<std::size_t>(a * n_ + negs[static_cast<std::size_t>(b)])];
    }
  }
}

}  // namespace fdk
