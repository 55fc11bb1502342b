#pragma once

// Known formally dual pairs and the transforms that preserve duality.
// Every DualPair is re-verified when it is built.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdk/duality.hpp"
#include "fdk/group.hpp"

namespace fdk {

struct Provenance {
  std::string kind;  // tito | gauss | product | lift | project | subgroup | trivial | translate | automorphism | custom
  std::map<std::string, std::string> params;
};

class DualPair {
 public:
  // Throws std::logic_error unless check_formal_dual(s, t) is Dual.
  DualPair(SubsetConfig s, SubsetConfig t, Provenance provenance);

  const FiniteAbelianGroup& group() const { return s_.group(); }
  const SubsetConfig& s() const { return s_; }
  const SubsetConfig& t() const { return t_; }
  const Provenance& provenance() const { return provenance_; }

  friend bool operator==(const DualPair& a, const DualPair& b) { return a.s_ == b.s_ && a.t_ == b.t_; }

 private:
  SubsetConfig s_;
  SubsetConfig t_;
  Provenance provenance_;
};

// A homomorphism between groups given by the images of the standard generators
// e_j of the source (one image per cyclic factor).
class Homomorphism {
 public:
  // Throws unless n_j * image_j = 0 for every j (well-definedness).
  Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<GroupElement> images);
  // Action x -> A x on residue vectors: column j of the matrix is the image of e_j.
  static Homomorphism from_matrix(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target,
                                  const std::vector<std::vector<std::int64_t>>& matrix);
  static Homomorphism identity(const FiniteAbelianGroup& g);

  const FiniteAbelianGroup& source() const { return source_; }
  const FiniteAbelianGroup& target() const { return target_; }
  const std::vector<GroupElement>& images() const { return images_; }

  Index apply(Index x) const;
  std::vector<Index> image_table() const;  // apply() over every source element
  bool is_injective() const;
  // Restriction of a target character z to the image, expressed in the source dual.
  Index restrict_character(Index z) const;

 private:
  FiniteAbelianGroup source_;
  FiniteAbelianGroup target_;
  std::vector<GroupElement> images_;
};

DualPair tito();
// S = {0}, T = the whole dual group.
DualPair trivial_pair(const FiniteAbelianGroup& g);
// S = H = <gens>, T = annihilator of H.
DualPair subgroup_pair(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens);
// S = {(alpha n^2, beta n)}, T = {(n, n^2)} in (Z/p)^2.
DualPair gauss_pair(std::int64_t p, std::int64_t alpha, std::int64_t beta);
DualPair product(const DualPair& p1, const DualPair& p2);
// S' = embedding(S); T' = characters of G whose restriction to the image lies in T.
DualPair lift(const DualPair& pair, const Homomorphism& embedding);
// Inverse of lift: pair lives in embedding.target(), S must lie in the image.
// Throws if T is not invariant under the annihilator of the image.
DualPair project(const DualPair& pair, const Homomorphism& embedding);
DualPair translate(const DualPair& pair, const GroupElement& x, const GroupElement& y);
// (psi(S), (psi*)^{-1}(T)) for an automorphism psi of G.
DualPair apply_automorphism(const DualPair& pair, const Homomorphism& psi);

// Adjoint on the dual: pairing(psi(x), y) == pairing(x, psi*(y)). psi is an endomorphism.
std::vector<Index> adjoint_table(const Homomorphism& psi);

bool is_odd_prime(std::int64_t p);

}  // namespace fdk
