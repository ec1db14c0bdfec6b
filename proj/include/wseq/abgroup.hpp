#pragma once

// Finitely generated abelian groups in invariant-factor form, homomorphisms
// between them, and concrete presentations (subquotients of free modules).

#include "wseq/integer.hpp"
#include "wseq/smith.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wseq {

/// Z^r + Z_{t1} + ... + Z_{tk} with t_i >= 2 and t_i | t_{i+1}.
/// Canonical generators: the r free ones first, then the torsion ones.
class AbGroup {
 public:
  AbGroup() = default;

  /// Normalizes an arbitrary list of cyclic orders (0 = Z, 1 = trivial) into
  /// invariant factors.
  static AbGroup from_cyclic(const std::vector<Integer>& orders);
  static AbGroup free(int rank) { return from_cyclic(std::vector<Integer>(rank, Integer(0))); }
  static AbGroup cyclic(const Integer& n) { return from_cyclic({n}); }

  /// Accepts `0`, `Z`, `Z^k`, `Zd`, and sums of those with `+`.
  static AbGroup parse(const std::string& text);

  int free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  Index ngens() const { return free_rank_ + static_cast<Index>(torsion_.size()); }
  /// Order of canonical generator i; 0 for a free generator.
  Integer order(Index i) const;
  std::vector<Integer> orders() const;

  bool is_trivial() const { return ngens() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Number of elements; throws InfiniteError when free_rank > 0.
  Integer cardinality() const;

  /// Reduces canonical coordinates modulo the torsion orders.
  IntVector reduce(IntVector v) const;
  bool is_zero(const IntVector& v) const;
  /// Relation lattice as columns (diag of torsion orders) in Z^ngens.
  IntMatrix relation_matrix() const;

  std::string str() const;

  friend bool operator==(const AbGroup& a, const AbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  int free_rank_ = 0;
  std::vector<Integer> torsion_;
};

AbGroup direct_sum(const AbGroup& a, const AbGroup& b);

/// Homomorphism given by its matrix in canonical generators
/// (codomain gens x domain gens). Torsion rows are kept reduced.
class AbHom {
 public:
  AbHom() = default;
  /// Validates well-definedness; throws DomainError otherwise.
  AbHom(AbGroup domain, AbGroup codomain, IntMatrix matrix);

  static AbHom zero(const AbGroup& a, const AbGroup& b);
  static AbHom identity(const AbGroup& a);

  const AbGroup& domain() const { return dom_; }
  const AbGroup& codomain() const { return cod_; }
  const IntMatrix& matrix() const { return m_; }

  IntVector apply(const IntVector& x) const { return cod_.reduce(mul(m_, x)); }
  bool is_zero() const { return wseq::is_zero(m_); }

  friend bool operator==(const AbHom& f, const AbHom& g) {
    return f.dom_ == g.dom_ && f.cod_ == g.cod_ && f.m_ == g.m_;
  }

 private:
  AbGroup dom_, cod_;
  IntMatrix m_;
};

/// g o f
AbHom compose(const AbHom& g, const AbHom& f);
AbHom add(const AbHom& f, const AbHom& g);
AbHom negate(const AbHom& f);
bool equal(const AbHom& f, const AbHom& g);
bool is_isomorphism(const AbHom& f);
/// Inverse of an isomorphism.
AbHom inverse(const AbHom& f);

AbGroup tensor(const AbGroup& a, const AbGroup& b);
AbGroup tor(const AbGroup& a, const AbGroup& b);
AbGroup hom_group(const AbGroup& a, const AbGroup& b);
AbGroup ext_group(const AbGroup& a, const AbGroup& b);

/// All homomorphisms a -> b, lexicographic in the row-major reduced entries.
/// Throws InfiniteError when Hom(a, b) is infinite.
std::vector<AbHom> hom_elements(const AbGroup& a, const AbGroup& b);
/// Number of homomorphisms without enumerating (InfiniteError if infinite).
Integer hom_count(const AbGroup& a, const AbGroup& b);

/// Invertible endomorphisms of a finite group, identity first.
std::vector<AbHom> automorphisms(const AbGroup& a);
/// Visits automorphisms of a group with free rank <= 1, identity first.
/// The visitor returns false to stop early. Returns false if stopped.
bool for_each_automorphism(const AbGroup& a, const std::function<bool(const AbHom&)>& visit);

struct KernelData {
  AbGroup group;
  AbHom embedding;  // group -> domain
};
struct CokernelData {
  AbGroup group;
  AbHom projection;  // codomain -> group
  IntMatrix section;  // columns: codomain elements lifting the canonical generators
};

KernelData kernel(const AbHom& f);
CokernelData cokernel(const AbHom& f);
AbGroup image(const AbHom& f);

/// Does the subgroup of g generated by the columns of `outer` contain every
/// column of `inner`? Both in canonical coordinates of g.
bool subgroup_contains(const AbGroup& g, const IntMatrix& outer, const IntMatrix& inner);
bool same_subgroup(const AbGroup& g, const IntMatrix& s1, const IntMatrix& s2);

/// Subquotient Z/R of a free module Z^ambient: Z is a lattice given by a
/// basis of cycles, R a sublattice of Z given by generating columns.
/// Elements of Z are mapped to canonical coordinates, canonical generators
/// are lifted back to Z.
class PresentedGroup {
 public:
  PresentedGroup() = default;

  /// Cokernel of `relations` (ambient_rank x k).
  static PresentedGroup present(Index ambient_rank, const IntMatrix& relations);
  /// Z/R where `cycles` is a basis (ambient x k) and every column of
  /// `relations` lies in the span of `cycles`.
  static PresentedGroup subquotient(const IntMatrix& cycles, const IntMatrix& relations);

  const AbGroup& group() const { return canonical_; }
  Index ambient_rank() const { return cycles_.rows(); }
  const IntMatrix& cycles() const { return cycles_; }
  const IntMatrix& relations() const { return relations_; }

  bool is_cycle(const IntVector& v) const;
  /// Canonical (reduced) coordinates of an element of the cycle lattice.
  /// Throws DomainError when v is not a cycle.
  IntVector to_canonical(const IntVector& v) const;
  /// Ambient vector representing canonical generator i.
  IntVector lift(Index i) const { return lift_.col(i); }
  /// Ambient representative of an element in canonical coordinates.
  IntVector lift(const IntVector& canonical) const { return mul(lift_, canonical); }
  const IntMatrix& lift_matrix() const { return lift_; }

  /// Canonical coordinates of the columns of an ambient matrix.
  IntMatrix to_canonical(const IntMatrix& vs) const;

 private:
  IntMatrix cycles_, relations_;
  LatticeCoordinates<Integer> coords_;
  AbGroup canonical_;
  IntMatrix to_canon_;  // ngens x k, acts on cycle coordinates
  IntMatrix lift_;      // ambient x ngens
};

/// Homomorphism between presented groups induced by an ambient linear map
/// that carries cycles to cycles and relations to relations.
AbHom induced_hom(const PresentedGroup& source, const PresentedGroup& target, const IntMatrix& ambient_map);

}  // namespace wseq
