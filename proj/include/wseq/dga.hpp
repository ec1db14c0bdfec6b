#pragma once

// Free differential graded tensor algebras (T(V), d) over Z.

#include "wseq/chaincx.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wseq {

struct Generator {
  std::string name;
  int degree = 1;
};

/// Tensor word as a sequence of generator indices.
using Word = std::vector<int>;

/// Canonical word order: shorter first, then lexicographic in generator
/// declaration order.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Finite integer combination of words, zero coefficients never stored.
class AlgElement {
 public:
  using Terms = std::map<Word, Integer, WordLess>;

  AlgElement() = default;
  static AlgElement word(Word w, const Integer& c = 1);
  static AlgElement generator(int g, const Integer& c = 1) { return word(Word{g}, c); }

  void add(const Word& w, const Integer& c);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Word& w) const;

  /// Length-one terms only.
  AlgElement linear_part() const;
  /// Terms of length >= 2.
  AlgElement decomposable_part() const;

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator-(const AlgElement& a);
  friend AlgElement operator*(const Integer& c, const AlgElement& a);
  /// Tensor product (concatenation of words).
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend bool operator==(const AlgElement& a, const AlgElement& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// Word-basis size cap per degree; WSEQ_MAX_WORDS overrides the default.
std::size_t max_words_per_degree();

class FreeDGA {
 public:
  FreeDGA();

  /// Returns the index of the new generator.
  int add_generator(const std::string& name, int degree);
  /// Sets the differential of a generator; checks it is homogeneous of
  /// degree deg - 1 over known generators.
  void set_diff(int g, AlgElement value);
  void set_diff(const std::string& name, AlgElement value);

  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int g) const { return gens_.at(static_cast<size_t>(g)); }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<int> find(const std::string& name) const;
  const AlgElement& diff(int g) const { return diff_.at(static_cast<size_t>(g)); }

  int max_degree() const;
  /// Generator indices of degree n in declaration order (a basis of V_n).
  std::vector<int> generators_of_degree(int n) const;
  /// Position of a generator inside generators_of_degree(its degree).
  Index position_in_degree(int g) const;

  int degree(const Word& w) const;
  /// Degree of a nonzero homogeneous element; nullopt for zero.
  std::optional<int> degree(const AlgElement& x) const;

  AlgElement apply_diff(const AlgElement& x) const;

  /// Tensor words of total degree n over generators of degree <= m. Empty for
  /// n <= 0: the unit is left out, so T(V) here is the augmentation ideal.
  const std::vector<Word>& word_basis(int n, int m) const;
  std::optional<Index> word_index(int n, int m, const Word& w) const;
  /// Coordinates in word_basis(n, m); throws DomainError for foreign words.
  IntVector to_vector(const AlgElement& x, int n, int m) const;
  AlgElement from_vector(const IntVector& v, int n, int m) const;
  /// Matrix of d: T_n(V_<=m) -> T_{n-1}(V_<=m) in word bases.
  const IntMatrix& diff_matrix(int n, int m) const;

  /// Indecomposables (V, d).
  FreeChainComplex linear_part() const;
  /// H_n(T(V_<=m)), ambient = word_basis(n, m).
  PresentedGroup truncation_homology(int m, int n) const;
  /// Some x in T(V_<=m) with d x = y, if y is a boundary there.
  std::optional<AlgElement> boundary_preimage(int m, const AlgElement& y) const;

  ValidationResult validate() const;

  /// Sub-DGA on the generators of degree <= m (same names and order).
  FreeDGA truncated(int m) const;

  std::string element_str(const AlgElement& x) const;
  std::string word_str(const Word& w) const;

 private:
  struct Cache;
  std::vector<Generator> gens_;
  std::vector<AlgElement> diff_;
  std::unordered_map<std::string, int> index_;
  std::shared_ptr<Cache> cache_;

  void invalidate();
};

/// Multiplicative map given on generators.
class DgaMorphism {
 public:
  DgaMorphism(FreeDGA source, FreeDGA target, std::vector<AlgElement> images);
  static DgaMorphism identity(const FreeDGA& d);

  const FreeDGA& source() const { return src_; }
  const FreeDGA& target() const { return tgt_; }
  const AlgElement& image(int g) const { return images_.at(static_cast<size_t>(g)); }

  AlgElement apply(const AlgElement& x) const;
  /// Degree checks plus f d = d f on every generator.
  ValidationResult validate() const;

  /// Matrix of the linear part V_n -> W_n.
  IntMatrix linear_matrix(int n) const;
  /// Matrix of T_n(V_<=ms) -> T_n(W_<=mt) in word bases.
  IntMatrix word_matrix(int n, int ms, int mt) const;

 private:
  FreeDGA src_, tgt_;
  std::vector<AlgElement> images_;
};

/// Map induced on H_n(T(V)) = H_n(T(V_<=n+1)).
AbHom induced_H(const DgaMorphism& f, int n);
/// Map induced on the homology of the indecomposables.
AbHom induced_linear_H(const DgaMorphism& f, int n);

}  // namespace wseq
