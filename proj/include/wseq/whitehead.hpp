#pragma once

// Whitehead exact sequence of a free DGA and the invariants built on it:
//   ... -> H_{n+1}(V) --b--> Gamma_n --> H_n(T(V)) --> H_n(V) --b--> ...

#include "wseq/dga.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wseq {

/// Gamma_n = ker(j_n : H_n(T(V_<=n)) -> V_n), presented over word_basis(n, n).
struct GammaGroup {
  int degree = 0;
  PresentedGroup presented;
  AbHom as_kernel;  // Gamma_n -> H_n(T(V_<=n))
};

/// beta_n : V_n -> H_{n-1}(T(V_<=n-1)).
struct BetaMap {
  int degree = 0;
  PresentedGroup target;
  AbHom map;  // domain Z^{|V_n|}
};

/// Section of j_n over ker beta_n: each basis vector k_i of ker beta_n is
/// completed to a cycle k_i + q_i with q_i decomposable.
struct CanonicalSection {
  int degree = 0;
  IntMatrix kernel_basis;  // |V_n| x k
  std::vector<AlgElement> completions;
  LatticeCoordinates<Integer> coords;

  /// Coordinates of v (in V_n) with respect to kernel_basis.
  IntVector coordinates(const IntVector& v) const;
  AlgElement apply(const IntVector& v) const;
};

/// Extension class of a homomorphism out of a free resolution, together with
/// the Ext group it lives in.
struct ExtClass {
  AbGroup ext;
  IntVector element;          // canonical coordinates in ext
  IntMatrix representative;   // target gens x resolution gens
  AbGroup target;             // group the representative maps into
  bool trivial = true;
};

/// Ext class of phi : Z^r -> target modulo homs factoring through R : Z^r -> Z^k.
ExtClass extension_class(const IntMatrix& resolution, const AbGroup& target, const IntMatrix& phi);
/// Some g with g R = phi (mod target relations), if it exists.
std::optional<IntMatrix> lift_through_resolution(const IntMatrix& resolution, const AbGroup& target,
                                                 const IntMatrix& phi);

struct DegreeData {
  int degree = 0;
  AbGroup H_V;          // H_n(V, d)
  AbGroup H_T;          // H_n(T(V))
  AbGroup gamma;        // Gamma_n
  AbHom b;              // b_{n+1} : H_{n+1}(V) -> Gamma_n
  AbHom b_in;           // b_n : H_n(V) -> Gamma_{n-1}
  AbGroup coker_b;      // Coker b_{n+1}
  AbGroup ker_b;        // ker b_n
  AbHom iota;           // Gamma_n -> H_n(T(V))
  AbHom lambda;         // H_n(T(V)) -> H_n(V)
  AbHom phi;            // (Im d_{n+1})' -> Gamma_n
  ExtClass bracket;     // in Ext(H_n(V), Coker b_{n+1})
  ExtClass brace;       // in Ext(ker b_n, Coker b_{n+1})
  bool perfect = true;
  bool quasi_perfect = true;
};

struct WhiteheadData {
  int lo = 2, hi = 2;
  std::vector<DegreeData> degrees;
  const DegreeData& at(int n) const { return degrees.at(static_cast<size_t>(n - lo)); }
};

/// Caches per-degree intermediate objects for one DGA. Not thread-safe;
/// use one engine per thread.
class WhiteheadEngine {
 public:
  explicit WhiteheadEngine(FreeDGA d);

  const FreeDGA& dga() const { return d_; }
  const FreeChainComplex& linear() const { return lin_; }

  const PresentedGroup& H_V(int n);
  const PresentedGroup& H_T(int n);
  const DegreeSplitting& split(int n);
  const GammaGroup& gamma(int n);
  const BetaMap& beta(int n);
  const CanonicalSection& section(int n);
  /// b_n : H_n(V) -> Gamma_{n-1}.
  const AbHom& b(int n);
  const AbHom& phi(int n);
  /// Cycles d(l_j) - s(d l_j) representing phi_n on the complement basis.
  std::vector<AlgElement> phi_cycles(int n);
  const CokernelData& coker_b(int n_plus_1);
  const AbHom& iota(int n);
  const AbHom& lambda(int n);
  /// Resolution boundary (Im d_{n+1})' -> ker d_n in kernel coordinates.
  const IntMatrix& resolution(int n);
  /// Resolution boundary (Im d_{n+1})' -> ker beta_n.
  IntMatrix brace_resolution(int n);

  ExtClass bracket(int n);
  ExtClass brace(int n);

  /// Cycle in T_n(V_<=n) representing a Gamma_n element.
  AlgElement gamma_cycle(int n, const IntVector& canonical);

  DegreeData degree_data(int n);
  /// Throws InvariantError on failure.
  void check_exactness(int n);

 private:
  FreeDGA d_;
  FreeChainComplex lin_;
  std::map<int, PresentedGroup> hv_, ht_;
  std::map<int, DegreeSplitting> split_;
  std::map<int, GammaGroup> gamma_;
  std::map<int, BetaMap> beta_;
  std::map<int, CanonicalSection> section_;
  std::map<int, AbHom> b_, phi_, iota_, lambda_;
  std::map<int, CokernelData> coker_;
  std::map<int, IntMatrix> res_;

  IntMatrix selector(int n) const;
};

PresentedGroup linear_homology(const FreeDGA& d, int n);
BetaMap beta(const FreeDGA& d, int n);
GammaGroup gamma(const FreeDGA& d, int n);
/// b_{n+1} as a map H_{n+1}(V) -> Gamma_n; pass n + 1.
AbHom b_map(const FreeDGA& d, int n_plus_1);
AbHom phi(const FreeDGA& d, int n);
std::pair<ExtClass, ExtClass> ext_classes(const FreeDGA& d, int n);

bool is_n_perfect(const FreeDGA& d, int n);
bool is_quasi_n_perfect(const FreeDGA& d, int n);
bool is_perfect(const FreeDGA& d, int lo, int hi);
bool is_quasi_perfect(const FreeDGA& d, int lo, int hi);

/// H_n(T(V)) == Coker b_{n+1} + ker b_n as abstract groups.
/// Throws DomainError when d is not quasi n-perfect.
bool homology_splitting_check(const FreeDGA& d, int n);

/// All invariants over [lo, hi]; verifies exactness (InvariantError).
WhiteheadData whitehead_sequence(const FreeDGA& d, int lo, int hi);

/// Default degree range [2, top generator degree].
inline int default_top(const FreeDGA& d) { return std::max(2, d.max_degree()); }

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

struct SequenceIsomorphism {
  Verdict verdict = Verdict::unknown;
  std::string reason;
  // Witness, indexed by degree.
  std::map<int, AbHom> f, gamma, h;
};

/// Searches for isomorphisms f_n, gamma_n, h_n making the two sequences
/// commute over the common range.
SequenceIsomorphism sequences_isomorphic(const WhiteheadData& a, const WhiteheadData& b, long budget = 2'000'000);

struct CharacteristicPair {
  FreeDGA perfect;
  int lo = 2, hi = 2;
  /// pi_n with representatives relative to the perfect DGA's Coker b_{n+1}.
  std::map<int, ExtClass> pi;
};

CharacteristicPair characteristic_pair(const FreeDGA& d, int lo, int hi);
FreeDGA realize_from_pair(const CharacteristicPair& pair);

/// Condition (gamma o pi_A) ~ (pi_B o xi) in Ext(H_n(V), Coker b'_{n+1})
/// for every n in [lo, hi]. Representatives missing from a map are zero.
bool check_morphism_condition(const DgaMorphism& alpha, const std::map<int, IntMatrix>& pi_a,
                              const std::map<int, IntMatrix>& pi_b, int lo, int hi);

}  // namespace wseq
