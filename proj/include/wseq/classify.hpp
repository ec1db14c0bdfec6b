#pragma once

// Adapted systems, stagewise realization of perfect DGAs, Gamma providers,
// and counting of quasi-isomorphism types S(H_*).

#include "wseq/whitehead.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wseq {

/// Degree -> group; missing degrees are zero.
using GradedGroup = std::map<int, AbGroup>;

inline AbGroup at_degree(const GradedGroup& h, int n) {
  auto it = h.find(n);
  return it == h.end() ? AbGroup() : it->second;
}
int top_degree(const GradedGroup& h);

/// One generator per canonical generator of H_n (free: z, torsion: y) plus,
/// for each torsion generator of order q, a killer x of degree n+1 with d x = q y.
struct MinimalGenerator {
  std::string name;
  int degree = 0;
  char kind = 'z';  // 'z', 'y' or 'x'
  int homology_degree = 0;
  Index index = 0;  // canonical generator of H_{homology_degree}
  Integer order = 0;
};

/// Generators of degree n in their fixed order: kernel generators of H_n in
/// canonical order, then the killers of the torsion of H_{n-1}.
std::vector<MinimalGenerator> minimal_generators(const GradedGroup& h, int n);
FreeChainComplex minimal_complex(const GradedGroup& h);

struct AdaptedSystem {
  GradedGroup H;
  std::map<int, AbHom> b;          // b_{n+1} keyed by n + 1
  std::map<int, Index> b_index;    // position in hom_elements order
  std::map<int, AbGroup> gamma_log;
  std::optional<FreeDGA> realized;
  int built = 0;  // generators of degree <= built are present

  std::string key() const;
};

/// Options for the choice of lifts and preimages during realization.
struct RealizeOptions {
  std::mt19937_64* rng = nullptr;  // adds random boundaries when set
  int noise = 2;                   // coefficient bound of the random chains
};

/// Empty system with V_1 realized (zero differential).
AdaptedSystem initial_system(const GradedGroup& h, bool realize = true);
/// Adds the generators of degree built + 1. b_next maps H_{built+1} to
/// Gamma_built of the realized stage.
AdaptedSystem realize_step(AdaptedSystem state, const AbHom& b_next, const RealizeOptions& opt = {});
/// Adds the killers of the top torsion so the linear part has homology H.
AdaptedSystem close_system(AdaptedSystem state, const RealizeOptions& opt = {});
GammaGroup gamma_via_realization(const AdaptedSystem& state, int n);

/// Rebuilds the realized DGA of a b-family from scratch.
AdaptedSystem realize_system(const GradedGroup& h, const std::map<int, AbHom>& b, int max_degree,
                             const RealizeOptions& opt = {});

class GammaProvider {
 public:
  virtual ~GammaProvider() = default;
  virtual std::string name() const = 0;
  virtual bool needs_realization() const { return false; }
  /// Gamma_n for a system whose b_{<=n} are chosen.
  virtual AbGroup gamma(const AdaptedSystem& s, int n) const = 0;
  virtual bool has_action() const { return false; }
  /// Map Gamma_n(from) -> Gamma_n(to) induced by the graded automorphism f.
  virtual AbHom action(const AdaptedSystem& from, const AdaptedSystem& to, const std::map<int, AbHom>& f,
                       int n) const;
};

class RealizedGammaProvider : public GammaProvider {
 public:
  std::string name() const override { return "realized"; }
  bool needs_realization() const override { return true; }
  AbGroup gamma(const AdaptedSystem& s, int n) const override;
};

/// Closed forms for H_{<=2} = 0 and n <= 9:
///   Gamma_6 = H3 x H3
///   Gamma_7 = H3 x H4 + H4 x H3 + Tor(H3, H3)
///   Gamma_8 = H3 x H5 + H4 x H4 + H5 x H3 + Tor(H3, H4) + Tor(H4, H3)
///   Gamma_9 = H3 x H6 + H4 x H5 + H5 x H4 + H6 x H3 + Tor(H3, H5) + Tor(H4, H4)
///             + Tor(H5, H3) + H3 x H3 x H3 / (Im b7 x H3 + H3 x Im b7)
class ClosedFormGammaProvider : public GammaProvider {
 public:
  std::string name() const override { return "closed-form"; }
  AbGroup gamma(const AdaptedSystem& s, int n) const override;
  bool has_action() const override { return true; }
  AbHom action(const AdaptedSystem& from, const AdaptedSystem& to, const std::map<int, AbHom>& f,
               int n) const override;

  /// The presentation behind gamma(): ambient coordinates are the summand
  /// generators of the terms above.
  PresentedGroup presentation(const GradedGroup& h, const std::map<int, AbHom>& b, int n) const;
  /// Human-readable list of terms with their values.
  std::vector<std::pair<std::string, AbGroup>> terms(const GradedGroup& h, int n) const;
};

AbGroup gamma_closed_form(const GradedGroup& h, const std::map<int, AbHom>& b, int n);

/// Gamma table: unconditional and b-conditioned groups per degree.
struct GammaTable {
  struct Rule {
    int degree = 0;
    std::optional<std::pair<int, Index>> condition;  // b_m has value index k
    AbGroup group;
  };
  std::vector<Rule> rules;
};

class TableGammaProvider : public GammaProvider {
 public:
  explicit TableGammaProvider(GammaTable table) : table_(std::move(table)) {}
  std::string name() const override { return "table"; }
  AbGroup gamma(const AdaptedSystem& s, int n) const override;

 private:
  GammaTable table_;
};

enum class Equivalence { naive, orbit };

struct ClassificationResult {
  enum class Outcome { finite, infinite, unknown };
  Outcome outcome = Outcome::unknown;
  Equivalence mode = Equivalence::naive;
  std::string provider;
  long count = 0;
  long naive_count = 0;
  std::vector<AdaptedSystem> representatives;
  /// Number of partial systems after choosing b_n, for n = 2..max_degree.
  std::vector<std::pair<int, long>> per_degree;
  /// per_degree counts from the first degree with more than one system.
  std::vector<long> stage_counts;
  int infinite_degree = 0;
  std::string reason;
  bool lower_bound = false;
};

struct ClassifyOptions {
  int max_degree = 0;
  Equivalence mode = Equivalence::naive;
  long max_systems = 1'000'000;
  bool realize = false;  // realize every leaf (always on for the realized provider)
};

/// All adapted b-families up to b_{max_degree}; throws InfiniteError.
std::vector<AdaptedSystem> enumerate_systems(const GradedGroup& h, const GammaProvider& provider, int max_degree,
                                             std::vector<std::pair<int, long>>* per_degree = nullptr,
                                             long max_systems = 1'000'000, bool realize = false);

ClassificationResult count_classes(const GradedGroup& h, const GammaProvider& provider, const ClassifyOptions& opt);

/// Action of the graded automorphism f on Gamma_n, for closed-form Gamma.
AbHom induced_gamma_action(const ClosedFormGammaProvider& provider, const AdaptedSystem& from,
                           const AdaptedSystem& to, const std::map<int, AbHom>& f, int n);

std::string to_string(ClassificationResult::Outcome o);
std::string to_string(Equivalence e);

}  // namespace wseq
