// Characteristic pairs: splitting a free DGA into a perfect one plus
// extension classes, and gluing them back.

#include "wseq/whitehead.hpp"

namespace wseq {

namespace {

// Restores d d = 0 on the degree-(n+1) generators after lower degrees were
// modified by cycles, by subtracting a decomposable preimage.
void repair_square(FreeDGA& t, int n) {
  for (int g : t.generators_of_degree(n + 1)) {
    AlgElement y = t.apply_diff(t.diff(g));
    if (y.is_zero()) continue;
    auto x = t.boundary_preimage(n - 1, y);
    if (!x) throw DomainError("cannot restore d^2 = 0 on " + t.generator(g).name);
    t.set_diff(g, t.diff(g) - *x);
  }
}

// d(v_i) += sign * sum_j to_split(j, i) h_j over the degree-(n+1) generators.
void shift_complement(FreeDGA& t, int n, const IntMatrix& to_split, const std::vector<AlgElement>& h, int sign) {
  auto gens = t.generators_of_degree(n + 1);
  for (size_t i = 0; i < gens.size(); ++i) {
    AlgElement delta;
    for (size_t j = 0; j < h.size(); ++j) delta += to_split(static_cast<Index>(j), static_cast<Index>(i)) * h[j];
    if (delta.is_zero()) continue;
    t.set_diff(gens[i], sign > 0 ? t.diff(gens[i]) + delta : t.diff(gens[i]) - delta);
  }
}

}  // namespace

CharacteristicPair characteristic_pair(const FreeDGA& d, int lo, int hi) {
  if (auto v = d.validate(); !v.ok) throw DomainError(v.message);
  CharacteristicPair out;
  out.lo = lo;
  out.hi = hi;
  FreeDGA t = d;
  for (int n = 2; n < d.max_degree(); ++n) {
    repair_square(t, n);
    WhiteheadEngine e(t);
    if (n >= lo && n <= hi) out.pi.emplace(n, e.bracket(n));
    const AbHom& ph = e.phi(n);
    auto cyc = e.phi_cycles(n);
    for (size_t j = 0; j < cyc.size(); ++j)
      if (ph.codomain().is_zero(IntVector(ph.matrix().col(static_cast<Index>(j))))) cyc[j] = AlgElement{};
    shift_complement(t, n, e.split(n + 1).to_split, cyc, -1);
  }
  for (int n = std::max(lo, d.max_degree()); n <= hi; ++n) out.pi.emplace(n, WhiteheadEngine(t).bracket(n));
  out.perfect = t;
  return out;
}

FreeDGA realize_from_pair(const CharacteristicPair& pair) {
  FreeDGA t = pair.perfect;
  for (int n = 2; n < t.max_degree(); ++n) {
    repair_square(t, n);
    auto it = pair.pi.find(n);
    if (it == pair.pi.end() || is_zero(it->second.representative)) continue;
    WhiteheadEngine e(t);
    const auto& cok = e.coker_b(n + 1);
    if (!(cok.group == it->second.target))
      throw DomainError("pi_" + std::to_string(n) + " targets " + it->second.target.str() + " but Coker b_" +
                        std::to_string(n + 1) + " is " + cok.group.str());
    const IntMatrix& rep = it->second.representative;
    const auto& sp = e.split(n + 1);
    if (rep.cols() != sp.complement_basis.cols())
      throw DomainError("pi_" + std::to_string(n) + " has the wrong number of columns");
    std::vector<AlgElement> h;
    for (Index j = 0; j < rep.cols(); ++j) h.push_back(e.gamma_cycle(n, mul(cok.section, IntVector(rep.col(j)))));
    shift_complement(t, n, sp.to_split, h, +1);
  }
  if (auto v = t.validate(); !v.ok) throw InvariantError("realized DGA is invalid: " + v.message);
  return t;
}

bool check_morphism_condition(const DgaMorphism& alpha, const std::map<int, IntMatrix>& pi_a,
                              const std::map<int, IntMatrix>& pi_b, int lo, int hi) {
  if (lo > hi) throw DomainError("empty degree range");
  WhiteheadEngine ea(alpha.source()), eb(alpha.target());
  for (int n = lo; n <= hi; ++n) {
    const auto& cok_a = ea.coker_b(n + 1);
    const auto& cok_b = eb.coker_b(n + 1);
    const IntMatrix& comp_a = ea.split(n + 1).complement_basis;
    const Index ra = comp_a.cols(), rb = eb.split(n + 1).complement_basis.cols();
    auto rep = [n](const std::map<int, IntMatrix>& pi, Index rows, Index cols) {
      auto it = pi.find(n);
      if (it == pi.end()) return zeros(rows, cols);
      if (it->second.rows() != rows || it->second.cols() != cols)
        throw DomainError("pi_" + std::to_string(n) + " representative has the wrong shape");
      return it->second;
    };
    IntMatrix pa = rep(pi_a, cok_a.group.ngens(), ra);
    IntMatrix pb = rep(pi_b, cok_b.group.ngens(), rb);

    AbHom gam = induced_hom(ea.gamma(n).presented, eb.gamma(n).presented, alpha.word_matrix(n, n, n));
    IntMatrix gbar = mul(mul(cok_b.projection.matrix(), gam.matrix()), cok_a.section);
    IntMatrix moved = mul(alpha.linear_matrix(n + 1), comp_a);
    IntMatrix xi = mul(eb.split(n + 1).to_split, moved).topRows(rb);
    IntMatrix delta = mul(gbar, pa) - mul(pb, xi);
    if (!extension_class(ea.resolution(n), cok_b.group, delta).trivial) return false;
  }
  return true;
}

}  // namespace wseq
