#include "wseq/whitehead.hpp"

#include <functional>

namespace wseq {

namespace {

AlgElement element_of(const FreeDGA& d, int n, const IntVector& v) {
  auto gens = d.generators_of_degree(n);
  AlgElement x;
  for (size_t i = 0; i < gens.size(); ++i) x.add(Word{gens[i]}, v(static_cast<Index>(i)));
  return x;
}

PresentedGroup trivial_presentation() { return PresentedGroup::present(0, zeros(0, 0)); }

}  // namespace

// ---------------------------------------------------------------- section

IntVector CanonicalSection::coordinates(const IntVector& v) const {
  if (kernel_basis.cols() == 0) {
    if (!is_zero(v)) throw DomainError("element is outside ker beta_" + std::to_string(degree));
    return IntVector::Zero(0);
  }
  auto c = coords.coords(v);
  if (!c) throw DomainError("element is outside ker beta_" + std::to_string(degree));
  return *c;
}

AlgElement CanonicalSection::apply(const IntVector& v) const {
  IntVector c = coordinates(v);
  AlgElement out;
  for (Index i = 0; i < c.size(); ++i) out += c(i) * completions[static_cast<size_t>(i)];
  return out;
}

// ---------------------------------------------------------------- Ext

ExtClass extension_class(const IntMatrix& resolution, const AbGroup& target, const IntMatrix& phi) {
  const Index k = resolution.rows(), r = resolution.cols(), c = target.ngens();
  if (phi.rows() != c || phi.cols() != r) throw DomainError("extension_class: representative has wrong shape");
  // Hom(Z^r, C) as Z^{c r} modulo torsion and the image of Hom(Z^k, C).
  std::vector<IntVector> rels;
  for (Index i = 0; i < c; ++i) {
    for (Index m = 0; m < k; ++m) {
      IntVector v = IntVector::Zero(c * r);
      for (Index j = 0; j < r; ++j) v(i * r + j) = resolution(m, j);
      rels.push_back(v);
    }
    if (target.order(i) != 0)
      for (Index j = 0; j < r; ++j) {
        IntVector v = IntVector::Zero(c * r);
        v(i * r + j) = target.order(i);
        rels.push_back(v);
      }
  }
  IntMatrix rel(c * r, static_cast<Index>(rels.size()));
  for (size_t j = 0; j < rels.size(); ++j) rel.col(static_cast<Index>(j)) = rels[j];
  auto pg = PresentedGroup::present(c * r, rel);

  ExtClass out;
  out.ext = pg.group();
  out.target = target;
  out.representative = phi;
  for (Index i = 0; i < c; ++i)
    if (target.order(i) != 0)
      for (Index j = 0; j < r; ++j) out.representative(i, j) = mod(phi(i, j), target.order(i));
  IntVector flat(c * r);
  for (Index i = 0; i < c; ++i)
    for (Index j = 0; j < r; ++j) flat(i * r + j) = out.representative(i, j);
  out.element = pg.to_canonical(flat);
  out.trivial = out.ext.is_zero(out.element);
  return out;
}

std::optional<IntMatrix> lift_through_resolution(const IntMatrix& resolution, const AbGroup& target,
                                                 const IntMatrix& phi) {
  const Index k = resolution.rows(), r = resolution.cols(), c = target.ngens();
  if (phi.rows() != c || phi.cols() != r) throw DomainError("lift_through_resolution: representative has wrong shape");
  IntMatrix g = zeros(c, k);
  for (Index i = 0; i < c; ++i) {
    if (r == 0) continue;
    // g_i R = phi_i + e_i t
    const Integer e = target.order(i);
    IntMatrix sys = resolution.transpose();
    if (e != 0) sys = hcat(sys, IntMatrix(-e * identity(r)));
    IntVector rhs = phi.row(i).transpose();
    if (sys.cols() == 0) {
      if (!is_zero(rhs)) return std::nullopt;
      continue;
    }
    auto x = solve_linear(sys, rhs);
    if (!x) return std::nullopt;
    if (k > 0) g.row(i) = x->head(k).transpose();
  }
  return g;
}

// ---------------------------------------------------------------- engine

WhiteheadEngine::WhiteheadEngine(FreeDGA d) : d_(std::move(d)), lin_(d_.linear_part()) {}

IntMatrix WhiteheadEngine::selector(int n) const {
  auto gens = d_.generators_of_degree(n);
  const auto& basis = d_.word_basis(n, n);
  IntMatrix s = zeros(static_cast<Index>(gens.size()), static_cast<Index>(basis.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    auto j = d_.word_index(n, n, Word{gens[i]});
    if (!j) throw InvariantError("generator missing from its word basis");
    s(static_cast<Index>(i), *j) = 1;
  }
  return s;
}

const PresentedGroup& WhiteheadEngine::H_V(int n) {
  auto it = hv_.find(n);
  if (it == hv_.end()) it = hv_.emplace(n, homology(lin_, n)).first;
  return it->second;
}

const PresentedGroup& WhiteheadEngine::H_T(int n) {
  auto it = ht_.find(n);
  if (it == ht_.end()) it = ht_.emplace(n, n >= 1 ? d_.truncation_homology(n + 1, n) : trivial_presentation()).first;
  return it->second;
}

const DegreeSplitting& WhiteheadEngine::split(int n) {
  auto it = split_.find(n);
  if (it == split_.end()) it = split_.emplace(n, splitting(lin_, n)).first;
  return it->second;
}

const GammaGroup& WhiteheadEngine::gamma(int n) {
  auto it = gamma_.find(n);
  if (it != gamma_.end()) return it->second;
  GammaGroup g;
  g.degree = n;
  if (n < 1) {
    g.presented = trivial_presentation();
    g.as_kernel = AbHom::zero(AbGroup(), AbGroup());
  } else {
    const Index words = static_cast<Index>(d_.word_basis(n, n).size());
    IntMatrix cycles = nullspace_basis(vcat(d_.diff_matrix(n, n), selector(n)));
    g.presented = PresentedGroup::subquotient(cycles, d_.diff_matrix(n + 1, n));
    g.as_kernel = induced_hom(g.presented, d_.truncation_homology(n, n), identity(words));
  }
  return gamma_.emplace(n, std::move(g)).first->second;
}

const BetaMap& WhiteheadEngine::beta(int n) {
  auto it = beta_.find(n);
  if (it != beta_.end()) return it->second;
  BetaMap b;
  b.degree = n;
  auto gens = d_.generators_of_degree(n);
  b.target = n >= 2 ? d_.truncation_homology(n - 1, n - 1) : trivial_presentation();
  IntMatrix m(b.target.group().ngens(), static_cast<Index>(gens.size()));
  for (size_t j = 0; j < gens.size(); ++j) {
    if (n < 2) break;
    m.col(static_cast<Index>(j)) = b.target.to_canonical(d_.to_vector(d_.diff(gens[j]), n - 1, n - 1));
  }
  b.map = AbHom(AbGroup::free(static_cast<int>(gens.size())), b.target.group(), m);
  return beta_.emplace(n, std::move(b)).first->second;
}

const CanonicalSection& WhiteheadEngine::section(int n) {
  auto it = section_.find(n);
  if (it != section_.end()) return it->second;
  CanonicalSection s;
  s.degree = n;
  s.kernel_basis = kernel(beta(n).map).embedding.matrix();
  if (s.kernel_basis.cols() > 0) s.coords = LatticeCoordinates<Integer>(s.kernel_basis);
  for (Index i = 0; i < s.kernel_basis.cols(); ++i) {
    AlgElement v = element_of(d_, n, s.kernel_basis.col(i));
    auto q = d_.boundary_preimage(n - 1, -d_.apply_diff(v));
    if (!q) throw InvariantError("no cycle completion for an element of ker beta_" + std::to_string(n));
    s.completions.push_back(v + *q);
  }
  return section_.emplace(n, std::move(s)).first->second;
}

const AbHom& WhiteheadEngine::b(int n) {
  auto it = b_.find(n);
  if (it != b_.end()) return it->second;
  const auto& hv = H_V(n);
  const auto& g = gamma(n - 1);
  IntMatrix m(g.presented.group().ngens(), hv.group().ngens());
  for (Index i = 0; i < m.cols(); ++i) {
    if (n < 2) break;
    AlgElement dz = d_.apply_diff(element_of(d_, n, hv.lift(i)));
    m.col(i) = g.presented.to_canonical(d_.to_vector(dz, n - 1, n - 1));
  }
  return b_.emplace(n, AbHom(hv.group(), g.presented.group(), m)).first->second;
}

std::vector<AlgElement> WhiteheadEngine::phi_cycles(int n) {
  const IntMatrix& comp = split(n + 1).complement_basis;
  const IntMatrix dl = mul(lin_.diff(n + 1), comp);
  std::vector<AlgElement> out;
  for (Index j = 0; j < comp.cols(); ++j) {
    AlgElement dL = d_.apply_diff(element_of(d_, n + 1, comp.col(j)));
    out.push_back(dL - section(n).apply(dl.col(j)));
  }
  return out;
}

const AbHom& WhiteheadEngine::phi(int n) {
  auto it = phi_.find(n);
  if (it != phi_.end()) return it->second;
  const auto& g = gamma(n);
  auto cyc = phi_cycles(n);
  IntMatrix m(g.presented.group().ngens(), static_cast<Index>(cyc.size()));
  for (size_t j = 0; j < cyc.size(); ++j)
    m.col(static_cast<Index>(j)) = g.presented.to_canonical(d_.to_vector(cyc[j], n, n));
  return phi_.emplace(n, AbHom(AbGroup::free(static_cast<int>(cyc.size())), g.presented.group(), m)).first->second;
}

const CokernelData& WhiteheadEngine::coker_b(int n_plus_1) {
  auto it = coker_.find(n_plus_1);
  if (it == coker_.end()) it = coker_.emplace(n_plus_1, cokernel(b(n_plus_1))).first;
  return it->second;
}

const AbHom& WhiteheadEngine::iota(int n) {
  auto it = iota_.find(n);
  if (it != iota_.end()) return it->second;
  const auto& g = gamma(n);
  AbHom m = n >= 1 ? induced_hom(g.presented, H_T(n), identity(g.presented.ambient_rank()))
                   : AbHom::zero(AbGroup(), AbGroup());
  return iota_.emplace(n, std::move(m)).first->second;
}

const AbHom& WhiteheadEngine::lambda(int n) {
  auto it = lambda_.find(n);
  if (it != lambda_.end()) return it->second;
  return lambda_.emplace(n, induced_hom(H_T(n), H_V(n), selector(n))).first->second;
}

const IntMatrix& WhiteheadEngine::resolution(int n) {
  auto it = res_.find(n);
  if (it == res_.end()) it = res_.emplace(n, resolution_of_H(lin_, n).boundary).first;
  return it->second;
}

IntMatrix WhiteheadEngine::brace_resolution(int n) {
  const IntMatrix& comp = split(n + 1).complement_basis;
  const IntMatrix dl = mul(lin_.diff(n + 1), comp);
  const auto& s = section(n);
  IntMatrix out(s.kernel_basis.cols(), comp.cols());
  for (Index j = 0; j < comp.cols(); ++j) out.col(j) = s.coordinates(dl.col(j));
  return out;
}

ExtClass WhiteheadEngine::bracket(int n) {
  const auto& cok = coker_b(n + 1);
  IntMatrix bar = mul(cok.projection.matrix(), phi(n).matrix());
  return extension_class(resolution(n), cok.group, bar);
}

ExtClass WhiteheadEngine::brace(int n) {
  const auto& cok = coker_b(n + 1);
  IntMatrix bar = mul(cok.projection.matrix(), phi(n).matrix());
  return extension_class(brace_resolution(n), cok.group, bar);
}

AlgElement WhiteheadEngine::gamma_cycle(int n, const IntVector& canonical) {
  return d_.from_vector(gamma(n).presented.lift(canonical), n, n);
}

DegreeData WhiteheadEngine::degree_data(int n) {
  DegreeData dd;
  dd.degree = n;
  dd.H_V = H_V(n).group();
  dd.H_T = H_T(n).group();
  dd.gamma = gamma(n).presented.group();
  dd.b = b(n + 1);
  dd.b_in = b(n);
  dd.coker_b = coker_b(n + 1).group;
  dd.ker_b = kernel(b(n)).group;
  dd.iota = iota(n);
  dd.lambda = lambda(n);
  dd.phi = phi(n);
  dd.bracket = bracket(n);
  dd.brace = brace(n);
  dd.perfect = dd.phi.is_zero();
  dd.quasi_perfect = dd.bracket.trivial;
  return dd;
}

void WhiteheadEngine::check_exactness(int n) {
  auto fail = [n](const std::string& where) {
    throw InvariantError("Whitehead sequence is not exact at " + where + " in degree " + std::to_string(n));
  };
  const AbHom& bn1 = b(n + 1);
  const AbHom& i = iota(n);
  const AbHom& l = lambda(n);
  const AbHom& bn = b(n);
  if (!same_subgroup(bn1.codomain(), bn1.matrix(), kernel(i).embedding.matrix())) fail("Gamma");
  if (!same_subgroup(i.codomain(), i.matrix(), kernel(l).embedding.matrix())) fail("H(T(V))");
  if (!same_subgroup(l.codomain(), l.matrix(), kernel(bn).embedding.matrix())) fail("H(V)");
}

// ---------------------------------------------------------------- free functions

PresentedGroup linear_homology(const FreeDGA& d, int n) { return homology(d.linear_part(), n); }
BetaMap beta(const FreeDGA& d, int n) { return WhiteheadEngine(d).beta(n); }
GammaGroup gamma(const FreeDGA& d, int n) { return WhiteheadEngine(d).gamma(n); }
AbHom b_map(const FreeDGA& d, int n_plus_1) { return WhiteheadEngine(d).b(n_plus_1); }
AbHom phi(const FreeDGA& d, int n) { return WhiteheadEngine(d).phi(n); }

std::pair<ExtClass, ExtClass> ext_classes(const FreeDGA& d, int n) {
  WhiteheadEngine e(d);
  return {e.bracket(n), e.brace(n)};
}

bool is_n_perfect(const FreeDGA& d, int n) { return WhiteheadEngine(d).phi(n).is_zero(); }
bool is_quasi_n_perfect(const FreeDGA& d, int n) { return WhiteheadEngine(d).bracket(n).trivial; }

bool is_perfect(const FreeDGA& d, int lo, int hi) {
  WhiteheadEngine e(d);
  for (int n = lo; n <= hi; ++n)
    if (!e.phi(n).is_zero()) return false;
  return true;
}

bool is_quasi_perfect(const FreeDGA& d, int lo, int hi) {
  WhiteheadEngine e(d);
  for (int n = lo; n <= hi; ++n)
    if (!e.bracket(n).trivial) return false;
  return true;
}

bool homology_splitting_check(const FreeDGA& d, int n) {
  WhiteheadEngine e(d);
  if (!e.bracket(n).trivial)
    throw DomainError("homology splitting needs a quasi " + std::to_string(n) + "-perfect DGA");
  return e.H_T(n).group() == direct_sum(e.coker_b(n + 1).group, kernel(e.b(n)).group);
}

WhiteheadData whitehead_sequence(const FreeDGA& d, int lo, int hi) {
  if (lo > hi) throw DomainError("empty degree range");
  if (auto v = d.validate(); !v.ok) throw DomainError(v.message);
  WhiteheadEngine e(d);
  WhiteheadData out;
  out.lo = lo;
  out.hi = hi;
  for (int n = lo; n <= hi; ++n) {
    e.check_exactness(n);
    out.degrees.push_back(e.degree_data(n));
  }
  return out;
}

// ---------------------------------------------------------------- isomorphism search

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
  }
}

namespace {

struct BudgetExceeded {};

// Automorphisms are cached per group. Groups whose automorphism group is
// infinite or too large to scan get the partial list {1, -1}.
class AutCache {
 public:
  struct Entry {
    std::vector<AbHom> list;
    bool complete = true;
  };

  const Entry& get(const AbGroup& g) {
    const std::string key = g.str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Entry e;
    AbGroup t = AbGroup::from_cyclic(g.torsion());
    if (g.free_rank() <= 1 && hom_count(t, t) <= 200000) {
      for_each_automorphism(g, [&](const AbHom& f) {
        e.list.push_back(f);
        return true;
      });
    } else {
      e.complete = false;
      e.list = {AbHom::identity(g), negate(AbHom::identity(g))};
    }
    return cache_.emplace(key, std::move(e)).first->second;
  }

 private:
  std::map<std::string, Entry> cache_;
};

}  // namespace

SequenceIsomorphism sequences_isomorphic(const WhiteheadData& a, const WhiteheadData& b, long budget) {
  if (a.lo != b.lo || a.hi != b.hi) throw DomainError("Whitehead sequences computed over different ranges");
  SequenceIsomorphism out;
  const int lo = a.lo, hi = a.hi;

  auto mismatch = [&](const std::string& what, int n, const AbGroup& x, const AbGroup& y) {
    out.verdict = Verdict::no;
    out.reason = what + " differs in degree " + std::to_string(n) + ": " + x.str() + " vs " + y.str();
    return out;
  };
  for (int n = lo; n <= hi; ++n) {
    const auto &x = a.at(n), &y = b.at(n);
    if (!(x.H_V == y.H_V)) return mismatch("H(V)", n, x.H_V, y.H_V);
    if (!(x.b.domain() == y.b.domain())) return mismatch("H(V)", n + 1, x.b.domain(), y.b.domain());
    if (!(x.gamma == y.gamma)) return mismatch("Gamma", n, x.gamma, y.gamma);
    if (!(x.H_T == y.H_T)) return mismatch("H(T(V))", n, x.H_T, y.H_T);
  }

  AutCache auts;
  std::vector<const AbGroup*> groups;
  for (int n = lo; n <= hi; ++n) {
    groups.push_back(&a.at(n).H_V);
    groups.push_back(&a.at(n).gamma);
    groups.push_back(&a.at(n).H_T);
  }
  groups.push_back(&a.at(hi).b.domain());
  std::string partial;
  for (const AbGroup* g : groups)
    if (!auts.get(*g).complete && partial.empty()) partial = g->str();

  // Steps: f_{hi+1}, then per degree n = hi..lo: gamma_n, h_n, f_n.
  enum Kind { F, G, H };
  std::vector<std::pair<Kind, int>> steps{{F, hi + 1}};
  for (int n = hi; n >= lo; --n) {
    steps.push_back({G, n});
    steps.push_back({H, n});
    steps.push_back({F, n});
  }

  std::map<int, AbHom> f, g, h;
  long nodes = 0;
  auto consistent = [&](Kind k, int n) {
    if (n > hi) return true;
    const auto &x = a.at(n), &y = b.at(n);
    switch (k) {
      case G: return compose(g.at(n), x.b) == compose(y.b, f.at(n + 1));
      case H: return compose(h.at(n), x.iota) == compose(y.iota, g.at(n));
      default: return compose(f.at(n), x.lambda) == compose(y.lambda, h.at(n));
    }
  };
  std::function<bool(size_t)> search = [&](size_t i) -> bool {
    if (i == steps.size()) return true;
    auto [k, n] = steps[i];
    const AbGroup& grp = k == G ? a.at(n).gamma : k == H ? a.at(n).H_T : n > hi ? a.at(hi).b.domain() : a.at(n).H_V;
    auto& slot = k == G ? g : k == H ? h : f;
    for (const AbHom& cand : auts.get(grp).list) {
      if (++nodes > budget) throw BudgetExceeded{};
      slot.insert_or_assign(n, cand);
      if (consistent(k, n) && search(i + 1)) return true;
    }
    slot.erase(n);
    return false;
  };

  try {
    if (search(0)) {
      out.verdict = Verdict::yes;
      out.reason = "commuting isomorphism found";
      out.f = f;
      out.gamma = g;
      out.h = h;
    } else if (partial.empty()) {
      out.verdict = Verdict::no;
      out.reason = "no commuting family of isomorphisms exists";
    } else {
      out.verdict = Verdict::unknown;
      out.reason = "automorphisms of " + partial + " were only sampled (+-1) and no witness was found";
    }
  } catch (const BudgetExceeded&) {
    out.verdict = Verdict::unknown;
    out.reason = "search budget of " + std::to_string(budget) + " nodes exhausted";
  }
  return out;
}

}  // namespace wseq
