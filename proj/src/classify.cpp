#include "wseq/classify.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace wseq {

int top_degree(const GradedGroup& h) {
  int top = 0;
  for (const auto& [n, g] : h)
    if (!g.is_trivial()) top = std::max(top, n);
  return top;
}

std::string to_string(ClassificationResult::Outcome o) {
  switch (o) {
    case ClassificationResult::Outcome::finite: return "finite";
    case ClassificationResult::Outcome::infinite: return "infinite";
    default: return "unknown";
  }
}

std::string to_string(Equivalence e) { return e == Equivalence::naive ? "naive" : "orbit"; }

// ---------------------------------------------------------------- minimal complex

std::vector<MinimalGenerator> minimal_generators(const GradedGroup& h, int n) {
  std::vector<MinimalGenerator> out;
  const AbGroup here = at_degree(h, n), below = at_degree(h, n - 1);
  for (Index i = 0; i < here.ngens(); ++i) {
    MinimalGenerator g;
    g.order = here.order(i);
    g.kind = g.order == 0 ? 'z' : 'y';
    g.degree = n;
    g.homology_degree = n;
    g.index = i;
    g.name = std::string(1, g.kind) + std::to_string(n) + "_" + std::to_string(i + 1);
    out.push_back(g);
  }
  for (Index i = below.free_rank(); i < below.ngens(); ++i) {
    MinimalGenerator g;
    g.kind = 'x';
    g.order = below.order(i);
    g.degree = n;
    g.homology_degree = n - 1;
    g.index = i;
    g.name = "x" + std::to_string(n) + "_" + std::to_string(i + 1);
    out.push_back(g);
  }
  return out;
}

FreeChainComplex minimal_complex(const GradedGroup& h) {
  FreeChainComplex c;
  const int top = top_degree(h);
  for (int n = 1; n <= top + 1; ++n) c.set_rank(n, static_cast<Index>(minimal_generators(h, n).size()));
  for (int n = 2; n <= top + 1; ++n) {
    auto src = minimal_generators(h, n), tgt = minimal_generators(h, n - 1);
    IntMatrix d = zeros(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
      if (src[j].kind != 'x') continue;
      for (size_t i = 0; i < tgt.size(); ++i)
        if (tgt[i].kind == 'y' && tgt[i].index == src[j].index) d(static_cast<Index>(i), static_cast<Index>(j)) = src[j].order;
    }
    c.set_diff(n, d);
  }
  return c;
}

// ---------------------------------------------------------------- realization

std::string AdaptedSystem::key() const {
  std::ostringstream os;
  for (const auto& [n, f] : b) {
    os << n << ':';
    const IntMatrix& m = f.matrix();
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) os << m(i, j) << ',';
    os << ';';
  }
  return os.str();
}

AdaptedSystem initial_system(const GradedGroup& h, bool realize) {
  for (const auto& [n, g] : h)
    if (n < 1 && !g.is_trivial()) throw DomainError("homology must vanish in degrees <= 0");
  AdaptedSystem s;
  s.H = h;
  s.built = 1;
  if (realize) {
    FreeDGA d;
    for (const auto& g : minimal_generators(h, 1)) d.add_generator(g.name, 1);
    s.realized = d;
  }
  return s;
}

namespace {

AlgElement random_boundary(const FreeDGA& t, int n, const RealizeOptions& opt) {
  if (!opt.rng) return {};
  const auto& words = t.word_basis(n + 1, n);
  if (words.empty()) return {};
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> coef(-opt.noise, opt.noise);
  AlgElement w;
  for (int k = 0; k < 2; ++k) w.add(words[pick(*opt.rng)], coef(*opt.rng));
  return t.apply_diff(w);
}

// Adds the generators of degree built + 1; kernel generators only when b_next is given.
AdaptedSystem add_degree(AdaptedSystem s, const AbHom* b_next, const RealizeOptions& opt) {
  if (!s.realized) throw DomainError("system carries no realized DGA");
  const int n = s.built;
  FreeDGA t = *s.realized;
  WhiteheadEngine e(t);
  const AbGroup gam = e.gamma(n).presented.group();
  if (b_next) {
    if (!(b_next->domain() == at_degree(s.H, n + 1)))
      throw DomainError("b_" + std::to_string(n + 1) + " must start at H_" + std::to_string(n + 1));
    if (!(b_next->codomain() == gam))
      throw DomainError("b_" + std::to_string(n + 1) + " must land in Gamma_" + std::to_string(n) + " = " + gam.str());
  }
  std::vector<std::pair<std::string, AlgElement>> added;
  for (const auto& g : minimal_generators(s.H, n + 1)) {
    AlgElement value;
    if (g.kind == 'x') {
      auto y = t.find("y" + std::to_string(n) + "_" + std::to_string(g.index + 1));
      if (!y) throw InvariantError("missing generator killed by " + g.name);
      IntVector dl = IntVector::Zero(static_cast<Index>(t.generators_of_degree(n).size()));
      dl(t.position_in_degree(*y)) = g.order;
      value = e.section(n).apply(dl);
    } else {
      if (!b_next) continue;
      value = e.gamma_cycle(n, IntVector(b_next->matrix().col(g.index)));
    }
    value += random_boundary(t, n, opt);
    added.emplace_back(g.name, value);
  }
  for (const auto& [name, value] : added) t.add_generator(name, n + 1);
  for (const auto& [name, value] : added) t.set_diff(name, value);
  if (b_next) {
    s.b.insert_or_assign(n + 1, *b_next);
    s.gamma_log.insert_or_assign(n, gam);
  }
  s.realized = std::move(t);
  s.built = n + 1;
  return s;
}

}  // namespace

AdaptedSystem realize_step(AdaptedSystem state, const AbHom& b_next, const RealizeOptions& opt) {
  return add_degree(std::move(state), &b_next, opt);
}

AdaptedSystem close_system(AdaptedSystem state, const RealizeOptions& opt) {
  return add_degree(std::move(state), nullptr, opt);
}

GammaGroup gamma_via_realization(const AdaptedSystem& state, int n) {
  if (!state.realized || state.built < n) throw DomainError("system is not realized through degree " + std::to_string(n));
  return WhiteheadEngine(*state.realized).gamma(n);
}

AdaptedSystem realize_system(const GradedGroup& h, const std::map<int, AbHom>& b, int max_degree,
                             const RealizeOptions& opt) {
  AdaptedSystem s = initial_system(h, true);
  for (int m = 2; m <= max_degree; ++m) {
    auto it = b.find(m);
    AbHom bm = it != b.end() ? it->second
                             : AbHom::zero(at_degree(h, m), gamma_via_realization(s, m - 1).presented.group());
    s = realize_step(std::move(s), bm, opt);
  }
  s = close_system(std::move(s), opt);
  for (const auto& [m, f] : b)
    if (m > max_degree) throw DomainError("b_" + std::to_string(m) + " is beyond the realized range");
  return s;
}

// ---------------------------------------------------------------- enumeration

std::vector<AdaptedSystem> enumerate_systems(const GradedGroup& h, const GammaProvider& provider, int max_degree,
                                             std::vector<std::pair<int, long>>* per_degree, long max_systems,
                                             bool realize) {
  if (max_degree < 2) throw DomainError("max degree must be at least 2");
  realize = realize || provider.needs_realization();
  std::vector<AdaptedSystem> leaves;
  std::map<int, long> counts;
  for (int m = 2; m <= max_degree; ++m) counts[m] = 0;

  std::function<void(const AdaptedSystem&, int)> rec = [&](const AdaptedSystem& s, int m) {
    if (m > max_degree) {
      if (static_cast<long>(leaves.size()) >= max_systems)
        throw ResourceError("more than " + std::to_string(max_systems) + " adapted systems");
      leaves.push_back(realize ? close_system(s) : s);
      return;
    }
    AbGroup gam = provider.gamma(s, m - 1);
    std::vector<AbHom> homs;
    try {
      homs = hom_elements(at_degree(h, m), gam);
    } catch (const InfiniteError&) {
      throw InfiniteError("Hom(H_" + std::to_string(m) + ", Gamma_" + std::to_string(m - 1) + ") = Hom(" +
                              at_degree(h, m).str() + ", " + gam.str() + ") is infinite",
                          m);
    }
    for (size_t k = 0; k < homs.size(); ++k) {
      AdaptedSystem next = realize ? realize_step(s, homs[k]) : s;
      if (!realize) {
        next.b.insert_or_assign(m, homs[k]);
        next.gamma_log.insert_or_assign(m - 1, gam);
      }
      next.b_index.insert_or_assign(m, static_cast<Index>(k));
      ++counts[m];
      rec(next, m + 1);
    }
  };
  rec(initial_system(h, realize), 2);
  if (per_degree) per_degree->assign(counts.begin(), counts.end());
  return leaves;
}

// ---------------------------------------------------------------- counting

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ClassificationResult count_classes(const GradedGroup& h, const GammaProvider& provider, const ClassifyOptions& opt) {
  ClassificationResult r;
  r.mode = opt.mode;
  r.provider = provider.name();
  bool aut_finite = true;
  for (const auto& [n, g] : h)
    if (n <= opt.max_degree && g.free_rank() > 1) aut_finite = false;

  std::vector<AdaptedSystem> leaves;
  try {
    leaves = enumerate_systems(h, provider, opt.max_degree, &r.per_degree, opt.max_systems, opt.realize);
  } catch (const InfiniteError& e) {
    r.infinite_degree = e.degree();
    r.reason = e.what();
    r.outcome = (opt.mode == Equivalence::naive || aut_finite) ? ClassificationResult::Outcome::infinite
                                                                : ClassificationResult::Outcome::unknown;
    return r;
  } catch (const ResourceError& e) {
    r.reason = e.what();
    r.outcome = ClassificationResult::Outcome::unknown;
    return r;
  }
  bool started = false;
  for (const auto& [n, c] : r.per_degree) {
    if (c > 1) started = true;
    if (started) r.stage_counts.push_back(c);
  }
  if (r.stage_counts.empty()) r.stage_counts.push_back(static_cast<long>(leaves.size()));
  r.naive_count = static_cast<long>(leaves.size());

  if (opt.mode == Equivalence::naive) {
    r.outcome = ClassificationResult::Outcome::finite;
    r.count = r.naive_count;
    r.representatives = std::move(leaves);
    return r;
  }

  if (!provider.has_action()) {
    r.outcome = ClassificationResult::Outcome::unknown;
    r.reason = "orbit mode needs a Gamma provider with a functorial action (closed-form)";
    return r;
  }
  if (!aut_finite) {
    r.outcome = ClassificationResult::Outcome::unknown;
    r.reason = "a homology group has free rank >= 2, its automorphism group is infinite";
    return r;
  }

  std::map<std::string, size_t> index;
  for (size_t i = 0; i < leaves.size(); ++i) index.emplace(leaves[i].key(), i);
  UnionFind uf(leaves.size());

  for (int m = 2; m <= opt.max_degree; ++m) {
    const AbGroup hm = at_degree(h, m);
    if (hm.is_trivial()) continue;
    std::vector<AbHom> auts;
    for_each_automorphism(hm, [&](const AbHom& f) {
      auts.push_back(f);
      return true;
    });
    for (size_t ai = 1; ai < auts.size(); ++ai) {
      std::map<int, AbHom> f{{m, auts[ai]}};
      const AbHom finv = inverse(auts[ai]);
      for (size_t i = 0; i < leaves.size(); ++i) {
        const AdaptedSystem& s = leaves[i];
        AdaptedSystem t;
        t.H = h;
        try {
          for (int k = 2; k <= opt.max_degree; ++k) {
            AbHom act = provider.action(s, t, f, k - 1);
            AbHom bk = compose(act, s.b.at(k));
            if (k == m) bk = compose(bk, finv);
            t.b.insert_or_assign(k, bk);
          }
        } catch (const DomainError&) {
          r.lower_bound = true;
          continue;
        }
        auto it = index.find(t.key());
        if (it == index.end()) throw InvariantError("automorphism image of an adapted system was not enumerated");
        uf.unite(i, it->second);
      }
    }
  }
  for (size_t i = 0; i < leaves.size(); ++i)
    if (uf.find(i) == i) r.representatives.push_back(leaves[i]);
  r.count = static_cast<long>(r.representatives.size());
  r.outcome = ClassificationResult::Outcome::finite;
  if (r.lower_bound) r.reason = "some Gamma actions were undefined and those systems were kept apart";
  return r;
}

}  // namespace wseq
