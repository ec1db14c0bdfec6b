#include "wseq/classify.hpp"

namespace wseq {

AbHom GammaProvider::action(const AdaptedSystem&, const AdaptedSystem&, const std::map<int, AbHom>&, int) const {
  throw DomainError("Gamma provider '" + name() + "' has no automorphism action");
}

AbGroup RealizedGammaProvider::gamma(const AdaptedSystem& s, int n) const {
  return gamma_via_realization(s, n).presented.group();
}

// ---------------------------------------------------------------- closed form

namespace {

enum class TermKind { tensor, tor, triple };

struct Term {
  TermKind kind;
  int i, j;
};

std::vector<Term> closed_terms(int n) {
  using K = TermKind;
  switch (n) {
    case 6: return {{K::tensor, 3, 3}};
    case 7: return {{K::tensor, 3, 4}, {K::tensor, 4, 3}, {K::tor, 3, 3}};
    case 8:
      return {{K::tensor, 3, 5}, {K::tensor, 4, 4}, {K::tensor, 5, 3}, {K::tor, 3, 4}, {K::tor, 4, 3}};
    case 9:
      return {{K::tensor, 3, 6}, {K::tensor, 4, 5}, {K::tensor, 5, 4}, {K::tensor, 6, 3},
              {K::tor, 3, 5},    {K::tor, 4, 4},    {K::tor, 5, 3},    {K::triple, 3, 3}};
    default: return {};
  }
}

std::string term_name(const Term& t) {
  auto h = [](int k) { return "H" + std::to_string(k); };
  switch (t.kind) {
    case TermKind::tensor: return h(t.i) + " x " + h(t.j);
    case TermKind::tor: return "Tor(" + h(t.i) + ", " + h(t.j) + ")";
    default: return "H3 x H3 x H3 / (Im b7 x H3 + H3 x Im b7)";
  }
}

// Ambient coordinates of one term: tuples of canonical generator indices.
struct Block {
  Term term;
  Index offset = 0;
  std::vector<std::vector<Index>> tuples;
  std::vector<Integer> orders;
};

struct Layout {
  std::vector<Block> blocks;
  Index ambient = 0;
};

void check_domain(const GradedGroup& h, int n) {
  if (!at_degree(h, 1).is_trivial() || !at_degree(h, 2).is_trivial())
    throw DomainError("closed-form Gamma needs H_1 = H_2 = 0");
  if (n > 9) throw DomainError("closed-form Gamma is only available up to degree 9");
}

Layout layout(const GradedGroup& h, int n) {
  Layout l;
  for (const Term& t : closed_terms(n)) {
    Block b;
    b.term = t;
    b.offset = l.ambient;
    const AbGroup a = at_degree(h, t.i), c = at_degree(h, t.j);
    if (t.kind == TermKind::triple) {
      for (Index x = 0; x < a.ngens(); ++x)
        for (Index y = 0; y < a.ngens(); ++y)
          for (Index z = 0; z < a.ngens(); ++z) {
            b.tuples.push_back({x, y, z});
            b.orders.push_back(gcd(gcd(a.order(x), a.order(y)), a.order(z)));
          }
    } else {
      for (Index x = 0; x < a.ngens(); ++x)
        for (Index y = 0; y < c.ngens(); ++y) {
          if (t.kind == TermKind::tor && (a.order(x) == 0 || c.order(y) == 0)) continue;
          b.tuples.push_back({x, y});
          b.orders.push_back(gcd(a.order(x), c.order(y)));
        }
    }
    l.ambient += static_cast<Index>(b.tuples.size());
    l.blocks.push_back(std::move(b));
  }
  return l;
}

Index tuple_index(const Block& b, const std::vector<Index>& t) {
  for (size_t k = 0; k < b.tuples.size(); ++k)
    if (b.tuples[k] == t) return b.offset + static_cast<Index>(k);
  throw InvariantError("tuple outside its block");
}

IntMatrix aut_matrix(const GradedGroup& h, const std::map<int, AbHom>& f, int k) {
  auto it = f.find(k);
  return it != f.end() ? it->second.matrix() : identity(at_degree(h, k).ngens());
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (b == 0 || a % b != 0) throw DomainError("Tor action is not defined for this map");
  return a / b;
}

}  // namespace

PresentedGroup ClosedFormGammaProvider::presentation(const GradedGroup& h, const std::map<int, AbHom>& b, int n) const {
  check_domain(h, n);
  Layout l = layout(h, n);
  std::vector<IntVector> rels;
  for (const Block& blk : l.blocks)
    for (size_t k = 0; k < blk.tuples.size(); ++k)
      if (blk.orders[k] != 0) {
        IntVector v = IntVector::Zero(l.ambient);
        v(blk.offset + static_cast<Index>(k)) = blk.orders[k];
        rels.push_back(v);
      }
  for (const Block& blk : l.blocks) {
    if (blk.term.kind != TermKind::triple) continue;
    auto it = b.find(7);
    if (it == b.end() || it->second.is_zero()) continue;
    // Im b7 inside H3 x H3, pushed into both tensor positions.
    IntMatrix u = mul(presentation(h, b, 6).lift_matrix(), it->second.matrix());
    const Index g3 = at_degree(h, 3).ngens();
    for (Index col = 0; col < u.cols(); ++col)
      for (Index c = 0; c < g3; ++c) {
        IntVector left = IntVector::Zero(l.ambient), right = IntVector::Zero(l.ambient);
        for (Index x = 0; x < g3; ++x)
          for (Index y = 0; y < g3; ++y) {
            const Integer& coef = u(x * g3 + y, col);
            if (coef == 0) continue;
            left(tuple_index(blk, {x, y, c})) += coef;
            right(tuple_index(blk, {c, x, y})) += coef;
          }
        rels.push_back(left);
        rels.push_back(right);
      }
  }
  IntMatrix rel(l.ambient, static_cast<Index>(rels.size()));
  for (size_t j = 0; j < rels.size(); ++j) rel.col(static_cast<Index>(j)) = rels[j];
  return PresentedGroup::present(l.ambient, rel);
}

AbGroup ClosedFormGammaProvider::gamma(const AdaptedSystem& s, int n) const {
  return presentation(s.H, s.b, n).group();
}

std::vector<std::pair<std::string, AbGroup>> ClosedFormGammaProvider::terms(const GradedGroup& h, int n) const {
  check_domain(h, n);
  std::vector<std::pair<std::string, AbGroup>> out;
  for (const Term& t : closed_terms(n)) {
    const AbGroup a = at_degree(h, t.i), c = at_degree(h, t.j);
    switch (t.kind) {
      case TermKind::tensor: out.emplace_back(term_name(t), tensor(a, c)); break;
      case TermKind::tor: out.emplace_back(term_name(t), tor(a, c)); break;
      default: out.emplace_back(term_name(t), tensor(tensor(a, a), a)); break;
    }
  }
  return out;
}

AbHom ClosedFormGammaProvider::action(const AdaptedSystem& from, const AdaptedSystem& to,
                                      const std::map<int, AbHom>& f, int n) const {
  check_domain(from.H, n);
  Layout l = layout(from.H, n);
  IntMatrix m = zeros(l.ambient, l.ambient);
  for (const Block& blk : l.blocks) {
    const IntMatrix fi = aut_matrix(from.H, f, blk.term.i), fj = aut_matrix(from.H, f, blk.term.j);
    const AbGroup a = at_degree(from.H, blk.term.i), c = at_degree(from.H, blk.term.j);
    for (size_t src = 0; src < blk.tuples.size(); ++src)
      for (size_t dst = 0; dst < blk.tuples.size(); ++dst) {
        const auto &s = blk.tuples[src], &t = blk.tuples[dst];
        Integer coef;
        switch (blk.term.kind) {
          case TermKind::tensor: coef = fi(t[0], s[0]) * fj(t[1], s[1]); break;
          case TermKind::triple: coef = fi(t[0], s[0]) * fi(t[1], s[1]) * fi(t[2], s[2]); break;
          case TermKind::tor: {
            // Tor(Z_m, Z_k) = ker(m on Z_k), generated by k/g.
            const Integer mm = a.order(s[0]), mp = a.order(t[0]), kk = c.order(s[1]), kp = c.order(t[1]);
            const Integer g = gcd(mm, kk), gp = gcd(mp, kp);
            const Integer first = exact_div(fi(t[0], s[0]) * mm, mp);
            const Integer x = mod(first * fj(t[1], s[1]) * (kk / g), kp);
            coef = exact_div(x, kp / gp);
            break;
          }
        }
        m(blk.offset + static_cast<Index>(dst), blk.offset + static_cast<Index>(src)) = coef;
      }
  }
  return induced_hom(presentation(from.H, from.b, n), presentation(to.H, to.b, n), m);
}

AbGroup gamma_closed_form(const GradedGroup& h, const std::map<int, AbHom>& b, int n) {
  return ClosedFormGammaProvider().presentation(h, b, n).group();
}

AbHom induced_gamma_action(const ClosedFormGammaProvider& provider, const AdaptedSystem& from,
                           const AdaptedSystem& to, const std::map<int, AbHom>& f, int n) {
  return provider.action(from, to, f, n);
}

// ---------------------------------------------------------------- table

AbGroup TableGammaProvider::gamma(const AdaptedSystem& s, int n) const {
  const GammaTable::Rule* plain = nullptr;
  for (const auto& rule : table_.rules) {
    if (rule.degree != n) continue;
    if (!rule.condition) {
      plain = &rule;
      continue;
    }
    auto it = s.b_index.find(rule.condition->first);
    if (it != s.b_index.end() && it->second == rule.condition->second) return rule.group;
  }
  return plain ? plain->group : AbGroup();
}

}  // namespace wseq
