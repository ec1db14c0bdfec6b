#include "wseq/abgroup.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wseq {

namespace {

// Hard cap on enumerations so a typo in an input cannot hang a run.
constexpr long kMaxEnumeration = 5'000'000;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Integer parse_positive(const std::string& digits, const std::string& context) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw DomainError("bad group literal '" + context + "'");
  return Integer(digits);
}

// Per-summand functor values with 0 standing for Z.
Integer hom_cyclic(const Integer& m, const Integer& n) {
  if (m == 0) return n;
  if (n == 0) return 1;
  return gcd(m, n);
}
Integer ext_cyclic(const Integer& m, const Integer& n) {
  if (m == 0) return 1;
  if (n == 0) return m;
  return gcd(m, n);
}
Integer tor_cyclic(const Integer& m, const Integer& n) {
  if (m == 0 || n == 0) return 1;
  return gcd(m, n);
}

template <typename F>
AbGroup bilinear(const AbGroup& a, const AbGroup& b, F f) {
  std::vector<Integer> out;
  for (const auto& m : a.orders())
    for (const auto& n : b.orders()) out.push_back(f(m, n));
  return AbGroup::from_cyclic(out);
}

}  // namespace

// ---------------------------------------------------------------- AbGroup

AbGroup AbGroup::from_cyclic(const std::vector<Integer>& orders) {
  AbGroup g;
  std::vector<Integer> finite;
  for (const auto& o : orders) {
    if (o < 0) throw DomainError("negative cyclic order");
    if (o == 0)
      ++g.free_rank_;
    else if (o > 1)
      finite.push_back(o);
  }
  if (finite.empty()) return g;
  const Index n = static_cast<Index>(finite.size());
  IntMatrix d = IntMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) d(i, i) = finite[i];
  auto snf = smith_normal_form(d);
  for (Index i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) > 1) g.torsion_.push_back(snf.D(i, i));
  return g;
}

AbGroup AbGroup::parse(const std::string& text) {
  std::vector<Integer> orders;
  std::stringstream ss(text);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '+')) {
    any = true;
    std::string t = trim(part);
    if (t == "0") continue;
    if (t.empty() || t[0] != 'Z') throw DomainError("bad group literal '" + text + "'");
    std::string rest = t.substr(1);
    if (rest.empty()) {
      orders.push_back(0);
    } else if (rest[0] == '^') {
      Integer k = parse_positive(rest.substr(1), text);
      for (Integer i = 0; i < k; ++i) orders.push_back(0);
    } else {
      if (rest[0] == '_') rest = rest.substr(1);
      Integer d = parse_positive(rest, text);
      if (d < 2) throw DomainError("cyclic order must be >= 2 in '" + text + "'");
      orders.push_back(d);
    }
  }
  if (!any) throw DomainError("empty group literal");
  return from_cyclic(orders);
}

Integer AbGroup::order(Index i) const {
  if (i < free_rank_) return 0;
  return torsion_.at(static_cast<size_t>(i - free_rank_));
}

std::vector<Integer> AbGroup::orders() const {
  std::vector<Integer> out(free_rank_, Integer(0));
  out.insert(out.end(), torsion_.begin(), torsion_.end());
  return out;
}

Integer AbGroup::cardinality() const {
  if (free_rank_ > 0) throw InfiniteError("group " + str() + " is infinite");
  Integer c = 1;
  for (const auto& t : torsion_) c *= t;
  return c;
}

IntVector AbGroup::reduce(IntVector v) const {
  if (v.size() != ngens()) throw DomainError("element has wrong length for " + str());
  for (Index i = free_rank_; i < v.size(); ++i) v(i) = mod(v(i), order(i));
  return v;
}

bool AbGroup::is_zero(const IntVector& v) const { return wseq::is_zero(reduce(v)); }

IntMatrix AbGroup::relation_matrix() const {
  const Index t = static_cast<Index>(torsion_.size());
  IntMatrix r = IntMatrix::Zero(ngens(), t);
  for (Index i = 0; i < t; ++i) r(free_rank_ + i, i) = torsion_[i];
  return r;
}

std::string AbGroup::str() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank_ == 1) out = "Z";
  if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
  for (const auto& t : torsion_) {
    if (!out.empty()) out += " + ";
    out += "Z" + to_string(t);
  }
  return out;
}

AbGroup direct_sum(const AbGroup& a, const AbGroup& b) {
  auto o = a.orders();
  auto p = b.orders();
  o.insert(o.end(), p.begin(), p.end());
  return AbGroup::from_cyclic(o);
}

// ---------------------------------------------------------------- AbHom

AbHom::AbHom(AbGroup domain, AbGroup codomain, IntMatrix matrix)
    : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(matrix)) {
  if (m_.rows() != cod_.ngens() || m_.cols() != dom_.ngens())
    throw DomainError("homomorphism matrix has shape " + std::to_string(m_.rows()) + "x" +
                      std::to_string(m_.cols()) + ", expected " + std::to_string(cod_.ngens()) + "x" +
                      std::to_string(dom_.ngens()));
  for (Index i = cod_.free_rank(); i < m_.rows(); ++i)
    for (Index j = 0; j < m_.cols(); ++j) m_(i, j) = mod(m_(i, j), cod_.order(i));
  for (Index j = dom_.free_rank(); j < m_.cols(); ++j) {
    const Integer q = dom_.order(j);
    for (Index i = 0; i < m_.rows(); ++i) {
      const Integer e = cod_.order(i);
      bool ok = e == 0 ? m_(i, j) == 0 : (q * m_(i, j)) % e == 0;
      if (!ok)
        throw DomainError("ill-defined homomorphism " + dom_.str() + " -> " + cod_.str() + ": generator " +
                          std::to_string(j) + " of order " + to_string(q));
    }
  }
}

AbHom AbHom::zero(const AbGroup& a, const AbGroup& b) { return AbHom(a, b, zeros(b.ngens(), a.ngens())); }

AbHom AbHom::identity(const AbGroup& a) { return AbHom(a, a, wseq::identity(a.ngens())); }

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(g.domain() == f.codomain())) throw DomainError("compose: groups do not match");
  return AbHom(f.domain(), g.codomain(), mul(g.matrix(), f.matrix()));
}

AbHom add(const AbHom& f, const AbHom& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain())) throw DomainError("add: groups do not match");
  return AbHom(f.domain(), f.codomain(), f.matrix() + g.matrix());
}

AbHom negate(const AbHom& f) { return AbHom(f.domain(), f.codomain(), -f.matrix()); }

bool equal(const AbHom& f, const AbHom& g) { return f == g; }

namespace {

// The lattice spanned by the columns of m together with the relations of g
// is all of Z^ngens.
bool spans_everything(const AbGroup& g, const IntMatrix& m) {
  const Index n = g.ngens();
  if (n == 0) return true;
  IntMatrix all = hcat(m, g.relation_matrix());
  if (all.cols() < n) return false;
  auto snf = smith_normal_form(all);
  if (snf.rank < n) return false;
  for (Index i = 0; i < n; ++i)
    if (snf.D(i, i) != 1) return false;
  return true;
}

}  // namespace

bool is_isomorphism(const AbHom& f) {
  if (!(f.domain() == f.codomain())) {
    // Isomorphic groups have equal invariants, and the canonical forms agree.
    return false;
  }
  if (!spans_everything(f.codomain(), f.matrix())) return false;
  // A surjective endomorphism of a finitely generated module is injective.
  return true;
}

AbHom inverse(const AbHom& f) {
  if (!is_isomorphism(f)) throw DomainError("inverse of a non-isomorphism");
  const AbGroup& a = f.domain();
  const AbGroup& b = f.codomain();
  IntMatrix sys = hcat(f.matrix(), b.relation_matrix());
  auto snf = smith_normal_form(sys);
  IntMatrix inv(a.ngens(), b.ngens());
  for (Index i = 0; i < b.ngens(); ++i) {
    IntVector e = IntVector::Zero(b.ngens());
    e(i) = 1;
    auto x = solve_linear(snf, e);
    if (!x) throw InvariantError("inverse: surjective map without preimage");
    inv.col(i) = x->head(a.ngens());
  }
  return AbHom(b, a, inv);
}

// ---------------------------------------------------------------- functors

AbGroup tensor(const AbGroup& a, const AbGroup& b) {
  return bilinear(a, b, [](const Integer& m, const Integer& n) { return gcd(m, n); });
}
AbGroup tor(const AbGroup& a, const AbGroup& b) { return bilinear(a, b, tor_cyclic); }
AbGroup hom_group(const AbGroup& a, const AbGroup& b) { return bilinear(a, b, hom_cyclic); }
AbGroup ext_group(const AbGroup& a, const AbGroup& b) { return bilinear(a, b, ext_cyclic); }

// ---------------------------------------------------------------- enumeration

namespace {

// Admissible values for entry (i, j): a step and a count, the values being
// 0, step, 2 step, ... Count 0 means infinitely many.
struct EntryRange {
  Integer step, count;
};

EntryRange entry_range(const AbGroup& a, const AbGroup& b, Index i, Index j) {
  const Integer q = a.order(j), e = b.order(i);
  if (e == 0) return q == 0 ? EntryRange{1, 0} : EntryRange{1, 1};
  if (q == 0) return {1, e};
  Integer g = gcd(q, e);
  return {e / g, g};
}

}  // namespace

Integer hom_count(const AbGroup& a, const AbGroup& b) {
  Integer total = 1;
  for (Index i = 0; i < b.ngens(); ++i)
    for (Index j = 0; j < a.ngens(); ++j) {
      auto r = entry_range(a, b, i, j);
      if (r.count == 0) throw InfiniteError("Hom(" + a.str() + ", " + b.str() + ") is infinite");
      total *= r.count;
    }
  return total;
}

std::vector<AbHom> hom_elements(const AbGroup& a, const AbGroup& b) {
  const Integer total = hom_count(a, b);
  if (total > kMaxEnumeration)
    throw ResourceError("Hom(" + a.str() + ", " + b.str() + ") has " + to_string(total) + " elements");
  const Index rows = b.ngens(), cols = a.ngens();
  std::vector<EntryRange> ranges;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) ranges.push_back(entry_range(a, b, i, j));

  std::vector<AbHom> out;
  out.reserve(static_cast<size_t>(total.convert_to<long>()));
  std::vector<Integer> digit(ranges.size(), Integer(0));
  for (;;) {
    IntMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) {
        size_t k = static_cast<size_t>(i * cols + j);
        m(i, j) = digit[k] * ranges[k].step;
      }
    out.emplace_back(a, b, m);
    // Odometer with the last entry fastest.
    size_t k = digit.size();
    while (k > 0) {
      --k;
      if (++digit[k] < ranges[k].count) break;
      digit[k] = 0;
      if (k == 0) return out;
    }
    if (digit.empty()) return out;
  }
}

std::vector<AbHom> automorphisms(const AbGroup& a) {
  if (!a.is_finite()) throw InfiniteError("Aut(" + a.str() + ") requested for an infinite group");
  std::vector<AbHom> out{AbHom::identity(a)};
  for (auto& f : hom_elements(a, a))
    if (is_isomorphism(f) && !(f == out.front())) out.push_back(std::move(f));
  return out;
}

bool for_each_automorphism(const AbGroup& a, const std::function<bool(const AbHom&)>& visit) {
  if (a.free_rank() == 0) {
    for (const auto& f : automorphisms(a))
      if (!visit(f)) return false;
    return true;
  }
  if (a.free_rank() > 1) throw InfiniteError("Aut(" + a.str() + ") is infinite");
  // Z + T: [[s, 0], [t, alpha]] with s = +-1, t in T, alpha in Aut(T).
  AbGroup t = AbGroup::from_cyclic(std::vector<Integer>(a.torsion().begin(), a.torsion().end()));
  auto auts = automorphisms(t);
  auto shifts = hom_elements(AbGroup::free(1), t);
  for (int s : {1, -1})
    for (const auto& shift : shifts)
      for (const auto& alpha : auts) {
        IntMatrix m = zeros(a.ngens(), a.ngens());
        m(0, 0) = s;
        for (Index i = 0; i < t.ngens(); ++i) {
          m(i + 1, 0) = shift.matrix()(i, 0);
          for (Index j = 0; j < t.ngens(); ++j) m(i + 1, j + 1) = alpha.matrix()(i, j);
        }
        if (!visit(AbHom(a, a, m))) return false;
      }
  return true;
}

// ---------------------------------------------------------------- kernels

namespace {

// Basis of { x in Z^dom : f(x) = 0 in the codomain }.
IntMatrix kernel_lattice(const AbHom& f) {
  const Index na = f.domain().ngens();
  if (na == 0) return zeros(0, 0);
  IntMatrix sys = hcat(f.matrix(), f.codomain().relation_matrix());
  IntMatrix null = nullspace_basis(sys);
  IntMatrix top = null.topRows(na);
  return column_lattice_basis(top);
}

}  // namespace

KernelData kernel(const AbHom& f) {
  const AbGroup& a = f.domain();
  IntMatrix k = kernel_lattice(f);
  if (k.rows() != a.ngens()) k = zeros(a.ngens(), 0);
  auto pg = PresentedGroup::subquotient(k, a.relation_matrix());
  IntMatrix emb(a.ngens(), pg.group().ngens());
  for (Index i = 0; i < emb.cols(); ++i) emb.col(i) = pg.lift(i);
  return {pg.group(), AbHom(pg.group(), a, emb)};
}

CokernelData cokernel(const AbHom& f) {
  const AbGroup& b = f.codomain();
  auto pg = PresentedGroup::present(b.ngens(), hcat(f.matrix(), b.relation_matrix()));
  IntMatrix proj = pg.to_canonical(identity(b.ngens()));
  return {pg.group(), AbHom(b, pg.group(), proj), pg.lift_matrix()};
}

AbGroup image(const AbHom& f) {
  const AbGroup& a = f.domain();
  IntMatrix k = kernel_lattice(f);
  if (k.rows() != a.ngens()) k = zeros(a.ngens(), 0);
  return PresentedGroup::present(a.ngens(), k).group();
}

bool subgroup_contains(const AbGroup& g, const IntMatrix& outer, const IntMatrix& inner) {
  if (inner.cols() == 0) return true;
  IntMatrix lat = hcat(outer, g.relation_matrix());
  if (lat.cols() == 0) {
    for (Index j = 0; j < inner.cols(); ++j)
      if (!is_zero(IntVector(inner.col(j)))) return false;
    return true;
  }
  auto snf = smith_normal_form(lat);
  for (Index j = 0; j < inner.cols(); ++j)
    if (!solve_linear(snf, IntVector(inner.col(j)))) return false;
  return true;
}

bool same_subgroup(const AbGroup& g, const IntMatrix& s1, const IntMatrix& s2) {
  return subgroup_contains(g, s1, s2) && subgroup_contains(g, s2, s1);
}

// ---------------------------------------------------------------- PresentedGroup

PresentedGroup PresentedGroup::present(Index ambient_rank, const IntMatrix& relations) {
  if (relations.rows() != ambient_rank) throw DomainError("relations have wrong row count");
  return subquotient(identity(ambient_rank), relations);
}

PresentedGroup PresentedGroup::subquotient(const IntMatrix& cycles, const IntMatrix& relations) {
  if (relations.rows() != cycles.rows()) throw DomainError("relations and cycles live in different modules");
  PresentedGroup p;
  p.cycles_ = cycles;
  p.relations_ = relations;
  p.coords_ = LatticeCoordinates<Integer>(cycles);
  const Index k = cycles.cols();

  IntMatrix rel(k, relations.cols());
  for (Index j = 0; j < relations.cols(); ++j) {
    auto c = p.coords_.coords(IntVector(relations.col(j)));
    if (!c) throw DomainError("relation outside the cycle lattice");
    rel.col(j) = *c;
  }

  auto snf = smith_normal_form(rel);
  std::vector<Index> free_rows, torsion_rows;
  std::vector<Integer> orders;
  for (Index i = snf.rank; i < k; ++i) free_rows.push_back(i);
  for (Index i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) torsion_rows.push_back(i);
  for (size_t i = 0; i < free_rows.size(); ++i) orders.push_back(0);
  for (Index i : torsion_rows) orders.push_back(snf.D(i, i));
  p.canonical_ = AbGroup::from_cyclic(orders);

  std::vector<Index> rows = free_rows;
  rows.insert(rows.end(), torsion_rows.begin(), torsion_rows.end());
  const Index n = static_cast<Index>(rows.size());
  p.to_canon_ = IntMatrix(n, k);
  IntMatrix lift_coords(k, n);
  for (Index r = 0; r < n; ++r) {
    p.to_canon_.row(r) = snf.U.row(rows[r]);
    lift_coords.col(r) = snf.U_inv.col(rows[r]);
  }
  p.lift_ = mul(cycles, lift_coords);
  return p;
}

bool PresentedGroup::is_cycle(const IntVector& v) const { return coords_.contains(v); }

IntVector PresentedGroup::to_canonical(const IntVector& v) const {
  if (v.size() != ambient_rank()) throw DomainError("element has wrong ambient length");
  if (cycles_.cols() == 0) {
    if (!is_zero(v)) throw DomainError("element is not a cycle");
    return IntVector::Zero(0);
  }
  auto c = coords_.coords(v);
  if (!c) throw DomainError("element is not a cycle");
  return canonical_.reduce(mul(to_canon_, *c));
}

IntMatrix PresentedGroup::to_canonical(const IntMatrix& vs) const {
  IntMatrix out(canonical_.ngens(), vs.cols());
  for (Index j = 0; j < vs.cols(); ++j) out.col(j) = to_canonical(IntVector(vs.col(j)));
  return out;
}

AbHom induced_hom(const PresentedGroup& source, const PresentedGroup& target, const IntMatrix& ambient_map) {
  if (ambient_map.rows() != target.ambient_rank() || ambient_map.cols() != source.ambient_rank())
    throw DomainError("induced_hom: ambient map has wrong shape");
  IntMatrix m(target.group().ngens(), source.group().ngens());
  for (Index j = 0; j < m.cols(); ++j) m.col(j) = target.to_canonical(mul(ambient_map, source.lift(j)));
  return AbHom(source.group(), target.group(), m);
}

}  // namespace wseq
