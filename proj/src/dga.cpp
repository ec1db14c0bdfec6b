#include "wseq/dga.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace wseq {

// ---------------------------------------------------------------- AlgElement

AlgElement AlgElement::word(Word w, const Integer& c) {
  AlgElement a;
  a.add(w, c);
  return a;
}

void AlgElement::add(const Word& w, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer AlgElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Integer(0) : it->second;
}

AlgElement AlgElement::linear_part() const {
  AlgElement out;
  for (const auto& [w, c] : terms_)
    if (w.size() == 1) out.terms_.emplace(w, c);
  return out;
}

AlgElement AlgElement::decomposable_part() const {
  AlgElement out;
  for (const auto& [w, c] : terms_)
    if (w.size() > 1) out.terms_.emplace(w, c);
  return out;
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

AlgElement operator-(const AlgElement& a) {
  AlgElement out;
  for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, -c);
  return out;
}

AlgElement operator*(const Integer& c, const AlgElement& a) {
  AlgElement out;
  if (c == 0) return out;
  for (const auto& [w, x] : a.terms_) out.terms_.emplace(w, c * x);
  return out;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  AlgElement out;
  for (const auto& [u, x] : a.terms_)
    for (const auto& [v, y] : b.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add(w, x * y);
    }
  return out;
}

// ---------------------------------------------------------------- cache

std::size_t max_words_per_degree() {
  if (const char* env = std::getenv("WSEQ_MAX_WORDS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

struct FreeDGA::Cache {
  struct Basis {
    std::vector<Word> words;
    std::map<Word, Index> index;
  };
  std::mutex mu;
  std::map<std::pair<int, int>, std::shared_ptr<const Basis>> bases;
  std::map<std::pair<int, int>, std::shared_ptr<const IntMatrix>> diffs;
};

FreeDGA::FreeDGA() : cache_(std::make_shared<Cache>()) {}

void FreeDGA::invalidate() { cache_ = std::make_shared<Cache>(); }

// ---------------------------------------------------------------- FreeDGA

int FreeDGA::add_generator(const std::string& name, int degree) {
  if (name.empty()) throw DomainError("empty generator name");
  if (degree < 1) throw DomainError("generator " + name + " has degree < 1");
  if (index_.count(name)) throw DomainError("duplicate generator " + name);
  int g = num_generators();
  gens_.push_back({name, degree});
  diff_.emplace_back();
  index_[name] = g;
  invalidate();
  return g;
}

void FreeDGA::set_diff(int g, AlgElement value) {
  if (g < 0 || g >= num_generators()) throw DomainError("unknown generator index");
  for (const auto& [w, c] : value.terms()) {
    (void)c;
    for (int x : w)
      if (x < 0 || x >= num_generators()) throw DomainError("differential of " + gens_[g].name + " uses an unknown generator");
    if (degree(w) != gens_[g].degree - 1)
      throw DomainError("differential of " + gens_[g].name + " is not homogeneous of degree " +
                        std::to_string(gens_[g].degree - 1));
  }
  diff_[static_cast<size_t>(g)] = std::move(value);
  invalidate();
}

void FreeDGA::set_diff(const std::string& name, AlgElement value) {
  auto g = find(name);
  if (!g) throw DomainError("unknown generator " + name);
  set_diff(*g, std::move(value));
}

std::optional<int> FreeDGA::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int FreeDGA::max_degree() const {
  int m = 0;
  for (const auto& g : gens_) m = std::max(m, g.degree);
  return m;
}

std::vector<int> FreeDGA::generators_of_degree(int n) const {
  std::vector<int> out;
  for (int g = 0; g < num_generators(); ++g)
    if (gens_[g].degree == n) out.push_back(g);
  return out;
}

Index FreeDGA::position_in_degree(int g) const {
  Index pos = 0;
  for (int h = 0; h < g; ++h)
    if (gens_[h].degree == gens_[g].degree) ++pos;
  return pos;
}

int FreeDGA::degree(const Word& w) const {
  int d = 0;
  for (int x : w) d += gens_.at(static_cast<size_t>(x)).degree;
  return d;
}

std::optional<int> FreeDGA::degree(const AlgElement& x) const {
  std::optional<int> d;
  for (const auto& [w, c] : x.terms()) {
    (void)c;
    int e = degree(w);
    if (d && *d != e) throw DomainError("element is not homogeneous");
    d = e;
  }
  return d;
}

AlgElement FreeDGA::apply_diff(const AlgElement& x) const {
  AlgElement out;
  for (const auto& [w, c] : x.terms()) {
    int prefix_degree = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      const AlgElement& dv = diff_.at(static_cast<size_t>(w[i]));
      const Integer sign = (prefix_degree % 2 == 0) ? c : Integer(-c);
      for (const auto& [u, k] : dv.terms()) {
        Word nw(w.begin(), w.begin() + static_cast<long>(i));
        nw.insert(nw.end(), u.begin(), u.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
        out.add(nw, sign * k);
      }
      prefix_degree += gens_[static_cast<size_t>(w[i])].degree;
    }
  }
  return out;
}

const std::vector<Word>& FreeDGA::word_basis(int n, int m) const {
  m = std::min(m, n);
  auto cache = cache_;
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto it = cache->bases.find({n, m});
    if (it != cache->bases.end()) return it->second->words;
  }
  auto basis = std::make_shared<Cache::Basis>();
  if (n >= 1) {
    std::vector<int> letters;
    for (int g = 0; g < num_generators(); ++g)
      if (gens_[g].degree <= m) letters.push_back(g);
    // Count first so an oversized request fails before allocating.
    std::vector<double> count(static_cast<size_t>(n) + 1, 0.0);
    count[0] = 1;
    for (int k = 1; k <= n; ++k)
      for (int g : letters)
        if (gens_[g].degree <= k) count[k] += count[k - gens_[g].degree];
    const std::size_t cap = max_words_per_degree();
    if (count[n] > static_cast<double>(cap))
      throw ResourceError("word basis of T_" + std::to_string(n) + "(V_<=" + std::to_string(m) + ") has " +
                          std::to_string(static_cast<long long>(count[n])) + " words, above the limit " +
                          std::to_string(cap) + " (raise WSEQ_MAX_WORDS)");
    Word cur;
    auto rec = [&](auto& self, int remaining) -> void {
      if (remaining == 0) {
        basis->words.push_back(cur);
        return;
      }
      for (int g : letters) {
        int d = gens_[g].degree;
        if (d > remaining || count[remaining - d] == 0) continue;
        cur.push_back(g);
        self(self, remaining - d);
        cur.pop_back();
      }
    };
    rec(rec, n);
    std::stable_sort(basis->words.begin(), basis->words.end(),
                     [](const Word& a, const Word& b) { return a.size() < b.size(); });
    for (size_t i = 0; i < basis->words.size(); ++i) basis->index.emplace(basis->words[i], static_cast<Index>(i));
  }
  std::lock_guard<std::mutex> lock(cache->mu);
  auto [it, inserted] = cache->bases.emplace(std::make_pair(n, m), basis);
  (void)inserted;
  return it->second->words;
}

std::optional<Index> FreeDGA::word_index(int n, int m, const Word& w) const {
  m = std::min(m, n);
  word_basis(n, m);
  auto cache = cache_;
  std::shared_ptr<const Cache::Basis> b;
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    b = cache->bases.at({n, m});
  }
  auto it = b->index.find(w);
  if (it == b->index.end()) return std::nullopt;
  return it->second;
}

IntVector FreeDGA::to_vector(const AlgElement& x, int n, int m) const {
  const auto& basis = word_basis(n, m);
  IntVector v = IntVector::Zero(static_cast<Index>(basis.size()));
  for (const auto& [w, c] : x.terms()) {
    auto i = word_index(n, m, w);
    if (!i) throw DomainError("word " + word_str(w) + " is not in T_" + std::to_string(n) + "(V_<=" + std::to_string(m) + ")");
    v(*i) += c;
  }
  return v;
}

AlgElement FreeDGA::from_vector(const IntVector& v, int n, int m) const {
  const auto& basis = word_basis(n, m);
  if (v.size() != static_cast<Index>(basis.size())) throw DomainError("vector does not match word basis");
  AlgElement x;
  for (Index i = 0; i < v.size(); ++i) x.add(basis[static_cast<size_t>(i)], v(i));
  return x;
}

const IntMatrix& FreeDGA::diff_matrix(int n, int m) const {
  m = std::min(m, n);
  auto cache = cache_;
  {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto it = cache->diffs.find({n, m});
    if (it != cache->diffs.end()) return *it->second;
  }
  const auto& cols = word_basis(n, m);
  const Index rows = n - 1 >= 1 ? static_cast<Index>(word_basis(n - 1, m).size()) : 0;
  auto mat = std::make_shared<IntMatrix>(IntMatrix::Zero(rows, static_cast<Index>(cols.size())));
  for (size_t j = 0; j < cols.size(); ++j) {
    AlgElement dx = apply_diff(AlgElement::word(cols[j]));
    if (rows == 0) {
      if (!dx.is_zero()) throw DomainError("a degree-1 generator has nonzero differential");
      continue;
    }
    mat->col(static_cast<Index>(j)) = to_vector(dx, n - 1, m);
  }
  std::lock_guard<std::mutex> lock(cache->mu);
  auto [it, inserted] = cache->diffs.emplace(std::make_pair(n, m), mat);
  (void)inserted;
  return *it->second;
}

FreeChainComplex FreeDGA::linear_part() const {
  FreeChainComplex c;
  for (int n = 1; n <= max_degree(); ++n) c.set_rank(n, static_cast<Index>(generators_of_degree(n).size()));
  for (int n = 2; n <= max_degree(); ++n) {
    auto src = generators_of_degree(n);
    IntMatrix d = zeros(c.rank(n - 1), c.rank(n));
    for (size_t j = 0; j < src.size(); ++j) {
      const AlgElement lin = diff(src[j]).linear_part();
      for (const auto& [w, k] : lin.terms()) d(position_in_degree(w[0]), static_cast<Index>(j)) += k;
    }
    c.set_diff(n, d);
  }
  return c;
}

PresentedGroup FreeDGA::truncation_homology(int m, int n) const {
  IntMatrix cycles = nullspace_basis(diff_matrix(n, m));
  IntMatrix rel = diff_matrix(n + 1, m);
  return PresentedGroup::subquotient(cycles, rel);
}

std::optional<AlgElement> FreeDGA::boundary_preimage(int m, const AlgElement& y) const {
  auto d = degree(y);
  if (!d) return AlgElement{};
  const int n = *d + 1;
  IntVector target;
  try {
    target = to_vector(y, n - 1, m);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  const IntMatrix& dm = diff_matrix(n, m);
  if (dm.cols() == 0) return std::nullopt;
  auto x = solve_linear(dm, target);
  if (!x) return std::nullopt;
  return from_vector(*x, n, m);
}

ValidationResult FreeDGA::validate() const {
  for (int g = 0; g < num_generators(); ++g) {
    const auto& gen = gens_[g];
    if (gen.degree == 1 && !diff(g).is_zero())
      return {false, 1, "generator " + gen.name + " of degree 1 must have zero differential"};
    if (!apply_diff(diff(g)).is_zero())
      return {false, gen.degree, "d d " + gen.name + " = " + element_str(apply_diff(diff(g))) + " != 0"};
  }
  return {};
}

FreeDGA FreeDGA::truncated(int m) const {
  FreeDGA out;
  std::vector<int> remap(gens_.size(), -1);
  for (int g = 0; g < num_generators(); ++g)
    if (gens_[g].degree <= m) remap[g] = out.add_generator(gens_[g].name, gens_[g].degree);
  for (int g = 0; g < num_generators(); ++g) {
    if (remap[g] < 0) continue;
    AlgElement v;
    for (const auto& [w, c] : diff(g).terms()) {
      Word nw;
      for (int x : w) nw.push_back(remap[x]);
      v.add(nw, c);
    }
    out.set_diff(remap[g], v);
  }
  return out;
}

std::string FreeDGA::word_str(const Word& w) const {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += gens_.at(static_cast<size_t>(w[i])).name;
  }
  return s;
}

std::string FreeDGA::element_str(const AlgElement& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    Integer a = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (a != 1) s += to_string(a) + " ";
    s += word_str(w);
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------- morphisms

DgaMorphism::DgaMorphism(FreeDGA source, FreeDGA target, std::vector<AlgElement> images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_.num_generators())
    throw DomainError("morphism needs one image per source generator");
  for (int g = 0; g < src_.num_generators(); ++g) {
    auto d = tgt_.degree(images_[g]);
    if (d && *d != src_.generator(g).degree)
      throw DomainError("image of " + src_.generator(g).name + " has degree " + std::to_string(*d) + ", expected " +
                        std::to_string(src_.generator(g).degree));
  }
}

DgaMorphism DgaMorphism::identity(const FreeDGA& d) {
  std::vector<AlgElement> im;
  for (int g = 0; g < d.num_generators(); ++g) im.push_back(AlgElement::generator(g));
  return DgaMorphism(d, d, im);
}

AlgElement DgaMorphism::apply(const AlgElement& x) const {
  AlgElement out;
  for (const auto& [w, c] : x.terms()) {
    AlgElement prod = AlgElement::word({}, c);
    for (int g : w) {
      prod = prod * images_.at(static_cast<size_t>(g));
      if (prod.is_zero()) break;
    }
    out += prod;
  }
  return out;
}

ValidationResult DgaMorphism::validate() const {
  for (int g = 0; g < src_.num_generators(); ++g) {
    AlgElement lhs = apply(src_.diff(g));
    AlgElement rhs = tgt_.apply_diff(images_[g]);
    if (!(lhs == rhs))
      return {false, src_.generator(g).degree,
              "morphism does not commute with differentials on " + src_.generator(g).name + ": " + tgt_.element_str(lhs) +
                  " vs " + tgt_.element_str(rhs)};
  }
  return {};
}

IntMatrix DgaMorphism::linear_matrix(int n) const {
  auto src = src_.generators_of_degree(n);
  auto tgt = tgt_.generators_of_degree(n);
  IntMatrix m = zeros(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
  for (size_t j = 0; j < src.size(); ++j) {
    const AlgElement lin = images_[src[j]].linear_part();
    for (const auto& [w, c] : lin.terms()) m(tgt_.position_in_degree(w[0]), static_cast<Index>(j)) += c;
  }
  return m;
}

IntMatrix DgaMorphism::word_matrix(int n, int ms, int mt) const {
  const auto& cols = src_.word_basis(n, ms);
  const auto& rows = tgt_.word_basis(n, mt);
  IntMatrix m = zeros(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Index>(j)) = tgt_.to_vector(apply(AlgElement::word(cols[j])), n, mt);
  return m;
}

AbHom induced_H(const DgaMorphism& f, int n) {
  auto hs = f.source().truncation_homology(n + 1, n);
  auto ht = f.target().truncation_homology(n + 1, n);
  return induced_hom(hs, ht, f.word_matrix(n, n + 1, n + 1));
}

AbHom induced_linear_H(const DgaMorphism& f, int n) {
  auto hs = homology(f.source().linear_part(), n);
  auto ht = homology(f.target().linear_part(), n);
  return induced_hom(hs, ht, f.linear_matrix(n));
}

}  // namespace wseq
