#include "wseq/chaincx.hpp"

namespace wseq {

void FreeChainComplex::set_rank(int n, Index r) {
  if (r < 0) throw DomainError("negative rank");
  if (r == 0)
    ranks_.erase(n);
  else
    ranks_[n] = r;
}

void FreeChainComplex::set_diff(int n, IntMatrix d) {
  if (d.rows() != rank(n - 1) || d.cols() != rank(n))
    throw DomainError("d_" + std::to_string(n) + " has wrong shape");
  diff_[n] = std::move(d);
}

Index FreeChainComplex::rank(int n) const {
  auto it = ranks_.find(n);
  return it == ranks_.end() ? 0 : it->second;
}

IntMatrix FreeChainComplex::diff(int n) const {
  auto it = diff_.find(n);
  if (it != diff_.end() && it->second.rows() == rank(n - 1) && it->second.cols() == rank(n)) return it->second;
  return zeros(rank(n - 1), rank(n));
}

int FreeChainComplex::min_degree() const { return ranks_.empty() ? 0 : ranks_.begin()->first; }
int FreeChainComplex::max_degree() const { return ranks_.empty() ? 0 : ranks_.rbegin()->first; }

ValidationResult validate(const FreeChainComplex& c) {
  for (const auto& [n, r] : c.ranks()) {
    (void)r;
    IntMatrix dd = mul(c.diff(n - 1), c.diff(n));
    if (!is_zero(dd)) return {false, n, "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0"};
  }
  return {};
}

PresentedGroup homology(const FreeChainComplex& c, int n) {
  IntMatrix cycles = nullspace_basis(c.diff(n));
  return PresentedGroup::subquotient(cycles, c.diff(n + 1));
}

DegreeSplitting splitting(const FreeChainComplex& c, int n) {
  DegreeSplitting s;
  s.degree = n;
  const Index r = c.rank(n);
  IntMatrix d = c.diff(n);
  if (d.rows() == 0) {
    s.kernel_basis = identity(r);
    s.complement_basis = zeros(r, 0);
    s.to_split = identity(r);
    return s;
  }
  auto snf = smith_normal_form(d);
  s.complement_basis = snf.V.leftCols(snf.rank);
  s.kernel_basis = snf.V.rightCols(r - snf.rank);
  s.to_split = snf.V_inv;
  return s;
}

Resolution resolution_of_H(const FreeChainComplex& c, int n) {
  Resolution res;
  res.degree = n;
  auto here = splitting(c, n);
  auto above = splitting(c, n + 1);
  res.kernel_basis = here.kernel_basis;
  res.complement_basis = above.complement_basis;
  const Index k = here.kernel_basis.cols();
  IntMatrix images = mul(c.diff(n + 1), above.complement_basis);
  LatticeCoordinates<Integer> coords(here.kernel_basis);
  res.boundary = IntMatrix(k, images.cols());
  for (Index j = 0; j < images.cols(); ++j) {
    auto x = coords.coords(IntVector(images.col(j)));
    if (!x) throw InvariantError("boundary is not a cycle");
    res.boundary.col(j) = *x;
  }
  res.homology = PresentedGroup::present(k, res.boundary);
  return res;
}

}  // namespace wseq
