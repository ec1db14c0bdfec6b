#pragma once

// Degreewise free chain complexes over Z with d_n : C_n -> C_{n-1}.

#include "wseq/abgroup.hpp"

#include <map>
#include <optional>
#include <string>

namespace wseq {

class FreeChainComplex {
 public:
  FreeChainComplex() = default;

  void set_rank(int n, Index r);
  /// d_n, of shape rank(n-1) x rank(n).
  void set_diff(int n, IntMatrix d);

  Index rank(int n) const;
  IntMatrix diff(int n) const;

  int min_degree() const;
  int max_degree() const;
  bool empty() const { return ranks_.empty(); }
  const std::map<int, Index>& ranks() const { return ranks_; }

 private:
  std::map<int, Index> ranks_;
  std::map<int, IntMatrix> diff_;
};

struct ValidationResult {
  bool ok = true;
  int degree = 0;  // first failing degree
  std::string message;
};

/// d_{n-1} d_n = 0 at every degree, plus shape checks.
ValidationResult validate(const FreeChainComplex& c);

/// H_n = ker d_n / im d_{n+1}, ambient = C_n.
PresentedGroup homology(const FreeChainComplex& c, int n);

/// C_n = complement + kernel, with d_n injective on the complement.
struct DegreeSplitting {
  int degree = 0;
  IntMatrix kernel_basis;      // rank(n) x k
  IntMatrix complement_basis;  // rank(n) x r
  /// Coordinates of a vector of C_n in the basis [complement | kernel].
  IntMatrix to_split;  // rank(n) x rank(n)
};

DegreeSplitting splitting(const FreeChainComplex& c, int n);

/// Free resolution complement_{n+1} -> ker d_n ->> H_n.
struct Resolution {
  int degree = 0;
  IntMatrix kernel_basis;  // ker d_n in C_n
  IntMatrix boundary;      // d_{n+1} on the complement, in kernel coordinates (k x r)
  IntMatrix complement_basis;  // of C_{n+1}
  PresentedGroup homology;     // over kernel coordinates; group equals homology(c, n)
};

Resolution resolution_of_H(const FreeChainComplex& c, int n);

}  // namespace wseq
