#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace wseq {

/// Exact integer scalar. Expression templates are disabled so the type
/// composes with Eigen's own expression machinery.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using Index = Eigen::Index;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition (shape mismatch, ill-defined
/// homomorphism, unknown generator, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource bound (word-basis size, search budget) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug, never a user error.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An enumeration was requested over an infinite set.
class InfiniteError : public Error {
 public:
  InfiniteError(const std::string& what, int degree = 0)
      : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

inline std::string to_string(const Integer& x) { return x.str(); }

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// Non-negative residue of `x` modulo `m` (m > 0).
inline Integer mod(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

inline IntMatrix zeros(Index rows, Index cols) { return IntMatrix::Zero(rows, cols); }
inline IntMatrix identity(Index n) { return IntMatrix::Identity(n, n); }

inline bool is_zero(const IntMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

inline bool is_zero(const IntVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

/// Horizontal concatenation that tolerates empty blocks.
inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("hcat: row count mismatch");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

inline IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw DomainError("vcat: column count mismatch");
  IntMatrix out(a.rows() + b.rows(), a.cols());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

/// Matrix product that tolerates empty inner dimensions.
inline IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("mul: inner dimension mismatch");
  if (a.cols() == 0) return zeros(a.rows(), b.cols());
  return a * b;
}

inline IntVector mul(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw DomainError("mul: inner dimension mismatch");
  if (a.cols() == 0) return IntVector::Zero(a.rows());
  return a * v;
}

}  // namespace wseq
