#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wseq/smith.hpp"

#include <random>

using namespace wseq;

namespace {

template <typename Scalar>
Matrix<Scalar> random_matrix(std::mt19937_64& rng, Index rows, Index cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Matrix<Scalar> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Scalar(d(rng));
  return m;
}

template <typename Scalar>
Matrix<Scalar> mm(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() == 0) return Matrix<Scalar>::Zero(a.rows(), b.cols());
  return a * b;
}

template <typename Scalar>
void check_smith(const Matrix<Scalar>& m) {
  auto s = smith_normal_form(m);
  CHECK(mm(mm(s.U, m), s.V) == s.D);
  CHECK(mm(s.U, s.U_inv) == Matrix<Scalar>::Identity(m.rows(), m.rows()));
  CHECK(mm(s.V, s.V_inv) == Matrix<Scalar>::Identity(m.cols(), m.cols()));
  const Scalar du = determinant(s.U), dv = determinant(s.V);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  for (Index i = 0; i < s.D.rows(); ++i)
    for (Index j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (Index i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i) {
    CHECK(s.D(i, i) >= 0);
    CHECK((i < s.rank) == (s.D(i, i) != 0));
    if (i + 1 < s.rank) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
  }
}

}  // namespace

TEST_CASE("smith form of small hand examples") {
  IntMatrix m(2, 2);
  m << 2, 4, 6, 8;
  auto s = smith_normal_form(m);
  CHECK(s.rank == 2);
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) == 4);

  IntMatrix z = zeros(3, 2);
  CHECK(smith_normal_form(z).rank == 0);

  IntMatrix row(1, 3);
  row << 6, 10, 15;
  auto r = smith_normal_form(row);
  CHECK(r.D(0, 0) == 1);
}

TEST_CASE("smith form on random integer and machine matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(0, 6);
  for (int t = 0; t < 200; ++t) {
    const Index r = dim(rng), c = dim(rng);
    check_smith(random_matrix<Integer>(rng, r, c, 10));
    check_smith(random_matrix<long long>(rng, r, c, 5));
  }
}

TEST_CASE("solve_linear and nullspace") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m = random_matrix<Integer>(rng, 3, 4, 4);
    IntVector x = random_matrix<Integer>(rng, 4, 1, 3).col(0);
    IntVector b = m * x;
    auto sol = solve_linear(m, b);
    REQUIRE(sol);
    CHECK(m * *sol == b);

    IntMatrix k = nullspace_basis(m);
    CHECK(is_zero(IntMatrix(m * k)));
    auto snf = smith_normal_form(m);
    CHECK(k.cols() == m.cols() - snf.rank);
  }
  IntMatrix two(1, 1);
  two << 2;
  IntVector one(1);
  one << 1;
  CHECK_FALSE(solve_linear(two, one));
}

TEST_CASE("lattice coordinates") {
  IntMatrix basis(3, 2);
  basis << 1, 0, 1, 2, 0, 2;
  LatticeCoordinates<Integer> lc(basis);
  IntVector v(3);
  v << 3, 7, 4;
  auto c = lc.coords(v);
  REQUIRE(c);
  CHECK(basis * *c == v);
  IntVector w(3);
  w << 0, 1, 0;
  CHECK_FALSE(lc.contains(w));
}
