#include "doctest.h"

#include <vector>

#include "linprog.hpp"
#include "reebindex/lattice.hpp"
#include "reebindex/qsqrt2.hpp"

using namespace reebindex;

namespace {

IntMat im(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

RatMat rm(std::initializer_list<std::initializer_list<long>> rows) {
  RatMat out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

}  // namespace

TEST_CASE("rational rank, kernel and solve") {
  CHECK(rational_rank(rm({{1, 0}, {0, 1}})) == 2);
  CHECK(rational_rank(rm({{1, 2}, {2, 4}})) == 1);
  CHECK(rational_rank(rm({{0, 0}, {0, 0}})) == 0);

  RatVec k = kernel_vector(rm({{1, 2, 3}, {0, 1, 1}}));
  CHECK(k[0] + 2 * k[1] + 3 * k[2] == 0);
  CHECK(k[1] + k[2] == 0);
  CHECK(!(k[0] == 0 && k[1] == 0 && k[2] == 0));
  CHECK_THROWS_AS(kernel_vector(rm({{1, 0, 0}})), std::invalid_argument);

  RatVec w = solve_consistent(rm({{2, 0}, {0, 4}}), {Rational(1), Rational(2)});
  CHECK(w[0] == Rational(1, 2));
  CHECK(w[1] == Rational(1, 2));
  // rank-deficient but consistent: free coordinate pinned to zero
  RatVec w2 = solve_consistent(rm({{1, 1}, {2, 2}}), {Rational(3), Rational(6)});
  CHECK(w2[0] == 3);
  CHECK(w2[1] == 0);
  CHECK_THROWS_AS(
      solve_consistent(rm({{1, 1}, {2, 2}}), {Rational(3), Rational(5)}),
      std::invalid_argument);
}

TEST_CASE("primitive vectors") {
  RatVec v = {Rational(2, 3), Rational(-4, 3), Rational(2)};
  IntVec p = primitive_vector(v);
  CHECK(p == IntVec({1, -2, 3}));
  CHECK(is_primitive(p));
  CHECK(!is_primitive(IntVec({2, 4, 6})));
  CHECK_THROWS_AS(primitive_vector(RatVec{Rational(0), Rational(0)}),
                  std::invalid_argument);
}

TEST_CASE("Smith invariant factors") {
  CHECK(snf_invariants(im({{1, 0}, {0, 1}})) == IntVec({1, 1}));
  // the classic index-2 sublattice
  CHECK(snf_invariants(im({{2, 1}, {0, 1}})) == IntVec({1, 2}));
  CHECK(snf_invariants(im({{2, 0}, {0, 3}})) == IntVec({1, 6}));
  CHECK(snf_invariants(im({{4, 0}, {0, 6}})) == IntVec({2, 12}));
  CHECK(snf_invariants(im({{0, 0}, {0, 0}})) == IntVec{});
  CHECK(snf_invariants(im({{6}})) == IntVec({6}));
  // wide and tall shapes agree with the transpose
  CHECK(snf_invariants(im({{1, 2, 3}, {4, 5, 6}})) ==
        snf_invariants(im({{1, 4}, {2, 5}, {3, 6}})));
  // unimodular row/column operations leave the factors alone
  CHECK(snf_invariants(im({{2, 1, 0}, {0, 1, 0}, {0, 0, 5}})) ==
        snf_invariants(im({{2, 1, 0}, {2, 2, 5}, {0, 0, 5}})));
  // divisibility chain
  IntVec f = snf_invariants(im({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
  for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
}

TEST_CASE("greedy extended gcd chain") {
  auto [g, eta] = gcd_chain(IntVec({6, 10, 15}));
  CHECK(g == 1);
  BigInt acc = 0;
  IntVec ms = {6, 10, 15};
  for (std::size_t j = 0; j < ms.size(); ++j) acc += eta[j] * ms[j];
  CHECK(acc == 1);

  auto [g2, eta2] = gcd_chain(IntVec({4, 6}));
  CHECK(g2 == 2);
  CHECK(eta2[0] * 4 + eta2[1] * 6 == 2);

  auto [g3, eta3] = gcd_chain(IntVec({5}));
  CHECK(g3 == 5);
  CHECK(eta3 == IntVec({1}));

  // the greedy chain is a canonical choice; these exact witnesses are part
  // of the reproducibility contract for lift data
  CHECK(eta == IntVec({-14, 7, 1}));
  CHECK(gcd_chain(IntVec({3, 5})).second == IntVec({2, -1}));
  CHECK(gcd_chain(IntVec({2, 7, 9})).second == IntVec({-3, 1, 0}));
  CHECK(gcd_chain(IntVec({1, 1, 1, 1})).second == IntVec({0, 0, 0, 1}));
  CHECK(gcd_chain(IntVec({12, 8, 30, 45})).second ==
        IntVec({154, -154, -22, 1}));
}

TEST_CASE("QSqrt2 arithmetic and ordering") {
  const QSqrt2 r2(Rational(0), Rational(1));  // sqrt 2
  CHECK(r2 * r2 == QSqrt2(2));
  CHECK(sgn(r2 - QSqrt2(Rational(141, 100))) > 0);   // sqrt2 > 1.41
  CHECK(sgn(r2 - QSqrt2(Rational(142, 100))) < 0);   // sqrt2 < 1.42
  CHECK(sgn(QSqrt2(0)) == 0);
  CHECK(sgn(-r2) < 0);

  const QSqrt2 x = QSqrt2(Rational(3, 2)) + QSqrt2(Rational(0), Rational(-1, 3));
  CHECK(x / x == QSqrt2(1));
  CHECK((x * QSqrt2(2)) - x == x);
  CHECK_THROWS_AS(x / QSqrt2(0), std::invalid_argument);

  CHECK(floor_q(r2) == 1);
  CHECK(floor_q(-r2) == -2);
  CHECK(floor_q(QSqrt2(Rational(7, 2))) == 3);
  CHECK(floor_q(QSqrt2(Rational(-7, 2))) == -4);
  CHECK(floor_q(QSqrt2(3)) == 3);
  // 5 - 2 sqrt2 = 2.17..., 3 sqrt2 - 1 = 3.24...
  CHECK(floor_q(QSqrt2(Rational(5), Rational(-2))) == 2);
  CHECK(floor_q(QSqrt2(Rational(-1), Rational(3))) == 3);

  CHECK(to_double(r2) == doctest::Approx(M_SQRT2));
  CHECK(QSqrt2(Rational(1, 2), Rational(2)).is_rational() == false);
  CHECK(QSqrt2(Rational(4, 2)).is_integer());
}

TEST_CASE("exact simplex on small programs") {
  using detail::LpStatus;
  using detail::lp_maximize;

  // max x + y st x + 2y = 4, x, y >= 0 -> (4, 0)
  auto r = lp_maximize<Rational>({{1, 2}}, {Rational(4)}, {1, 1});
  CHECK(r.status == LpStatus::kOptimal);
  CHECK(r.objective == 4);
  CHECK(r.x[0] == 4);

  // infeasible: x + y = -1 with x, y >= 0
  auto inf = lp_maximize<Rational>({{1, 1}}, {Rational(-1)}, {1, 0});
  CHECK(inf.status == LpStatus::kInfeasible);

  // unbounded: max x st x - y = 1
  auto unb = lp_maximize<Rational>({{1, -1}}, {Rational(1)}, {1, 0});
  CHECK(unb.status == LpStatus::kUnbounded);

  // redundant equality rows are tolerated
  auto red = lp_maximize<Rational>({{1, 1}, {2, 2}}, {Rational(2), Rational(4)},
                                   {0, 1});
  CHECK(red.status == LpStatus::kOptimal);
  CHECK(red.x[1] == 2);

  // the same program over Q(sqrt 2), with an irrational right-hand side
  const QSqrt2 r2(Rational(0), Rational(1));
  auto q = lp_maximize<QSqrt2>({{QSqrt2(1), QSqrt2(2)}}, {r2 * QSqrt2(2)},
                               {QSqrt2(1), QSqrt2(1)});
  CHECK(q.status == LpStatus::kOptimal);
  CHECK(q.x[0] == r2 * QSqrt2(2));
}

TEST_CASE("simplex determinism") {
  // degenerate optimum with many optimal bases: Bland's rule must give the
  // same vertex every time
  std::vector<std::vector<Rational>> A = {{1, 1, 1, 0}, {1, 2, 0, 1}};
  std::vector<Rational> b = {2, 2};
  std::vector<Rational> c = {1, 1, 0, 0};
  auto first = detail::lp_maximize<Rational>(A, b, c);
  for (int rep = 0; rep < 5; ++rep) {
    auto again = detail::lp_maximize<Rational>(A, b, c);
    CHECK(again.x == first.x);
  }
}
