#include "doctest.h"

#include <cmath>

#include "reebindex/index.hpp"

using namespace reebindex;

namespace {

SymplecticPath rotation1(double c) {
  Vec angles(1);
  angles << 2.0 * M_PI * c;
  return SymplecticPath::rotation(1, angles);
}

SymplecticPath hyperbolic1() {
  Mat A(2, 2);
  A << 1.0, 0.0, 0.0, -1.0;
  return SymplecticPath::constant(1, A);
}

// mildly time-dependent, non-degenerate endpoint
SymplecticPath bumpy_path() {
  std::vector<double> ts;
  std::vector<Mat> gens;
  const int m = 24;
  for (int i = 0; i <= m; ++i) {
    double t = static_cast<double>(i) / m;
    Mat A(2, 2);
    A << 1.3 + 0.4 * std::sin(3.0 * t), 0.2 - 0.1 * t, 0.2 - 0.1 * t,
        1.3 - 0.3 * std::cos(2.0 * t);
    ts.push_back(t);
    gens.push_back(A);
  }
  return SymplecticPath(1, std::move(ts), std::move(gens));
}

}  // namespace

TEST_CASE("signature axiom on a small constant generator") {
  // cz = (1/2) Sign(A) for ||A|| < 2 pi
  Mat A = -0.1 * Mat::Identity(4, 4);
  CHECK(cz_index(SymplecticPath::constant(2, A)) == -2);
  CHECK(cz_index(SymplecticPath::constant(2, -A)) == 2);

  Mat B = Mat::Zero(2, 2);
  B << 0.3, 0.0, 0.0, -0.2;
  CHECK(cz_index(SymplecticPath::constant(1, B)) == 0);
}

TEST_CASE("rotation paths hit the rotation-number formulas") {
  // non-integer c: cz = 2 floor(c) + 1
  CHECK(cz_index(rotation1(0.3)) == 1);
  CHECK(cz_index(rotation1(0.7)) == 1);
  CHECK(cz_index(rotation1(1.4)) == 3);
  CHECK(cz_index(rotation1(2.5)) == 5);
  CHECK(cz_index(rotation1(-0.3)) == -1);

  // integer c is degenerate for cz but fine for rs: rs = 2c
  CHECK_THROWS_AS(cz_index(rotation1(1.0)), DegenerateEndpoint);
  CHECK(rs_index(rotation1(1.0)) == HalfInt{4});
  CHECK(rs_index(rotation1(2.0)) == HalfInt{8});
  CHECK(rs_index(rotation1(2.5)) == HalfInt{10});
  CHECK(rs_index(rotation1(0.5)) == HalfInt{2});
}

TEST_CASE("rs index of the constant identity path vanishes") {
  SymplecticPath id1 = SymplecticPath::constant(1, Mat::Zero(2, 2));
  CHECK(rs_index(id1) == HalfInt{0});
  SymplecticPath id2 = SymplecticPath::constant(2, Mat::Zero(4, 4));
  CHECK(rs_index(id2) == HalfInt{0});
}

TEST_CASE("rs equals cz on non-degenerate paths") {
  for (double c : {0.3, 0.7, 1.4, 2.5}) {
    HalfInt rs = rs_index(rotation1(c));
    CHECK(rs.is_integer());
    CHECK(rs.twice == 2 * cz_index(rotation1(c)));
  }
  CHECK(rs_index(hyperbolic1()) == HalfInt{0});
  CHECK(cz_index(hyperbolic1()) == 0);
}

TEST_CASE("lower extension") {
  // constant identity: cz_minus = -n
  SymplecticPath id2 = SymplecticPath::constant(2, Mat::Zero(4, 4));
  CHECK(cz_minus(id2) == -2);
  // full rotation: 2c - 1
  CHECK(cz_minus(rotation1(1.0)) == 1);
  CHECK(cz_minus(rotation1(2.0)) == 3);
  // non-degenerate: agrees with cz
  CHECK(cz_minus(rotation1(0.3)) == 1);
  CHECK(cz_minus(rotation1(2.5)) == 5);
  CHECK(cz_minus(hyperbolic1()) == 0);
}

TEST_CASE("upper extension") {
  SymplecticPath id2 = SymplecticPath::constant(2, Mat::Zero(4, 4));
  CHECK(cz_plus(id2) == 2);
  CHECK(cz_plus(rotation1(1.0)) == 3);
  // non-degenerate: all extensions coincide
  CHECK(cz_plus(rotation1(0.3)) == 1);
  CHECK(cz_plus(rotation1(2.5)) == 5);
  CHECK(cz_plus(hyperbolic1()) == 0);
}

TEST_CASE("sandwich inequalities") {
  for (double c : {0.3, 1.0, 1.4, 2.0, 2.5}) {
    SymplecticPath p = rotation1(c);
    IndexReport rep = index_report(p, 8);
    CHECK(2 * rep.mu_minus <= rep.mu_rs.twice);
    CHECK(rep.mu_rs.twice <= 2 * rep.mu_plus);
    CHECK(rep.mu_plus - rep.mu_minus <= rep.nullity);
    // |mu - Delta| <= n for the true mean, plus the n/k_max estimator slack
    CHECK(std::abs(rep.mu_minus - rep.mean) <= 1.0 + 1.0 / 8 + 1e-6);
    CHECK(std::abs(rep.mu_plus - rep.mean) <= 1.0 + 1.0 / 8 + 1e-6);
    if (rep.nondegenerate) {
      CHECK(rep.mu_minus == rep.mu_plus);
      CHECK(rep.mu_rs.twice == 2 * rep.mu_minus);
    }
  }
}

TEST_CASE("mean index of rotations and hyperbolic paths") {
  for (double c : {0.3, 0.7, 1.0, 2.5}) {
    double mean = mean_index(rotation1(c), 16);
    CHECK(std::abs(mean - 2.0 * c) <= 1.0 / 16 + 1e-9);
  }
  CHECK(std::abs(mean_index(hyperbolic1(), 16)) <= 1.0 / 16 + 1e-9);
}

TEST_CASE("loop axiom") {
  SymplecticPath p = bumpy_path();
  int base = cz_index(p);
  CHECK(cz_index(loop_composed(p, 1)) == base + 2);
  CHECK(cz_index(loop_composed(p, -2)) == base - 4);
}

TEST_CASE("inverse negates and direct sum adds") {
  SymplecticPath p = rotation1(0.3);
  SymplecticPath q = bumpy_path();
  CHECK(cz_index(inverse_path(p)) == -cz_index(p));
  CHECK(cz_index(inverse_path(q)) == -cz_index(q));
  CHECK(cz_index(direct_sum(p, q)) == cz_index(p) + cz_index(q));
  CHECK(cz_index(direct_sum(q, hyperbolic1())) == cz_index(q));
}

TEST_CASE("iterates of a rotation follow the floor rule") {
  // c = 2/5: mu_minus(k-th iterate) = 2 floor(2k/5) + 1 off multiples of 5,
  // and 2(2k/5) - 1 at them
  for (int k = 1; k <= 6; ++k) {
    int expect = (2 * k) % 5 == 0 ? (4 * k / 5 - 1)
                                  : (2 * ((2 * k) / 5) + 1);
    CHECK(cz_minus(iterate_path(rotation1(0.4), k)) == expect);
  }
}

TEST_CASE("spectral flow engine agrees") {
  SymplecticPath id1 = SymplecticPath::constant(1, Mat::Zero(2, 2));
  CHECK(spectral_flow_index(id1, 16) == -1);

  Mat A = -0.05 * Mat::Identity(2, 2);
  CHECK(spectral_flow_index(SymplecticPath::constant(1, A), 16) == -1);

  SymplecticPath p = bumpy_path();
  CHECK(spectral_flow_index(p, 24) == cz_index(p));
  CHECK(spectral_flow_index(rotation1(0.7), 16) == 1);
  CHECK(spectral_flow_index(rotation1(2.5), 20) == 5);
}

TEST_CASE("trivialization shifts act by two maslov") {
  IndexReport rep;
  rep.mu_rs = HalfInt{5};
  rep.mu_minus = 2;
  rep.mu_plus = 3;
  rep.mean = 2.5;
  rep.nullity = 1;

  IndexReport same = apply_trivialization_shift(rep, {0});
  CHECK(same.mu_rs == rep.mu_rs);
  CHECK(same.mu_minus == rep.mu_minus);

  IndexReport up = apply_trivialization_shift(rep, {1});
  CHECK(up.mu_rs == HalfInt{9});
  CHECK(up.mu_minus == 4);
  CHECK(up.mu_plus == 5);
  CHECK(up.mean == doctest::Approx(4.5));
  CHECK(up.nullity == 1);

  IndexReport down = apply_trivialization_shift(rep, {-3});
  CHECK(down.mu_minus == -4);
}

TEST_CASE("half integer rendering") {
  CHECK(HalfInt{4}.str() == "2");
  CHECK(HalfInt{5}.str() == "5/2");
  CHECK(HalfInt{-3}.str() == "-3/2");
  CHECK(HalfInt{0}.str() == "0");
  CHECK(HalfInt{5}.value() == doctest::Approx(2.5));
}
