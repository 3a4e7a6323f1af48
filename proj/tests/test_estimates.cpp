#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "reebindex/errors.hpp"
#include "reebindex/estimates.hpp"
#include "reebindex/index.hpp"
#include "reebindex/sympath.hpp"

using namespace reebindex;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// CP^n base data: Betti numbers 1,0,1,...,0,1 and fiber index 2n+2.
PrequantizationData cpn_data(int n, int max_multiple) {
  PrequantizationData data;
  data.n = n;
  data.betti.assign(2 * n + 1, 0);
  for (int i = 0; i <= n; ++i) data.betti[2 * i] = 1;
  data.mu_phi = 2 * n + 2;
  for (int k = 1; k <= max_multiple; ++k) data.multiples.insert(k);
  data.m = 1;
  return data;
}

/// Rotation path with n+1 equal angles 2 pi x: the time-S flow of
/// ||z||^2 / (2 R^2) on R^{2n+2} at x = S / (2 pi R^2).
SymplecticPath hr_rotation(int n, double x) {
  Vec angles = Vec::Constant(n + 1, kTwoPi * x);
  return SymplecticPath::rotation(n + 1, angles);
}

}  // namespace

TEST_CASE("prequantization tables are shifted Betti numbers") {
  SUBCASE("CP^n bases reproduce the sphere tables") {
    const std::vector<std::map<int, int>> want = {
        {{3, 1}, {5, 1}, {7, 1}, {9, 1}, {11, 1}, {13, 1}},
        {{4, 1}, {6, 1}, {8, 1}, {10, 1}, {12, 1}, {14, 1}},
        {{5, 1}, {7, 1}, {9, 1}, {11, 1}, {13, 1}, {15, 1}}};
    for (int n = 1; n <= 3; ++n) {
      const HCTable table = prequant_hc(cpn_data(n, 8), {0, n + 12});
      CHECK(table.ranks == want[n - 1]);
      REQUIRE(table.k_minus.has_value());
      CHECK(*table.k_minus == n + 2);
      CHECK_FALSE(table.k_plus.has_value());
      CHECK(table.cutoff == n + 12);
    }
  }

  SUBCASE("multiples {1} shifts the Betti list down by n") {
    PrequantizationData data;
    data.n = 1;
    data.betti = {1, 0, 2};
    data.mu_phi = 0;
    data.multiples = {1};
    const HCTable table = prequant_hc(data, {-5, 5});
    CHECK(table.ranks == std::map<int, int>{{-1, 1}, {1, 2}});
    REQUIRE(table.k_minus.has_value());
    CHECK(*table.k_minus == -1);
  }

  SUBCASE("overlapping multiples add ranks degree by degree") {
    PrequantizationData data;
    data.n = 1;
    data.betti = {1, 2, 1};
    data.mu_phi = 2;
    data.multiples = {1, 2, 3};
    const HCTable table = prequant_hc(data, {0, 6});
    CHECK(table.ranks ==
          std::map<int, int>{{1, 1}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}});
  }

  SUBCASE("zero Betti data yields the zero table") {
    PrequantizationData data;
    data.n = 2;
    data.betti = {0, 0, 0};
    data.mu_phi = 6;
    data.multiples = {1};
    const HCTable table = prequant_hc(data, {0, 10});
    CHECK(table.ranks.empty());
    CHECK_FALSE(table.k_minus.has_value());
  }

  SUBCASE("invalid data is rejected") {
    PrequantizationData data = cpn_data(1, 3);
    data.betti[1] = -1;
    CHECK_THROWS_AS(prequant_hc(data, {0, 10}), std::invalid_argument);
    data = cpn_data(1, 3);
    data.multiples = {2, 3};
    CHECK_THROWS_AS(prequant_hc(data, {0, 10}), std::invalid_argument);
    data = cpn_data(1, 3);
    data.multiples.insert(0);
    CHECK_THROWS_AS(prequant_hc(data, {0, 10}), std::invalid_argument);
    data = cpn_data(1, 3);
    data.m = 0;
    CHECK_THROWS_AS(prequant_hc(data, {0, 10}), std::invalid_argument);
    data = cpn_data(1, 3);
    CHECK_THROWS_AS(prequant_hc(data, {5, 4}), std::invalid_argument);
  }
}

TEST_CASE("perturbed orbit indices follow the Morse shift") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(perturbed_orbit_index(0, 1, 2 * n + 2, n) == n + 2);
    CHECK(perturbed_orbit_index(2 * n, 1, 2 * n + 2, n) == (2 * n + 2) + n);
    CHECK(perturbed_orbit_index(n, 1, 2 * n + 2, n) == 2 * n + 2);
  }

  SUBCASE("even Morse data keeps one parity") {
    const int n = 3;
    const int mu_phi_k = 16;
    const int base = perturbed_orbit_index(0, 2, mu_phi_k, n);
    for (int ind_p = 0; ind_p <= 2 * n; ind_p += 2) {
      const int value = perturbed_orbit_index(ind_p, 2, mu_phi_k, n);
      CHECK(((value - base) % 2) == 0);
      CHECK(((value - (mu_phi_k - n + ind_p)) % 2) == 0);
    }
  }

  SUBCASE("out-of-range Morse indices throw") {
    CHECK_THROWS_AS(perturbed_orbit_index(-1, 1, 8, 2), MorseIndexOutOfRange);
    CHECK_THROWS_AS(perturbed_orbit_index(5, 1, 8, 2), MorseIndexOutOfRange);
    CHECK_THROWS_AS(perturbed_orbit_index(0, 0, 8, 2), std::invalid_argument);
    CHECK_THROWS_AS(perturbed_orbit_index(0, 1, 8, -1), std::invalid_argument);
  }
}

TEST_CASE("homotopy multiples are decided only by the pi_2 dichotomy") {
  const auto trivial = homotopy_multiples(1, true, 100);
  REQUIRE(trivial.has_value());
  CHECK(*trivial == std::set<int>{1});
  const auto torsion = homotopy_multiples(5, true, 2);
  REQUIRE(torsion.has_value());
  CHECK(*torsion == std::set<int>{1});

  CHECK_FALSE(homotopy_multiples(1, false, 100).has_value());
  CHECK_FALSE(homotopy_multiples(7, false, 12).has_value());

  CHECK_THROWS_AS(homotopy_multiples(0, true, 10), std::invalid_argument);
  CHECK_THROWS_AS(homotopy_multiples(1, true, 1), std::invalid_argument);
}

TEST_CASE("Chern pairing bound doubles the minimal Chern number") {
  CHECK(chern_pairing_check(1, 2, 1) == 2);
  CHECK(chern_pairing_check(1, 2, 2) == 4);
  CHECK(chern_pairing_check(3, 5, 2) == 4);
  CHECK(chern_pairing_check(2, 7, 3) == 6);

  CHECK_THROWS_AS(chern_pairing_check(1, 2, 1, false), HypothesesNotMet);
  CHECK_THROWS_AS(chern_pairing_check(1, 1, 1), HypothesesNotMet);
  CHECK_THROWS_AS(chern_pairing_check(1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(chern_pairing_check(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(chern_pairing_check(1, 2, 0), std::invalid_argument);
}

TEST_CASE("ind_hr matches the closed form and the crossing engine") {
  SUBCASE("branch arithmetic") {
    CHECK(ind_hr(1, kTwoPi, 1.0) == 2);
    CHECK(ind_hr(1, 1.5 * kTwoPi, 1.0) == 6);
    CHECK(ind_hr(2, 0.3 * kTwoPi, 1.0) == 3);
    CHECK(ind_hr(3, 2.0 * kTwoPi, 1.0) == 12);
    CHECK(ind_hr(2, 2.5 * kTwoPi * 4.0, 2.0) == 15);
    CHECK_THROWS_AS(ind_hr(1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ind_hr(1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ind_hr(-1, 1.0, 1.0), std::invalid_argument);
  }

  SUBCASE("cross-check against cz_minus of the rotation path") {
    std::mt19937_64 rng(20260813u);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::uniform_real_distribution<double> turns(0.05, 5.0);
    int checked = 0;
    while (checked < 18) {
      const int n = 1 + static_cast<int>(rng() % 3);
      const double R = radius(rng);
      double x = turns(rng);
      if (std::abs(x - std::llround(x)) < 0.05) continue;
      const double S = kTwoPi * R * R * x;
      CHECK(ind_hr(n, S, R) == cz_minus(hr_rotation(n, S / (kTwoPi * R * R))));
      ++checked;
    }
    for (int m = 1; m <= 3; ++m) {
      for (int n = 1; n <= 2; ++n) {
        const double R = 0.75 + 0.5 * m;
        const double S = (kTwoPi * m) * (R * R);
        CHECK(ind_hr(n, S, R) == (2 * n + 2) * m - n - 1);
        CHECK(ind_hr(n, S, R) == cz_minus(hr_rotation(n, m)));
      }
    }
  }
}

TEST_CASE("pinching bounds, gate and boundary case") {
  SUBCASE("grid values and the internal identity") {
    for (int n = 1; n <= 3; ++n) {
      for (double k : {1.5, 2.0, 3.0}) {
        const PinchingReport report = pinched_index_bound({n, 1.0, 1.0, k});
        const int floor_k = static_cast<int>(std::floor(k));
        CHECK(report.floor_k == floor_k);
        CHECK(report.bound == (2 * n + 2) * floor_k - n);
        CHECK(report.min_period == doctest::Approx(kTwoPi));
        CHECK(report.correction == -1);
        CHECK_FALSE(report.boundary_case);
        CHECK(report.ind_hr_value == report.bound + report.correction);
      }
    }
  }

  SUBCASE("ratio exactly at the threshold is the accepted boundary") {
    const PinchingReport report =
        pinched_index_bound({2, 1.0, std::sqrt(2.0), 2.0});
    CHECK(report.boundary_case);
    CHECK(report.bound == 3 * 2 + 4);
    CHECK(report.floor_argument == doctest::Approx(1.0));
  }

  SUBCASE("strict violations throw") {
    CHECK_THROWS_AS(pinched_index_bound({1, 1.0, 2.0, 2.0}), PinchingViolated);
    CHECK_THROWS_AS(pinched_index_bound({3, 0.5, 1.5, 1.2}), PinchingViolated);
  }

  SUBCASE("bound is monotone in the exponent") {
    int previous = 0;
    for (double k : {1.01, 1.5, 2.0, 2.5, 3.0, 4.25}) {
      const PinchingReport report = pinched_index_bound({2, 1.0, 1.0, k});
      CHECK(report.bound >= previous);
      previous = report.bound;
    }
    CHECK(pinched_index_bound({2, 1.0, 1.0, 1.01}).bound == 2 + 2);
  }

  SUBCASE("malformed data is rejected") {
    CHECK_THROWS_AS(pinched_index_bound({1, 0.0, 1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(pinched_index_bound({1, 2.0, 1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(pinched_index_bound({1, 1.0, 1.0, 1.0}),
                    std::invalid_argument);
  }
}
