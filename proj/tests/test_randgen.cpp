#include <cmath>

#include "doctest.h"
#include "suzuki/randgen.hpp"
#include "suzuki/szstd.hpp"

using namespace suzuki;

namespace {

std::vector<Mat4> sigma_gens(const FieldParams& f) {
  const auto g = standard_generators(f);
  return {g.begin(), g.end()};
}

// Index of an element of Sz(8) in [0, 29120) read off its decomposition.
std::size_t element_index(const Mat4& h, const FieldParams& f) {
  const auto form = sigma_decompose(h, f);
  REQUIRE(form);
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        const std::size_t head = ((x.lambda.bits() - 1) * 8 + x.c.bits()) * 8 + x.d.bits();
        if constexpr (std::is_same_v<T, InFH>) {
          return head;
        } else {
          return 448 + (head * 8 + x.a.bits()) * 8 + x.b.bits();
        }
      },
      *form);
}

// Upper 0.001 quantile of chi-square with k degrees of freedom
// (Wilson-Hilferty).
double chi2_critical(double k) {
  const double z = 3.090232;
  const double c = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
}

}  // namespace

TEST_SUITE("randgen") {

TEST_CASE("slots and draws carry matching programs") {
  const FieldParams f = build_field(2);
  const auto gens = sigma_gens(f);
  PrOracle oracle(gens, 7);
  CHECK(oracle.slots().size() == 10);
  for (const Tracked& s : oracle.slots()) CHECK(eval(s.slp, gens) == s.mat);
  for (int i = 0; i < 50; ++i) {
    const Tracked x = oracle.next();
    CHECK(eval(x.slp, gens) == x.mat);
    CHECK(sigma_membership(x.mat, f));
  }
  CHECK(oracle.draws() == 50);
  CHECK(PrOracle(std::vector<Mat4>(8, gens[0]), 1).slots().size() == 13);
}

TEST_CASE("construction errors") {
  const FieldParams f = build_field(1);
  CHECK_THROWS_AS(PrOracle({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(PrOracle({Mat4::diagonal(f.one(), f.one(), f.one(), f.zero())}, 1), MatrixError);
}

TEST_CASE("streams are determined by the seed") {
  const FieldParams f = build_field(1);
  const auto gens = sigma_gens(f);
  PrOracle a(gens, 42), b(gens, 42), c(gens, 43);
  bool differ = false;
  for (int i = 0; i < 5; ++i) {
    const Mat4 x = a.next().mat;
    CHECK(x == b.next().mat);
    differ = differ || x != c.next().mat;
  }
  CHECK(differ);
}

TEST_CASE("draws are near uniform on Sz(8)") {
  const FieldParams f = build_field(1);
  PrOracle oracle(sigma_gens(f), 2024, {.track_slps = false});
  const std::size_t cells = 29120;
  const std::size_t draws = 1'000'000;
  std::vector<std::uint32_t> counts(cells, 0);
  std::size_t torus_type = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    const Mat4 x = oracle.next().mat;
    ++counts[element_index(x, f)];
    if (!x.is_identity() && mat_pow(x, 7).is_identity()) ++torus_type;
  }
  const double expected = static_cast<double>(draws) / cells;
  double chi2 = 0;
  for (const auto c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < chi2_critical(cells - 1));
  // (q-2) q^2 (q^2+1) / 2 nontrivial elements of order dividing q-1 = 3/7.
  const double fraction = static_cast<double>(torus_type) / draws;
  CHECK(std::abs(fraction - 3.0 / 7.0) < 0.003);
}

}  // TEST_SUITE
