#include <unordered_set>

#include "doctest.h"
#include "suzuki/szstd.hpp"

using namespace suzuki;

TEST_SUITE("szstd") {

TEST_CASE("U group law exhaustively at q = 8") {
  const FieldParams f = build_field(1);
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = 0; b < 8; ++b) {
      const Fq fa = f.element(a), fb = f.element(b);
      CHECK((gen_U(fa, fb) * gen_U_inverse(fa, fb)).is_identity());
      for (std::uint64_t c = 0; c < 8; ++c)
        for (std::uint64_t d = 0; d < 8; ++d) {
          const Fq fc = f.element(c), fd = f.element(d);
          CHECK(gen_U(fa, fb) * gen_U(fc, fd) == gen_U(fa + fc, fb + fd + fa * fc.twist()));
        }
    }
}

TEST_CASE("U group law sampled at q = 32 and 128") {
  Rng rng(20);
  for (int m : {2, 3}) {
    const FieldParams f = build_field(m);
    for (int i = 0; i < 1000; ++i) {
      const Fq a = f.random(rng), b = f.random(rng), c = f.random(rng), d = f.random(rng);
      CHECK(gen_U(a, b) * gen_U(c, d) == gen_U(a + c, b + d + a * c.twist()));
      CHECK(gen_U(a, b).inverse() == gen_U(a, b + a.twist() * a));
    }
  }
}

TEST_CASE("torus conjugation and T") {
  const FieldParams f = build_field(2);
  Rng rng(21);
  const Mat4 t = gen_T(f);
  CHECK((t * t).is_identity());
  for (int i = 0; i < 100; ++i) {
    const Fq l = f.random_nonzero(rng), a = f.random(rng), b = f.random(rng);
    CHECK(gen_M(l).conj(t) == gen_M(l.inverse()));
    // M'(l)^-1 U(a,b) M'(l) = U(l^t a, l^(t+2) b)
    CHECK(gen_U(a, b).conj(gen_M(l)) == gen_U(l.twist() * a, l.twist() * l * l * b));
  }
  CHECK_THROWS_AS(gen_M(f.zero()), FieldError);
}

TEST_CASE("ovoid invariance exhaustively at q = 8") {
  const FieldParams f = build_field(1);
  std::vector<Vec4> points{ovoid_infinity(f).coords};
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = 0; b < 8; ++b) points.push_back(ovoid_point(f.element(a), f.element(b)).coords);
  CHECK(points.size() == 65);
  for (const Vec4& p : points) CHECK(is_on_ovoid(p));
  for (const Mat4& g : standard_generators(f)) {
    for (const Vec4& p : points) CHECK(is_on_ovoid(p * g));
  }
  // Counting all projective points on the ovoid gives q^2 + 1.
  std::size_t on = 0;
  for (std::uint64_t x = 1; x < 4096; ++x) {
    const Vec4 v{f.element(x & 7), f.element((x >> 3) & 7), f.element((x >> 6) & 7), f.element(x >> 9)};
    if (is_on_ovoid(v)) ++on;
  }
  CHECK(on == 65 * 7);
  CHECK_THROWS_AS(is_on_ovoid({f.zero(), f.zero(), f.zero(), f.zero()}), FieldError);
}

TEST_CASE("ovoid invariance sampled at q = 32 and 128") {
  Rng rng(22);
  for (int m : {2, 3}) {
    const FieldParams f = build_field(m);
    for (int i = 0; i < 1000; ++i) {
      const Mat4 g = random_sigma_element(f, rng);
      CHECK(is_on_ovoid(ovoid_point(f.random(rng), f.random(rng)).coords * g));
      CHECK(is_on_ovoid(ovoid_infinity(f).coords * g));
    }
  }
}

TEST_CASE("partition round trip exhaustively at q = 8") {
  const FieldParams f = build_field(1);
  std::unordered_set<Mat4, Mat4Hash> seen;
  std::size_t fh = 0;
  for_each_bruhat_form(f, [&](const BruhatForm& form) {
    const Mat4 h = evaluate(form, f);
    seen.insert(h);
    const auto back = sigma_decompose(h, f);
    REQUIRE(back);
    CHECK(*back == form);
    if (std::holds_alternative<InFH>(form)) ++fh;
  });
  CHECK(seen.size() == sz_order(f));
  CHECK(fh == 7 * 64);
  // The set is closed under the generators.
  for (const Mat4& g : standard_generators(f)) {
    std::size_t closed = 0;
    for (const Mat4& h : seen) closed += seen.count(h * g);
    CHECK(closed == seen.size());
  }
}

TEST_CASE("partition round trip sampled at q = 32 and 128") {
  Rng rng(23);
  for (int m : {2, 3}) {
    const FieldParams f = build_field(m);
    const auto gens = standard_generators(f);
    for (int i = 0; i < 1000; ++i) {
      const BruhatForm form = random_bruhat_form(f, rng);
      const Mat4 h = evaluate(form, f);
      CHECK(sigma_decompose(h, f) == form);
      CHECK(sigma_membership(h * gens[rng.below(3)], f));
      CHECK(parse_bruhat_form(f, to_string(form)) == form);
    }
  }
}

TEST_CASE("non-members are rejected") {
  Rng rng(24);
  const FieldParams f = build_field(2);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) accepted += sigma_membership(random_invertible(f, rng), f);
  CHECK(accepted == 0);
  // A scalar multiple of a member fixes the ovoid but is not in the group.
  const Mat4 h = random_sigma_element(f, rng);
  const Fq s = f.element(2);
  CHECK_FALSE(sigma_membership(Mat4::diagonal(s, s, s, s) * h, f));
  CHECK(sigma_membership(Mat4::identity(f), f));
  CHECK(sigma_decompose(Mat4::identity(f), f) == BruhatForm{InFH{f.one(), f.zero(), f.zero()}});
  CHECK(sigma_decompose(gen_T(f), f) ==
        BruhatForm{InFHTF{f.one(), f.zero(), f.zero(), f.zero(), f.zero()}});
}

TEST_CASE("group order") {
  CHECK(sz_order(build_field(1)) == 29120);
  CHECK(sz_order(build_field(2)) == 32537600);
}

}  // TEST_SUITE
