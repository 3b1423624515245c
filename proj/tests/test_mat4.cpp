#include "doctest.h"
#include "suzuki/mat4.hpp"
#include "suzuki/szstd.hpp"

using namespace suzuki;

namespace {

Mat4 random_matrix(const FieldParams& f, Rng& rng) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = f.random(rng);
  return m;
}

}  // namespace

TEST_SUITE("mat4") {

TEST_CASE("inverse, determinant and transpose") {
  const FieldParams f = build_field(2);
  Rng rng(10);
  for (int i = 0; i < 200; ++i) {
    const Mat4 a = random_invertible(f, rng);
    const Mat4 b = random_matrix(f, rng);
    CHECK((a * a.inverse()).is_identity());
    CHECK((a * b).det() == a.det() * b.det());
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
  }
  Mat4 singular = Mat4::identity(f);
  singular(2, 2) = f.zero();
  CHECK_THROWS_AS(singular.inverse(), MatrixError);
}

TEST_CASE("characteristic polynomial vanishes on its matrix") {
  const FieldParams f = build_field(3);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Mat4 a = random_matrix(f, rng);
    const UPoly p = a.charpoly();
    REQUIRE(p.degree() == 4);
    Mat4 acc;
    Mat4 power = Mat4::identity(f);
    for (int k = 0; k <= 4; ++k) {
      const Fq c = p.coeff(k);
      acc = acc + Mat4::diagonal(c, c, c, c) * power;
      power = power * a;
    }
    CHECK(acc == Mat4{});
    CHECK(p.coeff(3) == a.trace());
    CHECK(p.coeff(0) == a.det());
  }
}

TEST_CASE("power, order class and brute-force order") {
  const FieldParams f = build_field(1);
  const Mat4 w = gen_M(f.primitive());
  CHECK(mat_pow(w, 7).is_identity());
  CHECK(brute_force_order(w, 100) == 7);
  CHECK(order_class(w, f) == OrderClass::DividesQm1);
  CHECK(order_class(gen_T(f), f) == OrderClass::Order2);
  CHECK(order_class(gen_U(f.one(), f.zero()), f) == OrderClass::Order4);
  CHECK(order_class(gen_U(f.zero(), f.one()), f) == OrderClass::Order2);
  CHECK(order_class(Mat4::identity(f), f) == OrderClass::Identity);
  CHECK(mat_pow(w, 0).is_identity());
  CHECK_THROWS_AS(brute_force_order(gen_U(f.one(), f.zero()), 3), MatrixError);
}

TEST_CASE("half_power contract exhaustively at q = 8") {
  const FieldParams f = build_field(1);
  std::size_t odd = 0;
  for_each_bruhat_form(f, [&](const BruhatForm& form) {
    const Mat4 x = evaluate(form, f);
    if (!has_odd_order(x)) return;
    ++odd;
    const Mat4 y = half_power(x, f);
    CHECK((y * y * x).is_identity());
  });
  // Every element outside the 2-elements has odd order: |G| minus
  // (q^2+1)(q-1) involutions and (q^2+1)q(q-1) elements of order 4.
  CHECK(odd == 29120 - 455 - 3640);
}

TEST_CASE("half_power contract sampled at q = 32 and 128") {
  Rng rng(12);
  for (int m : {2, 3}) {
    const FieldParams f = build_field(m);
    int tested = 0;
    while (tested < 1000) {
      const Mat4 x = random_sigma_element(f, rng);
      if (!has_odd_order(x)) continue;
      ++tested;
      const Mat4 y = half_power(x, f);
      CHECK((y * y * x).is_identity());
    }
  }
}

TEST_CASE("subspaces") {
  const FieldParams f = build_field(2);
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec4> span;
    const int k = static_cast<int>(rng.below(4));
    for (int j = 0; j < k; ++j) {
      span.push_back({f.random(rng), f.random(rng), f.random(rng), f.random(rng)});
    }
    const Subspace s(span);
    const Subspace p = s.perp(f);
    CHECK(s.dim() + p.dim() == 4);
    for (const Vec4& a : s.basis()) {
      for (const Vec4& b : p.basis()) {
        CHECK((a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]).is_zero());
      }
    }
    CHECK(p.perp(f) == s);
    const Subspace other({{f.random(rng), f.random(rng), f.random(rng), f.random(rng)},
                          {f.random(rng), f.random(rng), f.random(rng), f.random(rng)}});
    const Subspace meet = s.intersect(other, f);
    CHECK(meet.is_subspace_of(s));
    CHECK(meet.is_subspace_of(other));
  }
}

TEST_CASE("nullspace chain of order-4 elements exhaustively at q = 8") {
  const FieldParams f = build_field(1);
  std::size_t count = 0;
  for_each_bruhat_form(f, [&](const BruhatForm& form) {
    const Mat4 x = evaluate(form, f);
    if (order_class(x, f) != OrderClass::Order4) return;
    ++count;
    const NullspaceChain chain = nullspace_chain(x, f);
    CHECK(chain.v1.is_subspace_of(chain.v2));
    CHECK(chain.v2.is_subspace_of(chain.v3));
    CHECK(chain.v1.image(x) == chain.v1);
    CHECK(chain.v3.image(x) == chain.v3);
  });
  // (q-1) q (q^2+1) elements of order 4
  CHECK(count == 7 * 8 * 65);
}

TEST_CASE("nullspace chain sampled at q = 32 and 128") {
  Rng rng(14);
  for (int m : {2, 3}) {
    const FieldParams f = build_field(m);
    for (int i = 0; i < 1000; ++i) {
      const Fq a = f.random_nonzero(rng);
      const Mat4 c = random_invertible(f, rng);
      const Mat4 x = gen_U(a, f.random(rng)).conj(c);
      const NullspaceChain chain = nullspace_chain(x, f);
      CHECK(chain.v1.dim() == 1);
      CHECK(chain.v2.dim() == 2);
      CHECK(chain.v3.dim() == 3);
    }
  }
  const FieldParams f = build_field(1);
  CHECK_THROWS_AS(nullspace_chain(gen_T(f), f), MatrixError);
}

TEST_CASE("torus diagonalisation") {
  Rng rng(15);
  for (int m : {1, 2, 4}) {
    const FieldParams f = build_field(m);
    for (int i = 0; i < 50; ++i) {
      Fq lambda = f.random_nonzero(rng);
      if (lambda.is_one()) continue;
      const Mat4 c = random_invertible(f, rng);
      const Mat4 g = gen_M(lambda).conj(c);
      const TorusDiagonalisation d = diagonalise_torus(g, f);
      CHECK(d.u == g.conj(d.c));
      CHECK(d.u == torus_matrix(d.lambda));
      CHECK((d.lambda == lambda || d.lambda == lambda.inverse()));
      CHECK(d.lambda <= d.lambda.inverse());
    }
    CHECK_THROWS_AS(diagonalise_torus(Mat4::identity(f), f), MatrixError);
  }
}

TEST_CASE("hex round trip") {
  const FieldParams f = build_field(2);
  Rng rng(16);
  const Mat4 a = random_matrix(f, rng);
  CHECK(parse_mat4(f, a.to_hex()) == a);
  CHECK_THROWS(parse_mat4(f, "1 2 3"));
}

}  // TEST_SUITE
