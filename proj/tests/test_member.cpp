#include <omp.h>

#include "doctest.h"
#include "suzuki/member.hpp"

using namespace suzuki;

namespace {

RecognitionOutput recognise_conjugate(int m, std::uint64_t seed) {
  const FieldParams f = build_field(m);
  Rng rng(seed);
  auto [gens, c] = random_conjugate(f, rng);
  GroupHandle group(f, std::move(gens), rng());
  return conjugator(group);
}

std::vector<Mat4> symbol_images(const RewriteTables& t) { return {t.f, t.e, t.z}; }

}  // namespace

TEST_SUITE("member") {

TEST_CASE("tables from many recognitions") {
  for (int m : {1, 2}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const RecognitionOutput rec = recognise_conjugate(m, 1000 * m + seed);
      const RewriteTables t = precompute_tables(rec);
      CHECK(t.basis_a.row(0) == t.a1.bits());
      CHECK(t.basis_a * t.basis_a_inv == BinMat::identity(t.field.n()));
      CHECK(t.basis_b * t.basis_b_inv == BinMat::identity(t.field.n()));
    }
  }
}

TEST_CASE("unipotent words") {
  for (int m = 1; m <= 8; ++m) {
    const RewriteTables t = precompute_tables(recognise_conjugate(m, 7 + m));
    const auto images = symbol_images(t);
    CHECK(eval(write_unipotent(t.field.zero(), t.field.zero(), t), images).is_identity());
    Rng rng(m);
    for (int i = 0; i < 100; ++i) {
      const Fq a = t.field.random(rng), b = t.field.random(rng);
      const Slp w = write_unipotent(a, b, t);
      CHECK(eval(w, images) == gen_U(a, b));
      CHECK(w.length() <= 10 * static_cast<std::size_t>(t.field.n()) + 2);
    }
  }
}

TEST_CASE("torus words") {
  const RewriteTables t = precompute_tables(recognise_conjugate(1, 3));
  const auto images = symbol_images(t);
  CHECK(eval(write_torus(t.field.one(), t), images).is_identity());
  for (std::uint64_t l = 1; l < t.field.q(); ++l) {
    const Fq lambda = t.field.element(l);
    CHECK(eval(write_torus(lambda, t), images) == gen_M(lambda));
  }
  CHECK_THROWS_AS(write_torus(t.field.zero(), t), FieldError);
}

TEST_CASE("membership test") {
  const RecognitionOutput rec = recognise_conjugate(1, 11);
  const RewriteTables t = precompute_tables(rec);
  for (const Mat4& x : rec.gens) CHECK(is_member(x, t));
  CHECK(is_member(t.g * gen_T(t.field) * t.g_inv, t));
  // |G| / |GL(4,8)| is about 1e-10.
  Rng rng(12);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) accepted += is_member(random_invertible(t.field, rng), t);
  CHECK(accepted == 0);
}

TEST_CASE("express round trip") {
  for (int m : {1, 2, 3}) {
    const RecognitionOutput rec = recognise_conjugate(m, 20 + m);
    const RewriteTables t = precompute_tables(rec);
    const std::size_t bound = rewriting_length_bound(t.field);

    const auto gamma = express(rec.rw.gamma.mat, t);
    REQUIRE(gamma);
    CHECK(std::holds_alternative<InFHTF>(gamma->form));
    CHECK(eval(gamma->in_x, rec.gens) == rec.rw.gamma.mat);

    const auto id = express(Mat4::identity(t.field), t);
    REQUIRE(id);
    CHECK(eval(id->in_x, rec.gens).is_identity());

    Rng rng(m);
    for (int i = 0; i < 100; ++i) {
      const Mat4 h = random_sigma_element(t.field, rng).conj(t.g_inv);
      const auto ex = express(h, t);
      REQUIRE(ex);
      CHECK(eval(ex->in_x, rec.gens) == h);
      CHECK(eval(ex->rewriting, symbol_images(t)) == h.conj(t.g));
      CHECK(ex->rewriting.length() <= bound);
    }
    for (int i = 0; i < 100; ++i) {
      const Mat4 x = random_invertible(t.field, rng);
      CHECK(!express(x, t));
      CHECK(!is_member(x, t));
    }
  }
}

TEST_CASE("express is safe to share across threads") {
  const RecognitionOutput rec = recognise_conjugate(2, 5);
  const RewriteTables t = precompute_tables(rec);
  Rng rng(6);
  std::vector<Mat4> members;
  for (int i = 0; i < 64; ++i) members.push_back(random_sigma_element(t.field, rng).conj(t.g_inv));
  std::vector<int> ok(members.size(), 0);
#pragma omp parallel for num_threads(4)
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    const auto ex = express(members[static_cast<std::size_t>(i)], t);
    ok[static_cast<std::size_t>(i)] = ex && eval(ex->in_x, rec.gens) == members[static_cast<std::size_t>(i)];
  }
  CHECK(std::count(ok.begin(), ok.end(), 1) == 64);
}

}  // TEST_SUITE
