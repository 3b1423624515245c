#include <map>

#include "doctest.h"
#include "suzuki/recog.hpp"

using namespace suzuki;

namespace {

std::vector<Mat4> sigma_gens(const FieldParams& f) {
  const auto g = standard_generators(f);
  return {g.begin(), g.end()};
}

std::vector<Fq> brute_trace_roots(const std::array<Fq, 4>& diag, const FieldParams& f) {
  const auto [a, b, c, d] = diag;
  std::vector<Fq> out;
  for (std::uint64_t bits = 1; bits < f.q(); ++bits) {
    const Fq x = f.element(bits);
    const Fq y = x.twist();
    if ((a * x * x * y * y + b * x * x * y + c * y + d).is_zero()) out.push_back(x);
  }
  return out;
}

// Diagonal of h^c for a torus element g = c u c^-1 of Sigma and random h,
// skipping h that invert u; the situation the order-4 search meets.
std::array<Fq, 4> algorithm_diagonal(const FieldParams& f, Rng& rng) {
  for (;;) {
    const Mat4 g = random_sigma_element(f, rng);
    if (g.is_identity() || !mat_pow(g, f.q() - 1).is_identity()) continue;
    const TorusDiagonalisation td = diagonalise_torus(g, f);
    const Mat4 b = random_sigma_element(f, rng).conj(td.c);
    if (check_inverts(td.u, b)) continue;
    return {b(0, 0), b(1, 1), b(2, 2), b(3, 3)};
  }
}

void check_against_brute(const std::array<Fq, 4>& diag, const FieldParams& f, Rng& rng) {
  const TraceSolutions sol = solve_trace_system(diag, f, rng);
  const bool all_zero = std::all_of(diag.begin(), diag.end(), [](Fq x) { return x.is_zero(); });
  CHECK(sol.degenerate == all_zero);
  if (all_zero) return;
  CHECK(sol.roots == brute_trace_roots(diag, f));
  CHECK(sol.roots.size() <= 4);
}

}  // namespace

TEST_SUITE("recog") {

TEST_CASE("trace system matches brute force") {
  for (int m : {1, 2}) {
    const FieldParams f = build_field(m);
    Rng rng(100 + m);
    for (int i = 0; i < 1000; ++i) check_against_brute(algorithm_diagonal(f, rng), f, rng);
    for (int i = 0; i < 1000; ++i) {
      std::array<Fq, 4> diag;
      for (Fq& x : diag) x = rng.below(3) ? f.random(rng) : f.zero();
      check_against_brute(diag, f, rng);
    }
  }
}

TEST_CASE("trace system special cases") {
  const FieldParams f = build_field(1);
  Rng rng(5);
  const Fq z = f.zero(), one = f.one(), w = f.primitive();
  CHECK(solve_trace_system({z, z, z, z}, f, rng).degenerate);
  CHECK(solve_trace_system({z, z, z, w}, f, rng).roots.empty());
  CHECK(solve_trace_system({w, z, z, z}, f, rng).roots.empty());
  // a = b = 0: c y + d = 0 pins y = d/c.
  const auto ab = solve_trace_system({z, z, one, w}, f, rng);
  REQUIRE(ab.roots.size() == 1);
  CHECK(ab.roots[0].twist() == w);
  // c = d = 0: a y + b = 0 pins y = b/a.
  const auto cd = solve_trace_system({w, one, z, z}, f, rng);
  REQUIRE(cd.roots.size() == 1);
  CHECK(cd.roots[0].twist() == w.inverse());
  CHECK(trace_quartic({z, z, one, w}).is_zero());
  CHECK(trace_quartic({w, one, z, z}).is_zero());
  CHECK(!trace_quartic({one, z, z, w}).is_zero());
}

TEST_CASE("trace solutions depend only on the diagonal") {
  const FieldParams f = build_field(2);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Mat4 b = random_sigma_element(f, rng);
    const Mat4 delta = Mat4::diagonal(f.random_nonzero(rng), f.random_nonzero(rng),
                                      f.random_nonzero(rng), f.random_nonzero(rng));
    const Mat4 bd = b.conj(delta);
    CHECK(solve_trace_system({b(0, 0), b(1, 1), b(2, 2), b(3, 3)}, f, rng).roots ==
          solve_trace_system({bd(0, 0), bd(1, 1), bd(2, 2), bd(3, 3)}, f, rng).roots);
  }
}

TEST_CASE("inverting elements of a torus") {
  const FieldParams f = build_field(1);
  const Mat4 u = gen_M(f.primitive());
  CHECK(check_inverts(u, gen_T(f)));
  CHECK(!check_inverts(u, Mat4::identity(f)));
  int count = 0;
  for_each_bruhat_form(f, [&](const BruhatForm& form) {
    if (check_inverts(u, evaluate(form, f))) ++count;
  });
  CHECK(count == 7);
}

TEST_CASE("order-4 elements of Sigma and its conjugates") {
  for (int m : {1, 2, 3}) {
    const FieldParams f = build_field(m);
    Rng rng(m);
    for (int trial = 0; trial < 10; ++trial) {
      const auto [gens, c] = random_conjugate(f, rng);
      for (const auto& input : {sigma_gens(f), gens}) {
        GroupHandle group(f, input, rng());
        const Tracked alpha = order4_element(group, Strategy::Default);
        CHECK(order_class(alpha.mat, f) == OrderClass::Order4);
        CHECK(eval(alpha.slp, input) == alpha.mat);
      }
    }
  }
}

TEST_CASE("factored strategy calls dlog once per order-4 element") {
  const FieldParams f = build_field(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GroupHandle group(f, sigma_gens(f), seed);
    order4_element(group, Strategy::Factored, 10000);
    CHECK(group.stats().dlog_calls == 1);
  }
}

TEST_CASE("centralising involutions are near uniform") {
  const FieldParams f = build_field(1);
  GroupHandle group(f, sigma_gens(f), 77);
  const Tracked f2{gen_U(f.zero(), f.one()), Slp{}};
  std::map<std::uint64_t, int> hits;
  const int runs = 6000;
  for (int i = 0; i < runs; ++i) {
    const Tracked j = bray_centraliser_involution(group, f2);
    CHECK(j.mat != f2.mat);
    CHECK((j.mat * j.mat).is_identity());
    CHECK(j.mat * f2.mat == f2.mat * j.mat);
    REQUIRE(j.mat == gen_U(f.zero(), j.mat(3, 1)));
    ++hits[j.mat(3, 1).bits()];
  }
  CHECK(hits.size() == 6);
  double chi2 = 0;
  const double expected = runs / 6.0;
  for (const auto& [b, n] : hits) chi2 += (n - expected) * (n - expected) / expected;
  CHECK(chi2 < 20.52);  // 5 degrees of freedom, p = 0.001
}

TEST_CASE("stabiliser pair") {
  for (int m : {1, 2, 3}) {
    const FieldParams f = build_field(m);
    Rng rng(30 + m);
    for (int trial = 0; trial < 10; ++trial) {
      GroupHandle group(f, sigma_gens(f), rng());
      const Tracked alpha = order4_element(group, Strategy::Default);
      const auto [h, j] = stabilizer_pair(group, alpha);
      CHECK(j.mat.conj(h.mat) == alpha.mat * alpha.mat);
      CHECK(j.mat != alpha.mat * alpha.mat);
      CHECK(has_odd_order(h.mat));
      CHECK(!h.mat.is_identity());
      const NullspaceChain chain = nullspace_chain(alpha.mat, f);
      CHECK(chain.v1.image(h.mat) == chain.v1);
      CHECK(eval(h.slp, group.gens()) == h.mat);
      for (const u128 e : subfield_exponents(f)) CHECK(!mat_pow(h.mat, e).is_identity());
    }
  }
  CHECK(subfield_exponents(build_field(1)) == std::vector<u128>{1});
  CHECK(subfield_exponents(build_field(4)) == std::vector<u128>{7});
  CHECK(subfield_exponents(build_field(7)) == std::vector<u128>{31, 7});
}

TEST_CASE("form scalar") {
  const FieldParams f = build_field(2);
  const Mat4 id = Mat4::identity(f);
  CHECK_THROWS_AS(solve_form_scalar(id, id, id), MatrixError);
  const Fq w = f.primitive();
  CHECK(solve_form_scalar(id, gen_U(f.one(), w), gen_M(w)) == f.one());
  // Conjugating by diag(1, r, r, 1) turns the form scalar into r^-2.
  const Fq r = w.square() + f.one();
  const Mat4 d = Mat4::diagonal(f.one(), r, r, f.one());
  CHECK(solve_form_scalar(id, gen_U(f.one(), w).conj(d), gen_M(w).conj(d)) ==
        r.square().inverse());
}

TEST_CASE("conjugator end to end") {
  for (int m : {1, 2, 3, 4}) {
    const FieldParams f = build_field(m);
    Rng rng(50 + m);
    for (int trial = 0; trial < 5; ++trial) {
      const auto [gens, c] = random_conjugate(f, rng);
      GroupHandle group(f, gens, rng());
      const RecognitionOutput out = conjugator(group);
      CHECK(verify_recognition(out));
      const Mat4 g_inv = out.g.inverse();
      for (const Mat4& x : gens) CHECK(sigma_membership(g_inv * x * out.g, f));

      const RecognitionOutput back = parse_recognition(serialize(out));
      CHECK(back.field == f);
      CHECK(back.g == out.g);
      CHECK(back.gens == out.gens);
      CHECK(back.rw.alpha.mat == out.rw.alpha.mat);
      CHECK(back.rw.h.mat == out.rw.h.mat);
      CHECK(back.rw.gamma.mat == out.rw.gamma.mat);
      CHECK(verify_recognition(back));
    }
  }
}

TEST_CASE("verification rejects a wrong conjugator") {
  const FieldParams f = build_field(1);
  Rng rng(8);
  const auto [gens, c] = random_conjugate(f, rng);
  GroupHandle group(f, gens, 1);
  RecognitionOutput out = conjugator(group);
  out.g = out.g * gen_M(f.primitive()) * gen_T(f);
  CHECK(!verify_recognition(out));
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("default") == Strategy::Default);
  CHECK(parse_strategy("factored") == Strategy::Factored);
  CHECK(std::string(to_string(Strategy::Factored)) == "factored");
  CHECK_THROWS_AS(parse_strategy("fast"), std::invalid_argument);
  CHECK(default_order4_cap(build_field(1)) == 128);
  CHECK(default_order4_cap(build_field(2)) == 192);
}

}  // TEST_SUITE
