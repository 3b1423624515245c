#include "suzuki/member.hpp"

namespace suzuki {

namespace {

Mat4 pull(const Mat4& x, const RewriteTables& tables) { return tables.g_inv * x * tables.g; }

// Nodes shared by every unipotent word of one program.
struct Symbols {
  Slp f, f2, e_inv, e_top, z;

  explicit Symbols(int n)
      : f(Slp::generator(kSymF)),
        f2(f.pow(2)),
        e_inv(Slp::generator(kSymE).inverse()),
        e_top(Slp::generator(kSymE).pow(static_cast<u128>(n - 1))),
        z(Slp::generator(kSymZ)) {}
};

// Product with the empty program standing for the identity.
Slp join(const Slp& a, const Slp& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a * b;
}

// f^(n0) e^-1 f^(n1) e^-1 ... e^-1 f^(n_2m) e^(2m), the product of the
// conjugates base^(e^i) over the set bits i of `bits`.
Slp conjugate_word(const Slp& base, std::uint64_t bits, const Symbols& s, int n) {
  if (!bits) return {};
  Slp word;
  for (int i = 0; i < n; ++i) {
    if (i > 0) word = join(word, s.e_inv);
    if ((bits >> i) & 1U) word = join(word, base);
  }
  return join(word, s.e_top);
}

// Empty for U(0, 0).
Slp unipotent_word(Fq a, Fq b, const RewriteTables& tables, const Symbols& s) {
  const int n = tables.field.n();
  const std::uint64_t na = tables.basis_a_inv.left_apply(a.bits());
  Mat4 j1 = Mat4::identity(tables.field);
  for (int i = 0; i < n; ++i) {
    if ((na >> i) & 1U) j1 *= tables.f_conjugates[static_cast<std::size_t>(i)];
  }
  const Fq beta = b + j1(3, 1);
  const std::uint64_t nb = tables.basis_b_inv.left_apply(beta.bits());
  return join(conjugate_word(s.f, na, s, n), conjugate_word(s.f2, nb, s, n));
}

Slp torus_word(Fq lambda, const RewriteTables& tables, const Symbols& s) {
  if (lambda.is_zero()) throw FieldError("M'(0) is not defined");
  const Fq half = lambda.half_twist();
  const Fq half_inv = half.inverse();
  const Fq zero = tables.field.zero();
  Slp w = join(s.z, unipotent_word(zero, lambda * half, tables, s));
  w = join(join(w, s.z), unipotent_word(half_inv, lambda.inverse() * half_inv, tables, s));
  w = join(join(w, s.z), unipotent_word(half, zero, tables, s));
  return w;
}

Slp or_identity(Slp w) { return w.empty() ? Slp::identity() : w; }

}  // namespace

RewriteTables precompute_tables(const RecognitionOutput& rec) {
  RewriteTables t;
  t.field = rec.field;
  const FieldParams& field = t.field;
  t.g = rec.g;
  t.g_inv = rec.g.inverse();
  t.f = pull(rec.rw.alpha.mat, t);
  t.e = pull(rec.rw.h.mat, t);
  t.z = pull(rec.rw.gamma.mat, t);

  t.a1 = t.f(1, 0);
  if (t.a1.is_zero() || t.f != gen_U(t.a1, t.f(3, 1))) throw MatrixError("alpha^g is not in F");
  const auto form = sigma_decompose(t.e, field);
  if (!form || !std::holds_alternative<InFH>(*form)) throw MatrixError("h^g is not in FH");
  t.mu = std::get<InFH>(*form).lambda;
  if (t.z != gen_T(field)) throw MatrixError("gamma^g differs from T");

  const int n = field.n();
  const Fq step_a = t.mu.twist();
  const Fq step_b = step_a * t.mu.square();
  Fq row_a = t.a1;
  Fq row_b = t.a1.twist() * t.a1;
  t.basis_a = BinMat(n, n);
  t.basis_b = BinMat(n, n);
  for (int i = 0; i < n; ++i) {
    t.basis_a.set_row(i, row_a.bits());
    t.basis_b.set_row(i, row_b.bits());
    row_a *= step_a;
    row_b *= step_b;
  }
  t.basis_a_inv = bin_invert(t.basis_a);
  t.basis_b_inv = bin_invert(t.basis_b);

  const Mat4 e_inv = t.e.inverse();
  Mat4 conj = t.f;
  for (int i = 0; i < n; ++i) {
    t.f_conjugates.push_back(conj);
    conj = e_inv * conj * t.e;
  }
  t.symbol_slps = {rec.rw.alpha.slp, rec.rw.h.slp, rec.rw.gamma.slp};
  return t;
}

Slp write_unipotent(Fq a, Fq b, const RewriteTables& tables) {
  return or_identity(unipotent_word(a, b, tables, Symbols(tables.field.n())));
}

Slp write_torus(Fq lambda, const RewriteTables& tables) {
  return or_identity(torus_word(lambda, tables, Symbols(tables.field.n())));
}

bool is_member(const Mat4& h, const RewriteTables& tables) {
  return sigma_membership(pull(h, tables), tables.field);
}

std::optional<Expression> express(const Mat4& h, const RewriteTables& tables) {
  auto form = sigma_decompose(pull(h, tables), tables.field);
  if (!form) return std::nullopt;
  const Symbols s(tables.field.n());
  Slp word = std::visit(
      [&](const auto& x) {
        Slp w = join(torus_word(x.lambda, tables, s), unipotent_word(x.c, x.d, tables, s));
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, InFHTF>) {
          w = join(join(w, s.z), unipotent_word(x.a, x.b, tables, s));
        }
        return or_identity(std::move(w));
      },
      *form);
  Slp in_x = word.substitute(tables.symbol_slps);
  return Expression{std::move(word), std::move(in_x), *form};
}

std::size_t rewriting_length_bound(const FieldParams& field) {
  return 5 * (10 * static_cast<std::size_t>(field.n()) + 2) + 16;
}

}  // namespace suzuki
