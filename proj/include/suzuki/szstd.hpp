#pragma once

// The standard copy of Sz(q): generators U(a,b), M'(l), T, the Suzuki ovoid,
// and the decomposition Sz(q) = FH u FHTF used for membership testing.

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "suzuki/mat4.hpp"

namespace suzuki {

Mat4 gen_U(Fq a, Fq b);
/// M'(l); throws FieldError for l = 0.
Mat4 gen_M(Fq lambda);
Mat4 gen_T(const FieldParams& field);

/// U(a,b)^-1 = U(a, b + a^(t+1)).
Mat4 gen_U_inverse(Fq a, Fq b);

/// (U(1,0), M'(w), T) with w the primitive element of the field.
std::array<Mat4, 3> standard_generators(const FieldParams& field);

/// Normalised projective point of the ovoid: (1:0:0:0) or (a^(t+2)+ab+b^t : b : a : 1).
struct OvoidPoint {
  Vec4 coords;
  friend bool operator==(const OvoidPoint&, const OvoidPoint&) = default;
};

OvoidPoint ovoid_point(Fq a, Fq b);
OvoidPoint ovoid_infinity(const FieldParams& field);
/// Exact membership of the projective point <v>; throws for v = 0.
bool is_on_ovoid(const Vec4& v);
/// Scales v so the last nonzero coordinate is one.
Vec4 normalize_projective(const Vec4& v);

/// h = M'(l) U(c,d).
struct InFH {
  Fq lambda, c, d;
  friend bool operator==(const InFH&, const InFH&) = default;
};
/// h = M'(l) U(c,d) T U(a,b).
struct InFHTF {
  Fq lambda, c, d, a, b;
  friend bool operator==(const InFHTF&, const InFHTF&) = default;
};
using BruhatForm = std::variant<InFH, InFHTF>;

/// Rebuilds the matrix a decomposition describes.
Mat4 evaluate(const BruhatForm& form, const FieldParams& field);

/// Decomposes h along the partition FH u FHTF in O(1) field operations;
/// std::nullopt means h is not in the standard copy.
std::optional<BruhatForm> sigma_decompose(const Mat4& h, const FieldParams& field);
bool sigma_membership(const Mat4& h, const FieldParams& field);

/// Uniform element of the standard copy, sampled through the partition.
Mat4 random_sigma_element(const FieldParams& field, Rng& rng);
BruhatForm random_bruhat_form(const FieldParams& field, Rng& rng);

/// |Sz(q)| = q^2 (q^2+1) (q-1).
u128 sz_order(const FieldParams& field);

/// `FH l c d` or `FHTF l c d a b`, hex entries.
std::string to_string(const BruhatForm& form);
BruhatForm parse_bruhat_form(const FieldParams& field, const std::string& text);

/// Calls `visit(form)` on every decomposition, i.e. every element of Sz(q).
/// Intended for q = 8 exhaustive checks.
template <class Visitor>
void for_each_bruhat_form(const FieldParams& field, Visitor&& visit) {
  const std::uint64_t q = field.q();
  for (std::uint64_t l = 1; l < q; ++l) {
    for (std::uint64_t c = 0; c < q; ++c) {
      for (std::uint64_t d = 0; d < q; ++d) {
        const Fq lambda = field.element(l), cc = field.element(c), dd = field.element(d);
        visit(BruhatForm{InFH{lambda, cc, dd}});
        for (std::uint64_t a = 0; a < q; ++a) {
          for (std::uint64_t b = 0; b < q; ++b) {
            visit(BruhatForm{InFHTF{lambda, cc, dd, field.element(a), field.element(b)}});
          }
        }
      }
    }
  }
}

}  // namespace suzuki
