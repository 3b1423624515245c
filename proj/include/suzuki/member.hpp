#pragma once

// Membership testing and rewriting after recognition. Elements are carried
// into the standard copy by g, decomposed, and rebuilt from the images
// f = alpha^g, e = h^g and z = gamma^g = T.

#include <optional>
#include <vector>

#include "suzuki/recog.hpp"

namespace suzuki {

/// Symbols of a rewriting program: f, e, z, i.e. alpha, h, gamma.
inline constexpr std::size_t kSymF = 0;
inline constexpr std::size_t kSymE = 1;
inline constexpr std::size_t kSymZ = 2;

/// Preprocessing that depends on the recognition only. Immutable once built.
struct RewriteTables {
  FieldParams field;
  Mat4 g, g_inv;
  Mat4 e, f, z;
  Fq mu;  // e = M'(mu) U(a2, b2)
  Fq a1;  // f = U(a1, b1)
  /// Rows are the coordinates of mu^(it) a1 and mu^((t+2)i) a1^(t+1).
  BinMat basis_a, basis_b;
  BinMat basis_a_inv, basis_b_inv;
  /// f^(e^i), i = 0..2m, for reading off the second coordinate of j1.
  std::vector<Mat4> f_conjugates;
  /// Programs of alpha, h, gamma in the input generators.
  std::vector<Slp> symbol_slps;
};

/// Throws MatrixError if the output is not of the expected shape and
/// FieldError if a basis matrix is singular (mu lies in a subfield).
RewriteTables precompute_tables(const RecognitionOutput& rec);

/// Program over (f, e) evaluating to U(a, b).
Slp write_unipotent(Fq a, Fq b, const RewriteTables& tables);

/// Program over (f, e, z) evaluating to M'(lambda); throws FieldError for 0.
Slp write_torus(Fq lambda, const RewriteTables& tables);

bool is_member(const Mat4& h, const RewriteTables& tables);

struct Expression {
  Slp rewriting;  // over the symbols (f, e, z)
  Slp in_x;       // rewriting with the symbol programs substituted
  BruhatForm form;
};

/// std::nullopt if h is not in the recognised group.
std::optional<Expression> express(const Mat4& h, const RewriteTables& tables);

/// 5 (10 (2m+1) + 2) + 16.
std::size_t rewriting_length_bound(const FieldParams& field);

}  // namespace suzuki
