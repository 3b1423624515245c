#pragma once

// Constructive recognition of a conjugate G = <X> of the standard copy:
// an element of order 4 from trace-zero elements, a point-stabiliser pair,
// and a conjugating matrix g with G^g = Sigma.

#include <array>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "suzuki/randgen.hpp"
#include "suzuki/szstd.hpp"

namespace suzuki {

enum class Strategy { Default, Factored };
const char* to_string(Strategy s);
/// "default" or "factored"; throws std::invalid_argument otherwise.
Strategy parse_strategy(const std::string& text);

struct RecogStats {
  std::uint64_t random_draws = 0;
  std::uint64_t dlog_calls = 0;
  double dlog_seconds = 0;
  std::uint64_t order4_iterations = 0;
  std::uint64_t order4_retry_g = 0;
  std::uint64_t order4_retry_h = 0;
  std::uint64_t bray_iterations = 0;
  std::uint64_t stabilizer_restarts = 0;
  std::uint64_t conjugator_restarts = 0;
  double total_seconds = 0;
};

struct RecogOptions {
  Strategy strategy = Strategy::Default;
  /// Order-4 search iterations per order4_element call; 0 selects
  /// 64 * ceil(log2 log2 q).
  std::uint64_t order4_cap = 0;
  /// Iterations of each later randomised stage.
  std::uint64_t stage_cap = 1000;
  /// Full restarts of the conjugator after a failed stage or verification.
  std::uint64_t restart_cap = 20;
  PrOptions pr;
};

std::uint64_t default_order4_cap(const FieldParams& field);

/// Raised when a cap is exceeded; carries the counters so far.
class RecognitionFailure : public std::runtime_error {
 public:
  RecognitionFailure(const std::string& what, RecogStats stats)
      : std::runtime_error(what), stats_(stats) {}
  const RecogStats& stats() const { return stats_; }

 private:
  RecogStats stats_;
};

/// The input group with its random element oracle and counters.
class GroupHandle {
 public:
  GroupHandle(const FieldParams& field, std::vector<Mat4> gens, std::uint64_t seed,
              PrOptions pr = {});

  const FieldParams& field() const { return field_; }
  const std::vector<Mat4>& gens() const { return oracle_.generators(); }
  /// Input generator i with the program `G i`.
  Tracked gen(std::size_t i) const;
  Tracked random();
  Rng& rng() { return rng_; }
  RecogStats& stats() { return stats_; }
  const RecogStats& stats() const { return stats_; }

  /// discrete_log behind the call counter and timer.
  std::optional<std::uint64_t> dlog(Fq base, Fq target);

 private:
  FieldParams field_;
  PrOracle oracle_;
  Rng rng_;
  RecogStats stats_;
};

/// Roots r of a x^2 y^2 + b x^2 y + c y + d = 0 with y = r^t, or the
/// degenerate signal for a = b = c = d = 0.
struct TraceSolutions {
  bool degenerate = false;
  std::vector<Fq> roots;  // sorted, distinct, nonzero
};

TraceSolutions solve_trace_system(const std::array<Fq, 4>& diag, const FieldParams& field,
                                  Rng& rng);

/// The quartic in y obtained by eliminating x between the trace equation and
/// its twist; zero exactly when a = b = 0 or c = d = 0.
UPoly trace_quartic(const std::array<Fq, 4>& diag);

/// B^-1 u B == u^-1.
bool check_inverts(const Mat4& u, const Mat4& b);

/// Why an order-4 search iteration stopped: redraw g, or keep g and redraw h.
enum class Order4Failure { RetryG, RetryH };

/// A torus element g (as a program) together with its diagonalisation.
struct TorusState {
  Tracked g;
  TorusDiagonalisation diag;
};

/// One iteration of the order-4 search. Draws g first when `state` is empty and
/// clears it again on RetryG.
std::variant<Tracked, Order4Failure> order4_attempt(GroupHandle& group, Strategy strategy,
                                                     std::optional<TorusState>& state);

/// Iterates order4_attempt under the retry policy until f^4 = I != f^2.
/// Throws RecognitionFailure after `cap` iterations (0 = default cap).
Tracked order4_element(GroupHandle& group, Strategy strategy, std::uint64_t cap = 0);

/// An involution j in C(f2), j != f2.
Tracked bray_centraliser_involution(GroupHandle& group, const Tracked& f2,
                                    std::uint64_t cap = 1000);

struct StabilizerPair {
  Tracked h;
  Tracked j;  // the involution with j^h = f^2
};

/// h with j^h = f^2 of odd order and h^(a_p) != I, so that <f, h> contains
/// the unipotent radical of the stabiliser of the point fixed by f.
StabilizerPair stabilizer_pair(GroupHandle& group, const Tracked& f, std::uint64_t cap = 1000);

/// 2^(n/p) - 1 for each prime p dividing n = 2m+1.
std::vector<u128> subfield_exponents(const FieldParams& field);

/// s with w K(s) w^T = K(s), K(s) = antidiag(1, s, s, 1), for w = w1^k and
/// w2^k. Throws MatrixError if there is no nontrivial equation, if the
/// equations disagree, or if s = 0.
Fq solve_form_scalar(const Mat4& k, const Mat4& w1, const Mat4& w2);

struct RewritingGenerators {
  Tracked alpha;  // order 4, alpha^g in F
  Tracked h;      // odd order, h^g in FH
  Tracked gamma;  // involution, gamma^g = T
};

struct RecognitionOutput {
  FieldParams field;
  std::vector<Mat4> gens;
  Mat4 g;
  RewritingGenerators rw;
  RecogStats stats;
};

/// Full recognition with Las Vegas restarts. Throws RecognitionFailure.
RecognitionOutput conjugator(GroupHandle& group, const RecogOptions& options = {});

/// The postconditions on an output: every generator conjugates into Sigma,
/// gamma^g = T, alpha^g = U(a, b) with a != 0 and h^g in FH, and the programs
/// evaluate to their matrices.
bool verify_recognition(const RecognitionOutput& out);

std::string serialize(const RecognitionOutput& out);
/// Inverse of serialize; matrices of the rewriting generators are rebuilt
/// from their programs. Throws std::runtime_error on malformed input.
RecognitionOutput parse_recognition(const std::string& text);

/// Sigma^c for c uniform in GL(4, q); returns (generators, c).
std::pair<std::vector<Mat4>, Mat4> random_conjugate(const FieldParams& field, Rng& rng);

}  // namespace suzuki
