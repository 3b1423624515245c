#pragma once

// Product replacement with an accumulator ("rattle"): random elements of a
// matrix group together with straight-line programs in its generators.

#include <span>
#include <vector>

#include "suzuki/slp.hpp"

namespace suzuki {

struct PrOptions {
  /// 0 selects max(10, |gens| + 5).
  std::size_t slots = 0;
  int burn_in = 100;
  /// With false, draws carry empty programs (for long statistical runs).
  bool track_slps = true;
};

/// Single-owner mutable state; use one oracle per thread.
class PrOracle {
 public:
  /// Throws std::invalid_argument for an empty list and MatrixError for a
  /// singular generator.
  PrOracle(std::vector<Mat4> gens, std::uint64_t seed, PrOptions options = {});

  /// One replacement step, then a snapshot of the accumulator.
  Tracked next();

  const std::vector<Mat4>& generators() const { return gens_; }
  std::span<const Tracked> slots() const { return slots_; }
  const Tracked& accumulator() const { return acc_; }
  std::uint64_t draws() const { return draws_; }
  const PrOptions& options() const { return options_; }

 private:
  void step();

  std::vector<Mat4> gens_;
  PrOptions options_;
  Rng rng_;
  std::vector<Tracked> slots_;
  Tracked acc_;
  std::uint64_t draws_ = 0;
};

}  // namespace suzuki
