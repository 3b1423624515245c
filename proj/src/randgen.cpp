#include "suzuki/randgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace suzuki {

PrOracle::PrOracle(std::vector<Mat4> gens, std::uint64_t seed, PrOptions options)
    : gens_(std::move(gens)), options_(options), rng_(seed) {
  if (gens_.empty()) throw std::invalid_argument("product replacement needs at least one generator");
  for (const Mat4& x : gens_) {
    if (x.det().is_zero()) throw MatrixError("singular generator");
  }
  const std::size_t count =
      options_.slots ? options_.slots : std::max<std::size_t>(10, gens_.size() + 5);
  if (count < 2) throw std::invalid_argument("product replacement needs at least two slots");
  slots_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = i % gens_.size();
    slots_.push_back({gens_[k], options_.track_slps ? Slp::generator(k) : Slp{}});
  }
  const Mat4 id = gens_[0] * gens_[0].inverse();
  acc_ = {id, options_.track_slps ? Slp::identity() : Slp{}};
  for (int i = 0; i < options_.burn_in; ++i) step();
}

void PrOracle::step() {
  const std::size_t n = slots_.size();
  const std::size_t i = rng_.below(n);
  std::size_t j = rng_.below(n - 1);
  if (j >= i) ++j;
  const Tracked other = rng_.coin() ? inverse(slots_[j]) : slots_[j];
  slots_[i] = rng_.coin() ? slots_[i] * other : other * slots_[i];
  acc_ = acc_ * slots_[rng_.below(n)];
}

Tracked PrOracle::next() {
  step();
  ++draws_;
  return acc_;
}

}  // namespace suzuki
