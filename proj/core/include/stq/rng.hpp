#pragma once

#include <array>
#include <cstdint>

namespace stq {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output block is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Random stream for one Monte-Carlo sample. Every value is keyed by
/// (seed, sample index, draw number), so streams of different samples never
/// overlap and the values do not depend on evaluation order or threads.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t sample_index);

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal (Box–Muller on consecutive uniforms).
  double normal();

 private:
  void refill();

  Philox4x32::Key key_{};
  std::uint64_t sample_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buf_{};
  int used_ = 4;  // 32-bit words consumed from buf_
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stq
