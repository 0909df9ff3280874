#pragma once

#include <array>
#include <cstdint>

namespace bssk {

// Philox4x32-10 counter-based generator. A stream is keyed by the root seed
// and addressed by (index, sub); the block counter advances within it.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t sub = 0);

  std::uint64_t next_u64();
  double uniform();  // open interval (0, 1)
  double normal();
  double gamma(double shape);  // unit scale
  double chi2(double dof);
  double chi(double dof);

  Stream split(std::uint32_t sub) const { return Stream(seed_, index_, sub); }

 private:
  void refill();

  std::uint64_t seed_, index_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

}  // namespace bssk
