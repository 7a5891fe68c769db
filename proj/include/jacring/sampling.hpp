#pragma once

// Seeded random rational classes. Draws are taken straight from mt19937_64
// (no std distributions) so a seed reproduces the same classes everywhere.

#include <cstdint>
#include <random>

#include "jacring/gpb.hpp"

namespace jacring {

class ClassSampler {
 public:
  explicit ClassSampler(std::uint64_t seed) : rng_(seed) {}

  /// Integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
  }

  Rat coefficient() {
    long num = uniform(1, 5) * (uniform(0, 1) ? 1 : -1);
    return Rat(num, uniform(1, 3));
  }

  /// Each monomial present with probability 1/2, nonzero rational coefficient.
  ExtClass ext(unsigned n) {
    ExtClass out(n);
    for (Mask m = 0; m <= full_mask(n); ++m) {
      if (uniform(0, 1)) out.add_term(m, coefficient());
    }
    return out;
  }

  /// Same as ext() restricted to exterior degree k.
  ExtClass ext_homogeneous(unsigned n, unsigned k) {
    ExtClass out(n);
    for (Mask m = 0; m <= full_mask(n); ++m) {
      if (degree_of(m) == k && uniform(0, 1)) out.add_term(m, coefficient());
    }
    return out;
  }

  JacClass jac(const JacContext& ctx) { return JacClass(ext(ctx.rank())); }

  GpbClass gpb(const GpbContext& ctx) {
    return {jac(ctx.jac()), jac(ctx.jac())};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace jacring
