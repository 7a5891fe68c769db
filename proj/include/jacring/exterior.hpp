#pragma once

// Exterior algebra over Q on N ordered degree-1 generators. A basis monomial
// is the wedge of the generators in a subset, written in increasing generator
// order, and is stored as a bit mask.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jacring/error.hpp"
#include "jacring/rational.hpp"

namespace jacring {

using Mask = std::uint32_t;

inline constexpr unsigned kMaxGenerators = 32;

inline constexpr Mask full_mask(unsigned n) {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline unsigned degree_of(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

/// Sign of e_a ^ e_b relative to e_{a|b}: (-1)^{#{(s,t) : s in a, t in b, s > t}}.
/// Returns 0 when the subsets overlap.
inline int koszul_sign(Mask a, Mask b) {
  if (a & b) return 0;
  unsigned inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    unsigned t = static_cast<unsigned>(std::countr_zero(rest));
    Mask above = t + 1 >= 32 ? Mask{0} : ~full_mask(t + 1);
    inversions += degree_of(a & above);
  }
  return (inversions & 1U) ? -1 : 1;
}

class ExtClass {
 public:
  using Terms = std::map<Mask, Rat>;

  explicit ExtClass(unsigned generator_count = 0) : n_(generator_count) {
    if (n_ > kMaxGenerators) throw ShapeError("ExtClass: too many generators");
  }

  static ExtClass scalar(unsigned n, const Rat& c) { return monomial(n, 0, c); }
  static ExtClass unit(unsigned n) { return scalar(n, Rat(1)); }

  static ExtClass monomial(unsigned n, Mask m, const Rat& c = Rat(1)) {
    ExtClass out(n);
    out.add_term(m, c);
    return out;
  }

  static ExtClass generator(unsigned n, unsigned i) {
    if (i >= n) throw RangeError("ExtClass: generator index out of range");
    return monomial(n, Mask{1} << i);
  }

  unsigned generator_count() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rat coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(Mask m, const Rat& c) {
    if (m & ~full_mask(n_)) throw RangeError("ExtClass: subset outside generators");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Homogeneous component of exterior degree k.
  ExtClass part(unsigned k) const {
    ExtClass out(n_);
    for (const auto& [m, c] : terms_) {
      if (degree_of(m) == k) out.terms_.emplace(m, c);
    }
    return out;
  }

  /// Degrees that carry a nonzero component, ascending.
  std::vector<unsigned> degrees() const {
    std::vector<bool> seen(n_ + 1, false);
    for (const auto& [m, c] : terms_) seen[degree_of(m)] = true;
    std::vector<unsigned> out;
    for (unsigned k = 0; k <= n_; ++k) {
      if (seen[k]) out.push_back(k);
    }
    return out;
  }

  /// The single degree of a nonzero homogeneous class; nullopt otherwise.
  std::optional<unsigned> homogeneous_degree() const {
    auto ds = degrees();
    if (ds.size() != 1) return std::nullopt;
    return ds.front();
  }

  ExtClass& operator+=(const ExtClass& o) {
    same_shape(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ExtClass& operator-=(const ExtClass& o) {
    same_shape(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ExtClass& operator*=(const Rat& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend ExtClass operator+(ExtClass a, const ExtClass& b) { return a += b; }
  friend ExtClass operator-(ExtClass a, const ExtClass& b) { return a -= b; }
  friend ExtClass operator-(ExtClass a) { return a *= Rat(-1); }
  friend ExtClass operator*(const Rat& s, ExtClass a) { return a *= s; }
  friend ExtClass operator*(ExtClass a, const Rat& s) { return a *= s; }

  friend bool operator==(const ExtClass& a, const ExtClass& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  void same_shape(const ExtClass& o) const {
    if (o.n_ != n_) {
      throw ShapeError("ExtClass: generator count mismatch (" +
                       std::to_string(n_) + " vs " + std::to_string(o.n_) + ")");
    }
  }

 private:
  unsigned n_;
  Terms terms_;
};

inline ExtClass wedge(const ExtClass& a, const ExtClass& b) {
  a.same_shape(b);
  ExtClass out(a.generator_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = koszul_sign(ma, mb);
      if (s == 0) continue;
      Rat c = ca * cb;
      if (s < 0) c = -c;
      out.add_term(ma | mb, c);
    }
  }
  return out;
}

/// a^k with a^0 = 1.
inline ExtClass wedge_power(const ExtClass& a, unsigned k) {
  ExtClass out = ExtClass::unit(a.generator_count());
  for (unsigned i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

/// exp(a) for a class without degree-0 part (hence nilpotent).
inline ExtClass exp_nilpotent(const ExtClass& a) {
  if (!a.coeff(0).is_zero()) {
    throw RangeError("exp_nilpotent: class has a nonzero constant term");
  }
  ExtClass out = ExtClass::unit(a.generator_count());
  ExtClass power = out;
  for (unsigned k = 1; k <= a.generator_count(); ++k) {
    power = wedge(power, a) * (Rat(1) / Rat(static_cast<long>(k)));
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

/// Applies the algebra homomorphism determined by generator i -> images[i].
/// All images must share one target generator count and be of pure degree 1
/// (zero is allowed).
inline ExtClass induced_map(std::span<const ExtClass> images, const ExtClass& a,
                            unsigned target_count) {
  if (images.size() != a.generator_count()) {
    throw InvalidMapError("induced_map: need one image per source generator");
  }
  for (const auto& img : images) {
    if (img.generator_count() != target_count) {
      throw InvalidMapError("induced_map: image lives in the wrong algebra");
    }
    for (const auto& [m, c] : img.terms()) {
      if (degree_of(m) != 1) {
        throw InvalidMapError("induced_map: generator image is not of degree 1");
      }
    }
  }

  ExtClass out(target_count);
  for (const auto& [m, c] : a.terms()) {
    std::map<Mask, Rat> partial{{Mask{0}, c}};
    for (Mask rest = m; rest && !partial.empty(); rest &= rest - 1) {
      const auto& img = images[static_cast<unsigned>(std::countr_zero(rest))];
      std::map<Mask, Rat> next;
      for (const auto& [pm, pc] : partial) {
        for (const auto& [gm, gc] : img.terms()) {
          int s = koszul_sign(pm, gm);
          if (s == 0) continue;
          Rat v = pc * gc;
          if (s < 0) v = -v;
          auto [it, inserted] = next.try_emplace(pm | gm, v);
          if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) next.erase(it);
          }
        }
      }
      partial = std::move(next);
    }
    for (const auto& [pm, pc] : partial) out.add_term(pm, pc);
  }
  return out;
}

/// Coefficient of the full generator subset in canonical order.
inline Rat integrate_top(const ExtClass& a) {
  return a.coeff(full_mask(a.generator_count()));
}

/// External product on V (+) W: first-factor generators come first, so the
/// concatenated subset is already in canonical order.
inline ExtClass box(const ExtClass& a, const ExtClass& b) {
  const unsigned n = a.generator_count();
  if (n + b.generator_count() > kMaxGenerators) {
    throw ShapeError("box: too many generators");
  }
  ExtClass out(n + b.generator_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      out.add_term(ma | (mb << n), ca * cb);
    }
  }
  return out;
}

/// Pushforward along V (+) W -> W: keeps terms containing every first-factor
/// generator and drops that block.
inline ExtClass fiber_integrate_first(const ExtClass& z, unsigned first_count) {
  if (first_count > z.generator_count()) {
    throw ShapeError("fiber_integrate_first: first factor larger than total");
  }
  const Mask first = full_mask(first_count);
  ExtClass out(z.generator_count() - first_count);
  for (const auto& [m, c] : z.terms()) {
    if ((m & first) == first) out.add_term(m >> first_count, c);
  }
  return out;
}

/// Pushforward along V (+) W -> V: keeps terms containing every second-factor
/// generator and drops that block.
inline ExtClass fiber_integrate_second(const ExtClass& z, unsigned first_count) {
  if (first_count > z.generator_count()) {
    throw ShapeError("fiber_integrate_second: first factor larger than total");
  }
  const Mask first = full_mask(first_count);
  const Mask second = full_mask(z.generator_count()) & ~first;
  ExtClass out(first_count);
  for (const auto& [m, c] : z.terms()) {
    if ((m & second) == second) out.add_term(m & first, c);
  }
  return out;
}

}  // namespace jacring
