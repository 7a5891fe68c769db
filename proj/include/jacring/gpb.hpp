#pragma once

// The P^1-bundle P -> J over the Jacobian of the normalization. Classes are
// pairs (base, hpart) standing for pi^*base + H . pi^*hpart, with
// H = c_1(O_P(1)) subject to H^2 = pi^*twist . H. Classes on P x P carry four
// J x J components on 1, H1, H2, H1 H2.

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "jacring/jacobian.hpp"

namespace jacring {

/// Which rule set to use for the extended multiplication maps and the
/// extended Pontryagin product. kGeometric follows the fibrewise extension
/// a -> a^n and the blow-up resolution of the group law; kPaper applies the
/// eigenvalue and compatibility laws componentwise.
enum class Preset { kGeometric, kPaper };

inline std::string to_string(Preset p) {
  return p == Preset::kGeometric ? "geometric" : "paper";
}

inline Preset parse_preset(const std::string& s) {
  if (s == "geometric") return Preset::kGeometric;
  if (s == "paper") return Preset::kPaper;
  throw RangeError("unknown preset '" + s + "' (expected geometric or paper)");
}

class GpbClass {
 public:
  GpbClass() = default;
  GpbClass(JacClass base, JacClass hpart) : base_(std::move(base)), hpart_(std::move(hpart)) {
    base_.value().same_shape(hpart_.value());
  }

  const JacClass& base() const { return base_; }
  const JacClass& hpart() const { return hpart_; }
  bool is_zero() const { return base_.is_zero() && hpart_.is_zero(); }

  GpbClass& operator+=(const GpbClass& o) {
    base_ += o.base_;
    hpart_ += o.hpart_;
    return *this;
  }
  GpbClass& operator-=(const GpbClass& o) {
    base_ -= o.base_;
    hpart_ -= o.hpart_;
    return *this;
  }
  friend GpbClass operator+(GpbClass a, const GpbClass& b) { return a += b; }
  friend GpbClass operator-(GpbClass a, const GpbClass& b) { return a -= b; }
  friend GpbClass operator-(const GpbClass& a) { return GpbClass(-a.base_, -a.hpart_); }
  friend GpbClass operator*(const Rat& s, const GpbClass& a) {
    return GpbClass(s * a.base_, s * a.hpart_);
  }
  friend bool operator==(const GpbClass& a, const GpbClass& b) {
    return a.base_ == b.base_ && a.hpart_ == b.hpart_;
  }

 private:
  JacClass base_;
  JacClass hpart_;
};

/// c00 + H1 c10 + H2 c01 + H1 H2 c11 on P x P.
struct GpbProductClass {
  ProductClass c00, c10, c01, c11;

  bool is_zero() const {
    return c00.is_zero() && c10.is_zero() && c01.is_zero() && c11.is_zero();
  }
  GpbProductClass& operator+=(const GpbProductClass& o) {
    c00 += o.c00;
    c10 += o.c10;
    c01 += o.c01;
    c11 += o.c11;
    return *this;
  }
  GpbProductClass& operator-=(const GpbProductClass& o) {
    c00 -= o.c00;
    c10 -= o.c10;
    c01 -= o.c01;
    c11 -= o.c11;
    return *this;
  }
  friend GpbProductClass operator+(GpbProductClass a, const GpbProductClass& b) { return a += b; }
  friend GpbProductClass operator-(GpbProductClass a, const GpbProductClass& b) { return a -= b; }
  friend GpbProductClass operator*(const Rat& s, const GpbProductClass& a) {
    return {s * a.c00, s * a.c10, s * a.c01, s * a.c11};
  }
  friend bool operator==(const GpbProductClass& a, const GpbProductClass& b) {
    return a.c00 == b.c00 && a.c10 == b.c10 && a.c01 == b.c01 && a.c11 == b.c11;
  }
};

struct ExtPoincare {
  GpbProductClass kernel;
  GpbProductClass exp;
};

class GpbContext {
 public:
  explicit GpbContext(unsigned genus) : GpbContext(JacContext(genus)) {}

  /// twist: H^2 = pi^*twist . H. section_shift: S_y = H + pi^*section_shift.
  /// Both must be zero or of pure exterior degree 2.
  explicit GpbContext(JacContext jac, std::optional<JacClass> twist = std::nullopt,
                      std::optional<JacClass> section_shift = std::nullopt)
      : jac_(std::move(jac)),
        twist_(twist.value_or(jac_.zero())),
        shift_(section_shift.value_or(jac_.zero())),
        cache_(std::make_shared<Cache>()) {
    check_divisor(twist_, "twist");
    check_divisor(shift_, "section_shift");
  }

  const JacContext& jac() const { return jac_; }
  unsigned genus() const { return jac_.genus(); }
  const JacClass& twist() const { return twist_; }
  const JacClass& section_shift() const { return shift_; }

  GpbClass zero() const { return {jac_.zero(), jac_.zero()}; }
  GpbClass one() const { return {jac_.one(), jac_.zero()}; }

  void check(const GpbClass& x) const {
    jac_.check(x.base());
    jac_.check(x.hpart());
  }

  /// Monomial basis: all pi^*e_S, then all H . pi^*e_S.
  std::vector<GpbClass> basis() const {
    std::vector<GpbClass> out;
    for (const auto& b : jac_.basis()) out.emplace_back(b, jac_.zero());
    for (const auto& h : jac_.basis()) out.emplace_back(jac_.zero(), h);
    return out;
  }

  const ExtPoincare& ext_poincare() const;

 private:
  void check_divisor(const JacClass& c, const char* what) const {
    jac_.check(c);
    auto deg = c.value().homogeneous_degree();
    if (!c.is_zero() && deg != 2U) {
      throw RangeError(std::string("GpbContext: ") + what + " must be a codimension-1 class");
    }
  }

  struct Cache {
    std::mutex mu;
    std::optional<ExtPoincare> ext_poincare;
  };

  JacContext jac_;
  JacClass twist_;
  JacClass shift_;
  std::shared_ptr<Cache> cache_;
};

inline GpbClass h_class(const GpbContext& ctx) {
  return {ctx.jac().zero(), ctx.jac().one()};
}

inline GpbClass sy_class(const GpbContext& ctx) {
  return {ctx.section_shift(), ctx.jac().one()};
}

/// The complementary section, S_z = H - pi^*(twist + section_shift), chosen
/// so that (S_y - S_z) = pi^*(twist + 2 shift) and S_y S_z has no H-part.
inline GpbClass sz_class(const GpbContext& ctx) {
  return {-(ctx.twist() + ctx.section_shift()), ctx.jac().one()};
}

inline GpbClass pi_pullback(const GpbContext& ctx, const JacClass& x) {
  ctx.jac().check(x);
  return {x, ctx.jac().zero()};
}

/// Fibre integration: the P^1 integral of H is 1, of 1 is 0.
inline JacClass pi_pushforward(const GpbContext& ctx, const GpbClass& x) {
  ctx.check(x);
  return x.hpart();
}

inline GpbClass gpb_mul(const GpbContext& ctx, const GpbClass& x, const GpbClass& y) {
  ctx.check(x);
  ctx.check(y);
  JacClass base = wedge(x.base(), y.base());
  JacClass hpart = wedge(x.base(), y.hpart()) + wedge(x.hpart(), y.base());
  if (!ctx.twist().is_zero()) {
    hpart += wedge(ctx.twist(), wedge(x.hpart(), y.hpart()));
  }
  return {std::move(base), std::move(hpart)};
}

inline Rat gpb_integrate(const GpbContext& ctx, const GpbClass& x) {
  return integrate_top(pi_pushforward(ctx, x).value());
}

inline Rat gpb_pair(const GpbContext& ctx, const GpbClass& x, const GpbClass& y) {
  return gpb_integrate(ctx, gpb_mul(ctx, x, y));
}

/// Extended Brill-Noether class: wtilde(d) = pi^*W_{g-d} . S_y + pi^*W_{g-d-1}.
/// wtilde(0) is the extended theta divisor S_y + pi^*W_{g-1}.
inline GpbClass wtilde(const GpbContext& ctx, int d) {
  const int g = static_cast<int>(ctx.genus());
  if (d < 0 || d > g) {
    throw RangeError("wtilde: index " + std::to_string(d) + " outside 0.." + std::to_string(g));
  }
  return gpb_mul(ctx, pi_pullback(ctx, w_class(ctx.jac(), g - d)), sy_class(ctx)) +
         pi_pullback(ctx, w_class(ctx.jac(), g - d - 1));
}

inline GpbClass ext_mult_pullback(const GpbContext& ctx, long n, const GpbClass& x,
                                  Preset preset) {
  ctx.check(x);
  const JacContext& jac = ctx.jac();
  // Fibrewise a -> a^n pulls the section divisor back with multiplicity |n|.
  Rat hscale = preset == Preset::kGeometric ? Rat(n < 0 ? -n : n) : Rat(n) * Rat(n);
  return {mult_pullback(jac, n, x.base()), hscale * mult_pullback(jac, n, x.hpart())};
}

inline GpbClass ext_mult_pushforward(const GpbContext& ctx, long n, const GpbClass& x,
                                     Preset preset) {
  ctx.check(x);
  const JacContext& jac = ctx.jac();
  if (preset == Preset::kGeometric) {
    Rat fibre_degree(n < 0 ? -n : n);
    return {fibre_degree * mult_pushforward(jac, n, x.base()), mult_pushforward(jac, n, x.hpart())};
  }
  if (n == 0) throw RangeError("ext_mult_pushforward: n = 0 undefined under the paper preset");
  return {mult_pushforward(jac, n, x.base()),
          (Rat(1) / (Rat(n) * Rat(n))) * mult_pushforward(jac, n, x.hpart())};
}

inline GpbProductClass pi_pi_pullback(const GpbContext& ctx, const ProductClass& z) {
  ctx.jac().check(z);
  ProductClass zero = ctx.jac().product_zero();
  return {z, zero, zero, zero};
}

/// Pullback along the first projection P x P -> P.
inline GpbProductClass gpb_pullback_first(const GpbContext& ctx, const GpbClass& x) {
  ctx.check(x);
  const JacContext& jac = ctx.jac();
  ProductClass zero = jac.product_zero();
  return {pullback(jac, Projection::kFirst, x.base()),
          pullback(jac, Projection::kFirst, x.hpart()), zero, zero};
}

/// Pullback along the second projection P x P -> P.
inline GpbProductClass gpb_pullback_second(const GpbContext& ctx, const GpbClass& x) {
  ctx.check(x);
  const JacContext& jac = ctx.jac();
  ProductClass zero = jac.product_zero();
  return {pullback(jac, Projection::kSecond, x.base()), zero,
          pullback(jac, Projection::kSecond, x.hpart()), zero};
}

inline GpbProductClass gpb_product_mul(const GpbContext& ctx, const GpbProductClass& x,
                                       const GpbProductClass& y) {
  const JacContext& jac = ctx.jac();
  auto w = [](const ProductClass& a, const ProductClass& b) { return wedge(a, b); };
  GpbProductClass out{w(x.c00, y.c00),
                      w(x.c00, y.c10) + w(x.c10, y.c00),
                      w(x.c00, y.c01) + w(x.c01, y.c00),
                      w(x.c00, y.c11) + w(x.c11, y.c00) + w(x.c10, y.c01) + w(x.c01, y.c10)};
  if (!ctx.twist().is_zero()) {
    // H1^2 = a1 H1, H2^2 = a2 H2.
    ProductClass a1 = pullback(jac, Projection::kFirst, ctx.twist());
    ProductClass a2 = pullback(jac, Projection::kSecond, ctx.twist());
    out.c10 += w(a1, w(x.c10, y.c10));
    out.c01 += w(a2, w(x.c01, y.c01));
    out.c11 += w(a1, w(x.c10, y.c11) + w(x.c11, y.c10)) +
               w(a2, w(x.c01, y.c11) + w(x.c11, y.c01)) +
               w(a1, w(a2, w(x.c11, y.c11)));
  }
  return out;
}

inline GpbProductClass gpb_product_exp(const GpbContext& ctx, const GpbProductClass& x) {
  if (!x.c00.value().coeff(0).is_zero()) {
    throw RangeError("gpb_product_exp: class has a nonzero constant term");
  }
  const JacContext& jac = ctx.jac();
  ProductClass zero = jac.product_zero();
  GpbProductClass one{ProductClass(ExtClass::unit(jac.product_rank())), zero, zero, zero};
  GpbProductClass out = one;
  GpbProductClass power = one;
  for (unsigned k = 1; k <= jac.product_rank() + 2; ++k) {
    power = (Rat(1) / Rat(static_cast<long>(k))) * gpb_product_mul(ctx, power, x);
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

/// Pushforward along the second projection P x P -> P: take the H1
/// coefficient, then integrate out the first J factor.
inline GpbClass gpb_pushforward_second(const GpbContext& ctx, const GpbProductClass& z) {
  const JacContext& jac = ctx.jac();
  return {pushforward(jac, Projection::kSecond, z.c10),
          pushforward(jac, Projection::kSecond, z.c11)};
}

/// f_* m~^* on classes of codimension at most one, where m~ resolves the
/// rational group law on P x P. Pulled back base divisors follow m^*, the
/// section S_y goes to p^*S_y + q^*S_y.
inline GpbProductClass fm_pullpush(const GpbContext& ctx, const GpbClass& x) {
  ctx.check(x);
  for (unsigned k : x.base().value().degrees()) {
    if (k > 2) {
      throw UnsupportedClassError(
          "fm_pullpush: only classes of codimension <= 1 are supported");
    }
  }
  for (unsigned k : x.hpart().value().degrees()) {
    if (k > 0) {
      throw UnsupportedClassError(
          "fm_pullpush: only classes of codimension <= 1 are supported");
    }
  }
  const JacContext& jac = ctx.jac();
  // x = pi^*b + c H = pi^*(b - c shift) + c S_y
  Rat c = x.hpart().value().coeff(0);
  JacClass base = x.base() - c * ctx.section_shift();
  GpbProductClass out = pi_pi_pullback(ctx, pullback(jac, Projection::kSum, base));
  if (!c.is_zero()) {
    GpbClass sy = sy_class(ctx);
    out += c * (gpb_pullback_first(ctx, sy) + gpb_pullback_second(ctx, sy));
  }
  return out;
}

inline const ExtPoincare& GpbContext::ext_poincare() const {
  std::lock_guard lock(cache_->mu);
  if (!cache_->ext_poincare) {
    GpbClass theta = wtilde(*this, 0);
    GpbProductClass kernel = gpb_pullback_first(*this, theta) +
                             gpb_pullback_second(*this, theta) - fm_pullpush(*this, theta);
    GpbProductClass e = gpb_product_exp(*this, kernel);
    cache_->ext_poincare = ExtPoincare{std::move(kernel), std::move(e)};
  }
  return *cache_->ext_poincare;
}

/// Extended Poincare class p^*Wt_g + q^*Wt_g - f_* m~^* Wt_g and its exponential.
inline const ExtPoincare& ext_poincare_kernel(const GpbContext& ctx) { return ctx.ext_poincare(); }

/// F~ x = q_*(p^*x . exp(l~)), evaluated literally on the P x P model.
inline GpbClass ext_fourier(const GpbContext& ctx, const GpbClass& x) {
  GpbProductClass integrand =
      gpb_product_mul(ctx, gpb_pullback_first(ctx, x), ext_poincare_kernel(ctx).exp);
  return gpb_pushforward_second(ctx, integrand);
}

/// Extended Pontryagin product as a rule table on the (base, hpart) split.
///   geometric: (H x)*(H y) = H (x*y); every other combination vanishes.
///   paper:     (x)*(y) = (x)*(H y) = (H x)*(y) = x*y; (H x)*(H y) = H (x*y).
inline GpbClass ext_pontryagin(const GpbContext& ctx, const GpbClass& x, const GpbClass& y,
                               Preset preset) {
  ctx.check(x);
  ctx.check(y);
  const JacContext& jac = ctx.jac();
  JacClass hh = pontryagin(jac, x.hpart(), y.hpart());
  if (preset == Preset::kGeometric) return {jac.zero(), std::move(hh)};
  JacClass base = pontryagin(jac, x.base(), y.base()) + pontryagin(jac, x.base(), y.hpart()) +
                  pontryagin(jac, x.hpart(), y.base());
  return {std::move(base), std::move(hh)};
}

/// Cohomological degrees present in x (H contributes 2), ascending.
inline std::vector<unsigned> gpb_degrees(const GpbClass& x) {
  std::vector<unsigned> out = x.base().value().degrees();
  for (unsigned k : x.hpart().value().degrees()) out.push_back(k + 2);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::optional<unsigned> gpb_homogeneous_degree(const GpbClass& x) {
  auto ds = gpb_degrees(x);
  if (ds.size() != 1) return std::nullopt;
  return ds.front();
}

/// Component of cohomological degree k.
inline GpbClass gpb_part(const GpbClass& x, unsigned k) {
  JacClass base(x.base().value().part(k));
  JacClass hpart = k >= 2 ? JacClass(x.hpart().value().part(k - 2))
                          : JacClass(ExtClass(x.hpart().value().generator_count()));
  return {std::move(base), std::move(hpart)};
}

inline RatVector to_vector(const GpbContext& ctx, const GpbClass& x) {
  const std::size_t offset = std::size_t{1} << ctx.jac().rank();
  RatVector v;
  for (const auto& [m, c] : x.base().value().terms()) v.emplace(m, c);
  for (const auto& [m, c] : x.hpart().value().terms()) v.emplace(offset + m, c);
  return v;
}

inline GpbClass from_vector(const GpbContext& ctx, const RatVector& v) {
  const std::size_t offset = std::size_t{1} << ctx.jac().rank();
  ExtClass base(ctx.jac().rank()), hpart(ctx.jac().rank());
  for (const auto& [i, c] : v) {
    if (i < offset) {
      base.add_term(static_cast<Mask>(i), c);
    } else {
      hpart.add_term(static_cast<Mask>(i - offset), c);
    }
  }
  return {JacClass(std::move(base)), JacClass(std::move(hpart))};
}

}  // namespace jacring
