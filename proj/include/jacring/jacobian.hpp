#pragma once

// Cohomological model of a Jacobian of genus g: the exterior algebra on
// e1,f1,...,eg,fg (generator 2i is e_{i+1}, 2i+1 is f_{i+1}), together with
// the structure maps on J x J, the Fourier transform, the Pontryagin product
// and the multiplication-by-n operators.
//
// Codimension p classes live in exterior degree 2p. The orientation is
// e1^f1^...^eg^fg, for which the integral of theta^g is g!.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacring/exterior.hpp"
#include "jacring/rational.hpp"

namespace jacring {

/// Strongly typed wrapper so classes on J and on J x J cannot be mixed up.
template <class Tag>
class TaggedClass {
 public:
  TaggedClass() = default;
  explicit TaggedClass(ExtClass v) : value_(std::move(v)) {}

  const ExtClass& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  TaggedClass& operator+=(const TaggedClass& o) { value_ += o.value_; return *this; }
  TaggedClass& operator-=(const TaggedClass& o) { value_ -= o.value_; return *this; }

  friend TaggedClass operator+(TaggedClass a, const TaggedClass& b) { return a += b; }
  friend TaggedClass operator-(TaggedClass a, const TaggedClass& b) { return a -= b; }
  friend TaggedClass operator-(const TaggedClass& a) { return TaggedClass(-a.value_); }
  friend TaggedClass operator*(const Rat& s, const TaggedClass& a) {
    return TaggedClass(s * a.value_);
  }
  friend bool operator==(const TaggedClass& a, const TaggedClass& b) {
    return a.value_ == b.value_;
  }

 private:
  ExtClass value_;
};

struct JacTag {};
struct ProductTag {};

/// Class on J (2g generators).
using JacClass = TaggedClass<JacTag>;
/// Class on J x J (4g generators, first copy then second copy).
using ProductClass = TaggedClass<ProductTag>;

inline JacClass wedge(const JacClass& a, const JacClass& b) {
  return JacClass(wedge(a.value(), b.value()));
}
inline ProductClass wedge(const ProductClass& a, const ProductClass& b) {
  return ProductClass(wedge(a.value(), b.value()));
}

enum class Projection { kFirst, kSecond, kSum };

class JacContext {
 public:
  static constexpr unsigned kMaxGenus = kMaxGenerators / 4;

  explicit JacContext(unsigned genus) : genus_(genus), cache_(std::make_shared<Cache>()) {
    if (genus < 1 || genus > kMaxGenus) {
      throw RangeError("JacContext: genus must be in 1.." + std::to_string(kMaxGenus));
    }
    ExtClass theta(rank());
    for (unsigned i = 0; i < genus; ++i) {
      theta.add_term((Mask{1} << (2 * i)) | (Mask{1} << (2 * i + 1)), Rat(1));
    }
    theta_ = JacClass(std::move(theta));
  }

  unsigned genus() const { return genus_; }
  /// Number of degree-1 generators on J.
  unsigned rank() const { return 2 * genus_; }
  /// Number of degree-1 generators on J x J.
  unsigned product_rank() const { return 4 * genus_; }

  const JacClass& theta() const { return theta_; }
  JacClass zero() const { return JacClass(ExtClass(rank())); }
  JacClass one() const { return JacClass(ExtClass::unit(rank())); }
  JacClass point() const { return JacClass(ExtClass::monomial(rank(), full_mask(rank()))); }
  JacClass monomial(Mask m, const Rat& c = Rat(1)) const {
    return JacClass(ExtClass::monomial(rank(), m, c));
  }
  ProductClass product_zero() const { return ProductClass(ExtClass(product_rank())); }

  /// "e1", "f1", "e2", ... for generator index i.
  static std::string generator_name(unsigned i) {
    return std::string(i % 2 == 0 ? "e" : "f") + std::to_string(i / 2 + 1);
  }

  /// Every basis monomial of J, by increasing mask.
  std::vector<JacClass> basis() const {
    std::vector<JacClass> out;
    for (Mask m = 0; m <= full_mask(rank()); ++m) out.push_back(monomial(m));
    return out;
  }

  void check(const JacClass& x) const {
    if (x.value().generator_count() != rank()) {
      throw ShapeError("JacClass does not belong to a genus " + std::to_string(genus_) +
                       " context");
    }
  }
  void check(const ProductClass& z) const {
    if (z.value().generator_count() != product_rank()) {
      throw ShapeError("ProductClass does not belong to a genus " +
                       std::to_string(genus_) + " context");
    }
  }

  /// Poincare class p^*theta + q^*theta - m^*theta on J x J.
  const ProductClass& poincare() const;
  /// exp of the Poincare class.
  const ProductClass& poincare_exp() const;
  /// Classes d_y of degree 2g-k with pair(d_y, y') = delta(y, y') for the
  /// degree-k monomials y (listed by increasing mask).
  const std::vector<std::pair<Mask, JacClass>>& dual_basis(unsigned k) const;

 private:
  struct Cache {
    std::mutex mu;
    std::optional<ProductClass> poincare;
    std::optional<ProductClass> poincare_exp;
    std::map<unsigned, std::vector<std::pair<Mask, JacClass>>> duals;
  };

  unsigned genus_;
  JacClass theta_;
  std::shared_ptr<Cache> cache_;
};

/// Brill-Noether class W_i = theta^{g-i}/(g-i)!, with W_{-1} = 0.
inline JacClass w_class(const JacContext& ctx, int i) {
  const int g = static_cast<int>(ctx.genus());
  if (i == -1) return ctx.zero();
  if (i < -1 || i > g) {
    throw RangeError("w_class: index " + std::to_string(i) + " outside -1.." +
                     std::to_string(g));
  }
  const unsigned k = static_cast<unsigned>(g - i);
  return (Rat(1) / factorial(k)) * JacClass(wedge_power(ctx.theta().value(), k));
}

inline ProductClass pullback(const JacContext& ctx, Projection tag, const JacClass& x) {
  ctx.check(x);
  const unsigned n = ctx.rank();
  std::vector<ExtClass> images;
  images.reserve(n);
  for (unsigned v = 0; v < n; ++v) {
    ExtClass img(2 * n);
    if (tag != Projection::kSecond) img.add_term(Mask{1} << v, Rat(1));
    if (tag != Projection::kFirst) img.add_term(Mask{1} << (n + v), Rat(1));
    images.push_back(std::move(img));
  }
  return ProductClass(induced_map(images, x.value(), 2 * n));
}

/// Pushforward along the first or second projection, or along the group law.
/// The group law factors as m = p o s with the shear s(u, v) = (u + v, v);
/// s_* = (s^{-1})^* acts by a -> a - b, b -> b on the two generator blocks.
inline JacClass pushforward(const JacContext& ctx, Projection tag, const ProductClass& z) {
  ctx.check(z);
  const unsigned n = ctx.rank();
  switch (tag) {
    case Projection::kSecond:
      return JacClass(fiber_integrate_first(z.value(), n));
    case Projection::kFirst:
      return JacClass(fiber_integrate_second(z.value(), n));
    case Projection::kSum: {
      std::vector<ExtClass> shear;
      shear.reserve(2 * n);
      for (unsigned v = 0; v < n; ++v) {
        ExtClass img(2 * n);
        img.add_term(Mask{1} << v, Rat(1));
        img.add_term(Mask{1} << (n + v), Rat(-1));
        shear.push_back(std::move(img));
      }
      for (unsigned v = 0; v < n; ++v) {
        shear.push_back(ExtClass::generator(2 * n, n + v));
      }
      return JacClass(fiber_integrate_second(induced_map(shear, z.value(), 2 * n), n));
    }
  }
  throw RangeError("pushforward: unknown projection");
}

/// External product p^*x . q^*y.
inline ProductClass external(const JacContext& ctx, const JacClass& x, const JacClass& y) {
  ctx.check(x);
  ctx.check(y);
  return ProductClass(box(x.value(), y.value()));
}

inline const ProductClass& JacContext::poincare() const {
  std::lock_guard lock(cache_->mu);
  if (!cache_->poincare) {
    ProductClass l = pullback(*this, Projection::kFirst, theta_) +
                     pullback(*this, Projection::kSecond, theta_) -
                     pullback(*this, Projection::kSum, theta_);
    cache_->poincare = std::move(l);
  }
  return *cache_->poincare;
}

inline const ProductClass& JacContext::poincare_exp() const {
  const ProductClass& l = poincare();
  std::lock_guard lock(cache_->mu);
  if (!cache_->poincare_exp) {
    cache_->poincare_exp = ProductClass(exp_nilpotent(l.value()));
  }
  return *cache_->poincare_exp;
}

inline Rat pair(const JacContext& ctx, const JacClass& x, const JacClass& y) {
  ctx.check(x);
  ctx.check(y);
  return integrate_top(wedge(x.value(), y.value()));
}

inline const std::vector<std::pair<Mask, JacClass>>& JacContext::dual_basis(unsigned k) const {
  if (k > rank()) throw RangeError("dual_basis: degree out of range");
  std::lock_guard lock(cache_->mu);
  auto it = cache_->duals.find(k);
  if (it != cache_->duals.end()) return it->second;

  std::vector<Mask> ys, bs;
  for (Mask m = 0; m <= full_mask(rank()); ++m) {
    if (degree_of(m) == k) ys.push_back(m);
    if (degree_of(m) == rank() - k) bs.push_back(m);
  }
  // pairing[i][j] = integral of b_i ^ y_j; the dual of y_j has coefficients
  // given by column j of the inverse transpose.
  RatMatrix pairing(bs.size(), ys.size());
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      int s = koszul_sign(bs[i], ys[j]);
      if (s != 0 && (bs[i] | ys[j]) == full_mask(rank())) pairing.set(i, j, Rat(s));
    }
  }
  RatMatrix inv = inverse(pairing);
  std::vector<std::pair<Mask, JacClass>> duals;
  duals.reserve(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) {
    ExtClass d(rank());
    for (const auto& [i, v] : inv.row(j)) d.add_term(bs[i], v);
    duals.emplace_back(ys[j], JacClass(std::move(d)));
  }
  return cache_->duals.emplace(k, std::move(duals)).first->second;
}

/// F x = q_*(p^*x . exp(l)).
inline JacClass fourier(const JacContext& ctx, const JacClass& x) {
  ProductClass integrand = wedge(pullback(ctx, Projection::kFirst, x), ctx.poincare_exp());
  return pushforward(ctx, Projection::kSecond, integrand);
}

/// x * y = m_*(p^*x . q^*y), evaluated literally on J x J.
inline JacClass pontryagin_literal(const JacContext& ctx, const JacClass& x, const JacClass& y) {
  return pushforward(ctx, Projection::kSum, external(ctx, x, y));
}

/// Pontryagin product on monomials: e_S * e_T vanishes unless S and T cover
/// every generator, and is then +-e_{S & T}. The sign collects the -1 from
/// each sheared generator in U = ~T, the reordering of a_{S\U} past b_U, and
/// the Koszul sign of b_U against b_T. Agrees with pontryagin_literal.
inline JacClass pontryagin(const JacContext& ctx, const JacClass& x, const JacClass& y) {
  ctx.check(x);
  ctx.check(y);
  const Mask full = full_mask(ctx.rank());
  ExtClass out(ctx.rank());
  for (const auto& [s, c] : x.value().terms()) {
    for (const auto& [t, d] : y.value().terms()) {
      if ((s | t) != full) continue;
      const Mask u = full & ~t;
      const Mask keep = s & t;
      unsigned flips = degree_of(u);
      for (unsigned i = 0; i < ctx.rank(); ++i) {
        if (!(u >> i & 1u)) continue;
        const std::uint64_t below = (std::uint64_t{1} << i) - 1;
        flips += degree_of(static_cast<Mask>(keep & ~below & ~(Mask{1} << i)));
        flips += degree_of(static_cast<Mask>(t & below));
      }
      out.add_term(keep, flips % 2 ? -(c * d) : c * d);
    }
  }
  return JacClass(std::move(out));
}

/// n^*, induced by v -> n v on degree 1.
inline JacClass mult_pullback(const JacContext& ctx, long n, const JacClass& x) {
  ctx.check(x);
  std::vector<ExtClass> images;
  for (unsigned v = 0; v < ctx.rank(); ++v) {
    images.push_back(ExtClass::monomial(ctx.rank(), Mask{1} << v, Rat(n)));
  }
  return JacClass(induced_map(images, x.value(), ctx.rank()));
}

inline JacClass involution(const JacContext& ctx, const JacClass& x) {
  return mult_pullback(ctx, -1, x);
}

/// n_*, the adjoint of n^* under the Poincare pairing.
inline JacClass mult_pushforward(const JacContext& ctx, long n, const JacClass& x) {
  ctx.check(x);
  JacClass out = ctx.zero();
  for (unsigned k : x.value().degrees()) {
    JacClass xk(x.value().part(k));
    for (const auto& [ymask, dual] : ctx.dual_basis(ctx.rank() - k)) {
      Rat r = pair(ctx, xk, mult_pullback(ctx, n, ctx.monomial(ymask)));
      if (!r.is_zero()) out += r * dual;
    }
  }
  return out;
}

struct BeauvilleComponent {
  unsigned degree = 0;    // exterior degree
  unsigned exponent = 0;  // n^* acts by n^exponent
  JacClass component;

  /// Codimension, defined for even exterior degree only.
  std::optional<unsigned> codim() const {
    if (degree % 2) return std::nullopt;
    return degree / 2;
  }
  /// Weight s with exponent = 2p - s.
  std::optional<int> weight() const {
    if (degree % 2) return std::nullopt;
    return static_cast<int>(degree) - static_cast<int>(exponent);
  }
};

inline RatVector to_vector(const JacClass& x) {
  RatVector v;
  for (const auto& [m, c] : x.value().terms()) v.emplace(m, c);
  return v;
}

inline JacClass from_vector(const JacContext& ctx, const RatVector& v) {
  ExtClass out(ctx.rank());
  for (const auto& [i, c] : v) out.add_term(static_cast<Mask>(i), c);
  return JacClass(std::move(out));
}

/// Splits x into n^*-eigencomponents by sampling n = 2, ..., 2g+2 and solving
/// the resulting Vandermonde system for exponents 0, ..., 2g.
inline std::vector<BeauvilleComponent> beauville_decompose(const JacContext& ctx,
                                                           const JacClass& x) {
  ctx.check(x);
  std::vector<long> samples;
  std::vector<unsigned> exponents;
  std::vector<RatVector> values;
  for (unsigned k = 0; k <= ctx.rank(); ++k) {
    long n = static_cast<long>(k) + 2;
    samples.push_back(n);
    exponents.push_back(k);
    values.push_back(to_vector(mult_pullback(ctx, n, x)));
  }
  auto comps = solve_vandermonde(samples, exponents, values);
  std::vector<BeauvilleComponent> out;
  for (unsigned k = 0; k < comps.size(); ++k) {
    if (comps[k].empty()) continue;
    JacClass c = from_vector(ctx, comps[k]);
    auto deg = c.value().homogeneous_degree();
    out.push_back({deg.value_or(k), exponents[k], std::move(c)});
  }
  return out;
}

}  // namespace jacring
