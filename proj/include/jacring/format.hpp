#pragma once

// Text rendering of classes. Output is itself a valid expression: classes in
// the span of theta powers are written with one, theta, W[i], pt; anything
// else as a sum of generator monomials e1*f1*... in graded order.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "jacring/gpb.hpp"

namespace jacring {

struct FormatOptions {
  /// Always expand into generator monomials.
  bool monomial = false;
};

namespace detail {

inline void append_term(std::string& out, const Rat& c, const std::string& atom) {
  Rat mag = c.sign() < 0 ? -c : c;
  if (out.empty()) {
    if (c.sign() < 0) out += "-";
  } else {
    out += c.sign() < 0 ? " - " : " + ";
  }
  if (atom.empty()) {
    out += mag.str();
  } else if (mag == Rat(1)) {
    out += atom;
  } else {
    out += mag.str() + "*" + atom;
  }
}

inline std::string monomial_atom(Mask m) {
  if (m == 0) return "one";
  std::string s;
  for (unsigned i = 0; i < kMaxGenerators; ++i) {
    if (!(m >> i & 1u)) continue;
    if (!s.empty()) s += "*";
    s += JacContext::generator_name(i);
  }
  return s;
}

/// Name of theta^k / k! = W[g-k].
inline std::string w_atom(unsigned g, unsigned k) {
  if (k == 0) return "one";
  if (k == g) return "pt";
  if (k == 1) return "theta";
  return "W[" + std::to_string(g - k) + "]";
}

}  // namespace detail

/// Coefficients c_k with x = sum c_k theta^k / k!, if x lies in that span.
inline std::optional<std::vector<Rat>> theta_coordinates(const JacContext& ctx, const JacClass& x) {
  const unsigned g = ctx.genus();
  std::vector<Rat> coords(g + 1, Rat(0));
  for (unsigned k = 0; k <= g; ++k) {
    const JacClass w = w_class(ctx, static_cast<int>(g - k));
    const ExtClass part = x.value().part(2 * k);
    if (part.is_zero()) continue;
    const Mask lead = w.value().terms().begin()->first;
    const Rat c = part.coeff(lead) / w.value().coeff(lead);
    if (part != (c * w).value()) return std::nullopt;
    coords[k] = c;
  }
  if (x.value().degrees().size() !=
      static_cast<std::size_t>(std::count_if(coords.begin(), coords.end(),
                                             [](const Rat& c) { return !c.is_zero(); }))) {
    return std::nullopt;
  }
  return coords;
}

inline std::string format_class(const JacContext& ctx, const JacClass& x, FormatOptions opt = {}) {
  if (x.is_zero()) return "0";
  std::string out;
  if (!opt.monomial) {
    if (auto coords = theta_coordinates(ctx, x)) {
      for (unsigned k = 0; k < coords->size(); ++k) {
        if (!(*coords)[k].is_zero()) detail::append_term(out, (*coords)[k], detail::w_atom(ctx.genus(), k));
      }
      return out;
    }
  }
  for (unsigned d : x.value().degrees()) {
    const ExtClass part = x.value().part(d);
    for (const auto& [m, c] : part.terms()) detail::append_term(out, c, detail::monomial_atom(m));
  }
  return out;
}

/// H-part first, then the pulled-back base part.
inline std::string format_class(const GpbContext& ctx, const GpbClass& x, FormatOptions opt = {}) {
  if (x.is_zero()) return "0";
  std::string out;
  const JacContext& j = ctx.jac();
  auto add = [&](const JacClass& part, const std::string& prefix, bool h) {
    if (part.is_zero()) return;
    const ExtClass& v = part.value();
    if (v.degrees() == std::vector<unsigned>{0}) {
      detail::append_term(out, v.coeff(0), h ? "H" : "pi*(one)");
      return;
    }
    std::string body = format_class(j, part, opt);
    // A single negative term moves its sign outside the pullback.
    const bool single = body.find(" + ") == std::string::npos && body.find(" - ") == std::string::npos;
    const bool negative = single && body.front() == '-';
    if (negative) body.erase(0, 1);
    const std::string atom = prefix + "pi*(" + body + ")";
    if (out.empty()) {
      out = (negative ? "-" : "") + atom;
    } else {
      out += (negative ? " - " : " + ") + atom;
    }
  };
  add(x.hpart(), "H*", true);
  add(x.base(), "", false);
  return out;
}

/// Rational as "num/den" (always with a denominator), the report form.
inline std::string rational_json(const Rat& r) { return r.frac_str(); }

}  // namespace jacring
