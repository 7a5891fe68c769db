#pragma once

// Expression language over classes on J and on P.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*            '*' is the intersection product
//   unary   := '-' unary | primary
//   primary := rational | name | name '[' int ']' | call | '(' expr ')'
//   call    := fn '(' expr (',' expr)* ')'
//
// Names: one, theta, pt, H, Sy, Sz, e1..eg, f1..fg, W[i], Wt[d].
// Functions: F, Fx, inv, nstar(n, x), nlow(n, x), pi*(x), pipush(x),
// pont(x, y), pontx(x, y), integrate(x), pair(x, y), beauville(x).

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "jacring/format.hpp"

namespace jacring {

class ParseError : public Error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : Error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class SortError : public Error {
 public:
  SortError(std::size_t pos, const std::string& msg)
      : Error("sort error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct Expr {
  enum class Kind { kNumber, kName, kIndexed, kCall, kNeg, kAdd, kSub, kMul };

  Kind kind = Kind::kNumber;
  Rat number;
  std::string name;
  long index = 0;
  std::vector<Expr> args;
  std::size_t pos = 0;

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.number == b.number && a.name == b.name && a.index == b.index &&
           a.args == b.args;
  }
};

namespace expr_detail {

struct FnInfo {
  const char* name;
  unsigned arity;
  /// First argument is an integer multiplier.
  bool integer_first;
};

inline const std::vector<FnInfo>& functions() {
  static const std::vector<FnInfo> fns{
      {"F", 1, false},        {"Fx", 1, false},       {"inv", 1, false},    {"nstar", 2, true},
      {"nlow", 2, true},      {"pi*", 1, false},      {"pipush", 1, false}, {"pont", 2, false},
      {"pontx", 2, false},    {"integrate", 1, false}, {"pair", 2, false},  {"beauville", 1, false},
  };
  return fns;
}

inline const FnInfo* find_function(const std::string& name) {
  for (const auto& f : functions()) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

/// e<k> / f<k> with k >= 1; returns the generator index.
inline std::optional<unsigned> generator_index(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'e' && name[0] != 'f')) return std::nullopt;
  if (name[1] == '0') return std::nullopt;
  unsigned k = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i])) || k > 1000) return std::nullopt;
    k = 10 * k + static_cast<unsigned>(name[i] - '0');
  }
  return 2 * (k - 1) + (name[0] == 'f' ? 1 : 0);
}

inline bool is_plain_name(const std::string& n) {
  return n == "one" || n == "theta" || n == "pt" || n == "H" || n == "Sy" || n == "Sz" ||
         generator_index(n).has_value();
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  Expr parse() {
    skip();
    if (i_ == s_.size()) fail("expected expression");
    Expr e = expr();
    skip();
    if (i_ != s_.size()) fail("expected operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(i_, msg); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }

  Expr binary(Expr::Kind k, Expr a, Expr b, std::size_t pos) {
    Expr e;
    e.kind = k;
    e.pos = pos;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      skip();
      const std::size_t pos = i_;
      if (accept('+')) {
        e = binary(Expr::Kind::kAdd, std::move(e), term(), pos);
      } else if (accept('-')) {
        e = binary(Expr::Kind::kSub, std::move(e), term(), pos);
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      skip();
      const std::size_t pos = i_;
      if (!accept('*')) return e;
      e = binary(Expr::Kind::kMul, std::move(e), unary(), pos);
    }
  }

  Expr unary() {
    skip();
    const std::size_t pos = i_;
    if (accept('-')) {
      Expr e;
      e.kind = Expr::Kind::kNeg;
      e.pos = pos;
      e.args.push_back(unary());
      return e;
    }
    return primary();
  }

  std::string digits() {
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }

  long integer() {
    skip();
    bool neg = accept('-');
    skip();
    const std::string d = digits();
    if (d.empty()) fail("expected integer");
    if (d.size() > 9) fail("integer too large");
    return neg ? -std::stol(d) : std::stol(d);
  }

  Expr primary() {
    skip();
    const std::size_t pos = i_;
    if (i_ == s_.size()) fail("expected expression");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text = digits();
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        const std::string den = digits();
        if (den.empty()) fail("expected denominator");
        text += "/" + den;
      }
      Expr e;
      e.kind = Expr::Kind::kNumber;
      e.pos = pos;
      try {
        e.number = Rat::parse(text);
      } catch (const Error&) {
        i_ = pos;
        fail("invalid rational literal");
      }
      return e;
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')', "')'");
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected number, name, function call or '('");
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string name = s_.substr(start, i_ - start);
    // "pi*(" is a single function token.
    if (name == "pi" && i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      name = "pi*";
    }
    Expr e;
    e.pos = pos;
    e.name = name;
    if (const FnInfo* fn = find_function(name)) {
      e.kind = Expr::Kind::kCall;
      expect('(', "'(' after function name");
      for (unsigned a = 0; a < fn->arity; ++a) {
        if (a > 0) expect(',', "','");
        if (a == 0 && fn->integer_first) {
          Expr n;
          n.kind = Expr::Kind::kNumber;
          skip();
          n.pos = i_;
          n.number = Rat(integer());
          e.args.push_back(std::move(n));
        } else {
          e.args.push_back(expr());
        }
      }
      expect(')', "')'");
      return e;
    }
    if (name == "W" || name == "Wt") {
      e.kind = Expr::Kind::kIndexed;
      expect('[', "'['");
      e.index = integer();
      expect(']', "']'");
      return e;
    }
    if (is_plain_name(name)) {
      e.kind = Expr::Kind::kName;
      return e;
    }
    i_ = start;
    fail("unknown identifier '" + name + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul: return 2;
    case Expr::Kind::kNeg: return 3;
    default: return 4;
  }
}

inline void print(const Expr& e, std::string& out);

inline void print_at(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += "(";
    print(e, out);
    out += ")";
  } else {
    print(e, out);
  }
}

inline void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::kNumber: out += e.number.str(); return;
    case Expr::Kind::kName: out += e.name; return;
    case Expr::Kind::kIndexed: out += e.name + "[" + std::to_string(e.index) + "]"; return;
    case Expr::Kind::kCall:
      out += e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print(e.args[i], out);
      }
      out += ")";
      return;
    case Expr::Kind::kNeg:
      out += "-";
      print_at(e.args[0], 3, out);
      return;
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
      print_at(e.args[0], 1, out);
      out += e.kind == Expr::Kind::kAdd ? " + " : " - ";
      print_at(e.args[1], 2, out);
      return;
    case Expr::Kind::kMul:
      print_at(e.args[0], 2, out);
      out += "*";
      print_at(e.args[1], 3, out);
      return;
  }
}

}  // namespace expr_detail

inline Expr parse_expr(const std::string& input) { return expr_detail::Parser(input).parse(); }

/// Canonical text; parse_expr(print_expr(e)) == e.
inline std::string print_expr(const Expr& e) {
  std::string out;
  expr_detail::print(e, out);
  return out;
}

enum class Sort { kScalar, kJ, kP, kDecomp };

inline std::string to_string(Sort s) {
  switch (s) {
    case Sort::kScalar: return "scalar";
    case Sort::kJ: return "J-class";
    case Sort::kP: return "P-class";
    case Sort::kDecomp: return "decomposition";
  }
  return "?";
}

/// Checks arity and model sorts; scalars promote to multiples of the unit.
inline Sort check_sort(const Expr& e) {
  auto fail = [&](const std::string& msg) -> Sort { throw SortError(e.pos, msg); };
  auto classes = [](Sort s) { return s == Sort::kJ || s == Sort::kP; };
  switch (e.kind) {
    case Expr::Kind::kNumber: return Sort::kScalar;
    case Expr::Kind::kName:
      return e.name == "H" || e.name == "Sy" || e.name == "Sz" ? Sort::kP : Sort::kJ;
    case Expr::Kind::kIndexed: return e.name == "W" ? Sort::kJ : Sort::kP;
    case Expr::Kind::kNeg: {
      Sort s = check_sort(e.args[0]);
      if (s == Sort::kDecomp) return fail("cannot negate a decomposition");
      return s;
    }
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
    case Expr::Kind::kMul: {
      Sort a = check_sort(e.args[0]), b = check_sort(e.args[1]);
      if (a == Sort::kDecomp || b == Sort::kDecomp) return fail("decompositions cannot be combined");
      if (a == Sort::kScalar) return b;
      if (b == Sort::kScalar) return a;
      if (a != b) return fail("mixed operands: " + to_string(a) + " and " + to_string(b));
      return a;
    }
    case Expr::Kind::kCall: break;
  }
  const std::string& f = e.name;
  std::vector<Sort> in;
  for (const auto& a : e.args) in.push_back(check_sort(a));
  auto want = [&](std::size_t i, Sort s) {
    Sort got = in[i] == Sort::kScalar && s != Sort::kScalar ? s : in[i];
    if (got != s) fail(f + " expects a " + to_string(s) + ", got a " + to_string(in[i]));
  };
  auto same_class = [&](std::size_t i) {
    if (in[i] == Sort::kScalar) return Sort::kJ;
    if (!classes(in[i])) fail(f + " expects a class, got a " + to_string(in[i]));
    return in[i];
  };
  if (f == "F" || f == "pont") {
    for (std::size_t i = 0; i < in.size(); ++i) want(i, Sort::kJ);
    return Sort::kJ;
  }
  if (f == "Fx" || f == "pontx") {
    for (std::size_t i = 0; i < in.size(); ++i) want(i, Sort::kP);
    return Sort::kP;
  }
  if (f == "pi*") {
    want(0, Sort::kJ);
    return Sort::kP;
  }
  if (f == "pipush") {
    want(0, Sort::kP);
    return Sort::kJ;
  }
  if (f == "beauville") {
    want(0, Sort::kJ);
    return Sort::kDecomp;
  }
  if (f == "inv") return same_class(0);
  if (f == "nstar" || f == "nlow") return same_class(1);
  if (f == "integrate") {
    same_class(0);
    return Sort::kScalar;
  }
  if (f == "pair") {
    Sort a = same_class(0), b = same_class(1);
    if (in[0] != Sort::kScalar && in[1] != Sort::kScalar && a != b) fail("pair of a J-class and a P-class");
    return Sort::kScalar;
  }
  return fail("unknown function '" + f + "'");
}

using Decomposition = std::vector<BeauvilleComponent>;
using Value = std::variant<Rat, JacClass, GpbClass, Decomposition>;

struct EvalContext {
  GpbContext gpb;
  Preset preset = Preset::kGeometric;

  explicit EvalContext(GpbContext g, Preset p = Preset::kGeometric) : gpb(std::move(g)), preset(p) {}
  explicit EvalContext(unsigned genus, Preset p = Preset::kGeometric) : gpb(genus), preset(p) {}
  const JacContext& jac() const { return gpb.jac(); }
};

class EvalError : public Error {
 public:
  EvalError(const std::string& op, const std::string& msg) : Error(op + ": " + msg) {}
};

namespace expr_detail {

inline JacClass as_jac(const EvalContext& c, const Value& v) {
  if (auto r = std::get_if<Rat>(&v)) return *r * c.jac().one();
  return std::get<JacClass>(v);
}

inline GpbClass as_gpb(const EvalContext& c, const Value& v) {
  if (auto r = std::get_if<Rat>(&v)) return *r * c.gpb.one();
  return std::get<GpbClass>(v);
}

inline Value evaluate(const EvalContext& c, const Expr& e, Sort sort);

inline Value eval_sorted(const EvalContext& c, const Expr& e) { return evaluate(c, e, check_sort(e)); }

inline Value evaluate(const EvalContext& c, const Expr& e, Sort sort) {
  const JacContext& jac = c.jac();
  const GpbContext& gpb = c.gpb;
  switch (e.kind) {
    case Expr::Kind::kNumber: return e.number;
    case Expr::Kind::kName: {
      if (e.name == "one") return jac.one();
      if (e.name == "theta") return jac.theta();
      if (e.name == "pt") return jac.point();
      if (e.name == "H") return h_class(gpb);
      if (e.name == "Sy") return sy_class(gpb);
      if (e.name == "Sz") return sz_class(gpb);
      const unsigned idx = *generator_index(e.name);
      if (idx >= jac.rank()) throw EvalError(e.name, "generator outside genus " + std::to_string(jac.genus()));
      return jac.monomial(Mask{1} << idx);
    }
    case Expr::Kind::kIndexed:
      if (e.name == "W") {
        if (e.index < 0) throw EvalError("W", "index must be in 0.." + std::to_string(jac.genus()));
        return w_class(jac, static_cast<int>(e.index));
      }
      return wtilde(gpb, static_cast<int>(e.index));
    case Expr::Kind::kNeg: {
      Value v = eval_sorted(c, e.args[0]);
      if (auto r = std::get_if<Rat>(&v)) return -*r;
      if (auto j = std::get_if<JacClass>(&v)) return -*j;
      return -std::get<GpbClass>(v);
    }
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
    case Expr::Kind::kMul: {
      const Value a = eval_sorted(c, e.args[0]), b = eval_sorted(c, e.args[1]);
      const Expr::Kind k = e.kind;
      if (sort == Sort::kScalar) {
        const Rat x = std::get<Rat>(a), y = std::get<Rat>(b);
        return k == Expr::Kind::kAdd ? x + y : k == Expr::Kind::kSub ? x - y : x * y;
      }
      if (sort == Sort::kJ) {
        const JacClass x = as_jac(c, a), y = as_jac(c, b);
        return k == Expr::Kind::kAdd ? x + y : k == Expr::Kind::kSub ? x - y : wedge(x, y);
      }
      const GpbClass x = as_gpb(c, a), y = as_gpb(c, b);
      return k == Expr::Kind::kAdd ? x + y : k == Expr::Kind::kSub ? x - y : gpb_mul(gpb, x, y);
    }
    case Expr::Kind::kCall: break;
  }
  const std::string& f = e.name;
  std::vector<Value> in;
  for (const auto& a : e.args) in.push_back(eval_sorted(c, a));
  // Sort of the class argument for the overloaded functions.
  auto on_p = [&](std::size_t i) { return std::holds_alternative<GpbClass>(in[i]); };
  try {
    if (f == "F") return fourier(jac, as_jac(c, in[0]));
    if (f == "Fx") return ext_fourier(gpb, as_gpb(c, in[0]));
    if (f == "pont") return pontryagin(jac, as_jac(c, in[0]), as_jac(c, in[1]));
    if (f == "pontx") return ext_pontryagin(gpb, as_gpb(c, in[0]), as_gpb(c, in[1]), c.preset);
    if (f == "pi*") return pi_pullback(gpb, as_jac(c, in[0]));
    if (f == "pipush") return pi_pushforward(gpb, as_gpb(c, in[0]));
    if (f == "beauville") return beauville_decompose(jac, as_jac(c, in[0]));
    if (f == "inv") {
      if (on_p(0)) return ext_mult_pullback(gpb, -1, as_gpb(c, in[0]), c.preset);
      return involution(jac, as_jac(c, in[0]));
    }
    if (f == "nstar" || f == "nlow") {
      const Rat nr = std::get<Rat>(in[0]);
      const long n = std::stol(nr.str());
      const bool star = f == "nstar";
      if (on_p(1)) {
        const GpbClass x = as_gpb(c, in[1]);
        return star ? ext_mult_pullback(gpb, n, x, c.preset) : ext_mult_pushforward(gpb, n, x, c.preset);
      }
      const JacClass x = as_jac(c, in[1]);
      return star ? mult_pullback(jac, n, x) : mult_pushforward(jac, n, x);
    }
    if (f == "integrate") {
      if (on_p(0)) return gpb_integrate(gpb, as_gpb(c, in[0]));
      return integrate_top(as_jac(c, in[0]).value());
    }
    if (f == "pair") {
      if (on_p(0) || on_p(1)) return gpb_pair(gpb, as_gpb(c, in[0]), as_gpb(c, in[1]));
      return pair(jac, as_jac(c, in[0]), as_jac(c, in[1]));
    }
  } catch (const EvalError&) {
    throw;
  } catch (const Error& err) {
    throw EvalError(f, err.what());
  }
  throw EvalError(f, "unknown function");
}

}  // namespace expr_detail

/// Sort-checks, then evaluates exactly.
inline Value eval_expr(const Expr& e, const EvalContext& ctx) {
  const Sort s = check_sort(e);
  try {
    return expr_detail::evaluate(ctx, e, s);
  } catch (const EvalError&) {
    throw;
  } catch (const Error& err) {
    throw EvalError("eval", err.what());
  }
}

inline Value eval_expr(const std::string& text, const EvalContext& ctx) { return eval_expr(parse_expr(text), ctx); }

inline std::string format_value(const EvalContext& ctx, const Value& v, FormatOptions opt = {}) {
  if (auto r = std::get_if<Rat>(&v)) return r->str();
  if (auto j = std::get_if<JacClass>(&v)) return format_class(ctx.jac(), *j, opt);
  if (auto p = std::get_if<GpbClass>(&v)) return format_class(ctx.gpb, *p, opt);
  const auto& comps = std::get<Decomposition>(v);
  if (comps.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    if (i) os << "\n";
    os << "exponent " << c.exponent << " (degree " << c.degree;
    if (auto w = c.weight()) os << ", codim " << *c.codim() << ", weight " << *w;
    os << "): " << format_class(ctx.jac(), c.component, opt);
  }
  return os.str();
}

/// Equality of two values of the same sort (scalars promote to classes).
inline bool values_equal(const EvalContext& ctx, const Value& a, const Value& b) {
  if (a.index() == b.index()) {
    if (auto d = std::get_if<Decomposition>(&a)) {
      const auto& e = std::get<Decomposition>(b);
      if (d->size() != e.size()) return false;
      for (std::size_t i = 0; i < d->size(); ++i) {
        if ((*d)[i].exponent != e[i].exponent || (*d)[i].degree != e[i].degree ||
            !((*d)[i].component == e[i].component)) {
          return false;
        }
      }
      return true;
    }
    if (auto r = std::get_if<Rat>(&a)) return *r == std::get<Rat>(b);
    if (auto j = std::get_if<JacClass>(&a)) return *j == std::get<JacClass>(b);
    return std::get<GpbClass>(a) == std::get<GpbClass>(b);
  }
  auto is = [](const Value& v, std::size_t idx) { return v.index() == idx; };
  if (is(a, 0) && is(b, 1)) return expr_detail::as_jac(ctx, a) == std::get<JacClass>(b);
  if (is(a, 1) && is(b, 0)) return std::get<JacClass>(a) == expr_detail::as_jac(ctx, b);
  if (is(a, 0) && is(b, 2)) return expr_detail::as_gpb(ctx, a) == std::get<GpbClass>(b);
  if (is(a, 2) && is(b, 0)) return std::get<GpbClass>(a) == expr_detail::as_gpb(ctx, b);
  throw SortError(0, "cannot compare values of different sorts");
}

}  // namespace jacring
