#pragma once

// Smallest subspace containing a set of generators (and the unit) that is
// stable under a family of linear and bilinear operators. Classes are
// flattened to sparse rational vectors; the fixed point is reached by
// applying every operator to every tuple that involves a newly added
// spanning class, until a round adds nothing.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacring/gpb.hpp"

namespace jacring {

template <class Class>
struct Ambient {
  std::string name;
  std::size_t dim = 0;
  Class unit;
  std::function<RatVector(const Class&)> to_vector;
  std::function<Class(const RatVector&)> from_vector;
  /// Cohomological degree carried by a coordinate index.
  std::function<unsigned(std::size_t)> degree_of_index;
};

template <class Class>
struct OperatorSpec {
  std::string name;
  unsigned arity = 1;
  std::function<Class(const Class&)> unary;
  std::function<Class(const Class&, const Class&)> binary;
  bool generating = true;

  static OperatorSpec make_unary(std::string name, std::function<Class(const Class&)> f) {
    return {std::move(name), 1, std::move(f), {}, true};
  }
  static OperatorSpec make_binary(std::string name,
                                  std::function<Class(const Class&, const Class&)> f) {
    return {std::move(name), 2, {}, std::move(f), true};
  }
};

struct DegreeDim {
  unsigned degree = 0;
  std::size_t dim = 0;
};

template <class Class>
struct ClosureResult {
  std::string ambient;
  /// Spanning classes in the order they entered the span.
  std::vector<Class> basis;
  Subspace span;
  std::size_t dim = 0;
  unsigned iterations = 0;
  /// Dimension of the projection onto each cohomological degree.
  std::vector<DegreeDim> degree_dims;
  /// True when the span is the direct sum of its graded projections.
  bool graded = false;
  /// Set once every operator applied to every basis tuple was re-checked to
  /// land in the span.
  bool saturated = false;
};

struct SaturationFailure {
  std::string op;
  std::vector<std::size_t> inputs;
};

namespace detail {

template <class Class>
void fill_degree_table(const Ambient<Class>& ambient, ClosureResult<Class>& r) {
  std::map<unsigned, Subspace> proj;
  for (const auto& row : r.span.basis()) {
    std::map<unsigned, RatVector> pieces;
    for (const auto& [i, c] : row) pieces[ambient.degree_of_index(i)].emplace(i, c);
    for (auto& [d, v] : pieces) {
      auto it = proj.try_emplace(d, Subspace(ambient.dim)).first;
      it->second.insert(v);
    }
  }
  std::size_t total = 0;
  r.degree_dims.clear();
  for (const auto& [d, s] : proj) {
    r.degree_dims.push_back({d, s.dim()});
    total += s.dim();
  }
  r.graded = total == r.dim;
}

}  // namespace detail

/// Re-applies every generating operator to every basis tuple and returns the
/// first combination that leaves the span, if any.
template <class Class>
std::optional<SaturationFailure> check_saturation(const Ambient<Class>& ambient,
                                                  const std::vector<OperatorSpec<Class>>& ops,
                                                  const ClosureResult<Class>& r) {
  const auto& b = r.basis;
  for (const auto& op : ops) {
    if (!op.generating) continue;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (op.arity == 1) {
        if (!r.span.contains(ambient.to_vector(op.unary(b[i])))) {
          return SaturationFailure{op.name, {i}};
        }
        continue;
      }
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!r.span.contains(ambient.to_vector(op.binary(b[i], b[j])))) {
          return SaturationFailure{op.name, {i, j}};
        }
      }
    }
  }
  return std::nullopt;
}

template <class Class>
ClosureResult<Class> compute_closure(const std::vector<Class>& generators,
                                     const std::vector<OperatorSpec<Class>>& ops,
                                     const Ambient<Class>& ambient) {
  ClosureResult<Class> r;
  r.ambient = ambient.name;
  r.span = Subspace(ambient.dim);
  auto offer = [&](const Class& c) {
    if (r.span.insert(ambient.to_vector(c))) r.basis.push_back(c);
  };
  offer(ambient.unit);
  for (const auto& g : generators) offer(g);

  std::size_t processed = 0;
  while (processed < r.basis.size()) {
    const std::size_t end = r.basis.size();
    ++r.iterations;
    for (const auto& op : ops) {
      if (!op.generating || op.arity != 1) continue;
      for (std::size_t i = processed; i < end; ++i) offer(op.unary(r.basis[i]));
    }
    for (const auto& op : ops) {
      if (!op.generating || op.arity != 2) continue;
      for (std::size_t i = 0; i < end; ++i) {
        for (std::size_t j = 0; j < end; ++j) {
          if (i < processed && j < processed) continue;
          offer(op.binary(r.basis[i], r.basis[j]));
        }
      }
    }
    processed = end;
  }
  r.dim = r.span.dim();
  detail::fill_degree_table(ambient, r);
  r.saturated = !check_saturation(ambient, ops, r).has_value();
  return r;
}

enum class SubalgebraRelation { kEqual, kFirstInSecond, kSecondInFirst, kIncomparable };

inline std::string to_string(SubalgebraRelation r) {
  switch (r) {
    case SubalgebraRelation::kEqual: return "equal";
    case SubalgebraRelation::kFirstInSecond: return "A<B";
    case SubalgebraRelation::kSecondInFirst: return "B<A";
    case SubalgebraRelation::kIncomparable: return "incomparable";
  }
  return "?";
}

struct DegreeComparison {
  unsigned degree = 0;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
};

struct SubalgebraComparison {
  SubalgebraRelation relation = SubalgebraRelation::kIncomparable;
  std::vector<DegreeComparison> table;
  /// Index of a basis class of A outside B (resp. of B outside A), if any.
  std::optional<std::size_t> a_outside_b;
  std::optional<std::size_t> b_outside_a;
};

template <class Class>
SubalgebraComparison compare_subalgebras(const ClosureResult<Class>& a,
                                         const ClosureResult<Class>& b) {
  if (a.ambient != b.ambient || a.span.ambient_dim() != b.span.ambient_dim()) {
    throw ShapeError("compare_subalgebras: closures live in different ambients");
  }
  SubalgebraComparison out;
  const auto a_rows = a.span.basis();
  const auto b_rows = b.span.basis();
  for (std::size_t i = 0; i < a_rows.size() && !out.a_outside_b; ++i) {
    if (!b.span.contains(a_rows[i])) out.a_outside_b = i;
  }
  for (std::size_t i = 0; i < b_rows.size() && !out.b_outside_a; ++i) {
    if (!a.span.contains(b_rows[i])) out.b_outside_a = i;
  }
  if (!out.a_outside_b && !out.b_outside_a) {
    out.relation = SubalgebraRelation::kEqual;
  } else if (!out.a_outside_b) {
    out.relation = SubalgebraRelation::kFirstInSecond;
  } else if (!out.b_outside_a) {
    out.relation = SubalgebraRelation::kSecondInFirst;
  }
  std::map<unsigned, DegreeComparison> rows;
  for (const auto& d : a.degree_dims) {
    rows[d.degree].degree = d.degree;
    rows[d.degree].dim_a = d.dim;
  }
  for (const auto& d : b.degree_dims) {
    rows[d.degree].degree = d.degree;
    rows[d.degree].dim_b = d.dim;
  }
  for (const auto& [d, row] : rows) out.table.push_back(row);
  return out;
}

// Standard ambients and operator families.

inline Ambient<JacClass> jacobian_ambient(const JacContext& ctx) {
  return {"J(g=" + std::to_string(ctx.genus()) + ")",
          std::size_t{1} << ctx.rank(),
          ctx.one(),
          [](const JacClass& x) { return to_vector(x); },
          [ctx](const RatVector& v) { return from_vector(ctx, v); },
          [](std::size_t i) { return degree_of(static_cast<Mask>(i)); }};
}

inline Ambient<GpbClass> gpb_ambient(const GpbContext& ctx) {
  const std::size_t offset = std::size_t{1} << ctx.jac().rank();
  return {"P(g=" + std::to_string(ctx.genus()) + ")",
          2 * offset,
          ctx.one(),
          [ctx](const GpbClass& x) { return to_vector(ctx, x); },
          [ctx](const RatVector& v) { return from_vector(ctx, v); },
          [offset](std::size_t i) {
            return i < offset ? degree_of(static_cast<Mask>(i))
                              : degree_of(static_cast<Mask>(i - offset)) + 2;
          }};
}

/// Multipliers used for the n^* / n_* operator families.
inline const std::vector<long>& closure_multipliers() {
  static const std::vector<long> ns{-1, 2, 3};
  return ns;
}

/// Operator names: wedge, pont, fourier, nstar, nlow; "all" selects every one.
inline std::vector<std::string> expand_operator_names(const std::vector<std::string>& names) {
  static const std::vector<std::string> all{"wedge", "pont", "fourier", "nstar", "nlow"};
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (n == "all") return all;
    bool known = false;
    for (const auto& a : all) known = known || a == n;
    if (!known) throw RangeError("unknown operator '" + n + "'");
    out.push_back(n);
  }
  return out;
}

inline std::vector<OperatorSpec<JacClass>> jacobian_operators(const JacContext& ctx,
                                                              const std::vector<std::string>& names) {
  using Op = OperatorSpec<JacClass>;
  std::vector<Op> ops;
  for (const auto& name : expand_operator_names(names)) {
    if (name == "wedge") {
      ops.push_back(Op::make_binary("wedge", [](const JacClass& x, const JacClass& y) { return wedge(x, y); }));
    } else if (name == "pont") {
      ops.push_back(Op::make_binary("pont", [ctx](const JacClass& x, const JacClass& y) {
        return pontryagin(ctx, x, y);
      }));
    } else if (name == "fourier") {
      ops.push_back(Op::make_unary("fourier", [ctx](const JacClass& x) { return fourier(ctx, x); }));
    } else {
      for (long n : closure_multipliers()) {
        if (name == "nstar") {
          ops.push_back(Op::make_unary("nstar(" + std::to_string(n) + ")",
                                       [ctx, n](const JacClass& x) { return mult_pullback(ctx, n, x); }));
        } else {
          ops.push_back(Op::make_unary("nlow(" + std::to_string(n) + ")",
                                       [ctx, n](const JacClass& x) { return mult_pushforward(ctx, n, x); }));
        }
      }
    }
  }
  return ops;
}

inline std::vector<OperatorSpec<GpbClass>> gpb_operators(const GpbContext& ctx, Preset preset,
                                                         const std::vector<std::string>& names) {
  using Op = OperatorSpec<GpbClass>;
  std::vector<Op> ops;
  for (const auto& name : expand_operator_names(names)) {
    if (name == "wedge") {
      ops.push_back(Op::make_binary("wedge", [ctx](const GpbClass& x, const GpbClass& y) {
        return gpb_mul(ctx, x, y);
      }));
    } else if (name == "pont") {
      ops.push_back(Op::make_binary("pont", [ctx, preset](const GpbClass& x, const GpbClass& y) {
        return ext_pontryagin(ctx, x, y, preset);
      }));
    } else if (name == "fourier") {
      ops.push_back(Op::make_unary("fourier", [ctx](const GpbClass& x) { return ext_fourier(ctx, x); }));
    } else {
      for (long n : closure_multipliers()) {
        if (name == "nstar") {
          ops.push_back(Op::make_unary("nstar(" + std::to_string(n) + ")", [ctx, n, preset](const GpbClass& x) {
            return ext_mult_pullback(ctx, n, x, preset);
          }));
        } else {
          ops.push_back(Op::make_unary("nlow(" + std::to_string(n) + ")", [ctx, n, preset](const GpbClass& x) {
            return ext_mult_pushforward(ctx, n, x, preset);
          }));
        }
      }
    }
  }
  return ops;
}

}  // namespace jacring
