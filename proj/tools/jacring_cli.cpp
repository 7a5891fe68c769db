#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "jacring/audit.hpp"
#include "jacring/closure.hpp"
#include "jacring/expr.hpp"

using namespace jacring;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (auto& t : out) {
    const auto b = t.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    trimmed.push_back(t.substr(b, t.find_last_not_of(" \t") - b + 1));
  }
  return trimmed;
}

unsigned parse_genus(const std::string& s) {
  try {
    std::size_t used = 0;
    const long g = std::stol(s, &used);
    if (used != s.size() || g < 1 || g > 6) throw UsageError("");
    return static_cast<unsigned>(g);
  } catch (const std::exception&) {
    throw UsageError("genus must be an integer in 1..6, got '" + s + "'");
  }
}

/// "1..4", "2,3" or "3".
std::vector<unsigned> parse_genus_list(const std::string& s) {
  std::vector<unsigned> out;
  for (const auto& item : split(s, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_genus(item));
      continue;
    }
    const unsigned lo = parse_genus(item.substr(0, dots)), hi = parse_genus(item.substr(dots + 2));
    if (lo > hi) throw UsageError("empty genus range '" + item + "'");
    for (unsigned g = lo; g <= hi; ++g) out.push_back(g);
  }
  if (out.empty()) throw UsageError("empty genus list");
  return out;
}

std::vector<Preset> parse_preset_list(const std::string& s) {
  std::vector<Preset> out;
  for (const auto& item : split(s, ',')) {
    if (item != "geometric" && item != "paper") throw UsageError("unknown preset '" + item + "'");
    out.push_back(parse_preset(item));
  }
  if (out.empty()) throw UsageError("empty preset list");
  return out;
}

std::string default_genus() {
  const char* env = std::getenv("JACRING_GENUS");
  return env && *env ? env : "2";
}

struct ModelOptions {
  std::string genus = default_genus();
  std::string preset = "geometric";
  std::string twist;
  std::string shift;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-g,--genus", genus, "genus (default: $JACRING_GENUS or 2)");
    cmd->add_option("-p,--preset", preset, "geometric or paper")->check(CLI::IsMember({"geometric", "paper"}));
    cmd->add_option("--twist", twist, "codim-1 J-class with H^2 = pi^*twist . H");
    cmd->add_option("--shift", shift, "codim-1 J-class with S_y = H + pi^*shift");
  }

  EvalContext context() const {
    const JacContext jac(parse_genus(genus));
    auto divisor = [&](const std::string& text, const char* what) -> std::optional<JacClass> {
      if (text.empty()) return std::nullopt;
      const Expr e = parse_expr(text);
      if (check_sort(e) == Sort::kP || check_sort(e) == Sort::kDecomp) {
        throw SortError(0, std::string(what) + " must be a J-class");
      }
      return expr_detail::as_jac(EvalContext(GpbContext(jac)), eval_expr(e, EvalContext(GpbContext(jac))));
    };
    auto twist_class = divisor(twist, "--twist");
    auto shift_class = divisor(shift, "--shift");
    return EvalContext(GpbContext(jac, twist_class, shift_class), parse_preset(preset));
  }
};

int cmd_eval(const ModelOptions& m, const std::string& text, bool monomial) {
  const EvalContext ctx = m.context();
  std::cout << format_value(ctx, eval_expr(text, ctx), {monomial}) << "\n";
  return kExitOk;
}

int cmd_compare(const ModelOptions& m, const std::string& a, const std::string& b) {
  const EvalContext ctx = m.context();
  const Value va = eval_expr(a, ctx), vb = eval_expr(b, ctx);
  const bool eq = values_equal(ctx, va, vb);
  std::cout << "lhs: " << format_value(ctx, va) << "\n"
            << "rhs: " << format_value(ctx, vb) << "\n"
            << (eq ? "equal" : "different") << "\n";
  return eq ? kExitOk : kExitFailure;
}

int cmd_table(const ModelOptions& m) {
  const EvalContext ctx = m.context();
  const JacContext& jac = ctx.jac();
  const int g = static_cast<int>(jac.genus());
  std::cout << "genus " << g << "\n\n";
  for (int i = 0; i <= g; ++i) {
    std::cout << "W[" << i << "] = " << format_class(jac, w_class(jac, i), {true}) << "\n";
  }
  std::cout << "\n";
  for (int d = 0; d <= g; ++d) {
    std::cout << "Wt[" << d << "] = " << format_class(ctx.gpb, wtilde(ctx.gpb, d)) << "\n";
  }
  std::cout << "\npair(W[i], W[j])\n";
  std::size_t width = 1;
  std::vector<std::vector<std::string>> cells(g + 1, std::vector<std::string>(g + 1));
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g; ++j) {
      cells[i][j] = pair(jac, w_class(jac, i), w_class(jac, j)).str();
      width = std::max(width, cells[i][j].size());
    }
  }
  std::cout << "     ";
  for (int j = 0; j <= g; ++j) std::cout << " " << std::setw(static_cast<int>(width)) << j;
  std::cout << "\n";
  for (int i = 0; i <= g; ++i) {
    std::cout << std::setw(4) << i << " ";
    for (int j = 0; j <= g; ++j) std::cout << " " << std::setw(static_cast<int>(width)) << cells[i][j];
    std::cout << "\n";
  }
  return kExitOk;
}

struct AuditOptions {
  std::string genus = "1..4";
  std::string presets = "geometric,paper";
  std::string claims;
  bool json = false;
  bool strict = false;
  bool timings = false;
  bool list = false;
  std::uint64_t seed = 0;
  long budget_ms = 0;
  unsigned pp_max_genus = 4;
  unsigned samples = 12;
};

int cmd_audit(const AuditOptions& o) {
  if (o.list) {
    for (const auto& c : claim_registry()) std::cout << c.id << "  " << c.statement << "\n";
    return kExitOk;
  }
  AuditSettings s;
  s.seed = o.seed;
  s.budget = std::chrono::milliseconds(o.budget_ms);
  s.pp_max_genus = o.pp_max_genus;
  s.samples = o.samples;
  std::vector<std::string> filter;
  if (!o.claims.empty()) filter = split(o.claims, ',');
  for (const auto& id : filter) {
    const auto& reg = claim_registry();
    if (std::none_of(reg.begin(), reg.end(), [&](const Claim& c) { return c.id == id; })) {
      throw UsageError("unknown claim '" + id + "' (see audit --list)");
    }
  }
  const auto report = run_audit(parse_genus_list(o.genus), parse_preset_list(o.presets), filter, s);
  std::cout << render_report(report, o.json ? ReportFormat::kJson : ReportFormat::kText, {o.timings});
  if (o.strict && report.count(ClaimStatus::kRefuted) > 0) return kExitFailure;
  return kExitOk;
}

struct ClosureOptions {
  std::string generators;
  std::string ops = "all";
  std::string compare_with;
  std::string compare_ops;
  std::string model;
  bool show_basis = false;
};

/// Generator list: DSL expressions separated by top-level commas.
/// Shorthands: W = W[1..g-1], Wt = Wt[0..g], piW = pi*(W[1..g-1]).
std::vector<Expr> expand_generators(const std::string& list, unsigned g) {
  std::vector<Expr> out;
  for (const auto& item : split(list, ',')) {
    if (item == "W" || item == "piW") {
      for (unsigned i = 1; i < g; ++i) {
        const std::string w = "W[" + std::to_string(i) + "]";
        out.push_back(parse_expr(item == "W" ? w : "pi*(" + w + ")"));
      }
    } else if (item == "Wt") {
      for (unsigned d = 0; d <= g; ++d) out.push_back(parse_expr("Wt[" + std::to_string(d) + "]"));
    } else {
      out.push_back(parse_expr(item));
    }
  }
  return out;
}

Sort model_sort(const std::vector<Expr>& gens, const std::string& forced) {
  std::optional<Sort> sort;
  if (!forced.empty()) sort = forced == "P" ? Sort::kP : Sort::kJ;
  for (const auto& e : gens) {
    const Sort s = check_sort(e);
    if (s == Sort::kScalar) continue;
    if (s == Sort::kDecomp) throw SortError(e.pos, "generator '" + print_expr(e) + "' is not a class");
    if (sort && *sort != s) {
      throw SortError(e.pos, "generator '" + print_expr(e) + "' is a " + to_string(s) + " but the model is " +
                                 to_string(*sort));
    }
    sort = s;
  }
  return sort.value_or(Sort::kJ);
}

template <class Class>
void print_closure(const ClosureResult<Class>& r, const std::vector<OperatorSpec<Class>>& ops, bool show_basis,
                   const std::function<std::string(const Class&)>& fmt) {
  std::cout << "ambient: " << r.ambient << "\n";
  std::cout << "ops:";
  for (const auto& op : ops) std::cout << " " << op.name;
  std::cout << "\ndimension: " << r.dim << "\n"
            << "iterations: " << r.iterations << "\n"
            << "saturated: " << (r.saturated ? "yes" : "no") << "\n"
            << "graded: " << (r.graded ? "yes" : "no") << "\n"
            << "degree  dim\n";
  for (const auto& d : r.degree_dims) {
    std::cout << std::setw(6) << d.degree << "  " << d.dim << "\n";
  }
  if (show_basis) {
    std::cout << "basis:\n";
    for (const auto& b : r.basis) std::cout << "  " << fmt(b) << "\n";
  }
}

template <class Class>
int run_closure(const ClosureOptions& o, const EvalContext& ctx, const Ambient<Class>& amb,
                const std::function<std::vector<OperatorSpec<Class>>(const std::vector<std::string>&)>& make_ops,
                const std::function<Class(const Value&)>& cast, const std::function<std::string(const Class&)>& fmt) {
  const unsigned g = ctx.jac().genus();
  auto classes = [&](const std::string& list) {
    std::vector<Class> out;
    for (const auto& e : expand_generators(list, g)) out.push_back(cast(eval_expr(e, ctx)));
    return out;
  };
  const auto ops = make_ops(split(o.ops, ','));
  const auto a = compute_closure(classes(o.generators), ops, amb);
  print_closure(a, ops, o.show_basis, fmt);
  if (o.compare_with.empty() && o.compare_ops.empty()) return kExitOk;
  const auto ops_b = make_ops(split(o.compare_ops.empty() ? o.ops : o.compare_ops, ','));
  const auto b = compute_closure(classes(o.compare_with.empty() ? o.generators : o.compare_with), ops_b, amb);
  std::cout << "\ncompared with:\n";
  print_closure(b, ops_b, o.show_basis, fmt);
  const auto cmp = compare_subalgebras(a, b);
  std::cout << "\nrelation: " << to_string(cmp.relation) << "\n"
            << "degree  dim_a  dim_b\n";
  for (const auto& row : cmp.table) {
    std::cout << std::setw(6) << row.degree << "  " << std::setw(5) << row.dim_a << "  " << std::setw(5) << row.dim_b
              << "\n";
  }
  if (cmp.a_outside_b) std::cout << "in A not B: " << fmt(amb.from_vector(a.span.basis()[*cmp.a_outside_b])) << "\n";
  if (cmp.b_outside_a) std::cout << "in B not A: " << fmt(amb.from_vector(b.span.basis()[*cmp.b_outside_a])) << "\n";
  return kExitOk;
}

int cmd_closure(const ModelOptions& m, const ClosureOptions& o) {
  const EvalContext ctx = m.context();
  const unsigned g = ctx.jac().genus();
  std::vector<Expr> all = expand_generators(o.generators, g);
  const auto more = expand_generators(o.compare_with, g);
  all.insert(all.end(), more.begin(), more.end());
  const Sort sort = model_sort(all, o.model);
  for (const auto& list : {o.ops, o.compare_ops}) {
    try {
      expand_operator_names(split(list, ','));
    } catch (const RangeError& e) {
      throw UsageError(e.what());
    }
  }
  if (sort == Sort::kJ) {
    const JacContext& jac = ctx.jac();
    return run_closure<JacClass>(
        o, ctx, jacobian_ambient(jac), [&](const auto& names) { return jacobian_operators(jac, names); },
        [&](const Value& v) { return expr_detail::as_jac(ctx, v); },
        [&](const JacClass& x) { return format_class(jac, x); });
  }
  const Preset preset = ctx.preset;
  return run_closure<GpbClass>(
      o, ctx, gpb_ambient(ctx.gpb), [&](const auto& names) { return gpb_operators(ctx.gpb, preset, names); },
      [&](const Value& v) { return expr_detail::as_gpb(ctx, v); },
      [&](const GpbClass& x) { return format_class(ctx.gpb, x); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jacring: exact cohomology of Jacobians and their P^1-bundle extension"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  ModelOptions eval_model, compare_model, table_model, closure_model;
  std::string expr_text, lhs, rhs;
  bool monomial = false;

  auto* eval = app.add_subcommand("eval", "evaluate an expression");
  eval_model.add_to(eval);
  eval->add_flag("--monomial", monomial, "print classes as generator monomials");
  eval->add_option("EXPR", expr_text, "expression")->required();

  auto* compare = app.add_subcommand("compare", "evaluate two expressions and test equality (exit 1 if different)");
  compare_model.add_to(compare);
  compare->add_option("LHS", lhs, "expression")->required();
  compare->add_option("RHS", rhs, "expression")->required();

  auto* table = app.add_subcommand("table", "print W_i, Wt_d and the pairing matrix");
  table_model.add_to(table);

  AuditOptions audit_opt;
  auto* audit = app.add_subcommand("audit", "run the claims audit");
  audit->add_option("-g,--genus", audit_opt.genus, "genus list, e.g. 1..4 or 2,3");
  audit->add_option("-p,--preset", audit_opt.presets, "preset list, e.g. geometric,paper");
  audit->add_option("--claims", audit_opt.claims, "comma-separated claim ids");
  audit->add_option("--seed", audit_opt.seed, "sampling seed");
  audit->add_option("--samples", audit_opt.samples, "random classes per sampled claim");
  audit->add_option("--budget-ms", audit_opt.budget_ms, "per-claim time cap in ms (0 = none)");
  audit->add_option("--pp-max-genus", audit_opt.pp_max_genus, "skip P x P claims above this genus");
  audit->add_flag("--json", audit_opt.json, "JSON report");
  audit->add_flag("--strict", audit_opt.strict, "exit 1 if any claim is refuted");
  audit->add_flag("--timings", audit_opt.timings, "include wall-clock times");
  audit->add_flag("--list", audit_opt.list, "list claim ids and exit");

  ClosureOptions closure_opt;
  auto* closure = app.add_subcommand("closure", "compute a closure and optionally compare it");
  closure_model.add_to(closure);
  closure->add_option("--generators", closure_opt.generators, "generator list (W, Wt, piW or expressions)");
  closure->add_option("--ops", closure_opt.ops, "wedge,pont,fourier,nstar,nlow or all");
  closure->add_option("--compare-with", closure_opt.compare_with, "generators of the second closure");
  closure->add_option("--compare-ops", closure_opt.compare_ops, "operators of the second closure");
  closure->add_option("--model", closure_opt.model, "J or P (inferred from generators)")
      ->check(CLI::IsMember({"J", "P"}));
  closure->add_flag("--basis", closure_opt.show_basis, "print basis classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_model, expr_text, monomial);
    if (*compare) return cmd_compare(compare_model, lhs, rhs);
    if (*table) return cmd_table(table_model);
    if (*audit) return cmd_audit(audit_opt);
    if (*closure) return cmd_closure(closure_model, closure_opt);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const SortError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
