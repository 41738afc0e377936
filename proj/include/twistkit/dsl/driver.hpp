#pragma once

// Resolves a parsed specification into algebraic objects and runs the
// verification commands on it.

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "twistkit/chern.hpp"
#include "twistkit/dsl/ast.hpp"
#include "twistkit/dsl/evaluate.hpp"
#include "twistkit/dsl/parser.hpp"
#include "twistkit/modules.hpp"
#include "twistkit/report.hpp"
#include "twistkit/star.hpp"
#include "twistkit/twist.hpp"

namespace twistkit::dsl {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t order = 4;
  int cutoff = 2;
  int module_cutoff = 1;
  int grid = 64;
  std::optional<int> degree;
  std::optional<std::string> name;
  std::optional<std::string> lhs, rhs, transform;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check-twist", "star-eval", "assoc-check", "poisson-check", "module-check",
                                                 "equivariance-check", "chern", "equiv-apply", "all"};
  return names;
}

template <class B>
using ActionPtr = std::shared_ptr<const ActionAssignment<B>>;
using AnyBasis = std::variant<TorusBasis, AffineBasis>;
using AnyAction = std::variant<ActionPtr<TorusBasis>, ActionPtr<AffineBasis>>;

struct LieEntry {
  Declaration decl;
  LieAlgebraPtr alg;
};
struct ModelEntry {
  Declaration decl;
  AnyBasis basis;
};
struct ActionEntry {
  Declaration decl;
  std::string lie, model;
  AnyAction action;
};
struct TwistEntry {
  Declaration decl;
  std::string lie;
  TensorSeries series;
};
struct StarEntry {
  Declaration decl;
  std::string twist, action;
  std::optional<PoissonStructure> poisson;
};
struct ModuleEntry {
  Declaration decl;
  std::string twist, action;
  AnyAction sections;
};
struct BundleEntry {
  Declaration decl;
  std::optional<LineBundleT2> bundle;
  std::string problem;  // why no bundle was built
};

/// Every declaration of a document, evaluated at truncation order N.
class Environment {
public:
  Environment(const SpecDocument& doc, std::size_t order) : order_(order) {
    for (const auto& d : doc.declarations) {
      if (kinds_.count(d.name)) throw SpecError(ErrorCode::duplicate_name, d.pos, "'" + d.name + "' is already declared");
      if (d.kind == "liealgebra") add_lie(d);
      else if (d.kind == "model") add_model(d);
      else if (d.kind == "action") add_action(d);
      else if (d.kind == "twist") add_twist(d);
      else if (d.kind == "star") add_star(d);
      else if (d.kind == "module") add_module(d);
      else if (d.kind == "bundle") add_bundle(d);
      kinds_[d.name] = d.kind;
    }
  }

  std::size_t order() const { return order_; }
  const std::vector<LieEntry>& lie_algebras() const { return lies_; }
  const std::vector<ModelEntry>& models() const { return models_; }
  const std::vector<ActionEntry>& actions() const { return actions_; }
  const std::vector<TwistEntry>& twists() const { return twists_; }
  const std::vector<StarEntry>& stars() const { return stars_; }
  const std::vector<ModuleEntry>& modules() const { return modules_; }
  const std::vector<BundleEntry>& bundles() const { return bundles_; }

  const LieEntry& lie(const std::string& n) const { return find(lies_, n); }
  const ActionEntry& action(const std::string& n) const { return find(actions_, n); }
  const TwistEntry& twist(const std::string& n) const { return find(twists_, n); }

private:
  template <class E>
  static const E& find(const std::vector<E>& v, const std::string& n) {
    for (const auto& e : v)
      if (e.decl.name == n) return e;
    throw std::out_of_range("no declaration " + n);
  }

  void expect(const std::string& name, const std::string& kind, Pos pos) const {
    auto it = kinds_.find(name);
    if (it == kinds_.end()) throw SpecError(ErrorCode::unresolved_name, pos, "unknown " + kind + " '" + name + "'");
    if (it->second != kind)
      throw SpecError(ErrorCode::type_mismatch, pos, "'" + name + "' is a " + it->second + ", expected a " + kind);
  }

  static void check_reserved(const std::string& name, Pos pos) {
    static const std::set<std::string> reserved = {"i", "h", "exp", "log", "sin", "cos"};
    if (reserved.count(name)) throw SpecError(ErrorCode::invalid_declaration, pos, "'" + name + "' is reserved");
  }

  void add_lie(const Declaration& d) {
    if (d.generators.empty()) throw SpecError(ErrorCode::invalid_declaration, d.pos, "Lie algebra without generators");
    std::set<std::string> seen;
    for (const auto& g : d.generators) {
      check_reserved(g, d.pos);
      if (!seen.insert(g).second) throw SpecError(ErrorCode::duplicate_name, d.pos, "generator '" + g + "' listed twice");
    }
    std::vector<std::tuple<int, int, LieAlgebra::Combination>> rules;
    auto index = [&](const std::string& g, Pos pos) {
      for (std::size_t k = 0; k < d.generators.size(); ++k)
        if (d.generators[k] == g) return static_cast<int>(k);
      throw SpecError(ErrorCode::unresolved_name, pos, "'" + g + "' is not a generator of " + d.name);
    };
    std::set<std::pair<int, int>> set_pairs;
    for (const auto& r : d.rules) {
      const int a = index(r.left, r.pos), b = index(r.right, r.pos);
      if (!set_pairs.insert({a, b}).second) throw SpecError(ErrorCode::duplicate_name, r.pos, "bracket rule given twice");
      rules.emplace_back(a, b, evaluate_combination(d.generators, r.value));
    }
    lies_.push_back({d, LieAlgebra::from_rules(d.generators, rules)});
  }

  void add_model(const Declaration& d) {
    if (d.number < 1 || d.number > 9) throw SpecError(ErrorCode::invalid_declaration, d.pos, "model dimension must be between 1 and 9");
    const int n = static_cast<int>(d.number);
    if (d.form == "torus") models_.push_back({d, TorusBasis{n}});
    else models_.push_back({d, AffineBasis{n}});
  }

  template <class B>
  ActionPtr<B> build_action(const Declaration& d, const std::vector<Assignment>& assigns, const LieAlgebraPtr& alg, const B& basis,
                            const ActionAssignment<B>* fallback) const {
    OperatorEvaluator<B> ev(basis, 0);
    std::vector<std::optional<DiffOp<B>>> images(static_cast<std::size_t>(alg->dim()));
    for (const auto& a : assigns) {
      const int g = alg->index_of(a.target);
      if (g < 0) throw SpecError(ErrorCode::unresolved_name, a.pos, "'" + a.target + "' is not a generator");
      auto& slot = images[static_cast<std::size_t>(g)];
      if (slot) throw SpecError(ErrorCode::duplicate_name, a.pos, "generator '" + a.target + "' assigned twice");
      slot = ev.eval(a.value);
    }
    std::vector<DiffOp<B>> ops;
    for (int g = 0; g < alg->dim(); ++g) {
      auto& slot = images[static_cast<std::size_t>(g)];
      if (slot) ops.push_back(*slot);
      else if (fallback) ops.push_back(fallback->image(g));
      else throw SpecError(ErrorCode::invalid_declaration, d.pos, "no operator assigned to generator " + alg->name(g));
    }
    try {
      return std::make_shared<const ActionAssignment<B>>(alg, basis, std::move(ops));
    } catch (const DomainError& e) {
      throw SpecError(ErrorCode::invalid_declaration, d.pos, e.what());
    }
  }

  void add_action(const Declaration& d) {
    const std::string lie_name = *d.ref("lie"), model_name = *d.ref("model");
    expect(lie_name, "liealgebra", d.ref_pos("lie"));
    expect(model_name, "model", d.ref_pos("model"));
    const auto& alg = lie(lie_name).alg;
    const auto& model = find(models_, model_name);
    AnyAction act = std::visit(
        [&](const auto& basis) -> AnyAction {
          using B = std::decay_t<decltype(basis)>;
          return build_action<B>(d, d.assignments, alg, basis, nullptr);
        },
        model.basis);
    actions_.push_back({d, lie_name, model_name, std::move(act)});
  }

  void add_twist(const Declaration& d) {
    std::string lie_name;
    if (auto l = d.ref("lie")) {
      lie_name = *l;
      expect(lie_name, "liealgebra", d.ref_pos("lie"));
    } else {
      if (lies_.empty()) throw SpecError(ErrorCode::unresolved_name, d.pos, "twist declared before any Lie algebra");
      lie_name = lies_.back().decl.name;
    }
    const auto& alg = lie(lie_name).alg;
    TensorEvaluator ev(alg, order_);
    TensorSeries series(order_);
    if (d.form == "expr") {
      series = ev.as_tensor(ev.eval(*d.body), 2, (*d.body)->pos);
    } else {
      TensorEvaluator flat(alg, 0);
      for (std::size_t k = 0; k < d.orders.size(); ++k) {
        const auto& e = d.orders[k];
        TensorSeries c = flat.as_tensor(flat.eval(e), 2, e->pos);
        if (k <= order_) series[k] = c[0];
      }
      for (std::size_t k = 0; k <= order_; ++k)
        if (series[k].arity() == 0) series[k] = TensorElement(alg, 2, {});
    }
    twists_.push_back({d, lie_name, std::move(series)});
  }

  void add_star(const Declaration& d) {
    const std::string t = *d.ref("twist"), a = *d.ref("action");
    expect(t, "twist", d.ref_pos("twist"));
    expect(a, "action", d.ref_pos("action"));
    if (twist(t).lie != action(a).lie)
      throw SpecError(ErrorCode::type_mismatch, d.pos, "twist " + t + " and action " + a + " use different Lie algebras");
    const int dim = std::visit([](const auto& p) { return p->basis().dimension(); }, action(a).action);
    std::optional<PoissonStructure> poisson;
    const std::string flavour = d.form.empty() ? (dim == 2 ? "standard" : dim == 1 ? "zero" : "none") : d.form;
    if (flavour == "standard") {
      if (dim != 2) throw SpecError(ErrorCode::invalid_declaration, d.pos, "the standard Poisson structure needs a 2-dimensional model");
      poisson = PoissonStructure::standard(2);
    } else if (flavour == "zero") {
      poisson = PoissonStructure::zero(dim);
    }
    stars_.push_back({d, t, a, poisson});
  }

  void add_module(const Declaration& d) {
    const std::string t = *d.ref("twist"), a = *d.ref("action");
    expect(t, "twist", d.ref_pos("twist"));
    expect(a, "action", d.ref_pos("action"));
    if (twist(t).lie != action(a).lie)
      throw SpecError(ErrorCode::type_mismatch, d.pos, "twist " + t + " and action " + a + " use different Lie algebras");
    const auto& alg = lie(action(a).lie).alg;
    AnyAction sections = std::visit(
        [&](const auto& act) -> AnyAction { return build_action(d, d.sections, alg, act->basis(), act.get()); }, action(a).action);
    modules_.push_back({d, t, a, std::move(sections)});
  }

  void add_bundle(const Declaration& d) {
    const QuasiTorusBasis B{2};
    OperatorEvaluator<QuasiTorusBasis> ev(B, 0);
    BundleEntry entry{d, std::nullopt, ""};
    if (d.form == "degree") {
      if (d.number < -1000 || d.number > 1000) throw SpecError(ErrorCode::invalid_declaration, d.pos, "degree out of range");
      std::optional<QuasiFunction> ax, ay;
      for (const auto& a : d.assignments) {
        auto& slot = a.target == "A_x" ? ax : a.target == "A_y" ? ay : throw SpecError(ErrorCode::unresolved_name, a.pos, "connection components are A_x and A_y");
        if (slot) throw SpecError(ErrorCode::duplicate_name, a.pos, a.target + " given twice");
        slot = ev.function(a.value);
      }
      LineBundleT2 L = standard_connection(static_cast<int>(d.number));
      try {
        if (ax) L.connection.A_x = TrigPoly::from_exact(*ax);
        if (ay) L.connection.A_y = TrigPoly::from_exact(*ay);
        entry.bundle = L;
      } catch (const DomainError& e) {
        entry.problem = e.what();
      }
    } else {
      std::optional<DiffOp<QuasiTorusBasis>> nx, ny;
      for (const auto& a : d.assignments) {
        auto& slot = a.target == "d/dx" ? nx : a.target == "d/dy" ? ny : throw SpecError(ErrorCode::unresolved_name, a.pos, "section actions are given for d/dx and d/dy");
        if (slot) throw SpecError(ErrorCode::duplicate_name, a.pos, a.target + " given twice");
        slot = ev.eval(a.value);
      }
      if (!nx || !ny) throw SpecError(ErrorCode::invalid_declaration, d.pos, "bundle action needs both d/dx and d/dy");
      try {
        entry.bundle = flat_connection_from_action(*nx, *ny);
      } catch (const DomainError& e) {
        entry.problem = e.what();
      }
    }
    bundles_.push_back(std::move(entry));
  }

  std::size_t order_;
  std::map<std::string, std::string> kinds_;
  std::vector<LieEntry> lies_;
  std::vector<ModelEntry> models_;
  std::vector<ActionEntry> actions_;
  std::vector<TwistEntry> twists_;
  std::vector<StarEntry> stars_;
  std::vector<ModuleEntry> modules_;
  std::vector<BundleEntry> bundles_;
};

struct CommandResult {
  std::string command;
  std::vector<Report> reports;

  bool passed() const {
    for (const auto& r : reports)
      if (!r.passed()) return false;
    return true;
  }
  int exit_code() const { return passed() ? 0 : 1; }
};

namespace detail {

inline Report with_subject(Report r, const std::string& subject) {
  r.subject = subject;
  return r;
}

inline Report error_report(const std::string& check, const std::string& subject, const std::string& message) {
  Report r{check, subject};
  r.status = Status::error;
  r.details.push_back(message);
  return r;
}

inline Report blocked_report(const std::string& check, const std::string& subject, const std::string& reason) {
  Report r{check, subject};
  r.status = Status::blocked;
  r.details.push_back("skipped: " + reason);
  return r;
}

inline std::string format_c1(double c1, long target) {
  const double err = std::fabs(c1 - static_cast<double>(target));
  char buf[160];
  const double shown = std::fabs(c1) < 5e-13 ? 0.0 : c1;
  if (err < 1e-12)
    std::snprintf(buf, sizeof buf, "c1 = %.12f (target %ld, |err| < 1e-12)", shown, target);
  else
    std::snprintf(buf, sizeof buf, "c1 = %.12f (target %ld, |err| = %.3e)", shown, target, err);
  return buf;
}

}  // namespace detail

class Runner {
public:
  Runner(const SpecDocument& doc, Options options) : opt_(std::move(options)), env_(doc, opt_.order) {}

  const Environment& environment() const { return env_; }

  CommandResult run(const std::string& cmd) {
    CommandResult out{cmd, {}};
    auto& rs = out.reports;
    if (cmd == "check-twist") {
      for (const auto& t : select(env_.twists(), "twist")) append(rs, twist_reports(*t));
    } else if (cmd == "star-eval") {
      if (!opt_.lhs || !opt_.rhs) throw UsageError("star-eval needs --lhs and --rhs");
      for (const auto& s : select(env_.stars(), "star")) append(rs, star_reports(*s, cmd));
    } else if (cmd == "assoc-check" || cmd == "poisson-check" || cmd == "equiv-apply") {
      if (cmd == "equiv-apply" && !opt_.transform) throw UsageError("equiv-apply needs --transform");
      for (const auto& s : select(env_.stars(), "star")) append(rs, star_reports(*s, cmd));
    } else if (cmd == "module-check" || cmd == "equivariance-check") {
      for (const auto& m : select(env_.modules(), "module")) append(rs, module_reports(*m, cmd));
    } else if (cmd == "chern") {
      if (opt_.degree) {
        rs.push_back(chern_report("standard connection of degree " + std::to_string(*opt_.degree), standard_connection(*opt_.degree),
                                  *opt_.degree));
      } else {
        for (const auto& b : select(env_.bundles(), "bundle")) rs.push_back(bundle_report(*b));
      }
    } else if (cmd == "all") {
      run_all(rs);
    } else {
      throw UsageError("unknown command '" + cmd + "'");
    }
    return out;
  }

private:
  template <class E>
  std::vector<const E*> select(const std::vector<E>& entries, const std::string& kind) const {
    std::vector<const E*> out;
    for (const auto& e : entries)
      if (!opt_.name || e.decl.name == *opt_.name) out.push_back(&e);
    if (out.empty()) {
      if (opt_.name) throw UsageError("no " + kind + " named '" + *opt_.name + "' in the specification");
      throw UsageError("the specification declares no " + kind);
    }
    return out;
  }

  static void append(std::vector<Report>& into, const std::vector<Report>& more) { into.insert(into.end(), more.begin(), more.end()); }

  /// The twist ready for use: gauge-normalized when F_0 != 1⊗1. Reports on
  /// the normalization go to `log`.
  std::optional<Twist> prepared_twist(const TwistEntry& t, std::vector<Report>* log) const {
    const auto& alg = env_.lie(t.lie).alg;
    const auto& head = t.series[0];
    if (head == TensorElement::identity(alg, 2)) return Twist(alg, t.series);
    try {
      Twist normalized = gauge_normalize(alg, t.series);
      if (log) {
        Report r = check_gauge_equivalence(alg, t.series, normalized);
        r.subject = t.decl.name;
        r.details.push_back("F_0 = " + render(head) + " replaced by 1⊗1");
        log->push_back(std::move(r));
      }
      return normalized;
    } catch (const DomainError& e) {
      if (log) log->push_back(detail::error_report("gauge normalization", t.decl.name, e.what()));
      return std::nullopt;
    }
  }

  std::vector<Report> twist_reports(const TwistEntry& t) {
    std::vector<Report> rs;
    auto F = prepared_twist(t, &rs);
    if (!F) return rs;
    rs.push_back(detail::with_subject(check_counitality(*F), t.decl.name));
    rs.push_back(detail::with_subject(check_cocycle(*F), t.decl.name));
    return rs;
  }

  template <class B>
  std::vector<Report> star_reports_for(const StarEntry& s, const ActionPtr<B>& act, const std::string& cmd) {
    std::vector<Report> rs;
    const std::string& name = s.decl.name;
    auto F = prepared_twist(env_.twist(s.twist), nullptr);
    if (!F) return {detail::error_report("star product", name, "twist " + s.twist + " cannot be normalized")};
    std::optional<StarAlgebra<B>> S;
    try {
      S.emplace(*F, act, s.poisson, false);
    } catch (const DomainError& e) {
      return {detail::error_report("star product", name, e.what())};
    }
    const auto& basis = act->basis();
    const std::size_t N = env_.order();
    BinaryProduct<B> star = [&](const Function<B>& f, const Function<B>& g) { return S->star(f, g); };
    if (cmd == "star-eval") {
      OperatorEvaluator<B> ev(basis, N);
      const Function<B> f = ev.function(parse_expression(*opt_.lhs));
      const Function<B> g = ev.function(parse_expression(*opt_.rhs));
      Report r{"star product evaluation", name};
      r.witness("f", f.render());
      r.witness("g", g.render());
      r.witness("f*g", S->star(f, g).render());
      if (f.is_h_constant() && g.is_h_constant())
        for (std::size_t k = 0; k <= N; ++k) r.witness("B_" + std::to_string(k) + "(f,g)", extract_Bk(*S, f, g, k).render());
      rs.push_back(std::move(r));
    } else if (cmd == "assoc-check") {
      rs.push_back(check_associativity<B>(star, basis_triples(basis, opt_.cutoff, N), name));
      rs.push_back(check_unitality<B>(star, S->one(), basis_samples(basis, opt_.cutoff, N), name));
      rs.push_back(check_classical_limit<B>(star, basis_samples(basis, opt_.cutoff, N), name));
    } else if (cmd == "poisson-check") {
      if (!s.poisson) {
        rs.push_back(detail::blocked_report("first-order Poisson compatibility", name, "no Poisson structure declared"));
      } else if (N < 1) {
        rs.push_back(detail::error_report("first-order Poisson compatibility", name, "needs truncation order >= 1"));
      } else {
        rs.push_back(check_first_order_poisson<B>(star, s.poisson, basis_samples(basis, opt_.cutoff, N), name));
      }
    } else if (cmd == "equiv-apply") {
      OperatorEvaluator<B> ev(basis, N);
      const DiffOp<B> T = ev.eval(parse_expression(*opt_.transform));
      const DiffOp<B> correction = T + DiffOp<B>::identity(basis, N) * Scalar(-1);
      std::optional<EquivalenceMap<B>> map;
      try {
        map.emplace(correction);
      } catch (const DomainError& e) {
        Report r{"equivalence map", name};
        r.status = Status::fail;
        r.details.push_back("rejected: " + std::string(e.what()));
        rs.push_back(std::move(r));
        return rs;
      }
      Report accepted{"equivalence map", name};
      accepted.details.push_back("T = " + T.render());
      rs.push_back(std::move(accepted));
      BinaryProduct<B> deformed = apply_equivalence(*map, *S);
      const auto samples = basis_samples(basis, opt_.module_cutoff, N);
      rs.push_back(check_associativity<B>(deformed, basis_triples(basis, opt_.module_cutoff, N), name + " transformed"));
      rs.push_back(check_unitality<B>(deformed, S->one(), samples, name + " transformed"));
      rs.push_back(detail::with_subject(check_intertwining(*map, *S, deformed, samples), name));
    }
    return rs;
  }

  std::vector<Report> star_reports(const StarEntry& s, const std::string& cmd) {
    return std::visit([&](const auto& act) { return star_reports_for(s, act, cmd); }, env_.action(s.action).action);
  }

  template <class B>
  std::vector<Report> module_reports_for(const ModuleEntry& m, const ActionPtr<B>& act, const std::string& cmd) {
    const std::string& name = m.decl.name;
    auto F = prepared_twist(env_.twist(m.twist), nullptr);
    if (!F) return {detail::error_report("deformed module", name, "twist " + m.twist + " cannot be normalized")};
    const auto& sections = std::get<ActionPtr<B>>(m.sections);
    std::optional<EquivariantBimodule<B>> M;
    try {
      M.emplace(act, sections, act);
    } catch (const DomainError& e) {
      return {detail::error_report("equivariant bimodule", name, e.what())};
    }
    const auto D = deform_module(*M, *F, false);
    const auto triples = basis_triples(act->basis(), opt_.module_cutoff, env_.order());
    std::vector<Report> rs;
    if (cmd == "module-check") {
      rs.push_back(M->check_classical_equivariance(opt_.module_cutoff));
      append(rs, check_module_axioms(D, triples));
      append(rs, check_psi(D, triples));
    } else {
      rs.push_back(check_equivariance(D, triples));
    }
    for (auto& r : rs) r.subject = name;
    return rs;
  }

  std::vector<Report> module_reports(const ModuleEntry& m, const std::string& cmd) {
    return std::visit([&](const auto& act) { return module_reports_for(m, act, cmd); }, env_.action(m.action).action);
  }

  Report chern_report(const std::string& subject, const LineBundleT2& L, long target) const {
    Report r{"Chern number", subject};
    const double c1 = chern_number(L, opt_.grid);
    const double fine = chern_number(L, 2 * opt_.grid);
    r.details.push_back(detail::format_c1(c1, target));
    char buf[96];
    std::snprintf(buf, sizeof buf, "grid %d -> %d changes c1 by %.1e", opt_.grid, 2 * opt_.grid, std::fabs(fine - c1) < 1e-15 ? 0.0 : std::fabs(fine - c1));
    r.details.push_back(buf);
    if (std::fabs(c1 - static_cast<double>(target)) >= 1e-10) r.fail();
    return r;
  }

  Report bundle_report(const BundleEntry& b) const {
    const std::string& name = b.decl.name;
    if (!b.bundle) {
      if (b.decl.form == "action") {
        Report r{"Chern number", name};
        r.status = Status::fail;
        r.details.push_back("section action rejected: " + b.problem);
        return r;
      }
      return detail::error_report("Chern number", name, b.problem);
    }
    return chern_report(name, *b.bundle, b.decl.form == "action" ? 0 : b.decl.number);
  }

  void run_all(std::vector<Report>& rs) {
    std::set<std::string> failed;
    auto note = [&](const std::string& name, const std::vector<Report>& reports) {
      for (const auto& r : reports)
        if (!r.passed()) failed.insert(name);
      append(rs, reports);
    };
    auto first_failed = [&](std::initializer_list<std::string> deps) -> std::optional<std::string> {
      for (const auto& d : deps)
        if (failed.count(d)) return d;
      return std::nullopt;
    };

    for (const auto& l : env_.lie_algebras()) {
      Report r{"Lie algebra axioms (antisymmetry, Jacobi)", l.decl.name};
      for (const auto& v : l.alg->validate()) {
        r.fail();
        r.details.push_back(v.message);
      }
      note(l.decl.name, {r});
    }
    for (const auto& a : env_.actions()) {
      if (auto dep = first_failed({a.lie})) {
        note(a.decl.name, {detail::blocked_report("action is a Lie algebra homomorphism", a.decl.name, "prerequisite " + *dep + " failed")});
        continue;
      }
      Report r{"action is a Lie algebra homomorphism", a.decl.name};
      for (const auto& p : std::visit([](const auto& act) { return act->validate(); }, a.action)) {
        r.fail();
        r.details.push_back(p);
      }
      note(a.decl.name, {r});
    }
    for (const auto& t : env_.twists()) {
      if (auto dep = first_failed({t.lie})) {
        note(t.decl.name, {detail::blocked_report("twist checks", t.decl.name, "prerequisite " + *dep + " failed")});
        continue;
      }
      note(t.decl.name, twist_reports(t));
    }
    for (const auto& s : env_.stars()) {
      if (auto dep = first_failed({s.twist, s.action})) {
        note(s.decl.name, {detail::blocked_report("star product checks", s.decl.name, "prerequisite " + *dep + " failed")});
        continue;
      }
      note(s.decl.name, star_reports(s, "assoc-check"));
      if (s.poisson) note(s.decl.name, star_reports(s, "poisson-check"));
    }
    for (const auto& m : env_.modules()) {
      if (auto dep = first_failed({m.twist, m.action})) {
        note(m.decl.name, {detail::blocked_report("module checks", m.decl.name, "prerequisite " + *dep + " failed")});
        continue;
      }
      note(m.decl.name, module_reports(m, "module-check"));
      note(m.decl.name, module_reports(m, "equivariance-check"));
    }
    for (const auto& b : env_.bundles()) note(b.decl.name, {bundle_report(b)});
  }

  Options opt_;
  Environment env_;
};

inline CommandResult run_command(const std::string& cmd, const SpecDocument& doc, const Options& options) {
  return Runner(doc, options).run(cmd);
}

inline nlohmann::ordered_json to_json(const CommandResult& result, const std::string& spec, const Options& opt) {
  nlohmann::ordered_json j;
  j["command"] = result.command;
  j["spec"] = spec;
  j["options"] = {{"order", opt.order}, {"cutoff", opt.cutoff}, {"module_cutoff", opt.module_cutoff}, {"grid", opt.grid}};
  auto reports = nlohmann::ordered_json::array();
  std::map<std::string, int> counts;
  for (const auto& r : result.reports) {
    reports.push_back(r.to_json());
    ++counts[to_string(r.status)];
  }
  j["reports"] = reports;
  j["summary"] = {{"reports", result.reports.size()},
                  {"pass", counts["pass"]},
                  {"fail", counts["fail"]},
                  {"blocked", counts["blocked"]},
                  {"error", counts["error"]}};
  j["status"] = result.passed() ? "pass" : "fail";
  return j;
}

inline std::string to_text(const CommandResult& result, const std::string& spec, const Options& opt) {
  std::string out = "twistkit " + result.command + (spec.empty() ? "" : " " + spec) + "  (order " + std::to_string(opt.order) +
                    ", cutoff " + std::to_string(opt.cutoff) + ", module cutoff " + std::to_string(opt.module_cutoff) + ")\n";
  std::map<std::string, int> counts;
  for (const auto& r : result.reports) {
    out += r.to_text();
    ++counts[to_string(r.status)];
  }
  out += std::to_string(result.reports.size()) + " reports: " + std::to_string(counts["pass"]) + " pass, " +
         std::to_string(counts["fail"]) + " fail, " + std::to_string(counts["blocked"]) + " blocked, " +
         std::to_string(counts["error"]) + " error\n";
  return out;
}

}  // namespace twistkit::dsl
