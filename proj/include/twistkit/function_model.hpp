#pragma once

// Concrete function models on which U(g) acts by differential operators:
// Fourier polynomials on the torus T^n, polynomials on R^n, and the mixed
// "quasi-periodic" model x^a e^{i<m,x>} used to test periodicity of section
// actions. Every model is spanned by basis elements closed under products and
// derivatives, with coefficients in truncated series over Q(i).

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/scalar.hpp"
#include "twistkit/series.hpp"
#include "twistkit/uea.hpp"

namespace twistkit {

using BasisKey = std::vector<int>;

inline std::string coordinate_name(int j, int n) {
  static const char* names[] = {"x", "y", "z"};
  if (n <= 3) return names[j];
  return "x" + std::to_string(j + 1);
}

/// e_m(x) = exp(i <m, x>) on T^n = R^n / (2 pi Z)^n; d_j e_m = i m_j e_m.
struct TorusBasis {
  int n = 2;

  static constexpr const char* kind = "torus";
  int dimension() const { return n; }
  std::size_t key_size() const { return static_cast<std::size_t>(n); }
  BasisKey unit() const { return BasisKey(key_size(), 0); }
  BasisKey multiply(const BasisKey& a, const BasisKey& b) const {
    BasisKey k(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) k[p] = a[p] + b[p];
    return k;
  }
  std::vector<std::pair<Scalar, BasisKey>> derivative(int j, const BasisKey& k) const {
    if (k[static_cast<std::size_t>(j)] == 0) return {};
    return {{Scalar(mpq_class(0), mpq_class(k[static_cast<std::size_t>(j)])), k}};
  }
  std::optional<BasisKey> coordinate(int) const { return std::nullopt; }
  BasisKey mode(const std::vector<int>& m) const { return m; }
  std::string render(const BasisKey& k) const {
    std::string out = "e(";
    for (std::size_t p = 0; p < k.size(); ++p) out += (p ? "," : "") + std::to_string(k[p]);
    return out + ")";
  }
  /// Modes with |m_j| <= cutoff for all j.
  std::vector<BasisKey> sample_keys(int cutoff) const {
    std::vector<BasisKey> out{BasisKey{}};
    for (int j = 0; j < n; ++j) {
      std::vector<BasisKey> next;
      for (const auto& k : out)
        for (int m = -cutoff; m <= cutoff; ++m) {
          BasisKey kk = k;
          kk.push_back(m);
          next.push_back(std::move(kk));
        }
      out = std::move(next);
    }
    return out;
  }
  /// Spanning family for operator identities: modes with |m|_1 <= 3.
  std::vector<BasisKey> test_keys() const {
    std::vector<BasisKey> out;
    for (auto& k : sample_keys(3)) {
      int norm = 0;
      for (int x : k) norm += std::abs(x);
      if (norm <= 3) out.push_back(k);
    }
    return out;
  }
  bool operator==(const TorusBasis& o) const { return n == o.n; }
};

/// x^a on R^n; d_j x^a = a_j x^{a - e_j}.
struct AffineBasis {
  int n = 1;

  static constexpr const char* kind = "affine";
  int dimension() const { return n; }
  std::size_t key_size() const { return static_cast<std::size_t>(n); }
  BasisKey unit() const { return BasisKey(key_size(), 0); }
  BasisKey multiply(const BasisKey& a, const BasisKey& b) const {
    BasisKey k(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) k[p] = a[p] + b[p];
    return k;
  }
  std::vector<std::pair<Scalar, BasisKey>> derivative(int j, const BasisKey& k) const {
    const auto jj = static_cast<std::size_t>(j);
    if (k[jj] == 0) return {};
    BasisKey d = k;
    --d[jj];
    return {{Scalar(k[jj]), d}};
  }
  std::optional<BasisKey> coordinate(int j) const {
    BasisKey k = unit();
    k[static_cast<std::size_t>(j)] = 1;
    return k;
  }
  std::string render(const BasisKey& k) const {
    std::string out;
    for (std::size_t p = 0; p < k.size(); ++p) {
      if (k[p] == 0) continue;
      if (!out.empty()) out += "*";
      out += coordinate_name(static_cast<int>(p), n);
      if (k[p] > 1) out += "^" + std::to_string(k[p]);
    }
    return out.empty() ? "1" : out;
  }
  /// Monomials of total degree <= cutoff.
  std::vector<BasisKey> sample_keys(int cutoff) const {
    std::vector<BasisKey> out{BasisKey{}};
    for (int j = 0; j < n; ++j) {
      std::vector<BasisKey> next;
      for (const auto& k : out) {
        int used = 0;
        for (int x : k) used += x;
        for (int a = 0; a + used <= cutoff; ++a) {
          BasisKey kk = k;
          kk.push_back(a);
          next.push_back(std::move(kk));
        }
      }
      out = std::move(next);
    }
    return out;
  }
  std::vector<BasisKey> test_keys() const { return sample_keys(3); }
  bool operator==(const AffineBasis& o) const { return n == o.n; }
};

/// x^a e^{i<m,x>} on R^n; key = (a_1..a_n, m_1..m_n). Periodic iff a = 0.
struct QuasiTorusBasis {
  int n = 2;

  static constexpr const char* kind = "quasi-torus";
  int dimension() const { return n; }
  std::size_t key_size() const { return 2 * static_cast<std::size_t>(n); }
  BasisKey unit() const { return BasisKey(key_size(), 0); }
  BasisKey multiply(const BasisKey& a, const BasisKey& b) const {
    BasisKey k(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) k[p] = a[p] + b[p];
    return k;
  }
  std::vector<std::pair<Scalar, BasisKey>> derivative(int j, const BasisKey& k) const {
    const auto jj = static_cast<std::size_t>(j);
    const auto mj = jj + static_cast<std::size_t>(n);
    std::vector<std::pair<Scalar, BasisKey>> out;
    if (k[jj] > 0) {
      BasisKey d = k;
      --d[jj];
      out.emplace_back(Scalar(k[jj]), d);
    }
    if (k[mj] != 0) out.emplace_back(Scalar(mpq_class(0), mpq_class(k[mj])), k);
    return out;
  }
  std::optional<BasisKey> coordinate(int j) const {
    BasisKey k = unit();
    k[static_cast<std::size_t>(j)] = 1;
    return k;
  }
  BasisKey mode(const std::vector<int>& m) const {
    BasisKey k = unit();
    for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(n + j)] = m[static_cast<std::size_t>(j)];
    return k;
  }
  bool is_periodic(const BasisKey& k) const {
    for (int j = 0; j < n; ++j)
      if (k[static_cast<std::size_t>(j)] != 0) return false;
    return true;
  }
  std::string render(const BasisKey& k) const {
    std::string out;
    for (int j = 0; j < n; ++j) {
      int a = k[static_cast<std::size_t>(j)];
      if (a == 0) continue;
      if (!out.empty()) out += "*";
      out += coordinate_name(j, n);
      if (a > 1) out += "^" + std::to_string(a);
    }
    bool has_mode = false;
    for (int j = 0; j < n; ++j) has_mode |= k[static_cast<std::size_t>(n + j)] != 0;
    if (has_mode) {
      if (!out.empty()) out += "*";
      out += "e(";
      for (int j = 0; j < n; ++j) out += (j ? "," : "") + std::to_string(k[static_cast<std::size_t>(n + j)]);
      out += ")";
    }
    return out.empty() ? "1" : out;
  }
  /// Periodic test family: modes with |m|_1 <= 3.
  std::vector<BasisKey> test_keys() const {
    std::vector<BasisKey> out;
    for (const auto& m : TorusBasis{n}.test_keys()) out.push_back(mode(m));
    return out;
  }
  bool operator==(const QuasiTorusBasis& o) const { return n == o.n; }
};

/// Element of a function model with truncated-series coefficients.
template <class Basis>
class Function {
public:
  using Terms = std::map<BasisKey, ScalarSeries>;

  Function(Basis basis, std::size_t order) : basis_(std::move(basis)), order_(order) {}

  static Function basis_element(const Basis& b, BasisKey key, std::size_t order, const Scalar& c = Scalar(1)) {
    if (key.size() != b.key_size()) throw StructuralError("basis key has wrong size for model");
    Function f(b, order);
    f.add(key, ScalarSeries::constant(c, order));
    return f;
  }
  static Function constant(const Basis& b, const ScalarSeries& c) {
    Function f(b, c.order());
    f.add(b.unit(), c);
    return f;
  }
  static Function constant(const Basis& b, const Scalar& c, std::size_t order) {
    return constant(b, ScalarSeries::constant(c, order));
  }
  static Function one(const Basis& b, std::size_t order) { return constant(b, Scalar(1), order); }
  static Function coordinate(const Basis& b, int j, std::size_t order) {
    auto key = b.coordinate(j);
    if (!key)
      throw DomainError("coordinate " + coordinate_name(j, b.dimension()) + " is not a function on the " +
                        std::string(Basis::kind) + " model (not periodic)");
    return basis_element(b, *key, order);
  }

  const Basis& basis() const { return basis_; }
  std::size_t order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_h_constant() const {
    for (const auto& [k, c] : terms_)
      if (!c.is_h_constant()) return false;
    return true;
  }

  /// Coefficient of h^k as an h-constant function.
  Function at_order(std::size_t k) const {
    Function f(basis_, order_);
    for (const auto& [key, c] : terms_)
      if (!c[k].is_zero()) f.add(key, ScalarSeries::constant(c[k], order_));
    return f;
  }

  ScalarSeries coefficient(const BasisKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? ScalarSeries(order_) : it->second;
  }

  void add(const BasisKey& key, const ScalarSeries& c) {
    if (c.order() != order_) throw StructuralError("function coefficient order mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Function truncated(std::size_t order) const {
    Function f(basis_, order);
    for (const auto& [k, c] : terms_) f.add(k, c.truncated(order));
    return f;
  }

  Function derivative(int j) const {
    if (j < 0 || j >= basis_.dimension()) throw StructuralError("derivative index out of range");
    Function f(basis_, order_);
    for (const auto& [k, c] : terms_)
      for (const auto& [s, dk] : basis_.derivative(j, k)) f.add(dk, c * s);
    return f;
  }

  friend Function operator+(const Function& a, const Function& b) {
    a.check(b);
    Function out = a;
    for (const auto& [k, c] : b.terms_) out.add(k, c);
    return out;
  }
  friend Function operator-(const Function& a, const Function& b) {
    a.check(b);
    Function out = a;
    for (const auto& [k, c] : b.terms_) out.add(k, -c);
    return out;
  }
  friend Function operator-(const Function& a) { return a * Scalar(-1); }
  friend Function operator*(const Function& a, const Scalar& s) {
    Function out(a.basis_, a.order_);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, c * s);
    return out;
  }
  friend Function operator*(const Scalar& s, const Function& a) { return a * s; }
  friend Function operator*(const Function& a, const ScalarSeries& s) {
    Function out(a.basis_, a.order_);
    for (const auto& [k, c] : a.terms_) out.add(k, series_mul(c, s));
    return out;
  }
  friend Function operator*(const ScalarSeries& s, const Function& a) { return a * s; }
  /// Pointwise product.
  friend Function operator*(const Function& a, const Function& b) {
    a.check(b);
    Function out(a.basis_, a.order_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add(a.basis_.multiply(ka, kb), series_mul(ca, cb));
    return out;
  }
  friend bool operator==(const Function& a, const Function& b) {
    return a.basis_ == b.basis_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Function& a, const Function& b) { return !(a == b); }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "[" + twistkit::render(c) + "]*" + basis_.render(k);
    }
    return out;
  }

  void check(const Function& o) const {
    if (!(basis_ == o.basis_)) throw StructuralError("functions belong to different models");
    if (order_ != o.order_)
      throw StructuralError("function order mismatch: " + std::to_string(order_) + " vs " + std::to_string(o.order_));
  }

private:
  Basis basis_;
  std::size_t order_;
  Terms terms_;
};

using FourierFunction = Function<TorusBasis>;
using PolyFunction = Function<AffineBasis>;
using QuasiFunction = Function<QuasiTorusBasis>;

/// Linear differential operator sum_alpha c_alpha d^alpha with function
/// coefficients standing to the left. Coefficients may depend on h, which is
/// how operator series Id + sum h^k T_k are represented.
template <class Basis>
class DiffOp {
public:
  using Fn = Function<Basis>;
  using MultiIndex = std::vector<int>;

  DiffOp(Basis basis, std::size_t order) : basis_(std::move(basis)), order_(order) {}

  static DiffOp identity(const Basis& b, std::size_t order) { return multiplication(Fn::one(b, order)); }
  static DiffOp multiplication(const Fn& f) {
    DiffOp op(f.basis(), f.order());
    op.add(MultiIndex(static_cast<std::size_t>(f.basis().dimension()), 0), f);
    return op;
  }
  static DiffOp partial(const Basis& b, int j, std::size_t order) {
    DiffOp op(b, order);
    MultiIndex a(static_cast<std::size_t>(b.dimension()), 0);
    a[static_cast<std::size_t>(j)] = 1;
    op.add(a, Fn::one(b, order));
    return op;
  }

  const Basis& basis() const { return basis_; }
  std::size_t order() const { return order_; }
  const std::map<MultiIndex, Fn>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const MultiIndex& alpha, const Fn& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      terms_.emplace(alpha, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Zeroth-order coefficient, i.e. the operator applied to the constant 1.
  Fn potential() const {
    auto it = terms_.find(MultiIndex(static_cast<std::size_t>(basis_.dimension()), 0));
    return it == terms_.end() ? Fn(basis_, order_) : it->second;
  }

  int differential_order() const {
    int best = 0;
    for (const auto& [a, c] : terms_) {
      int s = 0;
      for (int x : a) s += x;
      best = std::max(best, s);
    }
    return best;
  }

  /// First order with no zeroth-order part.
  bool is_derivation() const { return differential_order() <= 1 && potential().is_zero(); }

  bool is_h_constant() const {
    for (const auto& [a, c] : terms_)
      if (!c.is_h_constant()) return false;
    return true;
  }

  /// Coefficient of h^k as an h-constant operator.
  DiffOp at_order(std::size_t k) const {
    DiffOp op(basis_, order_);
    for (const auto& [a, c] : terms_) op.add(a, c.at_order(k));
    return op;
  }

  DiffOp truncated(std::size_t order) const {
    DiffOp op(basis_, order);
    for (const auto& [a, c] : terms_) op.add(a, c.truncated(order));
    return op;
  }

  /// Applies an operator of any order to f, re-expressed at f's order.
  Fn apply_at(const Fn& f) const { return f.order() == order_ ? apply(f) : truncated(f.order()).apply(f); }

  Fn apply(const Fn& f) const {
    if (!(f.basis() == basis_)) throw StructuralError("operator and function belong to different models");
    Fn out(basis_, order_);
    for (const auto& [alpha, c] : terms_) {
      Fn g = f;
      for (int j = 0; j < static_cast<int>(alpha.size()); ++j)
        for (int r = 0; r < alpha[static_cast<std::size_t>(j)]; ++r) g = g.derivative(j);
      if (!g.is_zero()) out = out + c * g;
    }
    return out;
  }

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    DiffOp out = a;
    for (const auto& [al, c] : b.terms_) out.add(al, c);
    return out;
  }
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + b * Scalar(-1); }
  friend DiffOp operator*(const DiffOp& a, const Scalar& s) {
    DiffOp out(a.basis_, a.order_);
    for (const auto& [al, c] : a.terms_) out.add(al, c * s);
    return out;
  }
  friend DiffOp operator*(const DiffOp& a, const ScalarSeries& s) {
    DiffOp out(a.basis_, a.order_);
    for (const auto& [al, c] : a.terms_) out.add(al, c * s);
    return out;
  }
  /// Composition a o b, brought back to normal form (functions left).
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    DiffOp out(a.basis_, a.order_);
    for (const auto& [alpha, ca] : a.terms_)
      for (const auto& [beta, cb] : b.terms_) {
        // d^alpha o (cb d^beta) via repeated single-derivative commutation
        DiffOp partial_result = multiplication(cb);
        partial_result = partial_result.shift(beta);
        for (int j = 0; j < static_cast<int>(alpha.size()); ++j)
          for (int r = 0; r < alpha[static_cast<std::size_t>(j)]; ++r) partial_result = partial_result.left_partial(j);
        for (const auto& [g, cg] : partial_result.terms_) out.add(g, ca * cg);
      }
    return out;
  }
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return (a - b).is_zero(); }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [alpha, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.render() + ")";
      for (int j = 0; j < static_cast<int>(alpha.size()); ++j)
        for (int r = 0; r < alpha[static_cast<std::size_t>(j)]; ++r) out += "*d/d" + coordinate_name(j, basis_.dimension());
    }
    return out;
  }

private:
  /// this o d^beta
  DiffOp shift(const MultiIndex& beta) const {
    DiffOp out(basis_, order_);
    for (const auto& [a, c] : terms_) {
      MultiIndex s = a;
      for (std::size_t p = 0; p < s.size(); ++p) s[p] += beta[p];
      out.add(s, c);
    }
    return out;
  }
  /// d_j o this = sum (d_j c) d^a + c d^{a + e_j}
  DiffOp left_partial(int j) const {
    DiffOp out(basis_, order_);
    for (const auto& [a, c] : terms_) {
      out.add(a, c.derivative(j));
      MultiIndex s = a;
      ++s[static_cast<std::size_t>(j)];
      out.add(s, c);
    }
    return out;
  }

  Basis basis_;
  std::size_t order_;
  std::map<MultiIndex, Fn> terms_;
};

/// Generators of a Lie algebra realized as differential operators on a model.
/// Operators are first order; module algebras additionally require
/// derivations (no zeroth-order part), while actions on sections may carry a
/// potential term.
template <class Basis>
class ActionAssignment {
public:
  using Fn = Function<Basis>;
  using Op = DiffOp<Basis>;

  ActionAssignment(LieAlgebraPtr alg, Basis basis, std::vector<Op> images)
      : alg_(std::move(alg)), basis_(std::move(basis)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != alg_->dim())
      throw StructuralError("action assigns " + std::to_string(images_.size()) + " operators to " +
                            std::to_string(alg_->dim()) + " generators");
    for (std::size_t g = 0; g < images_.size(); ++g) {
      if (!(images_[g].basis() == basis_)) throw StructuralError("action operator on a different model");
      if (!images_[g].is_h_constant()) throw DomainError("action operator for " + alg_->name(static_cast<int>(g)) + " depends on h");
      if (images_[g].differential_order() > 1)
        throw DomainError("action operator for " + alg_->name(static_cast<int>(g)) + " is not first order");
      images_[g] = images_[g].truncated(0);
    }
    cache_ = std::make_shared<Cache>();
  }

  const LieAlgebraPtr& algebra() const { return alg_; }
  const Basis& basis() const { return basis_; }
  const Op& image(int g) const { return images_.at(static_cast<std::size_t>(g)); }
  const std::vector<Op>& images() const { return images_; }

  bool by_derivations() const {
    return std::all_of(images_.begin(), images_.end(), [](const Op& o) { return o.is_derivation(); });
  }

  Fn act_generator(int g, const Fn& f) const {
    if (g < 0 || g >= alg_->dim()) throw StructuralError("generator index out of range");
    if (!(f.basis() == basis_)) throw StructuralError("function belongs to a different model than the action");
    return image(g).apply_at(f);
  }

  /// PBW monomial X_{i1}...X_{ik} acts as act_{i1} o ... o act_{ik}.
  Fn represent(const UEAElement& u, const Fn& f) const {
    if (u.algebra() && u.algebra() != alg_) throw StructuralError("element belongs to a different Lie algebra than the action");
    Fn out(basis_, f.order());
    for (const auto& [m, c] : u.terms()) out = out + represent_monomial(m, f) * c;
    return out;
  }

  Fn represent_monomial(const Monomial& m, const Fn& f) const {
    Fn out(basis_, f.order());
    for (const auto& [key, coeff] : f.terms()) out = out + monomial_on_basis(m, key, f.order()) * coeff;
    return out;
  }

  /// Lie-homomorphism property checked exactly on the model's test family.
  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    const int n = alg_->dim();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (const auto& key : basis_.test_keys()) {
          Fn f = Fn::basis_element(basis_, key, 0);
          Fn lhs = act_generator(i, act_generator(j, f)) - act_generator(j, act_generator(i, f));
          Fn rhs(basis_, 0);
          for (const auto& [k, c] : alg_->bracket(i, j)) rhs = rhs + act_generator(k, f) * c;
          if (lhs != rhs) {
            problems.push_back("[" + alg_->name(i) + "," + alg_->name(j) + "] is not represented: on " +
                               basis_.render(key) + " the commutator gives " + lhs.render() + " but the bracket gives " +
                               rhs.render());
            break;
          }
        }
    return problems;
  }

private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<Monomial, BasisKey>, std::map<BasisKey, Scalar>> values;
  };

  Fn monomial_on_basis(const Monomial& m, const BasisKey& key, std::size_t order) const {
    std::map<BasisKey, Scalar> values;
    bool found = false;
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->values.find({m, key});
      if (it != cache_->values.end()) {
        values = it->second;
        found = true;
      }
    }
    if (!found) {
      Fn g = Fn::basis_element(basis_, key, 0);
      for (auto p = m.rbegin(); p != m.rend(); ++p) g = image(*p).apply_at(g);
      for (const auto& [k, c] : g.terms()) values.emplace(k, c[0]);
      std::lock_guard lock(cache_->mutex);
      cache_->values.emplace(std::make_pair(m, key), values);
    }
    Fn out(basis_, order);
    for (const auto& [k, c] : values) out.add(k, ScalarSeries::constant(c, order));
    return out;
  }

  LieAlgebraPtr alg_;
  Basis basis_;
  std::vector<Op> images_;
  std::shared_ptr<Cache> cache_;
};

/// A term of tensor_act: h^order * coeff * (values[0], values[1], ...).
template <class Basis>
struct ActedTerm {
  std::size_t order;
  Scalar coeff;
  std::vector<Function<Basis>> values;
};

/// Leg-wise representation of a tensor series on a tuple of functions.
template <class Basis>
std::vector<ActedTerm<Basis>> tensor_act(const std::vector<const ActionAssignment<Basis>*>& actions,
                                         const TensorSeries& t, const std::vector<Function<Basis>>& fs) {
  if (actions.size() != fs.size()) throw StructuralError("tensor_act needs one action per function");
  std::vector<ActedTerm<Basis>> out;
  for (std::size_t k = 0; k <= t.order(); ++k) {
    if (t[k].is_zero()) continue;
    if (t[k].arity() != static_cast<int>(fs.size()))
      throw StructuralError("tensor arity " + std::to_string(t[k].arity()) + " does not match " +
                            std::to_string(fs.size()) + " functions");
    for (const auto& [key, c] : t[k].terms()) {
      ActedTerm<Basis> term{k, c, {}};
      for (std::size_t leg = 0; leg < fs.size(); ++leg)
        term.values.push_back(actions[leg]->represent_monomial(key[leg], fs[leg]));
      out.push_back(std::move(term));
    }
  }
  return out;
}

/// Constant Poisson bivector: {f, g} = sum_{jk} pi^{jk} d_j f d_k g.
struct PoissonStructure {
  std::vector<std::vector<Scalar>> bivector;

  static PoissonStructure standard(int n) {
    if (n % 2 != 0) throw DomainError("standard symplectic structure needs even dimension");
    PoissonStructure p{std::vector<std::vector<Scalar>>(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)))};
    for (int j = 0; j + 1 < n; j += 2) {
      p.bivector[static_cast<std::size_t>(j)][static_cast<std::size_t>(j + 1)] = Scalar(1);
      p.bivector[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(j)] = Scalar(-1);
    }
    return p;
  }
  static PoissonStructure zero(int n) {
    return {std::vector<std::vector<Scalar>>(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)))};
  }

  template <class Basis>
  Function<Basis> bracket(const Function<Basis>& f, const Function<Basis>& g) const {
    f.check(g);
    const int n = f.basis().dimension();
    if (static_cast<int>(bivector.size()) != n) throw StructuralError("Poisson structure has wrong dimension");
    Function<Basis> out(f.basis(), f.order());
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Scalar& c = bivector[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        if (!c.is_zero()) out = out + (f.derivative(j) * g.derivative(k)) * c;
      }
    return out;
  }
};

/// {f, g} = d_x f d_y g - d_y f d_x g on T^2.
inline FourierFunction poisson_bracket_T2(const FourierFunction& f, const FourierFunction& g) {
  if (f.basis().n != 2) throw DomainError("poisson_bracket_T2 needs the 2-torus");
  return PoissonStructure::standard(2).bracket(f, g);
}

}  // namespace twistkit
