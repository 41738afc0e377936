#pragma once

// Line bundles over the 2-torus [0, 2pi)^2 with connections, and their first
// Chern number.
//
// Convention: the covariant derivative is d + A with complex A, and a
// degree-d bundle carries an extra constant curvature -i*c0 dx^dy. So
//   F_xy = dx A_y - dy A_x - i*c0,   c1 = Re (i / 2pi) * integral of F_xy.
// The standard degree-d connection has A = 0 and c0 = d / (2pi).

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/function_model.hpp"

namespace twistkit {

/// Finite sum of c_m e^{i(m1 x + m2 y)} with double coefficients.
class TrigPoly {
public:
  using Mode = std::array<int, 2>;

  TrigPoly() = default;
  static TrigPoly mode(int m1, int m2, std::complex<double> c = 1.0) {
    TrigPoly p;
    p.add({m1, m2}, c);
    return p;
  }
  static TrigPoly constant(std::complex<double> c) { return mode(0, 0, c); }
  /// sin(m1 x + m2 y) and cos(m1 x + m2 y).
  static TrigPoly sin(int m1, int m2) {
    using namespace std::complex_literals;
    TrigPoly p = mode(m1, m2, -0.5i);
    p.add({-m1, -m2}, 0.5i);
    return p;
  }
  static TrigPoly cos(int m1, int m2) {
    TrigPoly p = mode(m1, m2, 0.5);
    p.add({-m1, -m2}, 0.5);
    return p;
  }

  const std::map<Mode, std::complex<double>>& terms() const { return terms_; }
  void add(Mode m, std::complex<double> c) {
    auto& slot = terms_[m];
    slot += c;
    if (slot == 0.0) terms_.erase(m);
  }

  TrigPoly derivative(int j) const {
    TrigPoly p;
    for (const auto& [m, c] : terms_) p.add(m, c * std::complex<double>(0, m[static_cast<std::size_t>(j)]));
    return p;
  }
  std::complex<double> operator()(double x, double y) const {
    std::complex<double> s = 0;
    for (const auto& [m, c] : terms_) s += c * std::polar(1.0, m[0] * x + m[1] * y);
    return s;
  }

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  friend TrigPoly operator*(TrigPoly a, std::complex<double> s) {
    TrigPoly p;
    for (const auto& [m, c] : a.terms_) p.add(m, c * s);
    return p;
  }

  /// Converts an exact function on the torus; non-periodic terms (x^a, y^b
  /// prefactors) are a domain error.
  static TrigPoly from_exact(const QuasiFunction& f) {
    if (f.basis().dimension() != 2) throw DomainError("connection components must live on the 2-torus");
    TrigPoly p;
    for (const auto& [k, c] : f.terms()) {
      if (!f.basis().is_periodic(k)) throw DomainError("connection component is not periodic: term " + f.basis().render(k));
      if (!c.is_h_constant()) throw DomainError("connection component depends on h");
      p.add({k[2], k[3]}, {c[0].real_double(), c[0].imag_double()});
    }
    return p;
  }
  static TrigPoly from_exact(const FourierFunction& f) {
    if (f.basis().dimension() != 2) throw DomainError("connection components must live on the 2-torus");
    TrigPoly p;
    for (const auto& [k, c] : f.terms()) {
      if (!c.is_h_constant()) throw DomainError("connection component depends on h");
      p.add({k[0], k[1]}, {c[0].real_double(), c[0].imag_double()});
    }
    return p;
  }

  std::string render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)*e(" << m[0] << "," << m[1] << ")";
    }
    return os.str();
  }

private:
  std::map<Mode, std::complex<double>> terms_;
};

struct ConnectionT2 {
  TrigPoly A_x, A_y;
  double c0 = 0.0;

  /// F_xy as a trigonometric polynomial.
  TrigPoly curvature() const { return A_y.derivative(0) - A_x.derivative(1) + TrigPoly::constant({0.0, -c0}); }
};

struct LineBundleT2 {
  int degree = 0;
  ConnectionT2 connection;
};

/// c1 by the periodic trapezoid rule on an n x n grid; exact for modes with
/// |m_j| < n.
inline double chern_number(const ConnectionT2& A, int grid = 64) {
  if (grid < 1) throw DomainError("quadrature grid must be positive");
  const TrigPoly F = A.curvature();
  const double step = 2.0 * std::numbers::pi / grid;
  std::complex<double> sum = 0;
  for (int r = 0; r < grid; ++r) {
    std::complex<double> row = 0;
    for (int c = 0; c < grid; ++c) row += F(c * step, r * step);
    sum += row;
  }
  const std::complex<double> integral = sum * step * step;
  return (std::complex<double>(0, 1) * integral / (2.0 * std::numbers::pi)).real();
}

inline double chern_number(const LineBundleT2& L, int grid = 64) { return chern_number(L.connection, grid); }

inline LineBundleT2 standard_connection(int d) {
  LineBundleT2 L;
  L.degree = d;
  L.connection.c0 = d / (2.0 * std::numbers::pi);
  return L;
}

/// A -> A + d(phi), a gauge transformation.
inline LineBundleT2 gauge_transform(LineBundleT2 L, const TrigPoly& phi) {
  L.connection.A_x = L.connection.A_x + phi.derivative(0);
  L.connection.A_y = L.connection.A_y + phi.derivative(1);
  return L;
}

/// Builds the connection of a section action nabla_x, nabla_y on the trivial
/// bundle over T^2. Operators live on quasi-periodic functions so that
/// non-periodic coefficients can be detected and rejected.
inline LineBundleT2 flat_connection_from_action(const DiffOp<QuasiTorusBasis>& nabla_x, const DiffOp<QuasiTorusBasis>& nabla_y) {
  using Op = DiffOp<QuasiTorusBasis>;
  const QuasiTorusBasis& B = nabla_x.basis();
  if (B.dimension() != 2 || !(nabla_y.basis() == B)) throw DomainError("section action must act on the 2-torus");
  const Op* ops[2] = {&nabla_x, &nabla_y};
  const char* names[2] = {"d/dx", "d/dy"};
  for (int j = 0; j < 2; ++j) {
    const Op op = ops[j]->truncated(0);
    for (const auto& [alpha, c] : op.terms())
      for (const auto& [k, v] : c.terms())
        if (!B.is_periodic(k))
          throw DomainError(std::string("action of ") + names[j] + " fails the periodic-coefficient precondition: term " +
                            B.render(k));
    // Leibniz: nabla(f s) == (df) s + f nabla(s) on the test family
    for (const auto& fk : B.test_keys())
      for (const auto& sk : B.test_keys()) {
        auto f = QuasiFunction::basis_element(B, fk, 0);
        auto s = QuasiFunction::basis_element(B, sk, 0);
        if (!(op.apply(f * s) == f.derivative(j) * s + f * op.apply(s)))
          throw DomainError(std::string("Leibniz rule fails for ") + names[j] + " with f = " + f.render() + ", s = " + s.render());
      }
  }
  const Op x = nabla_x.truncated(0), y = nabla_y.truncated(0);
  const Op commutator = x * y + (y * x) * Scalar(-1);
  if (!commutator.is_zero())
    throw DomainError("action does not commute: [d/dx, d/dy] acts as " + commutator.render());
  const auto one = QuasiFunction::one(B, 0);
  LineBundleT2 L;
  L.degree = 0;
  L.connection.A_x = TrigPoly::from_exact(x.apply(one));
  L.connection.A_y = TrigPoly::from_exact(y.apply(one));
  return L;
}

}  // namespace twistkit
