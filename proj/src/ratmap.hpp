#pragma once

#include <optional>
#include <span>
#include <vector>

#include "numeric.hpp"
#include "places.hpp"

namespace arithdyn {

inline constexpr size_t kDefaultBitCap = size_t{1} << 22;

// phi(z) = f(z)/g(z), f = sum a_i z^i, g = sum b_i z^i, of exact degree d >= 2.
// Coefficients are integers with joint content 1; the leading nonzero
// coefficient of g is positive. The homogeneous lift is
//   F0(x0, x1) = sum a_i x0^i x1^(d-i),  F1(x0, x1) = sum b_i x0^i x1^(d-i),
// acting on points [x0 : x1] with z = x0/x1.
class RationalMap {
 public:
  // Throws InvalidArgument for degree < 2 or a zero denominator, Domain when
  // f and g share a root (zero resultant). Common factors are never cancelled.
  static RationalMap build(std::span<const Rational> num, std::span<const Rational> den);
  static RationalMap build(const std::vector<Rational>& num, const std::vector<Rational>& den) {
    return build(std::span<const Rational>(num), std::span<const Rational>(den));
  }
  // Convenience for literals: build_int({0,0,1}, {1}) is z^2.
  static RationalMap build_int(std::initializer_list<long> num, std::initializer_list<long> den);

  int degree() const { return degree_; }
  const std::vector<Integer>& num() const { return num_; }
  const std::vector<Integer>& den() const { return den_; }
  const Integer& resultant() const { return resultant_; }
  bool is_polynomial() const;
  std::string to_string() const;

  // (F0(x), F1(x)) without normalization.
  std::pair<Integer, Integer> evaluate(const Integer& x0, const Integer& x1) const;
  ProjPoint apply(const ProjPoint& x) const;

  friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  RationalMap() = default;
  int degree_ = 0;
  std::vector<Integer> num_;
  std::vector<Integer> den_;
  Integer resultant_;
};

// Determinant of the 2d x 2d Sylvester matrix of the homogeneous lift.
Integer sylvester_resultant(const std::vector<Integer>& num, const std::vector<Integer>& den, int degree);

// phi^n(x); throws BitCapExceeded (with the index) once a coordinate exceeds bit_cap bits.
ProjPoint iterate(const RationalMap& phi, const ProjPoint& x, unsigned long n, size_t bit_cap = kDefaultBitCap);

// Stepwise forward orbit with a bit cap.
class Orbit {
 public:
  Orbit(const RationalMap& phi, ProjPoint start, size_t bit_cap = kDefaultBitCap)
      : phi_(&phi), current_(std::move(start)), bit_cap_(bit_cap) {}
  const ProjPoint& point() const { return current_; }
  unsigned long index() const { return index_; }
  // Moves to the next point; throws BitCapExceeded with the new index.
  const ProjPoint& advance();

 private:
  const RationalMap* phi_;
  ProjPoint current_;
  unsigned long index_ = 0;
  size_t bit_cap_;
};

// Multiplicity of z = beta as a root of phi(z) - phi(beta); Domain if beta is a pole.
int order_of_vanishing(const RationalMap& phi, const Rational& beta);

// g(beta) f(z) - f(beta) g(z) = (z - beta)^order * quotient(z).
struct Vanishing {
  int order = 0;
  std::vector<Rational> quotient;  // coefficient of z^i at index i
  Rational g_beta;
};
Vanishing vanishing_factorization(const RationalMap& phi, const Rational& beta);

struct LipschitzConstant {
  std::optional<Rational> exact;  // finite places: 1/|Res|_p
  double value = 0;
};

inline constexpr double kLipschitzSafetyFactor = 1.05;

// Finite v: exact 1/|Res|_v. Archimedean v: sampled supremum of the chordal
// derivative over the Riemann sphere times kLipschitzSafetyFactor (an
// estimate, not a certified bound).
LipschitzConstant lipschitz_constant(const RationalMap& phi, const Place& v);

// Chordal derivative |J(x)| |x|^2 / (d |F(x)|^2) at a complex point [x0 : x1].
double chordal_derivative(const RationalMap& phi, double x0_re, double x0_im, double x1_re, double x1_im);

// 2x2 rational matrix acting on [x0 : x1] (a Mobius transformation).
struct Mobius {
  Rational a, b, c, d;  // z -> (a z + b) / (c z + d)
  Mobius inverse() const { return {d, -b, -c, a}; }
};

// The map M o phi o P, where P and M act on homogeneous coordinates.
RationalMap compose_mobius(const Mobius& outer, const RationalMap& phi, const Mobius& inner);

// psi^{-1} o phi o psi with psi(z) = 1/(z - M).
RationalMap mobius_conjugate(const RationalMap& phi, const Rational& M);

// psi^{-1} o phi o psi with psi(z) = a z + b.
RationalMap affine_conjugate(const RationalMap& phi, const Rational& a, const Rational& b);

// (1/d) z^d - (1/(d-1)) e1 z^(d-1) + ... + (-1)^(d-1) e_{d-1} z, whose
// derivative is prod (z - c_i).
RationalMap normal_form_fc(std::span<const Rational> critical_points);
inline RationalMap normal_form_fc(const std::vector<Rational>& c) { return normal_form_fc(std::span<const Rational>(c)); }

}  // namespace arithdyn
