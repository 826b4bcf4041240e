#include "ratmap.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "linalg.hpp"

namespace arithdyn {

namespace {

int poly_degree(std::span<const Rational> p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

std::vector<Rational> padded(std::span<const Rational> p, int d) {
  std::vector<Rational> out(d + 1, Rational(0));
  for (int i = 0; i <= std::min<int>(d, static_cast<int>(p.size()) - 1); ++i) out[i] = p[i];
  return out;
}

std::string poly_to_string(const std::vector<Integer>& c) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    Integer mag = abs_value(c[i]);
    if (first) {
      if (c[i] < 0) os << "-";
    } else {
      os << (c[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << "z";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

using Form = std::vector<Rational>;  // c[i] is the coefficient of x0^i x1^(deg-i)

Form multiply(const Form& a, const Form& b) {
  Form out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Form add_scaled(Form acc, const Form& term, const Rational& s) {
  if (acc.empty()) acc.assign(term.size(), Rational(0));
  for (size_t i = 0; i < term.size(); ++i) acc[i] += s * term[i];
  return acc;
}

// sum c_k L0^k L1^(d-k) for linear forms L0, L1.
Form substitute(const std::vector<Integer>& coeffs, const Form& l0, const Form& l1) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  std::vector<Form> p0(d + 1), p1(d + 1);
  p0[0] = {Rational(1)};
  p1[0] = {Rational(1)};
  for (int k = 1; k <= d; ++k) {
    p0[k] = multiply(p0[k - 1], l0);
    p1[k] = multiply(p1[k - 1], l1);
  }
  Form out(d + 1, Rational(0));
  for (int k = 0; k <= d; ++k) {
    if (coeffs[k] == 0) continue;
    out = add_scaled(std::move(out), multiply(p0[k], p1[d - k]), Rational(coeffs[k]));
  }
  return out;
}

}  // namespace

Integer sylvester_resultant(const std::vector<Integer>& num, const std::vector<Integer>& den, int d) {
  const size_t n = 2 * static_cast<size_t>(d);
  IntegerMatrix m(n, std::vector<Integer>(n, Integer(0)));
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k <= d; ++k) {
      m[r][r + k] = num[d - k];
      m[d + r][r + k] = den[d - k];
    }
  }
  return determinant(std::move(m));
}

RationalMap RationalMap::build(std::span<const Rational> num, std::span<const Rational> den) {
  const int dn = poly_degree(num), dd = poly_degree(den);
  if (dd < 0) fail(ErrorCode::InvalidArgument, "denominator polynomial is zero");
  const int d = std::max(dn, dd);
  if (d < 2) fail(ErrorCode::InvalidArgument, "rational map must have degree at least 2");

  std::vector<Rational> f = padded(num, d), g = padded(den, d);
  Integer lcm = 1;
  for (const auto* poly : {&f, &g}) {
    for (const auto& c : *poly) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  RationalMap phi;
  phi.degree_ = d;
  phi.num_.resize(d + 1);
  phi.den_.resize(d + 1);
  Integer content = 0;
  for (int i = 0; i <= d; ++i) {
    phi.num_[i] = Integer(f[i] * lcm);
    phi.den_[i] = Integer(g[i] * lcm);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), phi.num_[i].get_mpz_t());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), phi.den_[i].get_mpz_t());
  }
  if (phi.den_[dd] < 0) content = -content;
  for (int i = 0; i <= d; ++i) {
    mpz_divexact(phi.num_[i].get_mpz_t(), phi.num_[i].get_mpz_t(), content.get_mpz_t());
    mpz_divexact(phi.den_[i].get_mpz_t(), phi.den_[i].get_mpz_t(), content.get_mpz_t());
  }
  phi.resultant_ = sylvester_resultant(phi.num_, phi.den_, d);
  if (phi.resultant_ == 0) {
    fail(ErrorCode::Domain, "numerator and denominator share a root (resultant is zero): " + phi.to_string());
  }
  return phi;
}

RationalMap RationalMap::build_int(std::initializer_list<long> num, std::initializer_list<long> den) {
  std::vector<Rational> n, g;
  for (long c : num) n.emplace_back(c);
  for (long c : den) g.emplace_back(c);
  return build(n, g);
}

bool RationalMap::is_polynomial() const {
  return std::all_of(den_.begin() + 1, den_.end(), [](const Integer& c) { return c == 0; });
}

std::string RationalMap::to_string() const {
  if (is_polynomial() && den_[0] == 1) return poly_to_string(num_);
  return "(" + poly_to_string(num_) + ")/(" + poly_to_string(den_) + ")";
}

std::pair<Integer, Integer> RationalMap::evaluate(const Integer& x0, const Integer& x1) const {
  const int d = degree_;
  std::vector<Integer> x1pow(d + 1);
  x1pow[0] = 1;
  for (int k = 1; k <= d; ++k) x1pow[k] = x1pow[k - 1] * x1;
  Integer f0 = num_[d], f1 = den_[d];
  for (int k = d - 1; k >= 0; --k) {
    f0 *= x0;
    f1 *= x0;
    if (num_[k] != 0) f0 += num_[k] * x1pow[d - k];
    if (den_[k] != 0) f1 += den_[k] * x1pow[d - k];
  }
  return {std::move(f0), std::move(f1)};
}

ProjPoint RationalMap::apply(const ProjPoint& x) const {
  auto [f0, f1] = evaluate(x.x0(), x.x1());
  return ProjPoint(f0, f1);
}

ProjPoint iterate(const RationalMap& phi, const ProjPoint& x, unsigned long n, size_t bit_cap) {
  Orbit orbit(phi, x, bit_cap);
  while (orbit.index() < n) orbit.advance();
  return orbit.point();
}

const ProjPoint& Orbit::advance() {
  ProjPoint next = phi_->apply(current_);
  ++index_;
  if (next.max_bits() > bit_cap_) {
    fail(ErrorCode::BitCapExceeded,
         "orbit coordinates exceed " + std::to_string(bit_cap_) + " bits at index " + std::to_string(index_),
         static_cast<long>(index_));
  }
  current_ = std::move(next);
  return current_;
}

Vanishing vanishing_factorization(const RationalMap& phi, const Rational& beta) {
  const int d = phi.degree();
  Rational fb = 0, gb = 0;
  for (int k = d; k >= 0; --k) {
    fb = fb * beta + phi.num()[k];
    gb = gb * beta + phi.den()[k];
  }
  if (gb == 0) fail(ErrorCode::Domain, to_string(beta) + " is a pole of " + phi.to_string());
  std::vector<Rational> p(d + 1);
  for (int k = 0; k <= d; ++k) p[k] = gb * phi.num()[k] - fb * phi.den()[k];
  Vanishing out;
  out.g_beta = gb;
  for (;;) {
    const int deg = poly_degree(p);
    if (deg < 0) fail(ErrorCode::Internal, "phi(z) - phi(beta) vanished identically");
    // synthetic division by (z - beta)
    std::vector<Rational> q(std::max(deg, 1), Rational(0));
    Rational carry = 0;
    for (int k = deg; k >= 0; --k) {
      carry = carry * beta + p[k];
      if (k > 0) q[k - 1] = carry;
    }
    if (carry != 0) break;
    ++out.order;
    p = std::move(q);
  }
  p.resize(std::max(poly_degree(p), 0) + 1);
  out.quotient = std::move(p);
  return out;
}

int order_of_vanishing(const RationalMap& phi, const Rational& beta) { return vanishing_factorization(phi, beta).order; }

double chordal_derivative(const RationalMap& phi, double x0_re, double x0_im, double x1_re, double x1_im) {
  using C = std::complex<double>;
  const C x0(x0_re, x0_im), x1(x1_re, x1_im);
  const int d = phi.degree();
  C f0 = 0, f1 = 0, d0f0 = 0, d0f1 = 0, d1f0 = 0, d1f1 = 0;
  std::vector<C> p0(d + 1), p1(d + 1);
  p0[0] = p1[0] = 1;
  for (int k = 1; k <= d; ++k) {
    p0[k] = p0[k - 1] * x0;
    p1[k] = p1[k - 1] * x1;
  }
  for (int k = 0; k <= d; ++k) {
    const double a = phi.num()[k].get_d(), b = phi.den()[k].get_d();
    f0 += a * p0[k] * p1[d - k];
    f1 += b * p0[k] * p1[d - k];
    if (k >= 1) {
      d0f0 += a * double(k) * p0[k - 1] * p1[d - k];
      d0f1 += b * double(k) * p0[k - 1] * p1[d - k];
    }
    if (d - k >= 1) {
      d1f0 += a * double(d - k) * p0[k] * p1[d - k - 1];
      d1f1 += b * double(d - k) * p0[k] * p1[d - k - 1];
    }
  }
  const C jac = d0f0 * d1f1 - d1f0 * d0f1;
  const double xnorm2 = std::norm(x0) + std::norm(x1);
  const double fnorm2 = std::norm(f0) + std::norm(f1);
  return std::abs(jac) * xnorm2 / (double(d) * fnorm2);
}

namespace {

// [cos a : sin a e^{ib}] covers the sphere for a in [0, pi/2], b in [0, 2 pi).
double sphere_value(const RationalMap& phi, double a, double b) {
  a = std::clamp(a, 0.0, std::numbers::pi / 2);
  return chordal_derivative(phi, std::cos(a), 0.0, std::sin(a) * std::cos(b), std::sin(a) * std::sin(b));
}

double sup_chordal_derivative(const RationalMap& phi) {
  constexpr int na = 160, nb = 320;
  struct Candidate {
    double value, a, b;
  };
  std::vector<Candidate> best;
  for (int i = 0; i <= na; ++i) {
    const double a = (std::numbers::pi / 2) * i / na;
    for (int j = 0; j < nb; ++j) {
      const double b = 2 * std::numbers::pi * j / nb;
      best.push_back({sphere_value(phi, a, b), a, b});
    }
  }
  const size_t keep = std::min<size_t>(12, best.size());
  std::partial_sort(best.begin(), best.begin() + keep, best.end(),
                    [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
  double sup = best.front().value;
  for (size_t c = 0; c < keep; ++c) {
    auto [value, a, b] = best[c];
    double step = std::numbers::pi / na;
    while (step > 1e-12) {
      bool moved = false;
      for (auto [da, db] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                            {1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}}) {
        const double na2 = std::clamp(a + da * step, 0.0, std::numbers::pi / 2), nb2 = b + db * step;
        const double v = sphere_value(phi, na2, nb2);
        if (v > value) {
          value = v;
          a = na2;
          b = nb2;
          moved = true;
        }
      }
      if (!moved) step /= 2;
    }
    sup = std::max(sup, value);
  }
  return sup;
}

}  // namespace

LipschitzConstant lipschitz_constant(const RationalMap& phi, const Place& v) {
  if (!v.is_archimedean()) {
    Rational c(pow(v.prime(), valuation(phi.resultant(), v.prime())));
    return {c, c.get_d()};
  }
  return {std::nullopt, sup_chordal_derivative(phi) * kLipschitzSafetyFactor};
}

RationalMap compose_mobius(const Mobius& outer, const RationalMap& phi, const Mobius& inner) {
  // inner acts as x0' = a x0 + b x1, x1' = c x0 + d x1
  const Form l0 = {inner.b, inner.a};
  const Form l1 = {inner.d, inner.c};
  const Form f0 = substitute(phi.num(), l0, l1);
  const Form f1 = substitute(phi.den(), l0, l1);
  std::vector<Rational> g0(f0.size()), g1(f0.size());
  for (size_t i = 0; i < f0.size(); ++i) {
    g0[i] = outer.a * f0[i] + outer.b * f1[i];
    g1[i] = outer.c * f0[i] + outer.d * f1[i];
  }
  RationalMap out = RationalMap::build(g0, g1);
  if (out.degree() != phi.degree()) fail(ErrorCode::Internal, "degree changed under conjugation");
  return out;
}

RationalMap mobius_conjugate(const RationalMap& phi, const Rational& M) {
  const Mobius psi{0, 1, 1, -M};
  return compose_mobius(psi.inverse(), phi, psi);
}

RationalMap affine_conjugate(const RationalMap& phi, const Rational& a, const Rational& b) {
  if (a == 0) fail(ErrorCode::InvalidArgument, "affine conjugation requires a != 0");
  const Mobius psi{a, b, 0, 1};
  return compose_mobius(psi.inverse(), phi, psi);
}

RationalMap normal_form_fc(std::span<const Rational> c) {
  const int d = static_cast<int>(c.size()) + 1;
  // elementary symmetric polynomials e_0..e_{d-1}
  std::vector<Rational> e(d, Rational(0));
  e[0] = 1;
  for (const auto& ci : c) {
    for (int k = d - 1; k >= 1; --k) e[k] += e[k - 1] * ci;
  }
  std::vector<Rational> num(d + 1, Rational(0));
  for (int k = 0; k <= d - 1; ++k) {
    Rational coeff = e[k] / (d - k);
    num[d - k] = (k % 2 == 0) ? coeff : Rational(-coeff);
  }
  return RationalMap::build(num, std::vector<Rational>{Rational(1)});
}

}  // namespace arithdyn
