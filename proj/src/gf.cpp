#include "fqdist/gf.hpp"

#include <algorithm>

namespace fqdist {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Poly = std::vector<std::uint32_t>;  // low-to-high, coefficients in [0, p)

// Remainder of a mod b over F_p; b must be monic.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        std::uint64_t t = static_cast<std::uint64_t>(lead) * b[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - t) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly decode_poly(std::uint64_t m, std::uint32_t p, std::uint32_t len) {
  Poly c(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    c[i] = static_cast<std::uint32_t>(m % p);
    m /= p;
  }
  return c;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t ddeg = 1; 2 * ddeg <= deg; ++ddeg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < ddeg; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      Poly div = decode_poly(m, p, static_cast<std::uint32_t>(ddeg));
      div.push_back(1);
      if (poly_mod(f, div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldSpec FieldSpec::build(std::uint32_t p, std::uint32_t ext_degree, const Caps& caps) {
  if (!is_prime(p)) throw construction_error("field characteristic must be prime, got " + std::to_string(p));
  if (p == 2) throw construction_error("field characteristic must be odd, got 2");
  if (ext_degree < 1) throw construction_error("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < ext_degree; ++i) {
    q *= p;
    if (q > caps.max_field_size)
      throw cap_error("field size " + std::to_string(p) + "^" + std::to_string(ext_degree) +
                      " exceeds max_field_size = " + std::to_string(caps.max_field_size));
  }

  FieldSpec f;
  f.p_ = p;
  f.k_ = ext_degree;
  f.q_ = static_cast<std::uint32_t>(q);
  for (std::uint64_t m = 0;; ++m) {
    Poly cand = decode_poly(m, p, ext_degree);
    cand.push_back(1);
    if (is_irreducible(cand, p)) {
      f.modulus_ = std::move(cand);
      break;
    }
    if (m >= q) throw internal_error("no irreducible modulus found");
  }
  return f;
}

std::vector<std::uint32_t> FieldSpec::coeffs(elem_t a) const {
  if (!is_valid(a)) throw arithmetic_error("element code out of range");
  return decode_poly(a, p_, k_);
}

elem_t FieldSpec::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() != k_) throw arithmetic_error("coefficient vector has wrong length");
  std::uint64_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw arithmetic_error("coefficient not reduced mod p");
    code = code * p_ + c[i];
  }
  return static_cast<elem_t>(code);
}

elem_t FieldSpec::add(elem_t a, elem_t b) const {
  if (k_ == 1) return (a + b) % p_;
  std::uint64_t code = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    code += (a % p_ + b % p_) % p_ * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return static_cast<elem_t>(code);
}

elem_t FieldSpec::neg(elem_t a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint64_t code = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t c = a % p_;
    code += (c == 0 ? 0 : p_ - c) * scale;
    a /= p_;
    scale *= p_;
  }
  return static_cast<elem_t>(code);
}

elem_t FieldSpec::sub(elem_t a, elem_t b) const { return add(a, neg(b)); }

elem_t FieldSpec::mul(elem_t a, elem_t b) const {
  if (k_ == 1) return static_cast<elem_t>(static_cast<std::uint64_t>(a) * b % p_);
  Poly pa = decode_poly(a, p_, k_);
  Poly pb = decode_poly(b, p_, k_);
  Poly prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (pa[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
  }
  Poly rem = poly_mod(std::move(prod), modulus_, p_);
  std::uint64_t code = 0;
  for (std::size_t i = rem.size(); i-- > 0;) code = code * p_ + rem[i];
  return static_cast<elem_t>(code);
}

elem_t FieldSpec::pow(elem_t a, std::uint64_t e) const {
  elem_t result = 1, base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

elem_t FieldSpec::inv(elem_t a) const {
  if (a == 0) throw arithmetic_error("inverse of zero");
  return pow(a, q_ - 2);
}

elem_t FieldSpec::div(elem_t a, elem_t b) const {
  if (b == 0) throw arithmetic_error("division by zero");
  return mul(a, inv(b));
}

int FieldSpec::legendre(elem_t a) const {
  if (a == 0) return 0;
  const elem_t r = pow(a, (q_ - 1) / 2);
  if (r == 1) return 1;
  if (r == neg(1)) return -1;
  throw internal_error("quadratic character power is not +-1");
}

std::uint32_t FieldSpec::absolute_trace(elem_t a) const {
  elem_t acc = a, cur = a;
  for (std::uint32_t i = 1; i < k_; ++i) {
    cur = pow(cur, p_);
    acc = add(acc, cur);
  }
  if (acc >= p_) throw internal_error("trace left the prime subfield");
  return acc;
}

elem_t norm_form(const FieldSpec& f, const Point& x) {
  elem_t acc = 0;
  for (elem_t c : x) acc = f.add(acc, f.mul(c, c));
  return acc;
}

elem_t select_tail_coeff(const FieldSpec& f, std::uint32_t d) {
  if (d < 3 || d % 2 == 0) throw usage_error("tail coefficient requires odd dimension >= 3");
  const int want = (d % 4 == 3 && f.q() % 4 == 3) ? -1 : 1;
  for (elem_t a = 1; a < f.q(); ++a)
    if (f.legendre(a) == want) return a;
  throw internal_error("no element with the required quadratic character");
}

elem_t quadratic_form(const FieldSpec& f, const Point& x, elem_t tail_coeff) {
  const std::size_t d = x.size();
  if (d % 2 == 0) throw usage_error("alternating diagonal form requires odd dimension");
  elem_t acc = 0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const elem_t sq = f.mul(x[i], x[i]);
    acc = (i % 2 == 0) ? f.add(acc, sq) : f.sub(acc, sq);
  }
  acc = f.add(acc, f.mul(tail_coeff, f.mul(x[d - 1], x[d - 1])));
  return acc;
}

std::map<elem_t, std::uint64_t> form_value_distribution(
    const FieldSpec& f, std::uint32_t d,
    const std::function<elem_t(const Point&)>& form, const Caps& caps) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    total *= f.q();
    if (total > caps.max_enum_points)
      throw cap_error("q^d exceeds max_enum_points = " + std::to_string(caps.max_enum_points));
  }
  std::map<elem_t, std::uint64_t> hist;
  Point x(d, 0);
  for (std::uint64_t it = 0;; ++it) {
    ++hist[form(x)];
    std::uint32_t pos = 0;
    while (pos < d) {
      if (++x[pos] < f.q()) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  return hist;
}

}  // namespace fqdist
