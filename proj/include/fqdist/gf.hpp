#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "fqdist/caps.hpp"
#include "fqdist/error.hpp"

namespace fqdist {

// Canonical element code: sum of coeffs[i] * p^i with coefficients reduced
// mod p, so codes are comparable and hashable. Prime-field elements are the
// residues themselves.
using elem_t = std::uint32_t;

// Arithmetic context for GF(p^k), q = p^k, p an odd prime. The modulus is the
// monic irreducible polynomial of degree k over F_p with the smallest integer
// encoding (coefficients low-to-high as base-p digits), so construction is
// deterministic: the same (p, k) always yields the same field representation.
class FieldSpec {
 public:
  static FieldSpec build(std::uint32_t p, std::uint32_t ext_degree, const Caps& caps = {});

  std::uint32_t p() const { return p_; }
  std::uint32_t ext_degree() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Length ext_degree + 1, low-to-high, top coefficient 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool is_valid(elem_t a) const { return a < q_; }
  std::vector<std::uint32_t> coeffs(elem_t a) const;
  elem_t from_coeffs(const std::vector<std::uint32_t>& c) const;
  // Embeds an integer via its residue mod p (prime subfield).
  elem_t from_int(std::uint64_t v) const { return static_cast<elem_t>(v % p_); }

  elem_t add(elem_t a, elem_t b) const;
  elem_t sub(elem_t a, elem_t b) const;
  elem_t neg(elem_t a) const;
  elem_t mul(elem_t a, elem_t b) const;
  elem_t inv(elem_t a) const;
  elem_t div(elem_t a, elem_t b) const;
  elem_t pow(elem_t a, std::uint64_t e) const;

  // Quadratic character: 0 at 0, +1 at a nonzero square, -1 otherwise.
  int legendre(elem_t a) const;

  // Tr(a) = a + a^p + ... + a^(p^(k-1)), returned as the residue in [0, p).
  std::uint32_t absolute_trace(elem_t a) const;

  friend bool operator==(const FieldSpec& x, const FieldSpec& y) {
    return x.p_ == y.p_ && x.k_ == y.k_;
  }

 private:
  FieldSpec() = default;
  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
};

// A vector in F_q^d, coordinates as element codes.
using Point = std::vector<elem_t>;

// ||x|| = x_1^2 + ... + x_d^2.
elem_t norm_form(const FieldSpec& f, const Point& x);

// Tail coefficient for the alternating diagonal form in odd dimension d:
// the smallest nonzero element (code order) whose quadratic character makes
// x_1^2 - x_2^2 + ... + c*x_d^2 equivalent to the sum-of-squares form.
// That character is -1 when d = 3 (mod 4) and q = 3 (mod 4), else +1.
elem_t select_tail_coeff(const FieldSpec& f, std::uint32_t d);

// Alternating diagonal form x_1^2 - x_2^2 + ... - x_{d-1}^2 + tail*x_d^2,
// defined for odd dimension only.
elem_t quadratic_form(const FieldSpec& f, const Point& x, elem_t tail_coeff);

// Exact histogram of form values over all q^d points. Two nonsingular forms
// are equivalent only if these histograms coincide, which is how the
// sum-of-squares / alternating-form equivalence is certified.
std::map<elem_t, std::uint64_t> form_value_distribution(
    const FieldSpec& f, std::uint32_t d,
    const std::function<elem_t(const Point&)>& form, const Caps& caps = {});

}  // namespace fqdist
