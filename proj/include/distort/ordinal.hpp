#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace distort {

// Countable ordinal below epsilon_0 in Cantor normal form.
// Terms are kept with strictly decreasing exponents and positive coefficients;
// the empty term list is 0.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  // Validates normal form.
  static Ordinal from_terms(std::vector<Term> terms);
  // Textual syntax: "w^{<ordinal>}*<nat> + ...", e.g. "w^2*3 + w + 5".
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;
  std::optional<std::uint64_t> as_finite() const;

  std::string to_string() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
  friend bool operator==(const Term&, const Term&) = default;
};

Ordinal add(const Ordinal& a, const Ordinal& b);
inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
// Right multiplication a*n; n = 0 is rejected.
Ordinal mul_nat(const Ordinal& a, std::uint64_t n);
Ordinal omega_pow(const Ordinal& a);
Ordinal successor(const Ordinal& a);
// a must be a successor.
Ordinal predecessor(const Ordinal& a);

// Canonical sequence a[n], n >= 1, for limit a.
Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n);
Ordinal leading_exponent(const Ordinal& a);
Ordinal last_exponent(const Ordinal& a);

// Membership of gamma in the alpha-th derived set of [0,beta].
bool in_derived_set(const Ordinal& gamma, const Ordinal& alpha, const Ordinal& beta);
// Least alpha with [0,beta]^(alpha) empty.
Ordinal cb_rank_interval(const Ordinal& beta);
// Least delta > gamma whose last exponent is at least alpha.
Ordinal next_derived_point(const Ordinal& gamma, const Ordinal& alpha);

}  // namespace distort
