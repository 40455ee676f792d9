#include "distort/ordinal.hpp"

#include <cctype>
#include <stdexcept>

namespace distort {

Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ordinal coefficient overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ordinal coefficient overflow");
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal r = sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("ordinal syntax error at offset " + std::to_string(pos_) + ": " +
                                what + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_omega() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == 'w') {
      ++pos_;
      return true;
    }
    // UTF-8 lowercase omega
    if (s_.substr(pos_, 2) == "\xCF\x89") {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::optional<std::uint64_t> nat() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) return std::nullopt;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(s_[pos_] - '0'));
      ++pos_;
    }
    return v;
  }

  // Terms must come with strictly decreasing exponents.
  Ordinal sum() {
    std::vector<Ordinal::Term> terms;
    do {
      auto t = term();
      if (!terms.empty() && !(t.exponent < terms.back().exponent)) fail("terms not in normal form");
      terms.push_back(t);
    } while (eat('+'));
    if (terms.size() == 1 && terms[0].coefficient == 0) return Ordinal();
    for (auto& t : terms)
      if (t.coefficient == 0) fail("zero term inside a sum");
    return Ordinal::from_terms(std::move(terms));
  }

  Ordinal::Term term() {
    if (auto n = nat()) return {Ordinal(), *n};
    if (!eat_omega()) fail("expected a natural number or 'w'");
    Ordinal exponent = Ordinal::finite(1);
    if (eat('^')) {
      if (eat('{')) {
        exponent = sum();
        if (!eat('}')) fail("expected '}'");
      } else if (auto n = nat()) {
        exponent = Ordinal::finite(*n);
      } else if (eat_omega()) {
        exponent = Ordinal::omega();
      } else {
        fail("expected exponent");
      }
    }
    std::uint64_t coeff = 1;
    if (eat('*')) {
      auto n = nat();
      if (!n) fail("expected coefficient");
      if (*n == 0) fail("zero coefficient");
      coeff = *n;
    }
    return {exponent, coeff};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back(Term{Ordinal(), n});
  return r;
}

Ordinal Ordinal::omega() { return omega_pow(finite(1)); }

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw std::invalid_argument("CNF term with zero coefficient");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw std::invalid_argument("CNF exponents not strictly decreasing");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

Ordinal Ordinal::parse(std::string_view text) { return Parser(text).parse_all(); }

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

std::optional<std::uint64_t> Ordinal::as_finite() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += " + ";
    const Term& t = terms_[i];
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (auto e = t.exponent.as_finite()) {
      if (*e != 1) out += "^" + std::to_string(*e);
    } else if (t.exponent == omega()) {
      out += "^w";
    } else {
      out += "^{" + t.exponent.to_string() + "}";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = a.terms_[i].exponent <=> b.terms_[i].exponent;
    if (c != 0) return c;
    if (a.terms_[i].coefficient != b.terms_[i].coefficient)
      return a.terms_[i].coefficient <=> b.terms_[i].coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms()[0].exponent;
  std::vector<Ordinal::Term> out;
  for (const auto& t : a.terms()) {
    auto c = t.exponent <=> lead;
    if (c > 0) {
      out.push_back(t);
    } else {
      if (c == 0) {
        out.push_back(Ordinal::Term{t.exponent, checked_add(t.coefficient, b.terms()[0].coefficient)});
        out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
        return Ordinal::from_terms(std::move(out));
      }
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal mul_nat(const Ordinal& a, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mul_nat: multiplier must be positive");
  if (a.is_zero() || n == 1) return a;
  std::vector<Ordinal::Term> terms = a.terms();
  terms[0].coefficient = checked_mul(terms[0].coefficient, n);
  return Ordinal::from_terms(std::move(terms));
}

Ordinal omega_pow(const Ordinal& a) { return Ordinal::from_terms({Ordinal::Term{a, 1}}); }

Ordinal successor(const Ordinal& a) { return add(a, Ordinal::finite(1)); }

Ordinal predecessor(const Ordinal& a) {
  if (!a.is_successor()) throw std::invalid_argument("predecessor of non-successor " + a.to_string());
  std::vector<Ordinal::Term> terms = a.terms();
  if (--terms.back().coefficient == 0) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n) {
  if (!a.is_limit()) throw std::invalid_argument("fundamental_sequence of non-limit " + a.to_string());
  if (n == 0) throw std::invalid_argument("fundamental_sequence index starts at 1");
  std::vector<Ordinal::Term> head = a.terms();
  Ordinal e = head.back().exponent;
  if (--head.back().coefficient == 0) head.pop_back();
  Ordinal prefix = Ordinal::from_terms(std::move(head));
  if (e.is_successor()) return add(prefix, mul_nat(omega_pow(predecessor(e)), n));
  return add(prefix, omega_pow(fundamental_sequence(e, n)));
}

Ordinal leading_exponent(const Ordinal& a) {
  if (a.is_zero()) throw std::invalid_argument("leading_exponent of 0");
  return a.terms().front().exponent;
}

Ordinal last_exponent(const Ordinal& a) {
  if (a.is_zero()) throw std::invalid_argument("last_exponent of 0");
  return a.terms().back().exponent;
}

bool in_derived_set(const Ordinal& gamma, const Ordinal& alpha, const Ordinal& beta) {
  if (gamma > beta)
    throw std::invalid_argument("in_derived_set: " + gamma.to_string() + " exceeds bound " + beta.to_string());
  if (alpha.is_zero()) return true;
  if (gamma.is_zero()) return false;
  return last_exponent(gamma) >= alpha;
}

Ordinal cb_rank_interval(const Ordinal& beta) {
  if (beta.is_finite()) return Ordinal::finite(1);
  return successor(leading_exponent(beta));
}

Ordinal next_derived_point(const Ordinal& gamma, const Ordinal& alpha) {
  std::vector<Ordinal::Term> kept;
  for (const auto& t : gamma.terms()) {
    if (t.exponent < alpha) break;
    kept.push_back(t);
  }
  return add(Ordinal::from_terms(std::move(kept)), omega_pow(alpha));
}

}  // namespace distort
