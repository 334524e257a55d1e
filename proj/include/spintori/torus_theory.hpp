/*
 * Copyright 2026 The spintori Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Closed-form cyclic structure of the maximal tori of Spin±(2l, q), and the
// arithmetic facts it rests on.

#include <spintori/integer.hpp>
#include <spintori/signed_weyl.hpp>
#include <spintori/smith.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spintori {

/// One term q^exponent - epsilon.
struct QTerm {
  int exponent = 1;
  int epsilon = 1;
  friend bool operator==(const QTerm&, const QTerm&) = default;
};

/// A cyclic group of order ∏ (q^a - ε), kept symbolic in q.
class CyclicFactor {
 public:
  explicit CyclicFactor(std::vector<QTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("CyclicFactor: no terms");
    for (const auto& t : terms_) {
      if (t.exponent < 1 || (t.epsilon != 1 && t.epsilon != -1)) {
        throw std::invalid_argument("CyclicFactor: bad term");
      }
    }
    std::stable_sort(terms_.begin(), terms_.end(), [](const QTerm& a, const QTerm& b) {
      if (a.exponent != b.exponent) return a.exponent > b.exponent;
      return a.epsilon > b.epsilon;
    });
  }
  CyclicFactor(int exponent, int epsilon) : CyclicFactor(std::vector<QTerm>{{exponent, epsilon}}) {}

  /// Parses "q^3-1", "q+1" or "(q^3-1)(q+1)".
  static CyclicFactor parse(std::string_view text) {
    std::vector<QTerm> terms;
    auto parse_term = [&](std::string_view s) {
      if (s.size() < 3 || s[0] != 'q') throw std::invalid_argument("factor: bad term '" + std::string(s) + "'");
      std::size_t pos = 1;
      int exponent = 1;
      if (s[pos] == '^') {
        ++pos;
        exponent = 0;
        const std::size_t begin = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') exponent = exponent * 10 + (s[pos++] - '0');
        if (pos == begin) throw std::invalid_argument("factor: bad exponent in '" + std::string(s) + "'");
      }
      if (s.substr(pos) == "-1") {
        terms.push_back({exponent, 1});
      } else if (s.substr(pos) == "+1") {
        terms.push_back({exponent, -1});
      } else {
        throw std::invalid_argument("factor: bad term '" + std::string(s) + "'");
      }
    };
    if (!text.empty() && text[0] == '(') {
      std::size_t pos = 0;
      while (pos < text.size()) {
        if (text[pos] != '(') throw std::invalid_argument("factor: expected '(' in '" + std::string(text) + "'");
        const auto close = text.find(')', pos);
        if (close == std::string_view::npos) throw std::invalid_argument("factor: unbalanced parentheses");
        parse_term(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
      }
    } else {
      parse_term(text);
    }
    return CyclicFactor(std::move(terms));
  }

  const std::vector<QTerm>& terms() const { return terms_; }

  int degree() const {
    int d = 0;
    for (const auto& t : terms_) d += t.exponent;
    return d;
  }

  Integer value(const Integer& q) const {
    Integer v = 1;
    for (const auto& t : terms_) v *= pow(q, static_cast<unsigned>(t.exponent)) - t.epsilon;
    return v;
  }

  /// Coefficients of the expanded polynomial in q, lowest degree first.
  std::vector<Integer> expand() const {
    std::vector<Integer> poly{1};
    for (const auto& t : terms_) {
      std::vector<Integer> next(poly.size() + t.exponent, Integer(0));
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + t.exponent] += poly[k];
        next[k] -= t.epsilon * poly[k];
      }
      poly = std::move(next);
    }
    return poly;
  }

  std::string to_string() const {
    auto term = [](const QTerm& t) {
      std::string s = "q";
      if (t.exponent != 1) s += "^" + std::to_string(t.exponent);
      s += t.epsilon == 1 ? "-1" : "+1";
      return s;
    };
    if (terms_.size() == 1) return term(terms_[0]);
    std::string out;
    for (const auto& t : terms_) out += "(" + term(t) + ")";
    return out;
  }

  friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;

 private:
  std::vector<QTerm> terms_;
};

/// Which of the four closed forms describes a torus.
enum class TorusCase {
  mixed_odd,     // (i)   odd parts of both signs
  one_sided,     // (ii)  odd parts of one sign only, plus an even negative part
  even_positive, // (iii) all parts positive and even
  fully_split,   // (iv)  everything else
};

inline const char* case_label(TorusCase c) {
  switch (c) {
    case TorusCase::mixed_odd: return "i";
    case TorusCase::one_sided: return "ii";
    case TorusCase::even_positive: return "iii";
    case TorusCase::fully_split: return "iv";
  }
  return "?";
}

inline TorusCase parse_case_label(std::string_view s) {
  if (s == "i") return TorusCase::mixed_odd;
  if (s == "ii") return TorusCase::one_sided;
  if (s == "iii") return TorusCase::even_positive;
  if (s == "iv") return TorusCase::fully_split;
  throw std::invalid_argument("unknown case label '" + std::string(s) + "'");
}

struct TorusDecomposition {
  SignedCycleType class_type;
  TorusCase torus_case;
  std::vector<CyclicFactor> factors;
  /// Indices into class_type.parts() of the parts merged or halved.
  std::vector<std::size_t> chosen_indices;

  int degree() const {
    int d = 0;
    for (const auto& f : factors) d += f.degree();
    return d;
  }

  /// "Z_{(q^3-1)(q+1)} x Z_{q-1}"
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += " x ";
      out += "Z_{" + factors[i].to_string() + "}";
    }
    return out;
  }
};

namespace detail {

// Smallest length, then earliest in canonical order.
inline std::size_t pick_part(const SignedCycleType& t, const std::vector<std::size_t>& candidates) {
  std::size_t best = candidates.front();
  for (std::size_t idx : candidates)
    if (t.parts()[idx].length < t.parts()[best].length) best = idx;
  return best;
}

inline std::vector<CyclicFactor> remaining_factors(const SignedCycleType& t, const std::vector<std::size_t>& skip) {
  std::vector<CyclicFactor> out;
  for (std::size_t k = 0; k < t.parts().size(); ++k) {
    if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
    out.emplace_back(t.parts()[k].length, t.parts()[k].epsilon());
  }
  return out;
}

}  // namespace detail

/// Cyclic decomposition of the torus of class t, valid for every q.
/// The merged (or halved) factor comes first, then the remaining parts in
/// canonical order. Split labels do not affect the result.
inline TorusDecomposition closed_form_decomposition(const SignedCycleType& t) {
  const auto& parts = t.parts();
  std::vector<std::size_t> odd_pos, odd_neg, even_neg;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const bool odd = parts[k].length % 2 == 1;
    if (odd && !parts[k].negative) odd_pos.push_back(k);
    if (odd && parts[k].negative) odd_neg.push_back(k);
    if (!odd && parts[k].negative) even_neg.push_back(k);
  }

  TorusDecomposition d{t, TorusCase::fully_split, {}, {}};
  if (!odd_pos.empty() && !odd_neg.empty()) {
    const std::size_t i = detail::pick_part(t, odd_pos), j = detail::pick_part(t, odd_neg);
    d.torus_case = TorusCase::mixed_odd;
    d.chosen_indices = {i, j};
    d.factors.emplace_back(std::vector<QTerm>{{parts[i].length, 1}, {parts[j].length, -1}});
  } else if ((!odd_pos.empty() || !odd_neg.empty()) && !even_neg.empty()) {
    const std::size_t i = detail::pick_part(t, odd_pos.empty() ? odd_neg : odd_pos);
    const std::size_t j = detail::pick_part(t, even_neg);
    d.torus_case = TorusCase::one_sided;
    d.chosen_indices = {i, j};
    d.factors.emplace_back(std::vector<QTerm>{{parts[i].length, parts[i].epsilon()}, {parts[j].length, -1}});
  } else if (t.negative_count() == 0 &&
             std::all_of(parts.begin(), parts.end(), [](const CyclePart& p) { return p.length % 2 == 0; })) {
    std::size_t i = 0;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      const Integer tk = two_part(parts[k].length), ti = two_part(parts[i].length);
      if (tk < ti || (tk == ti && parts[k].length < parts[i].length)) i = k;
    }
    d.torus_case = TorusCase::even_positive;
    d.chosen_indices = {i};
    d.factors.emplace_back(parts[i].length / 2, 1);
    d.factors.emplace_back(parts[i].length / 2, -1);
  }
  auto rest = detail::remaining_factors(t, d.chosen_indices);
  d.factors.insert(d.factors.end(), rest.begin(), rest.end());
  return d;
}

/// For odd q and a mixed-odd type that also has an even negative part, the
/// torus regroups as (q^{l_t} - ε_t)(q^{l_k} + 1) × rest, where t is the chosen
/// odd part with q ≡ ε_t (mod 4) and k the even negative part.
inline std::optional<TorusDecomposition> alternative_decomposition(const SignedCycleType& t, const Integer& q) {
  if (q % 2 == 0) throw std::invalid_argument("alternative_decomposition: q must be odd");
  const TorusDecomposition main = closed_form_decomposition(t);
  if (main.torus_case != TorusCase::mixed_odd) return std::nullopt;
  std::vector<std::size_t> even_neg;
  for (std::size_t k = 0; k < t.parts().size(); ++k)
    if (t.parts()[k].negative && t.parts()[k].length % 2 == 0) even_neg.push_back(k);
  if (even_neg.empty()) return std::nullopt;

  const int residue = static_cast<int>(((q % 4) + 4) % 4);
  const std::size_t ti = residue == 1 ? main.chosen_indices[0] : main.chosen_indices[1];
  const std::size_t k = detail::pick_part(t, even_neg);
  const auto& pt = t.parts()[ti];
  TorusDecomposition d{t, TorusCase::one_sided, {}, {ti, k}};
  d.factors.emplace_back(std::vector<QTerm>{{pt.length, pt.epsilon()}, {t.parts()[k].length, -1}});
  auto rest = detail::remaining_factors(t, d.chosen_indices);
  d.factors.insert(d.factors.end(), rest.begin(), rest.end());
  return d;
}

inline std::vector<Integer> evaluate(const TorusDecomposition& d, const Integer& q) {
  if (q < 2) throw std::invalid_argument("evaluate: q must be at least 2");
  std::vector<Integer> orders;
  for (const auto& f : d.factors) orders.push_back(f.value(q));
  return orders;
}

/// Invariant factors of Z_{n_1} × ... × Z_{n_k}.
inline AbelianInvariants canonical_invariants(const std::vector<Integer>& orders) {
  for (const auto& n : orders) {
    if (n < 1) throw std::invalid_argument("canonical_invariants: orders must be positive");
  }
  if (orders.empty()) return {};
  return invariant_factors(IntMatrix::diagonal(orders));
}

/// ∏_k (q^{l_k} - ε_k).
inline Integer torus_order(const SignedCycleType& t, const Integer& q) {
  if (q < 2) throw std::invalid_argument("torus_order: q must be at least 2");
  Integer n = 1;
  for (const auto& p : t.parts()) n *= pow(q, static_cast<unsigned>(p.length)) - p.epsilon();
  return n;
}

/// Spin±(2l, q) as a parameter set. prime_power is advisory: every formula
/// here is polynomial in q, but group-theoretic meaning needs q = p^m.
struct GroupForm {
  int l;
  FormSign form;
  Integer q;
  bool prime_power;

  static GroupForm make(int l, FormSign form, const Integer& q) {
    if (l < 2) throw std::invalid_argument("GroupForm: l must be at least 2");
    if (q < 2) throw std::invalid_argument("GroupForm: q must be at least 2");
    return {l, form, q, is_prime_power(q)};
  }
};

/// Center of the simply connected group: Z_{(2,q-1)}² for the plus form with
/// l even, Z_{(4, q^l - ε)} otherwise.
inline AbelianInvariants center_invariants(const GroupForm& g) {
  AbelianInvariants inv;
  if (g.form == FormSign::plus && g.l % 2 == 0) {
    if (gcd(2, g.q - 1) == 2) inv.factors = {2, 2};
    return inv;
  }
  const Integer c = gcd(4, pow(g.q, static_cast<unsigned>(g.l)) - epsilon(g.form));
  if (c > 1) inv.factors = {c};
  return inv;
}

/// True iff H is isomorphic to a subgroup of G (both finite): for each prime
/// p dividing |H|, the sorted p-exponents of H are dominated by those of G.
inline bool embeds(const AbelianInvariants& h, const AbelianInvariants& g) {
  if (!h.finite() || !g.finite()) throw std::invalid_argument("embeds: groups must be finite");
  Integer n = h.order();
  std::vector<Integer> primes;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);

  auto exponents = [](const std::vector<Integer>& factors, const Integer& p) {
    std::vector<int> e;
    for (Integer f : factors) {
      int k = 0;
      while (f % p == 0) {
        f /= p;
        ++k;
      }
      if (k > 0) e.push_back(k);
    }
    std::sort(e.rbegin(), e.rend());
    return e;
  };
  for (const auto& p : primes) {
    const auto eh = exponents(h.factors, p), eg = exponents(g.factors, p);
    if (eh.size() > eg.size()) return false;
    for (std::size_t k = 0; k < eh.size(); ++k)
      if (eh[k] > eg[k]) return false;
  }
  return true;
}

// Arithmetic of a^n ± 1 for odd a.

enum class PowerShift { minus_one, plus_one };

/// Closed form of the 2-part of a^n - 1 or a^n + 1 (a odd, n >= 1).
inline Integer two_part_closed_form(PowerShift shift, const Integer& a, int n) {
  if (a % 2 == 0) throw std::invalid_argument("two_part_closed_form: a must be odd");
  if (n < 1) throw std::invalid_argument("two_part_closed_form: n must be positive");
  if (shift == PowerShift::minus_one) {
    const bool a_minus_one_mod_4 = ((a % 4) + 4) % 4 == 3;
    if (n % 2 == 0 && a_minus_one_mod_4) return two_part(n) * two_part(a + 1);
    return two_part(n) * two_part(a - 1);
  }
  return n % 2 == 1 ? two_part(a + 1) : Integer(2);
}

enum class GcdIdentity {
  odd_odd_opposite,  // n1, n2 odd:         (a^n1 - ε, a^n2 + ε) = 2
  even_odd_plus,     // n1 even, n2 odd:    (a^n1 + 1, a^n2 + ε) = 2
  odd_odd_same,      // n1, n2 odd:         (a^n1 + ε, a^n2 + ε) = a^(n1,n2) + ε
  even_odd_minus,    // n1 even, n2 odd:    (a^n1 - 1, a^n2 + ε) = a^(n1,n2) + ε
};

/// The two gcd arguments for an identity, for checking against the closed form.
inline std::pair<Integer, Integer> gcd_arguments(GcdIdentity id, const Integer& a, int n1, int n2, int eps) {
  const Integer p1 = pow(a, static_cast<unsigned>(n1)), p2 = pow(a, static_cast<unsigned>(n2));
  switch (id) {
    case GcdIdentity::odd_odd_opposite: return {p1 - eps, p2 + eps};
    case GcdIdentity::even_odd_plus: return {p1 + 1, p2 + eps};
    case GcdIdentity::odd_odd_same: return {p1 + eps, p2 + eps};
    case GcdIdentity::even_odd_minus: return {p1 - 1, p2 + eps};
  }
  throw std::invalid_argument("gcd_arguments: unknown identity");
}

/// Closed-form value of the gcd named by `id`. Throws on parity violations.
inline Integer gcd_closed_form(GcdIdentity id, const Integer& a, int n1, int n2, int eps) {
  if (a % 2 == 0) throw std::invalid_argument("gcd_closed_form: a must be odd");
  if (eps != 1 && eps != -1) throw std::invalid_argument("gcd_closed_form: eps must be +1 or -1");
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("gcd_closed_form: exponents must be positive");
  const bool both_odd = n1 % 2 == 1 && n2 % 2 == 1;
  const bool even_odd = n1 % 2 == 0 && n2 % 2 == 1;
  switch (id) {
    case GcdIdentity::odd_odd_opposite:
      if (!both_odd) throw std::invalid_argument("gcd_closed_form: n1 and n2 must be odd");
      return 2;
    case GcdIdentity::even_odd_plus:
      if (!even_odd) throw std::invalid_argument("gcd_closed_form: n1 must be even and n2 odd");
      return 2;
    case GcdIdentity::odd_odd_same:
      if (!both_odd) throw std::invalid_argument("gcd_closed_form: n1 and n2 must be odd");
      return pow(a, static_cast<unsigned>(std::gcd(n1, n2))) + eps;
    case GcdIdentity::even_odd_minus:
      if (!even_odd) throw std::invalid_argument("gcd_closed_form: n1 must be even and n2 odd");
      return pow(a, static_cast<unsigned>(std::gcd(n1, n2))) + eps;
  }
  throw std::invalid_argument("gcd_closed_form: unknown identity");
}

/// Z_{(a^n1+ε)(a^n2-ε)} × Z_{a^n3+1} ≅ Z_{a^n1+ε} × Z_{(a^n2-ε)(a^n3+1)} for
/// odd a ≡ ε (mod 4), n1, n2 odd and n3 even.
inline bool regrouping_holds(const Integer& a, int n1, int n2, int n3) {
  if (a % 2 == 0 || n1 % 2 == 0 || n2 % 2 == 0 || n3 % 2 == 1 || n1 < 1 || n2 < 1 || n3 < 1) {
    throw std::invalid_argument("regrouping_holds: need a odd, n1 and n2 odd, n3 even");
  }
  const int eps = ((a % 4) + 4) % 4 == 1 ? 1 : -1;
  const Integer x = pow(a, static_cast<unsigned>(n1)) + eps;
  const Integer y = pow(a, static_cast<unsigned>(n2)) - eps;
  const Integer z = pow(a, static_cast<unsigned>(n3)) + 1;
  return canonical_invariants({x * y, z}) == canonical_invariants({x, y * z});
}

/// If (a)_2 >= (b)_2 then gcd(2a, b) = gcd(a, b).
inline bool doubling_gcd_holds(const Integer& a, const Integer& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("doubling_gcd_holds: a and b must be positive");
  if (two_part(a) < two_part(b)) throw std::invalid_argument("doubling_gcd_holds: requires two_part(a) >= two_part(b)");
  return gcd(2 * a, b) == gcd(a, b);
}

}  // namespace spintori
