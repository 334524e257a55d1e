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

// Signed permutations of {±1..±l}, signed-cycle types, and the classes of
// maximal tori in Spin±(2l, q) they parameterize.

#include <spintori/matrix.hpp>

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spintori {

enum class FormSign { plus, minus };
enum class Split { plus, minus };
enum class Parity { even, odd };

inline int epsilon(FormSign f) { return f == FormSign::plus ? 1 : -1; }
inline const char* to_string(FormSign f) { return f == FormSign::plus ? "plus" : "minus"; }
inline const char* to_string(Split s) { return s == Split::plus ? "plus" : "minus"; }

inline FormSign parse_form(std::string_view text) {
  if (text == "plus" || text == "+") return FormSign::plus;
  if (text == "minus" || text == "-") return FormSign::minus;
  throw std::invalid_argument("form must be 'plus' or 'minus', got '" + std::string(text) + "'");
}

/// One cycle of a signed-cycle type.
struct CyclePart {
  int length = 1;
  bool negative = false;

  int epsilon() const { return negative ? -1 : 1; }
  friend bool operator==(const CyclePart&, const CyclePart&) = default;
};

/// Canonical part order: positive before negative, lengths non-increasing.
inline bool canonical_before(const CyclePart& a, const CyclePart& b) {
  if (a.negative != b.negative) return !a.negative;
  return a.length > b.length;
}

/// A permutation θ of {±1..±l} with θ(-i) = -θ(i), stored as the signed
/// images of 1..l.
class SignedPermutation {
 public:
  explicit SignedPermutation(std::vector<int> signed_images) : image_(std::move(signed_images)) {
    const int l = degree();
    if (l < 1) throw std::invalid_argument("SignedPermutation: degree must be positive");
    std::vector<bool> hit(static_cast<std::size_t>(l), false);
    for (int v : image_) {
      const int t = std::abs(v);
      if (t < 1 || t > l || hit[t - 1]) {
        throw std::invalid_argument("SignedPermutation: underlying map is not a bijection");
      }
      hit[t - 1] = true;
    }
  }

  static SignedPermutation identity(int l) {
    std::vector<int> img(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) img[i] = i + 1;
    return SignedPermutation(std::move(img));
  }

  /// The involution negating coordinate `point` (the signed cycle (point)‾).
  static SignedPermutation negation(int l, int point) {
    auto p = identity(l);
    p.image_.at(point - 1) = -point;
    return p;
  }

  int degree() const { return static_cast<int>(image_.size()); }

  /// θ(x) for x in {±1..±l}.
  int apply(int x) const { return x > 0 ? image_[x - 1] : -image_[-x - 1]; }
  int target(int i) const { return std::abs(image_[i - 1]); }
  int sign(int i) const { return image_[i - 1] > 0 ? 1 : -1; }
  const std::vector<int>& images() const { return image_; }

  SignedPermutation inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 1; i <= degree(); ++i) {
      const int v = image_[i - 1];
      inv[std::abs(v) - 1] = v > 0 ? i : -i;
    }
    return SignedPermutation(std::move(inv));
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::vector<int> image_;
};

/// Left-to-right product: apply `first`, then `second`.
inline SignedPermutation compose(const SignedPermutation& first, const SignedPermutation& second) {
  if (first.degree() != second.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> img(static_cast<std::size_t>(first.degree()));
  for (int i = 1; i <= first.degree(); ++i) img[i - 1] = second.apply(first.apply(i));
  return SignedPermutation(std::move(img));
}

/// Signed-cycle decomposition, parts in canonical order.
inline std::vector<CyclePart> cycle_parts(const SignedPermutation& p) {
  const int l = p.degree();
  std::vector<bool> seen(static_cast<std::size_t>(l), false);
  std::vector<CyclePart> parts;
  for (int start = 1; start <= l; ++start) {
    if (seen[start - 1]) continue;
    int length = 0, sign = 1, i = start;
    do {
      seen[i - 1] = true;
      sign *= p.sign(i);
      i = p.target(i);
      ++length;
    } while (i != start);
    parts.push_back({length, sign < 0});
  }
  std::stable_sort(parts.begin(), parts.end(), canonical_before);
  return parts;
}

inline Parity negative_cycle_parity(const SignedPermutation& p) {
  int count = 0;
  for (const auto& part : cycle_parts(p)) count += part.negative ? 1 : 0;
  return count % 2 == 0 ? Parity::even : Parity::odd;
}

/// Monomial matrix with M(i, |θ(i)|) = sign θ(i). The standard representative
/// of a type maps to the block sum of the cycle matrices R_{εk}, and
/// matrix(compose(p, q)) = matrix(p) * matrix(q).
inline IntMatrix permutation_matrix(const SignedPermutation& p) {
  IntMatrix m(p.degree(), p.degree());
  for (int i = 1; i <= p.degree(); ++i) m(i - 1, p.target(i) - 1) = p.sign(i);
  return m;
}

/// A signed partition of l, with a split label for the all-even all-positive
/// types whose W(C_l)-class splits into two W(D_l)-classes.
class SignedCycleType {
 public:
  /// Sorts `parts` into canonical order and validates; throws
  /// std::invalid_argument on a bad part or an inconsistent split label.
  SignedCycleType(std::vector<CyclePart> parts, std::optional<Split> split = std::nullopt)
      : parts_(std::move(parts)), split_(split) {
    if (parts_.empty()) throw std::invalid_argument("signed-cycle type: no parts");
    for (const auto& part : parts_) {
      if (part.length < 1) throw std::invalid_argument("signed-cycle type: part lengths must be positive");
    }
    std::stable_sort(parts_.begin(), parts_.end(), canonical_before);
    if (requires_split() && !split_) {
      throw std::invalid_argument("signed-cycle type: all parts positive and even, split label (:+ or :-) required");
    }
    if (!requires_split() && split_) {
      throw std::invalid_argument("signed-cycle type: split label only allowed when all parts are positive and even");
    }
  }

  /// Parses "2,1,-3" (optionally suffixed ":+" or ":-").
  static SignedCycleType parse(std::string_view literal) {
    std::optional<Split> split;
    std::string_view body = literal;
    if (const auto colon = literal.find(':'); colon != std::string_view::npos) {
      const auto suffix = literal.substr(colon + 1);
      if (suffix == "+") {
        split = Split::plus;
      } else if (suffix == "-") {
        split = Split::minus;
      } else {
        throw std::invalid_argument("type literal: split suffix must be ':+' or ':-'");
      }
      body = literal.substr(0, colon);
    }
    std::vector<CyclePart> parts;
    std::size_t pos = 0;
    while (true) {
      const auto comma = body.find(',', pos);
      const auto token = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
      std::size_t k = 0;
      const bool negative = !token.empty() && token[0] == '-';
      if (negative) ++k;
      if (k == token.size() || token.size() - k > 9) {
        throw std::invalid_argument("type literal: bad part '" + std::string(token) + "'");
      }
      int length = 0;
      for (; k < token.size(); ++k) {
        if (token[k] < '0' || token[k] > '9') {
          throw std::invalid_argument("type literal: bad part '" + std::string(token) + "'");
        }
        length = length * 10 + (token[k] - '0');
      }
      if (length == 0) throw std::invalid_argument("type literal: part lengths must be positive");
      parts.push_back({length, negative});
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return SignedCycleType(std::move(parts), split);
  }

  const std::vector<CyclePart>& parts() const { return parts_; }
  std::optional<Split> split() const { return split_; }

  int l() const {
    int sum = 0;
    for (const auto& p : parts_) sum += p.length;
    return sum;
  }
  int negative_count() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](const CyclePart& p) { return p.negative; }));
  }
  FormSign form() const { return negative_count() % 2 == 0 ? FormSign::plus : FormSign::minus; }

  /// Parts without the split label, e.g. "2,2" for "2,2:+".
  std::string parts_literal() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      if (parts_[i].negative) out += '-';
      out += std::to_string(parts_[i].length);
    }
    return out;
  }

  /// Canonical literal; parse(to_string()) reproduces the type exactly.
  std::string to_string() const {
    std::string out = parts_literal();
    if (split_) out += *split_ == Split::plus ? ":+" : ":-";
    return out;
  }

  /// Same type with the split label dropped or replaced; used to relate the
  /// two halves of a split class.
  SignedCycleType with_split(std::optional<Split> split) const { return SignedCycleType(parts_, split); }

  friend bool operator==(const SignedCycleType&, const SignedCycleType&) = default;

 private:
  bool requires_split() const {
    return std::all_of(parts_.begin(), parts_.end(),
                       [](const CyclePart& p) { return !p.negative && p.length % 2 == 0; });
  }

  std::vector<CyclePart> parts_;
  std::optional<Split> split_;
};

namespace detail {

/// Partitions of n as non-increasing lists, in ascending lexicographic order.
inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int k = 1; k <= std::min(remaining, max_part); ++k) {
      current.push_back(k);
      self(self, remaining - k, k);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  std::sort(out.begin(), out.end());
  return out;
}

struct ClassOrderKey {
  std::vector<int> unsigned_parts;
  int negatives;
  std::vector<int> negative_parts;
  int split;
  auto operator<=>(const ClassOrderKey&) const = default;
};

inline ClassOrderKey order_key(const SignedCycleType& t) {
  ClassOrderKey key{{}, t.negative_count(), {}, t.split() ? (*t.split() == Split::plus ? 1 : 2) : 0};
  for (const auto& p : t.parts()) {
    key.unsigned_parts.push_back(p.length);
    if (p.negative) key.negative_parts.push_back(p.length);
  }
  std::sort(key.unsigned_parts.rbegin(), key.unsigned_parts.rend());
  return key;
}

}  // namespace detail

/// Deterministic total order on types: underlying partition (ascending lex),
/// then number of negative parts, then the negative sub-partition, then split
/// plus before minus.
inline bool class_order_less(const SignedCycleType& a, const SignedCycleType& b) {
  return detail::order_key(a) < detail::order_key(b);
}

/// One entry per σ-conjugacy class of W(D_l) for the given form.
inline std::vector<SignedCycleType> enumerate_classes(int l, FormSign form) {
  if (l < 2) throw std::invalid_argument("enumerate_classes: l must be at least 2");
  std::vector<SignedCycleType> out;
  for (int neg_total = 0; neg_total <= l; ++neg_total) {
    for (const auto& pos : detail::partitions(l - neg_total)) {
      for (const auto& neg : detail::partitions(neg_total)) {
        const int s = static_cast<int>(neg.size());
        if ((s % 2 == 0) != (form == FormSign::plus)) continue;
        std::vector<CyclePart> parts;
        for (int k : pos) parts.push_back({k, false});
        for (int k : neg) parts.push_back({k, true});
        const bool split = s == 0 && std::all_of(pos.begin(), pos.end(), [](int k) { return k % 2 == 0; });
        if (split) {
          out.emplace_back(parts, Split::plus);
          out.emplace_back(parts, Split::minus);
        } else {
          out.emplace_back(std::move(parts));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), class_order_less);
  return out;
}

/// Consecutive cycles (1..l_1)(l_1+1..l_1+l_2)...; a negative cycle closes
/// with i_k -> -i_1. The split-minus representative is the plus one
/// conjugated by the negation of coordinate l.
inline SignedPermutation standard_representative(const SignedCycleType& t) {
  const int l = t.l();
  std::vector<int> img(static_cast<std::size_t>(l));
  int start = 1;
  for (const auto& part : t.parts()) {
    const int last = start + part.length - 1;
    for (int i = start; i < last; ++i) img[i - 1] = i + 1;
    img[last - 1] = part.negative ? -start : start;
    start = last + 1;
  }
  SignedPermutation theta(std::move(img));
  if (t.split() == Split::minus) {
    const auto flip = SignedPermutation::negation(l, l);
    theta = compose(compose(flip, theta), flip);
  }
  return theta;
}

}  // namespace spintori
