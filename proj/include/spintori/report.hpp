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

// Command implementations behind the spintori CLI: class listings, torus
// reports (text and JSON), the closed-form-vs-SNF verification sweep, and the SNF
// printer. Each command writes to the given streams and returns an exit code:
// 0 success, 1 verification failure, 2 usage error.

#include <spintori/lattice.hpp>
#include <spintori/signed_weyl.hpp>
#include <spintori/smith.hpp>
#include <spintori/torus_theory.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace spintori {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// ---------------------------------------------------------------------------
// Symbolic structures

/// Parses "Z_{q-1} x Z_{(q^3-1)(q+1)}" into its factors.
inline std::vector<CyclicFactor> parse_structure(std::string_view text) {
  std::vector<CyclicFactor> factors;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.substr(pos, 3) != "Z_{") throw std::invalid_argument("structure: expected 'Z_{' in '" + std::string(text) + "'");
    int depth = 1;
    std::size_t end = pos + 3;
    while (end < text.size() && depth > 0) {
      if (text[end] == '{') ++depth;
      if (text[end] == '}') --depth;
      ++end;
    }
    if (depth != 0) throw std::invalid_argument("structure: unbalanced braces");
    factors.push_back(CyclicFactor::parse(text.substr(pos + 3, end - pos - 4)));
    pos = end;
    if (pos < text.size()) {
      if (text.substr(pos, 3) != " x ") throw std::invalid_argument("structure: expected ' x ' separator");
      pos += 3;
      if (pos == text.size()) throw std::invalid_argument("structure: trailing separator");
    }
  }
  if (factors.empty()) throw std::invalid_argument("structure: empty");
  return factors;
}

inline std::string render_structure(const std::vector<CyclicFactor>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " x ";
    out += "Z_{" + factors[i].to_string() + "}";
  }
  return out;
}

/// Same multiset of cyclic orders as polynomials in q, so (q-1)(q+1) and
/// q^2-1 compare equal and factor order is irrelevant.
inline bool same_structure(const std::vector<CyclicFactor>& a, const std::vector<CyclicFactor>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::vector<Integer>> pa, pb;
  for (const auto& f : a) pa.push_back(f.expand());
  for (const auto& f : b) pb.push_back(f.expand());
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return pa == pb;
}

/// "[2,1,-3]" or "[2,2]:+"
inline std::string bracket_literal(const SignedCycleType& t) {
  std::string out = "[" + t.parts_literal() + "]";
  if (t.split()) out += *t.split() == Split::plus ? ":+" : ":-";
  return out;
}

// ---------------------------------------------------------------------------
// Report entries

struct QResult {
  Integer q;
  std::vector<Integer> orders;
  AbelianInvariants invariants;
  AbelianInvariants oracle_invariants;
  bool match = false;
  friend bool operator==(const QResult&, const QResult&) = default;
};

/// Closed-form output for one class plus, per q, the numeric orders, their
/// canonical invariants and the SNF oracle's invariants.
struct ReportEntry {
  int l = 0;
  FormSign form = FormSign::plus;
  SignedCycleType class_type{{{1, false}}};
  TorusCase torus_case = TorusCase::fully_split;
  std::vector<CyclicFactor> factors;
  std::vector<QResult> results;

  std::string symbolic() const { return render_structure(factors); }
  bool all_match() const {
    return std::all_of(results.begin(), results.end(), [](const QResult& r) { return r.match; });
  }
};

inline QResult evaluate_at(const SignedCycleType& t, const TorusDecomposition& d, const Integer& q) {
  QResult r;
  r.q = q;
  r.orders = evaluate(d, q);
  r.invariants = canonical_invariants(r.orders);
  r.oracle_invariants = invariant_factors(torus_matrix(t, q));
  r.match = r.invariants == r.oracle_invariants;
  return r;
}

inline ReportEntry make_report_entry(const SignedCycleType& t, const std::vector<Integer>& qs) {
  const TorusDecomposition d = closed_form_decomposition(t);
  ReportEntry e;
  e.l = t.l();
  e.form = t.form();
  e.class_type = t;
  e.torus_case = d.torus_case;
  e.factors = d.factors;
  for (const auto& q : qs) e.results.push_back(evaluate_at(t, d, q));
  return e;
}

// JSON: one flat object per (class, q); q-less entries emit a single object
// with null q and match. Integers that fit in int64 are numbers, larger ones
// decimal strings.

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

inline Integer integer_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw std::invalid_argument("report JSON: expected integer");
}

inline ordered_json integers_to_json(const std::vector<Integer>& xs) {
  ordered_json a = ordered_json::array();
  for (const auto& x : xs) a.push_back(integer_to_json(x));
  return a;
}

inline std::vector<Integer> integers_from_json(const ordered_json& j) {
  std::vector<Integer> out;
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

inline ordered_json record(const ReportEntry& e, const QResult* r) {
  ordered_json o;
  o["l"] = e.l;
  o["form"] = to_string(e.form);
  o["type"] = e.class_type.parts_literal();
  o["split"] = e.class_type.split() ? ordered_json(to_string(*e.class_type.split())) : ordered_json(nullptr);
  o["case"] = case_label(e.torus_case);
  ordered_json factors = ordered_json::array();
  for (const auto& f : e.factors) {
    ordered_json terms = ordered_json::array();
    for (const auto& t : f.terms()) terms.push_back({t.exponent, t.epsilon});
    factors.push_back(terms);
  }
  o["factors"] = factors;
  if (r) {
    o["q"] = integer_to_json(r->q);
    o["orders"] = integers_to_json(r->orders);
    o["invariants"] = integers_to_json(r->invariants.factors);
    o["oracle_invariants"] = integers_to_json(r->oracle_invariants.factors);
    o["match"] = r->match;
  } else {
    o["q"] = nullptr;
    o["orders"] = ordered_json::array();
    o["invariants"] = ordered_json::array();
    o["oracle_invariants"] = ordered_json::array();
    o["match"] = nullptr;
  }
  return o;
}

}  // namespace detail

inline std::string report_to_json(const std::vector<ReportEntry>& entries) {
  detail::ordered_json arr = detail::ordered_json::array();
  for (const auto& e : entries) {
    if (e.results.empty()) {
      arr.push_back(detail::record(e, nullptr));
    } else {
      for (const auto& r : e.results) arr.push_back(detail::record(e, &r));
    }
  }
  return arr.dump(2) + "\n";
}

/// Inverse of report_to_json; consecutive records of one class regroup into
/// a single entry.
inline std::vector<ReportEntry> report_from_json(const std::string& text) {
  const auto arr = detail::ordered_json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("report JSON: top level must be an array");
  std::vector<ReportEntry> entries;
  for (const auto& o : arr) {
    std::optional<Split> split;
    if (!o.at("split").is_null()) split = o.at("split").get<std::string>() == "plus" ? Split::plus : Split::minus;
    std::string literal = o.at("type").get<std::string>();
    if (split) literal += *split == Split::plus ? ":+" : ":-";
    const auto t = SignedCycleType::parse(literal);
    const FormSign form = parse_form(o.at("form").get<std::string>());
    const int l = o.at("l").get<int>();
    if (entries.empty() || !(entries.back().class_type == t) || entries.back().form != form) {
      ReportEntry e;
      e.l = l;
      e.form = form;
      e.class_type = t;
      e.torus_case = parse_case_label(o.at("case").get<std::string>());
      for (const auto& f : o.at("factors")) {
        std::vector<QTerm> terms;
        for (const auto& term : f) terms.push_back({term.at(0).get<int>(), term.at(1).get<int>()});
        e.factors.emplace_back(std::move(terms));
      }
      entries.push_back(std::move(e));
    }
    if (!o.at("q").is_null()) {
      QResult r;
      r.q = detail::integer_from_json(o.at("q"));
      r.orders = detail::integers_from_json(o.at("orders"));
      r.invariants.factors = detail::integers_from_json(o.at("invariants"));
      r.oracle_invariants.factors = detail::integers_from_json(o.at("oracle_invariants"));
      r.match = o.at("match").get<bool>();
      entries.back().results.push_back(std::move(r));
    }
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Reference tables

/// A published listing to compare against: per type literal, the structure
/// as printed and the structure expected after adjudication.
struct ReferenceRow {
  std::string printed;
  std::string expected;
  std::string note;
};

struct ReferenceTable {
  std::map<std::string, ReferenceRow> rows;  // keyed by canonical type literal
};

/// Reads {"tables": [{"l", "form", "rows": [{"type", "printed", "expected"?, "note"?}]}]}
/// and returns the table for (l, form), empty if absent.
inline ReferenceTable load_reference(std::istream& is, int l, FormSign form) {
  const auto doc = nlohmann::json::parse(is);
  ReferenceTable table;
  for (const auto& t : doc.at("tables")) {
    if (t.at("l").get<int>() != l || parse_form(t.at("form").get<std::string>()) != form) continue;
    for (const auto& row : t.at("rows")) {
      ReferenceRow r;
      r.printed = row.at("printed").get<std::string>();
      r.expected = row.contains("expected") ? row.at("expected").get<std::string>() : r.printed;
      r.note = row.value("note", "");
      const auto type = SignedCycleType::parse(row.at("type").get<std::string>());
      table.rows[type.to_string()] = r;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Commands

inline void warn_if_not_prime_power(const std::vector<Integer>& qs, std::ostream& err) {
  for (const auto& q : qs) {
    if (!is_prime_power(q)) {
      err << "warning: q=" << q << " is not a prime power; results hold as polynomial identities only\n";
    }
  }
}

inline int cmd_enumerate(int l, FormSign form, std::ostream& out, std::ostream& err) {
  if (l < 2) {
    err << "error: l must be at least 2\n";
    return kExitUsage;
  }
  const auto classes = enumerate_classes(l, form);
  for (const auto& t : classes) out << t.to_string() << '\n';
  out << classes.size() << " classes\n";
  return kExitOk;
}

inline int cmd_structure(int l, FormSign form, const std::string& literal, const std::vector<Integer>& qs,
                         bool json, std::ostream& out, std::ostream& err) {
  std::optional<SignedCycleType> t;
  try {
    t = SignedCycleType::parse(literal);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (t->l() != l) {
    err << "error: parts of " << literal << " sum to " << t->l() << ", not l=" << l << '\n';
    return kExitUsage;
  }
  if (t->form() != form) {
    err << "error: " << literal << " has " << t->negative_count() << " negative parts, which belongs to the "
        << to_string(t->form()) << " form\n";
    return kExitUsage;
  }
  for (const auto& q : qs) {
    if (q < 2) {
      err << "error: q must be at least 2\n";
      return kExitUsage;
    }
  }
  warn_if_not_prime_power(qs, err);
  const ReportEntry e = make_report_entry(*t, qs);
  if (json) {
    out << report_to_json({e});
  } else {
    out << "type:      " << bracket_literal(*t) << " (l=" << l << ", form " << to_string(form) << ")\n";
    out << "case:      " << case_label(e.torus_case) << '\n';
    out << "structure: " << e.symbolic() << '\n';
    for (const auto& r : e.results) {
      out << "q=" << r.q << ": orders [";
      for (std::size_t i = 0; i < r.orders.size(); ++i) out << (i ? ", " : "") << r.orders[i];
      out << "]  invariants " << r.invariants.to_string() << "  oracle " << r.oracle_invariants.to_string() << "  "
          << (r.match ? "MATCH" : "MISMATCH") << '\n';
    }
  }
  return e.all_match() ? kExitOk : kExitFailure;
}

inline int cmd_table(int l, FormSign form, const std::vector<Integer>& qs, bool json, const ReferenceTable* reference,
                     std::ostream& out, std::ostream& err) {
  if (l < 2) {
    err << "error: l must be at least 2\n";
    return kExitUsage;
  }
  std::vector<ReportEntry> entries;
  for (const auto& t : enumerate_classes(l, form)) entries.push_back(make_report_entry(t, qs));
  bool ok = std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.all_match(); });

  if (json) {
    out << report_to_json(entries);
    return ok ? kExitOk : kExitFailure;
  }
  // Split pairs share one row, labelled ":+-", as long as their structures agree.
  struct Row {
    std::string label;
    const ReportEntry* entry;
    const ReportEntry* twin;
  };
  std::vector<Row> rows;
  for (const auto& e : entries) {
    if (!rows.empty() && e.class_type.split() == Split::minus && rows.back().entry->class_type.split() &&
        rows.back().entry->class_type.parts() == e.class_type.parts() &&
        same_structure(rows.back().entry->factors, e.factors)) {
      rows.back().label = "[" + e.class_type.parts_literal() + "]:+-";
      rows.back().twin = &e;
      continue;
    }
    rows.push_back({bracket_literal(e.class_type), &e, nullptr});
  }

  out << "Maximal tori of Spin" << (form == FormSign::plus ? "+" : "-") << "(" << 2 * l << ", q)\n";
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.label.size());
  for (const auto& r : rows) {
    const ReportEntry& e = *r.entry;
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.label << e.symbolic();
    if (!e.all_match() || (r.twin && !r.twin->all_match())) out << "  [oracle MISMATCH]";
    if (reference) {
      std::string flag;
      for (const ReportEntry* x : {r.entry, r.twin}) {
        if (!x) continue;
        const auto it = reference->rows.find(x->class_type.to_string());
        if (it == reference->rows.end()) {
          flag = "  [not in reference]";
          ok = false;
          break;
        }
        const ReferenceRow& row = it->second;
        if (!same_structure(x->factors, parse_structure(row.expected))) {
          flag = "  [reference MISMATCH: " + row.expected + "]";
          ok = false;
          break;
        }
        if (!same_structure(x->factors, parse_structure(row.printed))) {
          flag = "  [differs from published " + row.printed + "]";
        }
      }
      out << flag;
    }
    out << '\n';
  }
  out << rows.size() << " rows, ";
  out << entries.size() << " classes";
  if (!qs.empty()) {
    out << ", oracle-checked at q=";
    for (std::size_t i = 0; i < qs.size(); ++i) out << (i ? "," : "") << qs[i];
  }
  out << '\n';
  return ok ? kExitOk : kExitFailure;
}

// Verification sweep.

struct VerifyItem {
  SignedCycleType type;
  Integer q;
  bool pipeline = false;
};

/// Runs every check for one (class, q) pair; returns failure descriptions.
inline std::vector<std::string> verify_item(const VerifyItem& item) {
  std::vector<std::string> failures;
  const auto& t = item.type;
  const std::string where = bracket_literal(t) + " q=" + item.q.str();
  const TorusDecomposition d = closed_form_decomposition(t);
  const auto orders = evaluate(d, item.q);
  const auto closed = canonical_invariants(orders);
  const IntMatrix a = torus_matrix(t, item.q);
  const auto oracle = invariant_factors(a);
  if (closed != oracle) {
    failures.push_back(where + ": closed form " + closed.to_string() + " != oracle " + oracle.to_string());
  }
  Integer product = 1;
  for (const auto& o : orders) product *= o;
  const Integer order = torus_order(t, item.q);
  const Integer det = abs(determinant(a));
  if (product != order || det != order || oracle.order() != order) {
    failures.push_back(where + ": order law violated (product " + product.str() + ", formula " + order.str() +
                       ", |det| " + det.str() + ")");
  }
  if (item.pipeline && t.parts().size() >= 2) {
    if (!coupling_identity_holds(t, item.q)) failures.push_back(where + ": coupling identity fails");
    const auto reduced = invariant_factors(pipeline_reduced_matrix(t, item.q));
    if (reduced != oracle) {
      failures.push_back(where + ": reduced pipeline " + reduced.to_string() + " != oracle " + oracle.to_string());
    }
  }
  return failures;
}

struct VerifySummary {
  std::size_t cases = 0;
  std::size_t pipeline_cases = 0;
  std::vector<std::string> failures;
};

inline VerifySummary run_verification(int l_max, const std::vector<Integer>& qs, unsigned threads) {
  std::vector<VerifyItem> items;
  for (int l = 2; l <= l_max; ++l)
    for (FormSign form : {FormSign::plus, FormSign::minus})
      for (const auto& t : enumerate_classes(l, form))
        for (const auto& q : qs) items.push_back({t, q, l <= std::min(l_max, 6)});

  std::vector<std::vector<std::string>> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) results[i] = verify_item(items[i]);
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  VerifySummary s;
  s.cases = items.size();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].pipeline && items[i].type.parts().size() >= 2) ++s.pipeline_cases;
    s.failures.insert(s.failures.end(), results[i].begin(), results[i].end());
  }
  std::sort(s.failures.begin(), s.failures.end());
  return s;
}

inline int cmd_verify(int l_max, const std::vector<Integer>& qs, unsigned threads, std::ostream& out,
                      std::ostream& err) {
  if (l_max < 2) {
    err << "error: --l-max must be at least 2\n";
    return kExitUsage;
  }
  if (qs.empty()) {
    err << "error: at least one q is required\n";
    return kExitUsage;
  }
  for (const auto& q : qs) {
    if (q < 2) {
      err << "error: q must be at least 2\n";
      return kExitUsage;
    }
  }
  warn_if_not_prime_power(qs, err);
  const VerifySummary s = run_verification(l_max, qs, threads);
  for (const auto& f : s.failures) out << "FAIL " << f << '\n';
  out << "checked " << s.cases << " (class, q) pairs for l=2.." << l_max << ", " << s.pipeline_cases
      << " with pipeline checks; " << s.failures.size() << " failures\n";
  return s.failures.empty() ? kExitOk : kExitFailure;
}

inline int cmd_snf(std::istream& in, bool witnesses, bool json, std::ostream& out, std::ostream& err) {
  IntMatrix a;
  try {
    a = read_matrix(in);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SnfResult snf = smith_normal_form(a);
  const bool sound = snf.p * a * snf.q == snf.d && abs(determinant(snf.p)) == 1 && abs(determinant(snf.q)) == 1;
  if (!sound) {
    err << "error: SNF witness verification failed\n";
    return kExitFailure;
  }
  const AbelianInvariants inv = invariant_factors(a);
  if (json) {
    auto to_rows = [](const IntMatrix& m) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(detail::integer_to_json(m(i, j)));
        rows.push_back(row);
      }
      return rows;
    };
    nlohmann::ordered_json o;
    o["d"] = to_rows(snf.d);
    if (witnesses) {
      o["p"] = to_rows(snf.p);
      o["q"] = to_rows(snf.q);
    }
    o["invariants"] = detail::integers_to_json(inv.factors);
    o["free_rank"] = inv.free_rank;
    out << o.dump(2) << '\n';
    return kExitOk;
  }
  out << "# D\n";
  write_matrix(out, snf.d);
  if (witnesses) {
    out << "# P\n";
    write_matrix(out, snf.p);
    out << "# Q\n";
    write_matrix(out, snf.q);
  }
  out << "# invariants " << inv.to_string() << '\n';
  return kExitOk;
}

}  // namespace spintori
