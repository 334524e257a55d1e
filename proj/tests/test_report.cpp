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


#include <spintori/report.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace spintori;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Run capture(F f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Structure, ParseAndCompare) {
  const auto a = parse_structure("Z_{q^2-1} x Z_{(q^3-1)(q+1)}");
  EXPECT_EQ(render_structure(a), "Z_{q^2-1} x Z_{(q^3-1)(q+1)}");
  EXPECT_TRUE(same_structure(parse_structure("Z_{(q-1)(q+1)} x Z_{q^2+1}"), parse_structure("Z_{q^2+1} x Z_{q^2-1}")));
  EXPECT_FALSE(same_structure(parse_structure("Z_{q^2-1} x Z_{q+1} x Z_{q+1}"),
                              parse_structure("Z_{q-1} x Z_{q+1} x Z_{q^2-1}")));
  EXPECT_FALSE(same_structure(parse_structure("Z_{q-1}"), parse_structure("Z_{q-1} x Z_{q-1}")));
  for (const char* bad : {"", "Z_{q-1} Z_{q+1}", "Z_{q-1", "Y_{q-1}", "Z_{q-1} x "}) {
    EXPECT_THROW(parse_structure(bad), std::invalid_argument) << bad;
  }
}

TEST(Report, EntryMatchFlag) {
  const auto e = make_report_entry(SignedCycleType::parse("3,-1"), {3, 4});
  EXPECT_EQ(e.symbolic(), "Z_{(q^3-1)(q+1)}");
  ASSERT_EQ(e.results.size(), 2u);
  EXPECT_EQ(e.results[0].orders, (std::vector<Integer>{104}));
  EXPECT_TRUE(e.all_match());
  for (const auto& r : e.results) {
    EXPECT_EQ(r.match, r.invariants == r.oracle_invariants);
    Integer product = 1;
    for (const auto& o : r.orders) product *= o;
    EXPECT_EQ(product, torus_order(e.class_type, r.q));
  }
}

TEST(Report, JsonRoundTripIsByteIdentical) {
  std::vector<ReportEntry> entries;
  for (FormSign form : {FormSign::plus, FormSign::minus})
    for (const auto& t : enumerate_classes(4, form)) entries.push_back(make_report_entry(t, {2, 3, 5}));
  entries.push_back(make_report_entry(SignedCycleType::parse("2,2:-"), {}));
  // Orders beyond int64 go through the string path.
  entries.push_back(make_report_entry(SignedCycleType::parse("-8,-7,-6,-5"), {Integer(1000003)}));
  const std::string json = report_to_json(entries);
  EXPECT_NE(json.find("\"oracle_invariants\""), std::string::npos);
  const auto parsed = report_from_json(json);
  ASSERT_EQ(parsed.size(), entries.size());
  EXPECT_EQ(report_to_json(parsed), json);
  EXPECT_EQ(parsed.back().results.front().orders, entries.back().results.front().orders);
}

TEST(Report, JsonFieldOrder) {
  const std::string json = report_to_json({make_report_entry(SignedCycleType::parse("3,-1"), {3})});
  std::size_t pos = 0;
  for (const char* key : {"\"l\"", "\"form\"", "\"type\"", "\"split\"", "\"case\"", "\"factors\"", "\"q\"",
                          "\"orders\"", "\"invariants\"", "\"oracle_invariants\"", "\"match\""}) {
    const auto found = json.find(key, pos);
    ASSERT_NE(found, std::string::npos) << key;
    pos = found;
  }
}

TEST(Commands, Enumerate) {
  auto r = capture([](auto& o, auto& e) { return cmd_enumerate(4, FormSign::minus, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(count_lines(r.out), 10u);  // 9 classes + footer
  r = capture([](auto& o, auto& e) { return cmd_enumerate(2, FormSign::plus, o, e); });
  EXPECT_EQ(r.out, "1,1\n-1,-1\n2:+\n2:-\n4 classes\n");
  r = capture([](auto& o, auto& e) { return cmd_enumerate(1, FormSign::plus, o, e); });
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Commands, Structure) {
  auto r = capture([](auto& o, auto& e) { return cmd_structure(4, FormSign::minus, "3,-1", {3}, false, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("Z_{(q^3-1)(q+1)}"), std::string::npos);
  EXPECT_NE(r.out.find("orders [104]  invariants (104)  oracle (104)  MATCH"), std::string::npos);

  r = capture([](auto& o, auto& e) { return cmd_structure(4, FormSign::plus, "1,-2,-1", {}, false, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("case:      i\n"), std::string::npos);
  EXPECT_TRUE(same_structure(parse_structure(r.out.substr(r.out.find("Z_"), r.out.find('\n', r.out.find("Z_")) -
                                                                                r.out.find("Z_"))),
                             parse_structure("Z_{q^2+1} x Z_{q^2-1}")));

  for (auto [l, form, type] : {std::tuple{4, FormSign::plus, "1,1,1"}, std::tuple{4, FormSign::minus, "2,2:+"},
                               std::tuple{4, FormSign::plus, "2,x"}}) {
    r = capture([&](auto& o, auto& e) { return cmd_structure(l, form, type, {}, false, o, e); });
    EXPECT_EQ(r.code, kExitUsage) << type;
  }
  r = capture([](auto& o, auto& e) { return cmd_structure(2, FormSign::minus, "-2", {6}, false, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("not a prime power"), std::string::npos);
}

TEST(Commands, Verify) {
  auto r = capture([](auto& o, auto& e) { return cmd_verify(4, {2, 3, 5}, 2, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find(" 0 failures\n"), std::string::npos);
  r = capture([](auto& o, auto& e) { return cmd_verify(1, {3}, 1, o, e); });
  EXPECT_EQ(r.code, kExitUsage);
  r = capture([](auto& o, auto& e) { return cmd_verify(3, {1}, 1, o, e); });
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Commands, VerifyIsDeterministicAcrossThreadCounts) {
  const auto one = run_verification(6, {2, 3, 4, 5}, 1);
  const auto four = run_verification(6, {2, 3, 4, 5}, 4);
  EXPECT_EQ(one.failures, four.failures);
  EXPECT_EQ(one.cases, four.cases);
  EXPECT_TRUE(one.failures.empty());
}

TEST(Commands, Table) {
  auto r = capture([](auto& o, auto& e) { return cmd_table(4, FormSign::minus, {3, 5, 7}, false, nullptr, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("[-4]          Z_{q^4+1}\n9 rows"), std::string::npos) << r.out;

  r = capture([](auto& o, auto& e) { return cmd_table(4, FormSign::plus, {3}, false, nullptr, o, e); });
  EXPECT_NE(r.out.find("[2,2]:+-"), std::string::npos);
  EXPECT_NE(r.out.find("[4]:+-"), std::string::npos);
  EXPECT_NE(r.out.find("11 rows, 13 classes"), std::string::npos);

  r = capture([](auto& o, auto& e) { return cmd_table(2, FormSign::minus, {3}, false, nullptr, o, e); });
  EXPECT_NE(r.out.find("[1,-1]  Z_{(q-1)(q+1)}\n[-2]    Z_{q^2+1}\n"), std::string::npos) << r.out;

  r = capture([](auto& o, auto& e) { return cmd_table(1, FormSign::minus, {3}, false, nullptr, o, e); });
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Commands, TableFlagsReferenceDisagreements) {
  std::istringstream doc(R"({"tables": [{"l": 2, "form": "minus", "rows": [
      {"type": "1,-1", "printed": "Z_{q^2-1}"},
      {"type": "-2", "printed": "Z_{q^2-1}"}]}]})");
  const auto ref = load_reference(doc, 2, FormSign::minus);
  auto r = capture([&](auto& o, auto& e) { return cmd_table(2, FormSign::minus, {3}, false, &ref, o, e); });
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.out.find("[-2]    Z_{q^2+1}  [reference MISMATCH: Z_{q^2-1}]"), std::string::npos) << r.out;

  std::istringstream adjudicated(R"({"tables": [{"l": 2, "form": "minus", "rows": [
      {"type": "1,-1", "printed": "Z_{q^2-1}"},
      {"type": "-2", "printed": "Z_{q^2-1}", "expected": "Z_{q^2+1}"}]}]})");
  const auto ref2 = load_reference(adjudicated, 2, FormSign::minus);
  r = capture([&](auto& o, auto& e) { return cmd_table(2, FormSign::minus, {3}, false, &ref2, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("[differs from published Z_{q^2-1}]"), std::string::npos);
}

TEST(Commands, Snf) {
  std::istringstream id("2 2\n1 0\n0 1\n");
  auto r = capture([&](auto& o, auto& e) { return cmd_snf(id, false, false, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "# D\n2 2\n1 0\n0 1\n# invariants ()\n");

  std::istringstream m("2 2\n2 1\n0 2\n");
  r = capture([&](auto& o, auto& e) { return cmd_snf(m, true, false, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, 18), "# D\n2 2\n1 0\n0 4\n# ");
  EXPECT_NE(r.out.find("# P\n"), std::string::npos);
  EXPECT_NE(r.out.find("# invariants (4)"), std::string::npos);

  std::istringstream bad("2 2\n1 2 3\n");
  r = capture([&](auto& o, auto& e) { return cmd_snf(bad, false, false, o, e); });
  EXPECT_EQ(r.code, kExitUsage);
}
