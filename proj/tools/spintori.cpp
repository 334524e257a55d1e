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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::vector<spintori::Integer> parse_qs(const std::vector<std::string>& raw) {
  std::vector<spintori::Integer> qs;
  for (const auto& s : raw) qs.push_back(spintori::parse_integer(s));
  return qs;
}

spintori::FormSign form_from(const std::string& s) { return spintori::parse_form(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abelian invariants of maximal tori of finite spin groups"};
  app.require_subcommand(1);

  int l = 0;
  std::string form = "plus";
  std::string type;
  std::vector<std::string> q_raw;
  std::string format = "text";
  int l_max = 0;
  bool witnesses = false;
  std::string reference;
  std::string input;
  unsigned threads = 1;

  auto add_form = [&](CLI::App* cmd) {
    cmd->add_option("--form", form, "plus (untwisted) or minus (twisted)")
        ->check(CLI::IsMember({"plus", "minus", "+", "-"}));
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "list the classes of maximal tori");
  enumerate->add_option("--l", l, "rank")->required();
  add_form(enumerate);

  auto* structure = app.add_subcommand("structure", "cyclic decomposition of one torus");
  structure->add_option("--l", l, "rank")->required();
  add_form(structure);
  structure->add_option("--type", type, "signed cycle type, e.g. 3,-1 or 2,2:+")->required();
  structure->add_option("--q", q_raw, "field sizes, comma separated")->delimiter(',');
  add_format(structure);

  auto* verify = app.add_subcommand("verify", "cross-check the closed form against Smith normal forms");
  verify->add_option("--l-max", l_max, "largest rank")->required();
  verify->add_option("--q", q_raw, "field sizes, comma separated")->delimiter(',')->required();
  verify->add_option("--threads", threads, "worker threads");

  auto* table = app.add_subcommand("table", "all tori of one group");
  table->add_option("--l", l, "rank")->required();
  add_form(table);
  table->add_option("--q", q_raw, "field sizes for the numeric cross-check (default 3,5,7)")->delimiter(',');
  table->add_option("--reference", reference, "reference table JSON to compare against");
  add_format(table);

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("input", input, "matrix file, - for stdin")->required();
  snf->add_flag("--witnesses", witnesses, "also print P and Q");
  add_format(snf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return spintori::kExitUsage;
  }

  try {
    const bool json = format == "json";
    if (*enumerate) return spintori::cmd_enumerate(l, form_from(form), std::cout, std::cerr);
    if (*structure) {
      return spintori::cmd_structure(l, form_from(form), type, parse_qs(q_raw), json, std::cout, std::cerr);
    }
    if (*verify) return spintori::cmd_verify(l_max, parse_qs(q_raw), threads, std::cout, std::cerr);
    if (*table) {
      std::vector<spintori::Integer> qs = q_raw.empty() ? std::vector<spintori::Integer>{3, 5, 7} : parse_qs(q_raw);
      std::optional<spintori::ReferenceTable> ref;
      if (!reference.empty()) {
        std::ifstream in(reference);
        if (!in) {
          std::cerr << "error: cannot open " << reference << '\n';
          return spintori::kExitUsage;
        }
        ref = spintori::load_reference(in, l, form_from(form));
      }
      for (const auto& q : qs) {
        if (q < 2) {
          std::cerr << "error: q must be at least 2\n";
          return spintori::kExitUsage;
        }
      }
      spintori::warn_if_not_prime_power(qs, std::cerr);
      return spintori::cmd_table(l, form_from(form), qs, json, ref ? &*ref : nullptr, std::cout, std::cerr);
    }
    if (*snf) {
      if (input == "-") return spintori::cmd_snf(std::cin, witnesses, json, std::cout, std::cerr);
      std::ifstream in(input);
      if (!in) {
        std::cerr << "error: cannot open " << input << '\n';
        return spintori::kExitUsage;
      }
      return spintori::cmd_snf(in, witnesses, json, std::cout, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return spintori::kExitUsage;
  }
  return spintori::kExitUsage;
}
