#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfold/agraph.hpp"
#include "gfold/bruteforce.hpp"
#include "gfold/chain.hpp"
#include "gfold/errors.hpp"
#include "gfold/pcm.hpp"

namespace {

std::vector<std::string> read_subgroup_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw gfold::ParseError("cannot open subgroup file '" + path + "'");
  std::vector<std::string> gens;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string tok, joined;
    while (is >> tok) joined += (joined.empty() ? "" : " ") + tok;
    if (!joined.empty()) gens.push_back(joined);
  }
  return gens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgroup folding and power coset membership in iterated "
               "centralizer extensions of free groups"};
  app.require_subcommand(1);

  std::string chain_file, subgroup_file, x_text, g_text = "", w_text;
  bool witness = false, trace = false;
  long long budget = 0;

  auto add_common = [&](CLI::App* sub, bool need_subgroup) {
    sub->add_option("--chain", chain_file, "chain file")->required();
    if (need_subgroup)
      sub->add_option("--subgroup", subgroup_file, "subgroup generators file")
          ->required();
    sub->add_option("--budget", budget, "move/node budget override");
  };

  CLI::App* present = app.add_subcommand(
      "present", "presentation of the subgroup generated by the file");
  add_common(present, true);

  CLI::App* pcm_cmd = app.add_subcommand(
      "pcm", "decide whether g^m lies in x<subgroup> for some m != 0");
  add_common(pcm_cmd, true);
  pcm_cmd->add_option("--x", x_text, "coset representative word")->required();
  pcm_cmd->add_option("--g", g_text, "power base word")->required();
  pcm_cmd->add_flag("--witness", witness, "print the witness reading");
  pcm_cmd->add_flag("--trace", trace, "print search statistics");

  CLI::App* wp = app.add_subcommand("wp", "word problem at the top level");
  add_common(wp, false);
  wp->add_option("--w", w_text, "word to test")->required();

  CLI::App* benign = app.add_subcommand(
      "benign", "report the effectivity hypotheses of the chain");
  add_common(benign, false);

  CLI11_PARSE(app, argc, argv);

  try {
    gfold::ExtensionChain chain = gfold::ExtensionChain::from_file(chain_file);
    if (budget > 0) {
      chain.fold_budget = budget;
      chain.node_budget = budget;
    }
    int level = chain.levels();

    if (present->parsed()) {
      auto gens = read_subgroup_file(subgroup_file);
      gfold::Presentation pres = chain.subgroup_presentation(level, gens);
      std::cout << pres.str();
      return 0;
    }
    if (pcm_cmd->parsed()) {
      if (level == 0) throw gfold::ParseError("pcm needs at least one level");
      auto gens = read_subgroup_file(subgroup_file);
      std::vector<gfold::APath> hp;
      for (auto& g : gens)
        hp.push_back(chain.parse_element(level, g).path());
      gfold::GroupElem xe = chain.parse_element(level, x_text);
      gfold::GroupElem ge = chain.parse_element(level, g_text);
      if (chain.word_problem(level, ge)) {
        std::cerr << "g must be nontrivial\n";
        return 4;
      }
      std::vector<std::string> trace_lines;
      auto res = gfold::pcm(chain, level - 1, 0, hp, xe.path(), ge.path(),
                            witness, trace ? &trace_lines : nullptr);
      if (res) {
        std::cout << "YES m=" << res->m << "\n";
        if (witness) std::cout << "witness: " << res->witness << "\n";
      } else {
        std::cout << "NO\n";
      }
      for (auto& l : trace_lines) std::cout << "trace: " << l << "\n";
      return 0;
    }
    if (wp->parsed()) {
      bool trivial = chain.word_problem(level, w_text);
      std::cout << (trivial ? "TRIVIAL" : "NONTRIVIAL") << "\n";
      return 0;
    }
    if (benign->parsed()) {
      for (auto& line : gfold::benign_check(chain)) std::cout << line << "\n";
      return 0;
    }
  } catch (const gfold::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const gfold::GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 3;
  } catch (const gfold::PreconditionError& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
