/**
 * @file parc_main.cpp
 * Batch CLI: proves a TPTP CNF problem and reports an SZS status, plus
 * debug subcommands for formula simplification and ground entailment.
 *
 * Exit codes: 0 decided status, 1 resource-out or gave-up, 2 usage
 * error, 3 parse error.
 */

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parc/parc.hpp"

namespace {

std::string readInput(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> splitList(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void printSubstitution(std::ostream& out, const parc::Substitution& s,
                       const parc::Signature& sig) {
  std::vector<std::pair<parc::VarId, parc::TermRef>> bs(s.bindings().begin(),
                                                        s.bindings().end());
  std::sort(bs.begin(), bs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out << '{';
  bool first = true;
  for (const auto& [v, t] : bs) {
    if (!first) out << ", ";
    first = false;
    out << 'X' << v << "->";
    parc::printTerm(out, t, sig);
  }
  out << '}';
}

void printDerivationLine(std::ostream& out, const parc::DerivationStep& step,
                         const parc::SaturationResult& res, const parc::Signature& sig) {
  out << step.clauseId << ". ";
  parc::printClause(out, step.clause, sig);
  if (const parc::FinalClause* fc = res.find(step.clauseId)) {
    if (fc->formula && !fc->formula->isBot()) {
      out << " <";
      parc::printFormula(out, fc->formula, sig);
      out << '>';
    }
  }
  out << " [" << parc::toString(step.rule);
  for (auto p : step.premises) out << ", " << p;
  if (!step.unifier.empty()) {
    out << ", ";
    printSubstitution(out, step.unifier, sig);
  }
  out << "]\n";
}

int runProve(const std::string& file, parc::ProverOptions opts,
             const std::vector<std::string>& precedence, bool showStats, bool showProof) {
  parc::ProblemFile pf;
  try {
    pf = parc::parseProblem(readInput(file), file);
  } catch (const parc::ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (!precedence.empty()) {
    try {
      parc::applyPrecedence(pf.sig, precedence);
    } catch (const parc::StructuralError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  parc::SaturationResult res = parc::saturate(pf.clauseList(), pf.sig, opts);
  std::cout << "% SZS status " << parc::toString(res.szs) << " for " << file << "\n";
  if (showProof && res.outcome == parc::Outcome::Refutation) {
    std::cout << "% SZS output start Refutation\n";
    for (const auto& step : res.proof) printDerivationLine(std::cout, step, res, pf.sig);
    std::cout << "% SZS output end Refutation\n";
  }
  if (showStats) {
    for (const auto& [k, v] : res.stats.keyValues()) std::cout << k << ": " << v << "\n";
  }
  return (res.szs == parc::SZS::Unsatisfiable || res.szs == parc::SZS::Satisfiable) ? 0 : 1;
}

int runConstraintSimplify(const std::string& text, const std::vector<std::string>& precedence) {
  parc::Signature sig;
  parc::FormulaRef f;
  try {
    f = parc::parseFormula(sig, text);
  } catch (const parc::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  if (!sig.hasConstant()) sig.add("a0", 0);  // the algebra needs a constant
  if (!precedence.empty()) {
    try {
      parc::applyPrecedence(sig, precedence);
    } catch (const parc::StructuralError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  parc::KBOParams params{&sig};
  parc::FormulaRef simplified = parc::simplify(f, params);
  parc::printFormula(std::cout, simplified, sig);
  std::cout << "\n";
  return 0;
}

int runOracleEntails(const std::string& file) {
  parc::ProblemFile pf;
  try {
    pf = parc::parseProblem(readInput(file), file);
  } catch (const parc::ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (pf.clauses.size() < 2) {
    std::cerr << "entails check needs premises plus one goal clause\n";
    return 2;
  }
  std::vector<parc::Clause> premises;
  for (std::size_t i = 0; i + 1 < pf.clauses.size(); ++i) {
    premises.push_back(pf.clauses[i].clause);
  }
  const parc::Clause& goal = pf.clauses.back().clause;
  for (const auto& c : premises) {
    if (!c.ground()) {
      std::cerr << "entails check needs ground clauses\n";
      return 2;
    }
  }
  if (!goal.ground()) {
    std::cerr << "entails check needs a ground goal\n";
    return 2;
  }
  bool holds = parc::oracle::clauseEntails(premises, goal);
  std::cout << "entails: " << (holds ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parc: saturation prover with partial-redundancy constraints"};
  app.require_subcommand(0, 1);

  std::string file;
  bool crc = false, croc = false, crs = false;
  double timeLimit = 0;
  std::uint64_t clauseLimit = 0;
  std::string selection = "maximal";
  std::string precedenceCsv;
  bool showStats = false, showProof = false;

  app.add_option("file", file, "TPTP CNF problem file, or '-' for standard input");
  app.add_flag("--crc", crc, "check all side conditions; attach equality constraints");
  app.add_flag("--croc", croc, "also attach non-tautological ordering constraints");
  app.add_flag("--crs", crs, "also retire clauses by ordering case analysis");
  app.add_option("--time-limit", timeLimit, "time limit in seconds (0 = none)");
  app.add_option("--clause-limit", clauseLimit, "clause count limit (0 = none)");
  app.add_option("--selection", selection, "literal selection: maximal or neg")
      ->check(CLI::IsMember({"maximal", "neg"}));
  app.add_option("--precedence", precedenceCsv,
                 "descending symbol precedence, comma separated");
  app.add_flag("--stats", showStats, "print statistics counters");
  app.add_flag("--proof", showProof, "print the refutation");

  auto* constraint = app.add_subcommand("constraint", "redundancy formula utilities");
  std::string formulaText;
  auto* simplifyCmd = constraint->add_subcommand("simplify", "simplify a formula");
  simplifyCmd->add_option("formula", formulaText, "prefix syntax formula")->required();

  auto* oracleCmd = app.add_subcommand("oracle", "brute-force reference checks");
  std::string oracleFile;
  auto* entailsCmd = oracleCmd->add_subcommand("entails", "ground entailment check");
  entailsCmd->add_option("file", oracleFile, "premises then one goal clause")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (constraint->parsed()) {
      if (!simplifyCmd->parsed()) {
        std::cerr << "usage: parc constraint simplify <formula>\n";
        return 2;
      }
      return runConstraintSimplify(formulaText, splitList(precedenceCsv));
    }
    if (oracleCmd->parsed()) {
      if (!entailsCmd->parsed()) {
        std::cerr << "usage: parc oracle entails <file>\n";
        return 2;
      }
      return runOracleEntails(oracleFile);
    }
    if (file.empty()) {
      std::cerr << "usage: parc <file> [options]\n";
      return 2;
    }
    parc::ProverOptions opts;
    opts.crc = crc;
    opts.croc = croc;
    opts.crs = crs;
    opts.timeLimitSeconds = timeLimit;
    opts.clauseLimit = clauseLimit;
    opts.selection =
        selection == "neg" ? parc::SelectionMode::Negative : parc::SelectionMode::Maximal;
    try {
      opts.validate();
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    return runProve(file, opts, splitList(precedenceCsv), showStats, showProof);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
