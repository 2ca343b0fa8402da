#ifndef DPL_CLI_HPP_
#define DPL_CLI_HPP_

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/semantics/io.hpp"
#include "dpl/syntax.hpp"
#include "dpl/validity.hpp"

namespace dpl {

inline constexpr const char* kVersion = "0.1.0";

namespace cli {

enum ExitCode : int { kPositive = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct Config {
  std::string command;
  std::string formula;
  std::string vocab;
  bool global = false;
  std::optional<std::size_t> max_fresh;
  std::string dot_path, json_path, trace_path, batch_path;
  std::vector<std::string> equations;
  std::size_t jobs = 1;
  bool quiet = false;
  int verbosity = 0;
};

inline nlohmann::json trace_json(const Verdict& v) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& r : v.trace) steps.push_back({{"branch", r.branch}, {"rule", r.rule}, {"premise", r.premise}, {"produced", r.produced}});
  return {{"verdict", to_string(v.kind)},
          {"vocabulary", v.vocabulary.actions()},
          {"fresh_actions", v.fresh_actions},
          {"steps", steps},
          {"stats",
           {{"branches", v.stats.branches},
            {"rule_applications", v.stats.rule_applications},
            {"peak_live_formulas", v.stats.peak_live_formulas}}}};
}

inline std::string trace_text(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  for (const auto& r : trace) {
    out << r.branch << "  " << r.rule << "  " << r.premise << "\n";
    for (std::size_t i = 0; i < r.produced.size(); ++i) {
      out << "    " << (r.produced.size() > 1 ? std::to_string(i) + ": " : "");
      for (std::size_t j = 0; j < r.produced[i].size(); ++j) out << (j ? "; " : "") << r.produced[i][j];
      out << "\n";
    }
  }
  return out.str();
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
      if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot write '" + path + "'");
  f << content;
}

// Outcome of one query: what goes to stdout and the exit code it implies.
struct Outcome {
  int code = kPositive;
  std::string out, err;
};

inline std::string caret(const std::string& text, std::size_t pos) {
  return "  " + text + "\n  " + std::string(std::min(pos, text.size()), ' ') + "^\n";
}

inline Outcome run_query(const Config& c, const std::string& text, bool batch) {
  Outcome o;
  try {
    const bool validity = c.command == "prove";
    std::optional<Vocabulary> vocab;
    if (!c.vocab.empty()) vocab.emplace(split_list(c.vocab));
    Formula f = vocab ? parse_formula(text, *vocab) : parse_formula(text);
    CheckOptions opts{!c.trace_path.empty(), c.max_fresh};
    if (!vocab && !c.global) vocab = dpl::detail::local_default_vocabulary(f);
    Verdict v = c.global ? (validity ? check_global(f, opts) : check_sat_global(f, opts))
                         : (validity ? check_local(f, *vocab, opts) : check_sat(f, *vocab, opts));
    o.code = v.holds() ? kPositive : kNegative;
    o.out = std::string(to_string(v.kind)) + (batch ? "  " + text : "") + "\n";
    if (c.verbosity > 0) {
      o.out += "vocabulary: " + dpl::detail::join(v.vocabulary.actions(), ", ") + "\n";
      o.out += "branches: " + std::to_string(v.stats.branches) + ", rule applications: " +
               std::to_string(v.stats.rule_applications) + "\n";
      if (v.model) o.out += to_json(*v.model).dump(2) + "\n";
    }
    if (!c.trace_path.empty()) {
      if (c.trace_path == "-") o.out += trace_text(v.trace);
      else write_file(c.trace_path, trace_json(v).dump(2) + "\n");
    }
    if (v.model && !c.dot_path.empty()) write_file(c.dot_path, to_dot(*v.model));
    if (v.model && !c.json_path.empty()) write_file(c.json_path, to_json(*v.model).dump(2) + "\n");
  } catch (const ParseError& e) {
    o.code = kUsage;
    o.err = "error: parse error " + std::string(e.what()) + "\n" + caret(text, e.position());
  } catch (const VocabularyError& e) {
    o.code = kUsage;
    o.err = "error: " + std::string(e.what()) + "\n";
  } catch (const ResourceError& e) {
    o.code = kResource;
    o.err = "error: " + std::string(e.what()) + "\n";
  } catch (const PreconditionError& e) {
    o.code = kUsage;
    o.err = "error: " + std::string(e.what()) + "\n";
  }
  return o;
}

inline int run_atoms(const Config& c, std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> actions;
    if (!c.vocab.empty()) {
      actions = split_list(c.vocab);
    } else {
      std::set<std::string> seen;
      collect_actions(parse_action(c.formula), seen);
      for (const auto& e : c.equations) collect_actions(parse_formula(e), seen);
      actions.assign(seen.begin(), seen.end());
    }
    Vocabulary vocab(actions);
    BooleanTheory theory(vocab);
    for (const auto& text : c.equations) {
      Formula e = parse_formula(text, vocab);
      if (!e.is(Formula::Kind::Eq)) throw ParseError("--eq expects an equation 't1 = t2'", 0);
      theory = theory.add_equation(e.left_term(), e.right_term());
    }
    ActionTerm t = parse_action(c.formula, vocab);
    for (AtomId a : atoms_below(theory, t)) out << atom_name(a, vocab) << "\n";
    return kPositive;
  } catch (const ParseError& e) {
    err << "error: parse error " << e.what() << "\n";
    return kUsage;
  } catch (const VocabularyError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  }
}

inline int run_batch(const Config& c, std::ostream& out, std::ostream& err) {
  std::ifstream in(c.batch_path);
  if (!in) {
    err << "error: cannot read '" << c.batch_path << "'\n";
    return kUsage;
  }
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    lines.emplace_back(n, line.substr(b, e - b + 1));
  }
  std::vector<Outcome> results(lines.size());
  const std::size_t jobs = std::max<std::size_t>(1, c.jobs);
  for (std::size_t start = 0; start < lines.size(); start += jobs) {
    std::vector<std::future<Outcome>> running;
    for (std::size_t i = start; i < std::min(lines.size(), start + jobs); ++i)
      running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                   [&c, &lines, i] { return run_query(c, lines[i].second, true); }));
    for (std::size_t i = 0; i < running.size(); ++i) results[start + i] = running[i].get();
  }
  int code = kPositive;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << results[i].out;
    if (!results[i].err.empty()) err << c.batch_path << ":" << lines[i].first << ": " << results[i].err;
    code = std::max(code, results[i].code);
  }
  return code;
}

}  // namespace detail

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tableau prover for a deontic action logic", "dpl"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  auto query = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("formula", c.formula, "formula to check");
    sub->add_flag("--global", c.global, "check over every vocabulary extending the formula's actions");
    sub->add_option("--vocab", c.vocab, "comma-separated list of actions");
    sub->add_option("--max-fresh", c.max_fresh, "largest number of fresh actions global mode may add");
    sub->add_option("--dot", c.dot_path, "write the (counter)model as Graphviz DOT");
    sub->add_option("--json", c.json_path, "write the (counter)model as JSON");
    sub->add_option("--trace", c.trace_path, "write the tableau trace as JSON ('-' prints it as text)");
    sub->add_option("-f,--file", c.batch_path, "read one formula per line ('#' starts a comment)");
    sub->add_option("--jobs", c.jobs, "formulae checked in parallel in batch mode")->check(CLI::PositiveNumber);
    return sub;
  };
  CLI::App* prove = query("prove", "decide validity");
  query("sat", "decide satisfiability");
  CLI::App* atoms = app.add_subcommand("atoms", "list the atoms below an action term");
  atoms->add_option("term", c.formula, "action term")->required();
  atoms->add_option("--vocab", c.vocab, "comma-separated list of actions");
  atoms->add_option("--eq", c.equations, "equation 't1 = t2' assumed to hold (repeatable)");
  app.add_flag("-q,--quiet", c.quiet, "suppress the version banner");
  app.add_flag("-v,--verbose", c.verbosity, "print the vocabulary, statistics and model");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kPositive : kUsage;
  }
  if (!c.quiet) err << "dpl " << kVersion << "\n";

  if (atoms->parsed()) {
    c.command = "atoms";
    return detail::run_atoms(c, out, err);
  }
  c.command = prove->parsed() ? "prove" : "sat";
  if (c.global && !c.vocab.empty()) {
    err << "error: --global and --vocab cannot be combined\n";
    return kUsage;
  }
  if (c.max_fresh && !c.global) {
    err << "error: --max-fresh only applies with --global\n";
    return kUsage;
  }
  if (c.batch_path.empty() == c.formula.empty()) {
    err << "error: give either a formula or -f FILE\n";
    return kUsage;
  }
  if (!c.batch_path.empty()) {
    if (!c.dot_path.empty() || !c.json_path.empty() || (!c.trace_path.empty() && c.trace_path != "-")) {
      err << "error: --dot, --json and --trace FILE need a single formula\n";
      return kUsage;
    }
    return detail::run_batch(c, out, err);
  }
  auto o = detail::run_query(c, c.formula, false);
  out << o.out;
  err << o.err;
  return o.code;
}

}  // namespace cli
}  // namespace dpl

#endif  // DPL_CLI_HPP_
