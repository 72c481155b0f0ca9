// itl: command-line front end for the ITL-NL toolkit.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/io.hpp"
#include "itlnl/normal_forms.hpp"
#include "itlnl/omega.hpp"
#include "itlnl/projection.hpp"
#include "itlnl/semantics.hpp"
#include "itlnl/simplify.hpp"
#include "itlnl/syntax.hpp"

using namespace itl;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string vocab;
  std::size_t max_len = 5;
  std::size_t context = 3;
  int budget = 4;
  int guard = kDefaultNbaGuard;
  std::uint64_t seed = 1;
  bool dot = false;
  bool json = false;
  int jobs = 1;
  bool timings = false;
};

/// Thrown for semantic negatives: printed like a normal result, exit 1.
struct Negative {};

struct Report {
  std::string command;
  std::string status = "ok";
  std::vector<std::string> lines;  // text output
  std::optional<std::string> result;
  std::optional<std::string> witness;
  std::optional<std::string> verification;
  std::optional<bool> exact;
  json sizes = json::object();
};

// Literal text, a file, or stdin for "-".
std::string load(const std::string& arg) {
  if (arg == "-") return read_source(arg);
  std::error_code ec;
  if (std::filesystem::exists(arg, ec) && !std::filesystem::is_directory(arg, ec)) return read_source(arg);
  return arg;
}

class Session {
public:
  explicit Session(const Config& c) : cfg_(c) {}

  Vocabulary vocab_for(const std::vector<std::string>& texts) {
    if (!cfg_.vocab.empty()) return Vocabulary::from_list(cfg_.vocab);
    std::set<std::string> names;
    for (const auto& t : texts) {
      auto fv = free_vars(parse(t));
      names.insert(fv.begin(), fv.end());
    }
    return Vocabulary({names.begin(), names.end()});
  }

  /// Parses formula arguments (after stdin substitution) over one vocabulary.
  std::vector<Formula> formulas(const std::vector<std::string>& args, Vocabulary& vocab) {
    std::vector<std::string> texts;
    for (const auto& a : args) texts.push_back(a == "-" ? read_source(a) : a);
    vocab = vocab_for(texts);
    std::vector<Formula> out;
    for (const auto& t : texts) out.push_back(parse(t, vocab));
    return out;
  }

  const Config& cfg() const { return cfg_; }

private:
  Config cfg_;
};

std::string show(const Formula& f) { return render(f); }

std::string automaton_text(const Automaton& a, const Config& cfg) {
  return cfg.dot ? to_dot(a) : write_automaton(a);
}

// ---------------------------------------------------------------------------
// check-equiv with optional parallel sweep
// ---------------------------------------------------------------------------

std::optional<Window> first_difference(const Word& s, const Formula& a, const Formula& b, const Vocabulary& v,
                                       const EvalOptions& opt) {
  IntervalTable ta = eval_table(s, a, v, opt), tb = eval_table(s, b, v, opt);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j)
      if (ta(i, j) != tb(i, j)) return Window{s, i, j};
  return std::nullopt;
}

EquivResult parallel_equiv(const Formula& a, const Formula& b, const Vocabulary& v, std::size_t max_len,
                           const EvalOptions& opt, int jobs) {
  std::vector<Word> seqs;
  enumerate_sequences(v, max_len, [&](const Word& w) {
    seqs.push_back(w);
    return true;
  });
  std::atomic<std::size_t> best{seqs.size()};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < seqs.size(); k += jobs) {
        if (k >= best.load()) return;
        if (first_difference(seqs[k], a, b, v, opt)) {
          std::size_t cur = best.load();
          while (k < cur && !best.compare_exchange_weak(cur, k)) {
          }
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  EquivResult r;
  r.exact = exact_on_windows(a) && exact_on_windows(b);
  if (best < seqs.size()) {
    r.pass = false;
    r.counterexample = first_difference(seqs[best], a, b, v, opt);
  }
  r.windows = count_models(v, max_len);
  return r;
}

// ---------------------------------------------------------------------------
// Lasso sweeps for omega outputs
// ---------------------------------------------------------------------------

std::vector<Lasso> lassos_up_to(const Vocabulary& v, std::size_t bound) {
  std::vector<Word> words{Word{}};
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<Word> next;
    for (const auto& w : words)
      if (w.size() == len - 1)
        for (int c = 0; c < v.letters(); ++c) {
          Word x = w;
          x.push_back(static_cast<Letter>(c));
          next.push_back(x);
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  std::vector<Lasso> out;
  for (const auto& u : words)
    for (const auto& l : words)
      if (!l.empty()) out.push_back({u, l});
  return out;
}

std::string sweep_note(std::size_t bound) {
  return "bounded (lassos |u|,|v| <= " + std::to_string(bound) + ")";
}

Dfa as_dfa(const Automaton& a) {
  if (const auto* d = std::get_if<Dfa>(&a)) return minimize(*d);
  if (const auto* n = std::get_if<Nfa>(&a)) return determinize_minimize(*n);
  throw FormatError(std::string("expected a dfa or nfa, got ") + automaton_kind(a));
}

Nba as_nba(const Automaton& a) {
  if (const auto* n = std::get_if<Nba>(&a)) return *n;
  if (const auto* d = std::get_if<Dpa>(&a)) return dpa_to_nba(*d);
  throw FormatError(std::string("expected an nba or dpa, got ") + automaton_kind(a));
}

std::set<std::string> split_names(const std::string& s) {
  Vocabulary v = Vocabulary::from_list(s);
  return {v.names().begin(), v.names().end()};
}

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Nonstrict: return "nonstrict";
    case Flavor::Strict: return "strict";
    case Flavor::Mirror: return "mirror";
  }
  return "?";
}

void print_decomposition(Report& r, const FullSystemDecomposition& d, const Vocabulary& v) {
  const char* glue = d.flavor == Flavor::Strict ? " ; skip ; " : " ; ";
  if (d.flavor == Flavor::Strict) r.lines.push_back("empty part: " + show(tidy(d.empty_part, v)));
  for (const auto& [l, rr] : d.pairs) {
    Formula a = tidy(l, v), b = tidy(rr, v);
    r.lines.push_back(d.flavor == Flavor::Mirror ? "(" + show(b) + ")" + glue + "(" + show(a) + ")"
                                                 : "(" + show(a) + ")" + glue + "(" + show(b) + ")");
  }
  r.sizes["pairs"] = d.pairs.size();
  r.result = show(d.disjunctive_form());
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void emit(const Report& r, const Config& cfg, double ms) {
  if (cfg.json) {
    json j;
    j["command"] = r.command;
    j["status"] = r.status;
    if (r.result) j["result"] = *r.result;
    if (r.witness) j["witness"] = *r.witness;
    if (r.exact) j["exact"] = *r.exact;
    if (r.verification) j["verification"] = *r.verification;
    j["sizes"] = r.sizes;
    if (cfg.timings) j["timings"] = {{"total_ms", ms}};
    std::cout << j.dump() << "\n";
    return;
  }
  for (const auto& l : r.lines) std::cout << l << "\n";
  if (r.witness) std::cout << *r.witness << "\n";
  if (r.verification) std::cout << "verification: " << *r.verification << "\n";
  if (cfg.timings) std::cout << "time: " << ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"itl: interval temporal logic with neighbourhood modalities"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--vocab", cfg.vocab, "Variables, e.g. \"p,q\" (default: those of the inputs)");
  app.add_option("--max-len", cfg.max_len, "Longest window for bounded checks")->check(CLI::PositiveNumber);
  app.add_option("--context", cfg.context, "Lasso stem/loop bound, extra sampled window length")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "Inserted states per gap for inverse projection")
      ->check(CLI::PositiveNumber);
  app.add_option("--guard", cfg.guard, "Largest NBA handed to determinization")->check(CLI::Range(1, 32));
  app.add_option("--seed", cfg.seed, "Seed for sampled windows");
  app.add_flag("--dot", cfg.dot, "Automata as Graphviz DOT");
  app.add_flag("--json", cfg.json, "One JSON object per result");
  app.add_option("--jobs", cfg.jobs, "Threads for window sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--timings", cfg.timings, "Report wall-clock time");

  Report rep;
  std::function<void(Session&, Report&)> action;
  auto sub = [&](const char* name, const std::string& help) { return app.add_subcommand(name, help); };

  // Shared positional holders.
  std::string f1, f2, file, w_text = "", hide, var, query = "sat", flavor = "nonstrict";
  bool past = false;
  std::size_t samples = 0;

  // parse ------------------------------------------------------------------
  auto* s_parse = sub("parse", "Parse and print a formula");
  s_parse->add_option("formula", f1)->required();
  s_parse->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      r.result = show(a);
      r.lines = {*r.result};
      std::string names;
      for (const auto& n : free_vars(a)) names += (names.empty() ? "" : " ") + n;
      r.lines.push_back("vars: " + names);
      r.sizes["nodes"] = a.size();
    };
  });

  // eval -------------------------------------------------------------------
  auto* s_eval = sub("eval", "Evaluate a formula on a window");
  s_eval->add_option("formula", f1)->required();
  s_eval->add_option("window", file, "Window text or file")->required();
  s_eval->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      Window w = parse_window(load(file), v);
      EvalOptions opt;
      opt.budget = s.cfg().budget;
      EvalResult e = eval_window(w, a, v, opt);
      r.result = e.truth ? "true" : "false";
      r.exact = e.exact;
      r.lines = {*r.result};
      r.verification = e.exact ? "exact (independent of context)" : "bounded (window context only)";
    };
  });

  // eval-lasso ------------------------------------------------------------
  auto* s_evl = sub("eval-lasso", "Evaluate a future formula on an ultimately periodic word");
  s_evl->add_option("formula", f1)->required();
  s_evl->add_option("lasso", file, "Lasso text or file")->required();
  s_evl->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      Lasso l = parse_lasso(load(file), v);
      r.result = eval_lasso(l, a, v) ? "true" : "false";
      r.exact = true;
      r.lines = {*r.result};
      r.verification = "exact";
    };
  });

  // compile ---------------------------------------------------------------
  auto* s_comp = sub("compile", "Minimal DFA of an introspective formula");
  s_comp->add_option("formula", f1)->required();
  s_comp->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      Dfa d = itl_to_dfa(a, v);
      r.result = automaton_text(d, s.cfg());
      r.lines = {*r.result};
      r.lines.back().pop_back();
      r.sizes["states"] = d.num_states;
      r.exact = true;
    };
  });

  // to-formula ------------------------------------------------------------
  auto* s_tof = sub("to-formula", "Formula for the language of a DFA or NFA");
  s_tof->add_option("automaton", file)->required();
  s_tof->final_callback([&] {
    action = [&](Session& s, Report& r) {
      std::optional<Vocabulary> given;
      if (!s.cfg().vocab.empty()) given = Vocabulary::from_list(s.cfg().vocab);
      Automaton a = parse_automaton(load(file), given);
      Dfa d = as_dfa(a);
      Formula f = tidy(dfa_to_formula(d), d.vocab);
      bool ok = !dfa_equivalent(itl_to_dfa(f, d.vocab), d);
      if (!ok) throw VerificationFailure("to-formula round trip");
      r.result = show(f);
      r.lines = {*r.result};
      r.exact = true;
      r.verification = "exact (recompiled and compared)";
      r.sizes["states"] = d.num_states;
      r.sizes["nodes"] = f.size();
    };
  });

  // gnf -------------------------------------------------------------------
  auto* s_gnf = sub("gnf", "Guarded normal form");
  s_gnf->add_option("formula", f1)->required();
  s_gnf->add_flag("--past", past, "Past-guarded form");
  s_gnf->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      GuardedNormalForm g = gnf(a, v, past ? Direction::Past : Direction::Future);
      r.lines.push_back("empty part: " + show(tidy(g.empty_part, v)));
      for (const auto& [guard, cont] : g.branches) {
        std::string c = show(tidy(cont, v));
        r.lines.push_back(past ? "prev (" + c + ") & fin (" + show(guard) + ")"
                               : show(guard) + " & next (" + c + ")");
      }
      r.result = show(g.to_formula());
      r.sizes["branches"] = g.branches.size();
      r.exact = true;
      r.verification = "exact (dfa equivalence)";
    };
  });

  // decompose -------------------------------------------------------------
  auto* s_dec = sub("decompose", "Full-system chop decomposition");
  s_dec->add_option("formula", f1)->required();
  s_dec->add_option("--flavor", flavor, "nonstrict, strict or mirror")
      ->check(CLI::IsMember({"nonstrict", "strict", "mirror"}));
  s_dec->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      Flavor fl = flavor == "strict" ? Flavor::Strict : flavor == "mirror" ? Flavor::Mirror : Flavor::Nonstrict;
      FullSystemDecomposition d = full_system_chop(a, v, fl);
      if (auto bad = check_decomposition(a, d, v)) throw VerificationFailure(*bad);
      r.lines.push_back("flavor: " + flavor_name(fl));
      print_decomposition(r, d, v);
      r.exact = true;
      r.verification = "exact (both forms and full system)";
    };
  });

  // strictify -------------------------------------------------------------
  auto* s_str = sub("strictify", "Strict decomposition by the syntactic route");
  s_str->add_option("formula", f1)->required();
  s_str->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      FullSystemDecomposition d = strictify_syntactic(a, full_system_chop(a, v, Flavor::Nonstrict), v);
      if (auto bad = check_decomposition(a, d, v)) throw VerificationFailure(*bad);
      print_decomposition(r, d, v);
      r.exact = true;
      r.verification = "exact (both forms and full system)";
    };
  });

  // wblocks ---------------------------------------------------------------
  auto* s_wb = sub("wblocks", "w-closure equation system");
  s_wb->add_option("formula", f1)->required();
  s_wb->add_option("--w", w_text, "State formula w")->required();
  s_wb->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      auto fs = s.formulas({f1, w_text}, v);
      WBlockSystem sys = w_closure_system(fs[0], fs[1], v);
      for (std::size_t k = 0; k < sys.equations.size(); ++k) {
        std::string tag = static_cast<int>(k) == sys.root_pos   ? " (root, w)"
                          : static_cast<int>(k) == sys.root_neg ? " (root, ~w)"
                                                                : "";
        r.lines.push_back("X" + std::to_string(k) + tag + " := " + show(tidy(sys.unknowns[k].head(), v)));
      }
      for (std::size_t k = 0; k < sys.equations.size(); ++k) {
        const WEquation& e = sys.equations[k];
        std::string line = "X" + std::to_string(k) + " = " + show(tidy(e.homogeneous, v));
        for (const auto& t : e.transitions)
          line += " | (" + show(tidy(t.block, v)) + ") ; skip ; X" + std::to_string(t.target);
        r.lines.push_back(line);
      }
      r.sizes["unknowns"] = sys.unknowns.size();
      r.sizes["dfa_states"] = sys.source.num_states;
      r.exact = true;
    };
  });

  // wnf -------------------------------------------------------------------
  auto* s_wnf = sub("wnf", "w-block normal form");
  s_wnf->add_option("formula", f1)->required();
  s_wnf->add_option("--w", w_text, "State formula w")->required();
  s_wnf->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      auto fs = s.formulas({f1, w_text}, v);
      Formula nf = w_block_normal_form(fs[0], fs[1], v);
      WGrammar g{fs[1], fm::neg(fs[1])};
      if (!g.conforms(nf)) throw VerificationFailure("w-block grammar");
      r.result = show(nf);
      r.lines = {*r.result};
      r.sizes["nodes"] = nf.size();
      r.sizes["blocks"] = w_blocks(nf, g).size();
      r.exact = true;
      r.verification = "exact (dfa equivalence, grammar checked)";
    };
  });

  // projinv ---------------------------------------------------------------
  auto* s_pi = sub("projinv", "Eliminate inverse projection w projinv A");
  s_pi->add_option("formula", f1)->required();
  s_pi->add_option("--w", w_text, "State formula w")->required();
  s_pi->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      auto fs = s.formulas({f1, w_text}, v);
      Formula out = pi_inverse_eliminate(fs[1], fs[0], v);
      r.result = show(out);
      r.lines = {*r.result};
      r.sizes["nodes"] = out.size();
      r.exact = true;
      r.verification = "exact (against the automaton construction)";
    };
  });

  // qelim / sc ------------------------------------------------------------
  auto eliminate = [&](Session& s, Report& r) {
    Vocabulary v;
    Formula a = s.formulas({f1}, v)[0];
    std::set<std::string> h = split_names(hide);
    Formula out = strongest_consequence(a, h, s.cfg().guard);
    r.result = show(out);
    r.lines = {*r.result};
    r.sizes["nodes"] = out.size();
    if (is_local(a)) {
      Formula q = a;
      for (const auto& p : h)
        if (v.contains(p)) q = fm::exists(p, q);
      if (dfa_equivalent(itl_to_dfa(q, v), itl_to_dfa(out, v))) throw VerificationFailure("elimination");
      r.exact = true;
      r.verification = "exact (relabel closure)";
    } else {
      Decision d = decide_separated(Query::Valid, fm::imp(a, out), v, s.cfg().guard);
      if (!d.value) throw VerificationFailure("A does not imply the eliminated formula");
      r.exact = false;
      r.verification = "decided (A -> result valid); minimality by construction";
    }
  };
  for (const char* name : {"qelim", "sc"}) {
    auto* sq = sub(name, std::string(name) == "qelim" ? "Eliminate exists over hidden variables"
                                                     : "Strongest consequence without hidden variables");
    sq->add_option("formula", f1)->required();
    sq->add_option("--hide", hide, "Variables to eliminate")->required();
    sq->final_callback([&] { action = eliminate; });
  }

  // interpolate -----------------------------------------------------------
  auto* s_int = sub("interpolate", "Interpolant for a valid implication A -> B");
  s_int->add_option("a", f1)->required();
  s_int->add_option("b", f2)->required();
  s_int->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      auto fs = s.formulas({f1, f2}, v);
      try {
        Interpolant c = interpolate(fs[0], fs[1], s.cfg().guard);
        r.result = show(c.formula);
        r.lines = {*r.result};
        r.verification = std::string("premise ") + check_name(c.premise_check) + ", conclusion " +
                         check_name(c.conclusion_check) + (c.unverified() ? " (unverified)" : "");
        r.exact = !c.unverified();
      } catch (const ImplicationInvalid& e) {
        r.status = "invalid";
        r.lines = {"implication invalid"};
        r.witness = e.report.counterexample;
        throw Negative{};
      }
    };
  });

  // beth ------------------------------------------------------------------
  auto* s_beth = sub("beth", "Explicit definition of an implicitly defined variable");
  s_beth->add_option("formula", f1)->required();
  s_beth->add_option("--var", var, "The defined variable")->required();
  s_beth->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      try {
        Definition d = beth_define(a, var, s.cfg().max_len, s.cfg().guard);
        r.result = show(d.formula);
        r.lines = {var + " <-> " + *r.result};
        r.verification = std::string("implicit ") + check_name(d.implicit_check) + " (max-len " +
                         std::to_string(s.cfg().max_len) + "), explicit " + check_name(d.explicit_check);
        r.exact = false;
      } catch (const NotImplicitlyDefined& e) {
        r.status = "not-defined";
        r.lines = {"not implicitly defined"};
        std::string msg = e.what();
        r.witness = msg.substr(msg.find(": ") + 2);
        throw Negative{};
      }
    };
  });

  // reactivity-nf / fin ---------------------------------------------------
  auto* s_rnf = sub("reactivity-nf", "Reactivity normal form of an NBA or DPA");
  s_rnf->add_option("automaton", file)->required();
  s_rnf->final_callback([&] {
    action = [&](Session& s, Report& r) {
      std::optional<Vocabulary> given;
      if (!s.cfg().vocab.empty()) given = Vocabulary::from_list(s.cfg().vocab);
      Nba n = as_nba(parse_automaton(load(file), given));
      ReactivityForm f = reactivity_normal_form(n, s.cfg().guard);
      Formula t = tidy(f.formula, n.vocab);
      LassoEvaluator ev(t, n.vocab);
      for (const auto& l : lassos_up_to(n.vocab, s.cfg().context))
        if (ev(l) != nba_accepts(n, l)) throw VerificationFailure("reactivity form disagrees on a lasso");
      for (std::size_t k = 0; k < f.pairs.size(); ++k) {
        r.lines.push_back("# pair " + std::to_string(k) + ": M' (finitely often)");
        r.lines.push_back(automaton_text(f.pairs[k].first, s.cfg()));
        r.lines.push_back("# pair " + std::to_string(k) + ": M'' (infinitely often excuses M')");
        r.lines.push_back(automaton_text(f.pairs[k].second, s.cfg()));
      }
      r.result = show(t);
      r.lines.push_back("formula: " + *r.result);
      r.sizes["pairs"] = f.pairs.size();
      r.sizes["nodes"] = t.size();
      r.exact = false;
      r.verification = sweep_note(s.cfg().context);
    };
  });

  auto* s_fin = sub("fin", "Fin(X) formula for a DFA X");
  s_fin->add_option("automaton", file)->required();
  s_fin->final_callback([&] {
    action = [&](Session& s, Report& r) {
      std::optional<Vocabulary> given;
      if (!s.cfg().vocab.empty()) given = Vocabulary::from_list(s.cfg().vocab);
      Dfa x = as_dfa(parse_automaton(load(file), given));
      Formula f = tidy(fin_formula(x), x.vocab);
      LassoEvaluator ev(f, x.vocab);
      for (const auto& l : lassos_up_to(x.vocab, s.cfg().context))
        if (ev(l) != finitely_many_prefixes(x, l)) throw VerificationFailure("Fin disagrees on a lasso");
      r.result = show(f);
      r.lines = {*r.result};
      r.sizes["nodes"] = f.size();
      r.exact = false;
      r.verification = sweep_note(s.cfg().context);
    };
  });

  // check-equiv -----------------------------------------------------------
  auto* s_eq = sub("check-equiv", "Bounded equivalence check over all windows");
  s_eq->add_option("a", f1)->required();
  s_eq->add_option("b", f2)->required();
  s_eq->add_option("--samples", samples, "Extra random windows longer than --max-len");
  s_eq->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      auto fs = s.formulas({f1, f2}, v);
      EvalOptions opt;
      opt.budget = s.cfg().budget;
      const std::size_t L = s.cfg().max_len;
      EquivResult e = s.cfg().jobs > 1 ? parallel_equiv(fs[0], fs[1], v, L, opt, s.cfg().jobs)
                                       : bounded_equiv_check(fs[0], fs[1], v, L, opt);
      std::optional<Window> cex = e.counterexample;
      std::size_t sampled = 0;
      if (e.pass && samples > 0) {
        std::mt19937_64 rng(s.cfg().seed);
        std::uniform_int_distribution<std::size_t> len(L + 1, L + s.cfg().context);
        std::uniform_int_distribution<int> letter(0, v.letters() - 1);
        for (; sampled < samples && !cex; ++sampled) {
          Word w(len(rng));
          for (auto& c : w) c = static_cast<Letter>(letter(rng));
          cex = first_difference(w, fs[0], fs[1], v, opt);
        }
      }
      r.sizes["windows"] = e.windows;
      r.sizes["sampled"] = sampled;
      r.exact = e.exact;
      if (!cex) {
        r.status = "pass";
        r.lines = {"pass (exhaustive, " + std::to_string(L) + ")"};
        if (sampled) r.lines.push_back("sampled " + std::to_string(sampled) + " longer windows");
        return;
      }
      r.status = "fail";
      r.lines = {"fail"};
      r.witness = format_window(*cex, v);
      throw Negative{};
    };
  });

  // decide ----------------------------------------------------------------
  auto* s_dcd = sub("decide", "Satisfiability or validity on the separated fragment");
  s_dcd->add_option("formula", f1)->required();
  s_dcd->add_option("--query", query, "sat or valid")->check(CLI::IsMember({"sat", "valid"}));
  s_dcd->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      const bool sat = query == "sat";
      Decision d = decide_separated(sat ? Query::Sat : Query::Valid, a, v, s.cfg().guard);
      r.exact = true;
      r.verification = "decided";
      r.result = sat ? (d.value ? "sat" : "unsat") : (d.value ? "valid" : "invalid");
      r.lines = {*r.result};
      r.status = *r.result;
      if (d.witness) r.witness = (sat ? "model: " : "countermodel: ") + format_bilasso(*d.witness, v);
      if (!d.value) throw Negative{};
    };
  });

  // classify --------------------------------------------------------------
  auto* s_cls = sub("classify", "Syntactic class of a formula");
  s_cls->add_option("formula", f1)->required();
  s_cls->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      std::string c;
      if (has_input_only(a)) c = "input-only (exists, proj or projinv)";
      else if (is_state(a)) c = "state";
      else if (is_introspective(a)) c = "introspective";
      else if (is_future(a)) c = "future";
      else if (is_future(time_reverse(a))) c = "past";
      if (c.empty() || c == "future" || c == "past") {
        try {
          SeparatedDnf d = separated_dnf(a);
          c += std::string(c.empty() ? "" : ", ") + "separated (" + std::to_string(d.disjuncts.size()) +
               (d.disjuncts.size() == 1 ? " disjunct)" : " disjuncts)");
          r.sizes["disjuncts"] = d.disjuncts.size();
        } catch (const NotSeparated& e) {
          if (c.empty()) c = e.what();
        }
      }
      r.result = c;
      r.lines = {c};
    };
  });

  // reverse ---------------------------------------------------------------
  auto* s_rev = sub("reverse", "Time reversal");
  s_rev->add_option("formula", f1)->required();
  s_rev->final_callback([&] {
    action = [&](Session& s, Report& r) {
      Vocabulary v;
      Formula a = s.formulas({f1}, v)[0];
      r.result = show(time_reverse(a));
      r.lines = {*r.result};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  rep.command = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  Session session(cfg);
  int code = 0;
  try {
    action(session, rep);
  } catch (const Negative&) {
    code = 1;
  } catch (const VerificationFailure& e) {
    std::cerr << "internal verification failure (a bug): " << e.what() << "\n";
    return 2;
  } catch (const itl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(rep, cfg, ms);
  return code;
}
