// Command line front end: enumeration, characters, embeddings, orbits,
// decomposition and the verification suites, with JSON/DOT/table output.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget
// exceeded, 4 internal cross-check disagreement.

#include <CLI11.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pathcrystal/pathcrystal.hpp"

namespace pc = pathcrystal;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCrossCheck = 4;

pc::Word parse_word(const std::string& s) {
  pc::Word w;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      pc::require(!cur.empty(), "empty letter in word: " + s);
      w.push_back(std::stoi(cur));
      cur.clear();
    } else {
      pc::require(std::isdigit(static_cast<unsigned char>(ch)), "bad letter in word: " + s);
      cur.push_back(ch);
    }
  }
  pc::require(!w.empty(), "word must have at least one letter");
  return w;
}

std::vector<long> parse_tuple(const std::string& s) {
  std::vector<long> t;
  for (int c : parse_word(s)) t.push_back(c);
  return t;
}

std::pair<long, long> parse_window(const std::string& s) {
  const auto comma = s.find(',');
  pc::require(comma != std::string::npos, "window needs two comma-separated integers: " + s);
  try {
    return {std::stol(s.substr(0, comma)), std::stol(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad window: " + s);
  }
}

// Weight grammar: terms joined by + or -, each term an optional integer
// coefficient followed by L<i> (a fundamental weight) or d (delta).
// Example: "L0+2L1-1d" is Lambda_0 + 2 Lambda_1 - delta.
pc::Weight parse_lambda(const std::string& s, int ell) {
  const pc::CartanData cd(ell);
  pc::Weight out(ell);
  std::size_t pos = 0;
  pc::require(!s.empty(), "empty weight spec");
  while (pos < s.size()) {
    long sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    long coef = 1;
    bool have_digits = false;
    std::string digits;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits.push_back(s[pos++]);
      have_digits = true;
    }
    if (have_digits) coef = std::stol(digits);
    pc::require(pos < s.size(), "weight spec ends without L<i> or d: " + s);
    if (s[pos] == 'L') {
      ++pos;
      std::string idx;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        idx.push_back(s[pos++]);
      pc::require(!idx.empty(), "L must be followed by an index: " + s);
      const int i = std::stoi(idx);
      pc::require(i >= 0 && i <= ell, "fundamental weight index out of range: " + s);
      out.lam[i] += sign * coef;
    } else if (s[pos] == 'd') {
      ++pos;
      out.dlt += sign * coef;
    } else {
      pc::require(false, std::string("unexpected character '") + s[pos] + "' in weight spec");
    }
  }
  return out;
}

void emit(const std::string& text) { std::cout << text; }

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

struct WordsArgs {
  int ell = 1;
  long m = 1;
  std::string tuple;
  long residue = -1;
  bool has_residue = false;
  std::string format = "table";
};

int cmd_words(const WordsArgs& a) {
  const pc::CartanData cd(a.ell);
  pc::WordFilter filter;
  if (!a.tuple.empty()) {
    auto t = parse_tuple(a.tuple);
    pc::require(static_cast<int>(t.size()) == a.ell + 1, "tuple must have l+1 entries");
    long sum = 0;
    for (long k : t) sum += k;
    pc::require(sum == a.m, "tuple must sum to m");
    filter.tuple = std::move(t);
  }
  if (a.has_residue) {
    pc::require(a.residue >= 0 && a.residue < a.m, "residue out of range");
    filter.residue = a.residue;
  }
  const auto words = pc::enumerate_words(cd, a.m, filter);

  if (a.format == "json") {
    json rows = json::array();
    for (const auto& w : words) {
      const auto st = pc::word_stats(w);
      json row = pc::stats_to_json(st);
      row["word"] = w;
      row["component"] = pc::component_of({w, 0});
      rows.push_back(row);
    }
    emit_json(rows);
  } else {
    std::printf("word\tdesc\tN\tMaj\tcomponent\n");
    for (const auto& w : words) {
      const auto st = pc::word_stats(w);
      std::string ws, ds;
      for (std::size_t j = 0; j < w.size(); ++j) ws += (j ? "," : "") + std::to_string(w[j]);
      for (std::size_t j = 0; j < st.desc.size(); ++j)
        ds += (j ? "," : "") + std::to_string(st.desc[j]);
      std::printf("%s\t{%s}\t%ld\t%ld\t%ld\n", ws.c_str(), ds.c_str(), st.N, st.Maj,
                  pc::component_of({w, 0}));
    }
  }
  return kExitOk;
}

struct CharArgs {
  int ell = 1;
  long m = 1;
  long component = 0;
  long zmin = 0, zmax = 0;
  std::string method = "closed";
  std::string format = "table";
};

int cmd_char(const CharArgs& a) {
  pc::require(a.component >= 0 && a.component < a.m, "component must be in [0, m)");
  const pc::CartanData cd(a.ell);
  // component_character already computes the closed form and the reduced
  // q-multinomial route and insists they agree.
  auto win = pc::component_character(cd, a.m, a.component, a.zmin, a.zmax);
  if (a.method == "brute") {
    std::map<std::pair<std::vector<long>, long>, pc::Int> hist;
    for (const auto& x : pc::enumerate_component(cd, a.m, a.component, a.zmin, a.zmax))
      ++hist[{pc::word_tuple(cd, x.word), x.z}];
    for (auto& e : win.entries) {
      const pc::Int brute = hist.count({e.tuple, e.z}) ? hist[{e.tuple, e.z}] : pc::Int(0);
      if (brute != e.count)
        throw pc::cross_check_error("brute-force count disagrees with the formulas at tuple " +
                                    json(e.tuple).dump() + ", z=" + std::to_string(e.z));
      e.count = brute;
    }
  }
  if (a.format == "json")
    emit_json(win.to_json());
  else
    emit(pc::character_table_text(win));
  return kExitOk;
}

struct EmbedArgs {
  std::string word;
  long z = 0;
  int ell = 0;  // 0 = infer from the word
};

int cmd_embed(const EmbedArgs& a) {
  const pc::Word w = parse_word(a.word);
  int ell = a.ell;
  if (ell == 0) {
    for (int c : w) ell = std::max(ell, c);
    ell = std::max(ell, 1);
  }
  for (int c : w) pc::require(c <= ell, "letter exceeds l");
  const pc::CartanData cd(ell);
  const pc::AffineElement x{w, a.z};
  const auto kappa = pc::kappa_seq(x);
  json jk = json::array();
  for (const auto& k : kappa) jk.push_back(pc::rat_to_json(k));
  emit_json(json{{"l", ell},
                 {"word", w},
                 {"z", a.z},
                 {"kappa", jk},
                 {"kappa_m", pc::rat_to_json(kappa.back())},
                 {"path", pc::path_to_json(pc::psi_embed(cd, x))}});
  return kExitOk;
}

struct OrbitArgs {
  int ell = 1;
  std::string word;
  long z = 0;
  std::string lambda;
  std::string gens = "ef";
  long depth = -1;
  std::string zwin;
  std::size_t budget = 1'000'000;
  std::string format = "dot";
};

int cmd_orbit(const OrbitArgs& a) {
  pc::require(a.word.empty() != a.lambda.empty(),
              "exactly one of --word or --lambda selects the seed");
  pc::GenSet gens = pc::GenSet::EF;
  if (a.gens == "e") gens = pc::GenSet::E_only;
  else if (a.gens == "f") gens = pc::GenSet::F_only;
  else pc::require(a.gens == "ef", "--gens must be ef, e or f");

  const pc::CartanData cd(a.ell);
  pc::CrystalGraph graph;
  if (!a.word.empty()) {
    const pc::Word w = parse_word(a.word);
    for (int c : w) pc::require(c <= a.ell, "letter exceeds l");
    pc::AffineCrystal ac(a.ell, static_cast<long>(w.size()));
    pc::OrbitOptions<pc::AffineCrystal> opt;
    opt.node_budget = a.budget;
    if (a.depth >= 0) opt.depth = a.depth;
    if (!a.zwin.empty()) {
      const auto [lo, hi] = parse_window(a.zwin);
      opt.region = [lo, hi](const pc::AffineElement& x) { return x.z >= lo && x.z <= hi; };
      opt.region_desc = {{"kind", "zwin"}, {"min", lo}, {"max", hi}};
    }
    graph = pc::orbit_bfs(ac, {pc::AffineElement{w, a.z}}, gens, opt).graph;
  } else {
    const pc::Weight lambda = parse_lambda(a.lambda, a.ell);
    pc::require(a.depth >= 0, "path orbits need an explicit --depth");
    pc::PathCrystal pcry(a.ell);
    pc::OrbitOptions<pc::PathCrystal> opt;
    opt.node_budget = a.budget;
    opt.depth = a.depth;
    graph = pc::orbit_bfs(pcry, {pc::straight_path(cd, lambda)}, gens, opt).graph;
  }
  if (a.format == "json")
    emit_json(graph.to_json());
  else
    emit(graph.to_dot());
  return kExitOk;
}

struct DecomposeArgs {
  int ell = 1;
  long m = 1;
  std::string lambda;
  long zmin = 0, zmax = 0;
  long verify_depth = -1;
};

int cmd_decompose(const DecomposeArgs& a) {
  const pc::CartanData cd(a.ell);
  const pc::Weight lambda = parse_lambda(a.lambda, a.ell);
  auto rep = pc::decompose(cd, lambda, a.m, a.zmin, a.zmax);
  if (a.verify_depth >= 0) {
    const auto v = pc::verify_decomposition(cd, lambda, a.m, a.zmin, a.zmax, a.verify_depth);
    if (!v.pass())
      throw pc::cross_check_error("decomposition verification failed: " + v.detail);
    rep.verified = true;
  }
  emit_json(rep.to_json());
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  int ell = 0;
  long m = 0;
  std::string mutate;
};

int cmd_verify(const VerifyArgs& a) {
  std::optional<int> l_max;
  std::optional<long> m_max;
  if (a.ell > 0) l_max = a.ell;
  if (a.m > 0) m_max = a.m;
  bool known = false;
  for (const auto& name : pc::suite_names())
    if (name == a.suite) known = true;
  pc::require(known, "unknown suite: " + a.suite);
  if (!a.mutate.empty())
    pc::require(a.mutate == "drop-e0-shift" && a.suite == "psi-morphism",
                "--mutate supports only drop-e0-shift with the psi-morphism suite");
  const auto rep = pc::run_suite(a.suite, l_max, m_max, !a.mutate.empty());
  emit_json(rep.to_json());
  return rep.pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorics of level-zero tensor-power crystals and their path model"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "upper bound on internal parallelism")->check(CLI::PositiveNumber);

  WordsArgs wa;
  auto* words = app.add_subcommand("words", "list words of B_l(m) with their statistics");
  words->add_option("--l", wa.ell, "rank l >= 1")->required()->check(CLI::Range(1, 64));
  words->add_option("--m", wa.m, "tensor power m >= 1")->required()->check(CLI::PositiveNumber);
  words->add_option("--tuple", wa.tuple, "letter multiplicities k0,...,kl");
  auto* res_opt = words->add_option("--residue", wa.residue, "keep words with N = n (mod m)");
  words->add_option("--format", wa.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  CharArgs ca;
  auto* chr = app.add_subcommand("char", "weight multiplicities of one component");
  chr->add_option("--l", ca.ell, "rank l >= 1")->required()->check(CLI::Range(1, 64));
  chr->add_option("--m", ca.m, "tensor power m >= 1")->required()->check(CLI::PositiveNumber);
  chr->add_option("--component", ca.component, "component residue in [0, m)")->required();
  chr->add_option("--zmin", ca.zmin, "lower z bound")->required();
  chr->add_option("--zmax", ca.zmax, "upper z bound")->required();
  chr->add_option("--method", ca.method, "closed, qpoly or brute")
      ->check(CLI::IsMember({"closed", "qpoly", "brute"}));
  chr->add_option("--format", ca.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));

  EmbedArgs ea;
  auto* emb = app.add_subcommand("embed", "embed a word (x) z^n into the path crystal");
  emb->add_option("--word", ea.word, "letters c1,...,cm")->required();
  emb->add_option("--z", ea.z, "z exponent");
  emb->add_option("--l", ea.ell, "rank (default: largest letter)")->check(CLI::Range(1, 64));

  OrbitArgs oa;
  auto* orb = app.add_subcommand("orbit", "truncated crystal graph from a seed");
  orb->add_option("--l", oa.ell, "rank l >= 1")->required()->check(CLI::Range(1, 64));
  orb->add_option("--word", oa.word, "affine seed word c1,...,cm");
  orb->add_option("--z", oa.z, "affine seed z exponent");
  orb->add_option("--lambda", oa.lambda, "straight-path seed, e.g. L0+2L1-1d");
  orb->add_option("--gens", oa.gens, "ef, e or f");
  orb->add_option("--depth", oa.depth, "depth bound");
  orb->add_option("--zwin", oa.zwin, "z window a,b for affine seeds");
  orb->add_option("--budget", oa.budget, "node budget");
  orb->add_option("--format", oa.format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "decompose B(lambda) (x) B-hat over a window");
  dec->add_option("--lambda", da.lambda, "dominant weight, e.g. L0+L1")->required();
  dec->add_option("--l", da.ell, "rank l >= 1")->required()->check(CLI::Range(1, 64));
  dec->add_option("--m", da.m, "tensor power m >= 1")->required()->check(CLI::PositiveNumber);
  dec->add_option("--zmin", da.zmin, "lower z bound")->required();
  dec->add_option("--zmax", da.zmax, "upper z bound")->required();
  dec->add_option("--verify-depth", da.verify_depth, "run truncated isomorphism checks");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  ver->add_option("--suite", va.suite, "suite name")->required();
  ver->add_option("--l", va.ell, "override the rank bound");
  ver->add_option("--m", va.m, "override the tensor power bound");
  ver->add_option("--mutate", va.mutate, "fault injection (test instrumentation)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*words) {
      wa.has_residue = res_opt->count() > 0;
      return cmd_words(wa);
    }
    if (*chr) return cmd_char(ca);
    if (*emb) return cmd_embed(ea);
    if (*orb) return cmd_orbit(oa);
    if (*dec) return cmd_decompose(da);
    if (*ver) return cmd_verify(va);
  } catch (const pc::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pc::cross_check_error& e) {
    std::cerr << "internal cross-check failed: " << e.what() << "\n";
    return kExitCrossCheck;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
