// qtwork: command-line front end for the quasi-twisted code workbench.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qtcodes/qtcodes.hpp"

namespace {

using namespace qtcodes;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct EngineArgs {
  std::string engine = "auto";
  std::string budget;
  std::uint64_t codewords = 0;
  unsigned threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--engine", engine, "exhaustive, bz or auto")->check(CLI::IsMember({"exhaustive", "bz", "auto"}));
    cmd->add_option("--budget", budget, "time budget per code, e.g. 90s, 30m, 2h (default: $QTCODES_BUDGET)");
    cmd->add_option("--max-codewords", codewords, "codeword budget per code (0: unlimited)");
    cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  }

  [[nodiscard]] DistanceOptions options() const {
    DistanceOptions o;
    o.engine = parse_engine(engine);
    o.budget.max_seconds = budget.empty() ? default_budget_seconds() : parse_duration(budget);
    o.budget.max_codewords = codewords;
    o.threads = threads;
    return o;
  }
};

std::string digits(std::span<const Symbol> v) {
  std::string s;
  for (Symbol c : v) s.push_back(static_cast<char>('0' + c));
  return s;
}

CoeffOrder parse_order(const std::string& s) { return s == "high-first" ? CoeffOrder::HighFirst : CoeffOrder::LowFirst; }

std::string distance_text(const CodeParams& cp) {
  std::ostringstream os;
  if (cp.exact()) os << "d=" << cp.d_high;
  else os << "d in [" << cp.d_low << "," << cp.d_high << "]";
  return os.str();
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& it : items)
    for (const auto& s : detail::split(it, ';'))
      if (!detail::trim(s).empty()) out.push_back(detail::trim(s));
  return out;
}

// factor ---------------------------------------------------------------------

struct FactorArgs {
  int q = 0;
  int a = 1;
  long long N = 0;
  std::optional<int> deg_min, deg_max;
  std::size_t cap = 1000;
  std::uint64_t seed = 1;
};

int run_factor(const FactorArgs& args) {
  const FieldSpec& F = FieldSpec::of(args.q);
  const FactoredModulus fm = factorize_xn_minus_a(F, args.N, static_cast<Symbol>(args.a));
  std::cout << "x^" << args.N << " - " << args.a << " over GF(" << args.q << "): " << fm.factors.size()
            << " distinct irreducible factors, multiplicity " << fm.repeat << '\n';
  for (const auto& fp : fm.factors)
    std::cout << "  deg " << fp.factor.degree() << "  ^" << fp.multiplicity << "  " << format_poly(fp.factor) << '\n';
  if (args.deg_min || args.deg_max) {
    const int lo = args.deg_min.value_or(0);
    const int hi = args.deg_max.value_or(static_cast<int>(args.N));
    const auto divs = enumerate_divisors(fm, lo, hi, args.cap, args.seed);
    std::cout << divs.size() << " monic divisors with degree in [" << lo << "," << hi << "]\n";
    for (const auto& d : divs) std::cout << "  deg " << d.degree() << "  " << format_poly(d) << '\n';
  }
  return kExitOk;
}

// split ----------------------------------------------------------------------

struct SplitArgs {
  int q = 0;
  int a = 1;
  long long N = 0;
  int m = 0;
  std::string poly;
  std::string order = "low-first";
};

int run_split(const SplitArgs& args) {
  const FieldSpec& F = FieldSpec::of(args.q);
  if (args.m < 1 || args.N % args.m != 0) throw std::invalid_argument("m must divide N");
  const EnsembleSpec spec{args.q, static_cast<Symbol>(args.a), args.N, args.m, args.N / args.m};
  const SplitResult s = split_defining_polys(parse_poly(F, args.poly, parse_order(args.order)), spec);
  std::vector<TwistulantBlock> blocks;
  for (const auto& f : s.defs) blocks.emplace_back(f, args.m, spec.a);
  std::cout << "k=" << s.k << " D=" << format_poly(s.D) << '\n';
  std::cout << "ranks " << format_rank_distribution(args.m, spec.p, rank_distribution(blocks)) << '\n';
  for (std::size_t i = 0; i < s.defs.size(); ++i)
    std::cout << "g" << i + 1 << " rank " << blocks[i].rank() << "  " << format_poly(s.defs[i]) << '\n';
  return kExitOk;
}

// mindist --------------------------------------------------------------------

GenMatrix read_generator(const std::string& path, int q) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generator file '" + path + "'");
  const FieldSpec& F = FieldSpec::of(q);
  std::vector<std::vector<Symbol>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t;
    for (char c : line) {
      if (c == '#') break;
      if (c != ' ' && c != '\t' && c != ',' && c != '\r') t.push_back(c);
    }
    if (t.empty()) continue;
    std::vector<Symbol> row;
    for (char c : t) {
      if (c < '0' || c - '0' >= q) throw FormatError(path, lineno, "entry '" + std::string(1, c) + "' is not in GF(" + std::to_string(q) + ")");
      row.push_back(static_cast<Symbol>(c - '0'));
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw FormatError(path, lineno, "row length differs from the first row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("generator file '" + path + "' has no rows");
  return GenMatrix(F, rows);
}

int run_mindist(const std::string& path, int q, const EngineArgs& eng) {
  const GenMatrix G = row_basis(read_generator(path, q));
  const CodeParams cp = min_distance(G, eng.options());
  std::cout << "n=" << cp.n << " k=" << cp.k << ' ' << distance_text(cp) << " engine=" << cp.engine << " codewords=" << cp.codewords
            << '\n';
  std::cout << "witness " << digits(cp.witness) << '\n';
  return kExitOk;
}

// search ---------------------------------------------------------------------

int run_search_cmd(const std::string& config_path, std::string output, bool resume, std::optional<std::uint64_t> seed) {
  SearchConfig cfg = load_search_config(config_path);
  if (!output.empty()) cfg.output_path = output;
  if (seed) cfg.seed = *seed;
  std::optional<BklcTable> bklc;
  if (!cfg.bklc_path.empty()) bklc = load_bklc(cfg.bklc_path);

  SearchHooks hooks;
  if (resume && !cfg.output_path.empty() && std::ifstream(cfg.output_path)) {
    for (const auto& r : read_records(cfg.output_path)) hooks.skip_keys.insert(r.key);
    std::cerr << "resuming: " << hooks.skip_keys.size() << " records already present\n";
  }
  std::optional<RecordWriter> writer;
  if (!cfg.output_path.empty()) writer.emplace(cfg.output_path);
  hooks.sink = [&](const CandidateRecord& r) {
    if (writer) writer->write(r);
    else write_record(std::cout, r);
  };
  hooks.on_split = [](const SplitReport& s) {
    std::cerr << "generator " << s.generator_index << " k=" << s.k << " ranks " << format_rank_distribution(s.m, s.p, s.histogram) << '\n';
  };
  const std::size_t n = run_search(cfg, bklc ? &*bklc : nullptr, hooks);
  std::cerr << n << " records emitted\n";
  return kExitOk;
}

// verify ---------------------------------------------------------------------

int run_verify(const std::string& path, const std::vector<std::string>& only, bool no_distance, bool as_json, const EngineArgs& eng) {
  const auto rows = load_fixtures(path);
  VerifyOptions opt;
  opt.distance = !no_distance;
  opt.engine = eng.options();
  const std::set<std::string> wanted(only.begin(), only.end());
  int exit_code = kExitOk;
  std::size_t done = 0;
  for (const auto& row : rows) {
    if (!wanted.empty() && wanted.count(row.id) == 0) continue;
    const VerifyReport rep = verify_table_entry(row, rows, opt);
    ++done;
    if (rep.verdict == VerifyVerdict::Mismatch) exit_code = kExitMismatch;
    if (as_json) {
      std::cout << to_json(rep).dump() << std::endl;
      continue;
    }
    std::cout << rep.id << " [" << rep.n << "," << rep.k << "," << rep.d << "]_" << rep.q << ": " << to_string(rep.verdict);
    if (!rep.matched_order.empty()) std::cout << " (" << rep.matched_order << ")";
    std::cout << '\n';
    auto show = [](const ConventionOutcome& o, const char* prefix) {
      std::cout << "  " << prefix << to_string(o.order) << " m=" << o.m << ": n=" << o.n << " k=" << o.k;
      if (o.distance_computed) {
        if (o.d_low == o.d_high) std::cout << " d=" << o.d_high;
        else std::cout << " d in [" << o.d_low << "," << o.d_high << "]";
        std::cout << " (" << o.engine << ")";
      }
      if (!o.note.empty()) std::cout << "  " << o.note;
      std::cout << '\n';
    };
    for (const auto& o : rep.outcomes) show(o, "");
    for (const auto& o : rep.diagnostic) show(o, "diagnostic ");
    for (const auto& i : rep.issues) std::cout << "  issue: " << i << '\n';
  }
  if (!wanted.empty() && done != wanted.size()) throw std::invalid_argument("some requested rows are not in the fixture file");
  return exit_code;
}

// asr ------------------------------------------------------------------------

int run_asr(int q, int a, int m, const std::string& g_text, const std::vector<std::string>& f_texts, const EngineArgs& eng) {
  const FieldSpec& F = FieldSpec::of(q);
  const Polynomial g = parse_poly(F, g_text);
  std::vector<Polynomial> fs;
  for (const auto& s : split_list(f_texts)) fs.push_back(parse_poly(F, s));
  const auto sa = static_cast<Symbol>(a);
  const GenMatrix G = asr_generate(g, fs, m, sa);
  const DistanceOptions opt = eng.options();
  const int bound = asr_distance_bound(g, static_cast<int>(fs.size()), m, sa, opt);
  const CodeParams cp = min_distance(G, opt);
  std::cout << "n=" << cp.n << " k=" << cp.k << ' ' << distance_text(cp) << " engine=" << cp.engine << '\n';
  std::cout << "bound ell*d(C_g)=" << bound << (cp.d_low >= bound ? " holds" : " violated") << '\n';
  for (std::size_t i = 0; i < G.rows(); ++i) std::cout << digits(G.row(i)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-twisted code workbench"};
  app.require_subcommand(1);

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "factor x^N - a and list divisors in a degree window");
  factor->add_option("--q", fa.q, "field size")->required();
  factor->add_option("--a", fa.a, "shift constant");
  factor->add_option("--N", fa.N, "length")->required();
  factor->add_option("--deg-min", fa.deg_min, "smallest divisor degree");
  factor->add_option("--deg-max", fa.deg_max, "largest divisor degree");
  factor->add_option("--cap", fa.cap, "maximum number of divisors listed");
  factor->add_option("--seed", fa.seed, "sampling seed when the cap applies");

  SplitArgs sa;
  auto* split = app.add_subcommand("split", "split a long generator into defining polynomials");
  split->add_option("--q", sa.q)->required();
  split->add_option("--a", sa.a);
  split->add_option("--N", sa.N)->required();
  split->add_option("--m", sa.m)->required();
  split->add_option("--poly", sa.poly, "G(x) as a digit string")->required();
  split->add_option("--order", sa.order)->check(CLI::IsMember({"low-first", "high-first"}));

  std::string gen_path;
  int md_q = 0;
  EngineArgs md_eng;
  auto* mindist = app.add_subcommand("mindist", "minimum distance of a generator matrix");
  mindist->add_option("generator", gen_path, "file with one digit string per row")->required()->check(CLI::ExistingFile);
  mindist->add_option("--q", md_q)->required();
  md_eng.attach(mindist);

  std::string cfg_path, out_path;
  bool resume = false;
  std::optional<std::uint64_t> seed;
  auto* search = app.add_subcommand("search", "run a search from a JSON config");
  search->add_option("--config", cfg_path)->required()->check(CLI::ExistingFile);
  search->add_option("--output", out_path, "JSON-lines record file (default: config value or stdout)");
  search->add_option("--seed", seed, "override the root seed");
  search->add_flag("--resume", resume, "skip records already present in the output file");

  std::string fix_path;
  std::vector<std::string> only;
  bool no_distance = false, as_json = false;
  EngineArgs v_eng;
  auto* verify = app.add_subcommand("verify", "verify published table rows");
  verify->add_option("--fixtures", fix_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--rows", only, "row ids to verify (default: all)")->delimiter(',');
  verify->add_flag("--no-distance", no_distance, "check n and k only");
  verify->add_flag("--json", as_json, "one JSON report per line");
  v_eng.attach(verify);

  int aq = 0, aa = 1, am = 0;
  std::string ag;
  std::vector<std::string> af;
  EngineArgs a_eng;
  auto* asr = app.add_subcommand("asr", "build a 1-generator QT code and its distance bound");
  asr->add_option("--q", aq)->required();
  asr->add_option("--a", aa);
  asr->add_option("--m", am)->required();
  asr->add_option("--g", ag, "g(x) dividing x^m - a")->required();
  asr->add_option("--f", af, "f_i polynomials (repeat or separate with ';')")->required();
  a_eng.attach(asr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (factor->parsed()) return run_factor(fa);
    if (split->parsed()) return run_split(sa);
    if (mindist->parsed()) return run_mindist(gen_path, md_q, md_eng);
    if (search->parsed()) return run_search_cmd(cfg_path, out_path, resume, seed);
    if (verify->parsed()) return run_verify(fix_path, only, no_distance, as_json, v_eng);
    if (asr->parsed()) return run_asr(aq, aa, am, ag, af, a_eng);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
