#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "support.hpp"

using namespace qtcodes;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

const std::string kData = QTCODES_DATA_DIR;
const std::string kQtwork = QTWORK_PATH;

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / ("qtcodes_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                   "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  const std::string cmd = kQtwork + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

CandidateRecord sample_record(int i) {
  CandidateRecord r;
  r.key = "g" + std::to_string(i) + "/m7/p3/k/t2/0," + std::to_string(i % 3 + 1);
  r.q = 5;
  r.a = 1 + i % 4;
  r.N = 21;
  r.m = 7;
  r.p = 3;
  r.t = 2;
  r.rank_class = i % 2 ? "k" : "k-1";
  r.generator_index = i;
  r.blocks = {0, i % 3 + 1};
  r.polys = {"1203", std::to_string(i)};
  r.n = 14;
  r.k = 7 - i % 3;
  r.d_low = 3 + i % 4;
  r.d_high = r.d_low + i % 2;
  r.engine = i % 2 ? "bz" : "exhaustive";
  r.witness_weight = r.d_high;
  r.probe_weight = r.d_high + 1;
  r.bklc_d = i % 5;
  r.greedy_score = i % 7 - 1;
  r.seed = 0xfffffffffffffff0ULL + static_cast<std::uint64_t>(i % 16);
  r.verdict = i % 3 ? "unknown" : "new";
  r.rejected_at_probe = i % 11 == 0;
  r.timestamp = "2026-01-01T00:00:00Z";
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// BKLC table

TEST(Bklc, ShippedSample) {
  const BklcTable t = load_bklc(kData + "/bklc_sample.csv");
  EXPECT_EQ(t.lookup(5, 84, 19), 40);
  EXPECT_EQ(t.lookup(5, 84, 20), std::nullopt);
  EXPECT_GE(t.size(), 5U);
}

TEST(Bklc, Validation) {
  std::istringstream ok("# comment\nq,n,k,d\n5,84,19,40\n\n7,65,12,38\n");
  EXPECT_EQ(parse_bklc(ok).size(), 2U);

  std::istringstream dup("q,n,k,d\n5,84,19,40\n5,84,19,39\n");
  try {
    (void)parse_bklc(dup, "dup.csv");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_NE(std::string(e.what()).find("dup.csv"), std::string::npos);
  }
  std::istringstream singleton("q,n,k,d\n5,10,5,7\n");
  EXPECT_THROW((void)parse_bklc(singleton), FormatError);
  std::istringstream bad("q,n,k,d\n5,10,x,3\n");
  try {
    (void)parse_bklc(bad);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
  std::istringstream header("q,n,d,k\n");
  EXPECT_THROW((void)parse_bklc(header), FormatError);
  EXPECT_THROW((void)load_bklc("/nonexistent/bklc.csv"), std::runtime_error);
}

// ---------------------------------------------------------------------------
// Fixtures and verification

TEST(Fixtures, ShippedTableLoads) {
  const auto rows = load_fixtures(kData + "/tables.csv");
  ASSERT_EQ(rows.size(), 45U);
  EXPECT_EQ(rows[1].id, "II.2");
  EXPECT_EQ(rows[1].polys.size(), 4U);
  EXPECT_TRUE(rows[1].has_flag("record"));
  EXPECT_EQ(rows[44].id, "III.40");
  EXPECT_EQ(rows[44].a, 2);
  // The listed g_1 of the first record row: 16 digits, constant term 1.
  const Polynomial g1 = parse_poly(FieldSpec::of(5), rows[0].polys[0]);
  EXPECT_EQ(g1.degree(), 15);
  EXPECT_EQ(g1.coeff(0), 1);
}

TEST(Fixtures, ParseErrors) {
  std::istringstream wrong("q,n,k,d,a,N,m,flags,polys\n5,8,3,4,1,4,4,X.1,11;11;1\n5,8,3,4,1,4\n");
  try {
    (void)parse_fixtures(wrong, "f.csv");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  std::istringstream no_id("q,n,k,d,a,N,m,flags,polys\n5,8,3,4,1,4,4,,11\n");
  EXPECT_THROW((void)parse_fixtures(no_id), FormatError);
}

TEST(Verify, SmallRowsConfirmedWithDistance) {
  // x - 1 twice with m = 4: the [8,3,4]_5 code; both orders give it.
  std::istringstream in("q,n,k,d,a,N,m,flags,polys\n5,8,3,4,1,8,4,T.1,41;41\n5,8,3,5,1,8,4,T.2,41;41\n5,9,3,4,1,8,4,T.3,41;41\n");
  const auto rows = parse_fixtures(in);
  const VerifyReport ok = verify_table_entry(rows[0], rows, {});
  EXPECT_EQ(ok.verdict, VerifyVerdict::Confirmed);
  EXPECT_EQ(ok.matched_order, "low-first,high-first");
  ASSERT_EQ(ok.outcomes.size(), 2U);
  EXPECT_EQ(ok.outcomes[0].d_high, 4);
  EXPECT_TRUE(ok.outcomes[1].shared);

  EXPECT_EQ(verify_table_entry(rows[1], rows, {}).verdict, VerifyVerdict::Mismatch);
  const VerifyReport inc = verify_table_entry(rows[2], rows, {});
  EXPECT_EQ(inc.verdict, VerifyVerdict::InconsistentFixture);
  EXPECT_FALSE(inc.issues.empty());

  std::istringstream bad("q,n,k,d,a,N,m,flags,polys\n5,8,3,4,1,8,4,T.4,47;41\n");
  const auto brow = parse_fixtures(bad);
  EXPECT_THROW((void)verify_table_entry(brow[0], brow, {}), std::invalid_argument);
}

TEST(Verify, PartialWhenBudgetLeavesInterval) {
  Rng rng(51);
  std::string polys;
  for (int i = 0; i < 3; ++i) {
    if (i) polys += ';';
    for (int j = 0; j < 14; ++j) polys += static_cast<char>('0' + draw(rng, 5));
  }
  const std::string header = "q,n,k,d,a,N,m,flags,polys\n";
  std::istringstream probe_in(header + "5,42,14,1,1,14,14,P.0," + polys + "\n");
  const auto probe_rows = parse_fixtures(probe_in);
  VerifyOptions exact;
  exact.engine.engine = Engine::BrouwerZimmermann;
  const VerifyReport full = verify_table_entry(probe_rows[0], probe_rows, exact);
  ASSERT_TRUE(full.outcomes[0].nk_match || full.outcomes[1].nk_match) << "random row lost rank; pick another seed";
  const int d = full.outcomes[0].d_high;

  std::istringstream in(header + "5,42,14," + std::to_string(d) + ",1,14,14,P.1," + polys + "\n");
  const auto rows = parse_fixtures(in);
  VerifyOptions cut = exact;
  cut.engine.budget.max_codewords = 1;
  cut.engine.threads = 1;
  const VerifyReport r = verify_table_entry(rows[0], rows, cut);
  if (r.outcomes[0].d_low == r.outcomes[0].d_high) GTEST_SKIP() << "budget did not cut the run short";
  EXPECT_EQ(r.verdict, VerifyVerdict::Partial);
}

TEST(Verify, ShippedTableDimensions) {
  const auto rows = load_fixtures(kData + "/tables.csv");
  VerifyOptions opt;
  opt.distance = false;
  const std::set<std::string> inconsistent{"III.4", "III.6", "III.8", "III.11", "III.15", "III.16", "III.25"};
  const std::set<std::string> mismatch{"III.28", "III.32"};
  std::map<std::string, VerifyReport> by_id;
  for (const auto& row : rows) by_id.emplace(row.id, verify_table_entry(row, rows, opt));
  for (const auto& [id, rep] : by_id) {
    if (inconsistent.count(id)) EXPECT_EQ(rep.verdict, VerifyVerdict::InconsistentFixture) << id;
    else if (mismatch.count(id)) EXPECT_EQ(rep.verdict, VerifyVerdict::Mismatch) << id;
    else EXPECT_EQ(rep.verdict, VerifyVerdict::ConfirmedNk) << id;
  }
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(by_id.at("II." + std::to_string(i)).verdict, VerifyVerdict::ConfirmedNk);
  EXPECT_EQ(by_id.at("III.40").matched_order, "high-first");
  // Five polynomials where n = 66 with m = 11 needs six; the list is also that of II.4.
  const VerifyReport& r4 = by_id.at("III.4");
  EXPECT_EQ(r4.t, 5);
  bool shared = false;
  for (const auto& i : r4.issues) shared = shared || i.find("II.4") != std::string::npos;
  EXPECT_TRUE(shared);
}

// ---------------------------------------------------------------------------
// Records

TEST(Records, RoundTripHundred) {
  std::stringstream buf;
  std::vector<CandidateRecord> in;
  for (int i = 0; i < 100; ++i) {
    in.push_back(sample_record(i));
    write_record(buf, in.back());
  }
  EXPECT_EQ(read_records(buf, "mem"), in);

  const fs::path dir = scratch_dir();
  const std::string path = (dir / "r.jsonl").string();
  {
    RecordWriter w(path);
    for (int i = 0; i < 50; ++i) w.write(in[static_cast<std::size_t>(i)]);
  }
  {
    RecordWriter w(path);  // append
    for (int i = 50; i < 100; ++i) w.write(in[static_cast<std::size_t>(i)]);
  }
  EXPECT_EQ(read_records(path), in);
  fs::remove_all(dir);
}

TEST(Records, CorruptLinesAndEmptyFile) {
  std::stringstream buf;
  write_record(buf, sample_record(1));
  buf << "{not json\n";
  write_record(buf, sample_record(2));
  buf << R"({"key":"x"})" << '\n';
  const std::string text = buf.str();

  std::istringstream strict(text);
  try {
    (void)read_records(strict, "recs");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
  std::istringstream lenient(text);
  std::vector<std::size_t> bad_lines;
  ReadOptions opt;
  opt.continue_on_error = true;
  opt.on_error = [&](const FormatError& e) { bad_lines.push_back(e.line()); };
  const auto recs = read_records(lenient, "recs", opt);
  EXPECT_EQ(recs.size(), 2U);
  EXPECT_EQ(bad_lines, (std::vector<std::size_t>{2, 4}));

  std::istringstream empty("");
  EXPECT_TRUE(read_records(empty, "empty").empty());
  EXPECT_THROW((void)read_records(std::string("/nonexistent/r.jsonl")), std::runtime_error);
}

TEST(Records, StrictFields) {
  json j = to_json(sample_record(3));
  EXPECT_EQ(record_from_json(j), sample_record(3));
  json extra = j;
  extra["colour"] = "red";
  EXPECT_THROW((void)record_from_json(extra), std::exception);
  json missing = j;
  missing.erase("verdict");
  EXPECT_THROW((void)record_from_json(missing), std::exception);
}

// ---------------------------------------------------------------------------
// Config

TEST(Config, Durations) {
  EXPECT_DOUBLE_EQ(parse_duration("90"), 90.0);
  EXPECT_DOUBLE_EQ(parse_duration("90s"), 90.0);
  EXPECT_DOUBLE_EQ(parse_duration("30m"), 1800.0);
  EXPECT_DOUBLE_EQ(parse_duration("2h"), 7200.0);
  EXPECT_DOUBLE_EQ(parse_duration("1d"), 86400.0);
  EXPECT_DOUBLE_EQ(parse_duration("none"), 0.0);
  EXPECT_THROW((void)parse_duration("2 weeks"), std::invalid_argument);
  EXPECT_THROW((void)parse_duration("-5"), std::invalid_argument);
  EXPECT_THROW((void)parse_duration(""), std::invalid_argument);
}

TEST(Config, BudgetEnvironmentVariable) {
  ::setenv(kBudgetEnv, "2h", 1);
  EXPECT_DOUBLE_EQ(default_budget_seconds(), 7200.0);
  const SearchConfig c = parse_search_config(json::parse(R"({"q":5,"N":20,"deg_min":1,"deg_max":4})"));
  EXPECT_DOUBLE_EQ(c.budget.max_seconds, 7200.0);
  const SearchConfig o = parse_search_config(json::parse(R"({"q":5,"N":20,"deg_min":1,"deg_max":4,"budget_seconds":"30m"})"));
  EXPECT_DOUBLE_EQ(o.budget.max_seconds, 1800.0);
  ::setenv(kBudgetEnv, "soon", 1);
  EXPECT_THROW((void)default_budget_seconds(), std::invalid_argument);
  ::unsetenv(kBudgetEnv);
  EXPECT_DOUBLE_EQ(default_budget_seconds(5.0), 5.0);
}

TEST(Config, StrictKeysAndDefaults) {
  const SearchConfig c = parse_search_config(
      json::parse(R"({"q":5,"a":1,"N":840,"deg_min":765,"deg_max":765,"m_values":[21],"t_min":4,"engine":"bz","seed":7})"));
  EXPECT_EQ(c.q, 5);
  EXPECT_EQ(c.N, 840);
  EXPECT_EQ(c.t_max, 4);
  EXPECT_EQ(c.combination_cap, 20000U);
  EXPECT_EQ(c.k_floor, 6);
  EXPECT_EQ(c.engine, Engine::BrouwerZimmermann);
  EXPECT_EQ(c.m_values, std::vector<int>{21});
  EXPECT_EQ(c.seed, 7U);

  EXPECT_THROW((void)parse_search_config(json::parse(R"({"q":5,"N":20,"deg_min":1,"deg_max":4,"tmax":3})")), std::invalid_argument);
  EXPECT_THROW((void)parse_search_config(json::parse(R"({"q":5,"N":20,"deg_min":1})")), std::invalid_argument);
  EXPECT_THROW((void)parse_search_config(json::parse(R"({"q":5,"N":20,"deg_min":1,"deg_max":4,"a":5})")), std::invalid_argument);
  EXPECT_THROW((void)parse_search_config(json::parse(R"({"q":5,"N":"20","deg_min":1,"deg_max":4})")), std::invalid_argument);
  EXPECT_THROW((void)parse_search_config(json::parse(R"({"q":5,"N":20,"deg_min":1,"deg_max":4,"engine":"magic"})")),
               std::invalid_argument);
  EXPECT_THROW((void)load_search_config("/nonexistent/config.json"), std::runtime_error);
}

// ---------------------------------------------------------------------------
// CLI

TEST(Cli, MindistOnHamming) {
  const fs::path dir = scratch_dir();
  write_file(dir / "hamming.txt", "# [7,4] Hamming\n1000110\n0100101\n0010011\n0001111\n");
  const RunResult r = run("mindist " + (dir / "hamming.txt").string() + " --q 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("n=7 k=4 d=3"), std::string::npos) << r.out;
  const RunResult bz = run("mindist " + (dir / "hamming.txt").string() + " --q 2 --engine bz");
  EXPECT_NE(bz.out.find("d=3 engine=bz"), std::string::npos) << bz.out;
  write_file(dir / "bad.txt", "1002\n");
  EXPECT_EQ(run("mindist " + (dir / "bad.txt").string() + " --q 2").status, 2);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("factor --q 5 --N 4 --frobnicate").status, 2);
  EXPECT_EQ(run("mindist /nonexistent/file --q 2").status, 2);
  EXPECT_EQ(run("factor --q 4 --N 4").status, 2);
  const RunResult f = run("factor --q 5 --a 1 --N 4");
  EXPECT_EQ(f.status, 0);
  EXPECT_NE(f.out.find(": 4"), std::string::npos) << f.out;
}

TEST(Cli, VerifyExitStatus) {
  const std::string tables = kData + "/tables.csv";
  const RunResult ok = run("verify --fixtures " + tables + " --rows II.1,II.2 --no-distance");
  EXPECT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("II.2 [84,19,41]_5: confirmed-nk"), std::string::npos) << ok.out;
  EXPECT_EQ(run("verify --fixtures " + tables + " --rows III.28 --no-distance").status, 1);
  const RunResult js = run("verify --fixtures " + tables + " --rows III.4 --no-distance --json");
  EXPECT_EQ(js.status, 0);  // reported, not a mismatch
  EXPECT_EQ(json::parse(js.out).at("verdict"), "inconsistent-fixture");
}

TEST(Cli, SearchIsDeterministicAndResumes) {
  const fs::path dir = scratch_dir();
  write_file(dir / "cfg.json", R"({"q":3,"N":20,"deg_min":6,"deg_max":12,"divisor_cap":4,"combination_cap":3,"t_max":2,
                                   "k_floor":2,"m_values":[4,5],"engine":"exhaustive","threads":1})");
  const std::string cfg = (dir / "cfg.json").string();
  auto strip = [](std::vector<CandidateRecord> v) {
    for (auto& r : v) r.timestamp.clear();
    return v;
  };
  ASSERT_EQ(run("search --config " + cfg + " --output " + (dir / "a.jsonl").string()).status, 0);
  ASSERT_EQ(run("search --config " + cfg + " --output " + (dir / "b.jsonl").string()).status, 0);
  const auto a = strip(read_records((dir / "a.jsonl").string()));
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, strip(read_records((dir / "b.jsonl").string())));

  // Keep the first half, then resume: nothing is duplicated and the stream matches.
  {
    std::ifstream in(dir / "a.jsonl");
    std::ofstream out(dir / "c.jsonl");
    std::string line;
    for (std::size_t i = 0; i < a.size() / 2 && std::getline(in, line); ++i) out << line << '\n';
  }
  ASSERT_EQ(run("search --config " + cfg + " --output " + (dir / "c.jsonl").string() + " --resume").status, 0);
  EXPECT_EQ(strip(read_records((dir / "c.jsonl").string())), a);

  write_file(dir / "typo.json", R"({"q":3,"N":20,"deg_min":6,"deg_max":12,"t_maximum":2})");
  EXPECT_EQ(run("search --config " + (dir / "typo.json").string()).status, 2);
  fs::remove_all(dir);
}

TEST(Cli, SplitAndAsr) {
  const RunResult s = run("split --q 5 --N 6 --m 3 --poly 012341");
  EXPECT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("g1 rank"), std::string::npos) << s.out;
  EXPECT_NE(s.out.find("024"), std::string::npos) << s.out;
  const RunResult a = run("asr --q 5 --m 4 --g 41 --f '1;1'");
  EXPECT_EQ(a.status, 0);
  EXPECT_NE(a.out.find("n=8 k=3 d=4"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("bound ell*d(C_g)=4 holds"), std::string::npos) << a.out;
  EXPECT_EQ(run("asr --q 5 --m 4 --g 201 --f 1").status, 2);
}
