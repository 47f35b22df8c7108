#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tricolor/bench.hpp"
#include "tricolor/report.hpp"

using namespace tricolor;

namespace {

RunRecord make_record(const std::string& algo, const std::string& type, const std::string& p,
                      uint64_t graph_seed, bool success, long evals) {
  RunRecord r;
  r.algorithm = algo;
  r.instance = {type, 500, p, 0, graph_seed};
  r.run_seed = graph_seed * 1000 + evals;
  r.success = success;
  r.evals_to_solution = success ? evals : 0;
  r.evals_used = success ? evals : 300000;
  r.final_fitness = success ? 0 : 5;
  return r;
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("tricolor_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run record json round trip") {
  RunRecord r = make_record("hsaea", "eq", "0.014", 3, true, 1234);
  r.generations = 12;
  r.wall_ms = 5.5;
  const std::string line = record_to_json(r);
  const RunRecord back = record_from_json(line);
  CHECK(back.algorithm == r.algorithm);
  CHECK(back.instance == r.instance);
  CHECK(back.run_seed == r.run_seed);
  CHECK(back.success == r.success);
  CHECK(back.evals_to_solution == r.evals_to_solution);
  CHECK(back.generations == 12);

  const RunRecord fail = make_record("tabucol", "flat", "0.016", 1, false, 0);
  const std::string fail_line = record_to_json(fail);
  CHECK(fail_line.find("evals_to_solution") == std::string::npos);  // absent iff no success
  const RunRecord fail_back = record_from_json(fail_line);
  CHECK_FALSE(fail_back.success);
  CHECK(fail_back.generations == -1);
}

TEST_CASE("run seeds derive deterministically and separate runs") {
  const uint64_t a = derive_run_seed(1, 0, "hsaea");
  CHECK(a == derive_run_seed(1, 0, "hsaea"));
  CHECK(a != derive_run_seed(1, 1, "hsaea"));
  CHECK(a != derive_run_seed(2, 0, "hsaea"));
  CHECK(a != derive_run_seed(1, 0, "tabucol"));
}

TEST_CASE("solver options parse and reject unknown keys") {
  const auto o = SolverOptions::from_json(R"({"mu": 10, "q_init": 0.05, "trace_path": "t.csv"})");
  CHECK(o.mu == 10);
  CHECK(o.q_init == doctest::Approx(0.05));
  CHECK(o.trace_path == "t.csv");
  CHECK_THROWS_AS(SolverOptions::from_json(R"({"moo": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(SolverOptions::from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(SolverOptions::from_json(R"({"mu": "abc"})"), std::invalid_argument);
}

TEST_CASE("solve_instance rejects unknown algorithms and runs known ones") {
  GenSpec spec;
  spec.type = GraphType::Eq;
  spec.n = 30;
  spec.p_label = "0.15";
  spec.seed = 2;
  const Graph g = generate(spec);
  CHECK_THROWS_AS(solve_instance(g, "simulated_annealing", 1, 100), std::invalid_argument);
  for (const auto& algo : algorithm_names()) {
    const RunRecord r = solve_instance(g, algo, 7, 50000);
    CHECK(r.algorithm == algo);
    CHECK(r.instance.type == "eq");
    CHECK(r.instance.p_label == "0.15");
    CHECK(r.evals_used >= 1);
    if (r.success) CHECK(r.evals_to_solution >= 1);
  }
}

TEST_CASE("plan parsing expands grids and validates") {
  std::istringstream in(
      "# medium sweep\n"
      "algo=dsatur type=eq n=30 p_min=0.01 p_max=0.03 p_step=0.01 seeds=1-3 runs=2 "
      "budget=1000\n"
      "\n"
      "algo=tabucol type=flat n=40 p=0.05 seeds=4,7 runs=5 budget=2000 tabu_base=9\n");
  const auto plan = parse_plan(in);
  REQUIRE(plan.size() == 2);
  CHECK(plan[0].p_labels == std::vector<std::string>{"0.01", "0.02", "0.03"});
  CHECK(plan[0].seeds == std::vector<uint64_t>{1, 2, 3});
  CHECK(plan[0].runs == 2);
  CHECK(plan[1].algorithm == "tabucol");
  CHECK(plan[1].seeds == std::vector<uint64_t>{4, 7});
  CHECK(plan[1].options.tabu_base == 9);

  auto expect_throw = [](const char* text) {
    std::istringstream bad(text);
    CHECK_THROWS_AS(parse_plan(bad), std::invalid_argument);
  };
  expect_throw("algo=nope type=eq n=30 p=0.1 seeds=1 runs=1 budget=10\n");
  expect_throw("algo=dsatur type=eq n=30 seeds=1 runs=1 budget=10\n");       // no p
  expect_throw("algo=dsatur type=eq n=30 p=0.1 runs=1 budget=10\n");         // no seeds
  expect_throw("algo=dsatur type=eq n=30 p=0.1 seeds=1 runs=1 bogus=3\n");   // unknown key
  expect_throw("");                                                          // empty plan
}

TEST_CASE("run_experiment produces one record per run, reproducibly") {
  std::istringstream in("algo=dsatur type=eq n=30 p=0.1 seeds=5 runs=25 budget=100\n");
  const auto plan = parse_plan(in);
  std::vector<RunRecord> first, second;
  run_experiment(plan, 1, [&](const RunRecord& r) { first.push_back(r); });
  REQUIRE(first.size() == 25);
  run_experiment(plan, 2, [&](const RunRecord& r) { second.push_back(r); });
  REQUIRE(second.size() == 25);

  auto key = [](const RunRecord& r) { return r.run_seed; };
  auto sort_records = [&](std::vector<RunRecord>& v) {
    std::sort(v.begin(), v.end(),
              [&](const RunRecord& a, const RunRecord& b) { return key(a) < key(b); });
  };
  sort_records(first);
  sort_records(second);
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].success == second[i].success);
    CHECK(first[i].evals_to_solution == second[i].evals_to_solution);
    CHECK(first[i].evals_used == second[i].evals_used);
  }
}

TEST_CASE("aggregate computes SR, ER and AES") {
  std::vector<RunRecord> records;
  for (int i = 0; i < 25; ++i)
    records.push_back(make_record("hsaea", "eq", "0.014", 1, i < 20, 1000 + i));
  const auto res = aggregate(records, GroupBy{});
  REQUIRE(res.size() == 1);
  CHECK(res[0].runs == 25);
  CHECK(res[0].successes == 20);
  CHECK(res[0].sr == doctest::Approx(0.8));
  CHECK(res[0].er == doctest::Approx(0.2));
  REQUIRE(res[0].aes.has_value());
  double expect_aes = 0;
  for (int i = 0; i < 20; ++i) expect_aes += 1000 + i;
  CHECK(*res[0].aes == doctest::Approx(expect_aes / 20));

  SUBCASE("aggregation is permutation invariant") {
    auto shuffled = records;
    std::mt19937 urng(99);
    std::shuffle(shuffled.begin(), shuffled.end(), urng);
    const auto res2 = aggregate(shuffled, GroupBy{});
    CHECK(res2[0].sr == res[0].sr);
    CHECK(*res2[0].aes == doctest::Approx(*res[0].aes));
  }
}

TEST_CASE("ER averages per-instance success rates") {
  std::vector<RunRecord> records;
  // Instance seed 1: SR 1.0 over 2 runs; instance seed 2: SR 0.0 over 2 runs.
  records.push_back(make_record("hsaea", "eq", "0.014", 1, true, 100));
  records.push_back(make_record("hsaea", "eq", "0.014", 1, true, 120));
  records.push_back(make_record("hsaea", "eq", "0.014", 2, false, 0));
  records.push_back(make_record("hsaea", "eq", "0.014", 2, false, 0));
  const auto res = aggregate(records, GroupBy{});
  REQUIRE(res.size() == 1);
  CHECK(res[0].instances == 2);
  CHECK(res[0].er == doctest::Approx(0.5));  // mean of per-instance SRs 1 and 0
  CHECK(res[0].sr == doctest::Approx(0.5));

  GroupBy by_seed;
  by_seed.seed = true;
  const auto per_instance = aggregate(records, by_seed);
  CHECK(per_instance.size() == 2);
}

TEST_CASE("AES is absent when nothing succeeded, unless failures are counted") {
  std::vector<RunRecord> records;
  records.push_back(make_record("tabucol", "flat", "0.016", 1, false, 0));
  records.push_back(make_record("tabucol", "flat", "0.016", 1, false, 0));
  const auto res = aggregate(records, GroupBy{});
  CHECK_FALSE(res[0].aes.has_value());
  const auto res2 = aggregate(records, GroupBy{}, /*aes_counts_failed_runs=*/true);
  REQUIRE(res2[0].aes.has_value());
  CHECK(*res2[0].aes == doctest::Approx(300000));
  CHECK_THROWS_AS(aggregate(records, GroupBy{false, false, false, false, false, false}),
                  std::invalid_argument);
  CHECK_THROWS_AS(aggregate({}, GroupBy{}), std::invalid_argument);
}

TEST_CASE("phase predictions cover the reported intervals") {
  const auto p500 = phase_predictions(500);
  double lo = 1, hi = 0;
  for (const auto& pred : p500) {
    lo = std::min(lo, pred.p_low);
    hi = std::max(hi, pred.p_high);
  }
  CHECK(lo <= 0.014);
  CHECK(hi >= 0.016);

  const auto p1000 = phase_predictions(1000);
  lo = 1;
  hi = 0;
  for (const auto& pred : p1000) {
    lo = std::min(lo, pred.p_low);
    hi = std::max(hi, pred.p_high);
  }
  CHECK(lo <= 0.007);
  CHECK(hi >= 0.008);
}

TEST_CASE("phase transition report locates the SR valley") {
  std::vector<SweepResult> results;
  const char* labels[] = {"0.008", "0.010", "0.012", "0.014", "0.016", "0.018"};
  const double srs[] = {1.0, 0.9, 0.5, 0.2, 0.6, 1.0};
  for (int i = 0; i < 6; ++i) {
    SweepResult r;
    r.algorithm = "hsaea";
    r.type = "eq";
    r.n = 500;
    r.p_label = labels[i];
    r.sr = srs[i];
    results.push_back(r);
  }
  const auto report = phase_transition_report(results);
  CHECK(report.n == 500);
  CHECK(report.sr_minimum.at("hsaea") == "0.014");
  REQUIRE(report.curves.at("hsaea").size() == 6);
  CHECK(report.curves.at("hsaea").front().p_label == "0.008");
  // Single valley: SR is non-increasing then non-decreasing around the min.
  const auto& curve = report.curves.at("hsaea");
  const size_t min_idx = 3;
  for (size_t i = 0; i + 1 <= min_idx; ++i) CHECK(curve[i].sr >= curve[i + 1].sr);
  for (size_t i = min_idx; i + 1 < curve.size(); ++i) CHECK(curve[i].sr <= curve[i + 1].sr);
}

TEST_CASE("sweep writes a bound record store that reads back") {
  const auto dir = temp_dir("sweep");
  const auto plan_path = dir / "plan.txt";
  {
    std::ofstream plan(plan_path);
    plan << "algo=dsatur type=eq n=30 p=0.1 seeds=1-2 runs=3 budget=100\n";
  }
  run_sweep_to_file(plan_path.string(), dir.string(), 1);
  const auto records = read_records_file((dir / "records.jsonl").string());
  CHECK(records.size() == 6);
  {
    std::ifstream in(dir / "records.jsonl");
    std::string header;
    std::getline(in, header);
    CHECK(header.find("plan_hash") != std::string::npos);
  }
  const auto from_dir = read_records_dir(dir.string());
  CHECK(from_dir.size() == records.size());
  std::filesystem::remove_all(dir);
}

TEST_CASE("plan hash distinguishes plan texts") {
  CHECK(plan_hash("a") != plan_hash("b"));
  CHECK(plan_hash("same") == plan_hash("same"));
}

TEST_CASE("report pipeline emits csv tables and charts") {
  const auto dir = temp_dir("report");
  {
    std::ofstream plan(dir / "plan.txt");
    plan << "algo=dsatur type=eq n=30 p_min=0.05 p_max=0.15 p_step=0.05 seeds=1-2 runs=4 "
            "budget=100\n";
    plan << "algo=moddsat type=eq n=30 p_min=0.05 p_max=0.15 p_step=0.05 seeds=1-2 runs=4 "
            "budget=100\n";
  }
  run_sweep_to_file((dir / "plan.txt").string(), dir.string(), 1);
  make_report(dir.string(), (dir / "out").string());
  CHECK(std::filesystem::exists(dir / "out" / "aggregate.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "instances.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "sr_eq_30.svg"));
  CHECK(std::filesystem::exists(dir / "out" / "aes_eq_30.svg"));
  {
    std::ifstream agg(dir / "out" / "aggregate.csv");
    std::string header;
    std::getline(agg, header);
    CHECK(header == "algorithm,type,n,p,delta,runs,SR,AES,ER");
    int rows = 0;
    std::string line;
    while (std::getline(agg, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 6);  // 2 algorithms x 3 p values
  }
  {
    std::ifstream inst(dir / "out" / "instances.csv");
    const auto scores = read_instances_csv(inst);
    CHECK(scores.size() == 12);  // 2 algorithms x 3 p x 2 seeds
  }
  std::filesystem::remove_all(dir);
}
