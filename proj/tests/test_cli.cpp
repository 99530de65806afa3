#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "operlab/cli.hpp"

using namespace operlab;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "operlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(OPERLAB_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::path(::testing::TempDir()) / name;
    std::ofstream(path) << content;
    return path.string();
}

class EnvGuard {
   public:
    EnvGuard(const char* key, const char* value) : key_(key) { setenv(key, value, 1); }
    ~EnvGuard() { unsetenv(key_); }

   private:
    const char* key_;
};

}  // namespace

TEST(Cli, DualizeThetaSquaredMinusOne) {
    const auto r = run({"dualize", "--input", data("theta2_minus1_p5.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(operator_from_json(j["dual"]), OreOperator::from_constants(Prime(5), Gauge::Theta, {0, 1, 0, 1}));
    EXPECT_EQ(j["dual"]["gauge"], "theta");
    EXPECT_EQ(j["kind"], "orthogonal");
    EXPECT_EQ(j["input_kind"], "symplectic");
    EXPECT_EQ(j["checks"]["two_sided"], true);
    EXPECT_EQ(j["checks"]["self_dual_dual"], true);
}

TEST(Cli, DualizeRejectsNonDormant) {
    const auto r = run({"dualize", "--input", data("d_minus_1_p5.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("NotDormant"), std::string::npos);
}

TEST(Cli, DormantReportsAllOracles) {
    auto r = run({"dormant", "--input", data("d_minus_inv_x_p5.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.json();
    EXPECT_EQ(j["dormant"], true);
    EXPECT_EQ(j["oracles"]["division"], true);
    EXPECT_EQ(j["oracles"]["pcurvature"], true);
    EXPECT_EQ(j["oracles"]["solution_rank"], true);
    EXPECT_EQ(j["exponents"]["0"], Json::parse("[1]"));
    EXPECT_EQ(j["exponents"]["inf"], Json::parse("[4]"));

    r = run({"dormant", "--input", data("d_minus_1_p5.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    j = r.json();
    EXPECT_EQ(j["dormant"], false);
    EXPECT_EQ(j["oracles"]["solution_rank"], false);
    EXPECT_FALSE(j.contains("exponents"));
}

TEST(Cli, DormantAcceptsSearchOutput) {
    const auto s = run({"search", "--p", "5", "--n", "2", "--emit", "operators", "--quiet"});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto ops = s.json()["operators"];
    ASSERT_FALSE(ops.empty());
    for (const auto& op : ops) {
        const auto path = temp_file("op.json", op.dump());
        const auto r = run({"dormant", "--input", path});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(r.json()["dormant"], true);
    }
}

TEST(Cli, RadiiSymmetricClasses) {
    const auto r = run({"radii", "--p", "5", "--n", "2", "--sym"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["count"], 2);
    EXPECT_EQ(j["classes"][0]["rep"], Json::parse("[0, 1]"));
    EXPECT_EQ(j["classes"][1]["rep"], Json::parse("[0, 2]"));
}

TEST(Cli, RadiiApply) {
    auto r = run({"radii", "--p", "5", "--n", "2", "--apply", "tri", "0,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["result"]["rep"], Json::parse("[0, 1, 2]"));
    r = run({"radii", "--p", "7", "--n", "3", "--apply", "neg", "0,1,3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["result"]["rep"], Json::parse("[0, 1, 5]"));
    EXPECT_EQ(r.json()["symmetric"], false);
    r = run({"radii", "--p", "5", "--n", "2", "--apply", "flip", "0,1"});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, BcVerify) {
    auto r = run({"bc-verify", "--p", "5", "--ell", "1", "--m", "1", "--r", "3", "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["bijection"], true);
    EXPECT_EQ(j["counts"]["orthogonal"], j["counts"]["symplectic"]);
    EXPECT_TRUE(j["mismatches"].empty());
    r = run({"bc-verify", "--p", "5", "--ell", "1", "--m", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("ArityMismatch"), std::string::npos);
}

TEST(Cli, SearchThenFusionRoundTrip) {
    const auto t3 = run({"search", "--p", "5", "--n", "2", "--emit", "table", "--quiet"});
    ASSERT_EQ(t3.code, 0) << t3.err;
    const auto t4 = run({"search", "--p", "5", "--n", "2", "--points", "0,1,2,inf", "--emit", "table", "--quiet"});
    ASSERT_EQ(t4.code, 0) << t4.err;
    EXPECT_FALSE(t3.json().contains("operators"));
    const auto f3 = temp_file("t3.json", t3.out), f4 = temp_file("t4.json", t4.out);
    const auto r = run({"fusion", "--table", f3, "--verlinde", "g=0,rho=0,1;0,1;0,1", "--verlinde", "g=2,rho=",
                        "--factorization-check", f4});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["factorization"]["ok"], true);
    EXPECT_EQ(j["factorization"]["checked"], 16);
    EXPECT_EQ(j["verlinde"][0]["value"], t3.json()["table"]["0,1;0,1;0,1"]);
    EXPECT_EQ(j["ring"]["basis"].size(), 2u);

    const auto bad = run({"fusion", "--table", f3, "--verlinde", "genus=0"});
    EXPECT_EQ(bad.code, 1);
}

TEST(Cli, SearchCsv) {
    const auto r = run({"search", "--p", "5", "--n", "2", "--csv", "--quiet"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "radii,count");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 8);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"search", "--p", "7", "--n", "3", "--self-dual", "orthogonal", "--quiet"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto with_workers = args;
    with_workers.insert(with_workers.begin(), {"--workers", "3"});
    EXPECT_EQ(run(with_workers).out, a.out);
}

TEST(Cli, ProgressGoesToStderr) {
    const auto loud = run({"search", "--p", "5", "--n", "2"});
    const auto quiet = run({"search", "--p", "5", "--n", "2", "--quiet"});
    EXPECT_FALSE(loud.err.empty());
    EXPECT_TRUE(quiet.err.empty());
    EXPECT_EQ(loud.out, quiet.out);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"radii", "--p", "5"}).code, 1);
    EXPECT_EQ(run({"radii", "--p", "4", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"search", "--p", "5", "--n", "2", "--emit", "everything"}).code, 1);
    EXPECT_EQ(run({"dualize", "--input", "/nonexistent/op.json"}).code, 1);
    EXPECT_EQ(run({"dualize", "--input", temp_file("garbage.json", "{not json")}).code, 1);
    EXPECT_EQ(run({"search", "--p", "5", "--n", "2", "--points", "0,1,2"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BudgetPrecedence) {
    const std::vector<std::string> search{"search", "--p", "5", "--n", "2", "--points", "0,1,2,inf", "--quiet"};
    {
        EnvGuard env("OPERLAB_BUDGET", "5");
        const auto r = run(search);
        EXPECT_EQ(r.code, 1);
        EXPECT_NE(r.err.find("BudgetExceeded"), std::string::npos);
        auto flagged = search;
        flagged.insert(flagged.begin(), {"--budget", "100000000"});
        EXPECT_EQ(run(flagged).code, 0);
    }
    const auto cfg = temp_file("small.cfg", "# tiny budget\nbudget = 5\nseed = 7\n");
    auto with_cfg = search;
    with_cfg.insert(with_cfg.begin(), {"--config", cfg});
    EXPECT_EQ(run(with_cfg).code, 1);
    {
        EnvGuard env("OPERLAB_BUDGET", "100000000");
        EXPECT_EQ(run(with_cfg).code, 0);
    }
    const auto broken = temp_file("broken.cfg", "budget five\n");
    auto with_broken = search;
    with_broken.insert(with_broken.begin(), {"--config", broken});
    EXPECT_EQ(run(with_broken).code, 1);
    const auto unknown = temp_file("unknown.cfg", "colour = blue\n");
    with_broken[1] = unknown;
    EXPECT_EQ(run(with_broken).code, 1);
}

TEST(Config, Defaults) {
    RunConfig cfg;
    EXPECT_EQ(cfg.budget, 100000000u);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_GE(cfg.workers, 1u);
    EXPECT_EQ(cfg.output_format, "json");
    cfg.budget = 0;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(JsonIo, DocumentsRoundTrip) {
    const Prime p(7);
    const OreOperator d(p, Gauge::Partial,
                        {RationalFunction(Poly(p, {2, 0, 5}), Poly(p, {1, 3})), RationalFunction(p), RationalFunction::constant(p, 1)});
    EXPECT_EQ(operator_from_json(to_json(d)), d);
    const SearchSpec spec{p, 3, {ProjPoint::at(0), ProjPoint::at(2), ProjPoint::infinity()},
                          RadiusTuple(3, canonicalize(ExponentSet(p, {0, 1, 2}))), SelfDualityKind::Orthogonal};
    const auto back = spec_from_json(to_json(spec));
    EXPECT_EQ(back.n, 3);
    EXPECT_EQ(back.points, spec.points);
    EXPECT_EQ(back.radii, spec.radii);
    EXPECT_EQ(back.self_dual, spec.self_dual);
    const SearchSpec s2{p, 2, standard_points(p, 3), std::nullopt, SelfDualityKind::None};
    const auto res = run_search(s2);
    const auto t = table_from_json(search_document(s2, res, true, true));
    EXPECT_EQ(t.entries, table_from(s2, res).entries);
    EXPECT_EQ(t.kind, "sl");
    EXPECT_EQ(t.r, 3u);
    EXPECT_THROW(operator_from_json(Json::parse(R"({"p": 6, "coeffs": [1]})")), Error);
    EXPECT_THROW(operator_from_json(Json::parse(R"({"p": 5, "gauge": "sideways", "coeffs": [1]})")), Error);
}
