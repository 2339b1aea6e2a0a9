#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sumner/enumeration.hpp"
#include "sumner/error.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/harness.hpp"
#include "sumner/io.hpp"

using namespace sumner;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

CommandResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SUMNER_CLI_PATH) + " " + args + " 2>/dev/null";
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (const std::size_t k = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, k);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sumner_harness_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Reports, JsonRoundTripRevalidates) {
    const Campaign c = verify_sumner(3, {});
    ASSERT_FALSE(c.reports.empty());
    for (const InstanceReport& r : c.reports) {
        const InstanceReport back = report_from_json(to_json(r));
        EXPECT_EQ(back.verdict, r.verdict);
        EXPECT_EQ(back.embedding, r.embedding);
        EXPECT_EQ(back.strategy, r.strategy);
        EXPECT_EQ(to_json(back, false).dump(), to_json(r, false).dump());
    }
    Json tampered = to_json(c.reports.front());
    tampered["embedding"] = Json::array({0, 0, 0});
    EXPECT_THROW((void)report_from_json(tampered), VerificationFailure);
}

TEST(Reports, DescriptorsRebuildInstances) {
    const Tournament g = random_tournament(6, 3);
    EXPECT_EQ(tournament_from_descriptor({{"source", "random"}, {"order", 6}, {"seed", 3}}), g);
    EXPECT_EQ(tournament_from_descriptor({{"source", "rotational"}, {"order", 7}}), rotational_regular_tournament(7));
    EXPECT_EQ(tournament_from_descriptor({{"source", "labelled"}, {"order", 4}, {"index", 17}}), tournament_from_index(4, 17));
    EXPECT_THROW((void)tournament_from_descriptor({{"source", "nonsense"}}), InvalidArgument);
}

TEST(Campaigns, SummaryCountsSumToTotal) {
    const Campaign c = verify_sumner(3, {});
    std::size_t sum = 0;
    for (const auto& [k, v] : c.summary.verdicts) sum += v;
    EXPECT_EQ(sum, c.summary.total);
    EXPECT_EQ(c.summary.total, 3u * 64u);
    EXPECT_EQ(c.summary.verdicts.at("Found"), c.summary.total);
    EXPECT_EQ(c.summary.exit_code(), 0);
}

TEST(Campaigns, SinkSeesEveryReportInOrder) {
    CampaignOptions o;
    o.workers = 3;
    o.keep_reports = false;
    std::vector<std::size_t> seen;
    o.sink = [&](const InstanceReport& r) { seen.push_back(r.index); };
    const Campaign c = verify_sumner(3, {}, o);
    EXPECT_TRUE(c.reports.empty());
    ASSERT_EQ(seen.size(), c.summary.total);
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], i);
}

TEST(Campaigns, DigestIndependentOfWorkers) {
    SumnerSources src;
    src.tournaments = TournamentSource::sample;
    src.trees = TreeSource::sample;
    src.tournament_samples = 30;
    src.tree_samples = 5;
    src.seed = 77;
    CampaignOptions one, four;
    four.workers = 4;
    const Campaign a = verify_sumner(6, src, one), b = verify_sumner(6, src, four), c = verify_sumner(6, src, one);
    EXPECT_EQ(a.summary.digest, b.summary.digest);
    EXPECT_EQ(a.summary.digest, c.summary.digest);
    EXPECT_EQ(to_jsonl(a, false), to_jsonl(b, false));
    src.seed = 78;
    EXPECT_NE(verify_sumner(6, src, one).summary.digest, a.summary.digest);
}

TEST(Campaigns, CapsAreEnforced) {
    EXPECT_THROW((void)verify_sumner(5, {}), CapExceeded);
    SumnerSources iso;
    iso.tournaments = TournamentSource::iso;
    EXPECT_THROW((void)verify_sumner(6, iso), CapExceeded);
    EXPECT_THROW((void)verify_sharpness(3, 10, {}), CapExceeded);
}

TEST(Campaigns, Sharpness) {
    const Campaign c = verify_sharpness(3, 6, {{6, 2}, {7, 3}});
    EXPECT_EQ(c.summary.total, 6u);
    EXPECT_EQ(c.summary.verdicts.at("NotFound"), 6u);
    EXPECT_EQ(c.summary.exit_code(), 0);
}

TEST(Campaigns, CsvHasOneRowPerReport) {
    const Campaign c = verify_sharpness(3, 4, {});
    const std::string csv = to_csv(c);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), c.reports.size() + 1);
}

TEST(Props, DefaultSuitesPass) {
    PropsConfig cfg;
    cfg.samples = 30;
    cfg.workers = 2;
    const Campaign c = run_property_suites(cfg);
    EXPECT_EQ(c.summary.total, property_suite_names().size());
    for (const InstanceReport& r : c.reports) EXPECT_FALSE(r.failed) << r.descriptor.dump();
    EXPECT_EQ(c.summary.exit_code(), 0);
}

TEST(Props, MutationIsCaughtAndMinimized) {
    PropsConfig cfg;
    cfg.samples = 20;
    cfg.suites = {"is_valid_embedding"};
    cfg.inject_mutation = true;
    const Campaign c = run_property_suites(cfg);
    ASSERT_EQ(c.reports.size(), 1u);
    EXPECT_TRUE(c.reports[0].failed);
    EXPECT_EQ(c.summary.exit_code(), 1);
    const Json& minimized = c.reports[0].descriptor.at("first_failure").at("minimized");
    EXPECT_EQ(minimized.at("tree").at("order").get<std::size_t>(), 2u);
    EXPECT_EQ(minimized.at("tournament").at("order").get<std::size_t>(), 2u);
}

TEST(Props, PassFailVectorStableAcrossSeeds) {
    for (Seed s = 0; s < 10; ++s) {
        PropsConfig cfg;
        cfg.samples = 5;
        cfg.seed = s;
        cfg.suites = {"weights", "redei", "canonical-form"};
        const Campaign a = run_property_suites(cfg), b = run_property_suites(cfg);
        EXPECT_EQ(a.summary.digest, b.summary.digest);
        for (const InstanceReport& r : a.reports) EXPECT_FALSE(r.failed);
    }
    PropsConfig bad;
    bad.suites = {"no-such-suite"};
    EXPECT_THROW((void)run_property_suites(bad), InvalidArgument);
}

TEST(Minimizer, ShrinksWhilePredicateHolds) {
    const DirectedTree t = random_oriented_tree(6, 1);
    const Tournament g = random_tournament(10, 1);
    const auto [mt, mg] = minimize_counterexample(t, g, [](const DirectedTree& tt, const Tournament& gg) {
        return tt.order() >= 3 && gg.order() >= 4;
    });
    EXPECT_EQ(mt.order(), 3u);
    EXPECT_EQ(mg.order(), 4u);
}

TEST(ParallelMap, StoresByIndex) {
    const auto out = parallel_map(1000, 8, [](std::size_t i) {
        InstanceReport r;
        r.index = i * 2;
        return r;
    });
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i].index, i * 2);
}

TEST(Cli, ExitCodes) {
    const auto tree = scratch("path.tree"), host = scratch("host.tournament"), sink = scratch("sink.tournament");
    io::write_text_file(tree, io::format_tree(directed_path(3)));
    io::write_text_file(host, io::format_tournament(random_tournament(4, 2)));
    io::write_text_file(sink, io::format_tournament(rotational_regular_tournament(3)));
    const auto star = scratch("star.tree");
    io::write_text_file(star, io::format_tree(inward_star(3)));

    const CommandResult ok = run_cli("embed --tree " + tree.string() + " --tournament " + host.string());
    EXPECT_EQ(ok.exit_code, 0);
    const Json j = Json::parse(ok.out);
    EXPECT_EQ(j.at("verdict"), "Found");

    EXPECT_EQ(run_cli("embed --mode exhaustive --tree " + star.string() + " --tournament " + sink.string()).exit_code, 1);
    EXPECT_EQ(run_cli("embed --tree /nonexistent --tournament " + host.string()).exit_code, 2);
    EXPECT_EQ(run_cli("verify-sumner --n 9").exit_code, 2);
    EXPECT_EQ(run_cli("--format xml props --list").exit_code, 2);
    EXPECT_EQ(run_cli("props --list").exit_code, 0);
    EXPECT_EQ(run_cli("verify-sharpness --lo 3 --hi 4").exit_code, 0);
    EXPECT_EQ(run_cli("props --suite is_valid_embedding --samples 10 --mutate").exit_code, 1);

    const auto bad = scratch("bad.tournament");
    io::write_text_file(bad, "tournament 2\n11\n00\n");
    EXPECT_EQ(run_cli("embed --tree " + tree.string() + " --tournament " + bad.string()).exit_code, 2);
}

TEST(Cli, ConfigAndEnvironmentAreEchoed) {
    const auto cfg = scratch("campaign.ini");
    {
        std::ofstream f(cfg);
        f << "seed = 5\nworkers = 2\n";
    }
    const CommandResult a = run_cli("--config " + cfg.string() + " verify-sumner --n 3");
    ASSERT_EQ(a.exit_code, 0);
    const std::string last = a.out.substr(a.out.rfind('\n', a.out.size() - 2) + 1);
    const Json summary = Json::parse(last);
    EXPECT_EQ(summary.at("config").at("seed"), "5");
    EXPECT_EQ(summary.at("config").at("workers"), "2");

    const CommandResult b = run_cli("--config " + cfg.string() + " verify-sumner --n 3");
    const auto strip = [](const std::string& s) {
        std::string out;
        std::istringstream in(s);
        for (std::string line; std::getline(in, line);) {
            Json j = Json::parse(line);
            j.erase("elapsed_ms");
            out += j.dump() + "\n";
        }
        return out;
    };
    EXPECT_EQ(strip(a.out), strip(b.out));

    setenv("SUMNER_SEED", "9", 1);
    const CommandResult e = run_cli("verify-sumner --n 3");
    unsetenv("SUMNER_SEED");
    const Json es = Json::parse(e.out.substr(e.out.rfind('\n', e.out.size() - 2) + 1));
    EXPECT_EQ(es.at("config").at("seed"), "9");
}
