// Command-line driver. Exit codes: 0 success, 1 failure or counterexample,
// 2 invalid input or configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sumner/base_embedders.hpp"
#include "sumner/composite_embedders.hpp"
#include "sumner/enumeration.hpp"
#include "sumner/error.hpp"
#include "sumner/expander.hpp"
#include "sumner/generators.hpp"
#include "sumner/graph_ops.hpp"
#include "sumner/harness.hpp"
#include "sumner/io.hpp"
#include "sumner/tree_analysis.hpp"

using namespace sumner;

namespace {

struct Globals {
    Seed seed = 0;
    std::size_t workers = 1;
    std::uint64_t budget = default_node_budget;
    std::string out;
    std::string format = "json";
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\"'");
    const auto b = s.find_last_not_of(" \t\"'");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

/// Effective option values of the app and the chosen subcommand.
ConfigEcho echo(const CLI::App& app, const CLI::App* sub) {
    ConfigEcho out;
    const auto absorb = [&](const std::string& text, const std::string& prefix) {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            if (line.empty() || line[0] == '#' || line[0] == '[') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(line.substr(0, eq));
            if (key.find('.') != std::string::npos) continue;  // other subcommands
            if (key == "out" || key == "config") continue;
            out[prefix + key] = trim(line.substr(eq + 1));
        }
    };
    absorb(app.config_to_str(true, false), "");
    if (sub) absorb(sub->config_to_str(true, false), sub->get_name() + ".");
    return out;
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    io::write_text_file(g.out, text);
}

int finish_campaign(const Globals& g, const Campaign& c) {
    if (!g.out.empty()) io::write_text_file(g.out, g.format == "csv" ? to_csv(c) : to_jsonl(c));
    std::cout << to_json(c.summary).dump() << "\n";
    return c.summary.exit_code();
}

std::pair<Vertex, Vertex> parse_pin(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InvalidArgument("pin '" + text + "' is not of the form t=v");
    try {
        return {std::stoi(text.substr(0, eq)), std::stoi(text.substr(eq + 1))};
    } catch (const std::logic_error&) {
        throw InvalidArgument("pin '" + text + "' is not of the form t=v");
    }
}

Json tree_descriptor(const DirectedTree& t) {
    Json arcs = Json::array();
    for (const Arc& a : t.arcs()) arcs.push_back({a.tail, a.head});
    Json j{{"order", t.order()}, {"arcs", arcs}};
    if (t.root()) j["root"] = *t.root();
    return j;
}

Json rows_descriptor(const Tournament& g) {
    Json rows = Json::array();
    std::istringstream in(io::format_tournament(g));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) rows.push_back(line);
    return Json{{"source", "rows"}, {"order", g.order()}, {"rows", rows}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oriented-tree embedding in tournaments: analysis, embedding and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "key = value configuration file");
    Globals g;
    app.add_option("--seed", g.seed, "Base seed")->envname("SUMNER_SEED");
    app.add_option("--workers", g.workers, "Worker threads")->envname("SUMNER_WORKERS")->check(CLI::PositiveNumber);
    app.add_option("--budget", g.budget, "Search node budget")->envname("SUMNER_BUDGET");
    app.add_option("--out", g.out, "Output file")->envname("SUMNER_OUT");
    app.add_option("--format", g.format, "Output format")->envname("SUMNER_FORMAT")->check(CLI::IsMember({"json", "csv"}));

    // coretree
    auto* coretree = app.add_subcommand("coretree", "Core tree of an oriented tree");
    std::string tree_file, tournament_file;
    int delta = 2;
    coretree->add_option("--tree", tree_file, "Tree file")->required();
    coretree->add_option("--delta", delta, "Core parameter")->check(CLI::Range(2, 1 << 20));

    // embed
    auto* embed = app.add_subcommand("embed", "Embed a tree into a tournament");
    std::string mode = "portfolio";
    std::vector<std::string> pins;
    embed->add_option("--tree", tree_file, "Tree file")->required();
    embed->add_option("--tournament", tournament_file, "Tournament file")->required();
    embed->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"exhaustive", "greedy", "portfolio"}));
    embed->add_option("--pin", pins, "Pin tree vertex t to host vertex v (t=v)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "Split a tournament into expander pieces");
    SplitParameters sp;
    std::size_t exact_limit = exact_expander_cap;
    std::uint64_t samples = 1000;
    decompose->add_option("--tournament", tournament_file, "Tournament file")->required();
    decompose->add_option("--mu", sp.mu);
    decompose->add_option("--nu", sp.nu);
    decompose->add_option("--eta", sp.eta);
    decompose->add_option("--gamma", sp.gamma);
    decompose->add_option("--exact-limit", exact_limit)->check(CLI::Range(std::size_t{0}, exact_expander_cap));
    decompose->add_option("--samples", samples, "Sample budget per sampled check");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    std::string family;
    std::size_t n = 5, ell = 2;
    bool random_filler = false;
    gen->add_option("family", family, "Generator family")
        ->required()
        ->check(CLI::IsMember({"regular", "instar", "near-extremal", "random-tournament", "random-tree"}));
    gen->add_option("--n", n, "Order (tree order for near-extremal)");
    gen->add_option("--ell", ell, "Path length for near-extremal");
    gen->add_flag("--random-filler", random_filler, "Random X filler for near-extremal");
    std::string which = "tree";
    gen->add_option("--part", which, "near-extremal part to write")->check(CLI::IsMember({"tree", "tournament"}));

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate tournaments or trees");
    std::string kind;
    bool iso = false;
    enumerate->add_option("kind", kind)->required()->check(CLI::IsMember({"tournaments", "trees"}));
    enumerate->add_option("--n", n)->required();
    enumerate->add_flag("--iso", iso, "One per isomorphism class");

    // verify-sumner
    auto* vs = app.add_subcommand("verify-sumner", "Embed every tree into every tournament on 2n-2 vertices");
    std::string tournament_source = "exhaustive", tree_source = "iso";
    SumnerSources sources;
    vs->add_option("--n", n)->required();
    vs->add_option("--tournaments", tournament_source)->check(CLI::IsMember({"exhaustive", "iso", "sample"}));
    vs->add_option("--trees", tree_source)->check(CLI::IsMember({"iso", "sample"}));
    vs->add_option("--samples", sources.tournament_samples, "Sampled tournaments");
    vs->add_option("--tree-samples", sources.tree_samples, "Sampled trees");

    // verify-sharpness
    auto* vsh = app.add_subcommand("verify-sharpness", "Certify the extremal non-embeddings");
    std::size_t lo = 3, hi = 6;
    std::vector<std::string> near = {"6:2", "7:3", "8:2"};
    vsh->add_option("--lo", lo);
    vsh->add_option("--hi", hi);
    vsh->add_option("--near", near, "Near-extremal pairs n:ell");

    // props
    auto* props = app.add_subcommand("props", "Run property suites");
    PropsConfig pc;
    props->add_option("--samples", pc.samples);
    props->add_option("--suite", pc.suites, "Suite name (repeatable)");
    props->add_flag("--mutate", pc.inject_mutation, "Inject the arc-flip mutation");
    bool list = false;
    props->add_flag("--list", list, "List suites");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Timing table");
    std::vector<std::size_t> sizes = {100, 500, 1000, 2000};
    std::size_t runs = 5;
    bench_cmd->add_option("--sizes", sizes);
    bench_cmd->add_option("--runs", runs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    try {
        if (chosen == coretree) {
            const DirectedTree t = io::read_tree_file(tree_file);
            const CoreTree core = core_tree(t, delta);
            const ComponentSplit split = components_against(t, core.vertices);
            Json j{{"delta", delta}, {"core", core.vertices.to_vector()}, {"size", core.size()},
                   {"inweight", split.inweight}, {"outweight", split.outweight}};
            emit(g, j.dump() + "\n");
            return 0;
        }
        if (chosen == embed) {
            const DirectedTree t = io::read_tree_file(tree_file);
            const Tournament host = io::read_tournament_file(tournament_file);
            SearchConstraints c;
            c.node_budget = g.budget;
            for (const std::string& p : pins) c.pinned.push_back(parse_pin(p));
            if (!c.pinned.empty() && mode == "portfolio")
                throw InvalidArgument("pins are supported by the exhaustive and greedy modes");
            EmbedOutcome out;
            if (mode == "exhaustive") out = exhaustive_embed(t, host, c);
            else if (mode == "greedy") out = greedy_embed(t, host, c);
            else {
                PortfolioConfig config;
                config.node_budget = g.budget;
                out = portfolio_embed(t, host, config);
            }
            InstanceReport r;
            r.descriptor = Json{{"tree", tree_descriptor(t)}, {"tournament", rows_descriptor(host)}};
            r.verdict = out.verdict;
            if (out.found()) r.embedding = out.embedding;
            r.strategy = out.strategy;
            r.used_fallback = out.used_fallback;
            r.nodes = out.nodes;
            r.seed = g.seed;
            r.failed = !out.found();
            emit(g, to_json(r, false).dump() + "\n");
            return out.found() ? 0 : 1;
        }
        if (chosen == decompose) {
            const Tournament host = io::read_tournament_file(tournament_file);
            const SplitResult r = tournament_split(host, sp, default_expander_checker(sp.mu, sp.nu, exact_limit, samples, g.seed));
            const SplitAudit a = audit_split(host, r);
            Json pieces = Json::array(), classes = Json::array();
            for (std::size_t i = 0; i < r.pieces.size(); ++i) {
                pieces.push_back(r.pieces[i].to_vector());
                classes.push_back(to_string(r.classes[i]));
            }
            Json j{{"pieces", pieces},
                   {"classes", classes},
                   {"bad_edges", r.bad_edges.size()},
                   {"deleted", r.deleted.to_vector()},
                   {"iterations", r.iterations},
                   {"flagged", r.flagged},
                   {"parameters", {{"mu", sp.mu}, {"nu", sp.nu}, {"eta", sp.eta}, {"gamma", sp.gamma}}},
                   {"audit",
                    {{"coverage", a.coverage}, {"ordering", a.ordering}, {"classification", a.classification},
                     {"deletions", a.deletions}, {"covered", a.covered}}}};
            emit(g, j.dump() + "\n");
            return a.ordering && a.deletions ? 0 : 1;
        }
        if (chosen == gen) {
            std::string text;
            if (family == "regular") text = io::format_tournament(rotational_regular_tournament(n));
            else if (family == "instar") text = io::format_tree(inward_star(n));
            else if (family == "random-tournament") text = io::format_tournament(random_tournament(n, g.seed));
            else if (family == "random-tree") text = io::format_tree(random_oriented_tree(n, g.seed));
            else {
                const NearExtremalPair p =
                    near_extremal_pair(n, ell, random_filler ? FillerMode::random : FillerMode::transitive, g.seed);
                text = which == "tree" ? io::format_tree(p.tree) : io::format_tournament(p.tournament);
            }
            emit(g, text);
            return 0;
        }
        if (chosen == enumerate) {
            std::size_t count = 0;
            std::string stream;
            const bool write = !g.out.empty();
            if (kind == "trees") {
                if (!iso) throw InvalidArgument("tree enumeration is up to isomorphism only; pass --iso");
                for (const DirectedTree& t : oriented_tree_classes(n)) {
                    ++count;
                    if (write) stream += io::format_tree(t);
                }
            } else if (iso) {
                for (const Tournament& t : tournament_classes(n)) {
                    ++count;
                    if (write) stream += io::format_tournament(t);
                }
            } else {
                if (n > labelled_enumeration_cap) throw CapExceeded("labelled enumeration limited to n <= 10");
                const std::uint64_t total = labelled_tournament_count(n);
                if (write && n > 6) throw CapExceeded("labelled streaming limited to n <= 6");
                if (write)
                    for_each_labelled_tournament(n, 0, total, [&](std::uint64_t, const Tournament& t) {
                        stream += io::format_tournament(t);
                    });
                count = static_cast<std::size_t>(total);
            }
            if (write) io::write_text_file(g.out, stream);
            std::cout << Json{{"kind", kind}, {"n", n}, {"iso", iso}, {"count", count}}.dump() << "\n";
            return 0;
        }
        CampaignOptions options;
        options.workers = g.workers;
        options.node_budget = g.budget;
        options.config = echo(app, chosen);
        if (chosen == vs) {
            sources.tournaments = tournament_source == "exhaustive" ? TournamentSource::exhaustive
                                  : tournament_source == "iso"      ? TournamentSource::iso
                                                                    : TournamentSource::sample;
            sources.trees = tree_source == "iso" ? TreeSource::iso : TreeSource::sample;
            sources.seed = g.seed;
            return finish_campaign(g, verify_sumner(n, sources, options));
        }
        if (chosen == vsh) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (const std::string& p : near) {
                const auto colon = p.find(':');
                if (colon == std::string::npos) throw InvalidArgument("near-extremal pair '" + p + "' is not n:ell");
                pairs.emplace_back(std::stoul(p.substr(0, colon)), std::stoul(p.substr(colon + 1)));
            }
            return finish_campaign(g, verify_sharpness(lo, hi, pairs, options));
        }
        if (chosen == props) {
            if (list) {
                for (const std::string& s : property_suite_names()) std::cout << s << "\n";
                return 0;
            }
            pc.seed = g.seed;
            pc.workers = g.workers;
            pc.config = options.config;
            return finish_campaign(g, run_property_suites(pc));
        }
        if (chosen == bench_cmd) {
            std::ostringstream out;
            if (g.format == "csv") out << "name,n,runs,mean_ms,max_ms\n";
            for (const BenchRow& row : bench(sizes, runs, g.seed)) {
                if (g.format == "csv")
                    out << row.name << ',' << row.n << ',' << row.runs << ',' << row.mean_ms << ',' << row.max_ms << '\n';
                else
                    out << Json{{"name", row.name}, {"n", row.n}, {"runs", row.runs}, {"mean_ms", row.mean_ms},
                                {"max_ms", row.max_ms}}
                               .dump()
                        << '\n';
            }
            emit(g, out.str());
            return 0;
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
