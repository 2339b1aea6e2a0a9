#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumner/base_embedders.hpp"
#include "sumner/composite_embedders.hpp"
#include "sumner/generators.hpp"

namespace sumner {

inline constexpr const char* library_version = "0.1.0";

using Json = nlohmann::ordered_json;

/// Reports carry enough of the instance to rebuild it: tree arcs, and the
/// tournament as a labelled index, canonical key or generator seed.
struct InstanceReport {
    std::size_t index = 0;
    Json descriptor;
    /// Absent for property-suite reports.
    std::optional<Verdict> verdict;
    /// The instance did not meet the campaign's expectation.
    bool failed = false;
    std::optional<Embedding> embedding;
    std::string strategy;
    bool used_fallback = false;
    std::uint64_t nodes = 0;
    double elapsed_ms = 0;
    Seed seed = 0;
    std::string version = library_version;
};

/// Ordered key/value echo of the effective configuration.
using ConfigEcho = std::map<std::string, std::string>;

struct CampaignSummary {
    std::string campaign;
    std::size_t total = 0;
    std::map<std::string, std::size_t> verdicts;
    /// Descriptions of failing instances or suites, in instance order.
    std::vector<std::string> failures;
    std::size_t fallbacks = 0;
    double elapsed_ms = 0;
    ConfigEcho config;
    /// FNV-1a over the timing-free report lines; equal digests mean identical
    /// verdicts and embeddings.
    std::string digest;

    /// 0 when there are no failures, 1 otherwise.
    int exit_code() const { return failures.empty() ? 0 : 1; }
};

struct Campaign {
    std::vector<InstanceReport> reports;
    CampaignSummary summary;
};

Json to_json(const InstanceReport& r, bool with_timing = true);
Json to_json(const CampaignSummary& s, bool with_timing = true);
/// Parses a report and re-validates a Found embedding against the rebuilt
/// instance (VerificationFailure on mismatch).
InstanceReport report_from_json(const Json& j);
DirectedTree tree_from_descriptor(const Json& d);
Tournament tournament_from_descriptor(const Json& d);

/// One report per line followed by the summary object.
std::string to_jsonl(const Campaign& c, bool with_timing = true);
std::string to_csv(const Campaign& c);

/// Runs job(i) for i in [0, count) on `workers` threads; results are stored
/// by index so the output does not depend on scheduling.
std::vector<InstanceReport> parallel_map(std::size_t count, std::size_t workers,
                                         const std::function<InstanceReport(std::size_t)>& job);

struct CampaignOptions {
    std::size_t workers = 1;
    /// Reports are kept in Campaign::reports; the sink sees every report in
    /// instance order either way.
    bool keep_reports = true;
    std::function<void(const InstanceReport&)> sink;
    std::uint64_t node_budget = default_node_budget;
    PortfolioConfig portfolio;
    ConfigEcho config;
};

enum class TournamentSource { exhaustive, iso, sample };
enum class TreeSource { iso, sample };

struct SumnerSources {
    TournamentSource tournaments = TournamentSource::exhaustive;
    TreeSource trees = TreeSource::iso;
    /// Sample sizes and seed for the sampled sources.
    std::size_t tournament_samples = 100;
    std::size_t tree_samples = 10;
    Seed seed = 0;
};

inline constexpr std::size_t labelled_verify_cap = 6;  // host order
inline constexpr std::size_t iso_verify_cap = 8;       // host order

/// Every (tree, tournament on 2n−2) pair through portfolio_embed; any verdict
/// other than Found is a failure.
Campaign verify_sumner(std::size_t n, const SumnerSources& sources, const CampaignOptions& options = {});

/// Inward star on n against the rotational tournament on 2n−3 for n in
/// [n_lo, n_hi], plus the near-extremal pairs; pass means complete search
/// returns NotFound.
Campaign verify_sharpness(std::size_t n_lo, std::size_t n_hi,
                          const std::vector<std::pair<std::size_t, std::size_t>>& near_extremal,
                          const CampaignOptions& options = {});

/// Every outbranching class on n vertices against every labelled tournament on
/// 2n−2 vertices through embed_outbranching; fallbacks are counted.
Campaign verify_outbranching(std::size_t n, const CampaignOptions& options = {});

struct PropsConfig {
    std::size_t samples = 200;
    Seed seed = 0;
    std::size_t workers = 1;
    /// Empty means every suite.
    std::vector<std::string> suites;
    /// Per-suite overrides of `samples`.
    std::map<std::string, std::size_t> suite_samples;
    /// Flips the host arc under the first tree arc after the embedding is
    /// validated, inside the is_valid_embedding suite.
    bool inject_mutation = false;
    ConfigEcho config;
};

std::vector<std::string> property_suite_names();

/// One report per suite; a failing suite's descriptor carries the first
/// failing sample and, where the suite is instance-based, a counterexample
/// minimized by vertex deletion.
Campaign run_property_suites(const PropsConfig& config);

/// Deletes tree leaves and host vertices while `fails` keeps holding.
std::pair<DirectedTree, Tournament> minimize_counterexample(
    DirectedTree t, Tournament g, const std::function<bool(const DirectedTree&, const Tournament&)>& fails);

struct BenchRow {
    std::string name;
    std::size_t n = 0;
    std::size_t runs = 0;
    double mean_ms = 0;
    double max_ms = 0;
};

std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, std::size_t runs, Seed seed);

} // namespace sumner
