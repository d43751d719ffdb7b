#ifndef PENSION_REPORTS_HPP
#define PENSION_REPORTS_HPP

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "pension/aaf.hpp"
#include "pension/cluster.hpp"
#include "pension/core_types.hpp"
#include "pension/edb.hpp"
#include "pension/statlab.hpp"

namespace pension {

inline constexpr const char* kSchemaVersion = "1";

// FNV-1a (64-bit) over the file's bytes, as 16 hex digits.
std::string file_checksum_fnv1a(const std::filesystem::path& path);

// Currency: two decimals, halves away from zero. All other numeric report
// fields go through format_fixed; internal arithmetic is never rounded.
std::string format_money(double value);
std::string format_fixed(double value, int decimals);

struct ManifestInput {
    std::string path;
    std::string checksum;
};

// Written with every report; the timestamp is the only field that differs
// between identical runs.
struct RunManifest {
    std::string tool_version;
    std::string subcommand;
    std::string timestamp_utc;
    std::uint64_t seed = 0;
    nlohmann::json config;
    std::vector<ManifestInput> inputs;
    nlohmann::json counts;
};

std::string utc_timestamp_now();
void write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir);
void write_json_file(const nlohmann::json& value, const std::filesystem::path& file);

// --- EDB ---------------------------------------------------------------------

// Columns: group_kind,uf_num,sex,count,total_edb_eur,per_capita_eur,
//          share_pct,cum_share_pct
void write_edb_csv(const EdbReport& report, const std::filesystem::path& file);
nlohmann::json edb_to_json(const EdbReport& report, const MoneyConfig& cfg);

// --- AAF / reform --------------------------------------------------------------

// Columns: proposal,uf_num,sex,d_eur,w_months,factor,new_age_years.
// Aborted (infeasible) groups are reported through warnings, not rows.
void write_aaf_csv(const std::vector<AafReport>& reports, const std::filesystem::path& file);
nlohmann::json aaf_to_json(const std::vector<AafReport>& reports);

// Columns: uf_num,gap_years
void write_reform_csv(const std::vector<ReformGap>& gaps, const std::filesystem::path& file);
nlohmann::json reform_to_json(const std::vector<ReformGap>& gaps);

// --- clustering ----------------------------------------------------------------

// Columns: a,b,height,size
void write_merges_csv(const Dendrogram& dendrogram, const std::filesystem::path& file);
// Columns: uf_num,label
void write_labels_csv(const std::vector<int>& uf_nums, const Partition& partition,
                      const std::filesystem::path& file);
nlohmann::json cluster_to_json(const ClusterReport& report, const Dendrogram* dendrogram,
                               const KmeansResult* kmeans_result);

// --- regression ------------------------------------------------------------------

struct RegressionOutput {
    Response response = Response::Total;
    SelectionReport selection;
    // Winner (best AIC survivor) details; empty when nothing survived.
    bool has_winner = false;
    FittedModel winner;
    std::vector<TestResult> diagnostics;
    std::vector<TurningPoint> turning;
    std::vector<double> vifs;                 // per non-intercept column
    InfluenceReport influence_report;
    std::vector<int> uf_nums;                 // row order of the data
};

void write_regress_models_csv(const std::vector<RegressionOutput>& outputs,
                              const std::filesystem::path& file);
void write_regress_coefficients_csv(const std::vector<RegressionOutput>& outputs,
                                    const std::filesystem::path& file);
void write_regress_diagnostics_csv(const std::vector<RegressionOutput>& outputs,
                                   const std::filesystem::path& file);
void write_regress_turning_csv(const std::vector<RegressionOutput>& outputs,
                               const std::filesystem::path& file);
void write_regress_influence_csv(const std::vector<RegressionOutput>& outputs,
                                 const std::filesystem::path& file);
nlohmann::json regress_to_json(const std::vector<RegressionOutput>& outputs);

// Residual-vs-fitted, normal QQ, scale-location and residual-leverage point
// sets for one fitted model, one CSV each, under `prefix`.
void write_plot_data(const RegressionOutput& output, const std::filesystem::path& out_dir,
                     const std::string& prefix);

}  // namespace pension

#endif
