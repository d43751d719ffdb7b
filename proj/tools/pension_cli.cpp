// Command-line front end: validate / edb / aaf / reform / regress / cluster.
// Exit codes: 0 success, 1 usage or configuration error, 2 data or domain error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pension/aaf.hpp"
#include "pension/cluster.hpp"
#include "pension/core_types.hpp"
#include "pension/csv.hpp"
#include "pension/edb.hpp"
#include "pension/errors.hpp"
#include "pension/reference_data.hpp"
#include "pension/reports.hpp"
#include "pension/statlab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20180406ull;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    double rate = 0.06;
    double benefit = 1.0;
    double fx = 4.35;
    std::string reference_date = "2018-04-06";
    std::string out_dir = ".";
    std::string format = "both";
};

struct WindowOptions {
    std::string start = "2018-01-02";
    std::string end = "2018-04-06";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--rate", opt.rate, "Annual discount rate")->capture_default_str();
    cmd->add_option("--benefit", opt.benefit, "Monthly benefit (EUR)")->capture_default_str();
    cmd->add_option("--fx", opt.fx, "Exchange rate, BRL per EUR")->capture_default_str();
    cmd->add_option("--reference-date", opt.reference_date, "Valuation date, ISO-8601")
        ->capture_default_str();
    cmd->add_option("-o,--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", opt.format, "Report formats to write")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
}

void add_window(CLI::App* cmd, WindowOptions& opt) {
    cmd->add_option("--window-start", opt.start, "First admissible grant date")
        ->capture_default_str();
    cmd->add_option("--window-end", opt.end, "Last admissible grant date")
        ->capture_default_str();
}

pension::Date require_date(const std::string& text, const char* what) {
    const auto parsed = pension::parse_date(text);
    if (!parsed.has_value()) {
        throw ConfigError(std::string(what) + " must be an ISO-8601 date, got '" + text + "'");
    }
    return *parsed;
}

pension::MoneyConfig money_config(const CommonOptions& opt) {
    if (!(opt.rate > -1.0)) throw ConfigError("--rate must exceed -1");
    if (!(opt.benefit > 0.0)) throw ConfigError("--benefit must be positive");
    if (!(opt.fx > 0.0)) throw ConfigError("--fx must be positive");
    pension::MoneyConfig cfg;
    cfg.annual_rate = opt.rate;
    cfg.benefit_b = opt.benefit;
    cfg.exchange_rate = opt.fx;
    cfg.reference_date = require_date(opt.reference_date, "--reference-date");
    return cfg;
}

pension::SampleWindow sample_window(const WindowOptions& opt) {
    pension::SampleWindow window;
    window.first = require_date(opt.start, "--window-start");
    window.last = require_date(opt.end, "--window-end");
    if (window.last < window.first) throw ConfigError("sample window ends before it starts");
    return window;
}

fs::path prepare_out_dir(const CommonOptions& opt) {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

bool want_csv(const CommonOptions& opt) { return opt.format != "json"; }
bool want_json(const CommonOptions& opt) { return opt.format != "csv"; }

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed.has_value()) return *flag_seed;
    if (const char* env = std::getenv("PENSION_TOOLKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("PENSION_TOOLKIT_SEED is not an integer: '") +
                              env + "'");
        }
    }
    return kDefaultSeed;
}

json config_echo(const CommonOptions& opt) {
    return json{{"rate", opt.rate},
                {"benefit", opt.benefit},
                {"fx", opt.fx},
                {"reference_date", opt.reference_date},
                {"format", opt.format}};
}

pension::RunManifest make_manifest(const std::string& subcommand, json config,
                                   const std::vector<fs::path>& inputs) {
    pension::RunManifest manifest;
    manifest.tool_version = PENSION_VERSION;
    manifest.subcommand = subcommand;
    manifest.timestamp_utc = pension::utc_timestamp_now();
    manifest.seed = kDefaultSeed;
    manifest.config = std::move(config);
    for (const fs::path& path : inputs) {
        manifest.inputs.push_back({path.string(), pension::file_checksum_fnv1a(path)});
    }
    return manifest;
}

// Accepted non-survivor elderly records plus the counts for the manifest.
struct ElderlySet {
    std::vector<pension::BeneficiaryRecord> records;
    json counts;
};

ElderlySet load_elderly_set(const fs::path& input, const pension::SampleWindow& window) {
    const auto all = pension::read_beneficiaries_csv(input);
    const auto report = pension::validate_records(all, window);
    ElderlySet set;
    std::size_t disabled = 0;
    for (const auto& rec : pension::analysis_set(all, window)) {
        if (rec.kind == pension::BenefitKind::Elderly) {
            set.records.push_back(rec);
        } else {
            ++disabled;
        }
    }
    set.counts = json{{"total", report.total},
                      {"accepted", report.accepted},
                      {"rejected", report.rejected()},
                      {"excluded_survivor", report.excluded_survivor},
                      {"excluded_disabled", disabled},
                      {"analyzed_elderly", set.records.size()}};
    return set;
}

// --- subcommands ----------------------------------------------------------------

int run_validate(const fs::path& input, const CommonOptions& common,
                 const WindowOptions& window_opt) {
    const auto window = sample_window(window_opt);
    const fs::path out = prepare_out_dir(common);
    const auto records = pension::read_beneficiaries_csv(input);
    const auto report = pension::validate_records(records, window);

    if (want_csv(common)) {
        std::ofstream csv(out / "validation_report.csv");
        csv << "status,row,id,reason\n";
        for (const auto& issue : report.rejects) {
            csv << "rejected," << issue.row << ',' << issue.id << ',' << issue.reason << '\n';
        }
        std::size_t row = 0;
        for (const auto& rec : records) {
            const std::size_t index = row++;
            if (!rec.survivor) continue;
            bool rejected = false;
            for (const auto& issue : report.rejects) {
                if (issue.row == index) {
                    rejected = true;
                    break;
                }
            }
            if (!rejected) csv << "excluded_survivor," << index << ',' << rec.id << ",survivor\n";
        }
    }
    json summary{{"schema_version", pension::kSchemaVersion},
                 {"total", report.total},
                 {"accepted", report.accepted},
                 {"rejected", report.rejected()},
                 {"excluded_survivor", report.excluded_survivor},
                 {"analysis_count", report.analysis_count()}};
    summary["rejects"] = json::array();
    for (const auto& issue : report.rejects) {
        summary["rejects"].push_back(
            {{"row", issue.row}, {"id", issue.id}, {"reason", issue.reason}});
    }
    if (want_json(common)) pension::write_json_file(summary, out / "validation_report.json");

    json config = config_echo(common);
    config["window_start"] = window_opt.start;
    config["window_end"] = window_opt.end;
    auto manifest = make_manifest("validate", config, {input});
    manifest.counts = json{{"total", report.total},
                           {"accepted", report.accepted},
                           {"rejected", report.rejected()},
                           {"excluded_survivor", report.excluded_survivor},
                           {"analysis_count", report.analysis_count()}};
    pension::write_manifest(manifest, out);
    std::cout << "validated " << report.total << " rows: " << report.accepted << " accepted, "
              << report.rejected() << " rejected, " << report.excluded_survivor
              << " survivors excluded\n";
    return 0;
}

int run_edb(const fs::path& input, const CommonOptions& common, const WindowOptions& window_opt,
            const std::string& basis_opt) {
    const auto cfg = money_config(common);
    const auto window = sample_window(window_opt);
    const fs::path out = prepare_out_dir(common);
    const auto tables = pension::load_reference_tables();
    ElderlySet set = load_elderly_set(input, window);

    std::vector<std::pair<std::string, pension::LeBasis>> bases;
    if (basis_opt == "birth") {
        bases.emplace_back("birth", pension::LeBasis::AtBirth);
    } else if (basis_opt == "after65") {
        bases.emplace_back("after65", pension::LeBasis::At65);
    } else {
        bases.emplace_back("birth", pension::LeBasis::AtBirth);
        bases.emplace_back("after65", pension::LeBasis::At65);
    }

    const bool both = bases.size() > 1;
    for (const auto& [tag, basis] : bases) {
        const auto report = pension::edb_aggregate(set.records, tables.life_table, cfg, basis);
        const std::string stem = both ? "edb_report_" + tag : "edb_report";
        if (want_csv(common)) pension::write_edb_csv(report, out / (stem + ".csv"));
        if (want_json(common)) {
            pension::write_json_file(pension::edb_to_json(report, cfg), out / (stem + ".json"));
        }
        std::cout << "edb (" << tag << "): " << report.national_count()
                  << " beneficiaries, total " << pension::format_money(report.national_total())
                  << " EUR\n";
    }

    json config = config_echo(common);
    config["le_basis"] = basis_opt;
    config["window_start"] = window_opt.start;
    config["window_end"] = window_opt.end;
    auto manifest = make_manifest("edb", config, {input});
    manifest.counts = set.counts;
    pension::write_manifest(manifest, out);
    return 0;
}

int run_aaf(const fs::path& input, const CommonOptions& common, const WindowOptions& window_opt,
            const std::string& proposal_opt, const std::string& target_opt) {
    const auto cfg = money_config(common);
    const auto window = sample_window(window_opt);
    const fs::path out = prepare_out_dir(common);
    const auto tables = pension::load_reference_tables();
    ElderlySet set = load_elderly_set(input, window);

    const auto target = target_opt == "national" ? pension::Proposal1Target::National
                                                 : pension::Proposal1Target::PerSex;
    std::vector<pension::AafReport> reports;
    if (proposal_opt == "1" || proposal_opt == "both") {
        reports.push_back(pension::aaf_proposal1(set.records, tables.life_table, cfg, target));
    }
    if (proposal_opt == "2" || proposal_opt == "both") {
        reports.push_back(pension::aaf_proposal2(set.records, tables.life_table, cfg));
    }

    if (want_csv(common)) pension::write_aaf_csv(reports, out / "aaf_report.csv");
    if (want_json(common)) {
        pension::write_json_file(pension::aaf_to_json(reports), out / "aaf_report.json");
    }
    for (const auto& report : reports) {
        std::cout << "aaf proposal " << report.proposal << ": " << report.results.size()
                  << " groups, " << report.warnings.size() << " warnings\n";
        for (const auto& warning : report.warnings) std::cerr << "  warning: " << warning << '\n';
    }

    json config = config_echo(common);
    config["proposal"] = proposal_opt;
    config["target"] = target_opt;
    config["window_start"] = window_opt.start;
    config["window_end"] = window_opt.end;
    auto manifest = make_manifest("aaf", config, {input});
    manifest.counts = set.counts;
    pension::write_manifest(manifest, out);
    return 0;
}

int run_reform(const CommonOptions& common) {
    const fs::path out = prepare_out_dir(common);
    const auto tables = pension::load_reference_tables();
    const auto gaps = pension::reform_gap(tables.life_table);
    if (want_csv(common)) pension::write_reform_csv(gaps, out / "reform_report.csv");
    if (want_json(common)) {
        pension::write_json_file(pension::reform_to_json(gaps), out / "reform_report.json");
    }
    auto manifest = make_manifest("reform", config_echo(common), {});
    manifest.counts = json{{"ufs", gaps.size()}};
    pension::write_manifest(manifest, out);

    double lo = gaps.front().gap_years, hi = gaps.front().gap_years;
    for (const auto& gap : gaps) {
        lo = std::min(lo, gap.gap_years);
        hi = std::max(hi, gap.gap_years);
    }
    std::cout << "reform gaps over " << gaps.size() << " UFs: min "
              << pension::format_fixed(lo, 2) << ", max " << pension::format_fixed(hi, 2)
              << " years\n";
    return 0;
}

std::vector<pension::Regressor> parse_regressors(const std::string& list) {
    std::vector<pension::Regressor> out;
    std::string token;
    std::istringstream in(list);
    while (std::getline(in, token, ',')) {
        if (token == "x1" || token == "hdi") out.push_back(pension::Regressor::Hdi);
        else if (token == "x2" || token == "income") out.push_back(pension::Regressor::Income);
        else if (token == "x3" || token == "le_birth") out.push_back(pension::Regressor::LifeExpectancy);
        else if (token == "x4" || token == "density") out.push_back(pension::Regressor::Density);
        else throw ConfigError("unknown regressor '" + token + "'");
    }
    if (out.empty()) throw ConfigError("--regressors must name at least one variable");
    return out;
}

int run_regress(const fs::path& input, const CommonOptions& common,
                const std::string& response_opt, const std::string& regressors_opt,
                double alpha, bool emit_plot_data) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
    const fs::path out = prepare_out_dir(common);
    const auto rows = pension::read_economics_csv(input);
    const auto regressors = parse_regressors(regressors_opt);

    std::vector<pension::Response> responses;
    if (response_opt == "total") responses = {pension::Response::Total};
    else if (response_opt == "elderly") responses = {pension::Response::Elderly};
    else if (response_opt == "disabled") responses = {pension::Response::Disabled};
    else responses = {pension::Response::Total, pension::Response::Elderly,
                      pension::Response::Disabled};

    std::vector<pension::RegressionOutput> outputs;
    for (pension::Response response : responses) {
        using pension::TransformFamily;
        const double estimate = std::numeric_limits<double>::quiet_NaN();
        pension::DesignSpec linear{response, regressors, {}, {TransformFamily::None, 1.0},
                                   "linear"};
        pension::DesignSpec quadratic{response, regressors, regressors,
                                      {TransformFamily::None, 1.0}, "quadratic"};
        pension::DesignSpec boxcox{response, regressors, regressors,
                                   {TransformFamily::BoxCox, estimate}, "quadratic"};
        pension::DesignSpec yeojohnson{response, regressors, regressors,
                                       {TransformFamily::YeoJohnson, estimate}, "quadratic"};

        pension::RegressionOutput output;
        output.response = response;
        output.selection =
            pension::select_model({linear, quadratic, boxcox, yeojohnson}, rows, alpha);
        for (const auto& row : rows) output.uf_nums.push_back(row.uf_num);

        if (!output.selection.aic_ranking.empty()) {
            const auto& best =
                output.selection.candidates[output.selection.aic_ranking.front()];
            output.winner = pension::fit_ols(best.spec, rows);
            output.has_winner = true;
            output.diagnostics.push_back(pension::jarque_bera(output.winner.residuals, alpha));
            output.diagnostics.push_back(pension::reset_test(output.winner, {2, 3}, alpha));
            output.diagnostics.push_back(pension::rainbow_test(output.winner, 0.5, alpha));
            output.diagnostics.push_back(pension::koenker_test(output.winner, alpha));
            output.turning = pension::turning_points(output.winner);
            if (output.winner.X.cols() >= 3) output.vifs = pension::vif(output.winner.X);
            output.influence_report = pension::influence(output.winner);
        }
        outputs.push_back(std::move(output));
    }

    if (want_csv(common)) {
        pension::write_regress_models_csv(outputs, out / "regress_models.csv");
        pension::write_regress_coefficients_csv(outputs, out / "regress_coefficients.csv");
        pension::write_regress_diagnostics_csv(outputs, out / "regress_diagnostics.csv");
        pension::write_regress_turning_csv(outputs, out / "regress_turning_points.csv");
        pension::write_regress_influence_csv(outputs, out / "regress_influence.csv");
    }
    if (want_json(common)) {
        pension::write_json_file(pension::regress_to_json(outputs), out / "regress_report.json");
    }
    if (emit_plot_data) {
        for (const auto& output : outputs) {
            pension::write_plot_data(
                output, out, "plot_" + std::string(pension::response_name(output.response)));
        }
    }
    for (const auto& output : outputs) {
        std::cout << "regress " << pension::response_name(output.response) << ": ";
        if (output.has_winner) {
            std::cout << output.winner.design.form_label << " model, r2 "
                      << pension::format_fixed(output.winner.r2, 4) << '\n';
        } else {
            std::cout << "no candidate survived the specification filter\n";
        }
    }

    json config = config_echo(common);
    config["response"] = response_opt;
    config["regressors"] = regressors_opt;
    config["alpha"] = alpha;
    config["ratio_scale"] = "per_thousand";
    auto manifest = make_manifest("regress", config, {input});
    manifest.counts = json{{"rows", rows.size()}, {"responses", outputs.size()}};
    pension::write_manifest(manifest, out);
    return 0;
}

int run_cluster(const CommonOptions& common, const std::string& features_opt,
                const std::string& method_opt, const std::string& columns_opt, int k,
                bool standardize, const std::optional<std::uint64_t>& seed_opt) {
    if (k < 1) throw ConfigError("--k must be at least 1");
    const std::uint64_t seed = resolve_seed(seed_opt);
    const fs::path out = prepare_out_dir(common);
    const auto tables = pension::load_reference_tables();

    using pension::LifeExpectancyFeature;
    const LifeExpectancyFeature feature =
        features_opt == "birth"     ? LifeExpectancyFeature::Birth
        : features_opt == "after60" ? LifeExpectancyFeature::After60
                                    : LifeExpectancyFeature::After65;
    using pension::FeatureColumns;
    const FeatureColumns columns = columns_opt == "total"    ? FeatureColumns::Total
                                   : columns_opt == "by-sex" ? FeatureColumns::BySex
                                                             : FeatureColumns::All;

    const auto fm =
        pension::make_feature_matrix(tables.life_table, feature, columns, standardize);
    pension::ClusterReport report;
    std::optional<pension::Dendrogram> dendrogram;
    std::optional<pension::KmeansResult> km;
    if (method_opt == "single") {
        dendrogram = pension::single_linkage(pension::distance_matrix(fm.values));
        report = pension::cluster_report(pension::cut_dendrogram(*dendrogram, k), fm.uf_nums);
        if (want_csv(common)) pension::write_merges_csv(*dendrogram, out / "cluster_merges.csv");
    } else {
        km = pension::kmeans(fm.values, k, seed);
        report = pension::cluster_report(km->partition, fm.uf_nums);
    }
    if (want_csv(common)) {
        pension::write_labels_csv(fm.uf_nums, report.primary, out / "cluster_labels.csv");
    }
    if (want_json(common)) {
        pension::write_json_file(
            pension::cluster_to_json(report, dendrogram ? &*dendrogram : nullptr,
                                     km ? &*km : nullptr),
            out / "cluster_report.json");
    }

    json config = config_echo(common);
    config["features"] = features_opt;
    config["method"] = method_opt;
    config["columns"] = columns_opt;
    config["k"] = k;
    config["standardize"] = standardize;
    auto manifest = make_manifest("cluster", config, {});
    manifest.seed = seed;
    manifest.counts = json{{"ufs", fm.uf_nums.size()}, {"features", fm.column_names.size()}};
    pension::write_manifest(manifest, out);
    std::cout << "cluster (" << method_opt << ", k=" << k << "): " << fm.uf_nums.size()
              << " UFs on " << fm.column_names.size() << " feature column(s)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Micro-pension analytics: expected discounted benefits, benefit-age "
                 "adjusting factors, regression diagnostics and UF clustering"};
    app.require_subcommand(1);

    auto* cmd_validate = app.add_subcommand("validate", "Validate a beneficiaries file");
    std::string validate_input;
    CommonOptions validate_common;
    WindowOptions validate_window;
    cmd_validate->add_option("input", validate_input, "beneficiaries.csv")->required();
    add_common(cmd_validate, validate_common);
    add_window(cmd_validate, validate_window);

    auto* cmd_edb = app.add_subcommand("edb", "Expected discounted benefit by UF/sex/nation");
    std::string edb_input;
    CommonOptions edb_common;
    WindowOptions edb_window;
    std::string edb_basis = "after65";
    cmd_edb->add_option("input", edb_input, "beneficiaries.csv")->required();
    cmd_edb->add_option("--le-basis", edb_basis, "Life-expectancy basis")
        ->check(CLI::IsMember({"birth", "after65", "both"}))
        ->capture_default_str();
    add_common(cmd_edb, edb_common);
    add_window(cmd_edb, edb_window);

    auto* cmd_aaf = app.add_subcommand("aaf", "Benefit-age adjusting factors");
    std::string aaf_input;
    CommonOptions aaf_common;
    WindowOptions aaf_window;
    std::string aaf_proposal = "both";
    std::string aaf_target = "per-sex";
    cmd_aaf->add_option("input", aaf_input, "beneficiaries.csv")->required();
    cmd_aaf->add_option("--proposal", aaf_proposal, "Which proposal to compute")
        ->check(CLI::IsMember({"1", "2", "both"}))
        ->capture_default_str();
    cmd_aaf->add_option("--target", aaf_target, "Equalization target for proposal 1")
        ->check(CLI::IsMember({"per-sex", "national"}))
        ->capture_default_str();
    add_common(cmd_aaf, aaf_common);
    add_window(cmd_aaf, aaf_window);

    auto* cmd_reform = app.add_subcommand("reform", "Male birth-expectancy gap to age 70");
    CommonOptions reform_common;
    add_common(cmd_reform, reform_common);

    auto* cmd_regress = app.add_subcommand("regress", "Beneficiary-ratio regression battery");
    std::string regress_input;
    CommonOptions regress_common;
    std::string regress_response = "all";
    std::string regress_regressors = "hdi,income,le_birth,density";
    double regress_alpha = 0.1;
    bool regress_plots = false;
    cmd_regress->add_option("input", regress_input, "economics.csv")->required();
    cmd_regress->add_option("--response", regress_response)
        ->check(CLI::IsMember({"total", "elderly", "disabled", "all"}))
        ->capture_default_str();
    cmd_regress
        ->add_option("--regressors", regress_regressors,
                     "Comma list: hdi,income,le_birth,density (aliases x1..x4)")
        ->capture_default_str();
    cmd_regress->add_option("--alpha", regress_alpha, "Significance level")
        ->capture_default_str();
    cmd_regress->add_flag("--emit-plot-data", regress_plots, "Write diagnostic point sets");
    add_common(cmd_regress, regress_common);

    auto* cmd_cluster = app.add_subcommand("cluster", "Cluster UFs on life expectancies");
    CommonOptions cluster_common;
    std::string cluster_features = "birth";
    std::string cluster_method = "single";
    std::string cluster_columns = "total";
    int cluster_k = 4;
    bool cluster_standardize = false;
    std::optional<std::uint64_t> cluster_seed;
    cmd_cluster->add_option("--features", cluster_features)
        ->check(CLI::IsMember({"birth", "after60", "after65"}))
        ->capture_default_str();
    cmd_cluster->add_option("--method", cluster_method)
        ->check(CLI::IsMember({"single", "kmeans"}))
        ->capture_default_str();
    cmd_cluster->add_option("--columns", cluster_columns)
        ->check(CLI::IsMember({"total", "by-sex", "all"}))
        ->capture_default_str();
    cmd_cluster->add_option("--k", cluster_k, "Number of clusters")->capture_default_str();
    cmd_cluster->add_flag("--standardize", cluster_standardize, "Z-score feature columns");
    cmd_cluster->add_option("--seed", cluster_seed, "RNG seed (overrides PENSION_TOOLKIT_SEED)");
    add_common(cmd_cluster, cluster_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(cmd_validate)) {
            return run_validate(validate_input, validate_common, validate_window);
        }
        if (app.got_subcommand(cmd_edb)) {
            return run_edb(edb_input, edb_common, edb_window, edb_basis);
        }
        if (app.got_subcommand(cmd_aaf)) {
            return run_aaf(aaf_input, aaf_common, aaf_window, aaf_proposal, aaf_target);
        }
        if (app.got_subcommand(cmd_reform)) {
            return run_reform(reform_common);
        }
        if (app.got_subcommand(cmd_regress)) {
            return run_regress(regress_input, regress_common, regress_response,
                               regress_regressors, regress_alpha, regress_plots);
        }
        if (app.got_subcommand(cmd_cluster)) {
            return run_cluster(cluster_common, cluster_features, cluster_method,
                               cluster_columns, cluster_k, cluster_standardize, cluster_seed);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
