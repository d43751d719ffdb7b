#include "pension/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "pension/distributions.hpp"
#include "pension/errors.hpp"

namespace pension {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return out;
}

const char* group_kind_tag(GroupKind kind) {
    switch (kind) {
        case GroupKind::Nation: return "nation";
        case GroupKind::BySex: return "sex";
        case GroupKind::ByUf: return "uf";
        case GroupKind::ByUfSex: return "uf_sex";
    }
    return "?";
}

std::string sex_tag(const std::optional<Sex>& sex) {
    if (!sex.has_value()) return "";
    return std::string(1, sex_code(*sex));
}

std::string uf_tag(int uf_num) { return uf_num > 0 ? std::to_string(uf_num) : ""; }

}  // namespace

std::string file_checksum_fnv1a(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::uint64_t hash = 14695981039346656037ull;
    char buffer[8192];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ull;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

std::string format_money(double value) {
    const long long cents = std::llround(value * 100.0);
    const bool negative = cents < 0;
    const long long mag = negative ? -cents : cents;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", negative ? "-" : "", mag / 100,
                  mag % 100);
    return buf;
}

std::string format_fixed(double value, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_json_file(const nlohmann::json& value, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << value.dump(2) << '\n';
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "pension-toolkit";
    j["version"] = manifest.tool_version;
    j["subcommand"] = manifest.subcommand;
    j["timestamp_utc"] = manifest.timestamp_utc;
    j["seed"] = manifest.seed;
    j["config"] = manifest.config;
    j["inputs"] = nlohmann::json::array();
    for (const ManifestInput& input : manifest.inputs) {
        j["inputs"].push_back({{"path", input.path}, {"fnv1a64", input.checksum}});
    }
    j["counts"] = manifest.counts;
    write_json_file(j, out_dir / "run_manifest.json");
}

// --- EDB -----------------------------------------------------------------------

void write_edb_csv(const EdbReport& report, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "group_kind,uf_num,sex,count,total_edb_eur,per_capita_eur,share_pct,cum_share_pct\n";
    for (const EdbGroupRow& row : report.rows) {
        out << group_kind_tag(row.kind) << ',' << uf_tag(row.uf_num) << ','
            << sex_tag(row.sex) << ',' << row.count << ',' << format_money(row.total_edb)
            << ',' << format_money(row.per_capita) << ',' << format_fixed(row.share_pct, 6)
            << ',' << format_fixed(row.cum_share_pct, 6) << '\n';
    }
}

nlohmann::json edb_to_json(const EdbReport& report, const MoneyConfig& cfg) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["basis"] = report.basis == LeBasis::AtBirth ? "birth" : "after65";
    j["groups"] = nlohmann::json::array();
    for (const EdbGroupRow& row : report.rows) {
        nlohmann::json g;
        g["group_kind"] = group_kind_tag(row.kind);
        if (row.uf_num > 0) g["uf_num"] = row.uf_num;
        if (row.sex.has_value()) g["sex"] = std::string(1, sex_code(*row.sex));
        g["count"] = row.count;
        g["total_edb_eur"] = row.total_edb;
        g["total_edb_brl"] = currency_convert(row.total_edb, cfg);
        g["per_capita_eur"] = row.per_capita;
        g["share_pct"] = row.share_pct;
        g["cum_share_pct"] = row.cum_share_pct;
        j["groups"].push_back(std::move(g));
    }
    return j;
}

// --- AAF / reform -----------------------------------------------------------------

void write_aaf_csv(const std::vector<AafReport>& reports, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "proposal,uf_num,sex,d_eur,w_months,factor,new_age_years\n";
    for (const AafReport& report : reports) {
        for (const AafResult& res : report.results) {
            if (res.infeasible) continue;
            out << report.proposal << ',' << res.uf_num << ',' << sex_tag(res.sex) << ','
                << format_money(res.d) << ',' << res.w_months << ','
                << format_fixed(res.factor, 6) << ',' << format_fixed(res.new_age_years, 2)
                << '\n';
        }
    }
}

nlohmann::json aaf_to_json(const std::vector<AafReport>& reports) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["proposals"] = nlohmann::json::array();
    for (const AafReport& report : reports) {
        nlohmann::json p;
        p["proposal"] = report.proposal;
        p["basis"] = "birth";
        p["groups"] = nlohmann::json::array();
        for (const AafResult& res : report.results) {
            nlohmann::json g;
            g["uf_num"] = res.uf_num;
            if (res.sex.has_value()) g["sex"] = std::string(1, sex_code(*res.sex));
            g["count"] = res.group_count;
            g["per_capita_eur"] = res.group_per_capita;
            g["target_per_capita_eur"] = res.target_per_capita;
            g["d_eur"] = res.d;
            g["infeasible"] = res.infeasible;
            if (!res.infeasible) {
                g["w_months"] = res.w_months;
                g["z_months"] = res.z_months;
                g["factor"] = res.factor;
                g["new_age_years"] = res.new_age_years;
                g["members_clamped"] = res.clamped;
            }
            p["groups"].push_back(std::move(g));
        }
        p["warnings"] = report.warnings;
        j["proposals"].push_back(std::move(p));
    }
    return j;
}

void write_reform_csv(const std::vector<ReformGap>& gaps, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "uf_num,gap_years\n";
    for (const ReformGap& gap : gaps) {
        out << gap.uf_num << ',' << format_fixed(gap.gap_years, 2) << '\n';
    }
}

nlohmann::json reform_to_json(const std::vector<ReformGap>& gaps) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["proposed_age"] = 70;
    j["gaps"] = nlohmann::json::array();
    for (const ReformGap& gap : gaps) {
        j["gaps"].push_back({{"uf_num", gap.uf_num}, {"gap_years", gap.gap_years}});
    }
    return j;
}

// --- clustering ---------------------------------------------------------------------

void write_merges_csv(const Dendrogram& dendrogram, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "a,b,height,size\n";
    for (const Merge& merge : dendrogram.merges) {
        out << merge.a << ',' << merge.b << ',' << format_fixed(merge.height, 6) << ','
            << merge.size << '\n';
    }
}

void write_labels_csv(const std::vector<int>& uf_nums, const Partition& partition,
                      const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "uf_num,label\n";
    for (std::size_t i = 0; i < uf_nums.size(); ++i) {
        out << uf_nums[i] << ',' << partition.labels[i] << '\n';
    }
}

nlohmann::json cluster_to_json(const ClusterReport& report, const Dendrogram* dendrogram,
                               const KmeansResult* kmeans_result) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = report.primary.k;
    j["method"] = report.primary.method;
    j["labels"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.uf_nums.size(); ++i) {
        j["labels"].push_back(
            {{"uf_num", report.uf_nums[i]}, {"label", report.primary.labels[i]}});
    }
    if (dendrogram != nullptr) {
        j["merges"] = nlohmann::json::array();
        for (const Merge& merge : dendrogram->merges) {
            j["merges"].push_back({{"a", merge.a},
                                   {"b", merge.b},
                                   {"height", merge.height},
                                   {"size", merge.size}});
        }
    }
    if (kmeans_result != nullptr) {
        j["objective"] = kmeans_result->objective;
        j["iterations"] = kmeans_result->iterations;
    }
    if (report.secondary.has_value()) {
        j["comparison"] = {{"method", report.secondary->method},
                           {"rand_index", report.rand},
                           {"pairs_together_both", report.pairs_together_both},
                           {"pairs_apart_both", report.pairs_apart_both},
                           {"pairs_disagreeing", report.pairs_disagreeing}};
    }
    return j;
}

// --- regression -------------------------------------------------------------------------

namespace {

std::string transform_tag(const TransformSpec& t) {
    switch (t.family) {
        case TransformFamily::None: return "none";
        case TransformFamily::BoxCox: return "boxcox";
        case TransformFamily::YeoJohnson: return "yeojohnson";
    }
    return "?";
}

// Rank string for the selection table; excluded candidates print "X".
std::string rank_tag(const std::vector<std::size_t>& ranking, std::size_t index) {
    for (std::size_t r = 0; r < ranking.size(); ++r) {
        if (ranking[r] == index) return std::to_string(r + 1);
    }
    return "X";
}

}  // namespace

void write_regress_models_csv(const std::vector<RegressionOutput>& outputs,
                              const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "response,form,transform,lambda,reset_p,reset_pass,r2,adj_r2,aic,bic,"
           "aic_rank,bic_rank,error\n";
    for (const RegressionOutput& output : outputs) {
        const SelectionReport& sel = output.selection;
        for (std::size_t i = 0; i < sel.candidates.size(); ++i) {
            const CandidateResult& c = sel.candidates[i];
            out << response_name(output.response) << ',' << c.spec.form_label << ','
                << transform_tag(c.spec.transform) << ',';
            if (c.fitted && c.spec.transform.family != TransformFamily::None) {
                out << format_fixed(c.lambda, 5);
            }
            out << ',';
            if (c.fitted) {
                out << format_fixed(c.reset_p, 6) << ',' << (c.reset_pass ? 1 : 0) << ','
                    << format_fixed(c.r2, 6) << ',' << format_fixed(c.adj_r2, 6) << ','
                    << format_fixed(c.aic, 4) << ',' << format_fixed(c.bic, 4);
            } else {
                out << ",,,,,";
            }
            out << ',' << rank_tag(sel.aic_ranking, i) << ',' << rank_tag(sel.bic_ranking, i)
                << ',' << c.error << '\n';
        }
    }
}

void write_regress_coefficients_csv(const std::vector<RegressionOutput>& outputs,
                                    const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "response,term,estimate,std_error,t_stat,p_value\n";
    for (const RegressionOutput& output : outputs) {
        if (!output.has_winner) continue;
        for (const Coefficient& c : output.winner.coefficients) {
            out << response_name(output.response) << ',' << c.name << ','
                << format_fixed(c.value, 10) << ',' << format_fixed(c.std_error, 10) << ','
                << format_fixed(c.t_stat, 6) << ',' << format_fixed(c.p_value, 6) << '\n';
        }
    }
}

void write_regress_diagnostics_csv(const std::vector<RegressionOutput>& outputs,
                                   const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "response,test,statistic,p_value,alpha,reject\n";
    for (const RegressionOutput& output : outputs) {
        if (!output.has_winner) continue;
        for (const TestResult& t : output.diagnostics) {
            out << response_name(output.response) << ',' << t.name << ','
                << format_fixed(t.statistic, 6) << ',' << format_fixed(t.p_value, 6) << ','
                << format_fixed(t.alpha, 3) << ',' << (t.reject ? 1 : 0) << '\n';
        }
    }
}

void write_regress_turning_csv(const std::vector<RegressionOutput>& outputs,
                               const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "response,regressor,vertex,inside_range,range_min,range_max\n";
    for (const RegressionOutput& output : outputs) {
        if (!output.has_winner) continue;
        for (const TurningPoint& tp : output.turning) {
            out << response_name(output.response) << ',' << tp.regressor << ','
                << format_fixed(tp.vertex, 4) << ',' << (tp.inside_range ? 1 : 0) << ','
                << format_fixed(tp.range_min, 4) << ',' << format_fixed(tp.range_max, 4)
                << '\n';
        }
    }
}

void write_regress_influence_csv(const std::vector<RegressionOutput>& outputs,
                                 const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "response,uf_num,leverage,studentized,high_leverage,outlier\n";
    for (const RegressionOutput& output : outputs) {
        if (!output.has_winner) continue;
        const InfluenceReport& inf = output.influence_report;
        for (Eigen::Index i = 0; i < inf.leverage.size(); ++i) {
            const int idx = static_cast<int>(i);
            const bool high = std::find(inf.high_leverage.begin(), inf.high_leverage.end(),
                                        idx) != inf.high_leverage.end();
            const bool outlier =
                std::find(inf.outliers.begin(), inf.outliers.end(), idx) != inf.outliers.end();
            out << response_name(output.response) << ','
                << output.uf_nums[static_cast<std::size_t>(i)] << ','
                << format_fixed(inf.leverage[i], 6) << ','
                << format_fixed(inf.studentized[i], 6) << ',' << (high ? 1 : 0) << ','
                << (outlier ? 1 : 0) << '\n';
        }
    }
}

nlohmann::json regress_to_json(const std::vector<RegressionOutput>& outputs) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["ratio_scale"] = "per_thousand";
    j["responses"] = nlohmann::json::array();
    for (const RegressionOutput& output : outputs) {
        nlohmann::json r;
        r["response"] = response_name(output.response);
        r["candidates"] = nlohmann::json::array();
        const SelectionReport& sel = output.selection;
        for (std::size_t i = 0; i < sel.candidates.size(); ++i) {
            const CandidateResult& c = sel.candidates[i];
            nlohmann::json cj;
            cj["form"] = c.spec.form_label;
            cj["transform"] = transform_tag(c.spec.transform);
            cj["fitted"] = c.fitted;
            if (!c.error.empty()) cj["error"] = c.error;
            if (c.fitted) {
                if (c.spec.transform.family != TransformFamily::None) cj["lambda"] = c.lambda;
                cj["reset_p"] = c.reset_p;
                cj["reset_pass"] = c.reset_pass;
                cj["r2"] = c.r2;
                cj["adj_r2"] = c.adj_r2;
                cj["aic"] = c.aic;
                cj["bic"] = c.bic;
            }
            cj["aic_rank"] = rank_tag(sel.aic_ranking, i);
            cj["bic_rank"] = rank_tag(sel.bic_ranking, i);
            r["candidates"].push_back(std::move(cj));
        }
        if (output.has_winner) {
            nlohmann::json w;
            w["form"] = output.winner.design.form_label;
            w["transform"] = transform_tag(output.winner.design.transform);
            if (output.winner.design.transform.family != TransformFamily::None) {
                w["lambda"] = output.winner.design.transform.lambda;
            }
            w["r2"] = output.winner.r2;
            w["adj_r2"] = output.winner.adj_r2;
            w["aic"] = output.winner.aic;
            w["bic"] = output.winner.bic;
            w["coefficients"] = nlohmann::json::array();
            for (const Coefficient& c : output.winner.coefficients) {
                w["coefficients"].push_back({{"term", c.name},
                                             {"estimate", c.value},
                                             {"std_error", c.std_error},
                                             {"t_stat", c.t_stat},
                                             {"p_value", c.p_value}});
            }
            w["diagnostics"] = nlohmann::json::array();
            for (const TestResult& t : output.diagnostics) {
                w["diagnostics"].push_back({{"test", t.name},
                                            {"statistic", t.statistic},
                                            {"p_value", t.p_value},
                                            {"alpha", t.alpha},
                                            {"reject", t.reject}});
            }
            w["turning_points"] = nlohmann::json::array();
            for (const TurningPoint& tp : output.turning) {
                w["turning_points"].push_back({{"regressor", tp.regressor},
                                               {"vertex", tp.vertex},
                                               {"inside_range", tp.inside_range},
                                               {"range_min", tp.range_min},
                                               {"range_max", tp.range_max}});
            }
            w["vif"] = output.vifs;
            r["winner"] = std::move(w);
        }
        j["responses"].push_back(std::move(r));
    }
    return j;
}

void write_plot_data(const RegressionOutput& output, const std::filesystem::path& out_dir,
                     const std::string& prefix) {
    if (!output.has_winner) return;
    const FittedModel& m = output.winner;
    const InfluenceReport& inf = output.influence_report;
    const auto n = m.residuals.size();

    {
        auto out = open_out(out_dir / (prefix + "_residuals_fitted.csv"));
        out << "fitted,residual\n";
        for (Eigen::Index i = 0; i < n; ++i) {
            out << format_fixed(m.fitted[i], 8) << ',' << format_fixed(m.residuals[i], 8)
                << '\n';
        }
    }
    {
        // Internally standardized residuals for the QQ and scale-location
        // panels, Blom plotting positions for the theoretical quantiles.
        const double sigma = std::sqrt(m.residuals.squaredNorm() /
                                       std::max<double>(1.0, static_cast<double>(n - m.p())));
        std::vector<double> standardized(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            const double denom = sigma * std::sqrt(std::max(1e-12, 1.0 - m.leverage[i]));
            standardized[static_cast<std::size_t>(i)] = m.residuals[i] / denom;
        }
        std::vector<double> sorted = standardized;
        std::sort(sorted.begin(), sorted.end());
        auto out = open_out(out_dir / (prefix + "_qq.csv"));
        out << "theoretical,sample\n";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const double pos = (static_cast<double>(i) + 1.0 - 0.375) /
                               (static_cast<double>(n) + 0.25);
            out << format_fixed(normal_quantile(pos), 8) << ',' << format_fixed(sorted[i], 8)
                << '\n';
        }
        auto out2 = open_out(out_dir / (prefix + "_scale_location.csv"));
        out2 << "fitted,sqrt_abs_std_residual\n";
        for (Eigen::Index i = 0; i < n; ++i) {
            out2 << format_fixed(m.fitted[i], 8) << ','
                 << format_fixed(std::sqrt(std::fabs(standardized[static_cast<std::size_t>(i)])), 8)
                 << '\n';
        }
    }
    {
        auto out = open_out(out_dir / (prefix + "_residual_leverage.csv"));
        out << "leverage,studentized\n";
        for (Eigen::Index i = 0; i < n; ++i) {
            out << format_fixed(inf.leverage[i], 8) << ',' << format_fixed(inf.studentized[i], 8)
                << '\n';
        }
    }
}

}  // namespace pension
