#include "pension/aaf.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "pension/dates.hpp"
#include "pension/errors.hpp"
#include "pension/reference_data.hpp"

namespace pension {

namespace {

constexpr double kBaseAgeMonths = 65.0 * 12.0;

std::string group_label(int uf_num, std::optional<Sex> sex) {
    std::string label = "UF " + std::to_string(uf_num);
    if (uf_num >= 1 && uf_num <= 27) {
        label += " (";
        label += uf_from_number(uf_num).abbrev;
        label += ")";
    }
    if (sex.has_value()) {
        label += ' ';
        label += sex_name(*sex);
    }
    return label;
}

// Remaining-lifetime months per group member; used to report clamping.
std::map<std::pair<int, int>, std::vector<int>> group_lifetimes(
    std::span<const BeneficiaryRecord> records, const UfLifeTable& table,
    const MoneyConfig& cfg) {
    std::map<std::pair<int, int>, std::vector<int>> out;
    for (const BeneficiaryRecord& rec : records) {
        const double age_at_death =
            table.expected_age_at_death(rec.uf_num, rec.sex, LeBasis::AtBirth);
        const int age_months = months_between(rec.birth_date, cfg.reference_date);
        const RemainingLifetime lt =
            remaining_months(age_at_death, age_months, LeBasis::AtBirth);
        out[{rec.uf_num, sex_index(rec.sex)}].push_back(lt.months);
    }
    return out;
}

AafResult make_result(int uf_num, std::optional<Sex> sex, const EdbGroupRow& group,
                      double target, const MoneyConfig& cfg, MonthlyRate rate,
                      const std::vector<int>* lifetimes,
                      std::vector<std::string>& warnings) {
    AafResult res;
    res.uf_num = uf_num;
    res.sex = sex;
    res.group_count = group.count;
    res.group_per_capita = group.per_capita;
    res.target_per_capita = target;
    res.d = benefit_difference(target, group.per_capita);
    try {
        res.w_months = solve_offset(res.d, cfg.benefit_b, rate);
    } catch (const InfeasibleTargetError&) {
        res.infeasible = true;
        warnings.push_back(group_label(uf_num, sex) + ": per-capita gap " +
                           std::to_string(res.d) +
                           " is beyond the perpetuity value; group aborted");
        return res;
    }
    res.z_months = std::abs(res.w_months);
    res.factor = (kBaseAgeMonths + res.w_months) / kBaseAgeMonths;
    res.new_age_years = res.factor * 65.0;
    if (res.w_months < 0 && lifetimes != nullptr) {
        for (int lt : *lifetimes) {
            if (lt + res.w_months < 0) ++res.clamped;
        }
        if (res.clamped > 0) {
            warnings.push_back(group_label(uf_num, sex) + ": offset " +
                               std::to_string(res.w_months) + " months exceeds the remaining lifetime of " +
                               std::to_string(res.clamped) + " of " +
                               std::to_string(group.count) + " members (floored at zero)");
        }
    }
    return res;
}

}  // namespace

double benefit_difference(double target_per_capita, double group_per_capita) {
    return target_per_capita - group_per_capita;
}

int solve_offset(double d, double benefit, MonthlyRate rate) {
    if (d == 0.0) return 0;
    const int z = invert_annuity(std::abs(d), benefit, rate);
    return d < 0.0 ? -z : z;
}

double adjusted_per_capita(double group_per_capita, int w_months, double benefit,
                           MonthlyRate rate) {
    const double value = benefit * annuity_pv(std::abs(w_months), rate);
    return w_months < 0 ? group_per_capita - value : group_per_capita + value;
}

AafReport aaf_proposal1(std::span<const BeneficiaryRecord> records,
                        const UfLifeTable& table, const MoneyConfig& cfg,
                        Proposal1Target target) {
    const EdbReport edb = edb_aggregate(records, table, cfg, LeBasis::AtBirth);
    const MonthlyRate rate = monthly_rate(cfg.annual_rate);
    const auto lifetimes = group_lifetimes(records, table, cfg);

    AafReport report;
    report.proposal = 1;
    for (const UfLifeRow& uf_row : table.rows()) {
        for (Sex sex : {Sex::Male, Sex::Female}) {
            const EdbGroupRow* group = edb.find(GroupKind::ByUfSex, uf_row.uf_num, sex);
            if (group == nullptr || group->count == 0) {
                report.warnings.push_back(group_label(uf_row.uf_num, sex) +
                                          ": empty group skipped");
                continue;
            }
            const EdbGroupRow* target_row =
                target == Proposal1Target::PerSex
                    ? edb.find(GroupKind::BySex, 0, sex)
                    : edb.find(GroupKind::Nation);
            auto it = lifetimes.find({uf_row.uf_num, sex_index(sex)});
            report.results.push_back(make_result(
                uf_row.uf_num, sex, *group, target_row->per_capita, cfg, rate,
                it != lifetimes.end() ? &it->second : nullptr, report.warnings));
        }
    }
    return report;
}

AafReport aaf_proposal2(std::span<const BeneficiaryRecord> records,
                        const UfLifeTable& table, const MoneyConfig& cfg) {
    const EdbReport edb = edb_aggregate(records, table, cfg, LeBasis::AtBirth);
    const MonthlyRate rate = monthly_rate(cfg.annual_rate);
    auto lifetimes = group_lifetimes(records, table, cfg);

    // Merge the sexes: the UF-only proposal corrects both together.
    std::map<int, std::vector<int>> uf_lifetimes;
    for (auto& [key, values] : lifetimes) {
        auto& dst = uf_lifetimes[key.first];
        dst.insert(dst.end(), values.begin(), values.end());
    }

    AafReport report;
    report.proposal = 2;
    const EdbGroupRow* nation = edb.find(GroupKind::Nation);
    for (const UfLifeRow& uf_row : table.rows()) {
        const EdbGroupRow* group = edb.find(GroupKind::ByUf, uf_row.uf_num);
        if (group == nullptr || group->count == 0) {
            report.warnings.push_back(group_label(uf_row.uf_num, std::nullopt) +
                                      ": empty group skipped");
            continue;
        }
        auto it = uf_lifetimes.find(uf_row.uf_num);
        report.results.push_back(make_result(
            uf_row.uf_num, std::nullopt, *group, nation->per_capita, cfg, rate,
            it != uf_lifetimes.end() ? &it->second : nullptr, report.warnings));
    }
    return report;
}

std::vector<ReformGap> reform_gap(const UfLifeTable& table) {
    std::vector<ReformGap> gaps;
    gaps.reserve(table.size());
    for (const UfLifeRow& row : table.rows()) {
        gaps.push_back({row.uf_num, row.le_birth_male - 70.0});
    }
    return gaps;
}

}  // namespace pension
