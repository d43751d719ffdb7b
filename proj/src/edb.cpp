#include "pension/edb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "pension/dates.hpp"

namespace pension {

namespace {

// Fixed-order pairwise reduction; deterministic for a given ordering and
// accurate to ~1 ulp per level.
double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

struct GroupAccumulator {
    std::size_t count = 0;
    std::vector<double> values;
};

}  // namespace

RemainingLifetime remaining_months(double expected_age_at_death_years,
                                   int age_at_reference_months, LeBasis basis) {
    if (expected_age_at_death_years < 0.0) {
        throw std::domain_error("expected age at death must be >= 0");
    }
    const double diff = expected_age_at_death_years * 12.0 - age_at_reference_months;
    const long long months = std::llround(diff);
    return RemainingLifetime{months > 0 ? static_cast<int>(months) : 0, basis};
}

double edb_individual(const RemainingLifetime& lt, const MoneyConfig& cfg) {
    if (!(cfg.benefit_b > 0.0)) throw std::domain_error("benefit must be positive");
    return cfg.benefit_b * annuity_pv(lt.months, monthly_rate(cfg.annual_rate));
}

double currency_convert(double value_eur, const MoneyConfig& cfg) {
    if (!(cfg.exchange_rate > 0.0)) throw std::domain_error("exchange rate must be positive");
    return value_eur * cfg.exchange_rate;
}

const EdbGroupRow* EdbReport::find(GroupKind kind, int uf_num,
                                   std::optional<Sex> sex) const {
    for (const EdbGroupRow& row : rows) {
        if (row.kind != kind) continue;
        if (row.uf_num != uf_num) continue;
        if (row.sex != sex) continue;
        return &row;
    }
    return nullptr;
}

double EdbReport::national_total() const {
    const EdbGroupRow* nation = find(GroupKind::Nation);
    return nation != nullptr ? nation->total_edb : 0.0;
}

std::size_t EdbReport::national_count() const {
    const EdbGroupRow* nation = find(GroupKind::Nation);
    return nation != nullptr ? nation->count : 0;
}

EdbReport edb_aggregate(std::span<const BeneficiaryRecord> records,
                        const UfLifeTable& table, const MoneyConfig& cfg,
                        LeBasis basis, LeResolution resolution) {
    (void)resolution;  // single resolution today: one expectancy per UF x sex
    if (!(cfg.benefit_b > 0.0)) throw std::domain_error("benefit must be positive");

    for (const BeneficiaryRecord& rec : records) {
        if (rec.kind != BenefitKind::Elderly || rec.survivor) {
            throw std::invalid_argument(
                "EDB aggregation expects the elderly analysis set "
                "(kind=Elderly, survivor=false); run validation first");
        }
    }

    // Ascending (uf, sex, id) order fixes the reduction path.
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const BeneficiaryRecord& ra = records[a];
        const BeneficiaryRecord& rb = records[b];
        if (ra.uf_num != rb.uf_num) return ra.uf_num < rb.uf_num;
        if (ra.sex != rb.sex) return sex_index(ra.sex) < sex_index(rb.sex);
        return ra.id < rb.id;
    });

    const MonthlyRate rate = monthly_rate(cfg.annual_rate);
    std::map<std::pair<int, int>, GroupAccumulator> groups;  // (uf, sex index)
    for (std::size_t idx : order) {
        const BeneficiaryRecord& rec = records[idx];
        const double age_at_death = table.expected_age_at_death(rec.uf_num, rec.sex, basis);
        const int age_months = months_between(rec.birth_date, cfg.reference_date);
        const RemainingLifetime lt = remaining_months(age_at_death, age_months, basis);
        const double value = cfg.benefit_b * annuity_pv(lt.months, rate);
        GroupAccumulator& acc = groups[{rec.uf_num, sex_index(rec.sex)}];
        ++acc.count;
        acc.values.push_back(value);
    }

    // Per-(UF, sex) totals, then exact sums upward.
    struct Cell {
        std::size_t count = 0;
        double total = 0.0;
    };
    std::map<int, std::array<Cell, 2>> by_uf;  // uf -> {male, female}
    for (const UfLifeRow& row : table.rows()) by_uf[row.uf_num];  // full grid
    for (auto& [key, acc] : groups) {
        Cell& cell = by_uf[key.first][static_cast<std::size_t>(key.second - 1)];
        cell.count = acc.count;
        cell.total = pairwise_sum(acc.values);
    }

    std::array<Cell, 2> by_sex;
    Cell nation;
    std::map<int, Cell> uf_totals;
    for (const auto& [uf, cells] : by_uf) {
        Cell uf_cell;
        for (std::size_t j = 0; j < 2; ++j) {
            by_sex[j].count += cells[j].count;
            by_sex[j].total += cells[j].total;
            uf_cell.count += cells[j].count;
            uf_cell.total += cells[j].total;
        }
        uf_totals[uf] = uf_cell;
    }
    nation.count = by_sex[0].count + by_sex[1].count;
    nation.total = by_sex[0].total + by_sex[1].total;

    EdbReport report;
    report.basis = basis;
    const double national = nation.total;

    auto make_row = [&](GroupKind kind, int uf, std::optional<Sex> sex, const Cell& cell) {
        EdbGroupRow row;
        row.kind = kind;
        row.uf_num = uf;
        row.sex = sex;
        row.count = cell.count;
        row.total_edb = cell.total;
        row.per_capita = cell.count > 0 ? cell.total / static_cast<double>(cell.count) : 0.0;
        row.share_pct = national > 0.0 ? cell.total / national * 100.0 : 0.0;
        return row;
    };

    auto push_sorted = [&](std::vector<EdbGroupRow> rows) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const EdbGroupRow& a, const EdbGroupRow& b) {
                             if (a.total_edb != b.total_edb) return a.total_edb > b.total_edb;
                             if (a.uf_num != b.uf_num) return a.uf_num < b.uf_num;
                             if (a.sex.has_value() && b.sex.has_value()) {
                                 return sex_index(*a.sex) < sex_index(*b.sex);
                             }
                             return false;
                         });
        double cum = 0.0;
        for (EdbGroupRow& row : rows) {
            cum += row.share_pct;
            row.cum_share_pct = cum;
            report.rows.push_back(std::move(row));
        }
    };

    {
        EdbGroupRow row = make_row(GroupKind::Nation, 0, std::nullopt, nation);
        row.cum_share_pct = row.share_pct;
        report.rows.push_back(row);
    }
    push_sorted({make_row(GroupKind::BySex, 0, Sex::Male, by_sex[0]),
                 make_row(GroupKind::BySex, 0, Sex::Female, by_sex[1])});
    {
        std::vector<EdbGroupRow> rows;
        rows.reserve(uf_totals.size());
        for (const auto& [uf, cell] : uf_totals) {
            rows.push_back(make_row(GroupKind::ByUf, uf, std::nullopt, cell));
        }
        push_sorted(std::move(rows));
    }
    {
        std::vector<EdbGroupRow> rows;
        rows.reserve(by_uf.size() * 2);
        for (const auto& [uf, cells] : by_uf) {
            rows.push_back(make_row(GroupKind::ByUfSex, uf, Sex::Male, cells[0]));
            rows.push_back(make_row(GroupKind::ByUfSex, uf, Sex::Female, cells[1]));
        }
        push_sorted(std::move(rows));
    }
    return report;
}

}  // namespace pension
