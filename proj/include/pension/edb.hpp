#ifndef PENSION_EDB_HPP
#define PENSION_EDB_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pension/annuity.hpp"
#include "pension/core_types.hpp"

namespace pension {

// Expected remaining lifetime in whole months past the reference date.
struct RemainingLifetime {
    int months = 0;  // >= 0; negative differences clamp to zero
    LeBasis basis = LeBasis::At65;
};

// Months from `age_at_reference_months` until the expected age at death,
// rounded to the nearest month and floored at zero.
RemainingLifetime remaining_months(double expected_age_at_death_years,
                                   int age_at_reference_months, LeBasis basis);

// Present value of the monthly benefit over the remaining lifetime:
// benefit_b * annuity_pv(months, monthly_rate(annual_rate)).
double edb_individual(const RemainingLifetime& lt, const MoneyConfig& cfg);

// EUR -> BRL at the configured exchange rate.
double currency_convert(double value_eur, const MoneyConfig& cfg);

// --- aggregation -------------------------------------------------------------

enum class GroupKind { Nation, BySex, ByUf, ByUfSex };

struct EdbGroupRow {
    GroupKind kind = GroupKind::Nation;
    int uf_num = 0;                // 0 when the group has no UF dimension
    std::optional<Sex> sex;        // nullopt when no sex dimension
    std::size_t count = 0;
    double total_edb = 0.0;        // EUR
    double per_capita = 0.0;       // EUR; 0 for empty groups
    double share_pct = 0.0;        // of the national total
    double cum_share_pct = 0.0;    // accumulated in stored (descending) order
};

// Group totals at every level. Within each kind, rows are stored in
// descending total order (ties: UF number ascending, male before female),
// and cumulative shares follow that order. Upper levels are exact sums of
// the (UF, sex) pairwise-summed totals, so additivity holds bit-for-bit.
struct EdbReport {
    LeBasis basis = LeBasis::At65;
    std::vector<EdbGroupRow> rows;

    const EdbGroupRow* find(GroupKind kind, int uf_num = 0,
                            std::optional<Sex> sex = std::nullopt) const;
    double national_total() const;
    std::size_t national_count() const;
};

enum class LeResolution { ByUfAndSex };

// Aggregates individual expected discounted benefits over the elderly
// analysis set. Records must be kind=Elderly with survivor=false
// (std::invalid_argument otherwise); a UF absent from `table` raises
// ReferenceError. Totals are independent of the input order: individuals
// are summed pairwise in ascending (uf, sex, id) order.
EdbReport edb_aggregate(std::span<const BeneficiaryRecord> records,
                        const UfLifeTable& table, const MoneyConfig& cfg,
                        LeBasis basis,
                        LeResolution resolution = LeResolution::ByUfAndSex);

}  // namespace pension

#endif
