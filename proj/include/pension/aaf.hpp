#ifndef PENSION_AAF_HPP
#define PENSION_AAF_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pension/annuity.hpp"
#include "pension/core_types.hpp"
#include "pension/edb.hpp"

namespace pension {

// target per-capita minus group per-capita.
double benefit_difference(double target_per_capita, double group_per_capita);

// Signed month offset whose annuity value closes a per-capita gap d:
// w = sign(d) * invert_annuity(|d|, b, r); zero gap needs no change.
// |d| at or above b/r has no finite solution (InfeasibleTargetError).
int solve_offset(double d, double benefit, MonthlyRate rate);

// Per-capita value of a group after granting (w > 0) or withholding
// (w < 0) the first |w| benefit months, valued from the reference date.
double adjusted_per_capita(double group_per_capita, int w_months, double benefit,
                           MonthlyRate rate);

// Benefit-age adjustment for one group.
struct AafResult {
    int uf_num = 0;
    std::optional<Sex> sex;        // nullopt for the UF-only proposal
    std::size_t group_count = 0;
    double group_per_capita = 0.0;  // EUR
    double target_per_capita = 0.0; // EUR
    double d = 0.0;                 // target - group
    int w_months = 0;               // signed offset; sign(w) = sign(d)
    int z_months = 0;               // |w|
    double factor = 1.0;            // (65*12 + w) / (65*12)
    double new_age_years = 65.0;    // factor * 65
    std::size_t clamped = 0;        // individuals with LT + w < 0
    bool infeasible = false;        // |d| >= b/r; offset left at 0
};

struct AafReport {
    int proposal = 1;
    LeBasis basis = LeBasis::AtBirth;
    std::vector<AafResult> results;   // UF order; male before female
    std::vector<std::string> warnings;
};

// Target for the by-UF-and-sex proposal: the national per-capita of the
// same sex (the formula's default) or the sex-free national per-capita.
enum class Proposal1Target { PerSex, National };

// 54-way adjustment (UF x sex). Uses life expectancy at birth: groups are
// equalized on the population that may never reach 65. Empty groups are
// skipped with a warning; infeasible gaps abort the group with a warning.
AafReport aaf_proposal1(std::span<const BeneficiaryRecord> records,
                        const UfLifeTable& table, const MoneyConfig& cfg,
                        Proposal1Target target = Proposal1Target::PerSex);

// 27-way adjustment (UF only); target is the national per-capita over all
// elderly beneficiaries.
AafReport aaf_proposal2(std::span<const BeneficiaryRecord> records,
                        const UfLifeTable& table, const MoneyConfig& cfg);

// Gap between male life expectancy at birth and a proposed benefit age of
// 70, per UF.
struct ReformGap {
    int uf_num = 0;
    double gap_years = 0.0;  // le_birth_male - 70
};

std::vector<ReformGap> reform_gap(const UfLifeTable& table);

}  // namespace pension

#endif
