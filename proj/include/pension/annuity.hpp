#ifndef PENSION_ANNUITY_HPP
#define PENSION_ANNUITY_HPP

namespace pension {

// Effective discount rate per month, > -1. Strong type so annual and
// monthly rates cannot be mixed up at call sites.
struct MonthlyRate {
    double value = 0.0;
};

// (1 + annual)^(1/12) - 1. Throws std::domain_error for annual <= -1.
MonthlyRate monthly_rate(double annual_rate);

// Present value of n unit payments at month ends:
//   (1 - (1+r)^-n) / r   for r != 0,   n for r = 0.
// Evaluated via expm1/log1p so small rates do not cancel.
double annuity_pv(int months, MonthlyRate rate);

// How a fractional solved term becomes an integer month count.
enum class TermRounding { NearestTiesToZero, Down, Up };

// Inverts target = b * annuity_pv(z, r) for the term z, then rounds.
// Preconditions: target >= 0 (std::domain_error) and, when r > 0,
// target < b / r (InfeasibleTargetError: no finite term reaches a value
// at or above the perpetuity bound).
int invert_annuity(double target_pv, double benefit, MonthlyRate rate,
                   TermRounding rounding = TermRounding::NearestTiesToZero);

}  // namespace pension

#endif
