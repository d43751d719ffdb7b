#include "pension/annuity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pension/errors.hpp"

namespace pension {

namespace {

int round_term(double z, TermRounding rounding) {
    switch (rounding) {
        case TermRounding::Down:
            return static_cast<int>(std::floor(z));
        case TermRounding::Up:
            return static_cast<int>(std::ceil(z));
        case TermRounding::NearestTiesToZero:
            break;
    }
    double base = std::floor(z);
    double frac = z - base;
    // Exact half rounds toward zero; z is nonnegative here.
    return static_cast<int>(base) + (frac > 0.5 ? 1 : 0);
}

}  // namespace

MonthlyRate monthly_rate(double annual_rate) {
    if (!(annual_rate > -1.0)) {
        throw std::domain_error("annual rate must exceed -1, got " +
                                std::to_string(annual_rate));
    }
    return MonthlyRate{std::expm1(std::log1p(annual_rate) / 12.0)};
}

double annuity_pv(int months, MonthlyRate rate) {
    if (months < 0) throw std::domain_error("annuity term must be >= 0");
    if (rate.value == 0.0) return static_cast<double>(months);
    return -std::expm1(-months * std::log1p(rate.value)) / rate.value;
}

int invert_annuity(double target_pv, double benefit, MonthlyRate rate,
                   TermRounding rounding) {
    if (!(benefit > 0.0)) throw std::domain_error("benefit must be positive");
    if (target_pv < 0.0) throw std::domain_error("target present value must be >= 0");
    if (target_pv == 0.0) return 0;
    const double r = rate.value;
    if (r == 0.0) return round_term(target_pv / benefit, rounding);
    if (target_pv >= benefit / r) {
        throw InfeasibleTargetError("target " + std::to_string(target_pv) +
                                    " is at or above the perpetuity value " +
                                    std::to_string(benefit / r));
    }
    const double z = -std::log1p(-target_pv * r / benefit) / std::log1p(r);
    return round_term(z, rounding);
}

}  // namespace pension
