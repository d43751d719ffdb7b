#ifndef PENSION_CORE_TYPES_HPP
#define PENSION_CORE_TYPES_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pension/dates.hpp"

namespace pension {

// Sex carries the conventional 1-based group index: 1 = male, 2 = female.
enum class Sex : int { Male = 1, Female = 2 };

constexpr int sex_index(Sex s) { return static_cast<int>(s); }
Sex sex_from_index(int index);          // 1 or 2
char sex_code(Sex s);                   // 'M' / 'F'
std::string_view sex_name(Sex s);       // "male" / "female"

// One of the 27 Brazilian federal units. `number` is the 1..27 code used
// across all bundled tables; number, abbreviation and name map bijectively.
struct UfCode {
    int number = 0;
    std::string_view abbrev;
    std::string_view name;
};

enum class BenefitKind { Elderly, Disabled };

// One person drawn from the benefit-grant microdata sample.
struct BeneficiaryRecord {
    std::string id;       // opaque token, unique within a file
    int uf_num = 0;
    Sex sex = Sex::Male;
    Date birth_date;
    Date grant_date;
    BenefitKind kind = BenefitKind::Elderly;
    bool survivor = false;  // entitled as survivor of a previous beneficiary
};

// Per-UF indicator row used by the regression front end.
struct EconomicRow {
    int uf_num = 0;
    double hdi = 0.0;        // X1, unitless 0..1
    double income_pc = 0.0;  // X2, currency per month
    double le_birth = 0.0;   // X3, years
    double density = 0.0;    // X4, people per km^2
    long long population = 0;
    long long bnf_total = 0;
    long long bnf_elderly = 0;
    long long bnf_disabled = 0;
};

// Monetary assumptions shared by the present-value computations.
struct MoneyConfig {
    double benefit_b = 1.0;       // monthly benefit, > 0
    double annual_rate = 0.06;    // discount rate per year, > -1
    double exchange_rate = 4.35;  // BRL per EUR, > 0
    Date reference_date{2018, 4, 6};
};

// Which life-expectancy column feeds a remaining-lifetime computation.
enum class LeBasis { AtBirth, At65 };

// Life expectancies for one UF. The after-60 / after-65 columns are the
// expected AGE AT DEATH conditional on surviving to that age (values near
// 80-87), not residual years; remaining-lifetime math subtracts current age.
struct UfLifeRow {
    int uf_num = 0;
    double le_birth_total = 0.0;
    double le_birth_male = 0.0;
    double le_birth_female = 0.0;
    double le_after60_total = 0.0;
    double le_after60_male = 0.0;
    double le_after60_female = 0.0;
    double le_after65_total = 0.0;
    double le_after65_male = 0.0;
    double le_after65_female = 0.0;
};

// Life-expectancy rows keyed by UF number. Immutable after construction;
// safe to share across threads.
class UfLifeTable {
  public:
    UfLifeTable() = default;
    explicit UfLifeTable(std::vector<UfLifeRow> rows);

    // Throws ReferenceError naming the UF when absent.
    const UfLifeRow& row(int uf_num) const;
    bool has(int uf_num) const;

    // Expected age at death for the given sex and basis.
    double expected_age_at_death(int uf_num, Sex sex, LeBasis basis) const;

    std::size_t size() const { return rows_.size(); }
    const std::vector<UfLifeRow>& rows() const { return rows_; }

  private:
    std::vector<UfLifeRow> rows_;  // sorted by uf_num
};

// --- record validation -----------------------------------------------------

// Grant dates must fall inside the sample window (closed interval).
struct SampleWindow {
    Date first{2018, 1, 2};
    Date last{2018, 4, 6};
};

struct ValidationIssue {
    std::size_t row = 0;  // 0-based position in the input order
    std::string id;
    std::string reason;
};

// Survivor records are flagged rather than dropped so reports can state
// both the accepted and the analysis-set counts.
struct ValidationReport {
    std::size_t total = 0;
    std::size_t accepted = 0;            // valid rows, survivors included
    std::size_t excluded_survivor = 0;   // accepted but flagged out
    std::vector<ValidationIssue> rejects;

    std::size_t rejected() const { return rejects.size(); }
    std::size_t analysis_count() const { return accepted - excluded_survivor; }
};

ValidationReport validate_records(const std::vector<BeneficiaryRecord>& records,
                                  const SampleWindow& window = {});

// Accepted, non-survivor records in input order.
std::vector<BeneficiaryRecord> analysis_set(const std::vector<BeneficiaryRecord>& records,
                                            const SampleWindow& window = {});

}  // namespace pension

#endif
