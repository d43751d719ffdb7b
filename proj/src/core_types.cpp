#include "pension/core_types.hpp"

#include <algorithm>
#include <stdexcept>

#include "pension/errors.hpp"
#include "pension/reference_data.hpp"

namespace pension {

Sex sex_from_index(int index) {
    if (index == 1) return Sex::Male;
    if (index == 2) return Sex::Female;
    throw std::invalid_argument("sex index must be 1 (male) or 2 (female)");
}

char sex_code(Sex s) { return s == Sex::Male ? 'M' : 'F'; }

std::string_view sex_name(Sex s) { return s == Sex::Male ? "male" : "female"; }

UfLifeTable::UfLifeTable(std::vector<UfLifeRow> rows) : rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end(),
              [](const UfLifeRow& a, const UfLifeRow& b) { return a.uf_num < b.uf_num; });
}

bool UfLifeTable::has(int uf_num) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), uf_num,
                               [](const UfLifeRow& r, int n) { return r.uf_num < n; });
    return it != rows_.end() && it->uf_num == uf_num;
}

const UfLifeRow& UfLifeTable::row(int uf_num) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), uf_num,
                               [](const UfLifeRow& r, int n) { return r.uf_num < n; });
    if (it == rows_.end() || it->uf_num != uf_num) {
        std::string label = std::to_string(uf_num);
        if (uf_num >= 1 && uf_num <= 27) {
            label += " (";
            label += uf_from_number(uf_num).abbrev;
            label += ")";
        }
        throw ReferenceError("no life-table row for UF " + label);
    }
    return *it;
}

double UfLifeTable::expected_age_at_death(int uf_num, Sex sex, LeBasis basis) const {
    const UfLifeRow& r = row(uf_num);
    if (basis == LeBasis::AtBirth) {
        return sex == Sex::Male ? r.le_birth_male : r.le_birth_female;
    }
    return sex == Sex::Male ? r.le_after65_male : r.le_after65_female;
}

ValidationReport validate_records(const std::vector<BeneficiaryRecord>& records,
                                  const SampleWindow& window) {
    ValidationReport report;
    report.total = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const BeneficiaryRecord& rec = records[i];
        if (rec.grant_date < rec.birth_date) {
            report.rejects.push_back({i, rec.id, "date order"});
            continue;
        }
        if (rec.grant_date < window.first || rec.grant_date > window.last) {
            report.rejects.push_back({i, rec.id, "sample window"});
            continue;
        }
        if (rec.uf_num < 1 || rec.uf_num > 27) {
            report.rejects.push_back({i, rec.id, "unknown UF"});
            continue;
        }
        ++report.accepted;
        if (rec.survivor) ++report.excluded_survivor;
    }
    return report;
}

std::vector<BeneficiaryRecord> analysis_set(const std::vector<BeneficiaryRecord>& records,
                                            const SampleWindow& window) {
    std::vector<BeneficiaryRecord> out;
    out.reserve(records.size());
    for (const BeneficiaryRecord& rec : records) {
        if (rec.survivor) continue;
        if (rec.grant_date < rec.birth_date) continue;
        if (rec.grant_date < window.first || rec.grant_date > window.last) continue;
        if (rec.uf_num < 1 || rec.uf_num > 27) continue;
        out.push_back(rec);
    }
    return out;
}

}  // namespace pension
