#include "pension/reference_data.hpp"

#include <array>

#include "pension/errors.hpp"

namespace pension {

namespace {

constexpr std::array<UfCode, 27> kUfCodes = {{
    {1, "AL", "Alagoas"},
    {2, "AM", "Amazonas"},
    {3, "BA", "Bahia"},
    {4, "CE", "Ceará"},
    {5, "MS", "Mato Grosso do Sul"},
    {6, "ES", "Espírito Santo"},
    {7, "GO", "Goiás"},
    {8, "MA", "Maranhão"},
    {9, "MT", "Mato Grosso"},
    {10, "MG", "Minas Gerais"},
    {11, "PA", "Pará"},
    {12, "PB", "Paraíba"},
    {13, "PR", "Paraná"},
    {14, "PE", "Pernambuco"},
    {15, "PI", "Piauí"},
    {16, "RJ", "Rio de Janeiro"},
    {17, "RN", "Rio Grande do Norte"},
    {18, "RS", "Rio Grande do Sul"},
    {19, "SC", "Santa Catarina"},
    {20, "SP", "São Paulo"},
    {21, "SE", "Sergipe"},
    {22, "DF", "Distrito Federal"},
    {23, "AC", "Acre"},
    {24, "AP", "Amapá"},
    {25, "RO", "Rondônia"},
    {26, "RR", "Roraima"},
    {27, "TO", "Tocantins"},
}};

// Columns: birth T/M/F, after-60 T/M/F, after-65 T/M/F (expected age at
// death, years).
constexpr std::array<UfLifeRow, 27> kLifeRows = {{
    {1, 70.73, 66.88, 74.77, 80.6, 78.6, 82.4, 82.2, 80.4, 83.7},
    {2, 74.26, 71.23, 77.45, 80.5, 78.8, 82.1, 81.9, 80.5, 83.4},
    {3, 74.61, 71.40, 77.97, 81.7, 79.5, 83.8, 83.1, 81.1, 84.9},
    {4, 73.51, 69.47, 77.75, 81.5, 79.8, 82.9, 82.8, 81.4, 84.1},
    {5, 76.29, 73.11, 79.63, 82.2, 80.3, 84.0, 83.5, 81.8, 85.1},
    {6, 76.28, 72.82, 79.91, 84.1, 82.0, 86.1, 85.3, 83.3, 87.0},
    {7, 75.88, 72.67, 79.25, 81.3, 79.9, 82.6, 82.6, 81.5, 83.6},
    {8, 71.48, 67.69, 75.45, 80.4, 78.3, 82.4, 82.0, 80.2, 83.8},
    {9, 75.66, 72.19, 79.30, 81.4, 80.0, 83.0, 82.8, 81.6, 84.1},
    {10, 76.96, 73.66, 80.42, 83.1, 81.6, 84.5, 84.3, 83.0, 85.5},
    {11, 74.54, 71.58, 77.65, 80.55, 78.9, 82.2, 82.0, 80.5, 83.5},
    {12, 72.54, 69.13, 76.12, 81.2, 79.7, 82.6, 82.6, 81.2, 83.6},
    {13, 76.72, 73.55, 80.04, 82.7, 80.9, 84.3, 83.8, 82.3, 85.2},
    {14, 71.97, 68.55, 75.56, 81.2, 79.3, 82.7, 82.5, 80.9, 83.8},
    {15, 72.52, 69.44, 75.75, 79.8, 77.8, 81.6, 81.3, 79.6, 82.8},
    {16, 75.88, 71.86, 80.09, 82.4, 80.2, 84.1, 83.7, 81.7, 85.2},
    {17, 73.65, 69.96, 77.52, 82.4, 80.3, 84.3, 83.7, 81.7, 85.2},
    {18, 77.26, 73.78, 80.92, 83.1, 80.8, 85.0, 84.2, 82.2, 85.9},
    {19, 77.49, 74.33, 80.80, 83.9, 81.6, 86.0, 85.0, 82.8, 86.8},
    {20, 76.79, 72.94, 80.83, 83.2, 81.2, 84.9, 84.4, 82.6, 85.9},
    {21, 74.04, 70.73, 77.52, 80.6, 78.6, 82.4, 82.1, 80.3, 83.6},
    {22, 77.45, 73.94, 81.13, 83.3, 81.1, 85.2, 84.3, 82.3, 85.9},
    {23, 74.10, 71.39, 76.95, 81.6, 79.9, 83.4, 83.1, 81.5, 84.8},
    {24, 73.28, 69.55, 77.19, 81.8, 80.5, 83.2, 83.2, 81.9, 84.4},
    {25, 73.96, 71.13, 76.94, 79.5, 78.3, 81.0, 81.0, 79.9, 82.2},
    {26, 72.94, 70.33, 75.68, 79.9, 79.0, 80.8, 81.3, 80.4, 82.3},
    {27, 74.01, 71.58, 76.57, 81.3, 80.1, 82.7, 82.7, 81.6, 83.8},
}};

void check_bundle() {
    if (kLifeRows.size() != 27 || kUfCodes.size() != 27) {
        throw IntegrityError("reference bundle must hold exactly 27 UFs");
    }
    for (std::size_t i = 0; i < 27; ++i) {
        const UfCode& code = kUfCodes[i];
        if (code.number != static_cast<int>(i) + 1 || code.abbrev.size() != 2 ||
            code.name.empty()) {
            throw IntegrityError("UF code register is corrupt at position " +
                                 std::to_string(i));
        }
        const UfLifeRow& r = kLifeRows[i];
        if (r.uf_num != code.number) {
            throw IntegrityError("life-table row order is corrupt at UF " +
                                 std::to_string(code.number));
        }
        const std::array<std::array<double, 3>, 3> by_sex = {{
            {r.le_birth_total, r.le_after60_total, r.le_after65_total},
            {r.le_birth_male, r.le_after60_male, r.le_after65_male},
            {r.le_birth_female, r.le_after60_female, r.le_after65_female},
        }};
        for (const auto& seq : by_sex) {
            for (double v : seq) {
                if (!(v > 50.0 && v < 100.0)) {
                    throw IntegrityError("life expectancy out of range for UF " +
                                         std::to_string(r.uf_num));
                }
            }
            // Survivorship: expected age at death never decreases with
            // attained age.
            if (!(seq[2] >= seq[1] && seq[1] >= seq[0])) {
                throw IntegrityError("survivorship ordering violated for UF " +
                                     std::to_string(r.uf_num));
            }
        }
        if (!(r.le_birth_female >= r.le_birth_male)) {
            throw IntegrityError("female birth expectancy below male for UF " +
                                 std::to_string(r.uf_num));
        }
    }
}

}  // namespace

ReferenceTables load_reference_tables() {
    check_bundle();
    ReferenceTables tables;
    tables.life_table =
        UfLifeTable(std::vector<UfLifeRow>(kLifeRows.begin(), kLifeRows.end()));
    tables.uf_codes.assign(kUfCodes.begin(), kUfCodes.end());
    return tables;
}

const UfCode& uf_from_number(int number) {
    if (number < 1 || number > 27) {
        throw ReferenceError("UF number out of range: " + std::to_string(number));
    }
    return kUfCodes[static_cast<std::size_t>(number - 1)];
}

std::optional<int> uf_number_from_abbrev(std::string_view abbrev) {
    for (const UfCode& code : kUfCodes) {
        if (code.abbrev == abbrev) return code.number;
    }
    return std::nullopt;
}

}  // namespace pension
