#ifndef PENSION_CSV_HPP
#define PENSION_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "pension/core_types.hpp"

namespace pension {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // data rows only
};

// Minimal comma-separated reader: UTF-8, no quoting, header row required,
// CRLF tolerated. Throws CsvError naming the file and line.
CsvTable read_csv(const std::filesystem::path& path);

// Columns: id,uf_num,sex,birth_date,grant_date,kind,survivor
// with sex in {M,F}, kind in {E,D}, survivor in {0,1}, ISO dates.
std::vector<BeneficiaryRecord> read_beneficiaries_csv(const std::filesystem::path& path);

// Columns: uf_num,hdi,income_pc,le_birth,density,population,
//          bnf_total,bnf_elderly,bnf_disabled
std::vector<EconomicRow> read_economics_csv(const std::filesystem::path& path);

}  // namespace pension

#endif
