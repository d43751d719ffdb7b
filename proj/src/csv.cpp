#include "pension/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pension/errors.hpp"

namespace pension {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
    throw CsvError(path.string() + ": line " + std::to_string(line) + ": " + what);
}

int to_int(const std::string& s, const std::filesystem::path& path, std::size_t line,
           const char* field) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(path, line, std::string("invalid integer in ") + field + ": '" + s + "'");
    }
    return value;
}

long long to_llong(const std::string& s, const std::filesystem::path& path,
                   std::size_t line, const char* field) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(path, line, std::string("invalid integer in ") + field + ": '" + s + "'");
    }
    return value;
}

double to_double(const std::string& s, const std::filesystem::path& path,
                 std::size_t line, const char* field) {
    try {
        std::size_t pos = 0;
        const double value = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        fail(path, line, std::string("invalid number in ") + field + ": '" + s + "'");
    }
}

Date to_date(const std::string& s, const std::filesystem::path& path, std::size_t line,
             const char* field) {
    const auto parsed = parse_date(s);
    if (!parsed.has_value()) {
        fail(path, line, std::string("invalid ISO date in ") + field + ": '" + s + "'");
    }
    return *parsed;
}

void expect_header(const CsvTable& table, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
    if (table.header != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) want += ',';
            want += expected[i];
        }
        fail(path, 1, "header must be exactly '" + want + "'");
    }
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            table.header = split_line(line);
            if (table.header.empty()) fail(path, 1, "missing header row");
            continue;
        }
        if (line.empty()) continue;
        table.rows.push_back(split_line(line));
    }
    if (line_no == 0) throw CsvError(path.string() + ": empty file, header row required");
    return table;
}

std::vector<BeneficiaryRecord> read_beneficiaries_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    expect_header(table, {"id", "uf_num", "sex", "birth_date", "grant_date", "kind", "survivor"},
                  path);
    std::vector<BeneficiaryRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = i + 2;
        if (row.size() != 7) fail(path, line, "expected 7 fields, got " + std::to_string(row.size()));
        BeneficiaryRecord rec;
        rec.id = row[0];
        if (rec.id.empty()) fail(path, line, "empty id");
        rec.uf_num = to_int(row[1], path, line, "uf_num");
        if (row[2] == "M") rec.sex = Sex::Male;
        else if (row[2] == "F") rec.sex = Sex::Female;
        else fail(path, line, "sex must be M or F, got '" + row[2] + "'");
        rec.birth_date = to_date(row[3], path, line, "birth_date");
        rec.grant_date = to_date(row[4], path, line, "grant_date");
        if (row[5] == "E") rec.kind = BenefitKind::Elderly;
        else if (row[5] == "D") rec.kind = BenefitKind::Disabled;
        else fail(path, line, "kind must be E or D, got '" + row[5] + "'");
        if (row[6] == "0") rec.survivor = false;
        else if (row[6] == "1") rec.survivor = true;
        else fail(path, line, "survivor must be 0 or 1, got '" + row[6] + "'");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<EconomicRow> read_economics_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    expect_header(table,
                  {"uf_num", "hdi", "income_pc", "le_birth", "density", "population",
                   "bnf_total", "bnf_elderly", "bnf_disabled"},
                  path);
    std::vector<EconomicRow> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = i + 2;
        if (row.size() != 9) fail(path, line, "expected 9 fields, got " + std::to_string(row.size()));
        EconomicRow rec;
        rec.uf_num = to_int(row[0], path, line, "uf_num");
        rec.hdi = to_double(row[1], path, line, "hdi");
        rec.income_pc = to_double(row[2], path, line, "income_pc");
        rec.le_birth = to_double(row[3], path, line, "le_birth");
        rec.density = to_double(row[4], path, line, "density");
        rec.population = to_llong(row[5], path, line, "population");
        rec.bnf_total = to_llong(row[6], path, line, "bnf_total");
        rec.bnf_elderly = to_llong(row[7], path, line, "bnf_elderly");
        rec.bnf_disabled = to_llong(row[8], path, line, "bnf_disabled");
        if (rec.population <= 0) fail(path, line, "population must be positive");
        if (rec.bnf_total < 0 || rec.bnf_elderly < 0 || rec.bnf_disabled < 0) {
            fail(path, line, "beneficiary counts must be >= 0");
        }
        rows.push_back(rec);
    }
    return rows;
}

}  // namespace pension
