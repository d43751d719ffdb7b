#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "pension/csv.hpp"
#include "pension/edb.hpp"
#include "pension/reference_data.hpp"
#include "pension/reports.hpp"

namespace fs = std::filesystem;
using namespace pension;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pension_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PENSION_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

const fs::path kData = PENSION_DATA_DIR;

}  // namespace

TEST_CASE("exit codes") {
    TempDir tmp;
    CHECK(run_cli("definitely-not-a-subcommand") == 1);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("edb " + (tmp.path / "missing.csv").string()) == 2);
    CHECK(run_cli("edb " + (kData / "beneficiaries_sample.csv").string() +
                  " --rate -2 -o " + tmp.path.string()) == 1);
    CHECK(run_cli("edb " + (kData / "beneficiaries_sample.csv").string() +
                  " --reference-date 2018-13-01 -o " + tmp.path.string()) == 1);
    CHECK(run_cli("cluster --k 0 -o " + tmp.path.string()) == 1);
    CHECK(run_cli("cluster --method kmeans --k 99 -o " + tmp.path.string()) == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("malformed rows exit 2 with diagnostics") {
    TempDir tmp;
    const fs::path bad = tmp.path / "bad.csv";
    std::ofstream(bad) << "id,uf_num,sex,birth_date,grant_date,kind,survivor\n"
                          "B01,19,Q,1950-01-01,2018-02-01,E,0\n";
    CHECK(run_cli("edb " + bad.string() + " -o " + tmp.path.string()) == 2);
    CHECK(run_cli("validate " + bad.string() + " -o " + tmp.path.string()) == 2);
}

TEST_CASE("reform emits all 27 UFs with the documented extremes") {
    TempDir tmp;
    REQUIRE(run_cli("reform -o " + tmp.path.string()) == 0);
    const auto parsed = read_csv(tmp.path / "reform_report.csv");
    REQUIRE(parsed.rows.size() == 27);
    std::string lo = parsed.rows[0][1], hi = parsed.rows[0][1];
    for (const auto& row : parsed.rows) {
        if (std::stod(row[1]) < std::stod(lo)) lo = row[1];
        if (std::stod(row[1]) > std::stod(hi)) hi = row[1];
    }
    CHECK(lo == "-3.12");
    CHECK(hi == "4.33");
    CHECK(fs::exists(tmp.path / "run_manifest.json"));
}

TEST_CASE("empty but valid input yields a zeroed report and exit 0") {
    TempDir tmp;
    const fs::path empty = tmp.path / "empty.csv";
    std::ofstream(empty) << "id,uf_num,sex,birth_date,grant_date,kind,survivor\n";
    REQUIRE(run_cli("edb " + empty.string() + " -o " + tmp.path.string()) == 0);
    const auto parsed = read_csv(tmp.path / "edb_report.csv");
    REQUIRE_FALSE(parsed.rows.empty());
    CHECK(parsed.rows[0][0] == "nation");
    CHECK(parsed.rows[0][3] == "0");
    CHECK(parsed.rows[0][4] == "0.00");
}

TEST_CASE("aaf on a single-UF population produces unit factors") {
    TempDir tmp;
    const fs::path input = tmp.path / "single_uf.csv";
    {
        std::ofstream out(input);
        out << "id,uf_num,sex,birth_date,grant_date,kind,survivor\n";
        for (int i = 0; i < 8; ++i) {
            out << "B" << i << ",7," << (i % 2 == 0 ? 'M' : 'F') << ",1950-0" << (1 + i % 4)
                << "-15,2018-02-01,E,0\n";
        }
    }
    REQUIRE(run_cli("aaf " + input.string() + " --proposal 2 -o " + tmp.path.string()) == 0);
    const auto parsed = read_csv(tmp.path / "aaf_report.csv");
    REQUIRE(parsed.rows.size() == 1);
    CHECK(parsed.rows[0][1] == "7");
    CHECK(parsed.rows[0][4] == "0");         // w_months
    CHECK(parsed.rows[0][5] == "1.000000");  // factor
    CHECK(parsed.rows[0][6] == "65.00");     // new age
}

TEST_CASE("edb CSV agrees with an in-process recompute") {
    TempDir tmp;
    const fs::path input = kData / "beneficiaries_sample.csv";
    REQUIRE(run_cli("edb " + input.string() + " --le-basis after65 --benefit 100 -o " +
                    tmp.path.string()) == 0);

    const auto tables = load_reference_tables();
    MoneyConfig cfg;
    cfg.benefit_b = 100.0;
    const auto records = read_beneficiaries_csv(input);
    std::vector<BeneficiaryRecord> elderly;
    for (const auto& rec : analysis_set(records)) {
        if (rec.kind == BenefitKind::Elderly) elderly.push_back(rec);
    }
    const auto report = edb_aggregate(elderly, tables.life_table, cfg, LeBasis::At65);

    const auto parsed = read_csv(tmp.path / "edb_report.csv");
    REQUIRE(parsed.rows[0][0] == "nation");
    CHECK(parsed.rows[0][3] == std::to_string(report.national_count()));
    CHECK(parsed.rows[0][4] == format_money(report.national_total()));
}

TEST_CASE("format flag controls which files appear") {
    TempDir tmp;
    REQUIRE(run_cli("reform --format csv -o " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "reform_report.csv"));
    CHECK_FALSE(fs::exists(tmp.path / "reform_report.json"));

    TempDir tmp2;
    REQUIRE(run_cli("reform --format json -o " + tmp2.path.string()) == 0);
    CHECK_FALSE(fs::exists(tmp2.path / "reform_report.csv"));
    CHECK(fs::exists(tmp2.path / "reform_report.json"));
}

TEST_CASE("cluster respects the seed environment override") {
    TempDir a, b;
    const std::string base = "cluster --features birth --method kmeans --k 4 ";
    REQUIRE(run_cli(base + "--seed 11 -o " + a.path.string()) == 0);
    REQUIRE(run_cli(base + "--seed 11 -o " + b.path.string()) == 0);
    CHECK(read_csv(a.path / "cluster_labels.csv").rows ==
          read_csv(b.path / "cluster_labels.csv").rows);

    // Env var steers the default seed; the flag wins over the env.
    TempDir c;
    const std::string cmd = "PENSION_TOOLKIT_SEED=11 " + std::string(PENSION_CLI_PATH) + " " +
                            base + "-o " + c.path.string() + " > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(read_csv(c.path / "cluster_labels.csv").rows ==
          read_csv(a.path / "cluster_labels.csv").rows);
}
