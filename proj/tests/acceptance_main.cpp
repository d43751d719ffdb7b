// Acceptance suite: every release criterion in one binary, one PASS/FAIL
// line each, nonzero exit when anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pension/aaf.hpp"
#include "pension/annuity.hpp"
#include "pension/cluster.hpp"
#include "pension/core_types.hpp"
#include "pension/csv.hpp"
#include "pension/edb.hpp"
#include "pension/reference_data.hpp"
#include "pension/statlab.hpp"

namespace fs = std::filesystem;
using namespace pension;

namespace {

struct Checker {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

int g_failures = 0;

// Self-contained generator so the suite draws the same stream on every
// platform and toolchain.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double gauss() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * uniform());
    }
};

void criterion(int id, const std::string& title, const std::function<void(Checker&)>& body) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(checker);
    } catch (const std::exception& e) {
        checker.require(false, std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (checker.ok) {
        std::printf("[PASS] criterion %2d: %s (%.2fs)\n", id, title.c_str(), seconds);
    } else {
        ++g_failures;
        std::printf("[FAIL] criterion %2d: %s (%.2fs)\n       %s\n", id, title.c_str(),
                    seconds, checker.detail.c_str());
    }
    std::fflush(stdout);
}

BeneficiaryRecord synthetic_record(std::string id, int uf, Sex sex, int age_months,
                                   const Date& reference) {
    BeneficiaryRecord rec;
    rec.id = std::move(id);
    rec.uf_num = uf;
    rec.sex = sex;
    rec.birth_date = add_months(reference, -age_months);
    rec.grant_date = Date{2018, 2, 1};
    rec.kind = BenefitKind::Elderly;
    rec.survivor = false;
    return rec;
}

// --- criteria ------------------------------------------------------------------

void c1_monthly_rate(Checker& c) {
    c.require(std::fabs(monthly_rate(0.06).value - 0.00486755) <= 1e-8,
              "monthly_rate(0.06) missed 0.00486755 by more than 1e-8");
}

void c2_annuity_oracle(Checker& c) {
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        const int n = rng.uniform_int(0, 1200);
        const double r = i % 25 == 0 ? 0.0 : rng.uniform(0.0, 0.02);
        const double closed = annuity_pv(n, MonthlyRate{r});
        const double looped = oracle::annuity_sum(n, r);
        if (std::fabs(closed - looped) > 1e-9 * std::max(1, n)) {
            c.require(false, "closed form vs loop diverged at n=" + std::to_string(n) +
                                 ", r=" + std::to_string(r));
            return;
        }
    }
}

void c3_lifetime_fixture(Checker& c) {
    const auto lt = remaining_months(69.0, 65 * 12 + 2, LeBasis::At65);
    c.require(lt.months == 46,
              "expected 46 months for LE 69.0 at age 65y2m, got " + std::to_string(lt.months));
}

void c4_currency(Checker& c) {
    MoneyConfig cfg;  // 4.35 BRL/EUR
    const double brl = currency_convert(714044109.82, cfg);
    c.require(std::fabs(brl - 3106091877.73) <= 0.5,
              "EUR->BRL conversion missed the paired total: got " + std::to_string(brl));
}

void c5_reform_gaps(Checker& c) {
    const auto tables = load_reference_tables();
    const auto gaps = reform_gap(tables.life_table);
    c.require(gaps.size() == 27, "expected 27 UF gaps");
    double lo = gaps[0].gap_years, hi = gaps[0].gap_years;
    int lo_uf = gaps[0].uf_num, hi_uf = gaps[0].uf_num;
    for (const auto& gap : gaps) {
        if (gap.gap_years < lo) { lo = gap.gap_years; lo_uf = gap.uf_num; }
        if (gap.gap_years > hi) { hi = gap.gap_years; hi_uf = gap.uf_num; }
    }
    c.require(std::fabs(lo - (-3.12)) <= 1e-9, "min gap is not -3.12: " + std::to_string(lo));
    c.require(std::fabs(hi - 4.33) <= 1e-9, "max gap is not 4.33: " + std::to_string(hi));
    c.require(lo_uf == 1, "argmin should be UF 1 (AL)");
    c.require(hi_uf == 19, "argmax should be UF 19 (SC)");
}

void c6_turning_points(Checker& c) {
    // Vertices of the reference coefficient fixtures, -b1 / (2 b2).
    c.require(std::fabs(quad_vertex(-8.41e-4, 2.942e-7) - 1429.0) <= 1.0,
              "total-model income vertex outside 1429 +/- 1");
    c.require(std::fabs(quad_vertex(2.372, -1.605e-2) - 73.9) <= 0.05,
              "total-model life-expectancy vertex outside 73.9 +/- 0.05");
    c.require(std::fabs(quad_vertex(4.837, -3.284e-2) - 73.6) <= 0.05,
              "elderly-model life-expectancy vertex outside 73.6 +/- 0.05");
    c.require(std::fabs(quad_vertex(-3.368e-3, 1.018e-6) - 1654.0) <= 1.0,
              "disabled-model income vertex outside 1654 +/- 1");
    c.require(std::fabs(quad_vertex(4.003, -2.696e-2) - 74.24) <= 0.05,
              "disabled-model life-expectancy vertex outside 74.24 +/- 0.05");
}

void c7_aaf_equalization(Checker& c) {
    const Date reference{2018, 4, 6};
    MoneyConfig cfg;
    cfg.benefit_b = 219.31;
    const MonthlyRate rate = monthly_rate(cfg.annual_rate);
    const auto bundled = load_reference_tables().life_table;

    Rng rng(20180406ull);

    for (int pop = 0; pop < 50; ++pop) {
        const int n_ufs = rng.uniform_int(3, 27);
        UfLifeTable table;
        if (pop % 2 == 0) {
            table = bundled;
        } else {
            std::vector<UfLifeRow> rows;
            for (int uf = 1; uf <= n_ufs; ++uf) {
                const double male = rng.uniform(68.0, 85.0);
                const double female = male + rng.uniform(0.0, 8.0);
                rows.push_back({uf, (male + female) / 2.0, male, female, male + 8, male + 8,
                                female + 8, male + 10, male + 10, female + 10});
            }
            table = UfLifeTable(std::move(rows));
        }

        const int total = rng.uniform_int(10, 10000);
        std::vector<BeneficiaryRecord> records;
        records.reserve(static_cast<std::size_t>(total));
        std::vector<int> base_age(static_cast<std::size_t>(2 * n_ufs + 2));
        for (auto& age : base_age) age = rng.uniform_int(780, 840);
        for (int i = 0; i < total; ++i) {
            const int uf = rng.uniform_int(1, n_ufs);
            const Sex sex = rng.uniform_int(0, 1) == 0 ? Sex::Male : Sex::Female;
            const int base = base_age[static_cast<std::size_t>(2 * uf + (sex == Sex::Male ? 0 : 1))];
            records.push_back(synthetic_record("p" + std::to_string(i), uf, sex,
                                               base + rng.uniform_int(0, 24), reference));
        }

        const auto p1 = aaf_proposal1(records, table, cfg);
        const auto p2 = aaf_proposal2(records, table, cfg);
        for (const auto* report : {&p1, &p2}) {
            for (const AafResult& res : report->results) {
                if (res.infeasible) {
                    c.require(false, "unexpected infeasible group in synthetic population");
                    return;
                }
                const double adjusted =
                    adjusted_per_capita(res.group_per_capita, res.w_months, cfg.benefit_b, rate);
                if (std::fabs(adjusted - res.target_per_capita) > cfg.benefit_b) {
                    c.require(false,
                              "group per-capita not equalized within one monthly payment "
                              "(population " + std::to_string(pop) + ", UF " +
                                  std::to_string(res.uf_num) + ": residual " +
                                  std::to_string(adjusted - res.target_per_capita) + ")");
                    return;
                }
            }
        }
    }

    // Uniform population: identical expectancies and age profiles in every
    // group force exact neutrality.
    std::vector<UfLifeRow> rows;
    for (int uf = 1; uf <= 5; ++uf) {
        rows.push_back({uf, 75.0, 75.0, 75.0, 83.0, 83.0, 83.0, 85.0, 85.0, 85.0});
    }
    UfLifeTable flat(std::move(rows));
    std::vector<BeneficiaryRecord> uniform;
    int serial = 0;
    for (int uf = 1; uf <= 5; ++uf) {
        for (Sex sex : {Sex::Male, Sex::Female}) {
            for (int age : {780, 792, 810}) {
                uniform.push_back(
                    synthetic_record("u" + std::to_string(serial++), uf, sex, age, reference));
            }
        }
    }
    for (const auto& report :
         {aaf_proposal1(uniform, flat, cfg), aaf_proposal2(uniform, flat, cfg)}) {
        for (const AafResult& res : report.results) {
            c.require(res.factor == 1.0 && res.new_age_years == 65.0 && res.w_months == 0,
                      "uniform population did not produce exact unit factors");
        }
    }
}

void c8_inversion_round_trip(Checker& c) {
    Rng rng(808);
    const double benefit = 954.0;
    for (int k = 0; k < 20; ++k) {
        const MonthlyRate r{rng.uniform(1e-6, 0.02)};
        for (int n = 0; n <= 1200; ++n) {
            const int back = invert_annuity(benefit * annuity_pv(n, r), benefit, r);
            if (back != n) {
                c.require(false, "round trip failed at n=" + std::to_string(n) +
                                     ", r=" + std::to_string(r.value) + " -> " +
                                     std::to_string(back));
                return;
            }
        }
    }
}

void c9_test_calibration(Checker& c) {
    const int reps = 1000;
    const int n = 200;
    Rng rng(424242);

    int jb_rej = 0, reset_rej = 0, rainbow_rej = 0, koenker_rej = 0;
    for (int rep = 0; rep < reps; ++rep) {
        // Normality test on raw Gaussian samples.
        Eigen::VectorXd sample(n);
        for (int i = 0; i < n; ++i) sample[i] = rng.gauss();
        if (jarque_bera(sample).reject) ++jb_rej;

        // Specification, linearity and variance tests on a well-specified
        // linear model.
        Eigen::MatrixXd X(n, 2);
        Eigen::VectorXd y(n);
        X.col(0).setOnes();
        for (int i = 0; i < n; ++i) {
            X(i, 1) = rng.uniform(0.0, 10.0);
            y[i] = 1.0 + 2.0 * X(i, 1) + rng.gauss();
        }
        const auto model = fit_ols(X, y, {"intercept", "x"});
        if (reset_test(model).reject) ++reset_rej;
        if (rainbow_test(model).reject) ++rainbow_rej;
        if (koenker_test(model).reject) ++koenker_rej;
    }

    const auto in_band = [&](int rejections, const char* name) {
        const double rate = static_cast<double>(rejections) / reps;
        c.require(std::fabs(rate - 0.10) <= 0.03,
                  std::string(name) + " rejection rate " + std::to_string(rate) +
                      " outside 0.10 +/- 0.03");
    };
    in_band(jb_rej, "jarque_bera");
    in_band(reset_rej, "reset");
    in_band(rainbow_rej, "rainbow");
    in_band(koenker_rej, "koenker");

    Eigen::VectorXd tri(3);
    tri << -1.0, 0.0, 1.0;
    c.require(std::fabs(jarque_bera(tri).statistic - 0.28125) <= 1e-9,
              "hand fixture JB({-1,0,1}) is not 0.28125");
}

void c10_transforms(Checker& c) {
    c.require(std::fabs(box_cox(3.0, 2.0) - 4.0) <= 1e-12, "box_cox(3,2) != 4");
    for (double y = -10.0; y <= 10.0; y += 0.25) {
        if (std::fabs(yeo_johnson(y, 1.0) - y) > 1e-12) {
            c.require(false, "yeo_johnson(y,1) is not the identity at y=" + std::to_string(y));
            return;
        }
    }
    for (double y = 0.1; y <= 100.0; y *= 1.35) {
        if (std::fabs(box_cox(y, 1e-8) - std::log(y)) > 1e-6) {
            c.require(false, "Box-Cox lambda->0 continuity fails at y=" + std::to_string(y));
            return;
        }
    }
}

void c11_clustering_oracles(Checker& c) {
    Rng rng(1111);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = rng.uniform_int(8, 12);
        Eigen::MatrixXd x(n, 2);
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, 0) = rng.uniform(0.0, 100.0);
            x(i, 1) = rng.uniform(0.0, 100.0);
        }
        const auto dist = distance_matrix(x);
        const auto dend = single_linkage(dist);
        const auto mst = oracle::mst_weights(dist);
        for (std::size_t i = 0; i < mst.size(); ++i) {
            if (std::fabs(dend.merges[i].height - mst[i]) > 1e-9) {
                c.require(false, "single-linkage heights differ from sorted MST weights");
                return;
            }
        }
        // Nesting: every cut refines the next coarser one.
        for (int k = 2; k <= n; ++k) {
            const auto fine = cut_dendrogram(dend, k);
            const auto coarse = cut_dendrogram(dend, k - 1);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (fine.labels[static_cast<std::size_t>(i)] ==
                            fine.labels[static_cast<std::size_t>(j)] &&
                        coarse.labels[static_cast<std::size_t>(i)] !=
                            coarse.labels[static_cast<std::size_t>(j)]) {
                        c.require(false, "dendrogram cuts do not nest");
                        return;
                    }
                }
            }
        }
    }

    Eigen::MatrixXd fixture(4, 1);
    fixture << 0.0, 1.0, 9.0, 10.0;
    const auto result = kmeans(fixture, 2, 42);
    const auto [best_obj, best_labels] = oracle::best_two_partition(fixture);
    c.require(std::fabs(result.objective - best_obj) <= 1e-12 &&
                  result.partition.labels[0] == result.partition.labels[1] &&
                  result.partition.labels[2] == result.partition.labels[3] &&
                  result.partition.labels[0] != result.partition.labels[2],
              "k-means on {0,1,9,10} did not match the exhaustive optimum");
}

void c12_pipeline_determinism(Checker& c) {
    const fs::path cli = PENSION_CLI_PATH;
    const fs::path data = PENSION_DATA_DIR;
    const fs::path beneficiaries = data / "beneficiaries_sample.csv";
    const fs::path economics = data / "economics_sample.csv";
    const fs::path root =
        fs::temp_directory_path() / ("pension_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(root);

    const std::vector<std::string> commands = {
        "validate " + beneficiaries.string(),
        "edb " + beneficiaries.string() + " --le-basis both --benefit 100",
        "aaf " + beneficiaries.string() + " --proposal both --benefit 100",
        "reform",
        "regress " + economics.string() + " --emit-plot-data",
        "cluster --features birth --method single --k 4",
        "cluster --features after60 --method kmeans --k 4",
    };

    auto run = [&](const std::string& args, const fs::path& out) {
        fs::create_directories(out);
        const std::string cmd =
            cli.string() + " " + args + " -o " + out.string() + " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str())) == 0;
    };
    auto file_bytes = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };

    for (std::size_t i = 0; i < commands.size(); ++i) {
        const fs::path a = root / ("a" + std::to_string(i));
        const fs::path b = root / ("b" + std::to_string(i));
        if (!run(commands[i], a) || !run(commands[i], b)) {
            c.require(false, "subcommand failed: " + commands[i]);
            break;
        }
        std::size_t compared = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            const std::string name = entry.path().filename().string();
            if (name == "run_manifest.json") continue;  // carries the timestamp
            ++compared;
            if (file_bytes(entry.path()) != file_bytes(b / name)) {
                c.require(false, "outputs differ between runs: " + commands[i] + " -> " + name);
                break;
            }
        }
        if (compared == 0) {
            c.require(false, "no outputs produced by: " + commands[i]);
        }
        if (!c.ok) break;
    }
    fs::remove_all(root);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "monthly rate from 6% annual is 0.00486755 +/- 1e-8", c1_monthly_rate);
    criterion(2, "annuity closed form matches brute force on 1000 random terms",
              c2_annuity_oracle);
    criterion(3, "remaining lifetime fixture: LE 69.0 at 65y2m -> 46 months",
              c3_lifetime_fixture);
    criterion(4, "EUR->BRL conversion reproduces the paired totals within 0.5",
              c4_currency);
    criterion(5, "reform gaps span exactly -3.12 (AL) to 4.33 (SC)", c5_reform_gaps);
    criterion(6, "quadratic turning points from the reference coefficient fixtures",
              c6_turning_points);
    criterion(7, "age offsets equalize per-capita benefits within one payment",
              c7_aaf_equalization);
    criterion(8, "annuity inversion round-trips all terms to 1200 months",
              c8_inversion_round_trip);
    criterion(9, "diagnostic tests calibrate to the 10% level under the null",
              c9_test_calibration);
    criterion(10, "response transforms: fixtures, identity and continuity", c10_transforms);
    criterion(11, "clustering matches MST and exhaustive-partition oracles",
              c11_clustering_oracles);
    criterion(12, "every subcommand is byte-deterministic on the bundled fixtures",
              c12_pipeline_determinism);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
