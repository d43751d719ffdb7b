#include "pension/statlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pension/distributions.hpp"
#include "pension/errors.hpp"

namespace pension {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

struct LeastSquares {
    Eigen::VectorXd beta;
    double rss = 0.0;
};

// Plain solve without the full model bookkeeping; tolerates rank
// deficiency (minimum-norm solution) unless `require_full_rank`.
LeastSquares solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      bool require_full_rank) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (require_full_rank && qr.rank() < X.cols()) {
        throw SingularDesignError("design matrix is rank deficient: rank " +
                                  std::to_string(qr.rank()) + " of " +
                                  std::to_string(X.cols()) + " columns");
    }
    LeastSquares out;
    out.beta = qr.solve(y);
    out.rss = (y - X * out.beta).squaredNorm();
    return out;
}

}  // namespace

// --- transforms ---------------------------------------------------------------

double box_cox(double y, double lambda) {
    if (!(y > 0.0)) {
        throw std::domain_error("Box-Cox requires a positive argument, got " +
                                std::to_string(y));
    }
    if (lambda == 0.0) return std::log(y);
    return std::expm1(lambda * std::log(y)) / lambda;
}

double yeo_johnson(double y, double lambda) {
    if (y >= 0.0) {
        if (lambda == 0.0) return std::log1p(y);
        return std::expm1(lambda * std::log1p(y)) / lambda;
    }
    const double two_minus = 2.0 - lambda;
    if (two_minus == 0.0) return -std::log1p(-y);
    return -std::expm1(two_minus * std::log1p(-y)) / two_minus;
}

Eigen::VectorXd transform_response(const Eigen::VectorXd& y, const TransformSpec& spec) {
    Eigen::VectorXd out(y.size());
    switch (spec.family) {
        case TransformFamily::None:
            out = y;
            break;
        case TransformFamily::BoxCox:
            for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = box_cox(y[i], spec.lambda);
            break;
        case TransformFamily::YeoJohnson:
            for (Eigen::Index i = 0; i < y.size(); ++i)
                out[i] = yeo_johnson(y[i], spec.lambda);
            break;
    }
    return out;
}

double transform_log_jacobian(const Eigen::VectorXd& y, const TransformSpec& spec) {
    double sum = 0.0;
    switch (spec.family) {
        case TransformFamily::None:
            return 0.0;
        case TransformFamily::BoxCox:
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                if (!(y[i] > 0.0)) throw std::domain_error("Box-Cox requires positive data");
                sum += (spec.lambda - 1.0) * std::log(y[i]);
            }
            return sum;
        case TransformFamily::YeoJohnson:
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                if (y[i] >= 0.0) {
                    sum += (spec.lambda - 1.0) * std::log1p(y[i]);
                } else {
                    sum += (1.0 - spec.lambda) * std::log1p(-y[i]);
                }
            }
            return sum;
    }
    return sum;
}

double estimate_lambda(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                       TransformFamily family) {
    if (family == TransformFamily::None) return 1.0;
    const auto n = y.size();
    if (n <= X.cols() + 2) {
        throw std::invalid_argument("lambda estimation needs n > p + 2 observations");
    }
    if (y.maxCoeff() - y.minCoeff() <= 0.0) {
        throw std::domain_error("response is constant; no transform is identifiable");
    }
    if (family == TransformFamily::BoxCox && y.minCoeff() <= 0.0) {
        throw std::domain_error("Box-Cox requires a strictly positive response");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    auto profile = [&](double lambda) {
        const TransformSpec spec{family, lambda};
        const Eigen::VectorXd z = transform_response(y, spec);
        const double rss = (z - X * qr.solve(z)).squaredNorm();
        if (!(rss > 0.0)) return kInf;
        return -0.5 * static_cast<double>(n) * std::log(rss / static_cast<double>(n)) +
               transform_log_jacobian(y, spec);
    };

    // Golden-section maximization on [-3, 3].
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -3.0, b = 3.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = profile(c);
    double fd = profile(d);
    while (b - a > 1e-5) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = profile(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = profile(d);
        }
    }
    return (a + b) / 2.0;
}

// --- design construction -------------------------------------------------------

std::string_view regressor_name(Regressor r) {
    switch (r) {
        case Regressor::Hdi: return "hdi";
        case Regressor::Income: return "income_pc";
        case Regressor::LifeExpectancy: return "le_birth";
        case Regressor::Density: return "density";
    }
    return "?";
}

std::string_view response_name(Response r) {
    switch (r) {
        case Response::Total: return "total";
        case Response::Elderly: return "elderly";
        case Response::Disabled: return "disabled";
    }
    return "?";
}

namespace {

double regressor_value(Regressor r, const EconomicRow& row) {
    switch (r) {
        case Regressor::Hdi: return row.hdi;
        case Regressor::Income: return row.income_pc;
        case Regressor::LifeExpectancy: return row.le_birth;
        case Regressor::Density: return row.density;
    }
    return 0.0;
}

}  // namespace

Eigen::VectorXd response_vector(Response response, const std::vector<EconomicRow>& rows) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const EconomicRow& row = rows[i];
        if (row.population <= 0) {
            throw std::domain_error("population must be positive for UF " +
                                    std::to_string(row.uf_num));
        }
        long long count = 0;
        switch (response) {
            case Response::Total: count = row.bnf_total; break;
            case Response::Elderly: count = row.bnf_elderly; break;
            case Response::Disabled: count = row.bnf_disabled; break;
        }
        // Beneficiaries per thousand inhabitants.
        y[static_cast<Eigen::Index>(i)] =
            1000.0 * static_cast<double>(count) / static_cast<double>(row.population);
    }
    return y;
}

DesignMatrix build_design(const DesignSpec& spec, const std::vector<EconomicRow>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto p = static_cast<Eigen::Index>(1 + spec.regressors.size() + spec.quadratic.size());
    DesignMatrix dm;
    dm.X.resize(n, p);
    dm.X.col(0).setOnes();
    dm.column_names.emplace_back("intercept");
    Eigen::Index col = 1;
    for (Regressor r : spec.regressors) {
        for (Eigen::Index i = 0; i < n; ++i) {
            dm.X(i, col) = regressor_value(r, rows[static_cast<std::size_t>(i)]);
        }
        dm.column_names.emplace_back(regressor_name(r));
        ++col;
    }
    for (Regressor r : spec.quadratic) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = regressor_value(r, rows[static_cast<std::size_t>(i)]);
            dm.X(i, col) = v * v;
        }
        dm.column_names.emplace_back(std::string(regressor_name(r)) + "^2");
        ++col;
    }
    return dm;
}

// --- fitting -------------------------------------------------------------------

FittedModel fit_ols(Eigen::MatrixXd X, Eigen::VectorXd y,
                    std::vector<std::string> column_names, double log_jacobian) {
    const auto n = X.rows();
    const auto p = X.cols();
    if (y.size() != n) throw std::invalid_argument("design and response sizes differ");
    if (n < p) throw std::invalid_argument("cannot fit more columns than observations");
    if (static_cast<Eigen::Index>(column_names.size()) != p) {
        throw std::invalid_argument("one column name per design column required");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < p) {
        throw SingularDesignError("design matrix is rank deficient: rank " +
                                  std::to_string(qr.rank()) + " of " +
                                  std::to_string(p) + " columns");
    }

    FittedModel m;
    m.beta = qr.solve(y);
    m.fitted = X * m.beta;
    m.residuals = y - m.fitted;
    const double rss = m.residuals.squaredNorm();
    const double tss = (y.array() - y.mean()).matrix().squaredNorm();
    m.r2 = tss > 0.0 ? clamp01(1.0 - rss / tss) : 1.0;
    m.adj_r2 = n > p ? 1.0 - (1.0 - m.r2) * static_cast<double>(n - 1) /
                                 static_cast<double>(n - p)
                     : kNaN;
    m.sigma2 = rss / static_cast<double>(n);
    m.log_jacobian = log_jacobian;
    if (m.sigma2 > 0.0) {
        m.log_likelihood =
            -0.5 * static_cast<double>(n) * (std::log(2.0 * M_PI * m.sigma2) + 1.0) +
            log_jacobian;
        const double k_params = static_cast<double>(p) + 1.0;  // betas + sigma^2
        m.aic = -2.0 * m.log_likelihood + 2.0 * k_params;
        m.bic = -2.0 * m.log_likelihood + std::log(static_cast<double>(n)) * k_params;
    } else {
        m.log_likelihood = kInf;
        m.aic = -kInf;
        m.bic = -kInf;
    }

    // Hat diagonal from the thin Q factor.
    Eigen::MatrixXd q_thin = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    m.leverage.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) m.leverage[i] = q_thin.row(i).squaredNorm();

    // Coefficient table; inference is meaningless without residual dof.
    m.coefficients.resize(static_cast<std::size_t>(p));
    Eigen::MatrixXd xtx_inv;
    const bool have_dof = n > p;
    if (have_dof) {
        Eigen::MatrixXd r_inv =
            qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>().solve(
                Eigen::MatrixXd::Identity(p, p));
        xtx_inv = qr.colsPermutation() * (r_inv * r_inv.transpose()) *
                  qr.colsPermutation().transpose();
    }
    const double sigma2_unbiased = have_dof ? rss / static_cast<double>(n - p) : kNaN;
    for (Eigen::Index j = 0; j < p; ++j) {
        Coefficient& c = m.coefficients[static_cast<std::size_t>(j)];
        c.name = column_names[static_cast<std::size_t>(j)];
        c.value = m.beta[j];
        if (have_dof && sigma2_unbiased > 0.0) {
            c.std_error = std::sqrt(sigma2_unbiased * xtx_inv(j, j));
            c.t_stat = c.std_error > 0.0 ? c.value / c.std_error : kInf;
            c.p_value = 2.0 * student_t_sf(std::fabs(c.t_stat),
                                           static_cast<double>(n - p));
        } else {
            c.std_error = kNaN;
            c.t_stat = kNaN;
            c.p_value = kNaN;
        }
    }

    m.column_names = std::move(column_names);
    m.X = std::move(X);
    m.y = std::move(y);
    return m;
}

FittedModel fit_ols(const DesignSpec& spec, const std::vector<EconomicRow>& rows) {
    const Eigen::VectorXd y_raw = response_vector(spec.response, rows);
    DesignMatrix dm = build_design(spec, rows);
    TransformSpec transform = spec.transform;
    if (transform.family != TransformFamily::None && std::isnan(transform.lambda)) {
        transform.lambda = estimate_lambda(y_raw, dm.X, transform.family);
    }
    const Eigen::VectorXd y = transform_response(y_raw, transform);
    const double log_jacobian = transform_log_jacobian(y_raw, transform);
    FittedModel m = fit_ols(std::move(dm.X), y, std::move(dm.column_names), log_jacobian);
    m.design = spec;
    m.design.transform = transform;
    return m;
}

// --- diagnostics ----------------------------------------------------------------

TestResult jarque_bera(const Eigen::VectorXd& residuals, double alpha) {
    const auto n = residuals.size();
    if (n < 3) throw std::invalid_argument("Jarque-Bera needs at least 3 residuals");
    const Eigen::ArrayXd centered = residuals.array() - residuals.mean();
    const double m2 = centered.square().mean();
    if (!(m2 > 0.0)) throw std::domain_error("residuals have zero variance");
    const double m3 = centered.cube().mean();
    const double m4 = centered.square().square().mean();
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double stat = static_cast<double>(n) / 6.0 *
                        (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
    TestResult res{"jarque_bera", stat, chi_squared_sf(stat, 2.0), alpha, false};
    res.reject = res.p_value < alpha;
    return res;
}

TestResult reset_test(const FittedModel& model, const std::vector<int>& powers,
                      double alpha) {
    if (powers.empty()) throw std::invalid_argument("at least one power required");
    for (int pw : powers) {
        if (pw < 2) throw std::invalid_argument("powers must be >= 2");
    }
    const auto n = model.X.rows();
    const auto p = model.X.cols();
    const auto q = static_cast<Eigen::Index>(powers.size());
    if (n <= p + q) {
        throw std::invalid_argument("sample too small: specification test needs n > p + " +
                                    std::to_string(powers.size()));
    }

    // Standardize the fitted values before powering; the spanned space and
    // therefore the F statistic are unchanged.
    const double mu = model.fitted.mean();
    const double sd = std::sqrt((model.fitted.array() - mu).square().mean());
    if (!(sd > 0.0)) throw std::domain_error("fitted values are constant");
    const Eigen::ArrayXd f_std = (model.fitted.array() - mu) / sd;

    Eigen::MatrixXd x_aug(n, p + q);
    x_aug.leftCols(p) = model.X;
    for (Eigen::Index j = 0; j < q; ++j) {
        x_aug.col(p + j) = f_std.pow(powers[static_cast<std::size_t>(j)]).matrix();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_aug);
    if (qr.rank() < p + q) {
        throw SingularDesignError("augmented design is singular");
    }
    const double rss0 = model.residuals.squaredNorm();
    const double rss1 = (model.y - x_aug * qr.solve(model.y)).squaredNorm();
    const double df2 = static_cast<double>(n - p - q);
    TestResult res{"reset", 0.0, 1.0, alpha, false};
    if (rss1 <= 0.0) {
        res.statistic = kInf;
        res.p_value = 0.0;
    } else {
        res.statistic = std::max(0.0, (rss0 - rss1) / static_cast<double>(q)) / (rss1 / df2);
        res.p_value = f_sf(res.statistic, static_cast<double>(q), df2);
    }
    res.reject = res.p_value < alpha;
    return res;
}

TestResult rainbow_test(const FittedModel& model, double central_fraction, double alpha) {
    if (!(central_fraction > 0.0 && central_fraction < 1.0)) {
        throw std::invalid_argument("central fraction must lie in (0, 1)");
    }
    const auto n = model.X.rows();
    const auto p = model.X.cols();
    const auto m = static_cast<Eigen::Index>(std::llround(central_fraction * n));
    if (m <= p || n - m < 1) {
        throw std::invalid_argument("central subset leaves too few observations");
    }

    // Most central = smallest leverage; stable order on ties.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return model.leverage[a] < model.leverage[b];
    });

    Eigen::MatrixXd x_sub(m, p);
    Eigen::VectorXd y_sub(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        x_sub.row(i) = model.X.row(idx[static_cast<std::size_t>(i)]);
        y_sub[i] = model.y[idx[static_cast<std::size_t>(i)]];
    }
    const LeastSquares sub = solve_ls(x_sub, y_sub, true);
    const double rss_full = model.residuals.squaredNorm();
    const double df1 = static_cast<double>(n - m);
    const double df2 = static_cast<double>(m - p);
    TestResult res{"rainbow", 0.0, 1.0, alpha, false};
    if (sub.rss <= 0.0) {
        res.statistic = kInf;
        res.p_value = 0.0;
    } else {
        res.statistic = std::max(0.0, (rss_full - sub.rss) / df1) / (sub.rss / df2);
        res.p_value = f_sf(res.statistic, df1, df2);
    }
    res.reject = res.p_value < alpha;
    return res;
}

TestResult koenker_test(const FittedModel& model, double alpha) {
    const auto n = model.X.rows();
    const auto p = model.X.cols();
    if (p < 2) throw std::domain_error("auxiliary regression needs at least one regressor");
    if (n <= p + 1) throw std::invalid_argument("sample too small for the variance test");

    const Eigen::VectorXd z = model.residuals.array().square().matrix();
    const double tss = (z.array() - z.mean()).matrix().squaredNorm();
    TestResult res{"koenker", 0.0, 1.0, alpha, false};
    // An (essentially) exact fit carries no variance signal; constant
    // squared residuals likewise.
    const double noise_floor = 1e-12 * model.y.norm();
    if (model.residuals.squaredNorm() <= noise_floor * noise_floor) {
        res.p_value = chi_squared_sf(0.0, static_cast<double>(p - 1));
        res.reject = false;
        return res;
    }
    if (tss > 0.0) {
        const LeastSquares aux = solve_ls(model.X, z, false);
        const double r2 = clamp01(1.0 - aux.rss / tss);
        res.statistic = static_cast<double>(n) * r2;
    }
    res.p_value = chi_squared_sf(res.statistic, static_cast<double>(p - 1));
    res.reject = res.p_value < alpha;
    return res;
}

std::vector<double> vif(const Eigen::MatrixXd& X) {
    const auto p = X.cols();
    if (p < 3) {
        throw std::invalid_argument("variance inflation needs at least two regressors");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(p - 1));
    for (Eigen::Index j = 1; j < p; ++j) {
        Eigen::MatrixXd others(X.rows(), p - 1);
        Eigen::Index col = 0;
        others.col(col++) = X.col(0);
        for (Eigen::Index k = 1; k < p; ++k) {
            if (k != j) others.col(col++) = X.col(k);
        }
        const Eigen::VectorXd target = X.col(j);
        const double tss = (target.array() - target.mean()).matrix().squaredNorm();
        if (!(tss > 0.0)) {
            out.push_back(kInf);  // constant column duplicates the intercept
            continue;
        }
        const LeastSquares fit = solve_ls(others, target, false);
        const double r2 = clamp01(1.0 - fit.rss / tss);
        out.push_back(r2 >= 1.0 - 1e-12 ? kInf : 1.0 / (1.0 - r2));
    }
    return out;
}

InfluenceReport influence(const FittedModel& model) {
    const auto n = model.X.rows();
    const auto p = model.X.cols();
    InfluenceReport rep;
    rep.leverage = model.leverage;
    rep.leverage_cutoff = 2.0 * static_cast<double>(p) / static_cast<double>(n);
    rep.studentized.resize(n);
    const double rss = model.residuals.squaredNorm();
    const double dof = static_cast<double>(n - p - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double e = model.residuals[i];
        const double h = model.leverage[i];
        if (dof <= 0.0) {
            rep.studentized[i] = kNaN;
        } else {
            const double disc = (1.0 - h) * rss - e * e;
            rep.studentized[i] = disc > 0.0 ? e * std::sqrt(dof / disc)
                                            : (e == 0.0 ? 0.0 : std::copysign(kInf, e));
        }
        if (model.leverage[i] > rep.leverage_cutoff) {
            rep.high_leverage.push_back(static_cast<int>(i));
        }
        if (std::isfinite(rep.studentized[i]) && std::fabs(rep.studentized[i]) > 2.0) {
            rep.outliers.push_back(static_cast<int>(i));
        }
    }
    return rep;
}

double quad_vertex(double beta_linear, double beta_quadratic) {
    if (beta_quadratic == 0.0) {
        throw std::domain_error("no vertex: quadratic coefficient is zero");
    }
    return -beta_linear / (2.0 * beta_quadratic);
}

std::vector<TurningPoint> turning_points(const FittedModel& model) {
    std::vector<TurningPoint> points;
    for (std::size_t j = 0; j < model.column_names.size(); ++j) {
        const std::string& name = model.column_names[j];
        if (name == "intercept" || name.ends_with("^2")) continue;
        const std::string squared = name + "^2";
        const auto it = std::find(model.column_names.begin(), model.column_names.end(), squared);
        if (it == model.column_names.end()) continue;
        const auto k = static_cast<std::size_t>(it - model.column_names.begin());
        const double b1 = model.beta[static_cast<Eigen::Index>(j)];
        const double b2 = model.beta[static_cast<Eigen::Index>(k)];
        if (b2 == 0.0) continue;  // no vertex
        TurningPoint tp;
        tp.regressor = name;
        tp.vertex = quad_vertex(b1, b2);
        tp.range_min = model.X.col(static_cast<Eigen::Index>(j)).minCoeff();
        tp.range_max = model.X.col(static_cast<Eigen::Index>(j)).maxCoeff();
        tp.inside_range = tp.vertex >= tp.range_min && tp.vertex <= tp.range_max;
        points.push_back(std::move(tp));
    }
    return points;
}

SelectionReport select_model(const std::vector<DesignSpec>& candidates,
                             const std::vector<EconomicRow>& rows, double alpha) {
    if (candidates.empty()) throw std::invalid_argument("no candidate models given");
    SelectionReport report;
    report.candidates.reserve(candidates.size());
    for (const DesignSpec& spec : candidates) {
        CandidateResult cand;
        cand.spec = spec;
        try {
            const FittedModel model = fit_ols(spec, rows);
            cand.fitted = true;
            cand.lambda = model.design.transform.lambda;
            cand.r2 = model.r2;
            cand.adj_r2 = model.adj_r2;
            cand.aic = model.aic;
            cand.bic = model.bic;
            const TestResult reset = reset_test(model, {2, 3}, alpha);
            cand.reset_p = reset.p_value;
            cand.reset_pass = !reset.reject;
        } catch (const std::exception& e) {
            cand.error = e.what();
            cand.fitted = false;
        }
        report.candidates.push_back(std::move(cand));
    }

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        const CandidateResult& c = report.candidates[i];
        if (c.fitted && c.reset_pass) survivors.push_back(i);
    }
    report.aic_ranking = survivors;
    std::sort(report.aic_ranking.begin(), report.aic_ranking.end(),
              [&](std::size_t a, std::size_t b) {
                  if (report.candidates[a].aic != report.candidates[b].aic) {
                      return report.candidates[a].aic < report.candidates[b].aic;
                  }
                  return a < b;
              });
    report.bic_ranking = survivors;
    std::sort(report.bic_ranking.begin(), report.bic_ranking.end(),
              [&](std::size_t a, std::size_t b) {
                  if (report.candidates[a].bic != report.candidates[b].bic) {
                      return report.candidates[a].bic < report.candidates[b].bic;
                  }
                  return a < b;
              });
    return report;
}

}  // namespace pension
