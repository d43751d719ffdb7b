#ifndef PENSION_STATLAB_HPP
#define PENSION_STATLAB_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pension/core_types.hpp"

namespace pension {

// --- response transforms -----------------------------------------------------

// (y^lambda - 1) / lambda, ln y at lambda = 0. Requires y > 0.
double box_cox(double y, double lambda);

// Four-case power transform defined on the whole real line; identity at
// lambda = 1.
double yeo_johnson(double y, double lambda);

enum class TransformFamily { None, BoxCox, YeoJohnson };

struct TransformSpec {
    TransformFamily family = TransformFamily::None;
    // NaN means: estimate by profile likelihood when the model is fit.
    double lambda = 1.0;
};

Eigen::VectorXd transform_response(const Eigen::VectorXd& y, const TransformSpec& spec);

// Log of the transform's Jacobian determinant, so likelihoods of
// transformed and untransformed fits are comparable on the original scale.
double transform_log_jacobian(const Eigen::VectorXd& y, const TransformSpec& spec);

// Profile-log-likelihood maximizer over lambda in [-3, 3], golden-section
// to 1e-5. X must include the intercept column. Throws std::domain_error
// for a constant response, or for non-positive y under BoxCox.
double estimate_lambda(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                       TransformFamily family);

// --- model specification -----------------------------------------------------

// Which beneficiary ratio is being explained.
enum class Response { Total, Elderly, Disabled };

enum class Regressor { Hdi = 1, Income = 2, LifeExpectancy = 3, Density = 4 };

std::string_view regressor_name(Regressor r);
std::string_view response_name(Response r);

struct DesignSpec {
    Response response = Response::Total;
    std::vector<Regressor> regressors;  // linear terms
    std::vector<Regressor> quadratic;   // squared terms
    TransformSpec transform;
    std::string form_label;             // free-form tag, e.g. "quadratic"
};

// Beneficiaries per thousand inhabitants, one entry per row.
Eigen::VectorXd response_vector(Response response, const std::vector<EconomicRow>& rows);

struct DesignMatrix {
    Eigen::MatrixXd X;                      // column 0 is the intercept
    std::vector<std::string> column_names;  // "intercept", "income_pc", ...
};

DesignMatrix build_design(const DesignSpec& spec, const std::vector<EconomicRow>& rows);

// --- fitting -----------------------------------------------------------------

struct Coefficient {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
};

struct FittedModel {
    DesignSpec design;                       // lambda resolved if estimated
    std::vector<std::string> column_names;
    Eigen::MatrixXd X;
    Eigen::VectorXd y;                       // response on the fitted scale
    Eigen::VectorXd beta;
    std::vector<Coefficient> coefficients;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    Eigen::VectorXd leverage;                // hat-matrix diagonal
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double sigma2 = 0.0;                     // MLE: RSS / n
    double log_likelihood = 0.0;             // Gaussian, Jacobian included
    double aic = 0.0;                        // -2 LL + 2 (p+1)
    double bic = 0.0;                        // -2 LL + ln(n) (p+1)
    double log_jacobian = 0.0;

    int n() const { return static_cast<int>(X.rows()); }
    int p() const { return static_cast<int>(X.cols()); }
};

// Least squares on an explicit design; column 0 must be the intercept.
// Throws SingularDesignError when X is rank deficient.
FittedModel fit_ols(Eigen::MatrixXd X, Eigen::VectorXd y,
                    std::vector<std::string> column_names, double log_jacobian = 0.0);

// Builds the design from indicator rows, transforms the response (lambda
// estimated here when requested as NaN) and fits.
FittedModel fit_ols(const DesignSpec& spec, const std::vector<EconomicRow>& rows);

// --- diagnostics -------------------------------------------------------------

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.1;
    bool reject = false;  // p_value < alpha
};

// Skewness/kurtosis normality test; statistic n/6 (S^2 + (K-3)^2/4),
// chi-squared with 2 df. Needs n >= 3 and nonzero residual variance.
TestResult jarque_bera(const Eigen::VectorXd& residuals, double alpha = 0.1);

// Specification error test: F-test on powers of the (standardized) fitted
// values added to the design.
TestResult reset_test(const FittedModel& model, const std::vector<int>& powers = {2, 3},
                      double alpha = 0.1);

// Linearity test comparing the full fit against the fit on the most
// central observations (smallest leverage).
TestResult rainbow_test(const FittedModel& model, double central_fraction = 0.5,
                        double alpha = 0.1);

// Studentized Breusch-Pagan heteroskedasticity test: n R^2 of the
// squared-residual auxiliary regression, chi-squared with p-1 df.
TestResult koenker_test(const FittedModel& model, double alpha = 0.1);

// Variance inflation 1/(1 - R_j^2) per non-intercept column; +inf marks
// perfect collinearity. X must contain the intercept plus >= 2 columns.
std::vector<double> vif(const Eigen::MatrixXd& X);

struct InfluenceReport {
    Eigen::VectorXd leverage;
    Eigen::VectorXd studentized;   // externally studentized residuals
    std::vector<int> high_leverage;  // h_i > 2 p / n
    std::vector<int> outliers;       // |t_i| > 2
    double leverage_cutoff = 0.0;
};

InfluenceReport influence(const FittedModel& model);

// --- quadratic turning points ------------------------------------------------

double quad_vertex(double beta_linear, double beta_quadratic);

struct TurningPoint {
    std::string regressor;
    double vertex = 0.0;       // -b1 / (2 b2)
    bool inside_range = false;
    double range_min = 0.0;
    double range_max = 0.0;
};

// One entry per regressor that carries both a linear and a nonzero
// quadratic coefficient.
std::vector<TurningPoint> turning_points(const FittedModel& model);

// --- model selection ---------------------------------------------------------

struct CandidateResult {
    DesignSpec spec;
    bool fitted = false;
    std::string error;        // set when the fit itself failed
    double reset_p = 0.0;
    bool reset_pass = false;  // survives the specification filter
    double lambda = 1.0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double aic = 0.0;
    double bic = 0.0;
};

struct SelectionReport {
    std::vector<CandidateResult> candidates;   // input order
    std::vector<std::size_t> aic_ranking;      // survivor indices, best first
    std::vector<std::size_t> bic_ranking;
};

// Fits every candidate, drops those failing the specification-error filter
// at `alpha`, and ranks survivors by AIC and by BIC.
SelectionReport select_model(const std::vector<DesignSpec>& candidates,
                             const std::vector<EconomicRow>& rows, double alpha = 0.1);

}  // namespace pension

#endif
