#include "pldiv/polyfit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include <json.hpp>

#include "pldiv/reference_math.hpp"

namespace pldiv {

namespace {

// Built-in rows, printed descending [c_d .. c_0] as published.
const std::map<int, std::vector<double>>& table_rows() {
    static const std::map<int, std::vector<double>> rows = {
        {2, {0.444059373310529, -0.444059378998574, 0.998316470026731}},
        {4,
         {0.209150199411479, -0.418300401501980, 0.705497065458358, -0.496346863702732,
          0.999950441820227}},
        {6,
         {0.098508912421565, -0.295526738526111, 0.541617753193361, -0.590690940810007,
          0.745901070861286, -0.499810057154873, 0.999998541152684}},
        {8,
         {0.046397306119941, -0.185589225073683, 0.400091390713315, -0.550711883119918,
          0.661235760287096, -0.621139145442145, 0.749707092244658, -0.499991295729843,
          0.999999957055819}},
        {10,
         {0.021852946554248, -0.109264732943323, 0.278584857665575, -0.458751032417924,
          0.594292338298524, -0.636160280553253, 0.684123714654436, -0.624660366579099,
          0.749982187229885, -0.499999631909091, 0.999999998735847}},
        {12,
         {0.010292651888006, -0.061755913969247, 0.183962224976114, -0.353715232937807,
          0.512340641363993, -0.606386252715474, 0.656490500342412, -0.653408505661428,
          0.687155627762944, -0.624974786919717, 0.749999031146584, -0.499999985276385,
          0.999999999962789}},
        {14,
         {0.004847557219273, -0.033932867266309, 0.116332750240922, -0.256869471884100,
          0.418707931272722, -0.547635332581819, 0.624725982459027, -0.652257742453188,
          0.669535180214450, -0.655925894486105, 0.687470300538450, -0.624998345227464,
          0.749999951387920, -0.499999999433776, 0.999999999998901}},
        {16,
         {0.002280382320975, -0.018242765293630, 0.070976706318807, -0.177591353506595,
          0.324764737187105, -0.469933369923315, 0.576458350792034, -0.633272693434323,
          0.658848078752916, -0.662148630845731, 0.671580922961134, -0.656218168654479,
          0.687497704369226, -0.624999898693680, 0.749999997627261, -0.499999999977700,
          0.999999999999963}},
    };
    return rows;
}

void check_fit_provenance(const CorrectionPolynomial& p) {
    if (p.provenance == Provenance::derived) return;
    double c0 = p.coeffs.front();
    if (!(c0 > 0.99 && c0 <= 1.0))
        throw NumericalError("correction polynomial c0 outside (0.99, 1]");
}

}  // namespace

CorrectionPolynomial make_polynomial(int degree, std::vector<double> coeffs_ascending,
                                     Provenance provenance) {
    if (degree < 0) throw ConfigError("polynomial degree must be non-negative");
    if (coeffs_ascending.size() != static_cast<size_t>(degree) + 1)
        throw ConfigError("polynomial needs degree+1 coefficients");
    CorrectionPolynomial p{degree, std::move(coeffs_ascending), provenance};
    check_fit_provenance(p);
    return p;
}

std::vector<double> chebyshev_nodes(const FitSpec& spec) {
    if (!(spec.theta_step > 0.0)) throw ConfigError("theta_step must be > 0");
    if (!(spec.theta_lo <= spec.theta_hi)) throw ConfigError("empty theta range");
    std::vector<double> nodes;
    for (long k = 0;; ++k) {
        double t = spec.theta_lo + static_cast<double>(k) * spec.theta_step;
        if (t > spec.theta_hi) break;
        nodes.push_back((std::cos(t) + 1.0) * 0.5);
    }
    if (nodes.empty()) throw ConfigError("empty node grid");
    return nodes;
}

CorrectionPolynomial fit_correction(const FitSpec& spec) {
    if (!table_rows().count(spec.degree))
        throw ConfigError("unsupported fit degree " + std::to_string(spec.degree));
    std::vector<double> a = chebyshev_nodes(spec);
    long n = static_cast<long>(a.size());
    int cols = spec.degree + 1;
    if (n < cols) throw ConfigError("node count below degree+1");

    Eigen::MatrixXd V(n, cols);
    Eigen::VectorXd g(n);
    for (long i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j < cols; ++j) {
            V(i, j) = p;
            p *= a[i];
        }
        g(i) = correction_exact(a[i]);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
    Eigen::VectorXd c = qr.solve(g);
    if (!c.allFinite()) throw NumericalError("least-squares solve failed");
    return make_polynomial(spec.degree, std::vector<double>(c.data(), c.data() + cols),
                           Provenance::fitted);
}

CorrectionPolynomial table_polynomial(int degree) {
    auto it = table_rows().find(degree);
    if (it == table_rows().end())
        throw ConfigError("no table row for degree " + std::to_string(degree));
    std::vector<double> asc(it->second.rbegin(), it->second.rend());
    return make_polynomial(degree, std::move(asc), Provenance::table);
}

const std::vector<int>& table_degrees() {
    static const std::vector<int> degs = [] {
        std::vector<int> d;
        for (const auto& [k, v] : table_rows()) d.push_back(k);
        return d;
    }();
    return degs;
}

double eval_poly(const CorrectionPolynomial& poly, double a) {
    double r = 0.0;
    for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) r = r * a + *it;
    return r;
}

FactoredDeg2 factor_degree2(const CorrectionPolynomial& poly) {
    if (poly.degree != 2) throw FactoringError("factor_degree2 needs a degree-2 polynomial");
    double c0 = poly.coeffs[0], c1 = poly.coeffs[1], c2 = poly.coeffs[2];
    if (!(std::fabs(c1 + c2) <= 1e-6))
        throw FactoringError("polynomial shape not amenable: |c1+c2| > 1e-6");
    return FactoredDeg2{c2, c0 - 0.25 * c2};
}

double eval_factored2(const FactoredDeg2& f, double a) {
    double s = a - 0.5;
    return f.c2 * s * s + f.cprime;
}

double eval_factored4(const FactoredDeg4& f, double a) {
    double q1 = f.q1_const + f.q1_lin * a + a * a;
    double q2 = f.q2_const + f.q2_lin * a + a * a;
    return f.scale * q1 * q2;
}

CorrectionPolynomial expand_factored_quartic(const FactoredDeg4& f) {
    std::vector<double> c(5);
    c[0] = f.scale * (f.q1_const * f.q2_const);
    c[1] = f.scale * (f.q1_const * f.q2_lin + f.q1_lin * f.q2_const);
    c[2] = f.scale * (f.q1_const + f.q2_const + f.q1_lin * f.q2_lin);
    c[3] = f.scale * (f.q1_lin + f.q2_lin);
    c[4] = f.scale;
    return make_polynomial(4, std::move(c), Provenance::derived);
}

FactoredDeg4 quartic_constants() {
    return FactoredDeg4{0.209150199411479, 3.0616168632399, -2.500018461800448,
                        1.561598389171924, 0.5000184489913662};
}

FactoredDeg4 quartic_constants_rounded_linear() {
    FactoredDeg4 f = quartic_constants();
    f.q1_lin = -2.5;
    f.q2_lin = 0.5;
    return f;
}

std::string polynomial_to_json(const CorrectionPolynomial& poly) {
    nlohmann::ordered_json j;
    j["degree"] = poly.degree;
    j["coeffs_ascending"] = poly.coeffs;
    switch (poly.provenance) {
        case Provenance::fitted: j["provenance"] = "fitted"; break;
        case Provenance::table: j["provenance"] = "table"; break;
        case Provenance::derived: j["provenance"] = "derived"; break;
    }
    return j.dump(2) + "\n";
}

CorrectionPolynomial polynomial_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        int degree = j.at("degree").get<int>();
        std::vector<double> coeffs = j.at("coeffs_ascending").get<std::vector<double>>();
        std::string prov = j.at("provenance").get<std::string>();
        Provenance p = prov == "fitted"  ? Provenance::fitted
                       : prov == "table" ? Provenance::table
                                         : Provenance::derived;
        if (prov != "fitted" && prov != "table" && prov != "derived")
            throw ConfigError("unknown provenance '" + prov + "'");
        return make_polynomial(degree, std::move(coeffs), p);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad polynomial JSON: ") + e.what());
    }
}

}  // namespace pldiv
