#include "qdf/validate.hpp"
#include "qdf/costmodel.hpp"
#include "qdf/errors.hpp"
#include "qdf/factorization.hpp"
#include "qdf/integrals.hpp"
#include "qdf/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdf {

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

bool ValidationReport::ok() const
{
    for (const auto& c : checks)
        if (c.hard && !c.passed)
            return false;
    return true;
}

std::vector<std::string> ValidationReport::failed() const
{
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (c.hard && !c.passed)
            out.push_back(c.name);
    return out;
}

nlohmann::json ValidationReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name}, {"hard", c.hard}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"schema", "qdf-validate/1"}, {"source", source}, {"n_orbitals", n_orbitals}, {"ok", ok()}, {"checks", arr}};
}

std::string ValidationReport::table() const
{
    std::ostringstream o;
    for (const auto& c : checks) {
        const char* tag = c.passed ? "PASS" : (c.hard ? "FAIL" : "WARN");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-5s %-28s ", tag, c.name.c_str());
        o << buf << c.detail << "\n";
    }
    o << (ok() ? "all hard checks passed" : "validation FAILED") << "\n";
    return o.str();
}

ValidationReport validate_fcidump(const std::string& path, Scheme sweep_scheme, const std::vector<double>& grid)
{
    ValidationReport rep;
    rep.source = path;

    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open FCIDUMP file: " + path);
    LiteralIntegrals lit = parse_fcidump_literal(f);
    rep.n_orbitals = lit.n_orbitals;
    if (lit.n_orbitals > kDenseMaxOrbitals)
        throw ConfigError("validate: N=" + std::to_string(lit.n_orbitals) + " exceeds the dense oracle cap of " +
                          std::to_string(kDenseMaxOrbitals) + " spatial orbitals");

    auto viol = validate_symmetry(lit.one_body, lit.two_body);
    {
        Check c{"validate_symmetry", true, viol.empty(), ""};
        if (viol.empty())
            c.detail = "8-fold and one-body symmetry hold";
        else {
            c.detail = std::to_string(viol.size()) + " violation(s), first " + viol.front().describe();
        }
        rep.checks.push_back(c);
    }
    if (!viol.empty())
        return rep;

    MolecularIntegrals m = read_fcidump(path);
    AdjustedOneBody adj = adjusted_one_body(m);
    SingleFactorization sf = single_factorize(m);
    DoubleFactorization df = double_factorize(sf, adj);

    FockOperator h = build_from_integrals(m);
    {
        double herm = hermiticity_error(h), num_err = number_commutator_error(h);
        rep.checks.push_back({"hermitian_number_conserving", true, herm <= 1e-10 && num_err <= 1e-10,
                              "|H-H^+| " + num(herm) + ", |[H,N]| " + num(num_err)});
    }
    {
        DenseTensor4 rec = reconstruct_two_body(df);
        DenseTensor4 ref = m.two_body.to_dense();
        double worst = 0.0;
        for (std::size_t a = 0; a < rec.v.size(); ++a)
            worst = std::max(worst, std::abs(rec.v[a] - ref.v[a]));
        rep.checks.push_back({"reconstruct_two_body", true, worst <= 1e-8, "sup error " + num(worst)});
    }
    FockOperator hdf = build_from_df(df, m.core_energy);
    {
        double d = max_abs_diff(h.matrix, hdf.matrix);
        rep.checks.push_back({"df_representation_identity", true, d <= 1e-8, "sup error " + num(d)});
    }
    {
        double worst = 0.0;
        auto check_one = [&](const Eigen::MatrixXd& l) {
            NormPair p = one_body_norm_check(l);
            worst = std::max(worst, std::abs(p.spectral - p.schatten));
        };
        check_one(adj.l_minus1);
        for (std::size_t r = 0; r < df.rank(); ++r)
            check_one(df.factor_matrix(r));
        rep.checks.push_back({"one_body_norm_identity", true, worst <= 1e-8, "max ||G_L|| - ||L||_SH " + num(worst)});
    }
    const double alpha = alpha_df(df);
    {
        FockOperator shifted{hdf.n_spatial,
                             hdf.matrix - (alpha_reference_shift(df) + m.core_energy) *
                                              Eigen::MatrixXcd::Identity(hdf.matrix.rows(), hdf.matrix.cols())};
        double nrm = spectral_norm(shifted);
        rep.checks.push_back({"alpha_bounds_norm", true, nrm <= alpha * (1 + 1e-12) + 1e-10,
                              "||H - shift|| " + num(nrm) + " <= alpha_df " + num(alpha)});
    }
    {
        double e0 = ground_energy(h, m.n_electrons);
        rep.checks.push_back({"ground_energy", false, true,
                              std::to_string(m.n_electrons) + " electrons: " + std::to_string(e0) + " Ha"});
    }
    {
        std::size_t bad = 0, soft_bad = 0;
        double worst_ratio = 0.0;
        const double e0 = ground_energy(hdf, m.n_electrons);
        for (double eps : grid) {
            auto [tdf, plan] = truncate(df, sweep_scheme, eps);
            FockOperator ht = build_from_df(tdf, m.core_energy);
            FockOperator diff{ht.n_spatial, hdf.matrix - ht.matrix};
            double err = spectral_norm(diff);
            if (err > plan.coherent_score + 1e-10)
                ++bad;
            if (plan.coherent_score > 0)
                worst_ratio = std::max(worst_ratio, err / plan.coherent_score);
            double de = std::abs(ground_energy(ht, m.n_electrons) - e0);
            if (de > plan.incoherent_score + 1e-10)
                ++soft_bad;
        }
        rep.checks.push_back({"truncation_coherent_bound", true, bad == 0,
                              std::to_string(grid.size()) + " " + to_string(sweep_scheme) +
                                  " sweep points, violations " + std::to_string(bad) + ", max ||dH||/score " +
                                  num(worst_ratio)});
        rep.checks.push_back({"truncation_incoherent_energy", false, soft_bad == 0,
                              "points with |dE0| > incoherent score: " + std::to_string(soft_bad)});
    }
    {
        double tb = trotter_step_bound(df_fragments(df));
        rep.checks.push_back({"trotter_step_bound", false, std::isfinite(tb) && tb >= 0,
                              "t^3 coefficient " + num(tb) + " (empirical steps may be up to 10 sqrt(n) larger)"});
    }
    return rep;
}

} // namespace qdf
