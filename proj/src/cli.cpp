#include "qdf/cli.hpp"
#include "qdf/cache.hpp"
#include "qdf/costmodel.hpp"
#include "qdf/errors.hpp"
#include "qdf/parallel.hpp"
#include "qdf/report.hpp"
#include "qdf/truncation.hpp"
#include "qdf/validate.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace qdf {

namespace {

struct Common {
    double delta_e = 1e-3;
    std::string mode = "min-toffoli";
    std::optional<long long> lambda;
    std::string format = "table";
    std::string out;
    std::string label;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--delta-e", c.delta_e, "target energy error in Hartree")->capture_default_str();
    sub->add_option("--mode", c.mode, "min-toffoli, min-qubits or fixed")->capture_default_str();
    sub->add_option("--lambda", c.lambda, "clean-copy count (implies --mode fixed)");
    sub->add_option("--format", c.format, "json, csv or table")->capture_default_str();
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--label", c.label, "row label (Step column)");
}

LambdaMode mode_of(const Common& c, count_t& lam)
{
    LambdaMode m = parse_lambda_mode(c.mode);
    if (c.lambda) {
        if (*c.lambda < 0)
            throw ConfigError("--lambda must be non-negative");
        lam = *c.lambda;
        if (m != LambdaMode::fixed && c.mode != "min-toffoli")
            throw ConfigError("--lambda conflicts with --mode " + c.mode);
        m = LambdaMode::fixed;
    } else if (m == LambdaMode::fixed) {
        throw ConfigError("--mode fixed needs --lambda");
    }
    return m;
}

void check_format(const std::string& f)
{
    if (f != "json" && f != "csv" && f != "table")
        throw ConfigError("unknown --format '" + f + "' (expected json, csv or table)");
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text))
        throw ConfigError("cannot write output file: " + path);
}

std::string stem(const std::string& path)
{
    return std::filesystem::path(path).stem().string();
}

} // namespace

std::vector<double> parse_grid(const std::string& text)
{
    auto a = text.find(':');
    auto b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw ConfigError("--grid expects lo:hi:n, got '" + text + "'");
    try {
        double lo = std::stod(text.substr(0, a));
        double hi = std::stod(text.substr(a + 1, b - a - 1));
        long n = std::stol(text.substr(b + 1));
        if (n < 1)
            throw ConfigError("--grid point count must be positive");
        return log_grid(lo, hi, static_cast<std::size_t>(n));
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const ConfigError*>(&e))
            throw;
        throw ConfigError("--grid expects lo:hi:n, got '" + text + "'");
    }
}

DoubleFactorization load_factorization(const std::string& fcidump, const std::string& cache, unsigned threads)
{
    std::uint64_t fp = 0;
    if (!cache.empty()) {
        fp = file_fingerprint(fcidump);
        if (auto hit = read_df_cache(cache, fp))
            return *hit;
    }
    MolecularIntegrals m = read_fcidump(fcidump);
    DoubleFactorization df = double_factorize(single_factorize(m), adjusted_one_body(m), threads);
    if (!cache.empty())
        write_df_cache(cache, df, fp);
    return df;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Double-factorization resource estimator for qubitized phase estimation", "qdf"};
    app.require_subcommand(1);

    Common ce, cc, cs;
    std::string est_fcidump, est_cache, est_scheme = "incoherent";
    double est_eps = 1e-3;
    auto* est = app.add_subcommand("estimate", "factorize, truncate and cost an FCIDUMP Hamiltonian");
    est->add_option("--fcidump", est_fcidump, "integral file")->required();
    est->add_option("--epsilon", est_eps, "truncation threshold in Hartree")->capture_default_str();
    est->add_option("--scheme", est_scheme, "coherent or incoherent")->capture_default_str();
    est->add_option("--cache", est_cache, "binary factorization cache");
    add_common(est, ce);

    long long n = 0, r = 0, m = 0, m_max = 0;
    double alpha = 0;
    auto* cost = app.add_subcommand("cost", "cost a Hamiltonian given (N, R, M, alpha) directly");
    cost->add_option("--n", n, "spatial orbitals")->required();
    cost->add_option("--r", r, "rank R")->required();
    cost->add_option("--m", m, "total eigenvector count M")->required();
    cost->add_option("--m-max", m_max, "largest per-rank eigenvector count (default N)");
    cost->add_option("--alpha", alpha, "alpha_DF in Hartree")->required();
    add_common(cost, cc);

    std::string sw_fcidump, sw_cache, sw_scheme = "incoherent", sw_grid = "1e-4:1e-1:16";
    auto* sweep = app.add_subcommand("sweep", "truncation threshold sweep with per-point cost");
    sweep->add_option("--fcidump", sw_fcidump, "integral file")->required();
    sweep->add_option("--scheme", sw_scheme, "coherent or incoherent")->capture_default_str();
    sweep->add_option("--grid", sw_grid, "lo:hi:n log-spaced thresholds in Hartree")->capture_default_str();
    sweep->add_option("--cache", sw_cache, "binary factorization cache");
    cs.format = "csv";
    add_common(sweep, cs);

    std::string va_fcidump, va_scheme = "coherent", va_grid = "1e-4:1e-1:16", va_out;
    auto* val = app.add_subcommand("validate", "dense oracle checks for small (N <= 6) inputs");
    val->add_option("--fcidump", va_fcidump, "integral file")->required();
    val->add_option("--sweep-scheme", va_scheme, "coherent or incoherent")->capture_default_str();
    val->add_option("--grid", va_grid, "lo:hi:n thresholds for the truncation checks")->capture_default_str();
    val->add_option("--out", va_out, "write the JSON validation report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    try {
        const unsigned threads = worker_count();
        if (*est) {
            check_format(ce.format);
            count_t lam = 1;
            LambdaMode mode = mode_of(ce, lam);
            Scheme scheme = parse_scheme(est_scheme);
            ErrorBudget budget{ce.delta_e};
            budget.check();
            DoubleFactorization full = load_factorization(est_fcidump, est_cache, threads);
            auto [df, plan] = truncate(full, scheme, est_eps);
            EstimateResult res;
            res.label = ce.label.empty() ? stem(est_fcidump) : ce.label;
            res.truncation = TruncationInfo{scheme, est_eps, plan.coherent_score, plan.incoherent_score,
                                            full.rank(), full.eigvec_count(), alpha_df(full)};
            res.cost = estimate(size_of(df), budget, mode, lam);
            std::string text = ce.format == "json"  ? to_json(res).dump(2) + "\n"
                               : ce.format == "csv" ? estimate_csv({res})
                                                    : estimate_table(res);
            emit(text, ce.out, out);
        } else if (*cost) {
            check_format(cc.format);
            count_t lam = 1;
            LambdaMode mode = mode_of(cc, lam);
            if (n < 1 || r < 0 || m < 0 || m_max < 0 || !(alpha > 0))
                throw ConfigError("cost needs N >= 1, R >= 0, M >= 0 and alpha > 0");
            ErrorBudget budget{cc.delta_e};
            budget.check();
            HamiltonianSize h{static_cast<std::size_t>(n), static_cast<std::size_t>(r), static_cast<std::size_t>(m),
                              static_cast<std::size_t>(m_max ? m_max : n), alpha};
            EstimateResult res;
            res.label = cc.label.empty() ? "direct" : cc.label;
            res.cost = estimate(h, budget, mode, lam);
            std::string text = cc.format == "json"  ? to_json(res).dump(2) + "\n"
                               : cc.format == "csv" ? estimate_csv({res})
                                                    : estimate_table(res);
            emit(text, cc.out, out);
        } else if (*sweep) {
            check_format(cs.format);
            count_t lam = 1;
            LambdaMode mode = mode_of(cs, lam);
            Scheme scheme = parse_scheme(sw_scheme);
            std::vector<double> grid = parse_grid(sw_grid);
            ErrorBudget budget{cs.delta_e};
            budget.check();
            DoubleFactorization df = load_factorization(sw_fcidump, sw_cache, threads);
            auto rows = threshold_sweep(df, scheme, grid);
            SweepResult res;
            res.label = cs.label.empty() ? stem(sw_fcidump) : cs.label;
            res.scheme = scheme;
            res.points.resize(rows.size());
            parallel_for(rows.size(), threads, [&](std::size_t i) {
                const auto& row = rows[i];
                HamiltonianSize h{df.n_orbitals, row.R, row.M, row.M_max, row.alpha_df};
                res.points[i] = {row, estimate(h, budget, mode, lam)};
            });
            std::string text = cs.format == "json"  ? to_json(res).dump(2) + "\n"
                               : cs.format == "csv" ? sweep_csv(res)
                                                    : sweep_table(res);
            emit(text, cs.out, out);
        } else if (*val) {
            ValidationReport rep = validate_fcidump(va_fcidump, parse_scheme(va_scheme), parse_grid(va_grid));
            out << rep.table();
            if (!va_out.empty())
                emit(rep.to_json().dump(2) + "\n", va_out, out);
            if (!rep.ok()) {
                err << "qdf: validation failed:";
                for (const auto& name : rep.failed())
                    err << ' ' << name;
                err << "\n";
                return 2;
            }
        }
    } catch (const ParseError& e) {
        err << "qdf: parse error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        err << "qdf: configuration error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "qdf: numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "qdf: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace qdf
