#include "qdf/truncation.hpp"
#include "qdf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qdf {

std::string to_string(Scheme s)
{
    return s == Scheme::coherent ? "coherent" : "incoherent";
}

Scheme parse_scheme(const std::string& s)
{
    if (s == "coherent")
        return Scheme::coherent;
    if (s == "incoherent")
        return Scheme::incoherent;
    throw ConfigError("unknown truncation scheme '" + s + "' (expected coherent or incoherent)");
}

std::vector<ScoredPair> score_eigenpairs(const DoubleFactorization& df)
{
    std::vector<ScoredPair> out;
    for (std::size_t r = 0; r < df.rank(); ++r)
        for (std::size_t m = 0; m < df.two_body[r].size(); ++m)
            out.push_back({r, m, df.schatten_norms[r] * std::abs(df.two_body[r][m].eigenvalue)});
    std::sort(out.begin(), out.end(), [](const ScoredPair& a, const ScoredPair& b) {
        if (a.score != b.score)
            return a.score < b.score;
        if (a.r != b.r)
            return a.r < b.r;
        return a.m < b.m;
    });
    return out;
}

namespace {

// Number of leading entries of `scores` removable within budget `eps`,
// continuing from a previous prefix of length `start` with running sums.
std::size_t advance(const std::vector<ScoredPair>& scores, Scheme scheme, double eps, std::size_t start,
                    double& lin, double& sq)
{
    std::size_t k = start;
    for (; k < scores.size(); ++k) {
        double s = scores[k].score;
        bool fits = scheme == Scheme::coherent ? (lin + s <= eps) : (std::sqrt(sq + s * s) <= eps);
        if (!fits)
            break;
        lin += s;
        sq += s * s;
    }
    return k;
}

struct Kept {
    std::size_t R = 0, M = 0, M_max = 0;
    double alpha = 0.0;
};

Kept summarize(const DoubleFactorization& df, const std::vector<std::vector<char>>& removed)
{
    Kept k;
    double one = 0.0;
    for (const auto& e : df.one_body_eigs)
        one += std::abs(e.eigenvalue);
    double two = 0.0;
    for (std::size_t r = 0; r < df.rank(); ++r) {
        double s = 0.0;
        std::size_t cnt = 0;
        for (std::size_t m = 0; m < df.two_body[r].size(); ++m)
            if (!removed[r][m]) {
                s += std::abs(df.two_body[r][m].eigenvalue);
                ++cnt;
            }
        if (cnt) {
            ++k.R;
            k.M += cnt;
            k.M_max = std::max(k.M_max, cnt);
            two += s * s;
        }
    }
    k.alpha = 2.0 * one + 0.25 * two;
    return k;
}

} // namespace

std::pair<DoubleFactorization, TruncationPlan> truncate(const DoubleFactorization& df, Scheme scheme,
                                                        double epsilon)
{
    if (!(epsilon >= 0.0))
        throw ConfigError("truncation threshold must be non-negative");
    auto scores = score_eigenpairs(df);
    double lin = 0.0, sq = 0.0;
    std::size_t k = advance(scores, scheme, epsilon, 0, lin, sq);

    TruncationPlan plan;
    plan.scheme = scheme;
    plan.epsilon = epsilon;
    plan.coherent_score = lin;
    plan.incoherent_score = std::sqrt(sq);
    std::vector<std::vector<char>> removed(df.rank());
    for (std::size_t r = 0; r < df.rank(); ++r)
        removed[r].assign(df.two_body[r].size(), 0);
    for (std::size_t a = 0; a < k; ++a) {
        plan.removed.emplace_back(scores[a].r, scores[a].m);
        removed[scores[a].r][scores[a].m] = 1;
    }

    DoubleFactorization out;
    out.n_orbitals = df.n_orbitals;
    out.one_body = df.one_body;
    out.one_body_eigs = df.one_body_eigs;
    for (std::size_t r = 0; r < df.rank(); ++r) {
        std::vector<EigenFactor> kept;
        for (std::size_t m = 0; m < df.two_body[r].size(); ++m)
            if (!removed[r][m])
                kept.push_back(df.two_body[r][m]);
        if (kept.empty())
            continue;
        out.two_body.push_back(std::move(kept));
        out.schatten_norms.push_back(df.schatten_norms[r]);
    }
    plan.surviving_R = out.rank();
    plan.surviving_M = out.eigvec_count();
    return {std::move(out), std::move(plan)};
}

std::vector<SweepRow> threshold_sweep(const DoubleFactorization& df, Scheme scheme,
                                      const std::vector<double>& grid)
{
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw ConfigError("threshold grid must be sorted ascending");
    auto scores = score_eigenpairs(df);
    std::vector<std::vector<char>> removed(df.rank());
    for (std::size_t r = 0; r < df.rank(); ++r)
        removed[r].assign(df.two_body[r].size(), 0);

    std::vector<SweepRow> rows;
    double lin = 0.0, sq = 0.0;
    std::size_t k = 0;
    for (double eps : grid) {
        if (!(eps >= 0.0))
            throw ConfigError("truncation threshold must be non-negative");
        std::size_t next = advance(scores, scheme, eps, k, lin, sq);
        for (; k < next; ++k)
            removed[scores[k].r][scores[k].m] = 1;
        Kept kept = summarize(df, removed);
        rows.push_back({eps, kept.R, kept.M, kept.M_max, kept.alpha, lin, std::sqrt(sq)});
    }
    return rows;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    if (!(lo > 0.0) || !(hi >= lo) || n == 0)
        throw ConfigError("grid needs 0 < lo <= hi and n >= 1");
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_grid()
{
    return log_grid(1e-4, 1e-1, 16);
}

} // namespace qdf
