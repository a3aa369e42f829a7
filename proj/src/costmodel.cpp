#include "qdf/costmodel.hpp"
#include "qdf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <numbers>

namespace qdf {

namespace {

constexpr double kCeilSlack = 1e-9;

count_t ceil_slack(double x)
{
    return static_cast<count_t>(std::ceil(x - kCeilSlack));
}

// min over t in [t_lo, t_hi] of ceil(a/t) + c*(t-1). Walks the O(sqrt(a))
// blocks on which ceil(a/t) is constant, taking the smallest t of each.
count_t min_ceil_plus_linear(count_t a, count_t c, count_t t_lo, count_t t_hi)
{
    if (t_lo > t_hi)
        return std::numeric_limits<count_t>::max();
    if (c == 0)
        return ceil_div(a, t_hi);
    count_t best = std::numeric_limits<count_t>::max();
    count_t t = t_lo;
    while (t <= t_hi) {
        count_t q = ceil_div(a, t);
        best = std::min(best, q + c * (t - 1));
        if (q <= 1)
            break;
        t = ceil_div(a, q - 1);
    }
    return best;
}

} // namespace

int ceil_log2(count_t x)
{
    int k = 0;
    while (x > 1 && (count_t{1} << k) < x)
        ++k;
    return k;
}

count_t ceil_div(count_t a, count_t b)
{
    return a <= 0 ? 0 : (a + b - 1) / b;
}

count_t lookup_clean(count_t d, count_t b, count_t lam)
{
    return min_ceil_plus_linear(d, b, 1, std::max<count_t>(lam, 0) + 1);
}

count_t lookup_clean_uncompute(count_t d, count_t lam)
{
    return min_ceil_plus_linear(d, 1, 1, std::max<count_t>(lam, 0) + 1);
}

count_t lookup_dirty(count_t d, count_t b, count_t dirty_budget)
{
    if (b < 1 || dirty_budget < b)
        return d;
    return std::min(d, min_ceil_plus_linear(2 * d, 4 * b, 2, dirty_budget / b + 1));
}

count_t lookup_dirty_uncompute(count_t d, count_t b, count_t dirty_budget)
{
    if (b < 1 || dirty_budget < b)
        return d;
    return std::min(d, min_ceil_plus_linear(2 * d, 4, 2, dirty_budget / b + 1));
}

SparseLookupCost sparse_multiplexed_lookup(count_t q, count_t j, count_t b, count_t lam)
{
    const count_t lq = ceil_log2(q);
    const count_t dirty = 1 + b * (1 + lam);
    const count_t shift = lookup_dirty(j, lq, dirty) + lookup_dirty_uncompute(j, lq, dirty) + 2 * lq;
    SparseLookupCost c;
    c.compute = shift + lookup_clean(q, b, lam);
    c.uncompute = shift + lookup_clean_uncompute(q, lam);
    c.clean_qubits = std::max<count_t>(lq, ceil_log2(j)) + lam * b;
    return c;
}

StatePrepCost state_prep_cost(count_t d, count_t mu, count_t b_sp, count_t dirty_budget)
{
    StatePrepCost c;
    c.toffoli = mu + (d > 1 ? lookup_dirty(d, b_sp, dirty_budget) : 0);
    c.garbage_qubits = 2 * mu + ceil_log2(d);
    c.clean_qubits = b_sp;
    c.error = std::ldexp(1.0, -static_cast<int>(mu));
    return c;
}

int rotation_bits(count_t n_rotations, double eps)
{
    if (n_rotations < 1 || !(eps > 0.0))
        throw ConfigError("rotation_bits needs n >= 1 and eps > 0");
    return static_cast<int>(
        ceil_slack(0.5 + std::log2(static_cast<double>(n_rotations) * std::numbers::pi / eps)));
}

count_t rotation_array_cost(count_t m_rot, count_t k, count_t b, count_t kappa, count_t lam)
{
    if (kappa < b || b < 1)
        throw ConfigError("rotation array needs kappa >= b >= 1");
    const count_t slices = ceil_div(m_rot * b, kappa) + 1;
    // floor(1 + l/kappa) is constant on blocks of kappa, so only l = j*kappa matters.
    return slices * lookup_clean(k, kappa, std::max<count_t>(lam, 0) / kappa);
}

std::vector<double> majorana_angles(const Eigen::VectorXd& u)
{
    const Eigen::Index n = u.size();
    if (n == 0 || std::abs(u.norm() - 1.0) > 1e-10)
        throw ConfigError("majorana_angles needs a unit vector");
    if (n == 1 && u(0) < 0)
        throw ConfigError("majorana_angles cannot represent a negative length-1 vector");
    std::vector<double> theta;
    // tail(p) = ||u_p..u_{N-1}||
    Eigen::VectorXd tail(n + 1);
    tail(n) = 0.0;
    for (Eigen::Index p = n - 1; p >= 0; --p)
        tail(p) = std::hypot(tail(p + 1), u(p));
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
        if (p + 2 == n)
            theta.push_back(0.5 * std::atan2(u(n - 1), u(n - 2)));
        else
            theta.push_back(0.5 * std::atan2(tail(p + 1), u(p)));
    }
    return theta;
}

Eigen::VectorXd majorana_vector(const std::vector<double>& theta)
{
    const std::size_t n = theta.size() + 1;
    Eigen::VectorXd u(static_cast<Eigen::Index>(n));
    double prod = 1.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        u(static_cast<Eigen::Index>(p)) = std::cos(2 * theta[p]) * prod;
        prod *= std::sin(2 * theta[p]);
    }
    u(static_cast<Eigen::Index>(n - 1)) = prod;
    return u;
}

void ErrorBudget::check() const
{
    if (!(delta_e > 0.0))
        throw ConfigError("delta_e must be positive");
    if (!(pe_share > 0.0) || !(synth_share > 0.0) || std::abs(pe_share + synth_share - 1.0) > 1e-12)
        throw ConfigError("error-budget shares must be positive and sum to 1");
}

PrecisionParams precision_params(std::size_t n, double delta_w)
{
    if (!(delta_w > 0.0))
        throw ConfigError("walk error must be positive");
    const double ln = std::log2(static_cast<double>(n) / delta_w);
    const double l1 = std::log2(1.0 / delta_w);
    PrecisionParams p;
    p.beta = static_cast<int>(ceil_slack(5.652 + ln));
    p.mu = static_cast<int>(ceil_slack(2.5 + l1));
    p.beta1 = static_cast<int>(ceil_slack(5.152 + ln));
    p.mu1 = 2 + static_cast<int>(ceil_slack(l1));
    return p;
}

HamiltonianSize size_of(const DoubleFactorization& df)
{
    return {df.n_orbitals, df.rank(), df.eigvec_count(), df.max_eigvecs_per_rank(), alpha_df(df)};
}

WalkCost walk_operator_cost(const HamiltonianSize& h, const ErrorBudget& budget, count_t lam)
{
    budget.check();
    if (h.n == 0 || !(h.alpha > 0.0))
        throw ConfigError("walk cost needs N >= 1 and alpha > 0");
    if (lam < 0)
        throw ConfigError("lambda must be non-negative");
    WalkCost w;
    w.precision = precision_params(h.n, budget.delta_w(h.alpha));
    const count_t n = static_cast<count_t>(h.n), r = static_cast<count_t>(h.r), m = static_cast<count_t>(h.m);
    const count_t beta = w.precision.beta, mu = w.precision.mu;
    const count_t beta1 = w.precision.beta1, mu1 = w.precision.mu1;
    const bool two_body = m > 0;

    auto& t = w.toffoli;
    auto& q = w.qubits;
    q.system = 2 * n;
    q.misc = 2; // spin and sign qubits
    if (two_body) {
        const count_t kappa = n * beta;
        auto look = sparse_multiplexed_lookup(m, r, kappa, lam);
        t.lookup_compute = 2 * look.compute;
        t.lookup_uncompute = 2 * look.uncompute;
        const count_t m_max = static_cast<count_t>(std::max<std::size_t>(h.m_max, 1));
        const count_t b_sp = 2 * ceil_log2(m_max) + 2 * ceil_log2(r) + mu + 1;
        t.state_prep = 4 * state_prep_cost(m, mu, b_sp, kappa * (1 + lam) + 2 * n).toffoli;
        t.rotations = 8 * n * beta;
        t.controlled_swaps = 4 * n;
        q.angle_data = kappa * (1 + lam);
        q.index = ceil_log2(m) + ceil_log2(r);
        q.state_prep_garbage = 2 * mu + ceil_log2(m) + 1;
    } else {
        q.angle_data = n * beta1 * (1 + lam);
        q.index = ceil_log2(n);
        q.state_prep_garbage = 2 * mu1 + ceil_log2(n) + 1;
    }
    // One-electron block-encoding: lookup over N entries of N*beta1 bits,
    // 4N*beta1 rotations, 2N controlled swaps, two state preparations.
    const count_t dirty = n * beta1 * (1 + lam) + 2 * n;
    t.one_body = lookup_clean(n, n * beta1, lam) + lookup_clean_uncompute(n, lam) + 4 * n * beta1 + 2 * n +
                 2 * state_prep_cost(n, mu1, ceil_log2(n) + mu1, dirty).toffoli;
    t.reflection = q.index + q.state_prep_garbage + q.misc;

    w.walk_toffoli = t.total();
    w.logical_qubits = q.total();
    return w;
}

count_t leading_order_walk_cost(count_t n, count_t m, count_t beta, count_t lam)
{
    return 4 * ceil_div(m, 1 + lam) + 2 * lam * (n * beta + 1) + 8 * n * beta + 4 * n;
}

count_t pe_repetitions(double alpha, const ErrorBudget& budget)
{
    budget.check();
    if (!(alpha > 0.0))
        throw ConfigError("alpha must be positive");
    const double x = std::numbers::pi * alpha / (2.0 * budget.pe_share * budget.delta_e);
    return std::max<count_t>(1, static_cast<count_t>(std::ceil(x * (1.0 - 1e-12))));
}

std::string to_string(LambdaMode m)
{
    switch (m) {
    case LambdaMode::min_toffoli: return "min-toffoli";
    case LambdaMode::min_qubits: return "min-qubits";
    case LambdaMode::fixed: return "fixed";
    }
    return "?";
}

LambdaMode parse_lambda_mode(const std::string& s)
{
    if (s == "min-toffoli" || s == "min_toffoli")
        return LambdaMode::min_toffoli;
    if (s == "min-qubits" || s == "min_qubits")
        return LambdaMode::min_qubits;
    if (s == "fixed")
        return LambdaMode::fixed;
    throw ConfigError("unknown mode '" + s + "' (expected min-toffoli, min-qubits or fixed)");
}

CostReport estimate(const HamiltonianSize& h, const ErrorBudget& budget, LambdaMode mode, count_t lam_fixed,
                    count_t lam_max)
{
    count_t lam = lam_fixed;
    if (mode != LambdaMode::fixed) {
        count_t best_lam = 0, best = std::numeric_limits<count_t>::max();
        for (count_t l = 0; l <= lam_max; ++l) {
            count_t c = walk_operator_cost(h, budget, l).walk_toffoli;
            if (c < best) {
                best = c;
                best_lam = l;
            }
        }
        // Fewer-qubits mode keeps a single clean copy unless even that costs Toffolis.
        lam = mode == LambdaMode::min_toffoli ? best_lam : std::min<count_t>(1, best_lam);
    }
    WalkCost w = walk_operator_cost(h, budget, lam);
    CostReport rep;
    rep.size = h;
    rep.budget = budget;
    rep.mode = mode;
    rep.precision = w.precision;
    rep.lambda = lam;
    rep.toffoli = w.toffoli;
    rep.qubits = w.qubits;
    rep.walk_toffoli = w.walk_toffoli;
    rep.logical_qubits = w.logical_qubits;
    rep.pe_repetitions = pe_repetitions(h.alpha, budget);
    rep.total_toffoli = rep.walk_toffoli * rep.pe_repetitions;
    rep.leading_order_walk = leading_order_walk_cost(static_cast<count_t>(h.n), static_cast<count_t>(h.m),
                                                     w.precision.beta, lam);
    rep.leading_order_total = rep.leading_order_walk * rep.pe_repetitions;
    rep.state_prep_error = std::ldexp(1.0, -w.precision.mu);
    rep.runtime_fast_s = static_cast<double>(rep.total_toffoli) * kToffoliSecondsFast;
    rep.runtime_slow_s = static_cast<double>(rep.total_toffoli) * kToffoliSecondsSlow;
    return rep;
}

double operator_norm(const Eigen::MatrixXcd& a)
{
    if (a.size() == 0)
        return 0.0;
    Eigen::MatrixXcd g = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trotter_step_bound(const std::vector<Eigen::MatrixXcd>& h)
{
    if (h.empty())
        return 0.0;
    const Eigen::Index dim = h[0].rows();
    for (const auto& f : h)
        if (f.rows() != dim || f.cols() != dim)
            throw ConfigError("trotter_step_bound: fragment dimension mismatch");
    if (dim > 4096)
        throw ConfigError("trotter_step_bound: dimension above the dense limit 4096");

    // Blocks: connected components of the joint sparsity pattern. Nested
    // commutators keep this block structure, and the norm is the max over blocks.
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(dim));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Eigen::Index x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& f : h)
        for (Eigen::Index a = 0; a < dim; ++a)
            for (Eigen::Index b = 0; b < dim; ++b)
                if (f(a, b) != 0.0)
                    parent[find(a)] = find(b);
    std::map<Eigen::Index, std::vector<Eigen::Index>> comp;
    for (Eigen::Index a = 0; a < dim; ++a)
        comp[find(a)].push_back(a);

    const std::size_t nf = h.size();
    std::vector<std::vector<Eigen::MatrixXcd>> blocks(nf);
    for (std::size_t j = 0; j < nf; ++j)
        for (const auto& [root, idx] : comp) {
            const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
            Eigen::MatrixXcd sub(k, k);
            for (Eigen::Index a = 0; a < k; ++a)
                for (Eigen::Index b = 0; b < k; ++b)
                    sub(a, b) = h[j](idx[a], idx[b]);
            blocks[j].push_back(std::move(sub));
        }
    const std::size_t nb = comp.size();

    auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd {
        return a * b - b * a;
    };
    auto nested_norm = [&](std::size_t a, std::size_t b, std::size_t c) {
        double worst = 0.0;
        for (std::size_t k = 0; k < nb; ++k)
            worst = std::max(worst, operator_norm(comm(blocks[a][k], comm(blocks[b][k], blocks[c][k]))));
        return worst;
    };
    double total = 0.0;
    for (std::size_t b = 0; b < nf; ++b) {
        double s = 0.0;
        for (std::size_t c = b + 1; c < nf; ++c) {
            for (std::size_t a = b + 1; a < nf; ++a)
                s += nested_norm(a, b, c);
            s += 0.5 * nested_norm(b, b, c);
        }
        total += s;
    }
    return total / 12.0;
}

} // namespace qdf
