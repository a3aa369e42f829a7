#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdf/factorization.hpp"

namespace qdf {

using count_t = std::int64_t;

// ceil(log2(x)), 0 for x <= 1.
int ceil_log2(count_t x);
count_t ceil_div(count_t a, count_t b);

// Clean-ancilla data lookup: min over l in [0, lam] of ceil(d/(1+l)) + l*b.
count_t lookup_clean(count_t d, count_t b, count_t lam);
// Measurement-based uncompute: min over l in [0, lam] of ceil(d/(1+l)) + l.
count_t lookup_clean_uncompute(count_t d, count_t lam);
// Dirty-ancilla lookup: min(d, min over l in [1, budget/b] of ceil(2d/(1+l)) + 4*l*b).
count_t lookup_dirty(count_t d, count_t b, count_t dirty_budget);
// As above with +4l. `b` is the output width, which bounds l through the budget.
count_t lookup_dirty_uncompute(count_t d, count_t b, count_t dirty_budget);

struct SparseLookupCost {
    count_t compute = 0;
    count_t uncompute = 0;
    count_t clean_qubits = 0;
};

// Q entries grouped under J outer indices, b output bits, lam clean copies.
SparseLookupCost sparse_multiplexed_lookup(count_t Q, count_t J, count_t b, count_t lam);

struct StatePrepCost {
    count_t toffoli = 0;
    count_t garbage_qubits = 0;
    count_t clean_qubits = 0;
    double error = 0.0; // l1 error of the prepared amplitudes, 2^-mu
};

StatePrepCost state_prep_cost(count_t d, count_t mu, count_t b_sp, count_t dirty_budget);

int rotation_bits(count_t n_rotations, double eps);

count_t rotation_array_cost(count_t m_rot, count_t k, count_t b, count_t kappa, count_t lam);

// Angles theta_0..theta_{N-2} with u_p = cos(2 theta_p) prod_{j<p} sin(2 theta_j)
// and u_{N-1} = prod_j sin(2 theta_j).
std::vector<double> majorana_angles(const Eigen::VectorXd& u);
Eigen::VectorXd majorana_vector(const std::vector<double>& theta);

struct ErrorBudget {
    double delta_e = 1e-3;
    double pe_share = 0.9;
    double synth_share = 0.1;

    double delta_w(double alpha) const { return synth_share * delta_e / alpha; }
    void check() const;
};

struct PrecisionParams {
    int beta = 0;
    int mu = 0;
    int beta1 = 0;
    int mu1 = 0;
};

PrecisionParams precision_params(std::size_t n, double delta_w);

struct ToffoliBreakdown {
    count_t lookup_compute = 0;
    count_t lookup_uncompute = 0;
    count_t rotations = 0;
    count_t controlled_swaps = 0;
    count_t state_prep = 0;
    count_t reflection = 0;
    count_t one_body = 0;
    count_t total() const
    {
        return lookup_compute + lookup_uncompute + rotations + controlled_swaps + state_prep + reflection +
               one_body;
    }
};

struct QubitBreakdown {
    count_t system = 0;
    count_t angle_data = 0;
    count_t index = 0;
    count_t state_prep_garbage = 0;
    count_t misc = 0;
    count_t total() const { return system + angle_data + index + state_prep_garbage + misc; }
};

struct HamiltonianSize {
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t m = 0;
    std::size_t m_max = 0;
    double alpha = 0.0;
};

HamiltonianSize size_of(const DoubleFactorization& df);

struct WalkCost {
    PrecisionParams precision;
    ToffoliBreakdown toffoli;
    QubitBreakdown qubits;
    count_t walk_toffoli = 0;
    count_t logical_qubits = 0;
};

WalkCost walk_operator_cost(const HamiltonianSize& h, const ErrorBudget& budget, count_t lam);

// 4(M/(1+lam) + (lam/2)(N beta + 1) + 2 N beta + N), with the division rounded up.
count_t leading_order_walk_cost(count_t n, count_t m, count_t beta, count_t lam);

count_t pe_repetitions(double alpha, const ErrorBudget& budget);

enum class LambdaMode { min_toffoli, min_qubits, fixed };

std::string to_string(LambdaMode m);
LambdaMode parse_lambda_mode(const std::string& s);

constexpr count_t kLambdaMax = 64;
constexpr double kToffoliSecondsFast = 10e-6;
constexpr double kToffoliSecondsSlow = 10e-3;

struct CostReport {
    HamiltonianSize size;
    ErrorBudget budget;
    LambdaMode mode = LambdaMode::min_toffoli;
    PrecisionParams precision;
    count_t lambda = 0;
    ToffoliBreakdown toffoli;
    QubitBreakdown qubits;
    count_t walk_toffoli = 0;
    count_t logical_qubits = 0;
    count_t pe_repetitions = 0;
    count_t total_toffoli = 0;
    count_t leading_order_walk = 0;
    count_t leading_order_total = 0;
    double state_prep_error = 0.0;
    double runtime_fast_s = 0.0;
    double runtime_slow_s = 0.0;
};

CostReport estimate(const HamiltonianSize& h, const ErrorBudget& budget, LambdaMode mode,
                    count_t lam_fixed = 1, count_t lam_max = kLambdaMax);

// Coefficient of t^3 in the second-order product-formula error for H = sum_j H_j.
double trotter_step_bound(const std::vector<Eigen::MatrixXcd>& fragments);

double operator_norm(const Eigen::MatrixXcd& a);

} // namespace qdf
