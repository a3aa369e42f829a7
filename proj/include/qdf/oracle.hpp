#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qdf/factorization.hpp"
#include "qdf/integrals.hpp"

namespace qdf {

constexpr std::size_t kDenseMaxOrbitals = 6;

// Dense operator on the 2^(2N) Fock space. Mode p = i + sigma*N, spin-up
// block first, Jordan-Wigner encoded with mode p on bit p.
struct FockOperator {
    std::size_t n_spatial = 0;
    Eigen::MatrixXcd matrix;
};

FockOperator build_from_integrals(const MolecularIntegrals& m);

// scalar*I + G_{L^(-1)} + 1/2 sum_r G_{L^(r)}^2 + constant*I
FockOperator build_from_df(const DoubleFactorization& df, double constant = 0.0);

// G_L = (i/2) sum_{ij,sigma} L_ij gamma_{i sigma 0} gamma_{j sigma 1}
FockOperator majorana_one_body(const Eigen::MatrixXd& l);

struct NormPair {
    double spectral = 0.0;
    double schatten = 0.0;
};
NormPair one_body_norm_check(const Eigen::MatrixXd& l);

double ground_energy(const FockOperator& op, std::size_t n_electrons);
double spectral_norm(const FockOperator& op);

// Largest entry of H - H^dagger and of [H, N_hat].
double hermiticity_error(const FockOperator& op);
double number_commutator_error(const FockOperator& op);

// Constant the double-factorized operator is shifted by before its norm is
// compared with alpha_df: scalar + 1/4 sum_r ||L^(r)||_SH^2.
double alpha_reference_shift(const DoubleFactorization& df);

// {scalar*I + G_{L^(-1)}, 1/2 G_{L^(1)}^2, ..., 1/2 G_{L^(R)}^2}
std::vector<Eigen::MatrixXcd> df_fragments(const DoubleFactorization& df);

} // namespace qdf
