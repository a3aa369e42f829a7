#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qdf/integrals.hpp"

namespace qdf {

struct SingleFactorization {
    std::size_t n_orbitals = 0;
    std::vector<Eigen::MatrixXd> factors;
    double residual_sup_norm = 0.0;
};

struct EigenFactor {
    std::size_t rank_index = 0;
    double eigenvalue = 0.0;
    Eigen::VectorXd eigenvector;
};

struct DoubleFactorization {
    std::size_t n_orbitals = 0;
    AdjustedOneBody one_body;
    std::vector<EigenFactor> one_body_eigs;
    std::vector<std::vector<EigenFactor>> two_body;
    // Schatten norm of each factor before any truncation; indexed like two_body.
    std::vector<double> schatten_norms;

    std::size_t rank() const { return two_body.size(); }
    std::size_t eigvec_count() const;
    std::size_t max_eigvecs_per_rank() const;
    // Sum_m lambda_m R_m R_m^T over the eigenpairs currently held for rank r.
    Eigen::MatrixXd factor_matrix(std::size_t r) const;
};

constexpr double kCholeskyTol = 1e-10;
constexpr double kPsdTol = 1e-8;
constexpr double kEigenZeroCutoff = 1e-13;

Eigen::MatrixXd eri_supermatrix(const MolecularIntegrals& m);

SingleFactorization single_factorize(const MolecularIntegrals& m, double tol = kCholeskyTol,
                                     double psd_tol = kPsdTol);

// Eigenpairs of a symmetric matrix, |lambda| descending, numerical zeros
// dropped, each vector's first nonzero component positive.
std::vector<EigenFactor> symmetric_eigenpairs(const Eigen::MatrixXd& a, std::size_t rank_index);

DoubleFactorization double_factorize(const SingleFactorization& sf, const AdjustedOneBody& adj,
                                     unsigned threads = 1);

double schatten_norm(const Eigen::MatrixXd& a);
double entrywise_norm(const Eigen::MatrixXd& a);

double alpha_df(const DoubleFactorization& df);
double alpha_cd(const SingleFactorization& sf, const AdjustedOneBody& adj);

DenseTensor4 reconstruct_two_body(const DoubleFactorization& df);

} // namespace qdf
