#include "qdf/factorization.hpp"
#include "qdf/errors.hpp"
#include "qdf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qdf {

std::size_t DoubleFactorization::eigvec_count() const
{
    std::size_t m = 0;
    for (const auto& r : two_body)
        m += r.size();
    return m;
}

std::size_t DoubleFactorization::max_eigvecs_per_rank() const
{
    std::size_t m = 0;
    for (const auto& r : two_body)
        m = std::max(m, r.size());
    return m;
}

Eigen::MatrixXd DoubleFactorization::factor_matrix(std::size_t r) const
{
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n_orbitals, n_orbitals);
    for (const auto& e : two_body[r])
        f += e.eigenvalue * e.eigenvector * e.eigenvector.transpose();
    return f;
}

Eigen::MatrixXd eri_supermatrix(const MolecularIntegrals& m)
{
    const std::size_t n = m.n_orbitals;
    const Eigen::Index nn = static_cast<Eigen::Index>(n * n);
    Eigen::MatrixXd w(nn, nn);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    w(static_cast<Eigen::Index>(i * n + j), static_cast<Eigen::Index>(k * n + l)) =
                        m.two_body(i, j, k, l);
    return w;
}

SingleFactorization single_factorize(const MolecularIntegrals& m, double tol, double psd_tol)
{
    if (!(tol > 0.0))
        throw ConfigError("Cholesky tolerance must be positive");
    const std::size_t n = m.n_orbitals;
    const Eigen::MatrixXd w = eri_supermatrix(m);
    const Eigen::Index nn = w.rows();
    if (!w.allFinite())
        throw NumericError("two-electron integrals contain non-finite values");

    Eigen::VectorXd diag = w.diagonal();
    std::vector<Eigen::VectorXd> vecs;
    auto check_diag = [&] {
        Eigen::Index at;
        double lo = diag.minCoeff(&at);
        if (lo < -psd_tol)
            throw NotPositiveSemidefinite("ERI supermatrix is not positive semidefinite (residual diagonal " +
                                          std::to_string(lo) + " at composite index " +
                                          std::to_string(at) + ")");
    };
    check_diag();

    while (static_cast<Eigen::Index>(vecs.size()) < nn) {
        Eigen::Index p;
        double dmax = diag.maxCoeff(&p);
        if (dmax <= tol)
            break;
        Eigen::VectorXd col = w.col(p);
        for (const auto& v : vecs)
            col -= v * v(p);
        Eigen::VectorXd v = col / std::sqrt(dmax);
        diag -= v.cwiseAbs2();
        diag(p) = 0.0;
        check_diag();
        vecs.push_back(std::move(v));
    }

    SingleFactorization sf;
    sf.n_orbitals = n;
    Eigen::MatrixXd lmat(nn, static_cast<Eigen::Index>(vecs.size()));
    for (std::size_t r = 0; r < vecs.size(); ++r) {
        lmat.col(static_cast<Eigen::Index>(r)) = vecs[r];
        Eigen::MatrixXd f(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                f(i, j) = vecs[r](static_cast<Eigen::Index>(i * n + j));
        sf.factors.push_back(0.5 * (f + f.transpose()));
    }

    Eigen::MatrixXd resid = w;
    if (!vecs.empty())
        resid.noalias() -= lmat * lmat.transpose();
    sf.residual_sup_norm = nn ? resid.cwiseAbs().maxCoeff() : 0.0;

    // A PSD residual satisfies |R_ab| <= max(R_aa, R_bb); a larger entry
    // exposes a negative eigenvalue of roughly that size.
    for (Eigen::Index a = 0; a < nn; ++a)
        for (Eigen::Index b = 0; b < a; ++b)
            if (std::abs(resid(a, b)) > psd_tol + std::max(resid(a, a), resid(b, b)))
                throw NotPositiveSemidefinite("ERI supermatrix is not positive semidefinite (residual entry " +
                                              std::to_string(resid(a, b)) + ")");
    if (nn > 0 && nn <= 1024) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(resid, Eigen::EigenvaluesOnly);
        if (es.info() == Eigen::Success && es.eigenvalues()(0) < -psd_tol)
            throw NotPositiveSemidefinite("ERI supermatrix is not positive semidefinite (eigenvalue " +
                                          std::to_string(es.eigenvalues()(0)) + ")");
    }
    return sf;
}

std::vector<EigenFactor> symmetric_eigenpairs(const Eigen::MatrixXd& a, std::size_t rank_index)
{
    std::vector<EigenFactor> out;
    if (a.rows() == 0)
        return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw NumericError("eigendecomposition failed for factor " + std::to_string(rank_index));
    const auto& vals = es.eigenvalues();
    const double top = vals.cwiseAbs().maxCoeff();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(vals.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        double ax = std::abs(vals(x)), ay = std::abs(vals(y));
        if (ax != ay)
            return ax > ay;
        return vals(x) > vals(y);
    });
    for (Eigen::Index k : order) {
        if (!(std::abs(vals(k)) > kEigenZeroCutoff * top))
            continue;
        Eigen::VectorXd v = es.eigenvectors().col(k);
        v.normalize();
        for (Eigen::Index c = 0; c < v.size(); ++c)
            if (std::abs(v(c)) > 1e-10) {
                if (v(c) < 0)
                    v = -v;
                break;
            }
        out.push_back({rank_index, vals(k), std::move(v)});
    }
    return out;
}

DoubleFactorization double_factorize(const SingleFactorization& sf, const AdjustedOneBody& adj,
                                     unsigned threads)
{
    DoubleFactorization df;
    df.n_orbitals = sf.n_orbitals;
    df.one_body = adj;
    df.one_body_eigs = symmetric_eigenpairs(adj.l_minus1, std::numeric_limits<std::size_t>::max());
    df.two_body.resize(sf.factors.size());
    parallel_for(sf.factors.size(), threads,
                 [&](std::size_t r) { df.two_body[r] = symmetric_eigenpairs(sf.factors[r], r); });
    for (const auto& pairs : df.two_body) {
        double s = 0.0;
        for (const auto& e : pairs)
            s += std::abs(e.eigenvalue);
        df.schatten_norms.push_back(s);
    }
    return df;
}

double schatten_norm(const Eigen::MatrixXd& a)
{
    if (a.rows() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double entrywise_norm(const Eigen::MatrixXd& a)
{
    return a.cwiseAbs().sum();
}

double alpha_df(const DoubleFactorization& df)
{
    double one = 0.0;
    for (const auto& e : df.one_body_eigs)
        one += std::abs(e.eigenvalue);
    double two = 0.0;
    for (const auto& pairs : df.two_body) {
        double s = 0.0;
        for (const auto& e : pairs)
            s += std::abs(e.eigenvalue);
        two += s * s;
    }
    return 2.0 * one + 0.25 * two;
}

double alpha_cd(const SingleFactorization& sf, const AdjustedOneBody& adj)
{
    double two = 0.0;
    for (const auto& f : sf.factors) {
        double e = entrywise_norm(f);
        two += e * e;
    }
    return 2.0 * entrywise_norm(adj.h_tilde) + 2.0 * two;
}

DenseTensor4 reconstruct_two_body(const DoubleFactorization& df)
{
    const std::size_t n = df.n_orbitals;
    DenseTensor4 t(n);
    for (std::size_t r = 0; r < df.rank(); ++r) {
        Eigen::MatrixXd f = df.factor_matrix(r);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        t(i, j, k, l) += f(i, j) * f(k, l);
    }
    return t;
}

} // namespace qdf
