#include "qdf/oracle.hpp"
#include "qdf/errors.hpp"

#include <Eigen/Sparse>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace qdf {

namespace {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;

void check_cap(std::size_t n)
{
    if (n > kDenseMaxOrbitals)
        throw ConfigError("N=" + std::to_string(n) + " exceeds the dense oracle cap of " +
                          std::to_string(kDenseMaxOrbitals) + " spatial orbitals");
}

// Applies a_p (create=false) or a_p^dagger to basis state x. Returns false if it vanishes.
bool ladder(std::uint32_t& x, unsigned p, bool create, double& sign)
{
    const std::uint32_t bit = 1u << p;
    if (static_cast<bool>(x & bit) == create)
        return false;
    if (std::popcount(x & (bit - 1)) & 1)
        sign = -sign;
    x ^= bit;
    return true;
}

SpMat annihilator(unsigned nmodes, unsigned p)
{
    const std::uint32_t dim = 1u << nmodes;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::uint32_t x = 0; x < dim; ++x) {
        std::uint32_t y = x;
        double s = 1.0;
        if (ladder(y, p, false, s))
            trip.emplace_back(static_cast<int>(y), static_cast<int>(x), s);
    }
    SpMat a(dim, dim);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

struct Majoranas {
    std::vector<SpMat> g0, g1; // indexed by mode
};

Majoranas majoranas(std::size_t n)
{
    const unsigned nm = static_cast<unsigned>(2 * n);
    Majoranas m;
    for (unsigned p = 0; p < nm; ++p) {
        SpMat a = annihilator(nm, p);
        SpMat ad = SpMat(a.adjoint());
        m.g0.push_back(a + ad);
        m.g1.push_back(cplx(0, -1) * (a - ad));
    }
    return m;
}

SpMat sparse_g(const Eigen::MatrixXd& l, const Majoranas& mj)
{
    const std::size_t n = static_cast<std::size_t>(l.rows());
    const int dim = 1 << (2 * n);
    SpMat g(dim, dim);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (l(i, j) == 0.0)
                    continue;
                SpMat t = mj.g0[i + s * n] * mj.g1[j + s * n];
                g += cplx(0, 0.5 * l(i, j)) * t;
            }
    return g;
}

Eigen::MatrixXcd identity(std::size_t n)
{
    return Eigen::MatrixXcd::Identity(1 << (2 * n), 1 << (2 * n));
}

} // namespace

FockOperator build_from_integrals(const MolecularIntegrals& m)
{
    const std::size_t n = m.n_orbitals;
    check_cap(n);
    const unsigned nm = static_cast<unsigned>(2 * n);
    const std::uint32_t dim = 1u << nm;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const auto& g = m.two_body;

    for (std::uint32_t x = 0; x < dim; ++x) {
        h(x, x) += m.core_energy;
        for (unsigned s = 0; s < 2; ++s)
            for (unsigned p = 0; p < n; ++p)
                for (unsigned q = 0; q < n; ++q) {
                    double v = m.one_body(p, q);
                    if (v == 0.0)
                        continue;
                    std::uint32_t y = x;
                    double sign = 1.0;
                    if (ladder(y, q + s * n, false, sign) && ladder(y, p + s * n, true, sign))
                        h(y, x) += v * sign;
                }
        // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
        for (unsigned s1 = 0; s1 < 2; ++s1)
            for (unsigned s2 = 0; s2 < 2; ++s2)
                for (unsigned p = 0; p < n; ++p)
                    for (unsigned q = 0; q < n; ++q)
                        for (unsigned r = 0; r < n; ++r)
                            for (unsigned t = 0; t < n; ++t) {
                                double v = g(p, q, r, t);
                                if (v == 0.0)
                                    continue;
                                std::uint32_t y = x;
                                double sign = 1.0;
                                if (ladder(y, q + s1 * n, false, sign) && ladder(y, t + s2 * n, false, sign) &&
                                    ladder(y, r + s2 * n, true, sign) && ladder(y, p + s1 * n, true, sign))
                                    h(y, x) += 0.5 * v * sign;
                            }
    }
    return {n, h.cast<cplx>()};
}

FockOperator majorana_one_body(const Eigen::MatrixXd& l)
{
    const std::size_t n = static_cast<std::size_t>(l.rows());
    check_cap(n);
    return {n, Eigen::MatrixXcd(sparse_g(l, majoranas(n)))};
}

FockOperator build_from_df(const DoubleFactorization& df, double constant)
{
    const std::size_t n = df.n_orbitals;
    check_cap(n);
    Majoranas mj = majoranas(n);
    SpMat h = sparse_g(df.one_body.l_minus1, mj);
    for (std::size_t r = 0; r < df.rank(); ++r) {
        SpMat g = sparse_g(df.factor_matrix(r), mj);
        SpMat g2 = g * g;
        h += 0.5 * g2;
    }
    Eigen::MatrixXcd dense(h);
    dense += (df.one_body.scalar_shift + constant) * identity(n);
    return {n, dense};
}

NormPair one_body_norm_check(const Eigen::MatrixXd& l)
{
    return {spectral_norm(majorana_one_body(l)), schatten_norm(l)};
}

double ground_energy(const FockOperator& op, std::size_t n_electrons)
{
    std::vector<Eigen::Index> sector;
    for (Eigen::Index x = 0; x < op.matrix.rows(); ++x)
        if (static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(x))) == n_electrons)
            sector.push_back(x);
    if (sector.empty())
        throw ConfigError("no states with " + std::to_string(n_electrons) + " electrons");
    const Eigen::Index k = static_cast<Eigen::Index>(sector.size());
    Eigen::MatrixXcd sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            sub(a, b) = op.matrix(sector[a], sector[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("ground_energy: eigensolver failed");
    return es.eigenvalues()(0);
}

double spectral_norm(const FockOperator& op)
{
    if (op.matrix.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("spectral_norm: eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double hermiticity_error(const FockOperator& op)
{
    return (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff();
}

double number_commutator_error(const FockOperator& op)
{
    // [H, N]_{yx} = H_{yx} (n_x - n_y)
    double worst = 0.0;
    for (Eigen::Index y = 0; y < op.matrix.rows(); ++y)
        for (Eigen::Index x = 0; x < op.matrix.cols(); ++x) {
            int dn = std::popcount(static_cast<std::uint32_t>(x)) - std::popcount(static_cast<std::uint32_t>(y));
            if (dn != 0)
                worst = std::max(worst, std::abs(op.matrix(y, x)) * std::abs(dn));
        }
    return worst;
}

double alpha_reference_shift(const DoubleFactorization& df)
{
    double s = df.one_body.scalar_shift;
    for (std::size_t r = 0; r < df.rank(); ++r) {
        double sh = 0.0;
        for (const auto& e : df.two_body[r])
            sh += std::abs(e.eigenvalue);
        s += 0.25 * sh * sh;
    }
    return s;
}

std::vector<Eigen::MatrixXcd> df_fragments(const DoubleFactorization& df)
{
    const std::size_t n = df.n_orbitals;
    check_cap(n);
    Majoranas mj = majoranas(n);
    std::vector<Eigen::MatrixXcd> out;
    Eigen::MatrixXcd one(sparse_g(df.one_body.l_minus1, mj));
    out.push_back(one + df.one_body.scalar_shift * identity(n));
    for (std::size_t r = 0; r < df.rank(); ++r) {
        SpMat g = sparse_g(df.factor_matrix(r), mj);
        SpMat g2 = g * g;
        out.emplace_back(0.5 * Eigen::MatrixXcd(g2));
    }
    return out;
}

} // namespace qdf
