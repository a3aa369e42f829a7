#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdf {

// Dense N^4 tensor, index ((i*N+j)*N+k)*N+l. Only used at small N.
struct DenseTensor4 {
    std::size_t n = 0;
    std::vector<double> v;

    DenseTensor4() = default;
    explicit DenseTensor4(std::size_t n_) : n(n_), v(n_ * n_ * n_ * n_, 0.0) {}

    double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l)
    { return v[((i * n + j) * n + k) * n + l]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const
    { return v[((i * n + j) * n + k) * n + l]; }
};

// Two-electron integrals (ij|kl) stored once per 8-fold orbit.
class TwoBodyTensor {
public:
    TwoBodyTensor() = default;
    explicit TwoBodyTensor(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t orbit_count() const { return data_.size(); }

    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const
    { return data_[orbit(i, j, k, l)]; }
    void set(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double value)
    { data_[orbit(i, j, k, l)] = value; }

    static std::size_t pair(std::size_t i, std::size_t j)
    { return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i; }
    static std::size_t orbit(std::size_t i, std::size_t j, std::size_t k, std::size_t l)
    { return pair(pair(i, j), pair(k, l)); }

    // Canonical representative (i>=j, k>=l, (ij)>=(kl)) of orbit slot `o`.
    void representative(std::size_t o, std::size_t& i, std::size_t& j,
                        std::size_t& k, std::size_t& l) const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    DenseTensor4 to_dense() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct MolecularIntegrals {
    std::size_t n_orbitals = 0;
    std::size_t n_electrons = 0;
    double core_energy = 0.0;
    Eigen::MatrixXd one_body;
    TwoBodyTensor two_body;

    MolecularIntegrals() = default;
    MolecularIntegrals(std::size_t n, std::size_t nelec);
};

struct AdjustedOneBody {
    Eigen::MatrixXd h_tilde;
    Eigen::MatrixXd l_minus1;
    double scalar_shift = 0.0;
};

// Integrals as written in a file, one slot per literal index tuple. A line
// fills its own slot and any symmetry partner not set explicitly elsewhere.
// Used for auditing files whose symmetry is in doubt.
struct LiteralIntegrals {
    std::size_t n_orbitals = 0;
    Eigen::MatrixXd one_body;
    DenseTensor4 two_body;
};

struct SymmetryViolation {
    std::vector<std::size_t> index;   // 1-based, as in the file
    std::vector<std::size_t> partner; // 1-based
    double discrepancy = 0.0;
    std::string describe() const;
};

MolecularIntegrals parse_fcidump(std::istream& in, std::vector<std::string>* warnings = nullptr);
MolecularIntegrals read_fcidump(const std::string& path, std::vector<std::string>* warnings = nullptr);
LiteralIntegrals parse_fcidump_literal(std::istream& in);

void write_fcidump(std::ostream& out, const MolecularIntegrals& m);

std::vector<SymmetryViolation> validate_symmetry(const MolecularIntegrals& m, double tol = 1e-10);
std::vector<SymmetryViolation> validate_symmetry(const Eigen::MatrixXd& one_body,
                                                 const DenseTensor4& two_body, double tol = 1e-10);

AdjustedOneBody adjusted_one_body(const MolecularIntegrals& m);

std::size_t count_nonzero_after_truncation(const MolecularIntegrals& m, double epsilon_in);

} // namespace qdf
