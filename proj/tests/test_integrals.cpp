#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "qdf/errors.hpp"
#include "qdf/integrals.hpp"
#include "test_support.hpp"

using namespace qdf;

namespace {

MolecularIntegrals parse(const std::string& text, std::vector<std::string>* warn = nullptr)
{
    std::istringstream in(text);
    return parse_fcidump(in, warn);
}

const char* kHeader = "&FCI NORB=2,NELEC=2,\n ORBSYM=1,1,\n ISYM=1,\n&END\n";

} // namespace

TEST(ParseFcidump, MapsFieldsDirectly)
{
    auto m = parse(std::string(kHeader) + "0.5 1 1 1 1\n1.0 1 1 0 0\n-0.25 0 0 0 0\n");
    EXPECT_EQ(m.n_orbitals, 2u);
    EXPECT_EQ(m.n_electrons, 2u);
    EXPECT_EQ(m.one_body(0, 0), 1.0);
    EXPECT_EQ(m.two_body(0, 0, 0, 0), 0.5);
    EXPECT_EQ(m.core_energy, -0.25);
}

TEST(ParseFcidump, ExpandsEightFoldSymmetry)
{
    auto m = parse(std::string(kHeader) + "0.3 1 2 1 2\n");
    for (auto [i, j, k, l] : std::vector<std::array<int, 4>>{{0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}})
        EXPECT_EQ(m.two_body(i, j, k, l), 0.3);
    // (ij)=(kl) here, so the mirrored four coincide; check a full orbit too
    auto m2 = parse(std::string(kHeader) + "0.7 2 1 1 1\n");
    for (auto [i, j, k, l] : std::vector<std::array<int, 4>>{
             {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})
        EXPECT_EQ(m2.two_body(i, j, k, l), 0.7);
    EXPECT_EQ(m2.two_body(1, 1, 0, 0), 0.0);
}

TEST(ParseFcidump, SingleLineHeaderAndFortranExponent)
{
    auto m = parse("&FCI NORB=1,NELEC=1,MS2=1,ORBSYM=3,ISYM=2 /\n1.5D-01 1 1 0 0\n");
    EXPECT_DOUBLE_EQ(m.one_body(0, 0), 0.15);
}

TEST(ParseFcidump, HeaderErrors)
{
    EXPECT_THROW(parse("&FCI NELEC=2,\n&END\n"), ParseError);
    EXPECT_THROW(parse("&FCI NORB=2,\n&END\n"), ParseError);
    EXPECT_THROW(parse("&FCI NORB=2,NELEC=2,\n0.1 1 1 1 1\n"), ParseError);
    EXPECT_THROW(parse("0.1 1 1 1 1\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(ParseFcidump, BodyErrorsCarryLineNumber)
{
    auto expect_line = [](const std::string& body, const std::string& needle) {
        try {
            parse(std::string(kHeader) + body);
            FAIL() << "expected ParseError";
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_line("0.1 3 1 1 1\n", "line 5");
    expect_line("0.1 1 1 1 1\nabc 1 1 1 1\n", "line 6");
    expect_line("0.1 1 1 1\n", "line 5");
    expect_line("0.1 -1 1 1 1\n", "out of range");
    expect_line("0.1 1 2 1 2\n0.2 2 1 2 1\n", "line 6");
    expect_line("0.1 0 1 0 0\n", "invalid index pattern");
}

TEST(ParseFcidump, DuplicateWithinToleranceKeepsLastAndWarns)
{
    std::vector<std::string> warn;
    auto m = parse(std::string(kHeader) + "0.1 1 2 1 2\n0.10000000000001 2 1 2 1\n0.4 1 2 0 0\n0.4 2 1 0 0\n",
                   &warn);
    EXPECT_EQ(m.two_body(0, 1, 0, 1), 0.10000000000001);
    EXPECT_EQ(warn.size(), 2u);
}

TEST(ParseFcidump, FixtureRoundTripIsBitIdentical)
{
    for (const char* name : {"h2_sto3g_r1.4.fcidump", "h4_chain_sto3g_r1.8.fcidump"}) {
        auto a = read_fcidump(test::fixture(name));
        std::ostringstream w1;
        write_fcidump(w1, a);
        auto b = parse(w1.str());
        EXPECT_EQ(a.n_orbitals, b.n_orbitals);
        EXPECT_EQ(a.n_electrons, b.n_electrons);
        EXPECT_EQ(a.core_energy, b.core_energy);
        EXPECT_TRUE(a.one_body == b.one_body);
        EXPECT_TRUE(a.two_body.data() == b.two_body.data());
        std::ostringstream w2;
        write_fcidump(w2, b);
        EXPECT_EQ(w1.str(), w2.str());
    }
}

TEST(ParseFcidump, H2FixtureContents)
{
    auto m = read_fcidump(test::fixture("h2_sto3g_r1.4.fcidump"));
    EXPECT_EQ(m.n_orbitals, 2u);
    EXPECT_EQ(m.n_electrons, 2u);
    EXPECT_DOUBLE_EQ(m.core_energy, 1.0 / 1.4);
}

TEST(ReadFcidump, MissingFileNamesPath)
{
    try {
        read_fcidump("/nonexistent/x.fcidump");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/x.fcidump"), std::string::npos);
    }
}

TEST(ValidateSymmetry, ParsedIntegralsAreClean)
{
    auto m = read_fcidump(test::fixture("h4_chain_sto3g_r1.8.fcidump"));
    EXPECT_TRUE(validate_symmetry(m).empty());
}

TEST(ValidateSymmetry, InjectedFaultNamesBothSlots)
{
    std::istringstream in(std::string(kHeader) + "0.3 1 2 1 2\n0.301 2 1 2 1\n0.2 1 1 2 2\n");
    auto lit = parse_fcidump_literal(in);
    auto v = validate_symmetry(lit.one_body, lit.two_body);
    ASSERT_EQ(v.size(), 1u);
    std::set<std::vector<std::size_t>> named{v[0].index, v[0].partner};
    EXPECT_TRUE(named.count({1, 2, 1, 2}));
    EXPECT_TRUE(named.count({2, 1, 2, 1}));
    EXPECT_NEAR(v[0].discrepancy, 1e-3, 1e-12);
}

TEST(ValidateSymmetry, DenseCorruptionOfOneSlot)
{
    std::mt19937_64 rng(11);
    auto m = test::random_psd_integrals(3, 2, rng);
    DenseTensor4 t = m.two_body.to_dense();
    EXPECT_TRUE(validate_symmetry(m.one_body, t).empty());
    t(0, 1, 0, 1) += 1e-3;
    auto v = validate_symmetry(m.one_body, t);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].index, (std::vector<std::size_t>{1, 2, 1, 2}));
}

TEST(ValidateSymmetry, SymmetrizedRandomTensorIsClean)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (std::size_t n = 1; n <= 4; ++n) {
        DenseTensor4 raw(n), sym(n);
        for (auto& x : raw.v)
            x = g(rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        sym(i, j, k, l) = (raw(i, j, k, l) + raw(j, i, k, l) + raw(i, j, l, k) + raw(j, i, l, k) +
                                           raw(k, l, i, j) + raw(l, k, i, j) + raw(k, l, j, i) + raw(l, k, j, i)) /
                                          8.0;
        Eigen::MatrixXd h = test::random_symmetric(n, rng);
        EXPECT_TRUE(validate_symmetry(h, sym).empty()) << "n=" << n;
    }
}

TEST(ValidateSymmetry, AsymmetricOneBody)
{
    MolecularIntegrals m(2, 2);
    m.one_body(0, 1) = 0.1;
    m.one_body(1, 0) = 0.2;
    auto v = validate_symmetry(m);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].index, (std::vector<std::size_t>{2, 1}));
}

TEST(AdjustedOneBody, ZeroInteraction)
{
    MolecularIntegrals m(3, 2);
    m.one_body << 1, 2, 3, 2, 5, 6, 3, 6, 9;
    auto a = adjusted_one_body(m);
    EXPECT_TRUE(a.h_tilde == m.one_body);
    EXPECT_TRUE(a.l_minus1 == m.one_body);
    EXPECT_EQ(a.scalar_shift, 15.0);
}

TEST(AdjustedOneBody, SingleOrbitalHandEvaluation)
{
    MolecularIntegrals m(1, 1);
    m.one_body(0, 0) = 0.7;
    m.two_body.set(0, 0, 0, 0, 0.3);
    auto a = adjusted_one_body(m);
    EXPECT_DOUBLE_EQ(a.h_tilde(0, 0), 0.7 - 0.15);
    EXPECT_DOUBLE_EQ(a.l_minus1(0, 0), 0.7 + 0.15);
    EXPECT_DOUBLE_EQ(a.scalar_shift, 0.7);
}

TEST(AdjustedOneBody, MatchesDoubleLoopOracle)
{
    std::mt19937_64 rng(3);
    for (std::size_t n : {2u, 3u, 5u}) {
        auto m = test::random_psd_integrals(n, 3, rng);
        auto a = adjusted_one_body(m);
        DenseTensor4 t = m.two_body.to_dense();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double coul = 0, exch = 0;
                for (std::size_t l = 0; l < n; ++l) {
                    coul += t(l, l, i, j);
                    exch += t(i, l, l, j);
                }
                EXPECT_NEAR(a.l_minus1(i, j) - a.h_tilde(i, j), coul, 1e-12);
                EXPECT_NEAR(a.h_tilde(i, j), m.one_body(i, j) - 0.5 * exch, 1e-12);
            }
        EXPECT_LT((a.h_tilde - a.h_tilde.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((a.l_minus1 - a.l_minus1.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(AdjustedOneBody, IsLinear)
{
    std::mt19937_64 rng(4);
    auto m = test::random_psd_integrals(4, 3, rng);
    auto m2 = m;
    m2.one_body *= 2;
    for (auto& x : m2.two_body.data())
        x *= 2;
    auto a = adjusted_one_body(m), b = adjusted_one_body(m2);
    EXPECT_LT((b.h_tilde - 2 * a.h_tilde).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((b.l_minus1 - 2 * a.l_minus1).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(b.scalar_shift, 2 * a.scalar_shift, 1e-12);
}

TEST(CountNonzero, NothingRemovedAtZero)
{
    auto m = read_fcidump(test::fixture("h4_chain_sto3g_r1.8.fcidump"));
    std::size_t nz = 0;
    for (double v : m.two_body.data())
        nz += v != 0.0;
    EXPECT_EQ(count_nonzero_after_truncation(m, 0.0), nz);
}

TEST(CountNonzero, SingleSmallOrbitRemoved)
{
    MolecularIntegrals m(2, 2);
    m.two_body.set(0, 1, 0, 1, 1e-5);
    EXPECT_EQ(count_nonzero_after_truncation(m, 1e-3), 0u);
    EXPECT_EQ(count_nonzero_after_truncation(m, 1e-6), 1u);
}

TEST(CountNonzero, MatchesBruteForceOracle)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3, 0);
    std::bernoulli_distribution keep(0.4);
    const std::size_t n = 5;
    MolecularIntegrals m(n, 2);
    DenseTensor4 dense(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (keep(rng)) {
                        double v = std::pow(10.0, u(rng)) * (keep(rng) ? 1 : -1);
                        m.two_body.set(i, j, k, l, v);
                    }
    // Oracle: distinct orbits found by sorting each tuple's eight images.
    std::set<std::array<std::size_t, 4>> orbits;
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    std::array<std::array<std::size_t, 4>, 8> imgs{{{i, j, k, l}, {j, i, k, l}, {i, j, l, k},
                                                                    {j, i, l, k}, {k, l, i, j}, {l, k, i, j},
                                                                    {k, l, j, i}, {l, k, j, i}}};
                    auto key = *std::min_element(imgs.begin(), imgs.end());
                    if (orbits.insert(key).second && m.two_body(i, j, k, l) != 0.0)
                        vals.push_back(std::abs(m.two_body(i, j, k, l)));
                }
    std::sort(vals.begin(), vals.end());
    for (double eps : {0.0, 1e-3, 1e-2, 0.1, 0.5, 5.0}) {
        std::size_t removed = 0;
        double acc = 0;
        while (removed < vals.size() && std::sqrt(acc + vals[removed] * vals[removed]) <= eps) {
            acc += vals[removed] * vals[removed];
            ++removed;
        }
        EXPECT_EQ(count_nonzero_after_truncation(m, eps), vals.size() - removed) << eps;
    }
}
