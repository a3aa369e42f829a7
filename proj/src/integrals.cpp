#include "qdf/integrals.hpp"
#include "qdf/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

namespace qdf {

namespace {

constexpr double kConflictTol = 1e-10;

std::string upper(std::string s)
{
    for (auto& c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

struct Header {
    std::size_t norb = 0;
    std::size_t nelec = 0;
};

// Reads the namelist block; leaves `in` positioned at the first body line.
Header read_header(std::istream& in, std::size_t& line_no)
{
    std::string line, text;
    bool started = false, ended = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string u = upper(line);
        auto first = u.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        if (!started) {
            if (u[first] != '&' && u[first] != '$')
                throw ParseError("line " + std::to_string(line_no) + ": expected namelist header (&FCI ...)");
            started = true;
        }
        text += u + " ";
        auto last = u.find_last_not_of(" \t\r");
        if (u.find("&END") != std::string::npos || u.find("$END") != std::string::npos || u[last] == '/') {
            ended = true;
            break;
        }
    }
    if (!started)
        throw ParseError("empty input: missing namelist header");
    if (!ended)
        throw ParseError("unterminated namelist header (no &END)");

    auto grab = [&](const char* key, std::size_t& out) {
        std::regex re(std::string("(^|[^A-Z])") + key + R"(\s*=\s*(-?\d+))");
        std::smatch m;
        if (!std::regex_search(text, m, re))
            throw ParseError(std::string("malformed header: missing ") + key);
        long v = std::stol(m[2].str());
        if (v < 0)
            throw ParseError(std::string("malformed header: negative ") + key);
        out = static_cast<std::size_t>(v);
    };
    Header h;
    grab("NORB", h.norb);
    grab("NELEC", h.nelec);
    if (h.norb == 0)
        throw ParseError("malformed header: NORB must be positive");
    return h;
}

struct Entry {
    double value;
    std::array<std::size_t, 4> idx; // 1-based, 0 = absent
    std::size_t line;
};

// Returns false for blank lines.
bool read_entry(const std::string& line, std::size_t line_no, std::size_t norb, Entry& e)
{
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok))
        return false;
    for (auto& c : tok)
        if (c == 'D' || c == 'd')
            c = 'E';
    const char* b = tok.data();
    if (*b == '+')
        ++b;
    auto [ptr, ec] = std::from_chars(b, tok.data() + tok.size(), e.value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(e.value))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric value '" + tok + "'");
    for (auto& ix : e.idx) {
        long v;
        if (!(ss >> tok))
            throw ParseError("line " + std::to_string(line_no) + ": expected 4 orbital indices");
        auto [p2, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec2 != std::errc() || p2 != tok.data() + tok.size())
            throw ParseError("line " + std::to_string(line_no) + ": bad index '" + tok + "'");
        if (v < 0 || static_cast<std::size_t>(v) > norb)
            throw ParseError("line " + std::to_string(line_no) + ": index " + std::to_string(v) +
                             " out of range [0, " + std::to_string(norb) + "]");
        ix = static_cast<std::size_t>(v);
    }
    e.line = line_no;
    return true;
}

enum class Kind { core, one_body, two_body, orbital_energy };

Kind classify(const Entry& e)
{
    auto [i, j, k, l] = e.idx;
    if (i == 0 && j == 0 && k == 0 && l == 0)
        return Kind::core;
    if (i > 0 && j > 0 && k == 0 && l == 0)
        return Kind::one_body;
    if (i > 0 && j > 0 && k > 0 && l > 0)
        return Kind::two_body;
    if (i > 0 && j == 0 && k == 0 && l == 0)
        return Kind::orbital_energy;
    throw ParseError("line " + std::to_string(e.line) + ": invalid index pattern");
}

std::string tuple_str(const std::vector<std::size_t>& t)
{
    std::string s = "(";
    for (std::size_t a = 0; a < t.size(); ++a)
        s += (a ? "," : "") + std::to_string(t[a]);
    return s + ")";
}

// The eight slots of the orbit of (i,j,k,l), starting with the tuple itself.
std::array<std::array<std::size_t, 4>, 8> orbit_slots(std::size_t i, std::size_t j, std::size_t k, std::size_t l)
{
    return {{{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
             {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}}};
}

} // namespace

TwoBodyTensor::TwoBodyTensor(std::size_t n) : n_(n)
{
    std::size_t np = n * (n + 1) / 2;
    data_.assign(np * (np + 1) / 2, 0.0);
}

void TwoBodyTensor::representative(std::size_t o, std::size_t& i, std::size_t& j,
                                   std::size_t& k, std::size_t& l) const
{
    auto unpair = [](std::size_t p, std::size_t& a, std::size_t& b) {
        a = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(p) + 1.0) - 1.0) / 2.0);
        while (a * (a + 1) / 2 > p)
            --a;
        while ((a + 1) * (a + 2) / 2 <= p)
            ++a;
        b = p - a * (a + 1) / 2;
    };
    std::size_t p, q;
    unpair(o, p, q);
    unpair(p, i, j);
    unpair(q, k, l);
}

DenseTensor4 TwoBodyTensor::to_dense() const
{
    DenseTensor4 t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                for (std::size_t l = 0; l < n_; ++l)
                    t(i, j, k, l) = (*this)(i, j, k, l);
    return t;
}

MolecularIntegrals::MolecularIntegrals(std::size_t n, std::size_t nelec)
    : n_orbitals(n), n_electrons(nelec), one_body(Eigen::MatrixXd::Zero(n, n)), two_body(n)
{
}

std::string SymmetryViolation::describe() const
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", discrepancy);
    return tuple_str(index) + "/" + tuple_str(partner) + " differ by " + buf;
}

MolecularIntegrals parse_fcidump(std::istream& in, std::vector<std::string>* warnings)
{
    std::size_t line_no = 0;
    Header hdr = read_header(in, line_no);
    const std::size_t n = hdr.norb;
    MolecularIntegrals m(n, hdr.nelec);

    std::vector<bool> seen2(m.two_body.orbit_count(), false);
    std::vector<bool> seen1(n * (n + 1) / 2, false);
    bool seen_core = false;

    auto store = [&](bool seen, double& slot, const Entry& e) {
        if (seen) {
            if (std::abs(slot - e.value) > kConflictTol)
                throw ParseError("line " + std::to_string(e.line) + ": value conflicts with an earlier "
                                 "symmetry-equivalent entry");
            if (warnings)
                warnings->push_back("line " + std::to_string(e.line) + ": duplicate entry, last value kept");
        }
        slot = e.value;
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        Entry e;
        if (!read_entry(line, line_no, n, e))
            continue;
        auto [i, j, k, l] = e.idx;
        switch (classify(e)) {
        case Kind::core:
            store(seen_core, m.core_energy, e);
            seen_core = true;
            break;
        case Kind::one_body: {
            std::size_t p = TwoBodyTensor::pair(i - 1, j - 1);
            double v = m.one_body(i - 1, j - 1);
            store(seen1[p], v, e);
            seen1[p] = true;
            m.one_body(i - 1, j - 1) = v;
            m.one_body(j - 1, i - 1) = v;
            break;
        }
        case Kind::two_body: {
            std::size_t o = TwoBodyTensor::orbit(i - 1, j - 1, k - 1, l - 1);
            store(seen2[o], m.two_body.data()[o], e);
            seen2[o] = true;
            break;
        }
        case Kind::orbital_energy:
            if (warnings)
                warnings->push_back("line " + std::to_string(line_no) + ": orbital energy ignored");
            break;
        }
    }
    return m;
}

MolecularIntegrals read_fcidump(const std::string& path, std::vector<std::string>* warnings)
{
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open FCIDUMP file: " + path);
    try {
        return parse_fcidump(f, warnings);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

LiteralIntegrals parse_fcidump_literal(std::istream& in)
{
    std::size_t line_no = 0;
    Header hdr = read_header(in, line_no);
    const std::size_t n = hdr.norb;
    LiteralIntegrals li;
    li.n_orbitals = n;
    li.one_body = Eigen::MatrixXd::Zero(n, n);
    li.two_body = DenseTensor4(n);
    std::vector<bool> explicit2(li.two_body.v.size(), false);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> explicit1 =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
    std::vector<Entry> entries;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        Entry e;
        if (!read_entry(line, line_no, n, e))
            continue;
        Kind kind = classify(e);
        auto [i, j, k, l] = e.idx;
        if (kind == Kind::one_body) {
            li.one_body(i - 1, j - 1) = e.value;
            explicit1(i - 1, j - 1) = true;
            entries.push_back(e);
        } else if (kind == Kind::two_body) {
            li.two_body(i - 1, j - 1, k - 1, l - 1) = e.value;
            explicit2[((((i - 1) * n + j - 1) * n + k - 1) * n + l - 1)] = true;
            entries.push_back(e);
        }
    }
    for (const auto& e : entries) {
        auto [i, j, k, l] = e.idx;
        if (k == 0) {
            if (!explicit1(j - 1, i - 1))
                li.one_body(j - 1, i - 1) = e.value;
            continue;
        }
        for (auto s : orbit_slots(i - 1, j - 1, k - 1, l - 1)) {
            std::size_t flat = ((s[0] * n + s[1]) * n + s[2]) * n + s[3];
            if (!explicit2[flat])
                li.two_body.v[flat] = e.value;
        }
    }
    return li;
}

void write_fcidump(std::ostream& out, const MolecularIntegrals& m)
{
    const std::size_t n = m.n_orbitals;
    out << "&FCI NORB=" << n << ",NELEC=" << m.n_electrons << ",MS2=0,\n  ORBSYM=";
    for (std::size_t i = 0; i < n; ++i)
        out << "1,";
    out << "\n  ISYM=1,\n&END\n";
    char buf[64];
    auto emit = [&](double v, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        std::snprintf(buf, sizeof buf, "%.16e", v);
        out << buf << ' ' << i << ' ' << j << ' ' << k << ' ' << l << '\n';
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l <= k; ++l) {
                    if (TwoBodyTensor::pair(k, l) > TwoBodyTensor::pair(i, j))
                        continue;
                    double v = m.two_body(i, j, k, l);
                    if (v != 0.0)
                        emit(v, i + 1, j + 1, k + 1, l + 1);
                }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (m.one_body(i, j) != 0.0)
                emit(m.one_body(i, j), i + 1, j + 1, 0, 0);
    emit(m.core_energy, 0, 0, 0, 0);
}

std::vector<SymmetryViolation> validate_symmetry(const MolecularIntegrals& m, double tol)
{
    std::vector<SymmetryViolation> out;
    const std::size_t n = m.n_orbitals;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double a = m.one_body(i, j), b = m.one_body(j, i);
            if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a - b) > tol)
                out.push_back({{i + 1, j + 1}, {j + 1, i + 1}, std::abs(a - b)});
        }
    // Compressed storage is symmetric by construction; only finiteness can fail.
    const auto& d = m.two_body.data();
    for (std::size_t o = 0; o < d.size(); ++o)
        if (!std::isfinite(d[o])) {
            std::size_t i, j, k, l;
            m.two_body.representative(o, i, j, k, l);
            std::vector<std::size_t> t{i + 1, j + 1, k + 1, l + 1};
            out.push_back({t, t, d[o]});
        }
    if (!std::isfinite(m.core_energy))
        out.push_back({{0, 0, 0, 0}, {0, 0, 0, 0}, m.core_energy});
    return out;
}

std::vector<SymmetryViolation> validate_symmetry(const Eigen::MatrixXd& one_body,
                                                 const DenseTensor4& t, double tol)
{
    std::vector<SymmetryViolation> out;
    const std::size_t n = t.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            double a = one_body(i, j), b = one_body(j, i);
            if (!(std::abs(a - b) <= tol))
                out.push_back({{i + 1, j + 1}, {j + 1, i + 1}, std::abs(a - b)});
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l <= k; ++l) {
                    if (TwoBodyTensor::pair(k, l) > TwoBodyTensor::pair(i, j))
                        continue;
                    auto slots = orbit_slots(i, j, k, l);
                    // distinct slots only
                    std::vector<std::array<std::size_t, 4>> uniq;
                    for (auto& s : slots)
                        if (std::find(uniq.begin(), uniq.end(), s) == uniq.end())
                            uniq.push_back(s);
                    auto val = [&](const std::array<std::size_t, 4>& s) { return t(s[0], s[1], s[2], s[3]); };

                    // Reference is the value shared by most slots; the canonical slot wins ties.
                    std::size_t ref = 0, best = 0;
                    for (std::size_t a = 0; a < uniq.size(); ++a) {
                        std::size_t cnt = 0;
                        for (auto& s : uniq)
                            if (std::abs(val(s) - val(uniq[a])) <= tol)
                                ++cnt;
                        if (cnt > best) {
                            best = cnt;
                            ref = a;
                        }
                    }
                    for (std::size_t a = 0; a < uniq.size(); ++a) {
                        double diff = std::abs(val(uniq[a]) - val(uniq[ref]));
                        if (!(diff <= tol)) {
                            auto& s = uniq[a];
                            auto& r = uniq[ref];
                            out.push_back({{s[0] + 1, s[1] + 1, s[2] + 1, s[3] + 1},
                                           {r[0] + 1, r[1] + 1, r[2] + 1, r[3] + 1}, diff});
                        }
                    }
                }
    return out;
}

AdjustedOneBody adjusted_one_body(const MolecularIntegrals& m)
{
    const std::size_t n = m.n_orbitals;
    const auto& g = m.two_body;
    AdjustedOneBody a;
    a.h_tilde = m.one_body;
    a.l_minus1 = m.one_body;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double exch = 0.0, coul = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                exch += g(i, l, l, j);
                coul += g(l, l, i, j);
            }
            a.h_tilde(i, j) -= 0.5 * exch;
            a.l_minus1(i, j) += coul - 0.5 * exch;
        }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += m.one_body(i, i);
        for (std::size_t l = 0; l < n; ++l)
            s += 0.5 * (g(l, l, i, i) - g(i, l, l, i));
    }
    a.scalar_shift = s;
    return a;
}

std::size_t count_nonzero_after_truncation(const MolecularIntegrals& m, double epsilon_in)
{
    if (!(epsilon_in >= 0.0))
        throw ConfigError("epsilon_in must be non-negative");
    std::vector<double> mags;
    for (double v : m.two_body.data())
        if (v != 0.0)
            mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    double sumsq = 0.0;
    std::size_t removed = 0;
    for (double v : mags) {
        if (std::sqrt(sumsq + v * v) > epsilon_in)
            break;
        sumsq += v * v;
        ++removed;
    }
    return mags.size() - removed;
}

} // namespace qdf
