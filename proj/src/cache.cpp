#include "qdf/cache.hpp"
#include "qdf/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

namespace qdf {

namespace {

constexpr char kMagic[8] = {'Q', 'D', 'F', 'C', 'A', 'C', 'H', 'E'};

class Writer {
public:
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    void bytes(const char* p, std::size_t n) { buf.insert(buf.end(), p, p + n); }
    std::vector<char> buf;

private:
    void put(std::uint64_t v, int n)
    {
        for (int i = 0; i < n; ++i)
            buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
};

class Reader {
public:
    explicit Reader(std::vector<char> b) : buf(std::move(b)) {}
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    double f64() { return std::bit_cast<double>(get(8)); }
    void bytes(char* out, std::size_t n)
    {
        need(n);
        std::memcpy(out, buf.data() + pos, n);
        pos += n;
    }
    bool done() const { return pos == buf.size(); }

private:
    void need(std::size_t n)
    {
        if (buf.size() - pos < n)
            throw ParseError("factorization cache truncated");
    }
    std::uint64_t get(int n)
    {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += static_cast<std::size_t>(n);
        return v;
    }
    std::vector<char> buf;
    std::size_t pos = 0;
};

void write_matrix(Writer& w, const Eigen::MatrixXd& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            w.f64(m(i, j));
}

Eigen::MatrixXd read_matrix(Reader& r, std::size_t n)
{
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = r.f64();
    return m;
}

void write_pair(Writer& w, const EigenFactor& e)
{
    w.f64(e.eigenvalue);
    for (Eigen::Index i = 0; i < e.eigenvector.size(); ++i)
        w.f64(e.eigenvector(i));
}

EigenFactor read_pair(Reader& r, std::size_t n, std::size_t rank)
{
    EigenFactor e;
    e.rank_index = rank;
    e.eigenvalue = r.f64();
    e.eigenvector.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        e.eigenvector(static_cast<Eigen::Index>(i)) = r.f64();
    return e;
}

std::uint64_t checked_count(std::uint64_t v, std::uint64_t limit)
{
    if (v > limit)
        throw ParseError("factorization cache has an implausible count");
    return v;
}

} // namespace

std::uint64_t file_fingerprint(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ParseError("cannot open file: " + path);
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_df_cache(const std::string& path, const DoubleFactorization& df, std::uint64_t fingerprint)
{
    const std::size_t n = df.n_orbitals;
    Writer w;
    w.bytes(kMagic, sizeof kMagic);
    w.u32(kCacheVersion);
    w.u32(0);
    w.u64(fingerprint);
    w.u64(n);
    w.f64(df.one_body.scalar_shift);
    write_matrix(w, df.one_body.h_tilde);
    write_matrix(w, df.one_body.l_minus1);
    w.u64(df.one_body_eigs.size());
    for (const auto& e : df.one_body_eigs)
        write_pair(w, e);
    w.u64(df.rank());
    for (std::size_t r = 0; r < df.rank(); ++r) {
        w.u64(df.two_body[r].empty() ? r : df.two_body[r][0].rank_index);
        w.f64(df.schatten_norms[r]);
        w.u64(df.two_body[r].size());
        for (const auto& e : df.two_body[r])
            write_pair(w, e);
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !f.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size())))
        throw ConfigError("cannot write cache file: " + path);
}

std::optional<DoubleFactorization> read_df_cache(const std::string& path, std::uint64_t fingerprint)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        return std::nullopt;
    Reader r(std::vector<char>(std::istreambuf_iterator<char>(f), {}));
    char magic[8];
    r.bytes(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw ParseError(path + ": not a factorization cache");
    if (std::uint32_t v = r.u32(); v != kCacheVersion)
        throw ParseError(path + ": unsupported cache version " + std::to_string(v));
    r.u32();
    if (r.u64() != fingerprint)
        return std::nullopt;

    DoubleFactorization df;
    const std::size_t n = checked_count(r.u64(), 4096);
    df.n_orbitals = n;
    df.one_body.scalar_shift = r.f64();
    df.one_body.h_tilde = read_matrix(r, n);
    df.one_body.l_minus1 = read_matrix(r, n);
    const std::size_t k = checked_count(r.u64(), n);
    for (std::size_t i = 0; i < k; ++i)
        df.one_body_eigs.push_back(read_pair(r, n, std::numeric_limits<std::size_t>::max()));
    const std::size_t rank = checked_count(r.u64(), n * n);
    for (std::size_t i = 0; i < rank; ++i) {
        std::size_t idx = r.u64();
        df.schatten_norms.push_back(r.f64());
        const std::size_t m = checked_count(r.u64(), n);
        std::vector<EigenFactor> pairs;
        for (std::size_t j = 0; j < m; ++j)
            pairs.push_back(read_pair(r, n, idx));
        df.two_body.push_back(std::move(pairs));
    }
    if (!r.done())
        throw ParseError(path + ": trailing bytes in factorization cache");
    return df;
}

} // namespace qdf
