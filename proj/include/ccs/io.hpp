#ifndef CCS_IO_HPP
#define CCS_IO_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccs/decoders.hpp"
#include "ccs/expander_matrix.hpp"
#include "ccs/signal_model.hpp"

namespace ccs {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits round-trip any IEEE double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write file: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failed: " + path);
}

// --- matrix format -------------------------------------------------------
//
// Text:    header line "ccs-matrix v1 m n d", then n lines of d
//          space-separated row indices (column j on line j).
// Binary:  little-endian 32-bit integers m, n, d, then n*d row indices
//          column-major.
// Both round-trip bit-exactly; readers sniff the header.

inline std::string matrix_to_text(const ExpanderMatrix& A) {
    std::ostringstream out;
    out << "ccs-matrix v1 " << A.rows() << ' ' << A.cols() << ' ' << A.degree() << '\n';
    for (std::uint32_t j = 0; j < A.cols(); ++j) {
        const auto col = A.column(j);
        for (std::uint32_t t = 0; t < A.degree(); ++t) {
            if (t) out << ' ';
            out << col[t];
        }
        out << '\n';
    }
    return out.str();
}

inline void append_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline std::uint32_t read_u32le(const std::string& s, std::size_t off) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[off])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 3])) << 24;
}

inline std::string matrix_to_binary(const ExpanderMatrix& A) {
    std::string out;
    out.reserve(12 + A.flat().size() * 4);
    append_u32le(out, A.rows());
    append_u32le(out, A.cols());
    append_u32le(out, A.degree());
    for (std::uint32_t v : A.flat()) append_u32le(out, v);
    return out;
}

inline ExpanderMatrix matrix_from_bytes(const std::string& bytes) {
    if (bytes.rfind("ccs-matrix", 0) == 0) {
        std::istringstream in(bytes);
        std::string magic, version;
        std::uint32_t m = 0, n = 0, d = 0;
        in >> magic >> version >> m >> n >> d;
        if (!in || version != "v1") throw io_error("malformed matrix header");
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n) * d);
        for (auto& v : rows)
            if (!(in >> v)) throw io_error("truncated matrix file");
        try {
            return ExpanderMatrix::from_columns(m, n, d, std::move(rows));
        } catch (const std::invalid_argument& e) {
            throw io_error(std::string("invalid matrix file: ") + e.what());
        }
    }
    if (bytes.size() < 12) throw io_error("matrix file too short");
    const std::uint32_t m = read_u32le(bytes, 0);
    const std::uint32_t n = read_u32le(bytes, 4);
    const std::uint32_t d = read_u32le(bytes, 8);
    const std::size_t need = 12 + static_cast<std::size_t>(n) * d * 4;
    if (n == 0 || d == 0 || bytes.size() != need) throw io_error("malformed binary matrix file");
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(n) * d);
    for (std::size_t t = 0; t < rows.size(); ++t) rows[t] = read_u32le(bytes, 12 + t * 4);
    try {
        return ExpanderMatrix::from_columns(m, n, d, std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw io_error(std::string("invalid matrix file: ") + e.what());
    }
}

inline void write_matrix(const std::string& path, const ExpanderMatrix& A, bool binary = false) {
    write_file_bytes(path, binary ? matrix_to_binary(A) : matrix_to_text(A));
}

inline ExpanderMatrix read_matrix(const std::string& path) {
    return matrix_from_bytes(read_file_bytes(path));
}

// --- signal format -------------------------------------------------------
//
// Header "ccs-signal v1 n k", then k lines "index value"; values carry 17
// significant digits. Dense measurement vectors reuse the same format with
// n = m and the exact zeros dropped.

inline std::string signal_to_text(const SparseSignal& x) {
    std::ostringstream out;
    out << "ccs-signal v1 " << x.n << ' ' << x.k() << '\n';
    for (std::size_t i = 0; i < x.support.size(); ++i)
        out << x.support[i] << ' ' << format_double(x.values[i]) << '\n';
    return out.str();
}

inline SparseSignal signal_from_bytes(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string magic, version;
    std::uint32_t n = 0, k = 0;
    in >> magic >> version >> n >> k;
    if (!in || magic != "ccs-signal" || version != "v1") throw io_error("malformed signal header");
    SparseSignal x;
    x.n = n;
    x.support.resize(k);
    x.values.resize(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        std::string tok;
        if (!(in >> x.support[i] >> tok)) throw io_error("truncated signal file");
        char* end = nullptr;
        x.values[i] = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str()) throw io_error("malformed signal value");
    }
    for (std::uint32_t i = 0; i < k; ++i) {
        if (x.support[i] >= n || (i > 0 && x.support[i] <= x.support[i - 1]))
            throw io_error("signal support must be strictly increasing and in range");
        if (x.values[i] == 0.0) throw io_error("signal values must be nonzero");
    }
    return x;
}

inline void write_signal(const std::string& path, const SparseSignal& x) {
    write_file_bytes(path, signal_to_text(x));
}

inline SparseSignal read_signal(const std::string& path) {
    return signal_from_bytes(read_file_bytes(path));
}

inline SparseSignal sparsify_dense(std::span<const double> v) {
    SparseSignal s;
    s.n = static_cast<std::uint32_t>(v.size());
    for (std::uint32_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0.0) {
            s.support.push_back(i);
            s.values.push_back(v[i]);
        }
    }
    return s;
}

inline void write_dense(const std::string& path, std::span<const double> v) {
    write_signal(path, sparsify_dense(v));
}

inline std::vector<double> read_dense(const std::string& path) {
    return read_signal(path).dense();
}

} // namespace ccs

#endif // CCS_IO_HPP
