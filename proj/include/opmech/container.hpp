#ifndef OPMECH_CONTAINER_HPP
#define OPMECH_CONTAINER_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "opmech/hybrid.hpp"

// Self-describing export of complex vectors and matrices. Text form: a
// `dims:` header, a `kind:` line, then one `re,im` pair per line in
// column-major order, rendered with 17 significant digits so the round trip
// is exact. Binary form: a tagged little-endian dump of the same data.

namespace opmech {

struct TensorContainer {
    std::vector<long> dims;
    bool is_matrix = false;
    Eigen::MatrixXcd data;  // vectors stored as n x 1

    long extent() const {
        long n = 1;
        for (long d : dims) n *= d;
        return n;
    }
};

namespace detail {

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline std::string to_text(const TensorContainer& c) {
    std::string out = "dims:";
    for (long d : c.dims) out += " " + std::to_string(d);
    out += "\nkind: ";
    out += c.is_matrix ? "matrix" : "vector";
    out += "\n";
    for (long col = 0; col < c.data.cols(); ++col)
        for (long row = 0; row < c.data.rows(); ++row) {
            const auto v = c.data(row, col);
            out += detail::format_double(v.real());
            out += ",";
            out += detail::format_double(v.imag());
            out += "\n";
        }
    return out;
}

inline TensorContainer container_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    TensorContainer c;

    if (!std::getline(in, line) || line.rfind("dims:", 0) != 0)
        throw std::invalid_argument("container: missing 'dims:' header");
    {
        std::istringstream hs(line.substr(5));
        long d;
        while (hs >> d) {
            if (d <= 0) throw std::invalid_argument("container: dims must be positive");
            c.dims.push_back(d);
        }
        if (c.dims.empty()) throw std::invalid_argument("container: empty dims header");
    }
    if (!std::getline(in, line) || line.rfind("kind: ", 0) != 0)
        throw std::invalid_argument("container: missing 'kind:' header");
    {
        std::string kind = line.substr(6);
        if (kind == "matrix")
            c.is_matrix = true;
        else if (kind == "vector")
            c.is_matrix = false;
        else
            throw std::invalid_argument("container: unknown kind '" + kind + "'");
    }

    const long n = c.extent();
    const long rows = n;
    const long cols = c.is_matrix ? n : 1;
    c.data.resize(rows, cols);
    long count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (count >= rows * cols) throw std::invalid_argument("container: too many data lines");
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("container: data line " + std::to_string(count + 3) +
                                        " is not 're,im'");
        char* end = nullptr;
        const double re = std::strtod(line.c_str(), &end);
        const double im = std::strtod(line.c_str() + comma + 1, &end);
        c.data(count % rows, count / rows) = {re, im};
        ++count;
    }
    if (count != rows * cols)
        throw std::invalid_argument("container: expected " + std::to_string(rows * cols) +
                                    " data lines, got " + std::to_string(count));
    return c;
}

inline void save_text(const TensorContainer& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("container: cannot write " + path);
    out << to_text(c);
}

inline TensorContainer load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("container: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return container_from_text(buf.str());
}

inline void save_binary(const TensorContainer& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("container: cannot write " + path);
    const char magic[4] = {'O', 'P', 'M', 'C'};
    out.write(magic, 4);
    const std::uint8_t version = 1;
    const std::uint8_t kind = c.is_matrix ? 'm' : 'v';
    out.write(reinterpret_cast<const char*>(&version), 1);
    out.write(reinterpret_cast<const char*>(&kind), 1);
    const std::uint32_t ndims = static_cast<std::uint32_t>(c.dims.size());
    out.write(reinterpret_cast<const char*>(&ndims), sizeof(ndims));
    for (long d : c.dims) {
        const std::int64_t v = d;
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    out.write(reinterpret_cast<const char*>(c.data.data()),
              static_cast<std::streamsize>(sizeof(std::complex<double>) * c.data.size()));
}

inline TensorContainer load_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("container: cannot read " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "OPMC", 4) != 0)
        throw std::invalid_argument("container: bad magic in " + path);
    std::uint8_t version = 0, kind = 0;
    in.read(reinterpret_cast<char*>(&version), 1);
    in.read(reinterpret_cast<char*>(&kind), 1);
    if (version != 1) throw std::invalid_argument("container: unsupported version");
    TensorContainer c;
    c.is_matrix = (kind == 'm');
    if (kind != 'm' && kind != 'v') throw std::invalid_argument("container: bad kind byte");
    std::uint32_t ndims = 0;
    in.read(reinterpret_cast<char*>(&ndims), sizeof(ndims));
    for (std::uint32_t j = 0; j < ndims; ++j) {
        std::int64_t d = 0;
        in.read(reinterpret_cast<char*>(&d), sizeof(d));
        if (d <= 0) throw std::invalid_argument("container: dims must be positive");
        c.dims.push_back(static_cast<long>(d));
    }
    const long n = c.extent();
    c.data.resize(n, c.is_matrix ? n : 1);
    in.read(reinterpret_cast<char*>(c.data.data()),
            static_cast<std::streamsize>(sizeof(std::complex<double>) * c.data.size()));
    if (!in) throw std::invalid_argument("container: truncated payload in " + path);
    return c;
}

inline TensorContainer wrap(const HybridVector& v) {
    TensorContainer c;
    c.dims = {v.dims.nq, v.dims.np, 2};
    c.is_matrix = false;
    c.data = v.amplitudes;
    return c;
}

inline TensorContainer wrap(const HybridOperator& m) {
    TensorContainer c;
    c.dims = {m.dims.nq, m.dims.np, 2};
    c.is_matrix = true;
    c.data = m.matrix;
    return c;
}

}  // namespace opmech

#endif  // OPMECH_CONTAINER_HPP
