// format.hpp
// Text formats. Matrices: first line "rows cols p" (p = 0 for rationals),
// then rows of space-separated canonical entries. Flag files: header "n p"
// followed by one matrix block per flag member. Round-trips are bit exact.

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "isoflag/mat.hpp"
#include "isoflag/subspace.hpp"

namespace isoflag {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

inline std::string entry_str(const Fp& x) { return x.str(); }
inline std::string entry_str(const Rat& x) { return x.str(); }

template <class K>
void write_matrix(std::ostream& os, const Mat<K>& m, long long p) {
    os << m.rows() << " " << m.cols() << " " << p << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << entry_str(m.at(i, j));
        }
        os << "\n";
    }
}

struct MatrixHeader {
    int rows = 0, cols = 0;
    long long p = 0;
};

inline MatrixHeader read_matrix_header(std::istream& is) {
    MatrixHeader h;
    if (!(is >> h.rows >> h.cols >> h.p)) throw parse_error("matrix: bad header");
    if (h.rows < 0 || h.cols < 0) throw parse_error("matrix: negative dimensions");
    return h;
}

inline Mat<Fp> read_matrix_fp(std::istream& is, const MatrixHeader& h) {
    Mat<Fp> m(h.rows, h.cols, Fp(0, h.p));
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j) {
            std::string tok;
            if (!(is >> tok)) throw parse_error("matrix: missing entry");
            long long v = std::stoll(tok);
            if (v < 0 || v >= h.p) throw parse_error("matrix: entry not canonical mod p");
            m.at(i, j) = Fp(v, h.p);
        }
    return m;
}

inline Mat<Rat> read_matrix_rat(std::istream& is, const MatrixHeader& h) {
    Mat<Rat> m(h.rows, h.cols, Rat(0));
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j) {
            std::string tok;
            if (!(is >> tok)) throw parse_error("matrix: missing entry");
            m.at(i, j) = Rat::parse(tok);
        }
    return m;
}

} // namespace isoflag
