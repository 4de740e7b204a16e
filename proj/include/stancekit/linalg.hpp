#ifndef STANCEKIT_LINALG_HPP
#define STANCEKIT_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stancekit {

// Row-major matrix mapping cols-dim inputs to rows-dim outputs (y = M x).
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

using Vec = std::vector<double>;

inline void check_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw std::runtime_error(std::string("shape mismatch in ") + what + ": got " +
                                 std::to_string(got) + ", want " + std::to_string(want));
}

// y = M x
inline Vec matvec(const Mat& m, const Vec& x) {
    check_dim(x.size(), m.cols, "matvec");
    Vec y(m.rows, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double acc = 0.0;
        const double* row = &m.a[r * m.cols];
        for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

// y = M^T x  (x has rows-dim, result cols-dim)
inline Vec matvec_t(const Mat& m, const Vec& x) {
    check_dim(x.size(), m.rows, "matvec_t");
    Vec y(m.cols, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        const double xr = x[r];
        const double* row = &m.a[r * m.cols];
        for (std::size_t c = 0; c < m.cols; ++c) y[c] += row[c] * xr;
    }
    return y;
}

// M += u v^T
inline void add_outer(Mat& m, const Vec& u, const Vec& v) {
    check_dim(u.size(), m.rows, "add_outer/u");
    check_dim(v.size(), m.cols, "add_outer/v");
    for (std::size_t r = 0; r < m.rows; ++r) {
        double* row = &m.a[r * m.cols];
        const double ur = u[r];
        for (std::size_t c = 0; c < m.cols; ++c) row[c] += ur * v[c];
    }
}

inline void add_scaled(Vec& y, const Vec& x, double s = 1.0) {
    check_dim(x.size(), y.size(), "add_scaled");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

inline double dot(const Vec& a, const Vec& b) {
    check_dim(b.size(), a.size(), "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace stancekit

#endif
