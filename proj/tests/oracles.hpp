#pragma once

// Test-only reference computations. Nothing here calls into the simulator;
// each oracle builds its answer from closed forms or dense matrices.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<Vec>;

inline Mat identity(std::size_t dim) {
    Mat m(dim, Vec(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i)
        m[i][i] = 1.0;
    return m;
}

inline Vec matvec(const Mat &m, const Vec &v) {
    Vec out(m.size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            out[r] += m[r][c] * v[c];
    return out;
}

/// Full 2^m x 2^m matrix of a 2x2 gate acting on qubit q (little-endian).
inline Mat lift_single(std::size_t m, std::size_t q, const C g[4]) {
    const std::size_t dim = std::size_t{1} << m;
    Mat out(dim, Vec(dim, 0.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            // all other bits must agree
            if (((r ^ c) & ~(std::size_t{1} << q)) != 0)
                continue;
            const std::size_t rb = (r >> q) & 1u;
            const std::size_t cb = (c >> q) & 1u;
            out[r][c] = g[rb * 2 + cb];
        }
    }
    return out;
}

/// I + (Ry(angle) - I) restricted to rows/cols with all control bits set.
inline Mat controlled_ry(std::size_t m, const std::vector<std::size_t> &controls,
                         std::size_t target, double angle) {
    const std::size_t dim = std::size_t{1} << m;
    std::size_t mask = 0;
    for (auto c : controls)
        mask |= std::size_t{1} << c;
    const C ry[4] = {std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2),
                     std::cos(angle / 2)};
    const Mat lifted = lift_single(m, target, ry);
    Mat out = identity(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if ((r & mask) == mask && (c & mask) == mask)
                out[r][c] = lifted[r][c];
    return out;
}

/// Shift-down permutation: ones on the superdiagonal and at (dim-1, 0).
inline Mat decrement_matrix(std::size_t dim) {
    Mat d(dim, Vec(dim, 0.0));
    for (std::size_t r = 0; r + 1 < dim; ++r)
        d[r][r + 1] = 1.0;
    d[dim - 1][0] = 1.0;
    return d;
}

/// (1/2^n) sum_i (cos t_i |0> + sin t_i |1>) (x) |i>, color qubit on top.
inline std::vector<double> frqi_formula(const std::vector<double> &theta) {
    const std::size_t count = theta.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(count));
    std::vector<double> out(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = scale * std::cos(theta[i]);
        out[count + i] = scale * std::sin(theta[i]);
    }
    return out;
}

/// ((c_i + c_{i+1}) / 2, (c_i - c_{i+1}) / 2) interleaved, cyclic.
inline std::vector<double> qhed_formula(const std::vector<double> &c) {
    const std::size_t n = c.size();
    std::vector<double> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double next = c[(i + 1) % n];
        out[2 * i] = (c[i] + next) / 2.0;
        out[2 * i + 1] = (c[i] - next) / 2.0;
    }
    return out;
}

inline std::vector<double> normalized(std::vector<double> v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    const double inv = 1.0 / std::sqrt(s);
    for (double &x : v)
        x *= inv;
    return v;
}

/// Row-major horizontal differences (c_i - c_{i+1}) / 2 with row-end
/// pairs zeroed, for a side x side image given as normalized amplitudes.
inline std::vector<double> clipped_differences(const std::vector<double> &c, std::size_t side) {
    std::vector<double> d(c.size(), 0.0);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t col = 0; col + 1 < side; ++col)
            d[r * side + col] = (c[r * side + col] - c[r * side + col + 1]) / 2.0;
    return d;
}

/// Pixels outside the rectangle that share an edge with it.
inline std::set<std::size_t> outer_ring(std::size_t side, std::size_t top, std::size_t left,
                                        std::size_t height, std::size_t width) {
    auto inside = [&](long r, long c) {
        return r >= static_cast<long>(top) && r < static_cast<long>(top + height) &&
               c >= static_cast<long>(left) && c < static_cast<long>(left + width);
    };
    std::set<std::size_t> ring;
    for (long r = 0; r < static_cast<long>(side); ++r) {
        for (long c = 0; c < static_cast<long>(side); ++c) {
            if (inside(r, c))
                continue;
            if (inside(r - 1, c) || inside(r + 1, c) || inside(r, c - 1) || inside(r, c + 1))
                ring.insert(static_cast<std::size_t>(r) * side + static_cast<std::size_t>(c));
        }
    }
    return ring;
}

inline std::vector<double> rectangle_image(std::size_t side, std::size_t top, std::size_t left,
                                           std::size_t height, std::size_t width,
                                           double fg = 1.0, double bg = 0.0) {
    std::vector<double> px(side * side, bg);
    for (std::size_t r = top; r < top + height; ++r)
        for (std::size_t c = left; c < left + width; ++c)
            px[r * side + c] = fg;
    return px;
}

inline std::vector<double> random_pixels(std::mt19937_64 &rng, std::size_t count, double lo = 0.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> px(count);
    for (auto &p : px)
        p = u(rng);
    return px;
}

inline std::vector<double> random_angles(std::mt19937_64 &rng, std::size_t count) {
    return random_pixels(rng, count, 0.0, std::numbers::pi / 2.0);
}

inline Vec random_state(std::mt19937_64 &rng, std::size_t m) {
    std::normal_distribution<double> g;
    Vec v(std::size_t{1} << m);
    double s = 0.0;
    for (auto &a : v) {
        a = C(g(rng), g(rng));
        s += std::norm(a);
    }
    for (auto &a : v)
        a /= std::sqrt(s);
    return v;
}

} // namespace oracle
