#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "rmiso/matrix.hpp"

namespace rmiso {

/// Exact LLL reduction (delta = 3/4) of a positive-definite rational Gram matrix.
/// Returns the unimodular T such that T G T^T is reduced; rows of T express the new basis in the old one.
inline IntMatrix lll_transform(const RatMatrix& gram) {
    const std::size_t n = gram.rows();
    IntMatrix t = IntMatrix::identity(n);
    RatMatrix g = gram;
    auto gso = [&](RatMatrix& mu, std::vector<Rat>& bstar) {
        mu = RatMatrix(n, n, Rat(0));
        bstar.assign(n, Rat(0));
        RatMatrix r(n, n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Rat v = g(i, j);
                for (std::size_t k = 0; k < j; ++k) v -= mu(j, k) * r(i, k);
                r(i, j) = v;
                if (j < i) mu(i, j) = v / bstar[j];
            }
            bstar[i] = r(i, i);
        }
    };
    auto apply = [&](const IntMatrix& e) {
        t = e * t;
        RatMatrix er = to_rat(e);
        g = er * g * er.transpose();
    };
    RatMatrix mu;
    std::vector<Rat> bstar;
    std::size_t k = 1;
    int guard = 0;
    while (k < n && guard++ < 100000) {
        gso(mu, bstar);
        for (std::size_t j = k; j-- > 0;) {
            Int c = round_rat(mu(k, j));
            if (c == 0) continue;
            IntMatrix e = IntMatrix::identity(n);
            e(k, j) = -c;
            apply(e);
            gso(mu, bstar);
        }
        if (bstar[k] >= (Rat(3, 4) - mu(k, k - 1) * mu(k, k - 1)) * bstar[k - 1]) {
            ++k;
        } else {
            IntMatrix e = IntMatrix::identity(n);
            e.swap_rows(k, k - 1);
            apply(e);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return t;
}

namespace detail {

/// Integers x with (x - c)^2 <= s, as [lo, hi] (empty when lo > hi).
inline std::pair<Int, Int> integer_window(const Rat& c, const Rat& s) {
    if (s < 0) return {Int(1), Int(0)};
    double sq = std::sqrt(s.get_d());
    double cd = c.get_d();
    Int lo(std::ceil(cd - sq)), hi(std::floor(cd + sq));
    auto ok = [&](const Int& x) {
        Rat d = Rat(x) - c;
        return d * d <= s;
    };
    while (ok(lo - 1)) --lo;
    while (lo <= hi && !ok(lo)) ++lo;
    while (ok(hi + 1)) ++hi;
    while (hi >= lo && !ok(hi)) --hi;
    return {lo, hi};
}

}  // namespace detail

/// Calls visit(v, value) for every nonzero integer vector v with v G v^T <= bound (G positive definite).
/// Only one of each pair +-v is reported. visit returns false to stop early. Throws ResourceLimit when the
/// number of search nodes exceeds budget.
inline void enumerate_short_vectors(const RatMatrix& gram, const Rat bound,
                                    const std::function<bool(const std::vector<Int>&, const Rat&)>& visit,
                                    std::size_t budget = 50000000) {
    const std::size_t n = gram.rows();
    IntMatrix t = lll_transform(gram);
    RatMatrix tr = to_rat(t);
    RatMatrix g = tr * gram * tr.transpose();
    // LDL^T: x G x^T = sum_i d_i (x_i + sum_{j>i} l(j,i) x_j)^2
    RatMatrix l(n, n, Rat(0));
    std::vector<Rat> d(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat v = g(j, j);
        for (std::size_t k = 0; k < j; ++k) v -= l(j, k) * l(j, k) * d[k];
        d[j] = v;
        if (d[j] <= 0) throw PreconditionViolation("Gram matrix is not positive definite");
        l(j, j) = 1;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rat w = g(i, j);
            for (std::size_t k = 0; k < j; ++k) w -= l(i, k) * l(j, k) * d[k];
            l(i, j) = w / d[j];
        }
    }
    std::vector<Int> x(n, Int(0));
    std::size_t nodes = 0;
    bool stop = false;
    std::function<void(long, const Rat&)> rec = [&](long i, const Rat& remaining) {
        if (stop) return;
        if (++nodes > budget) throw ResourceLimit("lattice enumeration budget exhausted");
        if (i < 0) {
            // skip zero and keep the representative whose last nonzero coordinate is positive
            long last = static_cast<long>(n) - 1;
            while (last >= 0 && x[static_cast<std::size_t>(last)] == 0) --last;
            if (last < 0 || x[static_cast<std::size_t>(last)] < 0) return;
            std::vector<Int> v(n, Int(0));
            for (std::size_t a = 0; a < n; ++a)
                if (x[a] != 0)
                    for (std::size_t b = 0; b < n; ++b) v[b] += x[a] * t(a, b);
            if (!visit(v, bound - remaining)) stop = true;
            return;
        }
        const std::size_t ii = static_cast<std::size_t>(i);
        Rat c = 0;
        for (std::size_t j = ii + 1; j < n; ++j) c -= l(j, ii) * Rat(x[j]);
        auto [lo, hi] = detail::integer_window(c, remaining / d[ii]);
        for (Int xi = lo; xi <= hi && !stop; ++xi) {
            x[ii] = xi;
            Rat diff = Rat(xi) - c;
            rec(i - 1, remaining - d[ii] * diff * diff);
        }
        x[ii] = 0;
    };
    rec(static_cast<long>(n) - 1, bound);
}

}  // namespace rmiso
