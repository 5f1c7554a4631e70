#pragma once

#include <cmath>

#include "rmiso/bigint.hpp"

namespace rmiso {

/// Fundamental unit x + y*w of the real quadratic order of discriminant D, w = (b + sqrt D)/2 with b = D mod 2.
struct QuadraticUnit {
    Int D;
    Int x, y;
    int norm = 1;  ///< +1 or -1
    Int trace;     ///< Tr(unit) = 2x + b*y

    /// Rational upper bound for e + 1/e where e > 1 is the absolute value of the larger real embedding.
    Rat reduction_constant() const {
        if (norm == 1) return Rat(abs_int(trace));
        Int s = trace * trace + 4;
        Int r = isqrt(s);
        return Rat(is_square(s) ? r : Int(r + 1));
    }
    double approx_value() const {
        double b = static_cast<double>(mpz_odd_p(D.get_mpz_t()) ? 1 : 0);
        return x.get_d() + y.get_d() * (b + std::sqrt(D.get_d())) / 2.0;
    }
};

/// Continued-fraction computation: x0 = w + c is purely periodic with period l, and the unit is
/// q_{l-1} x0 + q_{l-2} for the convergent denominators q_k.
inline QuadraticUnit fundamental_unit(const Int& D) {
    if (D <= 0 || is_square(D) || (mod(D, Int(4)) != 0 && mod(D, Int(4)) != 1))
        throw PreconditionViolation("fundamental unit needs a nonsquare discriminant D > 0, D = 0,1 mod 4");
    const Int b = mpz_odd_p(D.get_mpz_t()) ? 1 : 0;
    const Int s = isqrt(D);
    // c = floor((sqrt D - b) / 2)
    const Int c = fdiv(s - b, Int(2));
    // x0 = (P0 + sqrt D) / Q0
    const Int P0 = b + 2 * c, Q0 = 2;
    Int P = P0, Q = Q0;
    Int qm2 = 1, qm1 = 0;  // q_{-2}, q_{-1}
    for (long k = 0; k < 10000000; ++k) {
        Int a = Q > 0 ? fdiv(P + s, Q) : fdiv(P + s + 1, Q);
        Int qk = a * qm1 + qm2;
        qm2 = qm1;
        qm1 = qk;
        Int Pn = a * Q - P;
        Int Qn = (D - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
        if (P == P0 && Q == Q0) {
            // period length k+1: unit = q_k x0 + q_{k-1}; x0 = w + c
            QuadraticUnit u;
            u.D = D;
            u.y = qm1;
            u.x = qm1 * c + qm2;
            u.trace = 2 * u.x + b * u.y;
            Int nrm = u.x * u.x + b * u.x * u.y + u.y * u.y * (b * b - D) / 4;
            if (nrm != 1 && nrm != -1) throw PreconditionViolation("continued fraction did not produce a unit");
            u.norm = nrm == 1 ? 1 : -1;
            return u;
        }
    }
    throw ResourceLimit("continued fraction period too long");
}

}  // namespace rmiso
