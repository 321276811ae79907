#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/mpreal.hpp"

namespace hecke {

// Exact arithmetic in Z[lambda_p], lambda_p = 2 cos(pi/p), represented as
// integer coefficient vectors modulo the minimal polynomial mu_p of lambda_p.

using Icoeffs = std::vector<long long>;

long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

// Monic integer minimal polynomial of 2 cos(pi/p), constant term first,
// leading coefficient included. deg = phi(2p)/2. Throws for p < 3.
Icoeffs minimal_polynomial(int p);

int minimal_polynomial_degree(int p);

class RingElem {
public:
    RingElem() : p_(0) {}
    RingElem(int p, Icoeffs coeffs);  // reduced mod mu_p on construction if needed

    static RingElem zero(int p);
    static RingElem one(int p);
    static RingElem from_int(int p, long long n);
    static RingElem lambda(int p);

    int p() const { return p_; }
    const Icoeffs& coeffs() const { return c_; }
    bool is_zero() const;

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator-() const;
    RingElem operator*(long long n) const;
    bool operator==(const RingElem& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    // Certified enclosure of the image under lambda -> 2 cos(pi/p) (the
    // largest real root of mu_p), of width <= 2^(1-precision) * max(1,|value|).
    Interval embed(int precision_bits) const;

    // Exact sign of the embedded value: symbolic zero test first, then
    // interval refinement with doubling precision.
    int sign() const;

    double to_double() const { return embed(64).mid_double(); }
    long double to_long_double() const { return embed(96).mid_long_double(); }

    std::string to_string() const;  // e.g. "2 - 3*L + L^2"

private:
    void check_same_p(const RingElem& o) const;
    int p_;
    Icoeffs c_;  // length deg(mu_p), constant term first
};

inline int sign(const RingElem& a) { return a.sign(); }

// Certified enclosure of lambda_p itself at the given precision (cached).
Interval lambda_enclosure(int p, mpfr_prec_t prec);

// Hash key for exact deduplication.
struct RingElemHash {
    std::size_t operator()(const RingElem& e) const {
        std::size_t h = std::hash<int>()(e.p());
        for (long long c : e.coeffs()) h = h * 1099511628211ULL + std::hash<long long>()(c);
        return h;
    }
};

}  // namespace hecke
