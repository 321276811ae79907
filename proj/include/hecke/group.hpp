#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hecke/ring.hpp"

namespace hecke {

enum class ElementClass { Hyperbolic, Parabolic, Elliptic };

// Element of the Hecke group G_p = <S, T> / {+-I}, S = [[1,lambda],[0,1]],
// T = [[0,-1],[1,0]]. Entries are exact, det = 1, and the stored matrix is
// the canonical projective representative: the first nonzero entry in the
// order (c, a) has positive sign.
class GroupElem {
public:
    GroupElem(RingElem a, RingElem b, RingElem c, RingElem d);

    static GroupElem identity(int p);
    static GroupElem S(int p);
    static GroupElem T(int p);
    static GroupElem U(int p);  // U = S*T = [[lambda,-1],[1,0]]

    int p() const { return p_; }
    const RingElem& a() const { return a_; }
    const RingElem& b() const { return b_; }
    const RingElem& c() const { return c_; }
    const RingElem& d() const { return d_; }

    GroupElem operator*(const GroupElem& o) const;
    GroupElem inverse() const;
    GroupElem power(long n) const;
    bool operator==(const GroupElem& o) const;
    bool operator!=(const GroupElem& o) const { return !(*this == o); }

    bool is_identity() const;
    RingElem trace() const { return a_ + d_; }
    ElementClass classify() const;

    // Matrix with embedded entries, row-major {a,b,c,d}.
    template <typename Real>
    std::array<Real, 4> embedded(int precision_bits) const;

private:
    void normalize();
    int p_;
    RingElem a_, b_, c_, d_;
};

struct Generators {
    GroupElem S, T, U;
};
Generators generators(int p);

// Extended complex value for the Moebius action (infinity handled explicitly).
struct ExtComplex {
    std::complex<double> v{};
    bool infinite = false;
    static ExtComplex infinity() { return {std::complex<double>{}, true}; }
    static ExtComplex of(std::complex<double> z) { return {z, false}; }
};

// Numeric Moebius image using embedded entries; M(infinity) = a/c.
ExtComplex mobius_apply(const GroupElem& M, const ExtComplex& z);
inline ExtComplex mobius_apply(const GroupElem& M, std::complex<double> z) {
    return mobius_apply(M, ExtComplex::of(z));
}

// Exact value in the field Q(lambda), stored as a ratio of ring elements.
struct FieldValue {
    RingElem num, den;  // den nonzero
    Interval embed(int precision_bits) const { return num.embed(precision_bits) / den.embed(precision_bits); }
    double to_double() const { return embed(64).mid_double(); }
};

// The p half-open intervals I_j cutting [-inf, inf) at U^p(0)=0 < U^{p-1}(0)
// < ... < U^2(0) < U(0) = inf:
//   I_1 = [-inf, 0),  I_j = [U^{p-j+2}(0), U^{p-j+1}(0)) for 2 <= j <= p.
class IntervalDecomposition {
public:
    explicit IntervalDecomposition(int p);

    int p() const { return p_; }
    // Exact endpoint U^j(0) for 1 <= j <= p; U^1(0) is infinity (no value).
    const std::optional<FieldValue>& endpoint(int j) const { return endpoints_.at(j); }

    // Unique j in 1..p with x in I_j (left endpoints included). The first
    // overload takes a finite real given as an exact double.
    int index_of(double x) const;

private:
    int p_;
    std::vector<std::optional<FieldValue>> endpoints_;  // [0] unused; [j] = U^j(0)
};

// cmp(num/den, m*2^{-e}) in {-1,0,+1}, exact.
int compare_field_dyadic(const FieldValue& v, double x);

}  // namespace hecke
