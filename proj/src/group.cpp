#include "hecke/group.hpp"

#include <cmath>
#include <stdexcept>

namespace hecke {

GroupElem::GroupElem(RingElem a, RingElem b, RingElem c, RingElem d)
    : p_(a.p()), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (b_.p() != p_ || c_.p() != p_ || d_.p() != p_)
        throw std::domain_error("GroupElem: mismatched group index p");
    RingElem det = a_ * d_ - b_ * c_;
    if (det != RingElem::one(p_))
        throw std::domain_error("GroupElem: determinant must be 1");
    normalize();
}

void GroupElem::normalize() {
    int s = c_.sign();
    if (s == 0) s = a_.sign();
    if (s < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

GroupElem GroupElem::identity(int p) {
    return GroupElem(RingElem::one(p), RingElem::zero(p), RingElem::zero(p), RingElem::one(p));
}
GroupElem GroupElem::S(int p) {
    return GroupElem(RingElem::one(p), RingElem::lambda(p), RingElem::zero(p), RingElem::one(p));
}
GroupElem GroupElem::T(int p) {
    return GroupElem(RingElem::zero(p), -RingElem::one(p), RingElem::one(p), RingElem::zero(p));
}
GroupElem GroupElem::U(int p) {
    return GroupElem(RingElem::lambda(p), -RingElem::one(p), RingElem::one(p), RingElem::zero(p));
}

Generators generators(int p) { return {GroupElem::S(p), GroupElem::T(p), GroupElem::U(p)}; }

GroupElem GroupElem::operator*(const GroupElem& o) const {
    if (p_ != o.p_) throw std::domain_error("GroupElem: mismatched group index p");
    return GroupElem(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                     c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

GroupElem GroupElem::inverse() const {
    return GroupElem(d_, -b_, -c_, a_);
}

GroupElem GroupElem::power(long n) const {
    if (n < 0) return inverse().power(-n);
    GroupElem acc = identity(p_);
    GroupElem base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool GroupElem::operator==(const GroupElem& o) const {
    return p_ == o.p_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool GroupElem::is_identity() const { return *this == identity(p_); }

ElementClass GroupElem::classify() const {
    RingElem t = trace();
    int s = (t * t - RingElem::from_int(p_, 4)).sign();
    if (s > 0) return ElementClass::Hyperbolic;
    if (s == 0) return ElementClass::Parabolic;
    return ElementClass::Elliptic;
}

template <typename Real>
std::array<Real, 4> GroupElem::embedded(int precision_bits) const {
    auto get = [&](const RingElem& e) -> Real {
        if constexpr (std::is_same_v<Real, long double>)
            return e.embed(precision_bits).mid_long_double();
        else
            return static_cast<Real>(e.embed(precision_bits).mid_double());
    };
    return {get(a_), get(b_), get(c_), get(d_)};
}
template std::array<double, 4> GroupElem::embedded<double>(int) const;
template std::array<long double, 4> GroupElem::embedded<long double>(int) const;

ExtComplex mobius_apply(const GroupElem& M, const ExtComplex& z) {
    auto m = M.embedded<double>(64);
    if (z.infinite) {
        if (M.c().is_zero()) return ExtComplex::infinity();
        return ExtComplex::of({m[0] / m[2], 0.0});
    }
    std::complex<double> den = m[2] * z.v + m[3];
    if (std::abs(den) == 0.0) return ExtComplex::infinity();
    return ExtComplex::of((m[0] * z.v + m[1]) / den);
}

IntervalDecomposition::IntervalDecomposition(int p) : p_(p) {
    if (p < 3) throw std::domain_error("IntervalDecomposition requires p >= 3");
    endpoints_.resize(p + 1);
    // U^j(0) tracked exactly as num/den: image of 0 under U^j is b/d of U^j.
    GroupElem U = GroupElem::U(p);
    GroupElem M = U;
    for (int j = 1; j <= p; ++j) {
        if (M.d().is_zero())
            endpoints_[j] = std::nullopt;  // U^j(0) = infinity (happens at j = 1)
        else
            endpoints_[j] = FieldValue{M.b(), M.d()};
        if (j < p) M = U * M;
    }
    if (endpoints_[1].has_value())
        throw std::logic_error("IntervalDecomposition: U(0) must be infinite");
    if (!endpoints_[p].has_value() || !endpoints_[p]->num.is_zero())
        throw std::logic_error("IntervalDecomposition: U^p(0) must be 0");
}

int compare_field_dyadic(const FieldValue& v, double x) {
    if (!std::isfinite(x)) throw std::domain_error("compare_field_dyadic: x must be finite");
    // Exact equality test when x = m * 2^{-e} with small e (componentwise in
    // the power basis, where representation is unique).
    int e2 = 0;
    double frac = std::frexp(x, &e2);  // x = frac * 2^{e2}, |frac| in [0.5,1)
    long long m = static_cast<long long>(std::ldexp(frac, 53));
    long long shift = 53 - e2;  // x = m * 2^{-shift}
    if (x == 0.0) { m = 0; shift = 0; }
    if (shift >= 0 && shift <= 60) {
        bool eq = true;
        const Icoeffs& nc = v.num.coeffs();
        const Icoeffs& dc = v.den.coeffs();
        for (size_t i = 0; i < nc.size() && eq; ++i) {
            __int128 lhs = static_cast<__int128>(nc[i]) << shift;
            __int128 rhs = static_cast<__int128>(m) * dc[i];
            if (lhs != rhs) eq = false;
        }
        if (eq) return 0;
    }
    // Not equal: refine the enclosure of num/den until it separates from x.
    for (int prec = 64; prec <= (1 << 13); prec *= 2) {
        Interval iv = v.embed(prec);
        MpReal xm(prec);
        mpfr_set_d(xm.get(), x, MPFR_RNDN);  // doubles are exact in mpfr
        if (mpfr_cmp(iv.lo().get(), xm.get()) > 0) return 1;
        if (mpfr_cmp(iv.hi().get(), xm.get()) < 0) return -1;
    }
    throw std::runtime_error("compare_field_dyadic: could not separate values");
}

int IntervalDecomposition::index_of(double x) const {
    if (!std::isfinite(x)) {
        if (x < 0) return 1;  // -infinity is a member of I_1
        throw std::domain_error("interval_index: +infinity is not in any I_j");
    }
    if (x < 0) return 1;
    // I_j = [U^{p-j+2}(0), U^{p-j+1}(0)), left endpoint included.
    for (int j = 2; j <= p_; ++j) {
        const auto& lo = endpoints_[p_ - j + 2];
        const auto& hi = endpoints_[p_ - j + 1];
        if (compare_field_dyadic(*lo, x) > 0) continue;        // x < left endpoint
        if (!hi.has_value()) return j;                          // right endpoint is inf
        if (compare_field_dyadic(*hi, x) > 0) return j;         // x < right endpoint
    }
    return 1;  // x < 0 handled above; unreachable for finite x >= 0
}

}  // namespace hecke
