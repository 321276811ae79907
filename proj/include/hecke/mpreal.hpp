#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hecke {

// Thin RAII wrapper around mpfr_t, just enough for directed-rounding
// interval arithmetic. Not a general-purpose big-float class.
class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    int sgn() const { return mpfr_sgn(v_); }

private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with outward-rounded endpoints.
class Interval {
public:
    Interval() : lo_(64), hi_(64) {}
    Interval(MpReal lo, MpReal hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

    static Interval from_int(long long n, mpfr_prec_t prec) {
        MpReal lo(prec), hi(prec);
        mpfr_set_sj(lo.get(), n, MPFR_RNDD);
        mpfr_set_sj(hi.get(), n, MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    static Interval exact_zero(mpfr_prec_t prec) { return from_int(0, prec); }

    const MpReal& lo() const { return lo_; }
    const MpReal& hi() const { return hi_; }

    mpfr_prec_t prec() const { return lo_.prec(); }

    bool contains_zero() const { return lo_.sgn() <= 0 && hi_.sgn() >= 0; }
    // Sign of every point in the interval; 0 means undecided (straddles zero).
    int sign() const {
        if (lo_.sgn() > 0) return 1;
        if (hi_.sgn() < 0) return -1;
        return 0;
    }

    double mid_double() const {
        MpReal m(lo_.prec());
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m.to_double();
    }
    long double mid_long_double() const {
        MpReal m(lo_.prec());
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m.to_long_double();
    }
    double width_double() const {
        MpReal w(lo_.prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w.to_double();
    }
    // width <= 2^e ?
    bool width_below_pow2(long e) const {
        MpReal w(lo_.prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        if (w.sgn() == 0) return true;
        return mpfr_get_exp(w.get()) <= e;
    }

    Interval operator-() const {
        MpReal lo(prec()), hi(prec());
        mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    Interval operator+(const Interval& o) const {
        MpReal lo(prec()), hi(prec());
        mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    Interval operator-(const Interval& o) const { return *this + (-o); }
    Interval operator*(const Interval& o) const {
        MpReal lo(prec()), hi(prec()), t(prec());
        mpfr_srcptr a = lo_.get(), b = hi_.get(), c = o.lo_.get(), d = o.hi_.get();
        mpfr_mul(lo.get(), a, c, MPFR_RNDD);
        mpfr_mul(t.get(), a, d, MPFR_RNDD);
        mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), b, c, MPFR_RNDD);
        mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), b, d, MPFR_RNDD);
        mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);

        mpfr_mul(hi.get(), a, c, MPFR_RNDU);
        mpfr_mul(t.get(), a, d, MPFR_RNDU);
        mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        mpfr_mul(t.get(), b, c, MPFR_RNDU);
        mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        mpfr_mul(t.get(), b, d, MPFR_RNDU);
        mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }
    Interval operator*(long long n) const { return *this * from_int(n, prec()); }

    // Division; the divisor interval must not contain zero.
    Interval operator/(const Interval& o) const {
        if (o.contains_zero())
            throw std::domain_error("Interval division by interval containing zero");
        MpReal lo(prec()), hi(prec()), t(prec());
        mpfr_srcptr a = lo_.get(), b = hi_.get(), c = o.lo_.get(), d = o.hi_.get();
        mpfr_div(lo.get(), a, c, MPFR_RNDD);
        mpfr_div(t.get(), a, d, MPFR_RNDD);
        mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), b, c, MPFR_RNDD);
        mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), b, d, MPFR_RNDD);
        mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);

        mpfr_div(hi.get(), a, c, MPFR_RNDU);
        mpfr_div(t.get(), a, d, MPFR_RNDU);
        mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        mpfr_div(t.get(), b, c, MPFR_RNDU);
        mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        mpfr_div(t.get(), b, d, MPFR_RNDU);
        mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }

    // Square root; requires lo >= 0.
    Interval sqrt() const {
        if (lo_.sgn() < 0)
            throw std::domain_error("Interval sqrt of interval with negative part");
        MpReal lo(prec()), hi(prec());
        mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
        mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
        return Interval(std::move(lo), std::move(hi));
    }

    // True if this interval is contained in o (with endpoint equality allowed).
    bool subset_of(const Interval& o) const {
        return mpfr_cmp(lo_.get(), o.lo_.get()) >= 0 && mpfr_cmp(hi_.get(), o.hi_.get()) <= 0;
    }
    bool disjoint_from(const Interval& o) const {
        return mpfr_cmp(hi_.get(), o.lo_.get()) < 0 || mpfr_cmp(lo_.get(), o.hi_.get()) > 0;
    }
    // Strictly left of o (every point here < every point of o).
    bool left_of(const Interval& o) const { return mpfr_cmp(hi_.get(), o.lo_.get()) < 0; }

private:
    MpReal lo_, hi_;
};

}  // namespace hecke
