#include "hecke/ring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hecke {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("ring coefficient overflow in add");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("ring coefficient overflow in mul");
    return r;
}

namespace {

// Integer polynomials, constant term first.
using Poly = Icoeffs;


// Exact division (remainder known to be zero), divisor monic-leading or not;
// used with cyclotomic factors where division is exact over Z.
Poly poly_divexact(Poly num, const Poly& den) {
    if (den.empty() || den.back() == 0) throw std::logic_error("bad divisor");
    if (num.size() < den.size()) throw std::logic_error("bad exact division");
    Poly q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        long long lead = num[i + den.size() - 1];
        if (lead % den.back() != 0) throw std::logic_error("non-exact polynomial division");
        long long qi = lead / den.back();
        q[i] = qi;
        for (size_t j = 0; j < den.size(); ++j)
            num[i + j] = checked_add(num[i + j], -checked_mul(qi, den[j]));
    }
    for (long long c : num)
        if (c != 0) throw std::logic_error("nonzero remainder in exact polynomial division");
    return q;
}

// Cyclotomic polynomial Phi_n via Phi_n = (y^n - 1) / prod_{d|n, d<n} Phi_d.
Poly cyclotomic(int n) {
    Poly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_divexact(std::move(num), cyclotomic(d));
    }
    return num;
}

int euler_phi(int n) {
    int r = n;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            r -= r / q;
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace

int minimal_polynomial_degree(int p) {
    if (p < 3) throw std::domain_error("minimal_polynomial requires p >= 3");
    return euler_phi(2 * p) / 2;
}

// mu_p from Phi_{2p}(y) = y^d * mu_p(y + 1/y): write y^{-d} Phi_{2p} in the
// basis V_k(x) = y^k + y^{-k} (V_0 = 2, V_1 = x, V_{k+1} = x V_k - V_{k-1}),
// using that Phi_{2p} is palindromic for 2p >= 3.
Icoeffs minimal_polynomial(int p) {
    if (p < 3) throw std::domain_error("minimal_polynomial requires p >= 3");
    Poly phi = cyclotomic(2 * p);
    const int d = static_cast<int>(phi.size() - 1) / 2;
    Poly mu(d + 1, 0);
    mu[0] = phi[d];
    Poly vkm1{2};     // V_0
    Poly vk{0, 1};    // V_1
    for (int k = 1; k <= d; ++k) {
        for (size_t i = 0; i < vk.size(); ++i)
            mu[i] = checked_add(mu[i], checked_mul(phi[d + k], vk[i]));
        if (k < d) {
            // V_{k+1} = x*V_k - V_{k-1}
            Poly vk1(vk.size() + 1, 0);
            for (size_t i = 0; i < vk.size(); ++i) vk1[i + 1] = vk[i];
            for (size_t i = 0; i < vkm1.size(); ++i)
                vk1[i] = checked_add(vk1[i], -vkm1[i]);
            vkm1 = std::move(vk);
            vk = std::move(vk1);
        }
    }
    if (mu.back() != 1) throw std::logic_error("minimal polynomial not monic");
    return mu;
}

namespace {

struct RingContext {
    int deg;
    Icoeffs mu;                         // minimal polynomial
    std::vector<Icoeffs> lambda_pows;   // reduced lambda^deg .. lambda^(2deg-2)
};

const RingContext& ring_context(int p) {
    static std::mutex mtx;
    static std::map<int, RingContext> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    RingContext ctx;
    ctx.mu = minimal_polynomial(p);
    ctx.deg = static_cast<int>(ctx.mu.size()) - 1;
    // lambda^deg = -(mu - x^deg)
    Icoeffs cur(ctx.deg, 0);
    for (int i = 0; i < ctx.deg; ++i) cur[i] = -ctx.mu[i];
    ctx.lambda_pows.push_back(cur);
    const int top = std::max(2 * ctx.deg - 2, ctx.deg + 1);
    for (int e = ctx.deg + 1; e <= top; ++e) {
        Icoeffs next(ctx.deg, 0);
        // multiply by lambda: shift, then reduce the overflowing top term
        long long top = cur[ctx.deg - 1];
        for (int i = ctx.deg - 1; i >= 1; --i) next[i] = cur[i - 1];
        next[0] = 0;
        const Icoeffs& red = ctx.lambda_pows[0];
        for (int i = 0; i < ctx.deg; ++i)
            next[i] = checked_add(next[i], checked_mul(top, red[i]));
        ctx.lambda_pows.push_back(next);
        cur = next;
    }
    return cache.emplace(p, std::move(ctx)).first->second;
}

}  // namespace

RingElem::RingElem(int p, Icoeffs coeffs) : p_(p) {
    const RingContext& ctx = ring_context(p);
    if (static_cast<int>(coeffs.size()) <= ctx.deg) {
        coeffs.resize(ctx.deg, 0);
        c_ = std::move(coeffs);
        return;
    }
    if (static_cast<int>(coeffs.size()) > ctx.deg + static_cast<int>(ctx.lambda_pows.size()))
        throw std::logic_error("RingElem: coefficient vector too long to reduce");
    c_.assign(ctx.deg, 0);
    for (int i = 0; i < ctx.deg && i < static_cast<int>(coeffs.size()); ++i) c_[i] = coeffs[i];
    for (int e = ctx.deg; e < static_cast<int>(coeffs.size()); ++e) {
        const Icoeffs& red = ctx.lambda_pows[e - ctx.deg];
        for (int i = 0; i < ctx.deg; ++i)
            c_[i] = checked_add(c_[i], checked_mul(coeffs[e], red[i]));
    }
}

RingElem RingElem::zero(int p) { return RingElem(p, Icoeffs{}); }
RingElem RingElem::one(int p) { return RingElem(p, Icoeffs{1}); }
RingElem RingElem::from_int(int p, long long n) { return RingElem(p, Icoeffs{n}); }
RingElem RingElem::lambda(int p) { return RingElem(p, Icoeffs{0, 1}); }

bool RingElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](long long v) { return v == 0; });
}

void RingElem::check_same_p(const RingElem& o) const {
    if (p_ != o.p_) throw std::domain_error("RingElem: mismatched group index p");
}

RingElem RingElem::operator+(const RingElem& o) const {
    check_same_p(o);
    Icoeffs r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = checked_add(c_[i], o.c_[i]);
    RingElem out;
    out.p_ = p_;
    out.c_ = std::move(r);
    return out;
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator-() const {
    RingElem out;
    out.p_ = p_;
    out.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
    return out;
}

RingElem RingElem::operator*(long long n) const {
    RingElem out;
    out.p_ = p_;
    out.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = checked_mul(c_[i], n);
    return out;
}

RingElem RingElem::operator*(const RingElem& o) const {
    check_same_p(o);
    Icoeffs conv(2 * c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            conv[i + j] = checked_add(conv[i + j], checked_mul(c_[i], o.c_[j]));
    }
    return RingElem(p_, std::move(conv));
}

Interval lambda_enclosure(int p, mpfr_prec_t prec) {
    struct Key {
        int p;
        mpfr_prec_t prec;
        bool operator<(const Key& o) const { return p < o.p || (p == o.p && prec < o.prec); }
    };
    static std::mutex mtx;
    static std::map<Key, Interval> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({p, prec});
        if (it != cache.end()) return it->second;
    }
    const Icoeffs mu = minimal_polynomial(p);
    auto eval = [&](const Interval& x) {
        Interval acc = Interval::from_int(mu.back(), prec);
        for (int i = static_cast<int>(mu.size()) - 2; i >= 0; --i)
            acc = acc * x + Interval::from_int(mu[i], prec);
        return acc;
    };
    // Seed from double; 2cos(pi/p) is the largest root of mu_p and mu_p is
    // monic, so mu_p is negative just left of it and positive just right.
    const double seed = 2.0 * std::cos(M_PI / p);
    MpReal lo(prec), hi(prec);
    double w = 1e-6;
    for (;;) {
        mpfr_set_d(lo.get(), seed - w, MPFR_RNDD);
        mpfr_set_d(hi.get(), seed + w, MPFR_RNDU);
        Interval atlo = eval(Interval(lo, lo));
        Interval athi = eval(Interval(hi, hi));
        if (atlo.sign() < 0 && athi.sign() > 0) break;
        w *= 0.25;
        if (w < 1e-14) throw std::logic_error("failed to bracket lambda root");
    }
    // Bisection to full precision.
    MpReal mid(prec);
    while (true) {
        MpReal width(prec);
        mpfr_sub(width.get(), hi.get(), lo.get(), MPFR_RNDU);
        if (width.sgn() == 0 || mpfr_get_exp(width.get()) <= -(prec - 2)) break;
        mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
        Interval atmid = eval(Interval(mid, mid));
        int s = atmid.sign();
        if (s < 0)
            mpfr_set(lo.get(), mid.get(), MPFR_RNDD);
        else if (s > 0)
            mpfr_set(hi.get(), mid.get(), MPFR_RNDU);
        else {
            // Interval evaluation undecided at this precision; widen endpoints by
            // one ulp each and stop (enclosure still certified by the bracket).
            break;
        }
    }
    Interval out(lo, hi);
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(Key{p, prec}, out);
    return out;
}

Interval RingElem::embed(int precision_bits) const {
    if (precision_bits < 32) precision_bits = 32;
    mpfr_prec_t work = precision_bits + 16;
    for (int tries = 0; tries < 12; ++tries) {
        Interval lam = lambda_enclosure(p_, work);
        Interval acc = Interval::from_int(c_.back(), work);
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i)
            acc = acc * lam + Interval::from_int(c_[i], work);
        // Required width: 2^(1-precision) * max(1, |value|).
        long scale_exp = 0;
        double m = std::max(std::fabs(acc.lo().to_double()), std::fabs(acc.hi().to_double()));
        if (m > 1.0) scale_exp = static_cast<long>(std::ceil(std::log2(m)));
        if (acc.width_below_pow2(1 - precision_bits + scale_exp)) return acc;
        work *= 2;
    }
    throw std::runtime_error("RingElem::embed failed to reach requested precision");
}

int RingElem::sign() const {
    if (is_zero()) return 0;
    // Fast path: double Horner with a rigorous forward error bound.
    {
        const double lam = 2.0 * std::cos(M_PI / p_);
        double acc = 0.0, mag = 0.0;
        for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
            acc = acc * lam + static_cast<double>(c_[i]);
            mag = mag * lam + std::fabs(static_cast<double>(c_[i]));
        }
        const double bound = mag * 1e-14 * (2.0 * c_.size() + 4.0);
        if (std::fabs(acc) > bound) return acc > 0 ? 1 : -1;
    }
    for (int prec = 96; prec <= 1 << 20; prec *= 2) {
        int s = embed(prec).sign();
        if (s != 0) return s;
    }
    throw std::runtime_error("RingElem::sign failed to separate from zero");
}

std::string RingElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) os << "-";
        long long a = std::llabs(c_[i]);
        if (i == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "L";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace hecke
