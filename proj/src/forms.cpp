#include "hecke/forms.hpp"

#include <stdexcept>

namespace hecke {

QuadraticForm::QuadraticForm(RingElem A, RingElem B, RingElem C)
    : p_(A.p()), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
    if (B_.p() != p_ || C_.p() != p_)
        throw std::domain_error("QuadraticForm: mismatched group index p");
}

QuadraticForm QuadraticForm::act(const GroupElem& M) const {
    if (M.p() != p_) throw std::domain_error("QuadraticForm::act: mismatched p");
    const RingElem &a = M.a(), &b = M.b(), &c = M.c(), &d = M.d();
    RingElem A2 = A_ * a * a + B_ * a * c + C_ * c * c;
    RingElem B2 = A_ * a * b * 2 + B_ * (a * d + b * c) + C_ * c * d * 2;
    RingElem C2 = A_ * b * b + B_ * b * d + C_ * d * d;
    return QuadraticForm(std::move(A2), std::move(B2), std::move(C2));
}

template <typename Real>
std::complex<Real> QuadraticForm::eval(std::complex<Real> z, int precision_bits) const {
    Real A, B, C;
    if constexpr (std::is_same_v<Real, long double>) {
        A = A_.embed(precision_bits).mid_long_double();
        B = B_.embed(precision_bits).mid_long_double();
        C = C_.embed(precision_bits).mid_long_double();
    } else {
        A = static_cast<Real>(A_.embed(precision_bits).mid_double());
        B = static_cast<Real>(B_.embed(precision_bits).mid_double());
        C = static_cast<Real>(C_.embed(precision_bits).mid_double());
    }
    return (z * A + B) * z + C;
}
template std::complex<double> QuadraticForm::eval<double>(std::complex<double>, int) const;
template std::complex<long double> QuadraticForm::eval<long double>(std::complex<long double>, int) const;

QuadraticForm form_from_matrix(const GroupElem& M) {
    if (M.classify() != ElementClass::Hyperbolic)
        throw std::domain_error("form_from_matrix: element must be hyperbolic");
    int ts = M.trace().sign();
    // Normalize to positive trace (project back from the canonical rep).
    RingElem a = M.a(), b = M.b(), c = M.c(), d = M.d();
    if (ts < 0) {
        a = -a; b = -b; c = -c; d = -d;
    }
    return QuadraticForm(c, d - a, -b);
}

int quad_sign(const RingElem& r, const RingElem& s, const RingElem& D) {
    int sr = r.sign(), ss = s.sign();
    if (ss == 0) return sr;
    if (sr == 0) return ss;
    if (sr == ss) return sr;
    // Mixed signs: |r| vs |s| sqrt(D), decided by r^2 - s^2 D. This also
    // resolves r = -s*sqrt(D) exactly (returns 0) when D is a ring square.
    int t = (r * r - s * s * D).sign();
    return t == 0 ? 0 : sr * t;
}

HyperbolicPoint::HyperbolicPoint(QuadraticForm form, Branch br)
    : form_(br == Branch::Plus ? std::move(form) : -form) {
    if (form_.A().is_zero())
        throw std::domain_error("HyperbolicPoint: form must have A != 0");
    if (form_.disc().sign() <= 0)
        throw std::domain_error("HyperbolicPoint: form must be indefinite");
}

Interval HyperbolicPoint::value(int precision_bits) const {
    int prec = precision_bits + 8;
    for (int tries = 0; tries < 10; ++tries) {
        Interval iA = form_.A().embed(prec);
        Interval iB = form_.B().embed(prec);
        Interval iD = form_.disc().embed(prec);
        if (iD.lo().sgn() < 0 || iA.contains_zero()) {
            prec *= 2;
            continue;
        }
        Interval v = (-iB + iD.sqrt()) / (iA * 2);
        long scale_exp = 0;
        double m = std::abs(v.mid_double());
        if (m > 1.0) scale_exp = static_cast<long>(std::ceil(std::log2(m)));
        if (v.width_below_pow2(1 - precision_bits + scale_exp)) return v;
        prec *= 2;
    }
    throw std::runtime_error("HyperbolicPoint::value failed to converge");
}

int HyperbolicPoint::sign() const {
    // (-B + sqrt(D)) / (2A): numerator sign via quad_sign, then divide.
    int n = quad_sign(-form_.B(), RingElem::one(p()), form_.disc());
    return n * form_.A().sign();
}

bool HyperbolicPoint::equals(const HyperbolicPoint& o) const {
    if (p() != o.p()) return false;
    const RingElem &A1 = form_.A(), &B1 = form_.B(), &C1 = form_.C();
    const RingElem &A2 = o.form_.A(), &B2 = o.form_.B();
    RingElem D1 = form_.disc(), D2 = o.form_.disc();
    if (D1 == D2) {
        // equal iff (A1 B2 - A2 B1) + (A2 - A1) sqrt(D) = 0
        return quad_sign(A1 * B2 - A2 * B1, A2 - A1, D1) == 0;
    }
    // General case: is o's value a root of this form, and on the plus side?
    // 4 A2^2 Q1(x2) = u + v sqrt(D2) with
    //   u = A1 (B2^2 + D2) - 2 A2 B1 B2 + 4 A2^2 C1,  v = 2 (A2 B1 - A1 B2).
    RingElem u = A1 * (B2 * B2 + D2) - A2 * B1 * B2 * 2 + A2 * A2 * C1 * 4;
    RingElem v = (A2 * B1 - A1 * B2) * 2;
    if (quad_sign(u, v, D2) != 0) return false;
    // x2 equals the plus root of Q1 iff sign(x2 + B1/(2A1)) == sign(A1):
    // x2 + B1/(2A1) = (A1(-B2) + A2 B1 + A1 sqrt(D2)) / (2 A1 A2).
    int num = quad_sign(A2 * B1 - A1 * B2, A1, D2);
    int den = A1.sign() * A2.sign();
    return num * den == A1.sign();
}

bool HyperbolicPoint::less_than(const HyperbolicPoint& o) const {
    if (equals(o)) return false;
    for (int prec = 64; prec <= (1 << 13); prec *= 2) {
        Interval a = value(prec), b = o.value(prec);
        if (a.left_of(b)) return true;
        if (b.left_of(a)) return false;
    }
    throw std::runtime_error("HyperbolicPoint::less_than failed to separate");
}

int HyperbolicPoint::compare(const FieldValue& v) const {
    // this - num/den = ((-B + sqrt(D)) den - 2 A num) / (2 A den)
    RingElem r = -form_.B() * v.den - form_.A() * v.num * 2;
    int n = quad_sign(r, v.den, form_.disc());
    return n * form_.A().sign() * v.den.sign();
}

int HyperbolicPoint::interval_index(const IntervalDecomposition& dec) const {
    if (dec.p() != p()) throw std::domain_error("interval_index: mismatched p");
    if (sign() < 0) return 1;
    for (int j = 2; j <= dec.p(); ++j) {
        const auto& lo = dec.endpoint(dec.p() - j + 2);
        const auto& hi = dec.endpoint(dec.p() - j + 1);  // nullopt at j = p
        if (compare(*lo) < 0) continue;
        if (!hi.has_value()) return j;
        if (compare(*hi) < 0) return j;
    }
    return dec.p();
}

std::pair<HyperbolicPoint, HyperbolicPoint> fixed_points(const GroupElem& M) {
    if (M.classify() != ElementClass::Hyperbolic)
        throw std::domain_error("fixed_points: element must be hyperbolic");
    if (M.c().is_zero())
        throw std::domain_error("fixed_points: c = 0 (fixed point at infinity)");
    QuadraticForm Q = form_from_matrix(M);
    return {HyperbolicPoint(Q, HyperbolicPoint::Branch::Plus),
            HyperbolicPoint(Q, HyperbolicPoint::Branch::Minus)};
}

}  // namespace hecke
