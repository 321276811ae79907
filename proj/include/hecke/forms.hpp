#pragma once

#include <utility>

#include "hecke/group.hpp"
#include "hecke/ring.hpp"

namespace hecke {

// Binary quadratic form Ax^2 + Bxy + Cy^2 with coefficients in Z[lambda_p].
class QuadraticForm {
public:
    QuadraticForm(RingElem A, RingElem B, RingElem C);

    int p() const { return p_; }
    const RingElem& A() const { return A_; }
    const RingElem& B() const { return B_; }
    const RingElem& C() const { return C_; }

    RingElem disc() const { return B_ * B_ - A_ * C_ * 4; }

    // Right action (Q o M)(x, y) = Q(ax + by, cx + dy); preserves disc.
    QuadraticForm act(const GroupElem& M) const;

    QuadraticForm operator-() const { return QuadraticForm(-A_, -B_, -C_); }
    bool operator==(const QuadraticForm& o) const {
        return p_ == o.p_ && A_ == o.A_ && B_ == o.B_ && C_ == o.C_;
    }
    bool operator!=(const QuadraticForm& o) const { return !(*this == o); }

    // A > 0 > C, equivalently alpha > 0 > alpha'.
    bool is_simple() const { return A_.sign() > 0 && C_.sign() < 0; }

    // Q(z, 1) = A z^2 + B z + C at a numeric point.
    template <typename Real>
    std::complex<Real> eval(std::complex<Real> z, int precision_bits) const;

private:
    int p_;
    RingElem A_, B_, C_;
};

inline QuadraticForm act(const QuadraticForm& Q, const GroupElem& M) { return Q.act(M); }

// The lambda-BQF [c, d-a, -b] of a hyperbolic element (normalized to
// positive trace); its roots are the fixed points of M.
QuadraticForm form_from_matrix(const GroupElem& M);

// Exact sign of r + s*sqrt(D) for ring elements r, s and D with D >= 0.
int quad_sign(const RingElem& r, const RingElem& s, const RingElem& D);

// A real quadratic irrational stored exactly as (form, branch):
//   plus  branch: (-B + sqrt(D)) / (2A)   (this is alpha_Q)
//   minus branch: (-B - sqrt(D)) / (2A)   (the Hecke conjugate)
// Internally canonicalized to the plus branch of a unique form, using
// Q_{alpha'} = -Q_alpha.
class HyperbolicPoint {
public:
    enum class Branch { Plus, Minus };

    HyperbolicPoint(QuadraticForm form, Branch br);

    int p() const { return form_.p(); }
    // Canonical distinguished form (point is its plus-branch root).
    const QuadraticForm& form() const { return form_; }

    HyperbolicPoint hecke_conjugate() const {
        return HyperbolicPoint(-form_, Branch::Plus);
    }

    // Image under the Moebius action of M, by form transport:
    // form(Mx) = form(x) o M^{-1}.
    HyperbolicPoint apply(const GroupElem& M) const {
        return HyperbolicPoint(form_.act(M.inverse()), Branch::Plus);
    }

    bool is_simple() const { return form_.is_simple(); }

    // Certified enclosure of the real value.
    Interval value(int precision_bits) const;
    double to_double() const { return value(64).mid_double(); }
    long double to_long_double() const { return value(96).mid_long_double(); }

    // Exact comparisons (work across different representations/discriminants).
    bool equals(const HyperbolicPoint& o) const;
    bool less_than(const HyperbolicPoint& o) const;
    int sign() const;  // sign of the value

    // Exact comparison against a field value num/den: sign(this - v).
    int compare(const FieldValue& v) const;

    // Interval index j in 1..p of the value.
    int interval_index(const IntervalDecomposition& dec) const;

private:
    QuadraticForm form_;
};

// Fixed points of a hyperbolic element with c != 0:
// (a - d +- sqrt((a+d)^2 - 4)) / (2c). First = attracting ("+sqrt") branch.
std::pair<HyperbolicPoint, HyperbolicPoint> fixed_points(const GroupElem& M);

struct QuadraticFormHash {
    std::size_t operator()(const QuadraticForm& q) const {
        RingElemHash h;
        std::size_t r = h(q.A());
        r = r * 1099511628211ULL + h(q.B());
        r = r * 1099511628211ULL + h(q.C());
        return r;
    }
};

}  // namespace hecke
