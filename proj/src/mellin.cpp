#include "hecke/mellin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "hecke/quadrature.hpp"

namespace hecke {

double FourierSeries::lambda() const { return lambda_enclosure(p, 64).mid_double(); }

double FourierSeries::growth_g() const {
    return growth_exponent >= 0 ? growth_exponent : weight / 2.0 + 1.0;
}

double FourierSeries::growth_C() const {
    const double g = growth_g();
    double C = 1.0;
    for (int n = 1; n <= N(); ++n)
        C = std::max(C, std::abs(coeffs[n - 1]) / std::pow(static_cast<double>(n), g));
    return C;
}

double FourierSeries::value_iy(double y, double* tail_bound) const {
    const double q = std::exp(-2.0 * M_PI * y / lambda());
    double acc = 0.0;
    for (int n = N(); n >= 1; --n) acc = (acc + coeffs[n - 1]) * q;
    if (tail_bound) {
        const double g = growth_g();
        const double Np1 = N() + 1;
        const double ratio = std::pow((Np1 + 1.0) / Np1, g) * q;
        if (ratio >= 0.99)
            *tail_bound = std::numeric_limits<double>::infinity();
        else
            *tail_bound = growth_C() * std::pow(Np1, g) * std::pow(q, Np1) / (1.0 - ratio);
    }
    return acc;
}

cplx phi_partial(cplx s, const FourierSeries& series, double tail_tol) {
    if (series.N() == 0) return 0.0;
    const double g = series.growth_g();
    const double sigma = s.real();
    cplx dirichlet = 0.0;
    for (int n = 1; n <= series.N(); ++n)
        dirichlet += series.coeffs[n - 1] * principal_pow(static_cast<double>(n), -s);
    cplx pref = std::exp(-s * std::log(2.0 * M_PI / series.lambda()) + lgamma_c(s));
    if (sigma <= g + 1.0)
        throw AccuracyError("phi_partial: abscissa too small for a certified tail bound");
    const double tail =
        series.growth_C() * std::pow(static_cast<double>(series.N()), g + 1.0 - sigma) / (sigma - g - 1.0);
    if (std::abs(pref) * tail > tail_tol)
        throw AccuracyError("phi_partial: Dirichlet tail bound above tolerance");
    return pref * dirichlet;
}

cplx D_eval(cplx s, const FourierSeries& series, double tol) {
    if (series.N() == 0) return 0.0;
    const double lam = series.lambda();
    const int two_k = series.weight;
    const double sig_max = std::max({s.real(), two_k - s.real(), 1.0});
    // |F(iy)| <= Cb * e^{-2 pi y / lambda} for y >= 1.
    double Cb = 0.0;
    {
        const double q0 = std::exp(-2.0 * M_PI / lam);
        double tb = 0.0;
        for (int n = 1; n <= series.N(); ++n)
            Cb += std::abs(series.coeffs[n - 1]) * std::pow(q0, n - 1);
        series.value_iy(1.0, &tb);
        Cb += tb / q0;
    }
    double Y = std::max(2.0, lam * sig_max / (2.0 * M_PI) + 1.0);
    auto integral_tail = [&](double yy) {
        return 2.0 * Cb * std::pow(yy, sig_max - 1.0) * std::exp(-2.0 * M_PI * yy / lam) * lam;
    };
    while (integral_tail(Y) > 0.1 * tol && Y < 1e4) Y *= 1.25;
    const cplx e1 = s - 1.0, e2 = static_cast<double>(two_k) - s - 1.0;
    auto f = [&](double y) -> cplx {
        double ly = std::log(y);
        return series.value_iy(y) * (std::exp(e1 * ly) - std::exp(e2 * ly));
    };
    return integrate_adaptive(f, 1.0, Y, 0.4 * tol);
}

cplx E0_eval(cplx s, const RpfSpec& spec) {
    const int two_k = spec.two_k();
    if (std::abs(s) < 1e-12) throw PoleError("E0 pole at s = 0", s);
    if (std::abs(s - static_cast<double>(two_k)) < 1e-12)
        throw PoleError("E0 pole at s = 2k", s);
    cplx v = -spec.c0 * spec.nu * (1.0 / (s - static_cast<double>(two_k)) + 1.0 / s);
    if (two_k == 2) {
        if (std::abs(s - 1.0) < 1e-12 && spec.c0 * spec.eta != 0.0)
            throw PoleError("E0 pole at s = 1", s);
        v += cplx(0.0, 1.0) * spec.c0 * spec.eta / (s - 1.0);
    }
    return v;
}

cplx E0_residue(const RpfSpec& spec, int pole) {
    const int two_k = spec.two_k();
    if (pole == 0 || pole == two_k) return {-spec.c0 * spec.nu, 0.0};
    if (pole == 1 && two_k == 2) return cplx(0.0, 1.0) * spec.c0 * spec.eta;
    throw std::domain_error("E0_residue: not a pole location");
}

namespace {

// sum over cycles of |coeff| * sum |alpha - alpha'|^k; with |iy - a| >= y
// this bounds |q*(iy)| by Mq / y^{2k}, and |q*(iy)| <= Mq0 near y = 0.
struct QstarBounds {
    double Mq = 0.0;   // |q*(iy)| <= Mq * y^{-2k}
    double Mq0 = 0.0;  // |q*(iy)| <= Mq0 for all y (poles are off the axis)
};

QstarBounds qstar_bounds(const EmbeddedSpec<double>& es) {
    QstarBounds b;
    for (const auto& t : es.terms) {
        for (const auto& pole : t.poles) {
            double sep = std::abs(pole.alpha - pole.alpha_conj);
            double prod = std::abs(pole.alpha) * std::abs(pole.alpha_conj);
            b.Mq += std::abs(t.coeff) * std::pow(sep, es.k);
            b.Mq0 += std::abs(t.coeff) * std::pow(sep / prod, es.k);
        }
    }
    return b;
}

// q*(i e^u) e^{w u}, stabilized: each pole-pair term is a single exponential
// so that huge |u| cannot overflow intermediate powers.
cplx qstar_mellin_integrand(const EmbeddedSpec<double>& es, double u, cplx w) {
    const double y = std::exp(u);
    const double kk = es.k;
    cplx tot{};
    for (const auto& t : es.terms) {
        cplx s{};
        for (const auto& pole : t.poles) {
            double sep = pole.alpha - pole.alpha_conj;
            s += std::exp(w * u + kk * std::log(sep) - kk * std::log(cplx(-pole.alpha, y)) -
                          kk * std::log(cplx(-pole.alpha_conj, y)));
        }
        tot += t.coeff * s;
    }
    return tot;
}

}  // namespace

cplx Estar_eval(cplx s, const RpfSpec& spec, EstarMethod method, double tol) {
    spec.validate();
    if (spec.terms.empty()) return 0.0;
    const int two_k = spec.two_k();
    if (method == EstarMethod::Quadrature) {
        const double sigma = s.real();
        if (sigma <= 0.0)
            throw std::domain_error("Estar quadrature requires Re(s) > 0");
        EmbeddedSpec<double> es = embed_spec<double>(spec, 60);
        const double Mq = qstar_bounds(es).Mq;
        double L = std::log(10.0 * std::max(Mq, 1e-30) / (sigma * tol)) / sigma;
        L = std::max(L, 1.0);
        auto f = [&](double u) -> cplx {
            return -qstar_mellin_integrand(es, u, static_cast<double>(two_k) - s);
        };
        return integrate_adaptive(f, 0.0, L, 0.4 * tol);
    }
    // Hypergeometric continuation, valid off the poles {2k-1, 2k-2, ...}.
    cplx total = 0.0;
    const cplx iunit(0.0, 1.0);
    for (const auto& t : spec.terms) {
        const double D = t.cycle.disc.embed(64).mid_double();
        const double scale = t.d * std::pow(D, -spec.k / 2.0);
        for (const auto& mem : t.cycle.members) {
            const double al = mem.to_double();
            const double alc = mem.hecke_conjugate().to_double();
            PartialFractionData pf = partial_fractions(spec.k, al, alc);
            for (int m = 1; m <= spec.k; ++m) {
                const cplx b = s - static_cast<double>(two_k) + static_cast<double>(m);
                const int nfold = std::max(0, static_cast<int>(std::ceil(two_k - m - s.real())) + 2);
                cplx im = principal_pow(iunit, -static_cast<double>(m));
                cplx Ja = continued_euler_integral(b, m, -iunit * al, nfold, tol);
                cplx Jb = continued_euler_integral(b, m, -iunit * alc, nfold, tol);
                total += scale * (pf.a[m - 1] * im * Ja + pf.b[m - 1] * im * Jb);
            }
        }
    }
    return -total;
}

cplx Estar_alt_unit_interval(cplx s, const RpfSpec& spec, double tol) {
    spec.validate();
    if (spec.terms.empty()) return 0.0;
    const double sigma = s.real();
    if (!(sigma > 0.0 && sigma < spec.two_k()))
        throw std::domain_error("Estar_alt_unit_interval requires 0 < Re(s) < 2k");
    EmbeddedSpec<double> es = embed_spec<double>(spec, 60);
    const double Mq0 = qstar_bounds(es).Mq0;
    double L = std::log(10.0 * std::max(Mq0, 1e-30) / (sigma * tol)) / sigma;
    L = std::max(L, 1.0);
    auto f = [&](double u) -> cplx {  // y = e^{-u}, u in [0, L]
        return -qstar_mellin_integrand(es, -u, s);
    };
    return integrate_adaptive(f, 0.0, L, 0.4 * tol);
}

namespace {

using Series6 = std::array<cplx, 6>;

Series6 series_mul(const Series6& a, const Series6& b) {
    Series6 c{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j + i < 6; ++j) c[i + j] += a[i] * b[j];
    return c;
}

// exp(g1 h + g2 h^2 + g3 h^3 + g4 h^4 + g5 h^5) as a series in h.
Series6 series_exp(cplx g1, cplx g2, cplx g3, cplx g4, cplx g5) {
    Series6 c{};
    c[0] = 1.0;
    const cplx g[6] = {0.0, g1, g2, g3, g4, g5};
    for (int n = 0; n < 5; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j <= std::min(n, 4); ++j) acc += (static_cast<double>(j + 1)) * g[j + 1] * c[n - j];
        c[n + 1] = acc / static_cast<double>(n + 1);
    }
    return c;
}

// Integrand of the atom in closed form:
// I(s) = i^s (d-e)^{-k} [ d^{s-k} B(2k-s, s-k) F1 + e^{s-k} B(s, k-s) F2 ],
// F1 = 2F1[k,1-k; k-s+1; x], F2 = 2F1[k,1-k; s-k+1; x], x = e/(e-d).
// Near s = k both Beta factors have cancelling simple poles; there we use
// the Taylor expansion of the combined expression in h = s - k.
cplx atom_integrand_closed(cplx s, double delta, double eps, int k) {
    const cplx iunit(0.0, 1.0);
    const cplx x = eps / (eps - delta);
    const cplx h = s - static_cast<double>(k);
    const cplx dmek = std::pow(cplx(delta - eps, 0.0), -k);

    if (std::abs(h) < 0.01) {
        // Series path: I = i^s (d-e)^{-k} W(h)/h with
        // W = Gamma(1+h) A(h) - Gamma(1-h) B(h),
        // A = d^h (Gamma(k-h)/Gamma(k)) F1(c=1-h), B = e^h (Gamma(k+h)/Gamma(k)) F2(c=1+h).
        const double psi0 = digamma_int(k);
        const double psi1 = polygamma_int(1, k), psi2 = polygamma_int(2, k);
        const double psi3 = polygamma_int(3, k), psi4 = polygamma_int(4, k);
        Series6 gm = series_exp(-psi0, psi1 / 2, -psi2 / 6, psi3 / 24, -psi4 / 120);
        Series6 gp = series_exp(psi0, psi1 / 2, psi2 / 6, psi3 / 24, psi4 / 120);
        const cplx Ld = principal_log(cplx(delta, 0.0));
        const cplx Le = principal_log(cplx(eps, 0.0));
        Series6 powd = series_exp(Ld, 0, 0, 0, 0);
        Series6 powe = series_exp(Le, 0, 0, 0, 0);
        Series6 F1{}, F2{};
        double poch_a = 1.0, poch_b = 1.0, fact = 1.0;
        double H1 = 0, H2 = 0, H3 = 0, H4 = 0;
        cplx xn = 1.0;
        for (int n = 0; n < k; ++n) {
            if (n > 0) {
                poch_a *= (k + n - 1);
                poch_b *= (1 - k + n - 1);
                fact *= n;
                H1 += 1.0 / n;
                H2 += 1.0 / (static_cast<double>(n) * n);
                H3 += 1.0 / (static_cast<double>(n) * n * n);
                H4 += 1.0 / (static_cast<double>(n) * n * n * n);
                xn *= x;
            }
            const cplx Tn = poch_a * poch_b * xn / fact;
            Series6 e1 = series_exp(H1, H2 / 2, H3 / 3, H4 / 4, 0);
            Series6 e2 = series_exp(-H1, H2 / 2, -H3 / 3, H4 / 4, 0);
            for (int i = 0; i < 6; ++i) {
                F1[i] += Tn * e1[i] / fact;
                F2[i] += Tn * e2[i] / fact;
            }
        }
        const double euler = 0.57721566490153286060651209008240;
        const double z2 = 1.6449340668482264364724151666460;
        const double z3 = 1.2020569031595942853997381615114;
        const double z4 = 1.0823232337111381915160036965412;
        const double z5 = 1.0369277551433699263313654864570;
        Series6 g1p = series_exp(-euler, z2 / 2, -z3 / 3, z4 / 4, -z5 / 5);
        Series6 g1m = series_exp(euler, z2 / 2, z3 / 3, z4 / 4, z5 / 5);
        Series6 A = series_mul(series_mul(powd, gm), F1);
        Series6 B = series_mul(series_mul(powe, gp), F2);
        Series6 W{};
        Series6 GA = series_mul(g1p, A), GB = series_mul(g1m, B);
        for (int i = 0; i < 6; ++i) W[i] = GA[i] - GB[i];
        // W[0] = 0 by construction; value = i^s (d-e)^{-k} (W[1] + W[2] h + ...).
        cplx acc = 0.0;
        for (int i = 5; i >= 1; --i) acc = acc * h + W[i];
        return principal_pow(iunit, s) * dmek * acc;
    }

    const cplx F1 = hyp2f1_terminating(k, static_cast<double>(k) - s + 1.0, x);
    const cplx F2 = hyp2f1_terminating(k, s - static_cast<double>(k) + 1.0, x);
    const cplx lgk = lgamma_c(static_cast<double>(k));
    const cplx is_log = s * principal_log(iunit);
    // Keep exponents combined: each term can pair e^{+pi t} growth in the
    // real-power factor against e^{-pi t} decay in the Beta factor.
    const cplx t1 = std::exp(is_log + (s - static_cast<double>(k)) * principal_log(cplx(delta, 0.0)) +
                             lgamma_c(2.0 * k - s) + lgamma_c(s - static_cast<double>(k)) - lgk) *
                    F1;
    const cplx t2 = std::exp(is_log + (s - static_cast<double>(k)) * principal_log(cplx(eps, 0.0)) +
                             lgamma_c(s) + lgamma_c(static_cast<double>(k) - s) - lgk) *
                    F2;
    return dmek * (t1 + t2);
}

void check_atom_args(cplx s, double a, double b, int k) {
    if (k < 1 || k % 2 == 0)
        throw std::domain_error("atom: k must be a positive odd integer");
    if (a == 0.0 || b == 0.0 || a == b)
        throw std::domain_error("atom requires nonzero a != b");
    if (!(s.real() > 0.0 && s.real() < 2.0 * k))
        throw std::domain_error("atom requires 0 < Re(s) < 2k");
}

}  // namespace

cplx atom_closed(cplx s, double a, double b, int k) {
    check_atom_args(s, a, b, k);
    // Integer points of the strip other than s = k are apparent poles of the
    // two printed terms (the full function is finite there, but each term
    // diverges); signal instead of cancelling inf against inf.
    for (int m = 1; m < 2 * k; ++m) {
        if (m == k) continue;
        if (std::abs(s - static_cast<double>(m)) < 1e-8)
            throw PoleError("atom_closed: s too close to an integer Beta/2F1 pole", s);
    }
    double delta = a, eps = b;
    if ((a > 0 && b > 0 && a < b) || (a < 0 && b < 0 && a > b)) std::swap(delta, eps);
    cplx I = atom_integrand_closed(s, delta, eps, k);
    return std::pow(cplx(a - b, 0.0), k) * I;
}

cplx atom_quadrature(cplx s, double a, double b, int k, double tol) {
    check_atom_args(s, a, b, k);
    const double sigma = s.real();
    const double pref = std::pow(std::abs(a - b), k);
    const double pa = std::pow(std::abs(a) * std::abs(b), k);
    // substitution y = e^u; |ie^u - a| >= max(|a|, e^u)
    double L1 = std::log(10.0 * pref / (sigma * pa * tol)) / sigma;
    double L2 = std::log(10.0 * pref / ((2.0 * k - sigma) * tol)) / (2.0 * k - sigma);
    L1 = std::max(L1, 1.0);
    L2 = std::max(L2, 1.0);
    // exponents combined in log space: e^{su} alone can overflow long before
    // the integrand itself leaves range (integer k makes the rewrite exact
    // regardless of log branch)
    auto f = [&](double u) -> cplx {
        const double y = std::exp(u);
        const double kk = k;
        return std::exp(s * u - kk * std::log(cplx(-a, y)) - kk * std::log(cplx(-b, y)));
    };
    cplx I = integrate_adaptive(f, -L1, 0.0, 0.2 * tol) + integrate_adaptive(f, 0.0, L2, 0.2 * tol);
    return std::pow(cplx(a - b, 0.0), k) * I;
}

cplx R_closed(cplx s, const RpfSpec& spec) {
    spec.validate();
    cplx total = 0.0;
    for (const auto& t : spec.terms) {
        const double D = t.cycle.disc.embed(64).mid_double();
        const double scale = t.d * std::pow(D, -spec.k / 2.0);
        for (const auto& mem : t.cycle.members) {
            const double al = mem.to_double();
            const double alc = mem.hecke_conjugate().to_double();
            total += scale * atom_closed(s, al, alc, spec.k);
        }
    }
    return -total;
}

cplx R_quadrature(cplx s, const RpfSpec& spec, double tol) {
    spec.validate();
    if (spec.terms.empty()) return 0.0;
    const double sigma = s.real();
    const int two_k = spec.two_k();
    if (!(sigma > 0.0 && sigma < two_k))
        throw std::domain_error("R_quadrature requires 0 < Re(s) < 2k");
    EmbeddedSpec<double> es = embed_spec<double>(spec, 60);
    QstarBounds qb = qstar_bounds(es);
    double L1 = std::log(10.0 * std::max(qb.Mq0, 1e-30) / (sigma * tol)) / sigma;
    double L2 = std::log(10.0 * std::max(qb.Mq, 1e-30) / ((two_k - sigma) * tol)) / (two_k - sigma);
    L1 = std::max(L1, 1.0);
    L2 = std::max(L2, 1.0);
    auto f = [&](double u) -> cplx { return -qstar_mellin_integrand(es, u, s); };
    return integrate_adaptive(f, -L1, 0.0, 0.2 * tol) + integrate_adaptive(f, 0.0, L2, 0.2 * tol);
}

namespace {

long long llgcd(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a == 0 ? 1 : a;
}

void rat_normalize(long long& num, long long& den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = llgcd(num, den);
    num /= g;
    den /= g;
}

void rat_add(long long& num, long long& den, long long n2, long long d2) {
    num = checked_add(checked_mul(num, d2), checked_mul(n2, den));
    den = checked_mul(den, d2);
    rat_normalize(num, den);
}

std::string point_key(const HyperbolicPoint& x) {
    std::ostringstream os;
    const QuadraticForm& f = x.form();
    for (const auto* e : {&f.A(), &f.B(), &f.C()}) {
        for (long long c : e->coeffs()) os << c << ',';
        os << ';';
    }
    return os.str();
}

}  // namespace

void RemainderExpr::merge() {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<RemainderAtom> merged;
    for (auto& at : atoms) {
        std::string key = std::to_string(at.term_index) + '|' + point_key(at.a) + '|' + point_key(at.b);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), merged.size());
            merged.push_back(at);
        } else {
            RemainderAtom& tgt = merged[it->second];
            rat_add(tgt.num, tgt.den, at.num, at.den);
        }
    }
    atoms.clear();
    for (auto& at : merged)
        if (at.num != 0) atoms.push_back(std::move(at));
}

bool RemainderExpr::empty_after_merge() const {
    RemainderExpr copy = *this;
    copy.merge();
    return copy.atoms.empty();
}

cplx RemainderExpr::eval(cplx s) const {
    cplx total = 0.0;
    for (const auto& at : atoms) {
        const double av = at.a.to_double();
        const double bv = at.b.to_double();
        total += at.coeff(term_scales) * atom_closed(s, av, bv, k);
    }
    return total;
}

RemainderExpr remainder_expr(const RpfSpec& spec) {
    spec.validate();
    RemainderExpr expr;
    expr.p = spec.p;
    expr.k = spec.k;
    const GroupElem U = GroupElem::U(spec.p);
    for (std::size_t l = 0; l < spec.terms.size(); ++l) {
        const auto& t = spec.terms[l];
        const double D = t.cycle.disc.embed(64).mid_double();
        expr.term_scales.push_back(-(t.d / 2.0) * std::pow(D, -spec.k / 2.0));
        for (std::size_t i = 0; i < t.cycle.members.size(); ++i) {
            const HyperbolicPoint& alpha = t.cycle.members[i];
            const int j = t.cycle.interval_idx[i];
            HyperbolicPoint ua = alpha;
            for (int e = 0; e < j - 1; ++e) ua = ua.apply(U);
            RemainderAtom direct{alpha, alpha.hecke_conjugate(), 1, 1, static_cast<int>(l)};
            RemainderAtom image{ua, ua.hecke_conjugate(), -1, 1, static_cast<int>(l)};
            expr.atoms.push_back(std::move(direct));
            expr.atoms.push_back(std::move(image));
        }
    }
    expr.merge();
    return expr;
}

RemainderExpr rho(const RemainderExpr& expr) {
    RemainderExpr out;
    out.p = expr.p;
    out.k = expr.k;
    out.term_scales = expr.term_scales;
    const GroupElem Ui = GroupElem::U(expr.p).inverse();
    for (const auto& at : expr.atoms) {
        RemainderAtom img{at.a.apply(Ui), at.b.apply(Ui), at.num, at.den, at.term_index};
        out.atoms.push_back(std::move(img));
    }
    out.merge();
    return out;
}

SecondRelationReport verify_second_relation(const RpfSpec& spec,
                                            const std::vector<cplx>& strip_samples,
                                            double tolerance) {
    SecondRelationReport rep;
    rep.tolerance = tolerance;
    rep.n_samples = static_cast<int>(strip_samples.size());
    RemainderExpr base = remainder_expr(spec);
    RemainderExpr total = base;
    RemainderExpr cur = base;
    rep.trace.push_back("rho^0: " + std::to_string(base.size()) + " atoms");
    std::vector<RemainderExpr> powers{base};
    for (int j = 1; j < spec.p; ++j) {
        cur = rho(cur);
        powers.push_back(cur);
        rep.trace.push_back("rho^" + std::to_string(j) + ": " + std::to_string(cur.size()) + " atoms");
        for (const auto& at : cur.atoms) total.atoms.push_back(at);
    }
    rep.atoms_before = total.atoms.size();
    total.merge();
    rep.atoms_after = total.atoms.size();
    rep.symbolic_empty = total.atoms.empty();
    rep.trace.push_back("sum over rho powers after exact merge: " +
                        std::to_string(rep.atoms_after) + " atoms");
    double maxr = 0.0;
    for (cplx s : strip_samples) {
        cplx v = 0.0;
        for (const auto& pw : powers) v += pw.eval(s);
        maxr = std::max(maxr, std::abs(v));
    }
    rep.max_residual = maxr;
    rep.pass = rep.symbolic_empty && maxr <= tolerance;
    return rep;
}

InverseMellinReport inverse_mellin_check(double a, double b, int k, double y, double d, double T) {
    if (y <= 0.0) throw std::domain_error("inverse_mellin_check: y must be positive");
    if (!(d > 0.0 && d < 2.0 * k))
        throw std::domain_error("inverse_mellin_check: the line Re s = d must lie in (0, 2k)");
    InverseMellinReport rep;
    rep.T = T;
    auto f = [&](double t) -> cplx {
        const cplx s(d, t);
        return atom_closed(s, a, b, k) * principal_pow(cplx(y, 0.0), -s) / (2.0 * M_PI);
    };
    // Fixed panel edges so that doubling T only appends panels.
    cplx total = 0.0;
    const double panel = 5.0;
    for (double lo = 0.0; lo < T; lo += panel) {
        double hi = std::min(lo + panel, T);
        total += integrate_adaptive(f, lo, hi, 1e-13);
        total += integrate_adaptive(f, -hi, -lo, 1e-13);
    }
    rep.integral = total;
    const cplx iy(0.0, y);
    rep.rhs = std::pow(cplx(a - b, 0.0), k) / (std::pow(iy - a, k) * std::pow(iy - b, k));
    rep.abs_error = std::abs(rep.integral - rep.rhs);
    // The integrand decays like e^{-pi |t| / 2}; estimate the dropped tails
    // from the boundary magnitudes.
    rep.truncation_estimate = (std::abs(f(T)) + std::abs(f(-T))) * (2.0 / M_PI) * 3.0;
    return rep;
}

FunctionalEquationReport functional_equation_check(const FourierSeries& series,
                                                   const RpfSpec& spec,
                                                   const std::vector<cplx>& grid,
                                                   double tolerance) {
    FunctionalEquationReport rep;
    rep.grid = grid;
    rep.tolerance = tolerance;
    if (series.N() > 0 && series.weight != spec.two_k())
        throw std::domain_error("functional_equation_check: series weight != spec weight");
    const double two_k = spec.two_k();
    auto Phi = [&](cplx s) -> cplx {
        cplx v = D_eval(s, series);
        if (spec.c0 != 0.0) v += E0_eval(s, spec);
        if (!spec.terms.empty()) v += Estar_eval(s, spec, EstarMethod::Quadrature);
        return v;
    };
    double maxr = 0.0;
    for (cplx s : grid) {
        cplx R = spec.terms.empty() ? cplx(0.0) : R_closed(s, spec);
        double r = std::abs(Phi(two_k - s) + Phi(s) - R);
        rep.residuals.push_back(r);
        maxr = std::max(maxr, r);
    }
    rep.max_residual = maxr;
    rep.pass = maxr <= tolerance;
    return rep;
}

}  // namespace hecke
