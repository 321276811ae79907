#include "hecke/rpf.hpp"

#include <algorithm>

namespace hecke {

void RpfSpec::validate() const {
    if (k < 1 || k % 2 == 0) throw std::domain_error("RpfSpec: k must be odd and positive");
    if (two_k() != 2 && eta != 0.0)
        throw std::domain_error("RpfSpec: eta is only meaningful for weight 2");
    for (const auto& t : terms) {
        if (t.cycle.p != p) throw std::domain_error("RpfSpec: cycle with mismatched p");
        if (!t.cycle.certificate_ok)
            throw std::domain_error("RpfSpec: cycle without a valid closure certificate");
    }
}

int clamp_precision_bits(int bits) {
    if (bits < 53) bits = 53;
    if (bits > 64)
        throw std::domain_error(
            "precision_bits > 64 is not supported by the numeric evaluators "
            "(53 = double, 54..64 = extended long double)");
    return bits;
}

template <typename Real>
EmbeddedSpec<Real> embed_spec(const RpfSpec& spec, int precision_bits) {
    spec.validate();
    EmbeddedSpec<Real> es;
    es.p = spec.p;
    es.k = spec.k;
    es.c0 = static_cast<Real>(spec.c0);
    es.nu = static_cast<Real>(spec.nu);
    es.eta = static_cast<Real>(spec.eta);
    const int pb = precision_bits + 8;
    for (const auto& t : spec.terms) {
        typename EmbeddedSpec<Real>::Term et;
        Real D;
        if constexpr (std::is_same_v<Real, long double>)
            D = t.cycle.disc.embed(pb).mid_long_double();
        else
            D = static_cast<Real>(t.cycle.disc.embed(pb).mid_double());
        et.coeff = static_cast<Real>(t.d) * std::pow(D, -static_cast<Real>(spec.k) / 2);
        for (const auto& m : t.cycle.members) {
            EmbeddedPole<Real> pole;
            if constexpr (std::is_same_v<Real, long double>) {
                pole.alpha = m.value(pb).mid_long_double();
                pole.alpha_conj = m.hecke_conjugate().value(pb).mid_long_double();
            } else {
                pole.alpha = static_cast<Real>(m.value(pb).mid_double());
                pole.alpha_conj = static_cast<Real>(m.hecke_conjugate().value(pb).mid_double());
            }
            et.poles.push_back(pole);
        }
        es.terms.push_back(std::move(et));
    }
    return es;
}
template EmbeddedSpec<double> embed_spec<double>(const RpfSpec&, int);
template EmbeddedSpec<long double> embed_spec<long double>(const RpfSpec&, int);

namespace {

template <typename Real>
std::complex<Real> ipow(std::complex<Real> z, int n) {
    if (n < 0) return Real(1) / ipow(z, -n);
    std::complex<Real> acc(1);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

}  // namespace

template <typename Real>
std::complex<Real> q0_eval(std::complex<Real> z, const EmbeddedSpec<Real>& es) {
    if (z == std::complex<Real>{})
        throw PoleProximityError("q0 has a pole at z = 0");
    std::complex<Real> v = es.nu * (Real(1) - ipow(z, -2 * es.k));
    if (2 * es.k == 2) v += es.eta / z;
    return v;
}

template <typename Real>
std::complex<Real> qstar_eval(std::complex<Real> z, const EmbeddedSpec<Real>& es) {
    std::complex<Real> tot{};
    for (const auto& t : es.terms) {
        std::complex<Real> s{};
        for (const auto& pole : t.poles) {
            std::complex<Real> za = z - pole.alpha;
            std::complex<Real> zb = z - pole.alpha_conj;
            if (std::abs(za) < es.pole_guard || std::abs(zb) < es.pole_guard)
                throw PoleProximityError("qstar evaluated within the pole guard distance");
            Real sep = pole.alpha - pole.alpha_conj;
            s += ipow(std::complex<Real>(sep), es.k) / (ipow(za, es.k) * ipow(zb, es.k));
        }
        tot += t.coeff * s;
    }
    return tot;
}

template <typename Real>
std::complex<Real> q_eval(std::complex<Real> z, const EmbeddedSpec<Real>& es) {
    std::complex<Real> v = qstar_eval(z, es);
    if (es.c0 != Real(0)) v += es.c0 * q0_eval(z, es);
    return v;
}

template std::complex<double> q0_eval<double>(std::complex<double>, const EmbeddedSpec<double>&);
template std::complex<long double> q0_eval<long double>(std::complex<long double>,
                                                        const EmbeddedSpec<long double>&);
template std::complex<double> qstar_eval<double>(std::complex<double>, const EmbeddedSpec<double>&);
template std::complex<long double> qstar_eval<long double>(std::complex<long double>,
                                                           const EmbeddedSpec<long double>&);
template std::complex<double> q_eval<double>(std::complex<double>, const EmbeddedSpec<double>&);
template std::complex<long double> q_eval<long double>(std::complex<long double>,
                                                       const EmbeddedSpec<long double>&);

PartialFractionData partial_fractions(int k, double alpha, double alpha_conj) {
    if (alpha == alpha_conj) throw std::domain_error("partial_fractions: alpha == alpha'");
    PartialFractionData pf;
    pf.k = k;
    pf.alpha = alpha;
    pf.alpha_conj = alpha_conj;
    const double sep = alpha - alpha_conj;
    auto binom = [](int n, int r) {
        double v = 1.0;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    for (int m = 1; m <= k; ++m) {
        double sgn = ((m - k) % 2 == 0) ? 1.0 : -1.0;
        pf.a.push_back(sgn * binom(2 * k - m - 1, k - 1) * std::pow(sep, m - k));
    }
    for (int n = 1; n <= k; ++n) {
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        pf.b.push_back(sgn * binom(2 * k - n - 1, k - 1) * std::pow(sep, n - k));
    }
    return pf;
}

std::vector<std::complex<double>> sample_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<std::complex<double>> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x = -5.0 + 10.0 * uniform();
        double y = 0.2 + 4.8 * uniform();
        pts.emplace_back(x, y);
    }
    return pts;
}

namespace {

template <typename Real>
RelationReport relation_impl(const RpfSpec& spec, const std::vector<std::complex<double>>& samples,
                             double tolerance, bool second) {
    EmbeddedSpec<Real> es = embed_spec<Real>(spec, std::is_same_v<Real, long double> ? 72 : 60);
    auto q = [&es](std::complex<Real> z) { return q_eval(z, es); };
    RelationReport rep;
    rep.name = second ? "rpf2" : "rpf1";
    rep.n_samples = static_cast<int>(samples.size());
    rep.tolerance = tolerance;
    const GroupElem T = GroupElem::T(spec.p);
    const GroupElem U = GroupElem::U(spec.p);
    double maxr = 0.0;
    for (auto zd : samples) {
        std::complex<Real> z(static_cast<Real>(zd.real()), static_cast<Real>(zd.imag()));
        std::complex<Real> r;
        if (!second) {
            auto qT = slash<Real>(q, T.embedded<Real>(96), spec.two_k());
            r = qT(z) + q(z);
        } else {
            r = {};
            GroupElem M = GroupElem::identity(spec.p);
            for (int j = 0; j < spec.p; ++j) {
                auto qM = slash<Real>(q, M.embedded<Real>(96), spec.two_k());
                r += qM(z);
                M = M * U;
            }
        }
        maxr = std::max(maxr, static_cast<double>(std::abs(r)));
    }
    rep.max_residual = maxr;
    rep.pass = maxr <= tolerance;
    return rep;
}

}  // namespace

RelationReport verify_relation1(const RpfSpec& spec, const std::vector<std::complex<double>>& samples,
                                double tolerance, int precision_bits) {
    if (clamp_precision_bits(precision_bits) > 53)
        return relation_impl<long double>(spec, samples, tolerance, false);
    return relation_impl<double>(spec, samples, tolerance, false);
}

RelationReport verify_relation2(const RpfSpec& spec, const std::vector<std::complex<double>>& samples,
                                double tolerance, int precision_bits) {
    if (clamp_precision_bits(precision_bits) > 53)
        return relation_impl<long double>(spec, samples, tolerance, true);
    return relation_impl<double>(spec, samples, tolerance, true);
}

GroupedQstar qstar_interval_form(const RpfSpec& spec) {
    spec.validate();
    GroupedQstar g;
    g.p = spec.p;
    g.k = spec.k;
    const GroupElem U = GroupElem::U(spec.p);
    const IntervalDecomposition dec(spec.p);
    for (const auto& t : spec.terms) {
        GroupedQstar::Term gt;
        gt.c = t.d / 2.0;
        for (std::size_t i = 0; i < t.cycle.members.size(); ++i) {
            const HyperbolicPoint& alpha = t.cycle.members[i];
            int j = t.cycle.interval_idx.empty() ? alpha.interval_index(dec)
                                                 : t.cycle.interval_idx[i];
            HyperbolicPoint partner = alpha;
            for (int e = 0; e < j - 1; ++e) partner = partner.apply(U);
            gt.pairs.push_back({j, alpha.form(), partner.form()});
        }
        g.terms.push_back(std::move(gt));
    }
    return g;
}

std::complex<double> GroupedQstar::eval(std::complex<double> z, int precision_bits) const {
    std::complex<double> tot{};
    for (const auto& t : terms) {
        std::complex<double> s{};
        for (const auto& pr : t.pairs) {
            std::complex<double> qa = pr.form.eval(z, precision_bits);
            std::complex<double> qb = pr.partner_form.eval(z, precision_bits);
            s += ipow(1.0 / qa, k) - ipow(1.0 / qb, k);
        }
        tot += t.c * s;
    }
    return tot;
}

}  // namespace hecke
