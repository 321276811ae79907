#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hecke/cycles.hpp"

namespace hecke {

class PoleProximityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A Hecke-symmetric rational period function of weight 2k (k odd):
//   q(z) = q*(z) + c0 q0(z),
//   q*(z) = sum_l d_l D_l^{-k/2} sum_{alpha in Z_l} (alpha-alpha')^k /
//           ((z-alpha)^k (z-alpha')^k),
//   q0(z) = nu (1 - z^{-2k})            (2k != 2)
//         = nu (1 - z^{-2}) + eta / z   (2k = 2).
struct RpfTerm {
    SimpleCycle cycle;
    double d = 1.0;
};

struct RpfSpec {
    int p = 3;
    int k = 1;  // weight 2k, k odd
    std::vector<RpfTerm> terms;
    double c0 = 0.0;
    double nu = 0.0;
    double eta = 0.0;

    int two_k() const { return 2 * k; }
    void validate() const;
};

// Numeric working type selected from precision_bits: 53 bits -> double,
// 54..64 -> long double (x87 extended). Larger requests are rejected.
int clamp_precision_bits(int bits);

template <typename Real>
struct EmbeddedPole {
    Real alpha, alpha_conj;
};

template <typename Real>
struct EmbeddedSpec {
    int p = 0, k = 1;
    Real c0{}, nu{}, eta{};
    struct Term {
        Real coeff;  // d * D^{-k/2}
        std::vector<EmbeddedPole<Real>> poles;
    };
    std::vector<Term> terms;
    double pole_guard = 1e-6;
};

template <typename Real>
EmbeddedSpec<Real> embed_spec(const RpfSpec& spec, int precision_bits);

template <typename Real>
std::complex<Real> q0_eval(std::complex<Real> z, const EmbeddedSpec<Real>& es);

template <typename Real>
std::complex<Real> qstar_eval(std::complex<Real> z, const EmbeddedSpec<Real>& es);

template <typename Real>
std::complex<Real> q_eval(std::complex<Real> z, const EmbeddedSpec<Real>& es);

// Weight-2k slash operator (F|M)(z) = (cz+d)^{-2k} F(Mz).
template <typename Real, typename F>
auto slash(F&& f, const std::array<Real, 4>& m, int two_k) {
    return [f = std::forward<F>(f), m, two_k](std::complex<Real> z) {
        std::complex<Real> den = m[2] * z + m[3];
        std::complex<Real> w = (m[0] * z + m[1]) / den;
        return std::pow(den, -two_k) * f(w);
    };
}

// Partial fractions of (alpha-alpha')^k / ((z-alpha)^k (z-alpha')^k):
//   a_{m} = (-1)^{m-k} C(2k-m-1, k-1) (alpha-alpha')^{m-k},
//   b_{n} = (-1)^k     C(2k-n-1, k-1) (alpha-alpha')^{n-k}.
struct PartialFractionData {
    int k;
    double alpha, alpha_conj;
    std::vector<double> a;  // a[m-1], pole order m at alpha
    std::vector<double> b;  // b[n-1], pole order n at alpha'
};
PartialFractionData partial_fractions(int k, double alpha, double alpha_conj);

struct RelationReport {
    std::string name;
    double max_residual = 0.0;
    int n_samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<std::complex<double>> sample_points(int n, std::uint64_t seed);

// max |(q|T)(z) + q(z)| over the samples.
RelationReport verify_relation1(const RpfSpec& spec, const std::vector<std::complex<double>>& samples,
                                double tolerance, int precision_bits = 53);
// max |sum_{j=0}^{p-1} (q|(ST)^j)(z)| over the samples.
RelationReport verify_relation2(const RpfSpec& spec, const std::vector<std::complex<double>>& samples,
                                double tolerance, int precision_bits = 53);

// q* regrouped by interval index, pairing alpha with U^{j-1} alpha:
//   q*(z) = sum_l c_l sum_{j=2}^{p} sum_{alpha in Z_l cap I_j}
//           (Q_alpha(z)^{-k} - Q_{U^{j-1} alpha}(z)^{-k}),  c_l = d_l / 2.
struct GroupedQstar {
    int p = 0, k = 1;
    struct Pair {
        int j;
        QuadraticForm form;          // Q_alpha
        QuadraticForm partner_form;  // Q_{U^{j-1} alpha}
    };
    struct Term {
        double c;  // d_l / 2
        std::vector<Pair> pairs;
    };
    std::vector<Term> terms;

    std::complex<double> eval(std::complex<double> z, int precision_bits = 64) const;
};
GroupedQstar qstar_interval_form(const RpfSpec& spec);

}  // namespace hecke
