#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hecke/rpf.hpp"
#include "hecke/specfun.hpp"

namespace hecke {

class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fourier coefficients a_1..a_N of a cusp expansion
// F(z) = sum_n a_n e^{2 pi i n z / lambda_p} (a_0 = 0 by construction).
struct FourierSeries {
    int p = 3;                       // lambda = 2 cos(pi/p)
    int weight = 2;                  // 2k
    std::vector<double> coeffs;      // a_1..a_N
    double growth_exponent = -1.0;   // g with |a_n| <= C n^g; < 0 -> weight/2 + 1

    double lambda() const;
    double growth_g() const;
    double growth_C() const;         // fitted from the stored coefficients
    int N() const { return static_cast<int>(coeffs.size()); }

    // F(iy) for y > 0, plus a bound on the dropped tail.
    double value_iy(double y, double* tail_bound = nullptr) const;
};

// Phi(s) = (2 pi / lambda)^{-s} Gamma(s) sum_{n<=N} a_n n^{-s}; throws
// AccuracyError when the Dirichlet tail bound exceeds tail_tol.
cplx phi_partial(cplx s, const FourierSeries& series, double tail_tol = 1e-9);

// D(s) = int_1^inf F(iy) (y^s - y^{2k-s}) dy/y  (entire; D(2k-s) = -D(s)).
cplx D_eval(cplx s, const FourierSeries& series, double tol = 1e-11);

// E0(s) from (c0, nu, eta):
//   2k != 2:  -c0 nu (1/(s-2k) + 1/s)
//   2k  = 2:  -c0 nu (1/(s-2) + 1/s) + i c0 eta / (s-1)
// Poles at s = 0, 2k (and 1 when 2k = 2) are signalled.
cplx E0_eval(cplx s, const RpfSpec& spec);
// Residue of E0 at one of its poles.
cplx E0_residue(const RpfSpec& spec, int pole);

enum class EstarMethod { Quadrature, Hypergeometric };

// E*(s) = -int_1^inf q*(iy) y^{2k-s} dy/y. The quadrature route needs
// Re s > 0; the hypergeometric route continues to all s off the simple
// poles {2k-1, 2k-2, ...}.
cplx Estar_eval(cplx s, const RpfSpec& spec, EstarMethod method, double tol = 1e-11);
// Alternative form -int_0^1 q*(iy) y^s dy/y, valid for 0 < Re s < 2k.
cplx Estar_alt_unit_interval(cplx s, const RpfSpec& spec, double tol = 1e-11);

// Remainder atom value R(s; a, b) = (a-b)^k int_0^inf y^{s-1}
// ((iy-a)(iy-b))^{-k} dy, for nonzero reals a != b, 0 < Re s < 2k.
// Closed form per the two-term Beta/2F1 expression; the s -> k limit is
// evaluated by a series expansion (both Beta factors have cancelling poles).
cplx atom_closed(cplx s, double a, double b, int k);
cplx atom_quadrature(cplx s, double a, double b, int k, double tol = 1e-11);

// R(s) via the closed form, summing atom_closed over all cycle members:
// R(s) = -sum_l d_l D_l^{-k/2} sum_alpha R(s; alpha, alpha').
cplx R_closed(cplx s, const RpfSpec& spec);
// R(s) = -int_0^inf q*(iy) y^s dy/y on the strip 0 < Re s < 2k.
cplx R_quadrature(cplx s, const RpfSpec& spec, double tol = 1e-11);

// Formal linear combination of remainder atoms with exact bookkeeping.
struct RemainderAtom {
    HyperbolicPoint a, b;
    long long num = 1, den = 1;  // rational multiple of the term scale
    int term_index = 0;          // which cycle the scale belongs to
    double coeff(const std::vector<double>& term_scales) const {
        return term_scales[term_index] * static_cast<double>(num) / static_cast<double>(den);
    }
};

struct RemainderExpr {
    int p = 0, k = 1;
    std::vector<double> term_scales;  // per cycle: -(d_l/2) D_l^{-k/2}
    std::vector<RemainderAtom> atoms;

    void merge();                      // exact cancellation on (term, a, b) keys
    bool empty_after_merge() const;
    cplx eval(cplx s) const;
    std::size_t size() const { return atoms.size(); }
};

// R(s) = -sum_l (d_l/2) D_l^{-k/2} sum_{j=2}^p sum_{alpha in Z_l cap I_j}
//        [ R(s; alpha, alpha') - R(s; U^{j-1} alpha, U^{j-1} alpha') ].
RemainderExpr remainder_expr(const RpfSpec& spec);

// rho(R(s; a, b)) = -R(2k-s; a-lambda, b-lambda) = R(s; U^{-1}a, U^{-1}b),
// extended linearly; order p.
RemainderExpr rho(const RemainderExpr& expr);

struct SecondRelationReport {
    bool symbolic_empty = false;
    std::size_t atoms_before = 0, atoms_after = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    int n_samples = 0;
    bool pass = false;
    std::vector<std::string> trace;  // atom counts per power of rho
};

// Checks sum_{j=0}^{p-1} rho^j(R) = 0 both symbolically (exact atom
// cancellation) and numerically at sample points inside the strip.
SecondRelationReport verify_second_relation(const RpfSpec& spec,
                                            const std::vector<cplx>& strip_samples,
                                            double tolerance);

struct InverseMellinReport {
    double T = 0.0;
    cplx integral{};
    cplx rhs{};
    double abs_error = 0.0;
    double truncation_estimate = 0.0;
};

// Numerically integrates the closed-form atom integrand times y^{-s} over
// the truncated vertical line [d - iT, d + iT] and compares with
// (a-b)^k / ((iy-a)(iy-b))^k.
InverseMellinReport inverse_mellin_check(double a, double b, int k, double y, double d, double T);

struct FunctionalEquationReport {
    std::vector<cplx> grid;
    std::vector<double> residuals;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Phi = D + E0 + E*; reports max |Phi(2k-s) + Phi(s) - R(s)| over the grid.
FunctionalEquationReport functional_equation_check(const FourierSeries& series,
                                                   const RpfSpec& spec,
                                                   const std::vector<cplx>& grid,
                                                   double tolerance);

}  // namespace hecke
