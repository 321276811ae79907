#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hecke/forms.hpp"

namespace hecke {

// Z_A for a Hecke-symmetric hyperbolic class: the simple numbers of the
// class, with the closure certificate that makes the enumeration checkable:
//  - a witness that -A = A (the negated seed was reached in the orbit),
//  - the successor map sigma(alpha) = U^{j-1}(alpha'), j = interval index
//    of alpha, is a bijection of the member set,
//  - T-closure: -1/alpha is a member conjugate for every member alpha,
//  - for every j in 2..p the set equality
//      { beta' : beta in Z cap I_{p-j+2} } = { U^{j-1} alpha : alpha in Z cap I_j }.
struct SimpleCycle {
    int p = 0;
    QuadraticForm class_seed;
    RingElem disc;
    std::vector<HyperbolicPoint> members;   // sorted ascending by value
    std::vector<int> interval_idx;          // per member
    std::vector<int> sigma;                 // member index -> member index
    int sigma_orbit_count = 0;
    int depth_used = 0;
    std::size_t forms_visited = 0;
    bool certificate_ok = false;

    SimpleCycle(QuadraticForm seed, RingElem d)
        : p(seed.p()), class_seed(std::move(seed)), disc(std::move(d)) {}
};

class CycleError : public std::runtime_error {
public:
    enum class Kind { NotSimple, NotHyperbolic, SymmetryViolation, Incomplete };
    CycleError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

struct EnumerationOptions {
    int max_depth = 0;                 // 0 -> default 4p
    std::size_t node_budget = 2'000'000;
    int stall_levels = 3;              // early stop once certified and stalled
};

// BFS over {seed o W : W word in S, S^-1, T} with exact deduplication,
// collecting simple forms; validates the closure certificate. Throws
// CycleError on a non-simple/non-hyperbolic seed, on a class without Hecke
// symmetry, or if the certificate cannot be established within the budget.
SimpleCycle enumerate_simple_cycle(const QuadraticForm& seed, const EnumerationOptions& opts = {});

// The per-j set equality above, checked exactly. Returns false and fills
// *witness (a description of one mismatching element) on failure.
bool verify_interval_pairing(const SimpleCycle& cycle, int j, std::string* witness = nullptr);

}  // namespace hecke
