#include "hecke/cycles.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hecke {

namespace {

// U^{j-1} applied to a point, exactly.
HyperbolicPoint u_power_apply(const HyperbolicPoint& x, int e, const GroupElem& U) {
    HyperbolicPoint r = x;
    int n = ((e % x.p()) + x.p()) % x.p();
    for (int i = 0; i < n; ++i) r = r.apply(U);
    return r;
}

struct CertCheck {
    bool ok = true;
    std::string witness;
};

// Build interval indices, sigma, orbit count; check bijectivity and the
// per-j equalities. Points are compared by exact form identity (the form of
// a point is unique within a class, and transport preserves that identity).
CertCheck build_certificate(SimpleCycle& cyc) {
    CertCheck res;
    const IntervalDecomposition dec(cyc.p);
    const GroupElem U = GroupElem::U(cyc.p);
    cyc.interval_idx.clear();
    for (const auto& m : cyc.members) cyc.interval_idx.push_back(m.interval_index(dec));

    auto find_member = [&](const HyperbolicPoint& x) -> int {
        for (std::size_t i = 0; i < cyc.members.size(); ++i)
            if (cyc.members[i].form() == x.form() || cyc.members[i].equals(x))
                return static_cast<int>(i);
        return -1;
    };

    cyc.sigma.assign(cyc.members.size(), -1);
    std::vector<int> hit(cyc.members.size(), 0);
    for (std::size_t i = 0; i < cyc.members.size(); ++i) {
        HyperbolicPoint img = u_power_apply(cyc.members[i].hecke_conjugate(),
                                            cyc.interval_idx[i] - 1, U);
        int t = find_member(img);
        if (t < 0) {
            res.ok = false;
            std::ostringstream os;
            os << "sigma image of member " << i << " (value "
               << cyc.members[i].to_double() << ") is not a member";
            res.witness = os.str();
            return res;
        }
        cyc.sigma[i] = t;
        hit[t]++;
    }
    for (std::size_t i = 0; i < hit.size(); ++i) {
        if (hit[i] != 1) {
            res.ok = false;
            res.witness = "sigma is not a bijection";
            return res;
        }
    }
    // Orbit count of sigma.
    std::vector<int> seen(cyc.members.size(), 0);
    cyc.sigma_orbit_count = 0;
    for (std::size_t i = 0; i < cyc.members.size(); ++i) {
        if (seen[i]) continue;
        ++cyc.sigma_orbit_count;
        int j = static_cast<int>(i);
        while (!seen[j]) {
            seen[j] = 1;
            j = cyc.sigma[j];
        }
    }
    // T-closure of the pole system: -1/alpha must be the Hecke conjugate of
    // a member. Without this a sigma-closed proper subset can masquerade as
    // a complete cycle.
    const GroupElem T = GroupElem::T(cyc.p);
    for (std::size_t i = 0; i < cyc.members.size(); ++i) {
        HyperbolicPoint img = cyc.members[i].apply(T);
        bool found = false;
        for (const auto& m : cyc.members) {
            const HyperbolicPoint conj = m.hecke_conjugate();
            if (conj.form() == img.form() || conj.equals(img)) {
                found = true;
                break;
            }
        }
        if (!found) {
            res.ok = false;
            std::ostringstream os;
            os << "pole system not T-closed: -1/alpha for member " << i << " (value "
               << cyc.members[i].to_double() << ") is not a member conjugate";
            res.witness = os.str();
            return res;
        }
    }
    for (int j = 2; j <= cyc.p; ++j) {
        std::string w;
        if (!verify_interval_pairing(cyc, j, &w)) {
            res.ok = false;
            res.witness = w;
            return res;
        }
    }
    return res;
}

}  // namespace

bool verify_interval_pairing(const SimpleCycle& cyc, int j, std::string* witness) {
    if (j < 2 || j > cyc.p) throw std::domain_error("verify_interval_pairing: j out of range 2..p");
    const GroupElem U = GroupElem::U(cyc.p);
    std::vector<HyperbolicPoint> lhs, rhs;
    for (std::size_t i = 0; i < cyc.members.size(); ++i) {
        if (cyc.interval_idx[i] == cyc.p - j + 2)
            lhs.push_back(cyc.members[i].hecke_conjugate());
        if (cyc.interval_idx[i] == j)
            rhs.push_back(u_power_apply(cyc.members[i], j - 1, U));
    }
    if (lhs.size() != rhs.size()) {
        if (witness) {
            std::ostringstream os;
            os << "interval pairing size mismatch at j=" << j << ": " << lhs.size()
               << " conjugates vs " << rhs.size() << " U-images";
            *witness = os.str();
        }
        return false;
    }
    std::vector<bool> used(rhs.size(), false);
    for (const auto& x : lhs) {
        bool found = false;
        for (std::size_t t = 0; t < rhs.size(); ++t) {
            if (!used[t] && (x.form() == rhs[t].form() || x.equals(rhs[t]))) {
                used[t] = true;
                found = true;
                break;
            }
        }
        if (!found) {
            if (witness) {
                std::ostringstream os;
                os << "interval pairing mismatch at j=" << j << ": conjugate value "
                   << x.to_double() << " has no matching U-image";
                *witness = os.str();
            }
            return false;
        }
    }
    return true;
}

SimpleCycle enumerate_simple_cycle(const QuadraticForm& seed, const EnumerationOptions& opts) {
    const int p = seed.p();
    if (seed.disc().sign() <= 0)
        throw CycleError(CycleError::Kind::NotHyperbolic, "seed form is not indefinite");
    if (!seed.is_simple())
        throw CycleError(CycleError::Kind::NotSimple, "seed form is not simple (requires A > 0 > C)");

    const int max_depth = opts.max_depth > 0 ? opts.max_depth : 4 * p;
    const GroupElem S = GroupElem::S(p), T = GroupElem::T(p);
    const GroupElem Si = S.inverse();
    const GroupElem* gens[3] = {&S, &Si, &T};

    struct Key {
        Icoeffs flat;
        bool operator==(const Key& o) const { return flat == o.flat; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = 1469598103934665603ULL;
            for (long long v : k.flat) h = (h ^ std::hash<long long>()(v)) * 1099511628211ULL;
            return h;
        }
    };
    auto key_of = [](const QuadraticForm& q) {
        Key k;
        for (const auto* e : {&q.A(), &q.B(), &q.C()})
            k.flat.insert(k.flat.end(), e->coeffs().begin(), e->coeffs().end());
        return k;
    };

    SimpleCycle cyc(seed, seed.disc());
    std::unordered_set<Key, KeyHash> visited;
    std::vector<QuadraticForm> frontier{seed};
    visited.insert(key_of(seed));
    std::vector<QuadraticForm> simple_forms{seed};
    const Key neg_seed_key = key_of(-seed);
    bool symmetric = visited.count(neg_seed_key) > 0;

    auto rebuild_members = [&]() {
        cyc.members.clear();
        for (const auto& q : simple_forms)
            cyc.members.emplace_back(q, HyperbolicPoint::Branch::Plus);
        std::sort(cyc.members.begin(), cyc.members.end(),
                  [](const HyperbolicPoint& a, const HyperbolicPoint& b) { return a.less_than(b); });
    };

    int stalled = 0;
    int depth = 0;
    for (depth = 1; depth <= max_depth; ++depth) {
        std::vector<QuadraticForm> next;
        bool new_simple = false;
        for (const auto& q : frontier) {
            for (const auto* g : gens) {
                QuadraticForm q2 = q.act(*g);
                Key k = key_of(q2);
                if (!visited.insert(std::move(k)).second) continue;
                if (q2.is_simple()) {
                    simple_forms.push_back(q2);
                    new_simple = true;
                }
                next.push_back(std::move(q2));
            }
        }
        if (visited.size() > opts.node_budget)
            throw CycleError(CycleError::Kind::Incomplete,
                             "incomplete enumeration: node budget exhausted; raise the budget or depth");
        frontier = std::move(next);
        if (!symmetric && visited.count(neg_seed_key) > 0) symmetric = true;
        stalled = new_simple ? 0 : stalled + 1;
        if (symmetric && stalled >= opts.stall_levels) {
            rebuild_members();
            CertCheck cert = build_certificate(cyc);
            if (cert.ok) {
                cyc.certificate_ok = true;
                cyc.depth_used = depth;
                cyc.forms_visited = visited.size();
                return cyc;
            }
        }
        if (frontier.empty()) break;
    }

    if (!symmetric)
        throw CycleError(CycleError::Kind::SymmetryViolation,
                         "class is not Hecke-symmetric at this depth: -A was not reached from A "
                         "(seed negation not found in the orbit)");
    rebuild_members();
    CertCheck cert = build_certificate(cyc);
    if (!cert.ok)
        throw CycleError(CycleError::Kind::Incomplete,
                         "incomplete enumeration at max_depth " + std::to_string(max_depth) +
                             ": " + cert.witness + "; raise max_depth");
    cyc.certificate_ok = true;
    cyc.depth_used = std::min(depth, max_depth);
    cyc.forms_visited = visited.size();
    return cyc;
}

}  // namespace hecke
