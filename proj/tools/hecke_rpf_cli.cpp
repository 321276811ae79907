// Command-line driver: group-relation checks, simple-cycle enumeration, and
// the verification suites, with JSON/CSV reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hecke/io.hpp"

namespace {

using namespace hecke;

struct RunConfig {
    int precision_bits = 64;
    double tolerance = 1e-8;
    int sample_count = 100;
    std::uint64_t rng_seed = 0;
    std::string output;         // empty -> stdout
    std::string format = "json";
    int max_depth = 0;          // 0 -> 4p
};

void emit(const RunConfig& cfg, const json& report, const std::string& csv) {
    const std::string& text = cfg.format == "csv" ? csv : report.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw std::runtime_error("cannot open output file " + cfg.output);
        out << text;
    }
}

std::vector<cplx> strip_grid(int two_k, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<cplx> grid;
    while (static_cast<int>(grid.size()) < n) {
        double sig = 0.1 + (two_k - 0.2) * uniform();
        double t = -2.0 + 4.0 * uniform();
        bool near_pole = false;
        for (int m = 0; m <= two_k; ++m)
            if (std::abs(sig - m) < 0.05) near_pole = true;
        if (!near_pole) grid.emplace_back(sig, t);
    }
    return grid;
}

int exit_code_for_exception(const std::exception& e) {
    if (auto* ce = dynamic_cast<const CycleError*>(&e))
        return ce->kind == CycleError::Kind::Incomplete ? 2 : 3;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 3;
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 3;
    return 1;
}

int cmd_group(int p, const RunConfig& cfg) {
    json checks = json::array();
    bool all_ok = true;
    auto add = [&](const std::string& name, bool ok, json extra = json::object()) {
        extra["name"] = name;
        extra["pass"] = ok;
        checks.push_back(extra);
        all_ok = all_ok && ok;
    };

    const GroupElem S = GroupElem::S(p), T = GroupElem::T(p), U = GroupElem::U(p);
    add("T^2 = I", (T * T).is_identity());
    add("(ST)^p = I", (S * T).power(p).is_identity());
    add("U = ST", U == S * T);

    IntervalDecomposition dec(p);
    bool order_ok = true;
    for (int j = p; j >= 2; --j) {
        const auto& lo = dec.endpoint(j);
        const auto& hi = dec.endpoint(j - 1);
        if (!hi.has_value()) continue;  // j-1 = 1 -> infinity
        // lo < hi exactly: sign(lo.num*hi.den - hi.num*lo.den) * signs of dens
        RingElem diff = lo->num * hi->den - hi->num * lo->den;
        if (diff.sign() * lo->den.sign() * hi->den.sign() >= 0) order_ok = false;
    }
    add("endpoint ordering 0 = U^p(0) < ... < U^2(0) < U(0) = inf", order_ok);

    // U maps I_j to I_{j-1} (and I_1 to I_p): numeric interior samples.
    std::mt19937_64 rng(cfg.rng_seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    bool shift_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        double x = -6.0 + 12.0 * uniform();
        int j = dec.index_of(x);
        ExtComplex im = mobius_apply(U, std::complex<double>(x, 0.0));
        if (im.infinite) continue;
        int j2 = dec.index_of(im.v.real());
        int expect = j == 1 ? p : j - 1;
        if (j2 != expect) shift_ok = false;
    }
    add("U maps I_j onto I_{j-1} (I_1 onto I_p)", shift_ok);

    json rep{{"command", "group"}, {"p", p}, {"checks", checks}, {"pass", all_ok}};
    std::string csv = "check,s_re,s_im,residual\n";
    for (const auto& c : checks)
        csv += c["name"].get<std::string>() + ",,," + (c["pass"].get<bool>() ? "0" : "1") + "\n";
    emit(cfg, rep, csv);
    return all_ok ? 0 : 1;
}

int cmd_cycle(int p, const std::string& form_text, const RunConfig& cfg) {
    QuadraticForm seed = form_from_brackets(p, form_text);
    EnumerationOptions opts;
    opts.max_depth = cfg.max_depth;
    SimpleCycle cyc = enumerate_simple_cycle(seed, opts);
    json rep = cycle_report(cyc);
    rep["command"] = "cycle";
    std::string csv = "check,s_re,s_im,residual\ncycle_members," + std::to_string(cyc.members.size()) + ",,0\n";
    emit(cfg, rep, csv);
    return 0;
}

int cmd_verify(const std::string& spec_file, const std::string& which,
               const std::string& coeffs_file, int k_override, const RunConfig& cfg) {
    json sj;
    {
        std::ifstream in(spec_file);
        if (!in) throw std::invalid_argument("cannot open spec file " + spec_file);
        in >> sj;
    }
    if (k_override > 0) sj["k"] = k_override;
    EnumerationOptions opts;
    opts.max_depth = cfg.max_depth;
    RpfSpec spec = spec_from_json(sj, opts);

    FourierSeries series;
    series.p = spec.p;
    series.weight = spec.two_k();
    if (!coeffs_file.empty()) {
        std::ifstream in(coeffs_file);
        if (!in) throw std::invalid_argument("cannot open coeffs file " + coeffs_file);
        json cj;
        in >> cj;
        series = series_from_json(cj);
    }

    json results = json::array();
    std::string csv = "check,s_re,s_im,residual\n";
    bool all_ok = true;
    auto want = [&](const std::string& name) { return which == "all" || which == name; };

    auto samples = sample_points(cfg.sample_count, cfg.rng_seed);
    if (want("rpf1")) {
        RelationReport r = verify_relation1(spec, samples, cfg.tolerance, cfg.precision_bits);
        results.push_back(to_json(r));
        all_ok = all_ok && r.pass;
        csv += "rpf1,,," + std::to_string(r.max_residual) + "\n";
    }
    if (want("rpf2")) {
        RelationReport r = verify_relation2(spec, samples, cfg.tolerance, cfg.precision_bits);
        results.push_back(to_json(r));
        all_ok = all_ok && r.pass;
        csv += "rpf2,,," + std::to_string(r.max_residual) + "\n";
    }
    auto grid = strip_grid(spec.two_k(), 10, cfg.rng_seed);
    if (want("r1")) {
        double maxr = 0.0;
        json rows = json::array();
        for (cplx s : grid) {
            cplx rc = R_closed(s, spec);
            cplx rr = R_closed(2.0 * spec.k - s, spec);
            cplx rq = R_quadrature(s, spec);
            double resid = std::max(std::abs(rr - rc), std::abs(rq - rc));
            maxr = std::max(maxr, resid);
            rows.push_back(json{{"s", {s.real(), s.imag()}}, {"residual", resid}});
            csv += "r1," + std::to_string(s.real()) + "," + std::to_string(s.imag()) + "," +
                   std::to_string(resid) + "\n";
        }
        bool pass = maxr <= cfg.tolerance;
        results.push_back(json{{"name", "r1"}, {"grid", rows}, {"max_residual", maxr},
                               {"tolerance", cfg.tolerance}, {"pass", pass}});
        all_ok = all_ok && pass;
    }
    if (want("r2")) {
        SecondRelationReport r = verify_second_relation(spec, grid, cfg.tolerance);
        results.push_back(to_json(r));
        all_ok = all_ok && r.pass;
        csv += "r2,,," + std::to_string(r.max_residual) + "\n";
    }
    if (want("lemma1")) {
        // closed form vs quadrature over the four sign configurations plus
        // the spec's own pole pairs; anchored at R(1; 1, -1) = -pi.
        const double phi_v = (1.0 + std::sqrt(5.0)) / 2.0;
        std::vector<std::pair<double, double>> pairs = {
            {-1.0, 2.0}, {2.0, -1.0}, {2.0, 0.5}, {-2.0, -0.5}, {phi_v, -1.0 / phi_v}};
        for (const auto& t : spec.terms)
            if (!t.cycle.members.empty())
                pairs.emplace_back(t.cycle.members[0].to_double(),
                                   t.cycle.members[0].hecke_conjugate().to_double());
        double maxrel = 0.0;
        int k = spec.k;
        for (auto [a, b] : pairs) {
            for (cplx s : strip_grid(2 * k, 5, cfg.rng_seed + 1)) {
                cplx c = atom_closed(s, a, b, k);
                cplx q = atom_quadrature(s, a, b, k);
                double rel = std::abs(c - q) / std::max(1e-300, std::abs(q));
                maxrel = std::max(maxrel, rel);
                csv += "lemma1," + std::to_string(s.real()) + "," + std::to_string(s.imag()) +
                       "," + std::to_string(rel) + "\n";
            }
        }
        double anchor = std::abs(atom_quadrature(1.0, 1.0, -1.0, 1) + M_PI);
        anchor = std::max(anchor, std::abs(atom_closed(1.0, 1.0, -1.0, 1) + M_PI));
        bool pass = maxrel <= 1e-6 && anchor <= 1e-10;
        results.push_back(json{{"name", "lemma1"}, {"max_rel_err", maxrel},
                               {"anchor_abs_err", anchor}, {"pass", pass}});
        all_ok = all_ok && pass;
    }
    if (want("fe")) {
        FunctionalEquationReport r = functional_equation_check(series, spec, grid, cfg.tolerance * 10);
        results.push_back(to_json(r));
        all_ok = all_ok && r.pass;
        for (std::size_t i = 0; i < r.grid.size(); ++i)
            csv += "fe," + std::to_string(r.grid[i].real()) + "," + std::to_string(r.grid[i].imag()) +
                   "," + std::to_string(r.residuals[i]) + "\n";
    }
    if (want("invmellin")) {
        json rows = json::array();
        bool pass = true;
        double prev = 0.0;
        for (double T : {60.0, 120.0, 240.0}) {
            InverseMellinReport r = inverse_mellin_check(1.0, -1.0, 1, 1.0, 1.0, T);
            rows.push_back(to_json(r));
            csv += "invmellin," + std::to_string(T) + ",0," + std::to_string(r.abs_error) + "\n";
            if (T == 60.0 && r.abs_error > 1e-4) pass = false;
            if (T > 60.0 && r.abs_error > prev) pass = false;
            prev = r.abs_error;
        }
        results.push_back(json{{"name", "invmellin"}, {"runs", rows}, {"pass", pass}});
        all_ok = all_ok && pass;
    }

    json rep{{"command", "verify"}, {"which", which}, {"spec", to_json(spec)},
             {"results", results}, {"pass", all_ok}};
    emit(cfg, rep, csv);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hecke-symmetric rational period functions and Dirichlet-series remainder terms"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("HECKE_RPF_PRECISION")) cfg.precision_bits = std::atoi(env);

    int p = 3, k = 0;
    std::string form_text, spec_file, coeffs_file, which = "all";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tolerance", cfg.tolerance, "pass/fail tolerance");
        sub->add_option("--precision", cfg.precision_bits, "working precision in bits (53..64)");
        sub->add_option("--seed", cfg.rng_seed, "RNG seed for all sampled grids");
        sub->add_option("--samples", cfg.sample_count, "number of sample points");
        sub->add_option("--out", cfg.output, "write the report to a file");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--max-depth", cfg.max_depth, "orbit search depth cap (default 4p)");
    };

    CLI::App* g = app.add_subcommand("group", "verify the group relations and the interval decomposition");
    g->add_option("--p", p, "Hecke group index (>= 3)")->required()->check(CLI::Range(3, 64));
    add_common(g);

    CLI::App* c = app.add_subcommand("cycle", "enumerate a simple cycle and its closure certificate");
    c->add_option("--p", p, "Hecke group index (>= 3)")->required()->check(CLI::Range(3, 64));
    c->add_option("--form", form_text, "seed form [A,B,C]; entries integers or coefficient vectors")
        ->required();
    add_common(c);

    CLI::App* v = app.add_subcommand("verify", "run the verification suites for a spec file");
    v->add_option("spec_file", spec_file, "RPF spec JSON file");
    v->add_option("--spec", spec_file, "RPF spec JSON file (same as the positional)");
    v->add_option("--which", which, "rpf1|rpf2|r1|r2|lemma1|fe|invmellin|all")
        ->check(CLI::IsMember({"rpf1", "rpf2", "r1", "r2", "lemma1", "fe", "invmellin", "all"}));
    v->add_option("--coeffs", coeffs_file, "Fourier coefficients JSON file");
    v->add_option("--k", k, "override the spec's weight parameter k (odd)");
    add_common(v);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    try {
        if (g->parsed()) return cmd_group(p, cfg);
        if (c->parsed()) return cmd_cycle(p, form_text, cfg);
        if (v->parsed()) {
            if (spec_file.empty()) throw std::invalid_argument("verify: a spec file is required");
            return cmd_verify(spec_file, which, coeffs_file, k, cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for_exception(e);
    }
    return 3;
}
