// Command-line front end: one subcommand per verification, JSON/CSV reports.
//
// Exit codes: 0 success, 1 a checked property failed on a verified
// counterexample, 2 usage or input error.

#include "vsec/census.hpp"
#include "vsec/cli_config.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace vsec;

namespace {

using clock_type = std::chrono::steady_clock;

void emit(const CensusReport& r, const CommandConfig& cfg, clock_type::time_point t0) {
    double elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::string bytes = report_to_json(r).dump(2) + "\n";
    if (!cfg.out.empty()) write_file_atomic(cfg.out, bytes);
    else std::cout << bytes;
    if (!cfg.csv.empty()) write_file_atomic(cfg.csv, report_csv(r));
    std::cerr << r.command << ": done in " << elapsed << " s\n";
}

int run_classify(const CommandConfig& cfg) {
    std::uint32_t p = cfg.order == 3 ? 3 : 2;
    std::vector<int> degs{cfg.order == 4 ? 2 : 1};
    FieldTower T(p, degs);
    auto t0 = clock_type::now();
    auto r = classify_all_planes(T, 0, cfg.threads);
    emit(r, cfg, t0);
    bool bad = r.counts.at("unclassified") != 0 || r.counts.at("solids_contained") != 0 ||
               r.counts.at("contained") !=
                   r.counts.at("conic") + r.counts.at("tangent") + r.counts.at("nucleus");
    return bad ? 1 : 0;
}

int run_disjoint(const CommandConfig& cfg) {
    std::vector<int> degs = cfg.q == 2 ? std::vector<int>{1, 2, 3} : std::vector<int>{2, 2, 3};
    FieldTower T(2, degs);
    auto P = find_quadratic_param(T, 0);
    auto C = desarguesian_spread_set(T, 2, 1);
    auto lfs = spread_to_linset(T, C, P);
    Mat rows(int(lfs.points.size()), 6);
    for (std::size_t i = 0; i < lfs.points.size(); ++i)
        for (int j = 0; j < 6; ++j) rows.at(int(i), j) = lfs.points[i].c[std::size_t(j)];
    Subspace dplane = make_subspace(T, 1, 5, rows);
    auto t0 = clock_type::now();
    auto dc = disjoint_plane_census(T, 1, 2, cfg.threads, &dplane);
    emit(dc.report, cfg, t0);
    auto& c = dc.report.counts;
    bool bad = c.at("other_profile") != 0 || c.at("oracle_match") != 1 ||
               c.at("desarguesian_member") != 1;
    return bad ? 1 : 0;
}

int run_orbit(const CommandConfig& cfg) {
    FieldTower T(2, {1, 2, 3});
    auto t0 = clock_type::now();
    auto dc = disjoint_plane_census(T, 1, 2, cfg.threads);
    auto r = orbit_transitivity_check(T, 1, 2, dc.plane_indices, cfg.pairs, cfg.seed);
    emit(r, cfg, t0);
    return r.counts.at("successes") == std::uint64_t(cfg.pairs) ? 0 : 1;
}

int run_search(const CommandConfig& cfg) {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    Q2SearchContext ctx(T, P);
    LinsetSearchConfig sc;
    sc.strategy = cfg.strategy;
    sc.threads = cfg.threads;
    sc.checkpoint_path = cfg.checkpoint;
    sc.budget = cfg.budget;
    if (cfg.strategy == "full" && !cfg.long_run)
        throw CLI::ValidationError("--strategy full requires --long-run");
    auto t0 = clock_type::now();
    auto res = linset_search(ctx, sc, 2);
    emit(res.report, cfg, t0);
    auto& c = res.report.counts;
    return c.at("oracle_agreement") == c.at("disjoint") ? 0 : 1;
}

int run_verify_spread(const CommandConfig& cfg) {
    FieldTower T(2, {1, 2, 3});
    SpreadSet C;
    if (cfg.input.empty()) C = desarguesian_spread_set(T, 2, 1);
    else C = spreadset_from_json(T, json::parse(read_file(cfg.input)));
    auto t0 = clock_type::now();
    auto flags = validate_spread_set(T, C);
    auto cover = flags.spread && flags.full ? spread_cover(T, C) : SpreadCover{};
    auto iso = symplectic_isotropy_witness(T, C);
    CensusReport r;
    r.command = "verify-spread";
    r.params = {{"n", C.n}, {"field", T.size(C.lvl)}, {"matrices", C.mats.size()}};
    r.counts["spread"] = flags.spread;
    r.counts["full"] = flags.full;
    r.counts["semifield"] = flags.semifield;
    r.counts["symplectic"] = flags.symplectic;
    r.counts["kerdock"] = flags.kerdock;
    r.counts["partition"] = cover.partition;
    r.counts["isotropy"] = iso ? 0 : 1;
    if (iso) {
        auto [m, i, j] = *iso;
        r.witnesses.push_back({{"matrix", m}, {"rows", {i, j}}});
    }
    if (flags.semifield) {
        std::uint64_t order = 1;
        for (int i = 0; i < C.n; ++i) order *= T.size(C.lvl);
        if (order <= 256) {
            auto info = presemifield_ops(T, C);
            r.counts["left_nucleus"] = info.left_nucleus;
            r.counts["center"] = info.center;
        }
    }
    emit(r, cfg, t0);
    // flag/partition consistency plus the spread property itself
    if (flags.spread && flags.full && !cover.partition) return 1;
    if (bool(iso) == flags.symplectic) return 1; // witness iff non-symmetric
    return flags.spread ? 0 : 1;
}

int run_derive_fg(const CommandConfig& cfg) {
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    LinearSetSpec sp{P, Mat(6, 6)};
    if (!cfg.input.empty()) sp = spec_from_json(T, P, json::parse(read_file(cfg.input)));
    auto t0 = clock_type::now();
    auto sys = derive_fg(T, sp);
    auto zeros = fg_zeros(T, sys);
    CensusReport r;
    r.command = "derive-fg";
    r.params = spec_to_json(T, sp);
    r.counts["f_terms"] = sys.f.size();
    r.counts["g_terms"] = sys.g.size();
    r.counts["common_zeros"] = zeros.size();
    json fg = fg_to_json(sys);
    r.witnesses.push_back(std::move(fg));
    emit(r, cfg, t0);
    return 0;
}

int run_selftest(const CommandConfig& cfg) {
    auto t0 = clock_type::now();
    int failures = 0;
    auto check = [&](bool ok, const char* what) {
        if (!ok) ++failures;
        std::cerr << (ok ? "ok" : "FAIL") << ": " << what << "\n";
    };
    FieldTower T(2, {1, 2, 3});
    auto P = find_quadratic_param(T, 0);
    check(P.a == 1 && T.mul(1, P.xi, P.xi) == T.add(1, P.xi, 1), "quadratic param q=2");
    check(v2(T, 0, {1, 1, 1}) == SymPoint{1, 1, 1, 1, 1, 1}, "veronese map at (1,1,1)");
    check(secant_value(T, 1, {0, 0, 0, 1, 1, 1}) == 0, "nucleus point on the cubic");
    check(secant_value(T, 0, {1, 1, 1, 0, 0, 0}) == 1, "identity point off the cubic");
    {
        LinearSetSpec zero{P, Mat(6, 6)};
        auto pts = linset_points(T, zero);
        check(pts.size() == 21 && linset_is_plane(T, zero, pts), "zero spec is the 21-point plane");
        auto verdict = disjoint_from_secant(T, zero);
        check(!verdict.disjoint_direct && verdict.consistent() &&
                  verdict.witness && verdict.witness->c == std::vector<elem>{1, 0, 0, 0, 0, 0},
              "zero spec witness (1,0,0,0,0,0)");
    }
    {
        auto C = desarguesian_spread_set(T, 2, 1);
        check(C.mats[1] == [&] {
            Mat I(3, 3);
            for (int i = 0; i < 3; ++i) I.at(i, i) = 1;
            return I;
        }(), "multiplication matrix of 1 is the identity");
    }
    check(gaussian_binomial(6, 3, 2) == 1395, "plane count of PG(5,2)");
    CensusReport r;
    r.command = "selftest";
    r.counts["failures"] = std::uint64_t(failures);
    emit(r, cfg, t0);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"censuses and searches around the quadric Veronese surface"};
    app.require_subcommand(1);
    CommandConfig cfg;
    if (const char* env = std::getenv("VSEC_THREADS")) cfg.threads = std::max(1, std::atoi(env));

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--seed", cfg.seed, "random seed (default 0)");
        sc->add_option("--threads", cfg.threads, "worker count (env VSEC_THREADS as fallback)");
        sc->add_option("--out", cfg.out, "report JSON path (default stdout)");
        sc->add_option("--csv", cfg.csv, "counts CSV path");
    };
    auto* classify = app.add_subcommand("classify-planes", "classify all planes against the secant variety");
    classify->add_option("--order", cfg.order, "field order (2, 3 or 4)")
        ->check(CLI::IsMember({2, 3, 4}));
    add_common(classify);
    auto* disjoint = app.add_subcommand("disjoint-planes", "census of planes disjoint from the secant variety");
    disjoint->add_option("--q", cfg.q, "base subfield order (ambient PG(5,q^2))")
        ->check(CLI::IsMember({2, 4}));
    disjoint->add_flag("--long-run", cfg.long_run, "allow the expensive q=4 run");
    add_common(disjoint);
    auto* orbit = app.add_subcommand("orbit-check", "constructive transitivity on disjoint-plane pairs");
    orbit->add_option("--pairs", cfg.pairs, "number of sampled pairs");
    add_common(orbit);
    auto* search = app.add_subcommand("search-linsets", "rank-6 linear-set search at q=2");
    search->add_option("--strategy", cfg.strategy, "restricted-slice or full")
        ->check(CLI::IsMember({"restricted-slice", "full"}));
    search->add_option("--checkpoint", cfg.checkpoint, "checkpoint file path");
    search->add_option("--budget", cfg.budget, "candidate budget");
    search->add_flag("--long-run", cfg.long_run, "allow the full-strategy run");
    add_common(search);
    auto* verify = app.add_subcommand("verify-spread", "validate a spread set (default: Desarguesian F64/F4)");
    verify->add_option("--input", cfg.input, "spread-set JSON file");
    add_common(verify);
    auto* derive = app.add_subcommand("derive-fg", "expand a spec into the cubic pair (f,g)");
    derive->add_option("--input", cfg.input, "spec JSON file (default: all-zero forms)");
    add_common(derive);
    auto* self = app.add_subcommand("selftest", "run the quick example suite");
    add_common(self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(classify)) { cfg.subcommand = "classify-planes"; return run_classify(cfg); }
        if (app.got_subcommand(disjoint)) {
            cfg.subcommand = "disjoint-planes";
            if (cfg.q != 2 && !cfg.long_run)
                throw CLI::ValidationError("--q 4 requires --long-run");
            return run_disjoint(cfg);
        }
        if (app.got_subcommand(orbit)) { cfg.subcommand = "orbit-check"; return run_orbit(cfg); }
        if (app.got_subcommand(search)) { cfg.subcommand = "search-linsets"; return run_search(cfg); }
        if (app.got_subcommand(verify)) { cfg.subcommand = "verify-spread"; return run_verify_spread(cfg); }
        if (app.got_subcommand(derive)) { cfg.subcommand = "derive-fg"; return run_derive_fg(cfg); }
        if (app.got_subcommand(self)) { cfg.subcommand = "selftest"; return run_selftest(cfg); }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
