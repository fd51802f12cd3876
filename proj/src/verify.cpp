// verify.cpp - built-in cross-validation suite
#include <rabiq/verify.hpp>

#include <rabiq/analysis.hpp>
#include <rabiq/dynamics.hpp>
#include <rabiq/heun.hpp>
#include <rabiq/oracle.hpp>
#include <rabiq/spectrum.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace rabiq {

namespace {

double worst_level_error(const std::vector<Level<double>>& lv,
                         const OracleSpectrum<double>& os, int count) {
    double worst = 0;
    for (int i = 0; i < count; ++i)
        worst = std::max(worst, std::abs(lv[static_cast<std::size_t>(i)].energy -
                                         os.levels[static_cast<std::size_t>(i)].energy));
    return worst;
}

double worst_match(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return 1e9;
    double worst = 0;
    for (double x : a) {
        double best = 1e9;
        for (double y : b) best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

Table VerifyReport::table() const {
    Table t({"check", "status", "measured", "bound"});
    for (const auto& r : rows)
        t.add_row({r.name, std::string(r.pass ? "pass" : "FAIL"), r.measured, r.bound});
    return t;
}

VerifyReport run_verify() {
    VerifyReport rep;
    auto add = [&](const std::string& name, double measured, double bound) {
        const bool ok = std::isfinite(measured) && measured <= bound;
        rep.rows.push_back({name, ok, measured, bound});
        rep.all_pass = rep.all_pass && ok;
    };
    auto guarded = [&](const std::string& name, double bound, const std::function<double()>& f) {
        double measured;
        try {
            measured = f();
        } catch (const std::exception&) {
            measured = std::numeric_limits<double>::quiet_NaN();
        }
        add(name, measured, bound);
    };

    guarded("rabi spectrum vs diagonalization", 1e-8, [] {
        auto p = rabi_params(0.4, 0.7);
        return worst_level_error(regular_spectrum(p, SpectrumOptions<double>{.count = 8}),
                                 oracle_spectrum(p, 8), 8);
    });

    guarded("baseline crossing dual route", 1e-10, [] {
        auto jp = judd_points(1, 0.6, 0.05, 1.2);
        if (jp.size() != 1) return 1e9;
        return std::abs(jp[0].g - 0.4);
    });

    guarded("baseline crossing degeneracy", 1e-8, [] {
        auto jp = judd_points(1, 0.6, 0.05, 1.2);
        if (jp.size() != 1) return 1e9;
        auto os = oracle_spectrum(rabi_params(0.6, jp[0].g), 10);
        std::vector<double> gaps;
        for (const auto& l : os.levels) gaps.push_back(std::abs(l.energy - jp[0].energy));
        std::sort(gaps.begin(), gaps.end());
        return gaps[1];  // both partners of the pair must sit on the baseline
    });

    guarded("series truncation at the crossing", 1e-10, [] {
        const double delta = 0.6, g = 0.4, E = 1 - g * g, z = 0.3 * g;
        const auto maps = heun_maps(E, delta, g);
        const auto h = hc_eval(maps.p2, (g - z) / (2 * g));
        if (h.truncated_at != 0) return 1e9;
        return std::max(std::abs(k_condition(E, z, +1, delta, g)),
                        std::abs(k_condition(E, z, -1, delta, g)));
    });

    guarded("wronskian zeros vs series zeros", 1e-7, [] {
        const double delta = 0.7, g = 0.8, z = 0.3 * g;
        std::vector<double> poles;
        for (int n = 0; n <= 6; ++n) poles.push_back(n);
        auto fw = [&](double x) { return wronskian(x - g * g, z, 1, delta, g); };
        auto wr = scan_roots(fw, -0.6, 4.0, ScanConfig<double>{}, poles).roots;
        std::vector<double> br;
        for (int sign : {+1, -1}) {
            auto f = [&](double x) { return braak_g(x, sign, delta, g).value; };
            auto r = scan_roots(f, -0.6, 4.0, ScanConfig<double>{}, poles).roots;
            br.insert(br.end(), r.begin(), r.end());
        }
        if (wr.size() != br.size()) return 1e9;
        return worst_match(wr, br);
    });

    guarded("asymmetric spectrum vs diagonalization", 1e-7, [] {
        auto p = asym_params(0.4, 0.5, 0.3);
        return worst_level_error(regular_spectrum(p, SpectrumOptions<double>{.count = 8}),
                                 oracle_spectrum(p, 8), 8);
    });

    guarded("asymmetric half-bias degeneracy", 1e-8, [] {
        auto jp = asym_judd_points(1, +1, 0.4, 0.5, 0.05, 1.2);
        if (jp.size() != 1) return 1e9;
        auto os = oracle_spectrum(asym_params(0.4, jp[0].g, 0.5), 10);
        std::vector<double> gaps;
        for (const auto& l : os.levels) gaps.push_back(std::abs(l.energy - jp[0].energy));
        std::sort(gaps.begin(), gaps.end());
        return gaps[1];
    });

    guarded("anisotropic spectrum vs diagonalization", 1e-7, [] {
        auto p = aniso_params(0.4, 0.6, 0.5);
        return worst_level_error(regular_spectrum(p, SpectrumOptions<double>{.count = 8}),
                                 oracle_spectrum(p, 8), 8);
    });

    guarded("isotropic limit matches rabi", 1e-8, [] {
        auto la = regular_spectrum(aniso_params(0.4, 0.7, 1.0),
                                   SpectrumOptions<double>{.count = 8});
        auto lr = regular_spectrum(rabi_params(0.4, 0.7), SpectrumOptions<double>{.count = 8});
        double worst = 0;
        for (int i = 0; i < 8; ++i)
            worst = std::max(worst, std::abs(la[static_cast<std::size_t>(i)].energy -
                                             lr[static_cast<std::size_t>(i)].energy));
        return worst;
    });

    guarded("two-photon spectrum vs diagonalization", 1e-6, [] {
        auto p = twophoton_params(1.0, 0.25);
        return worst_level_error(regular_spectrum(p, SpectrumOptions<double>{.count = 10}),
                                 oracle_spectrum(p, 10), 10);
    });

    guarded("two-photon closed-form degeneracy", 1e-7, [] {
        auto ex = twophoton_exceptional(2, 1.0, 1);
        if (ex.size() != 1) return 1e9;
        if (std::abs(ex[0].g * ex[0].g - 0.125) > 1e-12) return 1e9;
        auto os = oracle_spectrum(twophoton_params(1.0, ex[0].g), 14);
        std::vector<double> gaps;
        for (const auto& l : os.levels) gaps.push_back(std::abs(l.energy - ex[0].energy));
        std::sort(gaps.begin(), gaps.end());
        return gaps[1];
    });

    guarded("revival closed form", 1e-6, [] {
        auto p = rabi_params(0.0, 2.0);
        auto st = fock_initial(0, -1, 140);
        auto ts = uniform_grid(0.0, 4 * 3.14159265358979312, 160);
        auto tr = propagate(p, st, ts);
        double worst = 0;
        for (std::size_t i = 0; i < ts.size(); ++i)
            worst = std::max(worst,
                             std::abs(tr.revival[i] - delta0_revival(2.0, 1.0, ts[i])));
        return worst;
    });

    guarded("geometric phase displaced limit", 1e-6, [] {
        auto r = berry_phase(rabi_params(0.0, 0.4), 1, +1);
        return std::abs(r.gamma - (1 + 0.4 * 0.4));
    });

    guarded("uncoupled spacing ladder", 1e-10, [] {
        auto h = spacing_histogram(rabi_params(0.0, 0.5), +1, 60);
        double worst = 0;
        for (double s : h.spacings) worst = std::max(worst, std::abs(s - 1.0));
        return worst;
    });

    return rep;
}

} // namespace rabiq
