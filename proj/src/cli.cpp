// cli.cpp - rabiq command-line interface
#include <rabiq/cli.hpp>

#include <rabiq/analysis.hpp>
#include <rabiq/csv.hpp>
#include <rabiq/dynamics.hpp>
#include <rabiq/oracle.hpp>
#include <rabiq/parallel.hpp>
#include <rabiq/spectrum.hpp>
#include <rabiq/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

namespace rabiq {
namespace {

struct ModelFlags {
    std::string model{"rabi"};
    double delta{0.5};
    double omega{1.0};
    double g{0.5};
    double epsilon{0.0};
    double lambda{1.0};
    CLI::Option* lambda_opt{nullptr};
    CLI::Option* epsilon_opt{nullptr};
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--model", mf.model, "model variant")
        ->check(CLI::IsMember({"rabi", "asymmetric", "anisotropic", "twophoton"}))
        ->capture_default_str();
    cmd->add_option("--delta", mf.delta, "qubit splitting (half gap)")->capture_default_str();
    cmd->add_option("--omega", mf.omega, "mode frequency")->capture_default_str();
    cmd->add_option("--g", mf.g, "coupling strength")->capture_default_str();
    mf.epsilon_opt =
        cmd->add_option("--epsilon", mf.epsilon, "bias (asymmetric model)")->capture_default_str();
    mf.lambda_opt = cmd->add_option("--lambda", mf.lambda, "anisotropy (anisotropic model)")
                        ->capture_default_str();
}

BasicParams<double> to_params(const ModelFlags& mf) {
    BasicParams<double> p;
    if (mf.model == "rabi")
        p.variant = Variant::rabi;
    else if (mf.model == "asymmetric")
        p.variant = Variant::asymmetric;
    else if (mf.model == "anisotropic")
        p.variant = Variant::anisotropic;
    else
        p.variant = Variant::twophoton;
    p.delta = mf.delta;
    p.omega = mf.omega;
    p.g = mf.g;
    if (mf.epsilon_opt && mf.epsilon_opt->count() > 0 && p.variant != Variant::asymmetric)
        throw std::domain_error("--epsilon applies only to --model asymmetric");
    if (mf.lambda_opt && mf.lambda_opt->count() > 0 && p.variant != Variant::anisotropic)
        throw std::domain_error("--lambda applies only to --model anisotropic");
    if (p.variant == Variant::asymmetric) p.epsilon = mf.epsilon;
    if (p.variant == Variant::anisotropic) p.lambda = mf.lambda;
    p.validate();
    return p;
}

void meta_model(Table& t, const BasicParams<double>& p) {
    t.meta("model", std::string(to_string(p.variant)));
    t.meta("delta", p.delta);
    t.meta("omega", p.omega);
    t.meta("g", p.g);
    if (p.variant == Variant::asymmetric) t.meta("epsilon", p.epsilon);
    if (p.variant == Variant::anisotropic) t.meta("lambda", p.lambda);
}

struct OutputFlags {
    std::string path{"-"};
    bool json{false};
};

void add_output_flags(CLI::App* cmd, OutputFlags& of) {
    cmd->add_option("-o,--output", of.path, "output file, '-' for stdout")
        ->capture_default_str();
    cmd->add_flag("--json", of.json, "emit a JSON document instead of CSV");
}

void emit(const Table& t, const OutputFlags& of) {
    if (of.path == "-") {
        if (of.json)
            t.write_json(std::cout);
        else
            t.write_csv(std::cout);
        return;
    }
    std::ofstream os(of.path, std::ios::binary);
    if (!os) throw std::domain_error("cannot open output file: " + of.path);
    if (of.json)
        t.write_json(os);
    else
        t.write_csv(os);
}

struct ScanFlags {
    double step{0.04};
    double guard{1e-6};
    double bisection_tol{1e-12};
};

void add_scan_flags(CLI::App* cmd, ScanFlags& sf) {
    cmd->add_option("--scan-step", sf.step, "sampling resolution of the root scan")
        ->capture_default_str();
    cmd->add_option("--pole-guard", sf.guard, "exclusion half-width around poles")
        ->capture_default_str();
    cmd->add_option("--bisection-tol", sf.bisection_tol, "bisection bracket tolerance")
        ->capture_default_str();
}

ScanConfig<double> to_scan(const ScanFlags& sf) {
    ScanConfig<double> sc;
    sc.step = sf.step;
    sc.pole_guard = sf.guard;
    sc.bisection_tol = sf.bisection_tol;
    sc.validate();
    return sc;
}

void meta_scan(Table& t, const ScanConfig<double>& sc) {
    t.meta("scan_step", sc.step);
    t.meta("pole_guard", sc.pole_guard);
    t.meta("bisection_tol", sc.bisection_tol);
}

// ----------------------------------------------------------------- spectrum

int cmd_spectrum(const ModelFlags& mf, const OutputFlags& of, const ScanFlags& sf, int levels,
                 double x_lo, double x_hi, bool have_lo, bool have_hi, double series_tol) {
    const auto p = to_params(mf);
    SpectrumOptions<double> opt;
    opt.count = levels;
    opt.scan = to_scan(sf);
    opt.series_tol = series_tol;
    if (have_lo) opt.x_lo = x_lo;
    if (have_hi) opt.x_hi = x_hi;
    const auto lv = regular_spectrum(p, opt);

    Table t({"x", "energy", "parity", "n", "kind", "sector"});
    meta_model(t, p);
    meta_scan(t, opt.scan);
    t.meta("levels", static_cast<int>(lv.size()));
    t.meta("series_tol", opt.series_tol);
    t.meta("exceptional_tol", opt.exceptional_tol);
    for (std::size_t i = 0; i < lv.size(); ++i)
        t.add_row({lv[i].x, lv[i].energy, static_cast<std::int64_t>(lv[i].parity),
                   static_cast<std::int64_t>(i), std::string(to_string(lv[i].kind)),
                   lv[i].sector_label()});
    emit(t, of);
    return 0;
}

// --------------------------------------------------------------------- gfun

int cmd_gfun(const ModelFlags& mf, const OutputFlags& of, double x_lo, double x_hi, int samples,
             double series_tol, double guard) {
    const auto p = to_params(mf);
    if (!(x_hi > x_lo)) throw std::domain_error("need x-min < x-max");
    if (samples < 2) throw std::domain_error("need at least two samples");
    if (!(p.g > 0)) throw std::domain_error("condition functions require g > 0");
    const auto q = p.scaled();

    std::vector<std::string> cols{"x"};
    std::vector<std::function<double(double)>> fns;
    switch (p.variant) {
        case Variant::rabi:
            cols.insert(cols.end(), {"g_plus", "g_minus"});
            for (int sign : {+1, -1})
                fns.push_back([=](double x) {
                    return braak_g(x, sign, q.delta, q.g, series_tol, guard).value;
                });
            break;
        case Variant::anisotropic:
            cols.insert(cols.end(), {"g_plus", "g_minus"});
            for (int sign : {+1, -1})
                fns.push_back([=](double x) {
                    return aniso_g(x, sign, q.delta, q.g, q.lambda, series_tol, guard).value;
                });
            break;
        case Variant::asymmetric:
            cols.push_back("g");
            fns.push_back([=](double x) {
                return asym_g(x, q.delta, q.g, q.epsilon, series_tol, guard).value;
            });
            break;
        case Variant::twophoton: {
            const double z = twophoton_z(q.g);
            for (TpClass cls : {TpClass::p1, TpClass::m1, TpClass::pi, TpClass::mi}) {
                cols.push_back(std::string("g_c") + to_string(cls));
                fns.push_back(
                    [=](double e) { return twophoton_g(e, cls, q.delta, q.g, 256, z).value; });
            }
            break;
        }
    }

    const std::size_t nf = fns.size();
    std::vector<double> values(static_cast<std::size_t>(samples) * nf);
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        xs[static_cast<std::size_t>(i)] = x_lo + (x_hi - x_lo) * double(i) / double(samples - 1);
    parallel_for(samples, [&](int i) {
        for (std::size_t f = 0; f < nf; ++f) {
            double v;
            try {
                v = fns[f](xs[static_cast<std::size_t>(i)]);
            } catch (...) {
                v = std::numeric_limits<double>::quiet_NaN();
            }
            values[static_cast<std::size_t>(i) * nf + f] = v;
        }
    });

    Table t(cols);
    meta_model(t, p);
    t.meta("samples", samples);
    t.meta("series_tol", series_tol);
    t.meta("pole_guard", guard);
    for (int i = 0; i < samples; ++i) {
        std::vector<Cell> row{xs[static_cast<std::size_t>(i)]};
        for (std::size_t f = 0; f < nf; ++f)
            row.push_back(values[static_cast<std::size_t>(i) * nf + f]);
        t.add_row(std::move(row));
    }
    emit(t, of);
    return 0;
}

// --------------------------------------------------------------------- judd

int cmd_judd(const ModelFlags& mf, const OutputFlags& of, const ScanFlags& sf, int n, int s,
             int family, double g_lo, double g_hi) {
    const auto p = to_params(mf);
    const auto sc = to_scan(sf);
    Table t({"n", "branch", "g_star", "energy", "constraint", "truncation"});
    meta_model(t, p);
    meta_scan(t, sc);
    t.meta("n", n);
    t.meta("g_min", g_lo);
    t.meta("g_max", g_hi);

    if (p.variant == Variant::rabi) {
        for (const auto& j : judd_points(n, p.delta, g_lo, g_hi, p.omega, sc))
            t.add_row({static_cast<std::int64_t>(j.n), std::int64_t{0}, j.g, j.energy,
                       j.constraint, j.truncation});
    } else if (p.variant == Variant::asymmetric) {
        t.meta("s", s);
        for (const auto& j : asym_judd_points(n, s, p.delta, p.epsilon, g_lo, g_hi, p.omega, sc))
            t.add_row({static_cast<std::int64_t>(j.n), static_cast<std::int64_t>(j.s), j.g,
                       j.energy, j.constraint, 0.0});
    } else if (p.variant == Variant::twophoton) {
        t.meta("family", family);
        for (const auto& j : twophoton_exceptional(n, p.delta, family, p.omega))
            t.add_row({static_cast<std::int64_t>(j.n), static_cast<std::int64_t>(j.branch), j.g,
                       j.energy, 0.0, 0.0});
    } else {
        throw std::domain_error("exceptional points are not tabulated for this model");
    }
    emit(t, of);
    return 0;
}

// ----------------------------------------------------------------- dynamics

int cmd_dynamics(const ModelFlags& mf, const OutputFlags& of, double alpha, int fock,
                 const std::string& spin, double t_max, int samples, const std::string& method,
                 int n_max, double leak_tol) {
    const auto p = to_params(mf);
    const int sp = (spin == "up") ? +1 : -1;
    const bool closed = (method == "rwa" || method == "deep-strong" || method == "delta0");
    if (closed && fock >= 0)
        throw std::domain_error("closed-form traces are defined for coherent initial states");
    if (n_max <= 0) n_max = suggested_n_max(p, fock >= 0 ? std::sqrt(double(fock)) : alpha);
    const QuantumState<double> st =
        (fock >= 0) ? fock_initial<double>(fock, sp, n_max) : coherent_initial(alpha, sp, n_max);
    const auto times = uniform_grid(0.0, t_max, samples);

    if (closed) {
        // Each closed form ships with a spectral reference so its accuracy is
        // visible in the output rather than assumed.
        const auto tr = propagate(p, st, times, PropagationMethod::spectral, leak_tol);
        std::vector<double> cl(times.size());
        std::vector<double> ref;
        std::string tag;
        if (method == "rwa") {
            for (std::size_t i = 0; i < times.size(); ++i)
                cl[i] = rwa_inversion(p.delta, p.omega, p.g, alpha, times[i]);
            ref = tr.inversion;
            tag = "closed-rwa";
        } else if (method == "delta0") {
            if (p.delta != 0.0)
                throw std::domain_error("--method delta0 requires --delta 0");
            for (std::size_t i = 0; i < times.size(); ++i)
                cl[i] = delta0_revival(p.g, p.omega, times[i]);
            ref = tr.revival;
            tag = "closed-delta0";
        } else {
            cl = deep_strong_inversion(p.delta, p.omega, p.g, alpha, times);
            ref = tr.inversion;
            tag = "closed-deep-strong";
        }
        double dev = 0;
        for (std::size_t i = 0; i < times.size(); ++i)
            dev = std::max(dev, std::abs(cl[i] - ref[i]));

        Table t({"t", "closed", "propagated"});
        meta_model(t, p);
        t.meta("alpha", alpha);
        t.meta("spin", spin);
        t.meta("method", tag);
        t.meta("n_max", tr.n_max);
        t.meta("samples", samples);
        t.meta("max_abs_deviation", dev);
        for (std::size_t i = 0; i < times.size(); ++i) t.add_row({times[i], cl[i], ref[i]});
        emit(t, of);
        return 0;
    }

    const auto m =
        (method == "rk45") ? PropagationMethod::rk45 : PropagationMethod::spectral;
    const auto tr = propagate(p, st, times, m, leak_tol);

    if (!tr.nyquist_ok)
        std::cerr << "warning: sample spacing may alias the populated spectral range; "
                     "increase --samples for a faithful trace\n";

    Table t({"t", "inversion", "revival", "photon", "norm"});
    meta_model(t, p);
    if (fock >= 0)
        t.meta("fock", fock);
    else
        t.meta("alpha", alpha);
    t.meta("spin", spin);
    t.meta("method", std::string(to_string(tr.method)));
    t.meta("n_max", tr.n_max);
    t.meta("samples", samples);
    t.meta("leak_tol", leak_tol);
    t.meta("leakage", tr.leakage);
    t.meta("nyquist_ok", tr.nyquist_ok ? std::string("true") : std::string("false"));
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        t.add_row({tr.times[i], tr.inversion[i], tr.revival[i], tr.photon[i], tr.norm[i]});
    emit(t, of);
    return 0;
}

// -------------------------------------------------------------------- stats

int cmd_stats(const ModelFlags& mf, const OutputFlags& of, int parity, int levels,
              double bin_width, double range) {
    const auto p = to_params(mf);
    const auto h = spacing_histogram(p, parity, levels, bin_width, range);
    const auto pk = two_peak(h);

    Table t({"spacing", "count"});
    meta_model(t, p);
    t.meta("parity", parity);
    t.meta("levels", levels);
    t.meta("bin_width", bin_width);
    t.meta("range", range);
    t.meta("n_max", h.n_max);
    t.meta("two_peaks", pk.two_peaks ? std::string("true") : std::string("false"));
    t.meta("peak_lo", pk.peak_lo);
    t.meta("peak_hi", pk.peak_hi);
    t.meta("frac_below", pk.frac_below);
    t.meta("frac_above", pk.frac_above);
    t.meta("center_mass", pk.center_mass);
    for (std::size_t i = 0; i < h.centers.size(); ++i)
        t.add_row({h.centers[i], static_cast<std::int64_t>(h.counts[i])});
    emit(t, of);
    return 0;
}

// -------------------------------------------------------------------- berry

int cmd_berry(const ModelFlags& mf, const OutputFlags& of, int level, int parity, double g_step,
              double stability_tol) {
    const auto p = to_params(mf);
    const auto r = berry_phase(p, level, parity, g_step, stability_tol);
    Table t({"level", "parity", "gamma_over_2pi", "stability", "n_max", "sweep_points"});
    meta_model(t, p);
    t.meta("g_step", g_step);
    t.meta("stability_tol", stability_tol);
    t.add_row({static_cast<std::int64_t>(r.level), static_cast<std::int64_t>(r.parity), r.gamma,
               r.stability, static_cast<std::int64_t>(r.n_max),
               static_cast<std::int64_t>(r.sweep_points)});
    emit(t, of);
    return 0;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const OutputFlags& of) {
    const auto rep = run_verify();
    emit(rep.table(), of);
    if (of.path != "-") {
        std::size_t passed = 0;
        for (const auto& r : rep.rows)
            if (r.pass) ++passed;
        std::cout << "verify: " << passed << "/" << rep.rows.size() << " checks passed\n";
    }
    return rep.all_pass ? 0 : 2;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"rabiq: spectra, exceptional points and dynamics of quantum Rabi models"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file (sections per subcommand)");

    // spectrum
    auto* sp_cmd = app.add_subcommand("spectrum", "lowest levels from the condition functions");
    ModelFlags sp_mf;
    OutputFlags sp_of;
    ScanFlags sp_sf;
    int sp_levels = 10;
    double sp_xlo = 0, sp_xhi = 0, sp_series_tol = 1e-13;
    add_model_flags(sp_cmd, sp_mf);
    add_output_flags(sp_cmd, sp_of);
    add_scan_flags(sp_cmd, sp_sf);
    sp_cmd->add_option("--levels", sp_levels, "number of levels")->capture_default_str();
    auto* sp_lo_opt = sp_cmd->add_option("--x-min", sp_xlo, "scan window lower edge");
    auto* sp_hi_opt = sp_cmd->add_option("--x-max", sp_xhi, "scan window upper edge");
    sp_cmd->add_option("--series-tol", sp_series_tol, "series convergence tolerance")
        ->capture_default_str();

    // gfun
    auto* gf_cmd = app.add_subcommand("gfun", "tabulate the spectral condition functions");
    ModelFlags gf_mf;
    OutputFlags gf_of;
    double gf_xlo = -1.0, gf_xhi = 5.0, gf_series_tol = 1e-13, gf_guard = 1e-6;
    int gf_samples = 2400;
    add_model_flags(gf_cmd, gf_mf);
    add_output_flags(gf_cmd, gf_of);
    gf_cmd->add_option("--x-min", gf_xlo, "first sample")->capture_default_str();
    gf_cmd->add_option("--x-max", gf_xhi, "last sample")->capture_default_str();
    gf_cmd->add_option("--samples", gf_samples, "sample count")->capture_default_str();
    gf_cmd->add_option("--series-tol", gf_series_tol, "series convergence tolerance")
        ->capture_default_str();
    gf_cmd->add_option("--pole-guard", gf_guard, "pole proximity guard")->capture_default_str();

    // judd
    auto* jd_cmd = app.add_subcommand("judd", "exceptional (degenerate baseline) points");
    ModelFlags jd_mf;
    OutputFlags jd_of;
    ScanFlags jd_sf;
    jd_sf.step = 0.01;
    int jd_n = 1, jd_s = 1, jd_family = 1;
    double jd_glo = 0.02, jd_ghi = 1.6;
    add_model_flags(jd_cmd, jd_mf);
    add_output_flags(jd_cmd, jd_of);
    add_scan_flags(jd_cmd, jd_sf);
    jd_cmd->add_option("--n", jd_n, "baseline index")->capture_default_str();
    jd_cmd->add_option("--s", jd_s, "baseline branch sign (asymmetric)")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
    jd_cmd->add_option("--family", jd_family, "closed-form family (two-photon)")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    jd_cmd->add_option("--g-min", jd_glo, "lower end of the coupling scan")
        ->capture_default_str();
    jd_cmd->add_option("--g-max", jd_ghi, "upper end of the coupling scan")
        ->capture_default_str();

    // dynamics
    auto* dy_cmd = app.add_subcommand("dynamics", "propagate an initial state");
    ModelFlags dy_mf;
    OutputFlags dy_of;
    double dy_alpha = 1.0, dy_tmax = 20.0, dy_leak = 1e-8;
    int dy_fock = -1, dy_samples = 2048, dy_nmax = 0;
    std::string dy_spin = "up", dy_method = "spectral";
    add_model_flags(dy_cmd, dy_mf);
    add_output_flags(dy_cmd, dy_of);
    dy_cmd->add_option("--alpha", dy_alpha, "coherent amplitude of the initial field")
        ->capture_default_str();
    dy_cmd->add_option("--fock", dy_fock, "start from |n> instead of a coherent state");
    dy_cmd->add_option("--spin", dy_spin, "initial qubit state")
        ->check(CLI::IsMember({"up", "dn"}))
        ->capture_default_str();
    dy_cmd->add_option("--t-max", dy_tmax, "final time")->capture_default_str();
    dy_cmd->add_option("--samples", dy_samples, "trace samples")->capture_default_str();
    dy_cmd->add_option("--method", dy_method,
                       "propagation route, or a closed form compared against propagation")
        ->check(CLI::IsMember({"spectral", "rk45", "rwa", "deep-strong", "delta0"}))
        ->capture_default_str();
    dy_cmd->add_option("--n-max", dy_nmax, "Fock truncation (0: automatic)")
        ->capture_default_str();
    dy_cmd->add_option("--leak-tol", dy_leak, "acceptable edge-slot weight")
        ->capture_default_str();

    // stats
    auto* st_cmd = app.add_subcommand("stats", "nearest-neighbour spacing histogram");
    ModelFlags st_mf;
    OutputFlags st_of;
    int st_parity = 1, st_levels = 501;
    double st_bin = 0.02, st_range = 2.0;
    add_model_flags(st_cmd, st_mf);
    add_output_flags(st_cmd, st_of);
    st_cmd->add_option("--parity", st_parity, "parity chain")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
    st_cmd->add_option("--levels", st_levels, "levels entering the statistics")
        ->capture_default_str();
    st_cmd->add_option("--bin-width", st_bin, "histogram bin width in omega units")
        ->capture_default_str();
    st_cmd->add_option("--range", st_range, "histogram upper edge in omega units")
        ->capture_default_str();

    // berry
    auto* br_cmd = app.add_subcommand("berry", "geometric phase of one tracked level");
    ModelFlags br_mf;
    OutputFlags br_of;
    int br_level = 0, br_parity = 1;
    double br_gstep = 0.05, br_stab = 1e-8;
    add_model_flags(br_cmd, br_mf);
    add_output_flags(br_cmd, br_of);
    br_cmd->add_option("--level", br_level, "chain level index at g = 0")->capture_default_str();
    br_cmd->add_option("--parity", br_parity, "parity chain")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
    br_cmd->add_option("--g-step", br_gstep, "coupling sweep step")->capture_default_str();
    br_cmd->add_option("--stability-tol", br_stab, "truncation stability bound")
        ->capture_default_str();

    // verify
    auto* vf_cmd = app.add_subcommand("verify", "run the built-in cross-validation suite");
    OutputFlags vf_of;
    add_output_flags(vf_cmd, vf_of);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (sp_cmd->parsed())
            return cmd_spectrum(sp_mf, sp_of, sp_sf, sp_levels, sp_xlo, sp_xhi,
                                sp_lo_opt->count() > 0, sp_hi_opt->count() > 0, sp_series_tol);
        if (gf_cmd->parsed())
            return cmd_gfun(gf_mf, gf_of, gf_xlo, gf_xhi, gf_samples, gf_series_tol, gf_guard);
        if (jd_cmd->parsed())
            return cmd_judd(jd_mf, jd_of, jd_sf, jd_n, jd_s, jd_family, jd_glo, jd_ghi);
        if (dy_cmd->parsed())
            return cmd_dynamics(dy_mf, dy_of, dy_alpha, dy_fock, dy_spin, dy_tmax, dy_samples,
                                dy_method, dy_nmax, dy_leak);
        if (st_cmd->parsed())
            return cmd_stats(st_mf, st_of, st_parity, st_levels, st_bin, st_range);
        if (br_cmd->parsed())
            return cmd_berry(br_mf, br_of, br_level, br_parity, br_gstep, br_stab);
        if (vf_cmd->parsed()) return cmd_verify(vf_of);
        std::cerr << "error: no subcommand selected\n";
        return 1;
    } catch (const convergence_error& e) {
        std::cerr << "error (non-convergence): " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return 2;
    }
}

} // namespace rabiq
