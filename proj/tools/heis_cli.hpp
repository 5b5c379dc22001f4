// Command-line front end: spectrum, eigenfunction, dims, weyl and verify.
#pragma once

#include "verify_suites.hpp"

#include <heis/heis.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace heis::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInvalidInput = 2,
    kExitIoFailure = 3,
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string manifold = "nl";
    int l = 1;
    double alpha = 0.0;
    double tmax = 10.0;
    std::string tgrid;       ///< empty: the default geometric grid
    std::string n = "1";      ///< integer, or an inclusive range "a:b" for dims
    std::string lambda = "0"; ///< as n
    int a = 0;
    int b = 0;
    std::string p_grid = "0";
    std::string q_grid = "0";
    std::string s_grid = "0";
    double wb_tol = kDefaultWBTolerance;
    double nullity_tol = kNullityTolerance;
    double fd_step = kDefaultFdStep;
    std::string format = "json";
    std::string out;
    std::string suite = "all";
    bool include_zero = false; ///< list zero eigenvalues in spectrum output
    double perturb_pullback = 0.0;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

inline double parse_double(const std::string &s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("not a finite number: '" + s + "'");
    return v;
}

inline int parse_int(const std::string &s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception &) {
        throw UsageError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

/// "k", "a:b" (inclusive) or "k1,k2,...".
inline std::vector<int> parse_int_range(const std::string &s) {
    if (s.find(',') != std::string::npos) {
        std::vector<int> out;
        for (const auto &part : split(s, ',')) out.push_back(parse_int(part));
        return out;
    }
    const auto parts = split(s, ':');
    if (parts.size() == 1) return {parse_int(parts[0])};
    if (parts.size() != 2) throw UsageError("integer range must be 'a:b': '" + s + "'");
    const int lo = parse_int(parts[0]);
    const int hi = parse_int(parts[1]);
    if (hi < lo) throw UsageError("empty integer range '" + s + "'");
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
}

/// "x", "x1,x2,..." or "min:max:count", spaced linearly or geometrically.
inline std::vector<double> parse_grid(const std::string &s, bool geometric) {
    if (s.find(',') != std::string::npos) {
        std::vector<double> out;
        for (const auto &part : split(s, ',')) out.push_back(parse_double(part));
        return out;
    }
    const auto parts = split(s, ':');
    if (parts.size() == 1) return {parse_double(parts[0])};
    if (parts.size() != 3) throw UsageError("grid must be 'min:max:count': '" + s + "'");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const int count = parse_int(parts[2]);
    if (count < 1) throw UsageError("grid count must be positive");
    if (count == 1) return {lo};
    if (geometric && !(lo > 0.0 && hi > 0.0)) throw UsageError("geometric grid needs positive endpoints");
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        out.push_back(geometric ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    out.back() = hi;
    return out;
}

inline std::string num(double v) { return fmt::format("{:.17g}", v); }

} // namespace detail

inline ManifoldSpec make_manifold(const std::string &name, int l) {
    if (l <= 0) throw UsageError("--l must be a positive integer");
    if (name == "nl") return LatticeSpec::standard_rect(l);
    if (name == "nprime") return LatticeSpec::scaled_square(l);
    if (name == "gamma-pi") return BieberbachSpec::gamma_pi(l);
    if (name == "gamma-pi2") return BieberbachSpec::gamma_pi_half(l);
    throw UsageError("unknown manifold '" + name + "' (expected nl, nprime, gamma-pi or gamma-pi2)");
}

inline void check_format(const RunConfig &cfg) {
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
}

inline std::string cmd_spectrum(const RunConfig &cfg) {
    check_format(cfg);
    const ManifoldSpec spec = make_manifold(cfg.manifold, cfg.l);
    if (!(cfg.tmax > 0.0)) throw UsageError("--tmax must be positive");
    auto lines = enumerate_spectrum(spec, cfg.alpha, cfg.tmax);
    if (!cfg.include_zero) {
        std::erase_if(lines, [](const SpectralLine &line) { return line.value == 0.0; });
    }
    if (cfg.format == "csv") {
        std::string out = "value,multiplicity,kind,n,lambda,mu,nu\n";
        for (const auto &line : lines) {
            if (const auto *osc = std::get_if<OscillatorOrigin>(&line.origin)) {
                out += fmt::format("{},{},oscillator,{},{},,\n", detail::num(line.value), line.multiplicity, osc->n,
                                   osc->lambda);
            } else {
                const auto &pt = std::get<TorusOrigin>(line.origin).points.front();
                out += fmt::format("{},{},torus,,,{},{}\n", detail::num(line.value), line.multiplicity,
                                   detail::num(pt.mu), detail::num(pt.nu));
            }
        }
        return out;
    }
    Json doc;
    doc["manifold"] = manifold_name(spec);
    doc["alpha"] = cfg.alpha;
    doc["tmax"] = cfg.tmax;
    Json arr = Json::array();
    for (const auto &line : lines) {
        Json origin;
        if (const auto *osc = std::get_if<OscillatorOrigin>(&line.origin)) {
            origin["kind"] = "oscillator";
            origin["n"] = osc->n;
            origin["lambda"] = osc->lambda;
        } else {
            const auto &pts = std::get<TorusOrigin>(line.origin).points;
            origin["kind"] = "torus";
            origin["mu"] = pts.front().mu;
            origin["nu"] = pts.front().nu;
            Json all = Json::array();
            for (const auto &pt : pts) all.push_back({pt.mu, pt.nu});
            origin["points"] = std::move(all);
        }
        arr.push_back({{"value", line.value},
                       {"multiplicity", line.multiplicity},
                       {"heuristic", line.heuristic},
                       {"origin", std::move(origin)}});
    }
    doc["lines"] = std::move(arr);
    return doc.dump(2) + "\n";
}

inline std::string cmd_eigenfunction(const RunConfig &cfg) {
    check_format(cfg);
    const ManifoldSpec spec = make_manifold(cfg.manifold, cfg.l);
    const auto *lattice = std::get_if<LatticeSpec>(&spec);
    if (lattice == nullptr) throw UsageError("eigenfunction grids are available for nl and nprime");
    const int n = detail::parse_int(cfg.n);
    const int lambda = detail::parse_int(cfg.lambda);
    if (n == 0) throw UsageError("--n must be nonzero");
    if (lambda < 0 || lambda > kMaxHermiteOrder) throw UsageError("--lambda must lie in [0, 200]");
    if (cfg.a < 0 || cfg.a >= std::abs(n)) throw UsageError("--a must lie in [0, |n|)");
    if (cfg.b < 0 || cfg.b >= lattice->wb_period()) {
        throw UsageError(fmt::format("--b must lie in [0, {})", lattice->wb_period()));
    }
    if (!(cfg.wb_tol > 0.0)) throw UsageError("--tol must be positive");
    const WBIndex idx(n, cfg.a, cfg.b, lattice->wb_period());
    const auto ps = detail::parse_grid(cfg.p_grid, false);
    const auto qs = detail::parse_grid(cfg.q_grid, false);
    const auto ss = detail::parse_grid(cfg.s_grid, false);
    const double eigenvalue = oscillator_eigenvalue(n, lambda, cfg.alpha);

    struct Sample {
        PolarizedPoint pt;
        std::complex<double> value;
    };
    std::vector<PolarizedPoint> pts;
    for (double p : ps) {
        for (double q : qs) {
            for (double s : ss) pts.push_back({p, q, s});
        }
    }
    const auto samples = parallel_map<Sample>(pts.size(), [&](std::size_t i) {
        return Sample{pts[i], wb_eigenfunction(idx, lambda, *lattice, pts[i], cfg.wb_tol)};
    });

    if (cfg.format == "csv") {
        std::string out = fmt::format("# manifold={} n={} a={} b={} lambda={} alpha={}\n", manifold_name(spec), n,
                                      cfg.a, cfg.b, lambda, detail::num(cfg.alpha));
        out += fmt::format("# eigenvalue={}\n", detail::num(eigenvalue));
        out += "p,q,s,re,im\n";
        for (const auto &smp : samples) {
            out += fmt::format("{},{},{},{},{}\n", detail::num(smp.pt.p), detail::num(smp.pt.q), detail::num(smp.pt.s),
                               detail::num(smp.value.real()), detail::num(smp.value.imag()));
        }
        return out;
    }
    Json doc;
    doc["manifold"] = manifold_name(spec);
    doc["index"] = {{"n", n}, {"a", cfg.a}, {"b", cfg.b}, {"lambda", lambda}};
    doc["alpha"] = cfg.alpha;
    doc["eigenvalue"] = eigenvalue;
    Json arr = Json::array();
    for (const auto &smp : samples) {
        arr.push_back({{"p", smp.pt.p}, {"q", smp.pt.q}, {"s", smp.pt.s}, {"re", smp.value.real()},
                       {"im", smp.value.imag()}});
    }
    doc["samples"] = std::move(arr);
    return doc.dump(2) + "\n";
}

struct DimsRow {
    int n = 1;
    int lambda = 0;
    int closed = 0;
    int oracle = 0;
    int character = 0;
    bool agree = false;
};

inline DimsRow dims_row(const BieberbachSpec &spec, int n, int lambda, double nullity_tol) {
    DimsRow row{n, lambda, 0, 0, 0, false};
    const auto table = character_table(n, lambda, spec.l);
    std::complex<double> from_characters;
    if (spec.kind == BieberbachKind::GammaPi) {
        row.closed = dim_phi_invariant(n, lambda, spec.l);
        row.oracle = fixed_subspace_dim(phi_pullback_matrix(n, lambda, spec.l), nullity_tol);
        from_characters = 0.5 * (table.values[0] + table.values[2]);
    } else {
        row.closed = dim_psi_invariant(n, lambda, spec.l);
        row.oracle = fixed_subspace_dim(psi_pullback_matrix(n, lambda, spec.l), nullity_tol);
        from_characters = table.fixed_dimension();
    }
    row.character = static_cast<int>(std::lround(from_characters.real()));
    const bool integral = std::abs(from_characters - static_cast<double>(row.character)) < 1e-9;
    row.agree = integral && row.closed == row.oracle && row.oracle == row.character;
    return row;
}

inline std::string cmd_dims(const RunConfig &cfg) {
    check_format(cfg);
    const ManifoldSpec spec = make_manifold(cfg.manifold, cfg.l);
    const auto *bieberbach = std::get_if<BieberbachSpec>(&spec);
    if (bieberbach == nullptr) throw UsageError("dims requires --manifold gamma-pi or gamma-pi2");
    const auto ns = detail::parse_int_range(cfg.n);
    const auto lambdas = detail::parse_int_range(cfg.lambda);
    for (int n : ns) {
        if (n == 0) throw UsageError("n = 0 is not allowed: the dimension formulas need n != 0");
    }
    for (int lambda : lambdas) {
        if (lambda < 0) throw UsageError("lambda must be nonnegative");
    }
    if (!(cfg.nullity_tol > 0.0)) throw UsageError("--nullity-tol must be positive");
    std::vector<std::pair<int, int>> cells;
    for (int n : ns) {
        for (int lambda : lambdas) cells.emplace_back(n, lambda);
    }
    const auto rows = parallel_map<DimsRow>(cells.size(), [&](std::size_t i) {
        return dims_row(*bieberbach, cells[i].first, cells[i].second, cfg.nullity_tol);
    });
    if (cfg.format == "csv") {
        std::string out = "n,lambda,closed,oracle,character,agree\n";
        for (const auto &r : rows) {
            out += fmt::format("{},{},{},{},{},{}\n", r.n, r.lambda, r.closed, r.oracle, r.character,
                               r.agree ? "true" : "false");
        }
        return out;
    }
    Json doc;
    doc["manifold"] = manifold_name(spec);
    doc["l"] = cfg.l;
    Json arr = Json::array();
    for (const auto &r : rows) {
        arr.push_back({{"n", r.n},
                       {"lambda", r.lambda},
                       {"closed", r.closed},
                       {"oracle", r.oracle},
                       {"character", r.character},
                       {"agree", r.agree}});
    }
    doc["rows"] = std::move(arr);
    return doc.dump(2) + "\n";
}

inline std::string cmd_weyl(const RunConfig &cfg) {
    check_format(cfg);
    if (!(cfg.alpha >= -1.0 && cfg.alpha <= 1.0)) throw UsageError("--alpha must lie in [-1, 1] for weyl");
    const ManifoldSpec spec = make_manifold(cfg.manifold, cfg.l);
    const auto tgrid = cfg.tgrid.empty() ? default_tgrid() : detail::parse_grid(cfg.tgrid, true);
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        if (!(tgrid[i] > 0.0)) throw UsageError("tgrid values must be positive");
        if (i > 0 && tgrid[i] < tgrid[i - 1]) throw UsageError("tgrid must be increasing");
    }
    const WeylConstant constant = weyl_constant(cfg.alpha);
    const double vol = volume(spec);
    const double target = constant.value * vol;
    const CountingSeries series = counting_function(spec, cfg.alpha, tgrid);

    // Oscillator counts of the covering lattice, scaled by the index.
    std::vector<double> cover_gap(tgrid.size(), 0.0);
    if (const auto *b = std::get_if<BieberbachSpec>(&spec)) {
        const auto cover = counting_function(b->base, cfg.alpha, tgrid);
        for (std::size_t i = 0; i < tgrid.size(); ++i) {
            cover_gap[i] = std::fabs(static_cast<double>(series.samples[i].oscillator) -
                                     static_cast<double>(cover.samples[i].oscillator) / b->index);
        }
    }

    Json doc;
    doc["manifold"] = series.manifold;
    doc["alpha"] = cfg.alpha;
    doc["volume"] = vol;
    doc["constant"] = constant.value;
    doc["quadrature_error"] = constant.quadrature_error;
    doc["target"] = target;
    doc["torus_heuristic"] = series.torus_heuristic;
    std::string csv = "t,count,oscillator,torus,ratio,target,deviation,even,odd,parity_gap,cover_gap\n";
    Json arr = Json::array();
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        const auto &s = series.samples[i];
        const auto parity = parity_counts(s.t, cfg.alpha);
        const double ratio = static_cast<double>(s.count) / (s.t * s.t);
        const double deviation = std::fabs(ratio - target) / target;
        const long long gap = std::llabs(parity.even - parity.odd);
        arr.push_back({{"t", s.t},
                       {"count", s.count},
                       {"oscillator", s.oscillator},
                       {"torus", s.torus},
                       {"ratio", ratio},
                       {"deviation", deviation},
                       {"even", parity.even},
                       {"odd", parity.odd},
                       {"parity_gap", gap},
                       {"cover_gap", cover_gap[i]}});
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", detail::num(s.t), s.count, s.oscillator, s.torus,
                           detail::num(ratio), detail::num(target), detail::num(deviation), parity.even, parity.odd,
                           gap, detail::num(cover_gap[i]));
    }
    if (cfg.format == "csv") return csv;
    doc["samples"] = std::move(arr);
    return doc.dump(2) + "\n";
}

/// Runs the selected suites; the report goes to the returned text.
inline std::pair<bool, std::string> cmd_verify(const RunConfig &cfg) {
    VerifyOptions opt;
    opt.wb_tol = cfg.wb_tol;
    opt.nullity_tol = cfg.nullity_tol;
    opt.fd_step = cfg.fd_step;
    opt.pullback_perturbation = cfg.perturb_pullback;
    bool all_passed = true;
    bool matched = false;
    std::string report;
    for (const auto &entry : all_suites()) {
        if (cfg.suite != "all" && cfg.suite != entry.name) continue;
        matched = true;
        SuiteResult r;
        try {
            r = entry.run(opt);
        } catch (const std::exception &e) {
            r = {entry.name, false, std::string("exception: ") + e.what()};
        }
        all_passed = all_passed && r.passed;
        report += fmt::format("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    }
    if (!matched) throw UsageError("unknown suite '" + cfg.suite + "'");
    return {all_passed, report};
}

inline void emit(const std::string &text, const RunConfig &cfg, std::ostream &out) {
    if (cfg.out.empty() || cfg.out == "-") {
        out << text;
        out.flush();
        if (!out) throw IoError("failed to write output");
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + cfg.out + "'");
    file << text;
    file.close();
    if (!file) throw IoError("failed to write output file '" + cfg.out + "'");
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Spectra, eigenfunctions, invariant dimensions and Weyl asymptotics of the Folland-Stein "
                 "operator on Heisenberg nilmanifolds and their Bieberbach quotients"};
    app.name("heis_spectra");
    app.require_subcommand(1);

    const std::vector<std::string> manifolds{"nl", "nprime", "gamma-pi", "gamma-pi2"};
    auto add_manifold = [&](CLI::App *sub) {
        sub->add_option("--manifold", cfg.manifold, "nl | nprime | gamma-pi | gamma-pi2")
            ->check(CLI::IsMember(manifolds))
            ->capture_default_str();
        sub->add_option("--l", cfg.l, "lattice parameter l (positive integer)")->capture_default_str();
    };
    auto add_output = [&](CLI::App *sub, bool with_format) {
        if (with_format) {
            sub->add_option("--format", cfg.format, "json | csv")
                ->check(CLI::IsMember({"json", "csv"}))
                ->capture_default_str();
        }
        sub->add_option("--out", cfg.out, "output file (default: standard output)");
    };

    auto *spectrum = app.add_subcommand("spectrum", "eigenvalues up to tmax with multiplicities and origins");
    add_manifold(spectrum);
    spectrum->add_option("--alpha", cfg.alpha, "alpha")->capture_default_str();
    spectrum->add_option("--tmax", cfg.tmax, "largest eigenvalue to list")->required();
    spectrum->add_flag("--include-zero", cfg.include_zero, "also list zero eigenvalues (constants)");
    add_output(spectrum, true);

    auto *eigen = app.add_subcommand("eigenfunction", "grid samples of a Weil-Brezin eigenfunction (nl, nprime)");
    add_manifold(eigen);
    eigen->add_option("--n", cfg.n, "central frequency n != 0")->capture_default_str();
    eigen->add_option("--lambda", cfg.lambda, "Hermite order")->capture_default_str();
    eigen->add_option("--a", cfg.a, "index a in [0, |n|)")->capture_default_str();
    eigen->add_option("--b", cfg.b, "index b in [0, period)")->capture_default_str();
    eigen->add_option("--alpha", cfg.alpha, "alpha, for the eigenvalue header")->capture_default_str();
    eigen->add_option("--p", cfg.p_grid, "p values: x, x1,x2,... or min:max:count")->capture_default_str();
    eigen->add_option("--q", cfg.q_grid, "q values")->capture_default_str();
    eigen->add_option("--s", cfg.s_grid, "s values")->capture_default_str();
    eigen->add_option("--tol", cfg.wb_tol, "series truncation tolerance")->capture_default_str();
    add_output(eigen, true);

    auto *dims = app.add_subcommand("dims", "invariant-subspace dimensions: closed form, oracle, characters");
    add_manifold(dims);
    dims->add_option("--n", cfg.n, "n values: k, a:b or k1,k2,...")->capture_default_str();
    dims->add_option("--lambda", cfg.lambda, "lambda values")->capture_default_str();
    dims->add_option("--nullity-tol", cfg.nullity_tol, "singular-value threshold")->capture_default_str();
    add_output(dims, true);

    auto *weyl = app.add_subcommand("weyl", "counting function against the Weyl constant");
    add_manifold(weyl);
    weyl->add_option("--alpha", cfg.alpha, "alpha in [-1, 1]")->capture_default_str();
    weyl->add_option("--tgrid", cfg.tgrid, "t values: t1,t2,... or min:max:count (geometric); default pi/2:1000:20");
    add_output(weyl, true);

    auto *verify = app.add_subcommand("verify", "run the invariant suites");
    std::vector<std::string> suite_names{"all"};
    for (const auto &entry : all_suites()) suite_names.push_back(entry.name);
    verify->add_option("--suite", cfg.suite, "suite to run")->check(CLI::IsMember(suite_names))->capture_default_str();
    verify->add_option("--tol", cfg.wb_tol, "series truncation tolerance")->capture_default_str();
    verify->add_option("--nullity-tol", cfg.nullity_tol, "singular-value threshold")->capture_default_str();
    verify->add_option("--fd-step", cfg.fd_step, "finite-difference step")->capture_default_str();
    verify->add_option("--perturb-pullback", cfg.perturb_pullback)->group("");
    add_output(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        const CLI::App *chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        if (cfg.command == "verify") {
            const auto [passed, report] = cmd_verify(cfg);
            emit(report, cfg, out);
            return passed ? kExitOk : kExitVerifyFailed;
        }
        std::string text;
        if (cfg.command == "spectrum") text = cmd_spectrum(cfg);
        if (cfg.command == "eigenfunction") text = cmd_eigenfunction(cfg);
        if (cfg.command == "dims") text = cmd_dims(cfg);
        if (cfg.command == "weyl") text = cmd_weyl(cfg);
        emit(text, cfg, out);
        return kExitOk;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"heis_spectra"};
    for (const auto &a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace heis::cli
