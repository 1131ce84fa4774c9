// Command-line front end: parameter ingestion, analysis commands, sweeps and
// CSV/JSON/SVG emission.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "resonance/apps.hpp"
#include "resonance/bifurcation.hpp"
#include "resonance/dynamics.hpp"
#include "resonance/emmap.hpp"
#include "resonance/io.hpp"
#include "resonance/quadrature.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace resonance;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    int threads = 0;
};

int thread_count(const Options& opt) {
    if (const char* env = std::getenv("RESONANCE_ATLAS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    if (opt.threads > 0) return opt.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Ordered parallel map: results land in a pre-sized vector, writers stay
/// single-threaded afterwards.
template <class F>
void parallel_for(int n_threads, std::size_t n, F&& body) {
    if (n_threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

double opt_number(const json& j, const char* name, double fallback) {
    if (!j.contains(name)) return fallback;
    if (!j[name].is_number())
        throw Error(ErrorCode::InvalidParameter, std::string("field '") + name + "' must be numeric");
    return j[name].get<double>();
}

int opt_int(const json& j, const char* name, int fallback) {
    return static_cast<int>(opt_number(j, name, fallback));
}

void save_json(const json& j, const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
    f << j.dump(2) << '\n';
}

json threshold_json(const ThresholdSet& ts) {
    auto put = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return {{"e1U", put(ts.e1U)}, {"e2U", put(ts.e2U)}, {"e1L", put(ts.e1L)},
            {"e2L", put(ts.e2L)}, {"eGB", put(ts.eGB)}, {"hGB", put(ts.hGB)}};
}

// ---------------------------------------------------------------------------
// commands

int cmd_thresholds(const ParamsInput& params, const Options& opt) {
    const ThresholdSet ts = thresholds(params.rp);
    json out{{"case", to_string(classify_case(params.rp))},
             {"thresholds", threshold_json(ts)}};
    if (params.a1_defaulted) out["warnings"] = json::array({"A1 missing, defaulted to 0"});
    save_json(out, fs::path(opt.out_dir) / "thresholds.json");
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_sequence(const json& cfg, const ParamsInput& params, const Options& opt) {
    const double e_max = opt_number(cfg, "e_max", 1.0);
    const auto events = sequence(params.rp, e_max);
    CsvWriter csv({"e", "kind", "family"});
    for (const auto& ev : events)
        csv.row({format_double(ev.e), to_string(ev.kind), to_string(ev.family)});
    csv.save((fs::path(opt.out_dir) / "sequence.csv").string());
    std::cout << csv.text();
    return 0;
}

int cmd_catastrophe(const json& cfg, const Options& opt) {
    const double c_min = opt_number(cfg, "coupling_min", -3.0);
    const double c_max = opt_number(cfg, "coupling_max", 3.0);
    const double a_min = opt_number(cfg, "asymmetry_min", -3.0);
    const double a_max = opt_number(cfg, "asymmetry_max", 3.0);
    const int n = opt_int(cfg, "n", 300);
    if (n < 2) throw Error(ErrorCode::InvalidParameter, "need n >= 2");

    std::vector<RegionReport> grid(static_cast<std::size_t>(n) * n);
    parallel_for(thread_count(opt), grid.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / n, j = static_cast<int>(idx) % n;
        const double c = c_min + (c_max - c_min) * i / (n - 1);
        const double a = a_min + (a_max - a_min) * j / (n - 1);
        grid[idx] = region_classify(c, a);
    });

    CsvWriter csv({"coupling", "asymmetry", "n_families", "n_stable", "structurally_stable"});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double c = c_min + (c_max - c_min) * i / (n - 1);
            const double a = a_min + (a_max - a_min) * j / (n - 1);
            const RegionReport& r = grid[static_cast<std::size_t>(i) * n + j];
            csv.row({format_double(c), format_double(a), std::to_string(r.n_families),
                     std::to_string(r.n_stable), r.structurally_stable ? "1" : "0"});
        }
    csv.save((fs::path(opt.out_dir) / "catastrophe.csv").string());

    if (opt.format == "svg") {
        SvgScene svg(c_min, c_max, a_min, a_max);
        for (int line = 0; line < 4; ++line) {
            std::vector<std::pair<double, double>> pts;
            for (int i = 0; i <= 200; ++i) {
                const double c = c_min + (c_max - c_min) * i / 200.0;
                const double a = line == 0 ? c - 1 : line == 1 ? 1 - c : line == 2 ? -1 - c : 1 + c;
                if (a >= a_min && a <= a_max) pts.emplace_back(c, a);
            }
            svg.polyline(pts, "line");
        }
        svg.axis_labels("C/A", "Z_V/E");
        svg.save((fs::path(opt.out_dir) / "catastrophe.svg").string());
    }
    return 0;
}

int cmd_emmap(const json& cfg, const ParamsInput& params, const Options& opt) {
    const double e_max = opt_number(cfg, "e_max", 0.06);
    const int n = opt_int(cfg, "n", 200);
    const int n_slices = opt_int(cfg, "slices", 32);

    const auto brs = branches(params.rp, e_max, n);
    CsvWriter bcsv({"kind", "E", "h", "stable"});
    for (const auto& br : brs)
        for (const auto& [E, h] : br.samples) {
            bool stable = false;
            for (const auto& [lo, hi] : br.stable_ranges)
                if (E >= lo && E <= hi) stable = true;
            bcsv.row({to_string(br.kind), format_double(E), format_double(h),
                      stable ? "1" : "0"});
        }
    bcsv.save((fs::path(opt.out_dir) / "emmap_branches.csv").string());

    std::vector<Slice> slices(n_slices);
    parallel_for(thread_count(opt), slices.size(), [&](std::size_t i) {
        const double E = e_max * (i + 1.0) / n_slices;
        slices[i] = chambers(params.rp, E);
    });
    CsvWriter ccsv({"E", "h_lo", "h_hi", "family"});
    for (const auto& s : slices)
        for (const auto& ch : s.chambers)
            ccsv.row({format_double(s.E), format_double(ch.h_lo), format_double(ch.h_hi),
                      to_string(ch.family)});
    ccsv.save((fs::path(opt.out_dir) / "emmap_chambers.csv").string());

    if (opt.format == "svg") {
        double h_lo = 0, h_hi = 0;
        for (const auto& br : brs)
            for (const auto& [E, h] : br.samples) {
                h_lo = std::min(h_lo, h);
                h_hi = std::max(h_hi, h);
            }
        SvgScene svg(0, e_max, h_lo, h_hi);
        for (const auto& br : brs) {
            // split the samples into stable (solid) and unstable (dashed) runs
            std::vector<std::pair<double, double>> run;
            bool run_stable = true;
            auto flush = [&] {
                if (run.size() > 1) {
                    const bool envelope = br.kind == BranchKind::InclinedEnvelope ||
                                          br.kind == BranchKind::LoopEnvelope;
                    std::string cls = envelope
                                          ? (run_stable ? "envelope-stable" : "envelope-unstable")
                                          : (run_stable ? "stable" : "unstable");
                    svg.polyline(run, cls);
                }
                run.clear();
            };
            for (const auto& [E, h] : br.samples) {
                bool stable = false;
                for (const auto& [lo, hi] : br.stable_ranges)
                    if (E >= lo && E <= hi) stable = true;
                if (!run.empty() && stable != run_stable) flush();
                run_stable = stable;
                run.emplace_back(E, h);
            }
            flush();
        }
        svg.axis_labels("E", "h");
        svg.save((fs::path(opt.out_dir) / "emmap.svg").string());
    }
    return 0;
}

int cmd_poincare(const json& cfg, const ParamsInput& params, const Options& opt) {
    const double E = opt_number(cfg, "e", 0.035);
    const int n_seeds = opt_int(cfg, "seeds", 12);
    const int n_cross = opt_int(cfg, "crossings", 200);
    if (E <= 0) throw Error(ErrorCode::InvalidParameter, "need e > 0");

    // deterministic seeds along both section axes, placed on I0 = E
    std::vector<State4> seeds;
    const double r_max = std::sqrt(2.0 * E);
    for (int i = 0; i < n_seeds; ++i) {
        const double r = r_max * (i + 1.0) / (n_seeds + 1.0);
        State4 s;
        s.Q2 = 0;
        if (i % 2 == 0) {
            s.P1 = r;
            s.Q1 = 0;
        } else {
            s.Q1 = r;
            s.P1 = 0;
        }
        s.P2 = std::sqrt(2.0 * E - r * r);
        seeds.push_back(s);
    }

    std::vector<std::vector<SectionPoint>> all(seeds.size());
    parallel_for(thread_count(opt), seeds.size(), [&](std::size_t i) {
        all[i] = poincare(params.rp, E, {seeds[i]}, n_cross)[0];
    });

    CsvWriter csv({"seed_id", "crossing_index", "Q1", "P1", "t"});
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t k = 0; k < all[i].size(); ++k)
            csv.row({std::to_string(i), std::to_string(k), format_double(all[i][k].Q1),
                     format_double(all[i][k].P1), format_double(all[i][k].t)});
    csv.save((fs::path(opt.out_dir) / "poincare.csv").string());

    if (cfg.contains("trajectory_seed")) {
        const int id = opt_int(cfg, "trajectory_seed", 0);
        const double t_end = opt_number(cfg, "trajectory_time", 50.0);
        if (id < 0 || id >= static_cast<int>(seeds.size()))
            throw Error(ErrorCode::InvalidParameter, "trajectory_seed out of range");
        CsvWriter tcsv({"t", "P1", "P2", "Q1", "Q2"});
        integrate_observe(params.rp, seeds[id], t_end, [&](double t, const State4& s) {
            tcsv.row({format_double(t), format_double(s.P1), format_double(s.P2),
                      format_double(s.Q1), format_double(s.Q2)});
        });
        tcsv.save((fs::path(opt.out_dir) / "trajectory.csv").string());
    }

    if (opt.format == "svg") {
        SvgScene svg(-r_max, r_max, -r_max, r_max);
        for (const auto& pts : all)
            for (const auto& p : pts) svg.dot(p.Q1, p.P1, "point");
        svg.axis_labels("Q1", "P1");
        svg.save((fs::path(opt.out_dir) / "poincare.svg").string());
    }
    return 0;
}

int cmd_freq(const json& cfg, const ParamsInput& params, const Options& opt) {
    const double e_min = opt_number(cfg, "e_min", 0.01);
    const double e_max = opt_number(cfg, "e_max", 0.05);
    const int n_e = opt_int(cfg, "n_e", 8);
    const int n_h = opt_int(cfg, "n_h", 8);

    struct Row {
        double E, h;
        std::string status;
        FrequencyReport fr{};
    };
    std::vector<std::vector<Row>> rows(n_e);
    parallel_for(thread_count(opt), static_cast<std::size_t>(n_e), [&](std::size_t i) {
        const double E = e_min + (e_max - e_min) * (n_e == 1 ? 0.0 : double(i) / (n_e - 1));
        Slice s;
        try {
            s = chambers(params.rp, E);
        } catch (const Error& err) {
            rows[i].push_back({E, 0.0, to_string(err.code()), {}});
            return;
        }
        for (const auto& ch : s.chambers)
            for (int k = 0; k < n_h; ++k) {
                const double h = ch.h_lo + (ch.h_hi - ch.h_lo) * (k + 0.5) / n_h;
                Row row{E, h, "ok", {}};
                try {
                    row.fr = frequencies({params.rp, E, h});
                } catch (const Error& err) {
                    row.status = to_string(err.code());
                }
                rows[i].push_back(row);
            }
    });

    CsvWriter csv({"E", "h", "status", "J2", "T2", "W", "omega1", "omega2"});
    for (const auto& per_e : rows)
        for (const auto& r : per_e) {
            if (r.status == "ok")
                csv.row({format_double(r.E), format_double(r.h), r.status,
                         format_double(r.fr.J2), format_double(r.fr.T2), format_double(r.fr.W),
                         format_double(r.fr.omega1), format_double(r.fr.omega2)});
            else
                csv.row({format_double(r.E), format_double(r.h), r.status, "", "", "", "", ""});
        }
    csv.save((fs::path(opt.out_dir) / "freq.csv").string());
    return 0;
}

int cmd_torus(const json& cfg, const ParamsInput& params, const Options& opt) {
    if (!cfg.contains("e") || !cfg.contains("h"))
        throw Error(ErrorCode::InvalidParameter, "torus needs 'e' and 'h'");
    const double E = cfg["e"].get<double>();
    const double h = cfg["h"].get<double>();
    const FrequencyReport fr = frequencies({params.rp, E, h});
    json out{{"E", E}, {"h", h},           {"J2", fr.J2},
             {"T2", fr.T2}, {"W", fr.W},   {"omega1", fr.omega1},
             {"omega2", fr.omega2}};
    save_json(out, fs::path(opt.out_dir) / "torus.json");
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_app(const json& cfg, const Options& opt) {
    if (!cfg.contains("app") || !cfg["app"].contains("preset"))
        throw Error(ErrorCode::InvalidParameter, "app command needs app.preset");
    const json& app = cfg["app"];
    const std::string preset = app["preset"].get<std::string>();

    if (preset == "galactic") {
        const GalacticModel m{opt_number(app, "alpha", 0.0), opt_number(app, "b", 0.9)};
        const GalacticResult r = galactic_alphas(m);
        const GalacticThresholds t1 = galactic_thresholds(m, 1);
        const GalacticThresholds t2 = galactic_thresholds(m, 2);
        CsvWriter csv({"alpha", "b", "A", "B", "C", "Delta", "A1", "case",
                       "e1L_o1", "e2L_o1", "e1U_o1", "e1L_o2", "e2L_o2"});
        csv.row({format_double(m.alpha), format_double(m.b), format_double(r.reduced.A),
                 format_double(r.reduced.B), format_double(r.reduced.C),
                 format_double(r.reduced.Delta), format_double(r.reduced.A1),
                 to_string(classify_case(r.reduced)), format_double(t1.e1L),
                 format_double(t1.e2L), format_double(t1.e1U), format_double(t2.e1L),
                 format_double(t2.e2L)});
        csv.save((fs::path(opt.out_dir) / "galactic.csv").string());
        std::cout << csv.text();
        return 0;
    }
    if (preset == "levitation") {
        const double alpha = opt_number(app, "alpha", 0.0);
        const double b = opt_number(app, "b", 1.0);
        const double L = opt_number(app, "L", 0.3);
        const LevitationReport r = levitation_model(alpha, b, L);
        const LevitationCritical c = levitation_critical_l(alpha, b);
        CsvWriter csv({"alpha", "b", "L", "R_c", "beta", "kappa", "nu", "delta", "E_tilde",
                       "L_crit", "branch"});
        csv.row({format_double(alpha), format_double(b), format_double(L), format_double(r.R_c),
                 format_double(r.beta), format_double(r.kappa), format_double(r.nu),
                 format_double(r.delta), format_double(r.E_tilde), format_double(c.L_crit),
                 c.branch == LevitationBranch::BelowResonance ? "below" : "above"});
        csv.save((fs::path(opt.out_dir) / "levitation.csv").string());
        std::cout << csv.text();
        return 0;
    }
    if (preset == "lagrange") {
        CsvWriter csv({"c2", "lambda", "omega1", "omega2", "detuning"});
        std::vector<double> c2s;
        if (app.contains("c2") && app["c2"].is_array())
            for (const auto& v : app["c2"]) c2s.push_back(v.get<double>());
        else
            c2s.push_back(opt_number(app, "c2", 4.0));
        for (double c2 : c2s) {
            const LagrangeLinear r = lagrange_linear(c2);
            csv.row({format_double(r.c2), format_double(r.lambda), format_double(r.omega1),
                     format_double(r.omega2), format_double(r.detuning)});
        }
        csv.save((fs::path(opt.out_dir) / "lagrange.csv").string());
        std::cout << csv.text();
        return 0;
    }
    if (preset == "henon-heiles") {
        const Alphas a = alphas_from_natural({-1.0 / 3.0, 1.0, 0, 0, 0}, 0.0);
        const ReducedParams rp = reduced_from_alphas(a);
        const double lambda = opt_number(app, "lambda", 0.4);
        const double E = opt_number(app, "e", 0.1);
        const auto rep = hh_distorted_contacts(rp.C, lambda, E);

        json out{{"coupling", rp.C / rp.A},
                 {"B", rp.B},
                 {"C", rp.C},
                 {"case", to_string(classify_case(rp))}};
        save_json(out, fs::path(opt.out_dir) / "henon_heiles.json");
        std::cout << out.dump(2) << '\n';

        CsvWriter csv({"arc", "Z", "h", "elliptic"});
        if (rep.degenerate_upper_arc)
            csv.row({"upper_degenerate", "", format_double(rep.degenerate_h), ""});
        for (const auto& c : rep.upper)
            csv.row({"upper", format_double(c.Z), format_double(c.h), c.elliptic ? "1" : "0"});
        for (const auto& c : rep.lower)
            csv.row({"lower", format_double(c.Z), format_double(c.h), c.elliptic ? "1" : "0"});
        csv.save((fs::path(opt.out_dir) / "henon_heiles_contacts.csv").string());
        return 0;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown preset '" + preset + "'");
}

int run(const Options& opt) {
    std::ifstream f(opt.config_path);
    if (!f) {
        std::cerr << "cannot open config " << opt.config_path << '\n';
        return 2;
    }
    std::stringstream ss;
    ss << f.rdbuf();

    json cfg;
    try {
        cfg = json::parse(ss.str());
    } catch (const json::exception& e) {
        std::cerr << "invalid config JSON: " << e.what() << '\n';
        return 2;
    }
    if (!cfg.contains("command") || !cfg["command"].is_string()) {
        std::cerr << "config needs a 'command' string\n";
        return 2;
    }
    const std::string command = cfg["command"].get<std::string>();

    fs::create_directories(opt.out_dir);

    try {
        ParamsInput params;
        if (cfg.contains("params"))
            params = params_from_json(cfg["params"].dump());
        else if (command != "app" && command != "catastrophe")
            throw Error(ErrorCode::InvalidParameter, "config needs a 'params' object");

        if (command == "thresholds") return cmd_thresholds(params, opt);
        if (command == "sequence") return cmd_sequence(cfg, params, opt);
        if (command == "catastrophe") return cmd_catastrophe(cfg, opt);
        if (command == "emmap") return cmd_emmap(cfg, params, opt);
        if (command == "poincare") return cmd_poincare(cfg, params, opt);
        if (command == "freq") return cmd_freq(cfg, params, opt);
        if (command == "torus") return cmd_torus(cfg, params, opt);
        if (command == "app") return cmd_app(cfg, opt);
        std::cerr << "unknown command '" << command << "'\n";
        return 2;
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::InvalidParameter: {
                std::cerr << "invalid input: " << e.what() << '\n';
                return 2;
            }
            case ErrorCode::NotApplicable:
            case ErrorCode::DegenerateGerm:
            case ErrorCode::DegenerateContact:
            case ErrorCode::UseDegenerateBranch: {
                json err{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
                std::cout << err.dump(2) << '\n';
                return 3;
            }
            default: {
                std::cerr << "numerical failure (" << to_string(e.code()) << "): " << e.what()
                          << '\n';
                return 4;
            }
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Bifurcation atlas of the detuned symmetric 1:1 resonant normal form"};
    Options opt;
    cli.add_option("--config", opt.config_path, "JSON run configuration")->required();
    cli.add_option("--out", opt.out_dir, "output directory");
    cli.add_option("--format", opt.format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cli.add_option("--threads", opt.threads, "worker threads (env RESONANCE_ATLAS_THREADS wins)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return 2;
    }
    return run(opt);
}
