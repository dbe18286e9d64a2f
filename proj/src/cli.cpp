#include "escdim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "escdim/errors.hpp"
#include "escdim/estimate.hpp"
#include "escdim/grid.hpp"
#include "escdim/io_util.hpp"
#include "escdim/model_json.hpp"
#include "escdim/rigidity.hpp"

namespace escdim {

using nlohmann::json;

namespace {

// ---- small parsers ---------------------------------------------------------

std::vector<double> parse_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": bad number \"" + tok + "\"");
        }
    }
    if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
    return out;
}

cplx parse_point(const std::string& text, const char* what) {
    const auto v = parse_doubles(text, what);
    if (v.size() != 2) throw ConfigError(std::string(what) + ": expected re,im");
    return {v[0], v[1]};
}

Window parse_window(const std::string& text) {
    const auto v = parse_doubles(text, "--window");
    if (v.size() != 4) throw ConfigError("--window: expected cx,cy,hx,hy");
    return {v[0], v[1], v[2], v[3]};
}

std::pair<int, int> parse_res(const std::string& text) {
    const auto v = parse_doubles(text, "--res");
    if (v.size() == 1) return {int(v[0]), int(v[0])};
    if (v.size() == 2) return {int(v[0]), int(v[1])};
    throw ConfigError("--res: expected N or NX,NY");
}

AffineMap parse_affine(const std::string& text, const char* what) {
    if (text.empty()) return AffineMap();
    const auto v = parse_doubles(text, what);
    if (v.size() != 4)
        throw ConfigError(std::string(what) + ": expected a_re,a_im,b_re,b_im");
    return AffineMap({v[0], v[1]}, {v[2], v[3]});
}

// "exp" / "F0" / inline JSON / path to a JSON file.
FunctionModel resolve_model(const std::string& text) {
    if (text == "exp" || text == "F0" || (!text.empty() && text[0] == '{'))
        return model_from_string(text);
    json j;
    try {
        j = json::parse(read_text(text));
    } catch (const json::exception& e) {
        throw ConfigError("model file " + text + ": " + e.what());
    }
    return model_from_json(j);
}

json window_to_json(const Window& w) { return json::array({w.cx, w.cy, w.hx, w.hy}); }

void write_config(const std::string& out, const json& cfg) {
    write_text_atomic(out + ".config.json", cfg.dump(2) + "\n");
}

void emit(const std::string& text, const std::string& out) {
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) write_text_atomic(out, text);
}

const char* status_label(CellStatus s) {
    switch (s) {
        case CellStatus::Bounded: return "bounded";
        case CellStatus::Escaped: return "escaped";
        case CellStatus::Overflow: return "overflow";
        case CellStatus::Undetermined: return "undetermined";
    }
    return "?";
}

const char* orbit_label(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Escaped: return "escaped";
        case OrbitStatus::OverflowEscaped: return "overflow";
        case OrbitStatus::BoundedHorizon: return "bounded";
        case OrbitStatus::Undetermined: return "undetermined";
    }
    return "?";
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
    std::string model;
    std::string point;
    double tol = 0.0;
    std::string out;
};

int cmd_eval(const EvalArgs& a) {
    const FunctionModel m = resolve_model(a.model);
    const cplx z = parse_point(a.point, "--point");
    const EvalResult r = m.eval_full(z, a.tol);
    std::string line = fmt17(r.value.real()) + " " + fmt17(r.value.imag()) + " " +
                       fmt17(r.err);
    if (r.reduced_accuracy) line += " reduced";
    line += "\n";
    emit(line, a.out);
    if (!a.out.empty()) {
        json cfg{{"command", "eval"},
                 {"model", model_to_json(m)},
                 {"point", json::array({z.real(), z.imag()})},
                 {"tol", a.tol},
                 {"out", a.out}};
        write_config(a.out, cfg);
    }
    return 0;
}

// ---- orbit -----------------------------------------------------------------

struct OrbitArgs {
    std::string model;
    std::string point;
    int max_iter = 100;
    double escape_radius = 100.0;
    double R = 50.0;
    std::string out;
};

int cmd_orbit(const OrbitArgs& a) {
    const FunctionModel m = resolve_model(a.model);
    const cplx z0 = parse_point(a.point, "--point");
    const OrbitRecord rec = iterate_orbit(m, z0, a.max_iter, a.escape_radius, a.R);
    std::ostringstream out;
    out << "n,re,im,modulus\n";
    for (size_t k = 0; k < rec.points.size(); ++k)
        out << (k + 1) << ',' << fmt17(rec.points[k].real()) << ','
            << fmt17(rec.points[k].imag()) << ',' << fmt17(rec.moduli[k]) << '\n';
    out << "status=" << orbit_label(rec.status) << " at_step=" << rec.at_step
        << " stayed_above_R=" << (rec.stayed_above_R ? 1 : 0)
        << " min_modulus=" << fmt17(rec.min_modulus)
        << " eval_failure=" << (rec.eval_failure ? 1 : 0) << '\n';
    emit(out.str(), a.out);
    if (!a.out.empty()) {
        json cfg{{"command", "orbit"},
                 {"model", model_to_json(m)},
                 {"point", json::array({z0.real(), z0.imag()})},
                 {"max_iter", a.max_iter},
                 {"escape_radius", a.escape_radius},
                 {"R", a.R},
                 {"out", a.out}};
        write_config(a.out, cfg);
    }
    return 0;
}

// ---- escape-map ------------------------------------------------------------

struct MapArgs {
    std::string model;
    std::string window;
    std::string res;
    int max_iter = 100;
    double escape_radius = 100.0;
    double R = 50.0;
    int supersample = 1;
    bool serial = false;
    std::string out;
};

// Outer-approximation reduction of a supersampled grid: a parent cell escapes
// if any subcell does, is bounded only if all are, and keeps the most
// conservative modulus history.
GridClassification reduce_grid(const GridClassification& fine, int nx, int ny, int ss) {
    GridClassification g;
    g.window = fine.window;
    g.nx = nx;
    g.ny = ny;
    g.max_iter = fine.max_iter;
    g.escape_radius = fine.escape_radius;
    g.R = fine.R;
    g.cells.resize(size_t(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            GridCell c;
            int n_escape = 0, n_overflow = 0, n_undet = 0;
            c.at_step = -1;
            for (int sj = 0; sj < ss; ++sj)
                for (int si = 0; si < ss; ++si) {
                    const GridCell& f = fine.at(i * ss + si, j * ss + sj);
                    if (f.status == CellStatus::Escaped) ++n_escape;
                    if (f.status == CellStatus::Overflow) ++n_overflow;
                    if (f.status == CellStatus::Undetermined) ++n_undet;
                    if (f.min_modulus < c.min_modulus) c.min_modulus = f.min_modulus;
                    if (!f.stayed_above_R) c.stayed_above_R = false;
                    if (f.eval_failure) c.eval_failure = true;
                    if (f.at_step > 0 && (c.at_step < 0 || f.at_step < c.at_step))
                        c.at_step = f.at_step;
                }
            if (n_escape + n_overflow > 0)
                c.status = n_escape > 0 ? CellStatus::Escaped : CellStatus::Overflow;
            else if (n_undet > 0)
                c.status = CellStatus::Undetermined;
            else
                c.status = CellStatus::Bounded;
            if (c.status == CellStatus::Bounded || c.status == CellStatus::Undetermined)
                c.at_step = -1;
            g.cells[size_t(j) * nx + i] = c;
        }
    return g;
}

int cmd_map(const MapArgs& a) {
    const FunctionModel m = resolve_model(a.model);
    const Window win = parse_window(a.window);
    const auto [nx, ny] = parse_res(a.res);
    if (a.supersample != 1 && a.supersample != 2 && a.supersample != 4)
        throw ConfigError("--supersample must be 1, 2 or 4");
    if (a.out.empty()) throw ConfigError("escape-map: --out is required");

    GridClassification g = classify_grid(m, win, nx * a.supersample, ny * a.supersample,
                                         a.max_iter, a.escape_radius, a.R, !a.serial);
    if (a.supersample > 1) g = reduce_grid(g, nx, ny, a.supersample);

    write_pgm(g, a.out + ".pgm");
    write_csv(g, a.out + ".csv");

    long long tally[4] = {0, 0, 0, 0};
    for (const GridCell& c : g.cells) ++tally[int(c.status)];
    std::ostringstream line;
    for (int s = 0; s < 4; ++s)
        line << status_label(CellStatus(s)) << '=' << tally[s] << (s < 3 ? " " : "\n");
    std::fputs(line.str().c_str(), stdout);

    json cfg{{"command", "escape-map"},
             {"model", model_to_json(m)},
             {"window", window_to_json(win)},
             {"res", json::array({nx, ny})},
             {"max_iter", a.max_iter},
             {"escape_radius", a.escape_radius},
             {"R", a.R},
             {"supersample", a.supersample},
             {"serial", a.serial},
             {"out", a.out}};
    write_config(a.out, cfg);
    return 0;
}

// ---- dim -------------------------------------------------------------------

struct DimArgs {
    std::string model;
    std::string window;
    std::string res;
    int max_iter = 100;
    double escape_radius = 100.0;
    double R = 50.0;
    std::string R_list;
    std::string kappa_list;
    std::vector<std::string> pair;
    std::string scales; // integer cell multiples, coarse to fine
    std::string target = "ir";
    std::string out;
};

Target parse_target(const std::string& t) {
    if (t == "ir") return Target::IR;
    if (t == "jr") return Target::JR;
    throw ConfigError("--target must be ir or jr");
}

void write_estimate(const std::string& base, const EstimateResult& r) {
    std::ostringstream csv;
    csv << "scale,count\n";
    for (size_t k = 0; k < r.est.scales.size(); ++k)
        csv << fmt17(r.est.scales[k]) << ',' << r.est.counts[k] << '\n';
    write_text_atomic(base + ".csv", csv.str());

    json meta{{"slope", r.est.slope},
              {"r2", r.est.r2},
              {"ci95", r.est.ci95},
              {"selected_cells", r.selected_cells},
              {"proxy", "upper-box-count"},
              {"params",
               {{"window", window_to_json(r.params.window)},
                {"res", json::array({r.params.nx, r.params.ny})},
                {"max_iter", r.params.max_iter},
                {"escape_radius", r.params.escape_radius},
                {"R", r.params.R},
                {"target", r.params.target == Target::IR ? "ir" : "jr"}}}};
    write_text_atomic(base + ".json", meta.dump(2) + "\n");
}

// Explicit-ladder variant used when --scales is given.
EstimateResult estimate_with_scales(const GridClassification& g, double R,
                                    Target target, const std::vector<double>& mults) {
    std::vector<std::pair<int, int>> cells =
        target == Target::JR ? jr_at(g, R) : std::vector<std::pair<int, int>>{};
    if (target == Target::IR) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const CellStatus s = g.at(i, j).status;
                if (s == CellStatus::Escaped || s == CellStatus::Overflow)
                    cells.emplace_back(i, j);
            }
    }
    if (cells.empty()) throw EmptySetError("dim: no cells selected");
    const double cell = g.cell_dx();
    std::vector<double> scales;
    scales.reserve(mults.size());
    for (double m : mults) scales.push_back(m * cell);
    const auto counts = box_count(cells, g, scales);
    const double exclude = scales.back() <= cell * (1.0 + 1e-9) ? cell : 0.0;
    EstimateResult res;
    res.est = fit_dimension(scales, counts, exclude);
    res.params = {g.window, g.nx, g.ny, g.max_iter, g.escape_radius, R, target};
    res.selected_cells = static_cast<long long>(cells.size());
    return res;
}

int cmd_dim(const DimArgs& a) {
    if (a.out.empty()) throw ConfigError("dim: --out is required");
    const Window win = parse_window(a.window);
    const auto [nx, ny] = parse_res(a.res);
    const Target target = parse_target(a.target);
    std::optional<std::vector<double>> mults;
    if (!a.scales.empty()) mults = parse_doubles(a.scales, "--scales");

    const int modes = int(!a.R_list.empty()) + int(!a.kappa_list.empty()) +
                      int(!a.pair.empty());
    if (modes > 1)
        throw ConfigError("dim: --R-list, --kappa-list and --pair are exclusive");

    json cfg{{"command", "dim"},
             {"window", window_to_json(win)},
             {"res", json::array({nx, ny})},
             {"max_iter", a.max_iter},
             {"escape_radius", a.escape_radius},
             {"target", a.target},
             {"out", a.out}};
    if (!a.scales.empty()) cfg["scales"] = *mults;
    std::ostringstream report;

    auto run_single = [&](const FunctionModel& m, double R) {
        const GridClassification g =
            classify_grid(m, win, nx, ny, a.max_iter, a.escape_radius, R);
        return mults ? estimate_with_scales(g, R, target, *mults)
                     : estimate_from_grid(g, R, target);
    };

    if (!a.pair.empty()) {
        if (a.pair.size() != 2) throw ConfigError("dim: --pair needs two models");
        const FunctionModel f = resolve_model(a.pair[0]);
        const FunctionModel gmod = resolve_model(a.pair[1]);
        const EstimateResult ra = run_single(f, a.R);
        const EstimateResult rb = run_single(gmod, a.R);
        write_estimate(a.out + "_a", ra);
        write_estimate(a.out + "_b", rb);
        json summary{{"slope_a", ra.est.slope},
                     {"slope_b", rb.est.slope},
                     {"diff", std::abs(ra.est.slope - rb.est.slope)}};
        write_text_atomic(a.out + ".json", summary.dump(2) + "\n");
        report << "slope_a " << fmt17(ra.est.slope) << "\nslope_b "
               << fmt17(rb.est.slope) << "\ndiff "
               << fmt17(std::abs(ra.est.slope - rb.est.slope)) << "\n";
        cfg["pair"] = json::array({model_to_json(f), model_to_json(gmod)});
        cfg["R"] = a.R;
    } else if (!a.R_list.empty()) {
        const FunctionModel m = resolve_model(a.model);
        const auto R_list = parse_doubles(a.R_list, "--R-list");
        if (mults) throw ConfigError("dim: --scales not supported with --R-list");
        const EdimResult ed = estimate_edim(m, win, nx, ny, a.max_iter,
                                            a.escape_radius, R_list);
        json entries = json::array();
        for (size_t k = 0; k < ed.entries.size(); ++k) {
            const EdimEntry& e = ed.entries[k];
            write_estimate(a.out + "_R" + std::to_string(k), e.result);
            entries.push_back({{"R", e.R},
                               {"slope", e.result.est.slope},
                               {"r2", e.result.est.r2},
                               {"ci95", e.result.est.ci95}});
            report << "R " << fmt17(e.R) << " slope " << fmt17(e.result.est.slope)
                   << "\n";
        }
        json summary{{"edim", ed.edim},
                     {"ir_slope", ed.ir_slope},
                     {"sandwich_ok", ed.sandwich_ok},
                     {"entries", entries}};
        write_text_atomic(a.out + ".json", summary.dump(2) + "\n");
        report << "edim " << fmt17(ed.edim) << "\nir_slope " << fmt17(ed.ir_slope)
               << "\nsandwich_ok " << (ed.sandwich_ok ? 1 : 0) << "\n";
        cfg["model"] = model_to_json(m);
        cfg["R_list"] = R_list;
    } else if (!a.kappa_list.empty()) {
        const FunctionModel m = resolve_model(a.model);
        if (m.family() != Family::F0)
            throw ConfigError("dim: --kappa-list needs an F0-family model");
        const auto kappas = parse_doubles(a.kappa_list, "--kappa-list");
        json entries = json::array();
        for (size_t k = 0; k < kappas.size(); ++k) {
            const FunctionModel mk = FunctionModel::f0({kappas[k], 0.0}, m.quad_tol());
            const EstimateResult r = run_single(mk, a.R);
            write_estimate(a.out + "_k" + std::to_string(k), r);
            entries.push_back({{"kappa", kappas[k]}, {"slope", r.est.slope}});
            report << "kappa " << fmt17(kappas[k]) << " slope " << fmt17(r.est.slope)
                   << "\n";
        }
        write_text_atomic(a.out + ".json",
                          json{{"entries", entries}}.dump(2) + "\n");
        cfg["model"] = model_to_json(m);
        cfg["kappa_list"] = kappas;
        cfg["R"] = a.R;
    } else {
        const FunctionModel m = resolve_model(a.model);
        const EstimateResult r = run_single(m, a.R);
        write_estimate(a.out, r);
        report << "slope " << fmt17(r.est.slope) << " r2 " << fmt17(r.est.r2)
               << " ci95 " << fmt17(r.est.ci95) << "\n";
        cfg["model"] = model_to_json(m);
        cfg["R"] = a.R;
    }

    std::fputs(report.str().c_str(), stdout);
    write_config(a.out, cfg);
    return 0;
}

// ---- growth ----------------------------------------------------------------

struct GrowthArgs {
    std::string model;
    std::string radii;
    int samples = 64;
    std::string out;
};

int cmd_growth(const GrowthArgs& a) {
    const FunctionModel m = resolve_model(a.model);
    const auto radii = parse_doubles(a.radii, "--radii");
    std::ostringstream out;
    out << "r,M,qhat\n";
    for (double r : radii) {
        const double lm = m.log_max_modulus(r, a.samples);
        const double M = lm > 709.0 ? std::numeric_limits<double>::infinity()
                                    : std::exp(lm);
        const double qhat = m.growth_statistic(r);
        out << fmt17(r) << ',' << fmt17(M) << ',' << fmt17(qhat) << '\n';
    }
    emit(out.str(), a.out);
    if (!a.out.empty()) {
        json cfg{{"command", "growth"},
                 {"model", model_to_json(m)},
                 {"radii", radii},
                 {"samples", a.samples},
                 {"out", a.out}};
        write_config(a.out, cfg);
    }
    return 0;
}

// ---- rigidity --------------------------------------------------------------

struct RigArgs {
    double K = 0.0;
    std::string lambda;
    double dim_in = 2.0;
    std::vector<std::string> pair;
    std::string phi, psi;
    int samples = 256;
    uint64_t seed = 1;
    double half_width = 1.0;
    double tol = 1e-8;
    std::string out;
};

int cmd_rigidity(const RigArgs& a) {
    std::ostringstream report;
    json cfg{{"command", "rigidity"}};
    if (!a.pair.empty()) {
        if (a.pair.size() != 2) throw ConfigError("rigidity: --pair needs two models");
        const FunctionModel f = resolve_model(a.pair[0]);
        const FunctionModel g = resolve_model(a.pair[1]);
        const AffineMap phi = parse_affine(a.phi, "--phi");
        const AffineMap psi = parse_affine(a.psi, "--psi");
        const auto samples = sample_box(a.seed, a.samples, a.half_width);
        const ResidualReport rep = equivalence_residual(f, g, phi, psi, samples, a.tol);
        report << "residual " << fmt17(rep.residual) << "\nretained " << rep.retained
               << "\nfiltered " << rep.filtered << "\n";
        cfg["pair"] = json::array({model_to_json(f), model_to_json(g)});
        cfg["phi"] = json{{"a", json::array({phi.a.real(), phi.a.imag()})},
                          {"b", json::array({phi.b.real(), phi.b.imag()})}};
        cfg["psi"] = json{{"a", json::array({psi.a.real(), psi.a.imag()})},
                          {"b", json::array({psi.b.real(), psi.b.imag()})}};
        cfg["samples"] = a.samples;
        cfg["seed"] = a.seed;
        cfg["half_width"] = a.half_width;
        cfg["tol"] = a.tol;
    } else {
        if (!(a.K > 1.0))
            throw ConfigError("rigidity: need --K > 1 (or --pair for residuals)");
        const cplx lambda =
            a.lambda.empty() ? cplx{0.0, 0.0} : parse_point(a.lambda, "--lambda");
        const double D = disc_radius(a.K);
        const double Kl = dilatation_at(D, lambda);
        const double bound = qc_dim_lower_bound(a.dim_in, Kl);
        report << "disc_radius " << fmt17(D) << "\ndilatation " << fmt17(Kl)
               << "\ndim_lower_bound " << fmt17(bound) << "\n";
        cfg["K"] = a.K;
        cfg["lambda"] = json::array({lambda.real(), lambda.imag()});
        cfg["dim_in"] = a.dim_in;
    }
    emit(report.str(), a.out);
    if (!a.out.empty()) {
        cfg["out"] = a.out;
        write_config(a.out, cfg);
    }
    return 0;
}

// ---- replay ----------------------------------------------------------------

std::string num_list(const json& j) {
    std::string s;
    for (const auto& v : j) {
        if (!s.empty()) s += ',';
        s += fmt17(v.get<double>());
    }
    return s;
}

std::string point_str(const json& j) {
    return fmt17(j.at(0).get<double>()) + "," + fmt17(j.at(1).get<double>());
}

std::string window_str(const json& j) { return num_list(j); }

std::string affine_str(const json& j) {
    return fmt17(j.at("a").at(0).get<double>()) + "," +
           fmt17(j.at("a").at(1).get<double>()) + "," +
           fmt17(j.at("b").at(0).get<double>()) + "," +
           fmt17(j.at("b").at(1).get<double>());
}

int cmd_replay(const std::string& path) {
    json cfg;
    try {
        cfg = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("replay: ") + e.what());
    }
    const std::string command = cfg.value("command", "");
    try {
        if (command == "eval") {
            EvalArgs a;
            a.model = cfg.at("model").dump();
            a.point = point_str(cfg.at("point"));
            a.tol = cfg.value("tol", 0.0);
            a.out = cfg.value("out", "");
            return cmd_eval(a);
        }
        if (command == "orbit") {
            OrbitArgs a;
            a.model = cfg.at("model").dump();
            a.point = point_str(cfg.at("point"));
            a.max_iter = cfg.at("max_iter").get<int>();
            a.escape_radius = cfg.at("escape_radius").get<double>();
            a.R = cfg.at("R").get<double>();
            a.out = cfg.value("out", "");
            return cmd_orbit(a);
        }
        if (command == "escape-map") {
            MapArgs a;
            a.model = cfg.at("model").dump();
            a.window = window_str(cfg.at("window"));
            a.res = num_list(cfg.at("res"));
            a.max_iter = cfg.at("max_iter").get<int>();
            a.escape_radius = cfg.at("escape_radius").get<double>();
            a.R = cfg.at("R").get<double>();
            a.supersample = cfg.value("supersample", 1);
            a.serial = cfg.value("serial", false);
            a.out = cfg.at("out").get<std::string>();
            return cmd_map(a);
        }
        if (command == "dim") {
            DimArgs a;
            if (cfg.contains("model")) a.model = cfg.at("model").dump();
            a.window = window_str(cfg.at("window"));
            a.res = num_list(cfg.at("res"));
            a.max_iter = cfg.at("max_iter").get<int>();
            a.escape_radius = cfg.at("escape_radius").get<double>();
            if (cfg.contains("R")) a.R = cfg.at("R").get<double>();
            if (cfg.contains("R_list")) a.R_list = num_list(cfg.at("R_list"));
            if (cfg.contains("kappa_list"))
                a.kappa_list = num_list(cfg.at("kappa_list"));
            if (cfg.contains("pair"))
                a.pair = {cfg.at("pair").at(0).dump(), cfg.at("pair").at(1).dump()};
            if (cfg.contains("scales")) a.scales = num_list(cfg.at("scales"));
            a.target = cfg.value("target", "ir");
            a.out = cfg.at("out").get<std::string>();
            return cmd_dim(a);
        }
        if (command == "growth") {
            GrowthArgs a;
            a.model = cfg.at("model").dump();
            a.radii = num_list(cfg.at("radii"));
            a.samples = cfg.value("samples", 64);
            a.out = cfg.value("out", "");
            return cmd_growth(a);
        }
        if (command == "rigidity") {
            RigArgs a;
            if (cfg.contains("pair")) {
                a.pair = {cfg.at("pair").at(0).dump(), cfg.at("pair").at(1).dump()};
                a.phi = affine_str(cfg.at("phi"));
                a.psi = affine_str(cfg.at("psi"));
                a.samples = cfg.at("samples").get<int>();
                a.seed = cfg.at("seed").get<uint64_t>();
                a.half_width = cfg.at("half_width").get<double>();
                a.tol = cfg.at("tol").get<double>();
            } else {
                a.K = cfg.at("K").get<double>();
                a.lambda = point_str(cfg.at("lambda"));
                a.dim_in = cfg.value("dim_in", 2.0);
            }
            a.out = cfg.value("out", "");
            return cmd_rigidity(a);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("replay: malformed config: ") + e.what());
    }
    throw ConfigError("replay: unknown command \"" + command + "\"");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"escape-set laboratory for Cauchy-integral entire functions"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* c_eval = app.add_subcommand("eval", "evaluate a model at one point");
    c_eval->add_option("--model", ev.model)->required();
    c_eval->add_option("--point", ev.point)->required();
    c_eval->add_option("--tol", ev.tol);
    c_eval->add_option("--out", ev.out);

    OrbitArgs ob;
    auto* c_orbit = app.add_subcommand("orbit", "iterate one point and classify");
    c_orbit->add_option("--model", ob.model)->required();
    c_orbit->add_option("--point", ob.point)->required();
    c_orbit->add_option("--max-iter", ob.max_iter);
    c_orbit->add_option("--escape-radius", ob.escape_radius);
    c_orbit->add_option("--R", ob.R);
    c_orbit->add_option("--out", ob.out);

    MapArgs mp;
    auto* c_map = app.add_subcommand("escape-map", "classify a grid, write PGM + CSV");
    c_map->add_option("--model", mp.model)->required();
    c_map->add_option("--window", mp.window)->required();
    c_map->add_option("--res", mp.res)->required();
    c_map->add_option("--max-iter", mp.max_iter);
    c_map->add_option("--escape-radius", mp.escape_radius);
    c_map->add_option("--R", mp.R);
    c_map->add_option("--supersample", mp.supersample);
    c_map->add_flag("--serial", mp.serial);
    c_map->add_option("--out", mp.out)->required();

    DimArgs dm;
    auto* c_dim = app.add_subcommand("dim", "box-counting dimension of jr/ir cells");
    c_dim->add_option("--model", dm.model);
    c_dim->add_option("--window", dm.window)->required();
    c_dim->add_option("--res", dm.res)->required();
    c_dim->add_option("--max-iter", dm.max_iter);
    c_dim->add_option("--escape-radius", dm.escape_radius);
    c_dim->add_option("--R", dm.R);
    c_dim->add_option("--R-list", dm.R_list);
    c_dim->add_option("--kappa-list", dm.kappa_list);
    c_dim->add_option("--pair", dm.pair)->expected(0, 2);
    c_dim->add_option("--scales", dm.scales);
    c_dim->add_option("--target", dm.target);
    c_dim->add_option("--out", dm.out)->required();

    GrowthArgs gr;
    auto* c_growth = app.add_subcommand("growth", "max modulus and growth statistic");
    c_growth->add_option("--model", gr.model)->required();
    c_growth->add_option("--radii", gr.radii)->required();
    c_growth->add_option("--samples", gr.samples);
    c_growth->add_option("--out", gr.out);

    RigArgs rg;
    auto* c_rig = app.add_subcommand("rigidity", "dilatation bounds or conjugacy residual");
    c_rig->add_option("--K", rg.K);
    c_rig->add_option("--lambda", rg.lambda);
    c_rig->add_option("--dim-in", rg.dim_in);
    c_rig->add_option("--pair", rg.pair)->expected(0, 2);
    c_rig->add_option("--phi", rg.phi);
    c_rig->add_option("--psi", rg.psi);
    c_rig->add_option("--samples", rg.samples);
    c_rig->add_option("--seed", rg.seed);
    c_rig->add_option("--half-width", rg.half_width);
    c_rig->add_option("--tol", rg.tol);
    c_rig->add_option("--out", rg.out);

    std::string replay_path;
    auto* c_replay = app.add_subcommand("replay", "re-run from a resolved config");
    c_replay->add_option("config", replay_path)->required();

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (c_eval->parsed()) return cmd_eval(ev);
        if (c_orbit->parsed()) return cmd_orbit(ob);
        if (c_map->parsed()) return cmd_map(mp);
        if (c_dim->parsed()) return cmd_dim(dm);
        if (c_growth->parsed()) return cmd_growth(gr);
        if (c_rig->parsed()) return cmd_rigidity(rg);
        if (c_replay->parsed()) return cmd_replay(replay_path);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const ScaleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const InsufficientScalesError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const EmptySetError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const AllSamplesFilteredError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}

} // namespace escdim
