#include "cli.hpp"

#include <twofold/twofold.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace twofold::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunConfig {
    std::string config, output, format;
    unsigned threads = 1;

    double A = nan, C = 1.0, H = nan, Lambda = 1.0;

    // simulate
    double x0 = nan, y0 = nan, z0 = 0.0, t_end = nan, dt = 0.05;
    bool from_cycle = false;
    int max_crossings = 10000;

    // find-cycle
    double seed = nan, tol = 1e-10;
    int max_iter = 50;

    // verify-series
    std::vector<double> v0{1e-3, 1e-4, 1e-5};

    // stability-band
    double cmin = 0.0, cmax = 3.0, hmin = 0.0, hmax = 1.0;
    int grid = 400, nc = 0, nh = 0;
    std::string boundaries;

    // scan
    double h_lo = nan, h_hi = nan;
    int count = 20;
};

// Keeps track of every option a subcommand accepts so a JSON config can fill
// the ones that were not given on the command line.
class Registry {
public:
    explicit Registry(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* option(const std::string& name, T& ref, const std::string& desc) {
        CLI::Option* o = app_->add_option("--" + name, ref, desc);
        entries_[name] = {o, [&ref](const json& j) { ref = j.get<T>(); }};
        return o;
    }

    CLI::Option* flag(const std::string& name, bool& ref, const std::string& desc) {
        CLI::Option* o = app_->add_flag("--" + name, ref, desc);
        entries_[name] = {o, [&ref](const json& j) { ref = j.get<bool>(); }};
        return o;
    }

    void apply(const json& cfg) const {
        if (!cfg.is_object()) throw UsageError("config must be a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            const auto it = entries_.find(key);
            if (it == entries_.end()) throw UsageError("unknown config key '" + key + "'");
            if (key == "config") throw UsageError("config files cannot nest");
            if (it->second.opt->count() > 0) continue;
            try {
                it->second.set(value);
            } catch (const json::exception& e) {
                throw UsageError("config key '" + key + "': " + e.what());
            }
        }
    }

    void set_default_format(std::string f) { default_format_ = std::move(f); }
    const std::string& default_format() const { return default_format_; }

private:
    struct Entry {
        CLI::Option* opt;
        std::function<void(const json&)> set;
    };
    CLI::App* app_;
    std::string default_format_;
    std::map<std::string, Entry> entries_;
};

void add_common(Registry& r, RunConfig& c, const char* default_format, bool threaded) {
    r.option("config", c.config, "JSON file with option values; command-line flags take precedence");
    r.option("output", c.output, "write results to this file instead of stdout");
    r.set_default_format(default_format);
    r.option("format", c.format, "output format (csv | json)")->check(CLI::IsMember({"csv", "json"}));
    if (threaded) r.option("threads", c.threads, "worker threads");
}

void add_params(Registry& r, RunConfig& c) {
    r.option("A", c.A, "linear rate of the X field (default: resonant A = -2C)");
    r.option("C", c.C, "focus rate");
    r.option("H", c.H, "coupling (default: inside the stability band)");
    r.option("Lambda", c.Lambda, "fold offset");
}

void load_config(const Registry& r, const RunConfig& c) {
    if (c.config.empty()) return;
    std::ifstream in(c.config);
    if (!in) throw UsageError("cannot open config file '" + c.config + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("malformed config file '" + c.config + "': " + e.what());
    }
    r.apply(cfg);
}

void validate(const RunConfig& c) {
    if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
    if (c.threads < 1) throw UsageError("--threads must be at least 1");
    if (!(c.dt > 0.0)) throw UsageError("--dt must be positive");
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    if (c.max_iter < 1 || c.max_crossings < 1) throw UsageError("iteration limits must be positive");
    if (c.grid < 2 || (c.nc != 0 && c.nc < 2) || (c.nh != 0 && c.nh < 2)) throw UsageError("grid counts must be >= 2");
    if (c.count < 2) throw UsageError("--count must be >= 2");
    for (double v : c.v0)
        if (!(v > 0.0)) throw UsageError("--v0 values must be positive");
}

SystemParams params_of(const RunConfig& c) {
    double H = c.H;
    if (std::isnan(H)) {
        if (!(c.C > 0.0) || !std::isnan(c.A)) throw UsageError("--H is required unless C > 0 in the resonant family");
        H = critical_H(c.C) - 0.125 * band_width(c.C);
    }
    try {
        return std::isnan(c.A) ? build_resonant(c.C, H, c.Lambda) : build_system(c.A, c.C, H, c.Lambda);
    } catch (const InvalidParams& e) {
        throw UsageError(e.what());
    }
}

json params_json(const SystemParams& p) {
    return json{{"A", p.A()}, {"C", p.C()}, {"H", p.H()}, {"Lambda", p.Lambda()}, {"resonant", p.resonant()}};
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json point_json(const SigmaPoint& q) { return json::array({q.x, q.y}); }

// ---------------------------------------------------------------------------

void cmd_simulate(const RunConfig& c, std::ostream& out) {
    const SystemParams p = params_of(c);
    State3 s{c.x0, c.y0, c.z0};
    double t_end = c.t_end;
    if (c.from_cycle) {
        ScanOptions so;
        const CatalogueEntry e = catalogue_entry(p, so);
        if (!e.found) throw NoConvergence("no cycle to start from: " + e.error);
        s = e.cycle.p0.lift();
        if (std::isnan(t_end)) t_end = e.cycle.T;
    }
    if (!s.finite()) throw UsageError("simulate needs --x0 --y0 [--z0] or --from-cycle");
    if (!(t_end > 0.0)) throw UsageError("simulate needs a positive --t-end");

    struct Row {
        double t;
        State3 s;
        Field f;
        std::string event;
        std::string region;
        double det;
    };
    std::vector<Row> rows;
    const State3 start = s;

    Field f = Field::X;
    bool stopped = false;
    if (s.z > 0.0) {
        f = Field::X;
    } else if (s.z < 0.0) {
        f = Field::Y;
    } else {
        const SigmaClass cls = classify_point(p, {s.x, s.y});
        if (cls.region != SigmaRegion::Crossing) {
            rows.push_back({0.0, s, f, "stop", to_string(cls.region), nan});
            stopped = true;
        } else {
            f = cls.Xf > 0.0 ? Field::X : Field::Y;
        }
    }

    double t = 0.0;
    long next_sample = 0;
    int crossings = 0;
    while (!stopped && t < t_end) {
        const auto tc = next_crossing(p, f, s, t_end - t);
        const double seg_end = tc ? t + *tc : t_end;
        for (;; ++next_sample) {
            const double ts = next_sample * c.dt;
            if (ts >= seg_end || ts > t_end) break;
            rows.push_back({ts, flow(p, f, s, ts - t), f, "sample", "", nan});
        }
        if (!tc) {
            s = flow(p, f, s, t_end - t);
            t = t_end;
            break;
        }
        s = flow(p, f, s, *tc);
        s.z = 0.0;
        t = seg_end;
        const SigmaPoint q{s.x, s.y};
        const SigmaClass cls = classify_point(p, q);
        if (cls.region != SigmaRegion::Crossing) {
            rows.push_back({t, s, f, "stop", to_string(cls.region), nan});
            stopped = true;
            break;
        }
        const Direction d = f == Field::X ? Direction::XtoY : Direction::YtoX;
        const double det = saltation(p, q, d).determinant();
        f = f == Field::X ? Field::Y : Field::X;
        rows.push_back({t, s, f, "crossing", to_string(cls.region), det});
        if (++crossings >= c.max_crossings) {
            rows.push_back({t, s, f, "stop", "max-crossings", nan});
            stopped = true;
        }
    }
    if (!stopped) rows.push_back({t, s, f, "end", "", nan});

    const State3 last = rows.back().s;
    const double return_error = (last.vec() - start.vec()).norm();

    if (c.format == "csv") {
        out << "t,x,y,z,field,event,region,saltation_det\n";
        for (const Row& r : rows)
            out << num(r.t) << ',' << num(r.s.x) << ',' << num(r.s.y) << ',' << num(r.s.z) << ',' << to_string(r.f)
                << ',' << r.event << ',' << r.region << ',' << (std::isnan(r.det) ? "" : num(r.det)) << '\n';
        return;
    }
    json samples = json::array(), events = json::array();
    for (const Row& r : rows) {
        json j{{"t", r.t}, {"x", r.s.x}, {"y", r.s.y}, {"z", r.s.z}, {"field", to_string(r.f)}};
        if (r.event == "sample") {
            samples.push_back(std::move(j));
        } else {
            j["event"] = r.event;
            j["region"] = r.region;
            j["saltation_det"] = r.det;
            events.push_back(std::move(j));
        }
    }
    json doc{{"params", params_json(p)},
             {"t_end", t_end},
             {"samples", samples},
             {"events", events},
             {"final", {last.x, last.y, last.z}},
             {"return_error", return_error}};
    out << doc.dump(2) << '\n';
}

void cmd_find_cycle(const RunConfig& c, std::ostream& out) {
    const SystemParams p = params_of(c);
    ScanOptions so;
    so.cycle.tol_rel = c.tol;
    so.cycle.max_iter = c.max_iter;
    CatalogueEntry e;
    if (!std::isnan(c.seed)) {
        e.H = p.H();
        e.cycle = find_cycle_newton(p, c.seed, so.cycle);
        e.report = monodromy(p, e.cycle);
        e.found = true;
    } else {
        e = catalogue_entry(p, so);
        if (!e.found) throw NoConvergence(e.error);
    }
    const SymmetricCycle& cy = e.cycle;
    const MonodromyReport& r = e.report;
    if (c.format == "csv") {
        out << "x0,y0,x1,y1,T,tX,tY,residual,iterations,trace,det,mu2_re,mu2_im,mu3_re,mu3_im,stable\n";
        out << num(cy.p0.x) << ',' << num(cy.p0.y) << ',' << num(cy.p1.x) << ',' << num(cy.p1.y) << ','
            << num(cy.T) << ',' << num(cy.tX) << ',' << num(cy.tY) << ',' << num(cy.closure_residual) << ','
            << cy.iterations << ',' << num(r.trace) << ',' << num(r.det) << ',' << num(r.mu2.real()) << ','
            << num(r.mu2.imag()) << ',' << num(r.mu3.real()) << ',' << num(r.mu3.imag()) << ',' << int(r.stable)
            << '\n';
        return;
    }
    json doc{{"params", params_json(p)},
             {"p0", point_json(cy.p0)},
             {"p1", point_json(cy.p1)},
             {"T", cy.T},
             {"tX", cy.tX},
             {"tY", cy.tY},
             {"residual", cy.closure_residual},
             {"iterations", cy.iterations},
             {"trace", r.trace},
             {"det", r.det},
             {"multipliers", json::array({complex_json(r.mu1), complex_json(r.mu2), complex_json(r.mu3)})},
             {"trivial_residual", r.trivial_residual},
             {"stable", r.stable}};
    out << doc.dump(2) << '\n';
}

void cmd_verify_series(const RunConfig& c, std::ostream& out) {
    const SystemParams p = params_of(c);
    const SeriesCoeffs sc = series_coeffs(p);
    struct Row {
        double v0, txn, txs, tyn, tys, tau, residual;
    };
    std::vector<Row> rows;
    for (double v : c.v0) {
        const TimeMatchSample s = time_matching_sample(p, v);
        const double txs = sc.tau_x(v), tys = sc.tau_y(v);
        const double res = std::max(std::abs(s.tau_x - txs) / std::abs(txs), std::abs(s.tau_y - tys) / std::abs(tys));
        rows.push_back({v, s.tau_x, txs, s.tau_y, tys, s.tau, res});
    }
    if (c.format == "csv") {
        out << "v0,tau_x_numeric,tau_x_series,tau_y_numeric,tau_y_series,tau,residual\n";
        for (const Row& r : rows)
            out << num(r.v0) << ',' << num(r.txn) << ',' << num(r.txs) << ',' << num(r.tyn) << ',' << num(r.tys)
                << ',' << num(r.tau) << ',' << num(r.residual) << '\n';
        return;
    }
    json arr = json::array();
    for (const Row& r : rows)
        arr.push_back({{"v0", r.v0},
                       {"tau_x_numeric", r.txn},
                       {"tau_x_series", r.txs},
                       {"tau_y_numeric", r.tyn},
                       {"tau_y_series", r.tys},
                       {"tau", r.tau},
                       {"residual", r.residual}});
    json doc{{"params", params_json(p)},
             {"coefficients", {{"gx1", sc.gx1}, {"gx2", sc.gx2}, {"gy1", sc.gy1}, {"gy2", sc.gy2}}},
             {"rows", arr}};
    out << doc.dump(2) << '\n';
}

void cmd_classify_conic(const RunConfig& c, std::ostream& out) {
    const SystemParams p = params_of(c);
    const ConicGamma1 g = gamma1_conic(p);
    const double slope = p.H() > 0.0 && p.H() < 1.0 ? gamma1_slope_limit(p) : nan;
    std::optional<std::array<SigmaPoint, 4>> axes;
    try {
        axes = gamma1_axis_intercepts(p);
    } catch (const DomainError&) {
    }
    if (c.format == "csv") {
        out << "C,H,Lambda,discriminant,kind,a,b,c,d,e,f,slope_limit\n";
        out << num(p.C()) << ',' << num(p.H()) << ',' << num(p.Lambda()) << ',' << num(g.discriminant) << ','
            << to_string(g.kind);
        for (double k : g.coeffs) out << ',' << num(k);
        out << ',' << num(slope) << '\n';
        return;
    }
    json doc{{"params", params_json(p)},
             {"discriminant", g.discriminant},
             {"kind", to_string(g.kind)},
             {"coeffs", g.coeffs},
             {"slope_limit", std::isnan(slope) ? json(nullptr) : json(slope)}};
    if (axes) {
        json a = json::array();
        for (const SigmaPoint& q : *axes) a.push_back(point_json(q));
        doc["axis_intercepts"] = a;
    } else {
        doc["axis_intercepts"] = nullptr;
    }
    out << doc.dump(2) << '\n';
}

void write_band(const BandResult& b, const RunConfig& c, std::ostream& pts, std::ostream& bnd) {
    if (c.format == "csv") {
        pts << "C,H,m2,tau_inf,det_below_one,upper_ok,lower_ok,inside\n";
        for (const BandPoint& q : b.points)
            pts << num(q.C) << ',' << num(q.H) << ',' << num(q.m2) << ',' << num(q.tau_inf) << ','
                << int(q.inequalities[0]) << ',' << int(q.inequalities[1]) << ',' << int(q.inequalities[2]) << ','
                << int(q.inside) << '\n';
        bnd << "curve,C,H\n";
        auto poly = [&](const char* name, const std::vector<std::pair<double, double>>& v) {
            for (const auto& [C, H] : v) bnd << name << ',' << num(C) << ',' << num(H) << '\n';
        };
        poly("upper", b.upper);
        poly("lower", b.lower);
        poly("hcrit", b.hcrit);
        return;
    }
    json arr = json::array();
    for (const BandPoint& q : b.points)
        arr.push_back({{"C", q.C}, {"H", q.H}, {"m2", q.m2}, {"tau_inf", q.tau_inf}, {"inside", q.inside}});
    auto poly = [](const std::vector<std::pair<double, double>>& v) {
        json a = json::array();
        for (const auto& [C, H] : v) a.push_back({C, H});
        return a;
    };
    pts << json{{"points", arr}}.dump(1) << '\n';
    bnd << json{{"upper", poly(b.upper)}, {"lower", poly(b.lower)}, {"hcrit", poly(b.hcrit)}}.dump(1) << '\n';
}

void cmd_scan(const RunConfig& c, std::ostream& out) {
    if (!(c.C > 0.0)) throw UsageError("scan requires C > 0");
    if (!std::isnan(c.A)) throw UsageError("scan works in the resonant family; drop --A");
    const double hc = critical_H(c.C);
    const double lo = std::isnan(c.h_lo) ? 0.25 * hc : c.h_lo;
    const double hi = std::isnan(c.h_hi) ? hc : c.h_hi;
    if (!(lo > 0.0 && hi > lo && hi < 1.0)) throw UsageError("scan needs 0 < h-lo < h-hi < 1");
    std::vector<double> H(c.count);
    for (int i = 0; i < c.count; ++i) H[i] = lo + (hi - lo) * i / (c.count - 1);
    const SystemParams base = build_resonant(c.C, H.front(), c.Lambda);
    ScanOptions so;
    so.threads = c.threads;
    so.cycle.tol_rel = c.tol;
    so.cycle.max_iter = c.max_iter;
    const auto cat = scan_cycles(base, H, so);

    if (c.format == "csv") {
        out << "H,y0,T,mu2_re,mu2_im,mu3_re,mu3_im,stable,found\n";
        for (const CatalogueEntry& e : cat) {
            if (!e.found) {
                out << num(e.H) << ",nan,nan,nan,nan,nan,nan,0,0\n";
                continue;
            }
            const auto& r = e.report;
            out << num(e.H) << ',' << num(e.cycle.p0.y) << ',' << num(e.cycle.T) << ',' << num(r.mu2.real()) << ','
                << num(r.mu2.imag()) << ',' << num(r.mu3.real()) << ',' << num(r.mu3.imag()) << ','
                << int(r.stable) << ",1\n";
        }
        return;
    }
    json arr = json::array();
    for (const CatalogueEntry& e : cat) {
        json j{{"H", e.H}, {"found", e.found}};
        if (e.found) {
            j["y0"] = e.cycle.p0.y;
            j["T"] = e.cycle.T;
            j["mu2"] = complex_json(e.report.mu2);
            j["mu3"] = complex_json(e.report.mu3);
            j["stable"] = e.report.stable;
        } else {
            j["error"] = e.error;
        }
        arr.push_back(std::move(j));
    }
    out << json{{"C", c.C}, {"Lambda", c.Lambda}, {"catalogue", arr}}.dump(2) << '\n';
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetric crossing limit cycles of a two-fold piecewise-linear family"};
    app.name("twofold");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    RunConfig cfg;
    std::map<CLI::App*, std::unique_ptr<Registry>> regs;
    auto sub = [&](const char* name, const char* desc, const char* fmt, bool threaded) {
        CLI::App* s = app.add_subcommand(name, desc);
        auto r = std::make_unique<Registry>(s);
        add_common(*r, cfg, fmt, threaded);
        Registry& ref = *r;
        regs[s] = std::move(r);
        return &ref;
    };

    Registry* sim = sub("simulate", "integrate the switched system and record crossings", "csv", false);
    add_params(*sim, cfg);
    sim->option("x0", cfg.x0, "initial x");
    sim->option("y0", cfg.y0, "initial y");
    sim->option("z0", cfg.z0, "initial z");
    sim->option("t-end", cfg.t_end, "final time (default with --from-cycle: one period)");
    sim->option("dt", cfg.dt, "sampling interval");
    sim->option("max-crossings", cfg.max_crossings, "stop after this many crossings");
    sim->flag("from-cycle", cfg.from_cycle, "start on the symmetric cycle for these parameters");

    Registry* fc = sub("find-cycle", "locate a symmetric crossing cycle and its multipliers", "json", false);
    add_params(*fc, cfg);
    fc->option("seed", cfg.seed, "initial amplitude y0 (default: asymptotic seed, then a bracket scan)");
    fc->option("tol", cfg.tol, "relative Newton tolerance");
    fc->option("max-iter", cfg.max_iter, "Newton iteration limit");

    Registry* vs = sub("verify-series", "compare half-return times with their series", "csv", false);
    add_params(*vs, cfg);
    vs->option("v0", cfg.v0, "values of 1/y0 along the conic branch")->delimiter(',');

    Registry* cc = sub("classify-conic", "classify the closure conic", "json", false);
    add_params(*cc, cfg);

    Registry* sb = sub("stability-band", "evaluate the asymptotic stability band on a grid", "csv", true);
    sb->option("cmin", cfg.cmin, "lower C (excluded)");
    sb->option("cmax", cfg.cmax, "upper C");
    sb->option("hmin", cfg.hmin, "lower H (excluded)");
    sb->option("hmax", cfg.hmax, "upper H (excluded)");
    sb->option("grid", cfg.grid, "nodes per axis");
    sb->option("nc", cfg.nc, "C nodes (overrides --grid)");
    sb->option("nh", cfg.nh, "H nodes (overrides --grid)");
    sb->option("boundaries", cfg.boundaries, "file for the boundary polylines (default: <output>.boundaries)");

    Registry* sc = sub("scan", "catalogue cycles over a range of H", "csv", true);
    sc->option("C", cfg.C, "focus rate");
    sc->option("Lambda", cfg.Lambda, "fold offset");
    sc->option("A", cfg.A, "unsupported; scan stays in the resonant family");
    sc->option("h-lo", cfg.h_lo, "smallest H (default: H_crit / 4)");
    sc->option("h-hi", cfg.h_hi, "largest H (default: H_crit)");
    sc->option("count", cfg.count, "number of H values");
    sc->option("tol", cfg.tol, "relative Newton tolerance");
    sc->option("max-iter", cfg.max_iter, "Newton iteration limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? ok : usage_error;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
        const Registry& reg = *regs.at(chosen);
        load_config(reg, cfg);
        if (cfg.format.empty()) cfg.format = reg.default_format();
        validate(cfg);
        std::ostringstream buf;
        if (name == "simulate") {
            cmd_simulate(cfg, buf);
        } else if (name == "find-cycle") {
            cmd_find_cycle(cfg, buf);
        } else if (name == "verify-series") {
            cmd_verify_series(cfg, buf);
        } else if (name == "classify-conic") {
            cmd_classify_conic(cfg, buf);
        } else if (name == "stability-band") {
            BandGrid g;
            g.cmin = cfg.cmin;
            g.cmax = cfg.cmax;
            g.hmin = cfg.hmin;
            g.hmax = cfg.hmax;
            g.nc = cfg.nc ? cfg.nc : cfg.grid;
            g.nh = cfg.nh ? cfg.nh : cfg.grid;
            BandResult b;
            try {
                b = stability_band(g, cfg.threads);
            } catch (const PreconditionError& e) {
                throw UsageError(e.what());
            }
            std::ostringstream bnd;
            write_band(b, cfg, buf, bnd);
            std::string bpath = cfg.boundaries;
            if (bpath.empty() && !cfg.output.empty()) bpath = cfg.output + ".boundaries";
            if (bpath.empty()) {
                buf << '\n' << bnd.str();
            } else {
                emit(bpath, bnd.str(), out);
            }
        } else if (name == "scan") {
            cmd_scan(cfg, buf);
        }
        emit(cfg.output, buf.str(), out);
    } catch (const UsageError& e) {
        err << "twofold " << name << ": " << e.what() << '\n';
        return usage_error;
    } catch (const Error& e) {
        err << "twofold " << name << ": " << e.what() << '\n';
        return numeric_failure;
    }
    return ok;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("twofold");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace twofold::cli
