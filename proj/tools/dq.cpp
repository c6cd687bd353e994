#include "expr.hpp"
#include "suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace dq;
using namespace dq::cli;

namespace {

struct Flags {
    std::string config;
    RunConfig cfg;
    CLI::Option* hbar = nullptr;
    CLI::Option* basis = nullptr;
    CLI::Option* order = nullptr;
    CLI::Option* tol = nullptr;
    CLI::Option* mode = nullptr;
    CLI::Option* degree = nullptr;
    CLI::Option* cases = nullptr;
    CLI::Option* kernel = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* format = nullptr;
};

void add_common(CLI::App& app, Flags& f, RunConfig& v)
{
    app.add_option("--config", f.config, "JSON file with run settings; flags override it")->check(CLI::ExistingFile);
    f.hbar = app.add_option("--hbar", v.hbar, "Planck constant (numeric suites), or h in sl2q numeric mode");
    f.basis = app.add_option("--basis-size", v.basis_size, "Hermite basis size, Galilei modes, or NH mode cutoff");
    f.order = app.add_option("--series-order", v.series_order, "truncation order of h-series");
    f.tol = app.add_option("--tolerance-scale", v.tolerance_scale, "multiplies every tolerance");
    f.mode = app.add_option("--mode", v.mode, "sl2q arithmetic: exact, series or numeric");
    f.degree = app.add_option("--degree", v.degree, "max degree of random polynomials");
    f.cases = app.add_option("--cases", v.cases, "number of random triples");
    f.kernel = app.add_option("--kernel", v.kernel, "sw-galilei: phi0, square-wave; sw-nh: default, parity, shift, reflection-pi");
    f.seed = app.add_option("--seed", v.seed, "random seed");
    f.out = app.add_option("--out", v.out, "output directory (verify) or file (eval)");
    f.format = app.add_option("--format", v.format, "text or json");
}

/// Config file first, then every flag given on the command line.
RunConfig resolve(const Flags& f, const RunConfig& flags)
{
    RunConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("cannot parse config: ") + e.what());
        }
        c.merge(j);
    }
    if (f.hbar->count()) c.hbar = flags.hbar;
    if (f.basis->count()) c.basis_size = flags.basis_size;
    if (f.order->count()) c.series_order = flags.series_order;
    if (f.tol->count()) c.tolerance_scale = flags.tolerance_scale;
    if (f.mode->count()) c.mode = flags.mode;
    if (f.degree->count()) c.degree = flags.degree;
    if (f.cases->count()) c.cases = flags.cases;
    if (f.kernel->count()) c.kernel = flags.kernel;
    if (f.seed->count()) c.seed = flags.seed;
    if (f.out->count()) c.out = flags.out;
    if (f.format->count()) c.format = flags.format;
    return c;
}

int verify(const RunConfig& cfg)
{
    const Report r = run_suite(cfg);
    const std::string text = cfg.format == "json" ? r.to_json().dump(2) + "\n" : r.text();
    std::cout << text;
    if (!cfg.out.empty()) {
        std::ofstream js(std::filesystem::path(cfg.out) / "report.json");
        js << r.to_json().dump(2) << "\n";
    }
    return r.ok() ? 0 : 1;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << text;
}

std::string grid_csv(const numeric::PhaseGrid& g, double hbar)
{
    std::ostringstream os;
    g.write_csv(os, hbar);
    return os.str();
}

int eval(const std::string& expr, const RunConfig& cfg)
{
    const Call c = parse_call(expr);
    auto arity = [&](std::size_t n) {
        if (c.args.size() != n)
            throw ParseError(0, c.name + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    };
    const double hb = cfg.hbar;
    const int M = cfg.basis_size > 0 ? cfg.basis_size : 64;
    const numeric::GridSpec grid = numeric::GridSpec::square(6 * std::sqrt(hb), 121);

    if (c.name == "star" || c.name == "mbracket") {
        arity(2);
        const PhasePoly f = parse_phase_poly(c.args[0].first, c.args[0].second);
        const PhasePoly g = parse_phase_poly(c.args[1].first, c.args[1].second);
        const int N = std::max(0, std::min(f.degree(), g.degree()));
        const HbarSeries s = c.name == "star" ? moyal_star(f, g, N) : moyal_bracket(HbarSeries(f, N), HbarSeries(g, N));
        emit(cfg, pretty(s) + "\n");
    } else if (c.name == "wigner") {
        arity(1);
        const auto& [a, at] = c.args[0];
        std::size_t used = 0;
        long n = -1;
        try {
            n = std::stol(a, &used);
        } catch (const std::exception&) {
        }
        if (n < 0 || a.find_first_not_of(" \t", used) != std::string::npos) throw ParseError(at, "wigner expects a level n >= 0");
        if (n >= M) throw ParseError(at, "level exceeds the basis size");
        const numeric::HermiteBasis b(M, hb);
        emit(cfg, grid_csv(numeric::wigner_from_state(b, Eigen::VectorXcd::Unit(M, n), grid), hb));
    } else if (c.name == "symbol") {
        arity(1);
        const numeric::HermiteBasis b(M, hb);
        // truncated Q, P break [Q, P] = i hbar in the last modes; products of fewer than M factors are exact after cropping
        const numeric::OperatorMatrix A = parse_operator(c.args[0].first, 2 * M, hb, c.args[0].second).topLeftCorner(M, M);
        // the sharp cutoff of the basis rings in the symbol; taper it as in the unit-symbol case
        const numeric::OperatorMatrix S = numeric::mode_filter(M).cwiseSqrt();
        emit(cfg, grid_csv(numeric::weyl_inverse(b, S * A * S, grid), hb));
    } else if (c.name == "normalize") {
        arity(1);
        const std::string w = parse_word(c.args[0].first, c.args[0].second);
        emit(cfg, pl::nc_normalize(w, pl::ratfunc_relations()).str() + "\n");
    } else {
        throw ParseError(0, "unknown function '" + c.name + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Deformation quantization toolkit"};
    app.require_subcommand(1);

    Flags vf, ef;
    RunConfig vflags, eflags;
    std::string suite, expr;

    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("suite", suite, "star, weyl-numeric, sw-galilei, sw-nh, sl2q or all");
    add_common(*v, vf, vflags);

    auto* e = app.add_subcommand("eval", "evaluate star, mbracket, wigner, symbol or normalize");
    e->add_option("expr", expr, "e.g. \"star(q, p)\"")->required();
    add_common(*e, ef, eflags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (v->parsed()) {
            RunConfig cfg = resolve(vf, vflags);
            if (!suite.empty()) cfg.suite = suite;
            cfg.validate();
            return verify(cfg);
        }
        RunConfig cfg = resolve(ef, eflags);
        cfg.suite = "all";
        cfg.validate();
        return eval(expr, cfg);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
