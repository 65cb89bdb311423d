// su11kit: invariant suites, POVM densities and samples, compound extensions.
// Exit codes: 0 ok, 1 invariant or residual failure, 2 configuration error.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "su11/coherent.hpp"
#include "su11/halfline.hpp"
#include "su11/io.hpp"
#include "su11/normext.hpp"
#include "su11/parallel.hpp"
#include "su11/povm.hpp"
#include "su11/quadrature.hpp"
#include "su11/repkit.hpp"
#include "su11/verify.hpp"

using namespace su11;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string suite = "all";
    double lambda = 2.0;
    std::optional<double> k;
    int dim = 64;
    std::optional<int> boson_dim;
    std::string grid = "log";
    std::optional<int> grid_size;
    double r_max = 0.9999;
    std::string nodes = "200x128";
    std::string state = "0:1";
    std::vector<double> mu, nu;
    long n = 100000;
    std::uint64_t seed = 42;
    std::vector<std::string> tol;
    std::string out;
    std::string format;
    std::string construction = "heterodyne";
    bool domain_violation_test = false;
    std::string domain = "disk";
};

double parse_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v))
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number in " + what + ": '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

Tolerances parse_tolerances(const std::vector<std::string>& items)
{
    Tolerances t;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--tol expects NAME=VAL, got '" + it + "'");
        std::string name = it.substr(0, eq);
        const double v = parse_double(it.substr(eq + 1), "--tol");
        if (name.size() > 4 && name.compare(name.size() - 4, 4, "_tol") == 0)
            name.resize(name.size() - 4);
        if (name == "algebraic")
            t.algebraic = v;
        else if (name == "quadrature")
            t.quadrature = v;
        else if (name == "grid")
            t.grid = v;
        else
            throw ConfigError("unknown tolerance '" + name + "' (algebraic, quadrature, grid)");
    }
    try {
        t.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return t;
}

std::pair<int, int> parse_nodes(const std::string& s)
{
    const auto x = s.find('x');
    if (x == std::string::npos)
        throw ConfigError("--nodes expects RxA, got '" + s + "'");
    const double r = parse_double(s.substr(0, x), "--nodes"), a = parse_double(s.substr(x + 1), "--nodes");
    if (r < 1 || a < 1 || r != std::floor(r) || a != std::floor(a))
        throw ConfigError("--nodes entries must be positive integers");
    return {static_cast<int>(r), static_cast<int>(a)};
}

cplx parse_pair(const std::vector<double>& v, const char* what)
{
    if (v.size() == 1)
        return {v[0], 0.0};
    if (v.size() == 2)
        return {v[0], v[1]};
    throw ConfigError(std::string(what) + " expects RE[,IM]");
}

// "n:re[:im],..." in the |n> basis, or the coherent state nu/mu for squeeze parameters
State build_state(const RunConfig& c)
{
    if (!c.mu.empty() || !c.nu.empty()) {
        if (c.mu.empty() || c.nu.empty())
            throw ConfigError("--mu and --nu go together");
        SqueezeParams p(parse_pair(c.mu, "--mu"), parse_pair(c.nu, "--nu"), 1e-9);
        return coherent_state(c.lambda, DiskPoint(p.zeta()), c.dim);
    }
    std::map<int, cplx> entries;
    for (const auto& item : split(c.state, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw ConfigError("state entry must be n:re[:im], got '" + item + "'");
        const double n = parse_double(parts[0], "--state");
        if (n < 0 || n != std::floor(n))
            throw ConfigError("state index must be a non-negative integer, got '" + parts[0] + "'");
        entries[static_cast<int>(n)] += cplx(parse_double(parts[1], "--state"),
                                             parts.size() == 3 ? parse_double(parts[2], "--state") : 0.0);
    }
    if (entries.empty())
        throw ConfigError("empty state spec");
    const int D = std::max(c.dim, entries.rbegin()->first + 1);
    Vec v = Vec::Zero(D);
    for (auto [n, a] : entries)
        v(n) = a;
    if (v.norm() == 0.0)
        throw ConfigError("state spec has zero norm");
    return State(v / v.norm(), Basis::su11_number);
}

std::string state_label(const RunConfig& c)
{
    if (!c.mu.empty()) {
        std::ostringstream os;
        os << "squeezed mu=" << fmt17(c.mu[0]) << "," << fmt17(c.mu.size() > 1 ? c.mu[1] : 0.0)
           << " nu=" << fmt17(c.nu[0]) << "," << fmt17(c.nu.size() > 1 ? c.nu[1] : 0.0);
        return os.str();
    }
    return c.state;
}

void check_density_lambda(double lambda)
{
    if (!(lambda > 1.0))
        throw ConfigError("density requires lambda > 1: the POVM normalization (lambda-1) vanishes and the "
                          "coherent-state norm integral diverges for lambda <= 1");
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw ConfigError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string format_or(const RunConfig& c, const char* dflt)
{
    const std::string f = c.format.empty() ? dflt : c.format;
    if (f != "json" && f != "csv")
        throw ConfigError("--format must be json or csv");
    return f;
}

Json invariants_json(const SuiteReport& r)
{
    Json arr = Json::array();
    for (const auto& i : r.invariants)
        arr.push_back({{"name", i.name}, {"value", i.value}, {"relation", i.relation}, {"bound", i.bound},
                       {"pass", i.pass}});
    return arr;
}

int cmd_verify(const RunConfig& c)
{
    SuiteParams p;
    p.lambda = c.lambda;
    p.k = c.k.value_or(-1.0);
    p.dim = c.dim;
    p.boson_dim = c.boson_dim.value_or(512);
    p.n = c.n;
    p.seed = c.seed;
    p.tol = parse_tolerances(c.tol);
    if (!(p.lambda > 0.0))
        throw ConfigError("--lambda must be positive");
    if (c.k && *c.k < 0.0)
        throw ConfigError("--k must be non-negative");

    std::vector<std::string> suites;
    if (c.suite == "all")
        suites = suite_names();
    else
        suites = split(c.suite, ',');

    Json j;
    j["command"] = "verify";
    j["params"] = {{"lambda", p.lambda}, {"dim", p.dim}, {"boson_dim", p.boson_dim}, {"seed", p.seed},
                   {"tolerances", {{"algebraic", p.tol.algebraic}, {"quadrature", p.tol.quadrature},
                                   {"grid", p.tol.grid}}}};
    if (c.k)
        j["params"]["k"] = *c.k;
    Json arr = Json::array();
    bool all = true;
    for (const auto& s : suites) {
        SuiteReport r;
        try {
            r = run_suite(s, p);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        all = all && r.pass();
        arr.push_back({{"suite", s}, {"invariants", invariants_json(r)}, {"pass", r.pass()}});
    }
    j["suites"] = arr;
    j["pass"] = all;

    Output out(c.out);
    if (format_or(c, "json") == "csv") {
        write_csv_header(out.os(), {"suite", "invariant", "value", "relation", "bound", "pass"});
        for (const auto& s : j["suites"])
            for (const auto& i : s["invariants"])
                out.os() << s["suite"].get<std::string>() << ",\"" << i["name"].get<std::string>() << "\","
                         << fmt17(i["value"].get<double>()) << "," << i["relation"].get<std::string>() << ","
                         << fmt17(i["bound"].get<double>()) << "," << (i["pass"].get<bool>() ? 1 : 0) << "\n";
    } else {
        out.os() << dump(j) << "\n";
    }
    return all ? 0 : 1;
}

// polar nodes on the disk: Gauss-Legendre in r on [0, r_max], uniform angles
struct Node {
    cplx label;
    double weight;
};

std::vector<Node> density_nodes(const RunConfig& c)
{
    const auto [R, A] = parse_nodes(c.nodes);
    if (!(c.r_max > 0.0 && c.r_max < 1.0))
        throw ConfigError("--r-max must lie in (0, 1)");
    const Rule rr = gauss_legendre(R, 0.0, c.r_max), ra = uniform_angles(A);
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(R) * A);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < A; ++j) {
            const cplx z = std::polar(rr.x[i], ra.x[j]);
            const double w = rr.w[i] * rr.x[i] * ra.w[j];
            if (c.domain == "disk") {
                nodes.push_back({z, w});
            } else {
                // eta = i(1+z)/(1-z), |d eta/d z|^2 = 4/|1-z|^4
                nodes.push_back({to_halfplane(DiskPoint(z)).eta, w * 4.0 / std::pow(std::abs(1.0 - z), 4)});
            }
        }
    return nodes;
}

void check_domain(const RunConfig& c)
{
    if (c.domain != "disk" && c.domain != "halfplane")
        throw ConfigError("--domain must be disk or halfplane");
}

int cmd_density(const RunConfig& c)
{
    check_density_lambda(c.lambda);
    check_domain(c);
    const State psi = build_state(c);
    const auto nodes = density_nodes(c);
    std::vector<cplx> labels;
    labels.reserve(nodes.size());
    for (const auto& n : nodes)
        labels.push_back(n.label);
    std::vector<double> dens;
    if (c.domain == "disk")
        dens = DiskDensity(c.lambda, psi).eval(labels);
    else
        dens = HalfPlaneDensity(c.lambda, psi).eval(labels);
    const auto [R, A] = parse_nodes(c.nodes);
    const double cutoff = mean_and_second_moment(DiskDensity(c.lambda, psi), QuadSpec{R, A, c.r_max}).cutoff_bound;

    Output out(c.out);
    std::ostream& os = out.os();
    if (format_or(c, "csv") == "csv") {
        os << "# lambda=" << fmt17(c.lambda) << "\n# state=" << state_label(c) << "\n# domain=" << c.domain
           << "\n# cutoff r_max=" << fmt17(c.r_max) << " mass_bound=" << fmt17(cutoff) << "\n# quadrature nodes="
           << R << "x" << A << " gauss-legendre radial, uniform angular\n";
        write_csv_header(os, {"re", "im", "density", "weight"});
        for (std::size_t i = 0; i < nodes.size(); ++i)
            write_csv_row(os, {labels[i].real(), labels[i].imag(), dens[i], nodes[i].weight});
    } else {
        Json rows = Json::array();
        for (std::size_t i = 0; i < nodes.size(); ++i)
            rows.push_back({labels[i].real(), labels[i].imag(), dens[i], nodes[i].weight});
        Json j;
        j["lambda"] = c.lambda;
        j["state"] = state_label(c);
        j["domain"] = c.domain;
        j["r_max"] = c.r_max;
        j["cutoff_mass_bound"] = cutoff;
        j["nodes"] = {R, A};
        j["columns"] = {"re", "im", "density", "weight"};
        j["rows"] = rows;
        os << dump(j) << "\n";
    }
    return 0;
}

int cmd_sample(const RunConfig& c)
{
    check_density_lambda(c.lambda);
    check_domain(c);
    if (c.n < 1)
        throw ConfigError("--n must be positive");
    if (!(c.r_max > 0.0 && c.r_max < 1.0))
        throw ConfigError("--r-max must lie in (0, 1)");
    const State psi = build_state(c);
    SampleBatch s = sample(DiskDensity(c.lambda, psi), c.n, c.seed, c.r_max);
    if (c.domain == "halfplane")
        // the half-plane label eta has density disk(conj zeta(eta)) |d zeta/d eta|^2
        for (auto& z : s.outcomes)
            z = to_halfplane(DiskPoint(std::conj(z))).eta;

    Output out(c.out);
    std::ostream& os = out.os();
    if (format_or(c, "csv") == "csv") {
        write_csv_header(os, {"re", "im"});
        for (auto z : s.outcomes)
            write_csv_row(os, {z.real(), z.imag()});
    } else {
        Json rows = Json::array();
        for (auto z : s.outcomes)
            rows.push_back({z.real(), z.imag()});
        Json j;
        j["lambda"] = c.lambda;
        j["state"] = state_label(c);
        j["domain"] = c.domain;
        j["seed"] = c.seed;
        j["acceptance_rate"] = s.acceptance_rate;
        j["samples"] = rows;
        os << dump(j) << "\n";
    }
    return 0;
}

int cmd_extension(const RunConfig& c)
{
    const Tolerances tol = parse_tolerances(c.tol);
    std::pair<CompoundOperator, ExtensionReport> res;
    if (c.construction == "heterodyne") {
        const int Db = c.boson_dim.value_or(32);
        if (Db < 8)
            throw ConfigError("--boson-dim must be at least 8");
        res = heterodyne_extension(Db, 4, 8, c.seed, tol);
    } else if (c.construction == "lambda1") {
        const int G = c.grid_size.value_or(2048);
        if (G < 64)
            throw ConfigError("--grid-size must be at least 64");
        GridOps ops;
        if (c.grid == "log")
            ops = lambda1_grid_ops(G);
        else if (c.grid == "uniform")
            ops = grid_operators(AffineParams(0.0), Grid::uniform_grid(60.0, G));
        else
            throw ConfigError("--grid must be log or uniform");
        SymmetricOptions so;
        so.domain_violation_test = c.domain_violation_test;
        res = symmetric_extension(ops, so, tol);
    } else if (c.construction == "isometric") {
        if (!(c.lambda > 0.0))
            throw ConfigError("--lambda must be positive");
        res = isometric_extension(build_a_pair(c.lambda, c.dim).a_star, 1, tol);
    } else if (c.construction == "lambda_gt1") {
        const double k = c.k.value_or(0.5);
        if (!(k > 0.0))
            throw ConfigError("lambda_gt1 needs --k > 0");
        Grid2DSpec spec;
        if (c.grid_size) {
            if (*c.grid_size < 32)
                throw ConfigError("--grid-size must be at least 32");
            spec.Nu = spec.Nv = *c.grid_size;
        }
        res = lambda_gt1_extension(k, spec, {}, tol);
    } else {
        throw ConfigError("--construction must be heterodyne, lambda1, isometric or lambda_gt1");
    }
    format_or(c, "json");
    Output out(c.out);
    out.os() << dump(to_json(res.second)) << "\n";
    return res.second.pass ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--lambda", c.lambda, "lowest weight");
    sub->add_option("--k", c.k, "half-line parameter, lambda = 2k+1");
    sub->add_option("--dim", c.dim, "truncation dimension D");
    sub->add_option("--boson-dim", c.boson_dim, "boson truncation D_b");
    sub->add_option("--grid", c.grid, "half-line grid: log or uniform");
    sub->add_option("--grid-size", c.grid_size, "grid points");
    sub->add_option("--r-max", c.r_max, "radial cutoff of the disk");
    sub->add_option("--nodes", c.nodes, "quadrature nodes RxA");
    sub->add_option("--state", c.state, "state spec n:re[:im],...");
    sub->add_option("--mu", c.mu, "squeeze parameter mu as RE,IM")->delimiter(',');
    sub->add_option("--nu", c.nu, "squeeze parameter nu as RE,IM")->delimiter(',');
    sub->add_option("--n", c.n, "sample count");
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--tol", c.tol, "tolerance override NAME=VAL");
    sub->add_option("--out", c.out, "output path (stdout if absent)");
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--domain", c.domain, "disk or halfplane");
}

}  // namespace

int main(int argc, char** argv)
{
    configure_threads();
    CLI::App app{"su11kit: su(1,1) subnormal operators, POVMs and normal extensions"};
    app.set_config("--config", "", "TOML/INI config file; flags override it");
    app.require_subcommand(1);
    RunConfig c;

    auto* verify = app.add_subcommand("verify", "run invariant suites, JSON report");
    add_common(verify, c);
    verify->add_option("--suite", c.suite, "repkit, coherent, povm, halfline, squeezed, normext or all");
    auto* density = app.add_subcommand("density", "tabulate the POVM density on a polar grid");
    add_common(density, c);
    auto* samp = app.add_subcommand("sample", "draw POVM outcomes");
    add_common(samp, c);
    auto* ext = app.add_subcommand("extension", "build a normal extension, JSON report");
    add_common(ext, c);
    ext->add_option("--construction", c.construction, "heterodyne, lambda1, isometric or lambda_gt1");
    ext->add_flag("--domain-violation-test", c.domain_violation_test, "also apply T to a phi with phi(0) != 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify)
            return cmd_verify(c);
        if (*density)
            return cmd_density(c);
        if (*samp)
            return cmd_sample(c);
        return cmd_extension(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
