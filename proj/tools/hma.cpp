// hma — command line front end for the characteristics solver.
//
// Subcommands: solve, convergence, residual-map, trace. Every run writes
// its outputs into --output-dir; all files are deterministic for a given
// configuration except the timestamp recorded in meta.json.

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperma/metrics.hpp"
#include "hyperma/problem.hpp"
#include "hyperma/residual.hpp"
#include "hyperma/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hyperma;

namespace {

// Errors in how the tool was invoked or configured (exit code 2), as
// opposed to runtime failures of a well-formed request (exit code 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string case_name = "default";
    std::string method = "rk4";
    int spline_order = 5;
    int n_y = 201;
    double gamma = 0.95;
    std::string output_dir = ".";
    std::string n_y_list = "51,101,201";
    std::vector<std::string> starts;
    std::string family = "both";
    bool from_exact = false;
    std::string config_file;
};

// Flat key=value configuration, applied by hand after the command line is
// parsed (CLI11 only processes config files registered on the root app,
// while all our flags live on subcommands). Keys match flag names without
// the leading dashes; values pass through the same validators as flags,
// and a flag given on the command line beats its file entry.
void apply_config_file(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        line = CLI::detail::trim_copy(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("bad config line (want key=value): " + line);
        std::string key = CLI::detail::trim_copy(line.substr(0, eq));
        const std::string value = CLI::detail::trim_copy(line.substr(eq + 1));
        while (!key.empty() && key[0] == '-') key.erase(key.begin());
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw UsageError("unknown config key: " + key);
        if (opt->count() > 0) continue;  // command line wins
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("bad config value for " + key + ": " + e.what());
        }
    }
}

std::string iso_timestamp() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ProblemSpec resolve_case(const std::string& name) {
    try {
        return builtin(name);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

void check_run_params(const Opts& o) {
    if (!(o.gamma > 0.0 && o.gamma < 1.0)) throw UsageError("gamma out of range (0, 1)");
    if (o.n_y < 2 * o.spline_order + 3)
        throw UsageError("n_y too small for spline order (need at least 2*order + 3)");
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(dir / name);
    if (!os) throw std::runtime_error("cannot write file: " + (dir / name).string());
    return os;
}

void write_field_csv(const SolutionField& field, std::ostream& os) {
    os << "i,j,x,y,u,p,q,a,b\n";
    for (int i = 0; i < field.n_x(); ++i) {
        const GridLine& ln = field.lines[i];
        for (int j = 0; j < field.n_y(); ++j) {
            os << (i + 1) << ',' << (j + 1) << ',' << detail::fmt17(ln.x) << ','
               << detail::fmt17(ln.y[j]) << ',' << detail::fmt17(ln.u[j]) << ','
               << detail::fmt17(ln.p[j]) << ',' << detail::fmt17(ln.q[j]) << ','
               << detail::fmt17(ln.a[j]) << ',' << detail::fmt17(ln.b[j]) << '\n';
        }
    }
}

json error_block(const ProblemSpec& spec, const SolutionField& field) {
    json err;
    for (char v : {'u', 'p', 'q', 'a', 'b'}) {
        const GlobalError e = global_error(field, spec.exact, v);
        err[std::string("E_") + v] = e.scaled;
        err[std::string("max_") + v] = e.max_abs;
    }
    return err;
}

json config_echo(const Opts& o) {
    json meta;
    meta["case"] = o.case_name;
    meta["method"] = o.method;
    meta["spline_order"] = o.spline_order;
    meta["n_y"] = o.n_y;
    meta["gamma"] = o.gamma;
    return meta;
}

int cmd_solve(const Opts& o) {
    const ProblemSpec spec = resolve_case(o.case_name);
    check_run_params(o);
    const SolutionField field =
        solve(spec, o.n_y, method_from_string(o.method), o.spline_order, o.gamma);

    auto fcsv = open_out(o.output_dir, "field.csv");
    write_field_csv(field, fcsv);

    json meta = config_echo(o);
    meta["n_x"] = field.n_x();
    meta["wall_seconds"] = field.wall_seconds;
    if (spec.has_exact())
        meta["errors"] = error_block(spec, field);
    else
        meta["note"] = "no exact solution";
    meta["timestamp"] = iso_timestamp();
    open_out(o.output_dir, "meta.json") << meta.dump(2) << '\n';

    std::printf("%s: n_y=%d n_x=%d wall=%.3fs\n", o.case_name.c_str(), field.n_y(),
                field.n_x(), field.wall_seconds);
    if (spec.has_exact()) {
        const GlobalError eu = global_error(field, spec.exact, 'u');
        std::printf("E[u]=%.6g (max %.6g)\n", eu.scaled, eu.max_abs);
    }
    return 0;
}

std::vector<int> parse_n_y_list(const std::string& text, int spline_order) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad resolution list entry: " + tok);
        }
        if (out.back() < 2 * spline_order + 3)
            throw UsageError("n_y too small for spline order (need at least 2*order + 3)");
    }
    if (out.empty()) throw UsageError("empty resolution list");
    return out;
}

int cmd_convergence(const Opts& o) {
    const ProblemSpec spec = resolve_case(o.case_name);
    if (!(o.gamma > 0.0 && o.gamma < 1.0)) throw UsageError("gamma out of range (0, 1)");
    const std::vector<int> list = parse_n_y_list(o.n_y_list, o.spline_order);
    const ConvergenceRecord rec = convergence_study(
        spec, list, method_from_string(o.method), o.spline_order, o.gamma);

    open_out(o.output_dir, "convergence.csv") << convergence_csv(rec);
    json orders = json::object();
    for (const auto& [name, slope] : fitted_orders(rec)) orders[name] = slope;
    open_out(o.output_dir, "orders.json") << orders.dump(2) << '\n';

    for (const auto& e : rec.entries)
        std::printf("n_y=%d n_x=%d E[u]=%s eps1=%s wall=%.3fs\n", e.n_y, e.n_x,
                    e.has_errors ? detail::fmt17(e.u.scaled).c_str() : "n/a",
                    detail::fmt17(e.eps1).c_str(), e.wall_seconds);
    for (const auto& [name, slope] : fitted_orders(rec))
        std::printf("order[%s]=%.3f\n", name.c_str(), slope);
    return 0;
}

SolutionField make_field(const ProblemSpec& spec, const Opts& o) {
    if (o.from_exact) {
        if (!spec.has_exact())
            throw UsageError("exact solution unavailable for case " + o.case_name);
        return exact_field(spec, o.n_y);
    }
    return solve(spec, o.n_y, method_from_string(o.method), o.spline_order, o.gamma);
}

int cmd_residual_map(const Opts& o) {
    const ProblemSpec spec = resolve_case(o.case_name);
    check_run_params(o);
    const SolutionField field = make_field(spec, o);
    const ResidualMap map = residual_map(spec, field);

    auto os = open_out(o.output_dir, "residual.csv");
    os << "i,j,x_center,y_center,eps1,eps2\n";
    for (const ResidualCell& c : map.cells)
        os << c.i << ',' << c.j << ',' << detail::fmt17(c.x_center) << ','
           << detail::fmt17(c.y_center) << ',' << detail::fmt17(c.eps1) << ','
           << detail::fmt17(c.eps2) << '\n';

    std::printf("cells=%zu max_eps1=%s max_eps2=%s\n", map.cells.size(),
                detail::fmt17(map.max_eps1).c_str(), detail::fmt17(map.max_eps2).c_str());
    if (map.peak1 >= 0) {
        const ResidualCell& c = map.cells[map.peak1];
        std::printf("peak eps1 at cell (%d,%d) center (%.6g, %.6g)\n", c.i, c.j, c.x_center,
                    c.y_center);
    }
    return 0;
}

int cmd_trace(const Opts& o) {
    const ProblemSpec spec = resolve_case(o.case_name);
    check_run_params(o);
    if (o.starts.empty()) throw UsageError("trace needs at least one --start x,y");
    const SolutionField field = make_field(spec, o);

    std::vector<std::pair<double, double>> starts;
    for (const std::string& s : o.starts) {
        const auto comma = s.find(',');
        try {
            if (comma == std::string::npos) throw std::invalid_argument(s);
            starts.emplace_back(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
        } catch (const std::exception&) {
            throw UsageError("bad --start value (expected x,y): " + s);
        }
    }
    std::vector<char> fams;
    if (o.family == "a" || o.family == "both") fams.push_back('a');
    if (o.family == "b" || o.family == "both") fams.push_back('b');

    for (std::size_t k = 0; k < starts.size(); ++k) {
        for (char fam : fams) {
            Polyline line;
            try {
                line = trace_characteristic(field, starts[k].first, starts[k].second,
                                            fam == 'a' ? Family::Alpha : Family::Beta);
            } catch (const std::exception& e) {
                if (std::string(e.what()).find("outside domain") != std::string::npos)
                    throw UsageError(e.what());
                throw;
            }
            char name[48];
            std::snprintf(name, sizeof(name), "trace_%02zu_%c.csv", k, fam);
            auto os = open_out(o.output_dir, name);
            os << "x,y\n";
            for (std::size_t i = 0; i < line.x.size(); ++i)
                os << detail::fmt17(line.x[i]) << ',' << detail::fmt17(line.y[i]) << '\n';
            std::printf("%s: %zu points\n", name, line.x.size());
        }
    }
    return 0;
}

void add_common(CLI::App* sub, Opts& o, bool with_n_y = true) {
    sub->add_option("--case", o.case_name, "builtin case name")->capture_default_str();
    sub->add_option("--method", o.method, "time stepping scheme")
        ->check(CLI::IsMember({"euler", "modified-euler", "me", "rk4"}))
        ->capture_default_str();
    sub->add_option("--spline-order", o.spline_order, "interpolation spline order")
        ->check(CLI::IsMember({2, 3, 5}))
        ->capture_default_str();
    if (with_n_y)
        sub->add_option("--n-y", o.n_y, "transverse grid size")->capture_default_str();
    sub->add_option("--gamma", o.gamma, "step safety factor")->capture_default_str();
    sub->add_option("--output-dir", o.output_dir, "directory for output files")
        ->capture_default_str();
    sub->add_option("--config", o.config_file, "flat key=value configuration file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"method-of-characteristics solver for u_xx u_yy - u_xy^2 + f^2 = 0"};
    app.require_subcommand(1);
    Opts o;

    CLI::App* s_solve = app.add_subcommand("solve", "march one case and dump the field");
    add_common(s_solve, o);

    CLI::App* s_conv =
        app.add_subcommand("convergence", "error and residual trends over grid sizes");
    add_common(s_conv, o, false);
    s_conv->add_option("--n-y-list", o.n_y_list, "comma separated grid sizes")
        ->capture_default_str();

    CLI::App* s_res =
        app.add_subcommand("residual-map", "per-cell integral residuals of a field");
    add_common(s_res, o);
    s_res->add_flag("--from-exact", o.from_exact,
                    "evaluate on the sampled closed form instead of solving");

    CLI::App* s_trace = app.add_subcommand("trace", "characteristic paths through a field");
    add_common(s_trace, o);
    s_trace->add_option("--start", o.starts, "start point x,y (repeatable)");
    s_trace->add_option("--family", o.family, "a, b, or both")
        ->check(CLI::IsMember({"a", "b", "both"}))
        ->capture_default_str();
    s_trace->add_flag("--from-exact", o.from_exact,
                      "trace through the sampled closed form instead of solving");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = s_solve;
        for (CLI::App* sub : {s_conv, s_res, s_trace})
            if (app.got_subcommand(sub)) active = sub;
        if (!o.config_file.empty()) apply_config_file(active, o.config_file);
        if (app.got_subcommand(s_solve)) return cmd_solve(o);
        if (app.got_subcommand(s_conv)) return cmd_convergence(o);
        if (app.got_subcommand(s_res)) return cmd_residual_map(o);
        return cmd_trace(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
