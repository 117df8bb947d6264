#include "hyperma/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "hyperma/residual.hpp"

namespace hyperma {

namespace detail {
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace detail

GlobalError global_error(const SolutionField& field, const ExactSolution& exact, char var) {
    if (!exact) throw std::runtime_error("exact solution unavailable");
    const GridLine& last = field.lines.back();
    const Fn2* fn = nullptr;
    const std::vector<double>* got = nullptr;
    switch (var) {
        case 'u': fn = &exact.u; got = &last.u; break;
        case 'p': fn = &exact.p; got = &last.p; break;
        case 'q': fn = &exact.q; got = &last.q; break;
        case 'a': fn = &exact.a; got = &last.a; break;
        case 'b': fn = &exact.b; got = &last.b; break;
        default: throw std::invalid_argument("unknown field variable");
    }
    GlobalError e;
    const double n = static_cast<double>(field.n_y());
    for (std::size_t j = 0; j < last.y.size(); ++j) {
        const double d = std::abs((*fn)(last.x, last.y[j]) - (*got)[j]);
        e.max_abs = std::max(e.max_abs, d);
    }
    e.scaled = e.max_abs / n;
    return e;
}

double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size()) throw std::invalid_argument("mismatched sample lengths");
    if (h.size() < 3) throw std::runtime_error("order fit needs at least three samples");
    std::vector<double> lx(h.size()), ly(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) throw std::runtime_error("cannot take log of non-positive error");
        if (!(err[i] > 0.0)) throw std::runtime_error("cannot take log of non-positive error");
        lx[i] = std::log(h[i]);
        ly[i] = std::log(err[i]);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(h.size());
    my /= static_cast<double>(h.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::runtime_error("order fit needs distinct grid spacings");
    return sxy / sxx;
}

ConvergenceRecord convergence_study(const ProblemSpec& spec, const std::vector<int>& n_y_list,
                                    Method method, int spline_order, double gamma,
                                    bool with_residual, bool concurrent) {
    if (n_y_list.empty()) throw std::invalid_argument("empty resolution list");
    ConvergenceRecord rec;
    rec.case_name = spec.name;
    rec.method = method;
    rec.spline_order = spline_order;
    rec.gamma = gamma;

    auto run_one = [&](int n_y) {
        ConvergenceEntry e;
        e.n_y = n_y;
        e.h_y = spec.domain.height() / static_cast<double>(n_y - 1);
        const SolutionField field = solve(spec, n_y, method, spline_order, gamma);
        e.n_x = field.n_x();
        e.wall_seconds = field.wall_seconds;
        if (spec.has_exact()) {
            e.has_errors = true;
            e.u = global_error(field, spec.exact, 'u');
            e.p = global_error(field, spec.exact, 'p');
            e.q = global_error(field, spec.exact, 'q');
            e.a = global_error(field, spec.exact, 'a');
            e.b = global_error(field, spec.exact, 'b');
        }
        if (with_residual) {
            const ResidualMap map = residual_map(spec, field);
            e.has_residual = true;
            e.eps1 = map.max_eps1;
            e.eps2 = map.max_eps2;
        }
        return e;
    };

    if (concurrent && n_y_list.size() > 1) {
        std::vector<std::future<ConvergenceEntry>> futs;
        futs.reserve(n_y_list.size());
        for (int n_y : n_y_list)
            futs.push_back(std::async(std::launch::async, run_one, n_y));
        for (auto& f : futs) rec.entries.push_back(f.get());
    } else {
        for (int n_y : n_y_list) rec.entries.push_back(run_one(n_y));
    }
    return rec;
}

namespace {

struct Column {
    const char* name;
    double (*get)(const ConvergenceEntry&);
    bool (*present)(const ConvergenceEntry&);
};

bool has_err(const ConvergenceEntry& e) { return e.has_errors; }
bool has_res(const ConvergenceEntry& e) { return e.has_residual; }

const Column kColumns[] = {
    {"E_u", [](const ConvergenceEntry& e) { return e.u.scaled; }, has_err},
    {"E_p", [](const ConvergenceEntry& e) { return e.p.scaled; }, has_err},
    {"E_q", [](const ConvergenceEntry& e) { return e.q.scaled; }, has_err},
    {"E_a", [](const ConvergenceEntry& e) { return e.a.scaled; }, has_err},
    {"E_b", [](const ConvergenceEntry& e) { return e.b.scaled; }, has_err},
    {"max_u", [](const ConvergenceEntry& e) { return e.u.max_abs; }, has_err},
    {"max_p", [](const ConvergenceEntry& e) { return e.p.max_abs; }, has_err},
    {"max_q", [](const ConvergenceEntry& e) { return e.q.max_abs; }, has_err},
    {"max_a", [](const ConvergenceEntry& e) { return e.a.max_abs; }, has_err},
    {"max_b", [](const ConvergenceEntry& e) { return e.b.max_abs; }, has_err},
    {"eps1", [](const ConvergenceEntry& e) { return e.eps1; }, has_res},
    {"eps2", [](const ConvergenceEntry& e) { return e.eps2; }, has_res},
};

}  // namespace

std::vector<std::pair<std::string, double>> fitted_orders(const ConvergenceRecord& rec) {
    std::vector<std::pair<std::string, double>> out;
    if (rec.entries.size() < 3) return out;
    std::vector<double> hs;
    for (const auto& e : rec.entries) hs.push_back(e.h_y);
    for (const Column& col : kColumns) {
        std::vector<double> vals;
        bool ok = true;
        for (const auto& e : rec.entries) {
            if (!col.present(e)) {
                ok = false;
                break;
            }
            const double v = col.get(e);
            if (!(v > 0.0) || !std::isfinite(v)) {
                ok = false;
                break;
            }
            vals.push_back(v);
        }
        if (ok) out.emplace_back(col.name, fit_order(hs, vals));
    }
    return out;
}

std::string convergence_csv(const ConvergenceRecord& rec) {
    std::ostringstream os;
    os << "n_y,n_x,h_y";
    for (const Column& col : kColumns) os << ',' << col.name;
    os << ",wall_seconds\n";
    for (const auto& e : rec.entries) {
        os << e.n_y << ',' << e.n_x << ',' << detail::fmt17(e.h_y);
        for (const Column& col : kColumns)
            os << ',' << (col.present(e) ? detail::fmt17(col.get(e)) : "nan");
        os << ',' << detail::fmt17(e.wall_seconds) << '\n';
    }
    return os.str();
}

}  // namespace hyperma
