// Command-line surface: solve / curve / profile / constants / verify.
//
// Exit codes: 0 success (including the "infeasible" mathematical answer),
// 1 verification failure, 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kirchhoff/constants.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/ground_state.hpp"
#include "kirchhoff/nonlocal.hpp"
#include "kirchhoff/quadrature.hpp"
#include "kirchhoff/verify.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

struct AlphaRange {
    double min = 0.0, max = 0.0;
    int count = 0;
};

AlphaRange parse_alpha_range(const std::string& s) {
    AlphaRange r;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> r.min >> c1 >> r.max >> c2 >> r.count) || c1 != ':' || c2 != ':') {
        throw std::domain_error("--alpha-range must be min:max:count");
    }
    return r;
}

int cmd_solve(double p, double q, int n, double lambda, std::size_t mesh,
              double tol, const std::string& out) {
    kirchhoff::ProblemSpec spec{p, q, n, lambda};
    spec.validate();
    auto gs = std::make_shared<kirchhoff::GroundState>(p);
    const kirchhoff::ExactSolution sol = kirchhoff::solve_exact(spec, gs);
    const double m_quad =
        kirchhoff::m_quadrature(*gs, static_cast<double>(n), q, tol).value;

    json report{
        {"p", p}, {"q", q}, {"n", n}, {"lambda", lambda},
        {"exponent", spec.exponent()},
        {"M", {{"value", sol.m.value},
               {"method", kirchhoff::method_name(sol.m.method)},
               {"quadrature_delta", std::abs(sol.m.value - m_quad)}}},
        {"xi", gs->xi()},
    };
    switch (sol.kind) {
        case kirchhoff::SolutionKind::unique: {
            report["variant"] = "unique";
            report["t_lambda"] = sol.amplitude;
            report["alpha"] = kirchhoff::alpha_of_lambda(sol);
            const kirchhoff::ResidualReport rr =
                kirchhoff::residual_check(sol, mesh);
            report["residual"] = json{
                {"mesh_sizes", rr.mesh_sizes},
                {"max_norms", rr.max_norms},
                {"l2_norms", rr.l2_norms},
                {"observed_order", rr.observed_order},
                {"coefficient", rr.coefficient},
                {"coefficient_rel_dev", rr.coefficient_rel_dev}};
            break;
        }
        case kirchhoff::SolutionKind::family:
            report["variant"] = "family";
            report["family"] = "u = t*W_p for every t > 0 at lambda = M";
            break;
        case kirchhoff::SolutionKind::infeasible:
            report["variant"] = "infeasible";
            break;
    }
    write_output(out, report.dump(2) + "\n");
    return 0;
}

int cmd_curve(double p, double q, int n, const AlphaRange& range,
              const std::string& out) {
    kirchhoff::GroundState gs(p);
    const kirchhoff::BifurcationCurve curve =
        kirchhoff::bifurcation_curve(gs, n, q, range.min, range.max, range.count);
    std::ostringstream os;
    os << "alpha,lambda\n";
    for (const auto& [a, l] : curve.samples) {
        os << fmt17(a) << "," << fmt17(l) << "\n";
    }
    write_output(out, os.str());
    return 0;
}

int cmd_profile(double p, std::optional<double> q, std::optional<int> n,
                std::optional<double> lambda, std::size_t mesh,
                const std::string& out) {
    kirchhoff::GroundState gs(p);
    double scale = 1.0;
    if (lambda) {
        if (!q || !n) {
            throw std::domain_error("profile of u_lambda needs --q and --n");
        }
        kirchhoff::ProblemSpec spec{p, *q, *n, *lambda};
        spec.validate();
        const kirchhoff::ExactSolution sol = kirchhoff::solve_exact(
            spec, std::make_shared<kirchhoff::GroundState>(p));
        if (sol.kind != kirchhoff::SolutionKind::unique) {
            throw std::domain_error(
                "profile: no unique solution for these parameters");
        }
        scale = sol.amplitude;
    }
    std::ostringstream os;
    os << "x,u\n";
    for (std::size_t i = 0; i <= mesh; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(mesh);
        os << fmt17(x) << "," << fmt17(scale * gs.evaluate_w(x)) << "\n";
    }
    write_output(out, os.str());
    return 0;
}

int cmd_constants(double p, const std::string& indices, double tol,
                  const std::string& out) {
    kirchhoff::GroundState gs(p);
    std::ostringstream os;
    os << "kind,k,d,value,method,delta\n";

    std::istringstream list(indices);
    std::string item;
    while (std::getline(list, item, ',')) {
        if (item.empty()) continue;
        std::istringstream is(item);
        std::string kind, ks, ds;
        if (!std::getline(is, kind, ':') || !std::getline(is, ks, ':') ||
            !std::getline(is, ds, ':')) {
            throw std::domain_error("bad index entry (want KIND:k:d): " + item);
        }
        auto parse_num = [&](const std::string& s) {
            if (s == "p") return p;
            return std::stod(s);
        };
        const double k = parse_num(ks);
        const double d = parse_num(ds);

        double value = 0.0, crosscheck = 0.0;
        kirchhoff::Method method = kirchhoff::Method::quadrature;
        if (kind == "L") {
            value = kirchhoff::l_constant(k, d, tol).value;
            crosscheck =
                kirchhoff::beta_oracle((d + 1.0) / (k + 1.0), 0.5) / (k + 1.0);
        } else if (kind == "S") {
            try {
                const auto c = kirchhoff::s_closed_form(gs, k, d);
                value = c.value;
                method = c.method;
            } catch (const kirchhoff::NoClosedFormError&) {
                try {
                    const auto c = (k == 1.0) ? kirchhoff::s1_recursion(gs, d)
                                              : kirchhoff::s2_recursion(gs, d);
                    value = c.value;
                    method = c.method;
                } catch (const kirchhoff::UnsupportedIndexError&) {
                    value = kirchhoff::s_quadrature(gs, k, d, tol).value;
                }
            }
            crosscheck = kirchhoff::s_quadrature(gs, k, d, tol).value;
        } else if (kind == "M") {
            const auto c = kirchhoff::m_constant(gs, static_cast<int>(k), d);
            value = c.value;
            method = c.method;
            crosscheck = kirchhoff::m_quadrature(gs, k, d, tol).value;
        } else if (kind == "R") {
            const auto c = kirchhoff::r_constant(gs, static_cast<int>(k), d);
            value = c.value;
            method = c.method;
            crosscheck = kirchhoff::r_quadrature(gs, k, d, tol).value;
        } else {
            throw std::domain_error("unknown constant kind: " + kind);
        }
        os << kind << "," << fmt17(k) << "," << fmt17(d) << "," << fmt17(value)
           << "," << kirchhoff::method_name(method) << ","
           << fmt17(std::abs(value - crosscheck)) << "\n";
    }
    write_output(out, os.str());
    return 0;
}

int cmd_verify(const std::vector<double>& p_grid, const std::string& out) {
    const json report = kirchhoff::run_verification(
        p_grid.empty() ? std::vector<double>{1.5, 2.0, 3.0} : p_grid);
    write_output(out, report.dump(2) + "\n");
    return report.at("all_pass").get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solutions and bifurcation curves of the one-dimensional "
                 "nonlocal Kirchhoff problem with weight (1-x)^n"};
    app.require_subcommand(1);

    double p = 0.0, q = 0.0, lambda = 0.0;
    int n = 1;
    std::size_t mesh = 256;
    double tol = kirchhoff::kDefaultQuadTol;
    std::string out, format, alpha_range_str, indices;
    std::vector<double> p_grid;

    auto* solve = app.add_subcommand("solve", "solve for given (p, q, n, lambda)");
    solve->add_option("--p", p)->required();
    solve->add_option("--q", q)->required();
    solve->add_option("--n", n)->required();
    solve->add_option("--lambda", lambda)->required();
    solve->add_option("--mesh", mesh);
    solve->add_option("--tol", tol);
    solve->add_option("--out", out);
    solve->add_option("--format", format);

    auto* curve = app.add_subcommand("curve", "bifurcation curve samples (CSV)");
    curve->add_option("--p", p)->required();
    curve->add_option("--q", q)->required();
    curve->add_option("--n", n)->required();
    curve->add_option("--alpha-range", alpha_range_str, "min:max:count")->required();
    curve->add_option("--out", out);
    curve->add_option("--format", format);

    auto* profile = app.add_subcommand(
        "profile", "sampled profile of W_p, or of u_lambda when --lambda is given");
    profile->add_option("--p", p)->required();
    auto* prof_q = profile->add_option("--q", q);
    auto* prof_n = profile->add_option("--n", n);
    auto* prof_l = profile->add_option("--lambda", lambda);
    profile->add_option("--mesh", mesh);
    profile->add_option("--out", out);
    profile->add_option("--format", format);

    auto* constants = app.add_subcommand("constants", "moment-constant table (CSV)");
    constants->add_option("--p", p)->required();
    constants->add_option("--indices", indices,
                          "comma list of KIND:k:d, e.g. S:1:0,L:3:3,M:2:4")
        ->required();
    constants->add_option("--tol", tol);
    constants->add_option("--out", out);
    constants->add_option("--format", format);

    auto* verify = app.add_subcommand("verify", "self-verification report (JSON)");
    verify->add_option("--p", p_grid, "p grid (default 1.5 2 3)");
    verify->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(p, q, n, lambda, mesh, tol, out);
        if (curve->parsed()) {
            return cmd_curve(p, q, n, parse_alpha_range(alpha_range_str), out);
        }
        if (profile->parsed()) {
            return cmd_profile(
                p, prof_q->count() ? std::optional<double>(q) : std::nullopt,
                prof_n->count() ? std::optional<int>(n) : std::nullopt,
                prof_l->count() ? std::optional<double>(lambda) : std::nullopt,
                mesh, out);
        }
        if (constants->parsed()) return cmd_constants(p, indices, tol, out);
        if (verify->parsed()) return cmd_verify(p_grid, out);
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const kirchhoff::DegenerateCaseError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
