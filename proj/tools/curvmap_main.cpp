// Command line front end over the curvmap C API: bound sweeps, map grids,
// Taylor tables, and the verification suites, as CSV or JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvmap/curvmap.h"

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON has no inf/nan literals; emit them as strings like the library's
// verification reports do.
json jnum(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

int fail(curvmap_status status, const std::string& context) {
    std::cerr << "error: " << context << ": " << curvmap_last_error()
              << " (status " << static_cast<int>(status) << ")\n";
    return 2;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    return 0;
}

const std::vector<std::string> class_names = {
    "general", "volume_preserving", "conformal", "quasiconformal"};

const std::vector<std::string> family_names = {
    "equidistant", "contracting", "conformal", "volume_preserving",
    "qc_optimal"};

struct bounds_options {
    std::vector<double> rho, kappa, alpha;
    int n = 3;
    std::string cls = "general";
    double Q = 1.0;
    double inj_m = std::numeric_limits<double>::infinity();
    double inj_n = std::numeric_limits<double>::infinity();
    std::string format = "csv";
    std::string out;
};

int run_bounds(const bounds_options& opt) {
    int cls = 0;
    while (cls < 4 && class_names[cls] != opt.cls) ++cls;

    struct row_data {
        double rho, kappa, alpha;
        curvmap_bound_result r;
        bool ok;
    };
    std::vector<row_data> rows;
    for (double rho : opt.rho)
        for (double kappa : opt.kappa)
            for (double alpha : opt.alpha) {
                curvmap_bound_query q;
                curvmap_bound_query_init(&q);
                q.rho = rho;
                q.kappa = kappa;
                q.n = opt.n;
                q.alpha = alpha;
                q.cls = cls;
                q.Q = opt.Q;
                q.inj_m = opt.inj_m;
                q.inj_n = opt.inj_n;
                row_data row{rho, kappa, alpha, {}, false};
                if (kappa <= rho) {
                    const curvmap_status s = curvmap_bound(&q, &row.r, nullptr);
                    if (s != CURVMAP_OK)
                        return fail(s, "bounds cell rho=" + fmt(rho) +
                                           " kappa=" + fmt(kappa) +
                                           " alpha=" + fmt(alpha));
                    row.ok = true;
                }
                rows.push_back(row);
            }

    const double nan = std::nan("");
    if (opt.format == "json") {
        json doc = json::array();
        for (const row_data& row : rows) {
            json cell = {{"rho", jnum(row.rho)},
                         {"kappa", jnum(row.kappa)},
                         {"alpha", jnum(row.alpha)},
                         {"n", opt.n},
                         {"class", opt.cls},
                         {"Q", jnum(opt.Q)},
                         {"status", row.ok ? "ok" : "invalid_pair"}};
            cell["value"] = jnum(row.ok ? row.r.value : nan);
            cell["sigma1"] = jnum(row.ok ? row.r.sigma1 : nan);
            cell["sigma2"] = jnum(row.ok ? row.r.sigma2 : nan);
            cell["validity_radius"] =
                jnum(row.ok ? row.r.validity_radius : nan);
            cell["validity_ok"] = row.ok ? row.r.validity_ok != 0 : false;
            doc.push_back(cell);
        }
        return emit(doc.dump(2) + "\n", opt.out);
    }

    std::string text = "rho,kappa,alpha,n,class,Q,value,sigma1,sigma2,"
                       "validity_radius,validity_ok,status\n";
    for (const row_data& row : rows) {
        text += fmt(row.rho) + "," + fmt(row.kappa) + "," + fmt(row.alpha) +
                "," + std::to_string(opt.n) + "," + opt.cls + "," +
                fmt(opt.Q) + ",";
        if (row.ok)
            text += fmt(row.r.value) + "," + fmt(row.r.sigma1) + "," +
                    fmt(row.r.sigma2) + "," + fmt(row.r.validity_radius) +
                    "," + std::to_string(row.r.validity_ok) + ",ok\n";
        else
            text += "nan,nan,nan,nan,0,invalid_pair\n";
    }
    return emit(text, opt.out);
}

struct map_options {
    double rho = 0.0, kappa = 0.0;
    int n = 3;
    double alpha = 1.0;
    std::string family = "equidistant";
    double sigma = 1.0;
    double Q = 1.0;
    double beta = 0.0;
    int resolution = 33;
    std::string format = "csv";
    std::string out;
};

int run_map(const map_options& opt) {
    curvmap_map* map = nullptr;
    curvmap_status s = CURVMAP_ERR_INVALID;
    if (opt.family == "equidistant")
        s = curvmap_map_equidistant(opt.rho, opt.kappa, opt.n, opt.alpha,
                                    &map);
    else if (opt.family == "contracting")
        s = curvmap_map_contracting(opt.rho, opt.kappa, opt.n, opt.alpha,
                                    opt.sigma, &map);
    else if (opt.family == "conformal")
        s = curvmap_map_conformal(opt.rho, opt.kappa, opt.n, opt.alpha,
                                  opt.sigma, &map);
    else if (opt.family == "volume_preserving")
        s = curvmap_map_volume_preserving(opt.rho, opt.kappa, opt.n,
                                          opt.alpha, &map);
    else if (opt.family == "qc_optimal")
        s = curvmap_map_qc_optimal(opt.rho, opt.kappa, opt.n, opt.alpha,
                                   opt.Q, opt.sigma, opt.beta, &map);
    if (s != CURVMAP_OK) return fail(s, "map " + opt.family);

    double exit_radius = 0.0;
    curvmap_map_chart_exit_radius(map, &exit_radius);
    const bool truncated = exit_radius < opt.alpha;

    std::vector<double> rows(5u * opt.resolution * opt.resolution);
    size_t n_rows = 0;
    s = curvmap_map_project_grid(map, opt.resolution, rows.data(), &n_rows);
    curvmap_map_destroy(map);
    if (s != CURVMAP_OK) return fail(s, "map grid");

    if (opt.format == "json") {
        json doc;
        doc["blowup_radius"] = truncated ? jnum(exit_radius) : json(nullptr);
        doc["rows"] = json::array();
        for (size_t i = 0; i < n_rows; ++i) {
            const double* r = rows.data() + 5 * i;
            doc["rows"].push_back({{"t", jnum(r[0])},
                                   {"u_index", static_cast<int>(r[1])},
                                   {"R", jnum(r[2])},
                                   {"radial_sv", jnum(r[3])},
                                   {"tangential_sv", jnum(r[4])}});
        }
        return emit(doc.dump(2) + "\n", opt.out);
    }

    std::string text;
    if (truncated) text += "# blowup_radius=" + fmt(exit_radius) + "\n";
    text += "t,u_index,R,radial_sv,tangential_sv\n";
    for (size_t i = 0; i < n_rows; ++i) {
        const double* r = rows.data() + 5 * i;
        text += fmt(r[0]) + "," + std::to_string(static_cast<int>(r[1])) +
                "," + fmt(r[2]) + "," + fmt(r[3]) + "," + fmt(r[4]) + "\n";
    }
    return emit(text, opt.out);
}

struct taylor_options {
    double kappa = 0.0;
    int n = 3;
    std::string format = "csv";
    std::string out;
};

int run_taylor(const taylor_options& opt) {
    curvmap_space* space = nullptr;
    curvmap_status s = curvmap_space_create(opt.n, opt.kappa, &space);
    if (s != CURVMAP_OK) return fail(s, "taylor space");

    const std::vector<std::string> series = {
        "sin",         "cos",         "tan",        "arctan",
        "sphere_area", "ball_volume", "iso_profile"};

    std::string text = "series,index,coefficient\n";
    json doc = json::array();
    for (int kind = 0; kind < static_cast<int>(series.size()); ++kind) {
        double coeffs[8];
        size_t len = 0;
        s = curvmap_space_taylor(space, static_cast<curvmap_series>(kind),
                                 coeffs, 8, &len);
        if (s != CURVMAP_OK) {
            curvmap_space_destroy(space);
            return fail(s, "taylor " + series[kind]);
        }
        for (size_t i = 0; i < len; ++i) {
            text += series[kind] + "," + std::to_string(i) + "," +
                    fmt(coeffs[i]) + "\n";
            doc.push_back({{"series", series[kind]},
                           {"index", i},
                           {"coefficient", jnum(coeffs[i])}});
        }
    }
    curvmap_space_destroy(space);
    if (opt.format == "json") return emit(doc.dump(2) + "\n", opt.out);
    return emit(text, opt.out);
}

struct verify_options {
    std::string suite = "all";
    std::uint64_t seed = 0;
    std::string out;
};

int run_verify(const verify_options& opt) {
    char* report = nullptr;
    int all_passed = 0;
    const curvmap_status s =
        curvmap_verify_run(opt.suite.c_str(), opt.seed, &report, &all_passed);
    if (s == CURVMAP_ERR_INVALID) {
        std::cerr << "error: " << curvmap_last_error() << "\n"
                  << "valid suites: " << curvmap_verify_suite_names() << "\n";
        return 2;
    }
    if (s != CURVMAP_OK) return fail(s, "verify " + opt.suite);
    const int rc = emit(std::string(report) + "\n", opt.out);
    curvmap_string_free(report);
    if (rc != 0) return rc;
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisometry bounds and azimuthal maps between "
                 "constant-curvature model spaces"};
    app.require_subcommand(1);

    bounds_options bopt;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "sweep sharp anisometry lower bounds over (rho, kappa, "
                  "alpha) cells");
    bounds->add_option("--rho", bopt.rho, "source curvature list")
        ->required()
        ->expected(-1);
    bounds->add_option("--kappa", bopt.kappa, "target curvature list")
        ->required()
        ->expected(-1);
    bounds->add_option("--alpha", bopt.alpha, "ball radius list")
        ->required()
        ->expected(-1);
    bounds->add_option("--n", bopt.n, "dimension, >= 2");
    bounds->add_option("--class", bopt.cls, "map class")
        ->check(CLI::IsMember(class_names));
    bounds->add_option("--Q", bopt.Q, "quasiconformality constant");
    bounds->add_option("--inj-m", bopt.inj_m, "source injectivity radius");
    bounds->add_option("--inj-n", bopt.inj_n, "target injectivity radius");
    bounds->add_option("--format", bopt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bounds->add_option("--out", bopt.out, "output path, default stdout");

    map_options mopt;
    CLI::App* map = app.add_subcommand(
        "map", "export a map profile grid: t, u_index, R, stretches");
    map->add_option("--rho", mopt.rho, "source curvature")->required();
    map->add_option("--kappa", mopt.kappa, "target curvature")->required();
    map->add_option("--alpha", mopt.alpha, "ball radius")->required();
    map->add_option("--n", mopt.n, "dimension, >= 2");
    map->add_option("--family", mopt.family, "map family")
        ->required()
        ->check(CLI::IsMember(family_names));
    map->add_option("--sigma", mopt.sigma,
                    "stretch parameter (contracting, conformal, qc_optimal)");
    map->add_option("--Q", mopt.Q, "quasiconformality constant (qc_optimal)");
    map->add_option("--beta", mopt.beta, "kink radius (qc_optimal)");
    map->add_option("--resolution", mopt.resolution, "grid nodes per axis")
        ->check(CLI::PositiveNumber);
    map->add_option("--format", mopt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    map->add_option("--out", mopt.out, "output path, default stdout");

    taylor_options topt;
    CLI::App* taylor = app.add_subcommand(
        "taylor", "small-radius series coefficients for a model space");
    taylor->add_option("--kappa", topt.kappa, "curvature")->required();
    taylor->add_option("--n", topt.n, "dimension, >= 2");
    taylor->add_option("--format", topt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    taylor->add_option("--out", topt.out, "output path, default stdout");

    verify_options vopt;
    CLI::App* verify = app.add_subcommand(
        "verify", "run a verification suite; exit 0 iff all checks pass");
    verify->add_option("suite", vopt.suite,
                       "identities, sharpness, taylor, ellipsoid, or all");
    verify->add_option("--seed", vopt.seed, "random seed");
    verify->add_option("--out", vopt.out, "output path, default stdout");

    CLI11_PARSE(app, argc, argv);

    if (bounds->parsed()) return run_bounds(bopt);
    if (map->parsed()) return run_map(mopt);
    if (taylor->parsed()) return run_taylor(topt);
    return run_verify(vopt);
}
