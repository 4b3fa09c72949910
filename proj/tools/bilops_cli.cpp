// Command-line front end; all computation goes through the C API in
// bilops.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bilops.h"

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
    std::string out;
    std::string format = "json";
    int jobs = 0;  // 0: BILOPS_JOBS or 1
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--out,-o", flags.out, "write the report to this file (default stdout)");
    cmd->add_option("--format", flags.format, "report format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_option("--jobs,-j", flags.jobs,
                    "worker threads (default: BILOPS_JOBS or 1)");
}

// "start:stop:step" with exact rational bounds.
Json parse_range(const std::string& text) {
    std::istringstream in(text);
    std::string start, stop, step;
    if (!std::getline(in, start, ':') || !std::getline(in, stop, ':') ||
        !std::getline(in, step))
        throw CLI::ValidationError("range", "expected start:stop:step, got '" + text + "'");
    Json out;
    out["start"] = start;
    out["stop"] = stop;
    out["step"] = step;
    return out;
}

Json parse_weight(const std::string& text) {
    Json out = Json::array();
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("file", "cannot open '" + path + "'");
    Json out;
    in >> out;
    return out;
}

int run_request(const Json& request, const CommonFlags& flags) {
    bilops_engine* engine = bilops_engine_create(flags.jobs);
    if (!engine) {
        std::cerr << "error: cannot create engine\n";
        return BILOPS_ERR_INTERNAL;
    }
    char* result = nullptr;
    bilops_status status = bilops_run(engine, request.dump().c_str(), &result);
    int rc = 0;
    if (status != BILOPS_OK) {
        std::cerr << "error: " << bilops_last_error(engine) << "\n";
        rc = static_cast<int>(status);
    } else {
        if (flags.out.empty()) {
            std::cout << result;
        } else {
            std::ofstream out(flags.out, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << flags.out << "'\n";
                rc = BILOPS_ERR_INVALID_REQUEST;
            } else {
                out << result;
            }
        }
        bilops_string_free(result);
    }
    bilops_engine_destroy(engine);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilops: exact singular-vector solver and operator calculus "
                 "for invariant bilinear differential operators"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "kernel at fixed weights and degree");
    CommonFlags solve_flags;
    std::string s_weights, s_w1, s_w2, s_nu, s_gen = "full";
    int s_n = 1, s_degree = 0, s_trunc = -1;
    solve->add_option("--n", s_n, "manifold dimension")->required();
    solve->add_option("--degree,-d", s_degree, "operator order / jet degree")->required();
    solve->add_option("--weights", s_weights, "n=1 shorthand: l,m");
    solve->add_option("--w1", s_w1, "first fiber weight (comma-separated rationals)");
    solve->add_option("--w2", s_w2, "second fiber weight");
    solve->add_option("--nu", s_nu, "target weight (default: every balanced weight)");
    solve->add_option("--generators", s_gen, "minimal or full")
        ->check(CLI::IsMember({"minimal", "full"}));
    solve->add_option("--truncation", s_trunc, "fiber truncation override");
    add_common(solve, solve_flags);

    // scan
    auto* scan = app.add_subcommand("scan", "kernel dimensions over a weight grid");
    CommonFlags scan_flags;
    std::string g_grid, g_sl1, g_sh1 = "0:0:1", g_sl2, g_sh2 = "0:0:1";
    std::string g_policy = "balanced", g_gen;
    int g_n = 1, g_degree = 0, g_trunc = -1;
    bool g_large = false, g_timing = false;
    scan->add_option("--n", g_n, "manifold dimension")->required();
    scan->add_option("--degree,-d", g_degree, "jet degree")->required();
    scan->add_option("--grid", g_grid, "n=1: start:stop:step for both weights");
    scan->add_option("--sl1", g_sl1, "n=2: sl-weight range for the first fiber");
    scan->add_option("--shift1", g_sh1, "n=2: integer-shift range for the first fiber");
    scan->add_option("--sl2", g_sl2, "n=2: sl-weight range for the second fiber");
    scan->add_option("--shift2", g_sh2, "n=2: integer-shift range for the second fiber");
    scan->add_option("--nu-policy", g_policy, "all or balanced")
        ->check(CLI::IsMember({"all", "balanced"}));
    scan->add_option("--generators", g_gen, "minimal or full")
        ->check(CLI::IsMember({"minimal", "full"}));
    scan->add_option("--truncation", g_trunc, "fiber truncation override");
    scan->add_flag("--allow-large-grid", g_large, "lift the 10^5-point bound");
    scan->add_flag("--timing", g_timing, "include timing_ms (breaks byte-reproducibility)");
    add_common(scan, scan_flags);

    // locus
    auto* locus = app.add_subcommand("locus", "parametric (l,m) solution locus, n=1");
    CommonFlags locus_flags;
    int l_degree = 0;
    locus->add_option("--degree,-d", l_degree, "order, 1..6")->required();
    add_common(locus, locus_flags);

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustive invariance check");
    CommonFlags verify_flags;
    std::string v_op, v_a, v_b;
    int v_n = 1, v_dmax = 3, v_K = 3;
    verify->add_option("--op", v_op, "operator id (see catalog list)")->required();
    verify->add_option("--n", v_n, "manifold dimension")->required();
    verify->add_option("--dmax", v_dmax, "max coefficient degree of test fields");
    verify->add_option("--K", v_K, "max coefficient degree of test inputs");
    verify->add_option("--a", v_a, "first scalar parameter (P5)");
    verify->add_option("--b", v_b, "second scalar parameter (P5)");
    add_common(verify, verify_flags);

    // fit
    auto* fit = app.add_subcommand("fit", "invariant members of an operator template");
    CommonFlags fit_flags;
    std::string f_template = "density", f_a = "0", f_b = "0";
    int f_n = 1, f_degree = 1, f_dmax = 3, f_K = -1, f_p = 0, f_q = 0;
    fit->add_option("--template", f_template, "density or p5")
        ->check(CLI::IsMember({"density", "p5"}));
    fit->add_option("--degree,-d", f_degree, "density template order");
    fit->add_option("--a", f_a, "first density twist");
    fit->add_option("--b", f_b, "second density twist");
    fit->add_option("--p", f_p, "p5 template: first form degree");
    fit->add_option("--q", f_q, "p5 template: second form degree");
    fit->add_option("--n", f_n, "manifold dimension");
    fit->add_option("--dmax", f_dmax, "max coefficient degree of test fields");
    fit->add_option("--K", f_K, "max coefficient degree of test inputs");
    add_common(fit, fit_flags);

    // catalog
    auto* catalog = app.add_subcommand("catalog", "operator registry and application");
    auto* cat_list = catalog->add_subcommand("list", "list the registry as JSON");
    CommonFlags list_flags;
    add_common(cat_list, list_flags);
    auto* cat_apply = catalog->add_subcommand("apply", "apply an operator to two fields");
    CommonFlags apply_flags;
    std::string c_op, c_in1, c_in2, c_a, c_b;
    cat_apply->add_option("--op", c_op, "operator id")->required();
    cat_apply->add_option("--in1", c_in1, "first input field (JSON file)")->required();
    cat_apply->add_option("--in2", c_in2, "second input field (JSON file)")->required();
    cat_apply->add_option("--a", c_a, "first scalar parameter (P5)");
    cat_apply->add_option("--b", c_b, "second scalar parameter (P5)");
    add_common(cat_apply, apply_flags);
    catalog->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : BILOPS_ERR_INVALID_REQUEST;
    }

    try {
        if (solve->parsed()) {
            Json req;
            req["command"] = "solve";
            req["n"] = s_n;
            req["degree"] = s_degree;
            if (!s_weights.empty()) req["weights"] = parse_weight(s_weights);
            if (!s_w1.empty()) req["w1"] = parse_weight(s_w1);
            if (!s_w2.empty()) req["w2"] = parse_weight(s_w2);
            if (!s_nu.empty()) req["nu"] = parse_weight(s_nu);
            req["generators"] = s_gen;
            if (s_trunc >= 0) req["truncation"] = s_trunc;
            req["format"] = solve_flags.format;
            return run_request(req, solve_flags);
        }
        if (scan->parsed()) {
            Json req;
            req["command"] = "scan";
            req["n"] = g_n;
            req["degree"] = g_degree;
            if (g_n == 1) {
                if (g_grid.empty())
                    throw CLI::ValidationError("scan", "--grid is required for n=1");
                req["grid"] = parse_range(g_grid);
            } else {
                if (g_sl1.empty() || g_sl2.empty())
                    throw CLI::ValidationError("scan", "--sl1/--sl2 are required for n=2");
                req["sl1"] = parse_range(g_sl1);
                req["shift1"] = parse_range(g_sh1);
                req["sl2"] = parse_range(g_sl2);
                req["shift2"] = parse_range(g_sh2);
            }
            req["nu_policy"] = g_policy;
            if (!g_gen.empty()) req["generators"] = g_gen;
            if (g_trunc >= 0) req["truncation"] = g_trunc;
            if (g_large) req["allow_large_grid"] = true;
            if (g_timing) req["timing"] = true;
            req["format"] = scan_flags.format;
            return run_request(req, scan_flags);
        }
        if (locus->parsed()) {
            Json req;
            req["command"] = "locus";
            req["degree"] = l_degree;
            req["format"] = locus_flags.format;
            return run_request(req, locus_flags);
        }
        if (verify->parsed()) {
            Json req;
            req["command"] = "verify";
            req["op"] = v_op;
            req["n"] = v_n;
            req["dmax"] = v_dmax;
            req["K"] = v_K;
            if (!v_a.empty()) req["a"] = v_a;
            if (!v_b.empty()) req["b"] = v_b;
            req["format"] = verify_flags.format;
            return run_request(req, verify_flags);
        }
        if (fit->parsed()) {
            Json req;
            req["command"] = "fit";
            req["template"] = f_template;
            req["n"] = f_n;
            req["dmax"] = f_dmax;
            if (f_K >= 0) req["K"] = f_K;
            if (f_template == "density") {
                req["degree"] = f_degree;
                req["a"] = f_a;
                req["b"] = f_b;
            } else {
                req["p"] = f_p;
                req["q"] = f_q;
            }
            req["format"] = fit_flags.format;
            return run_request(req, fit_flags);
        }
        if (cat_list->parsed()) {
            Json req;
            req["command"] = "catalog_list";
            req["format"] = list_flags.format;
            return run_request(req, list_flags);
        }
        if (cat_apply->parsed()) {
            Json req;
            req["command"] = "catalog_apply";
            req["op"] = c_op;
            req["in1"] = load_json_file(c_in1);
            req["in2"] = load_json_file(c_in2);
            if (!c_a.empty()) req["a"] = c_a;
            if (!c_b.empty()) req["b"] = c_b;
            req["format"] = apply_flags.format;
            return run_request(req, apply_flags);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BILOPS_ERR_INVALID_REQUEST;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BILOPS_ERR_INVALID_REQUEST;
    }
    return BILOPS_ERR_INVALID_REQUEST;
}
