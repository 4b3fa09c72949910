#include "bilops/engine.hpp"

#include <chrono>
#include <sstream>

#include "bilops/report.hpp"
#include "bilops/verifier.hpp"

namespace bilops {

namespace {

constexpr const char* kSchemaVersion = "1.0";
constexpr long kGridLimit = 100000;

std::vector<Rational> range_values(const Json& spec) {
    Rational start = rational_from_json(spec.at("start"));
    Rational stop = rational_from_json(spec.at("stop"));
    Rational step = rational_from_json(spec.at("step"));
    if (step <= 0) throw ConfigError("grid step must be positive");
    if (stop < start) throw ConfigError("grid stop is below start");
    std::vector<Rational> out;
    for (Rational v = start; v <= stop; v += step) out.push_back(v);
    return out;
}

Json range_echo(const Json& spec) {
    Json out;
    out["start"] = rational_to_json(rational_from_json(spec.at("start")));
    out["stop"] = rational_to_json(rational_from_json(spec.at("stop")));
    out["step"] = rational_to_json(rational_from_json(spec.at("step")));
    return out;
}

GeneratorSet generators_from(const Json& req, GeneratorSet fallback) {
    std::string s = req.value("generators", std::string());
    if (s.empty()) return fallback;
    if (s == "minimal") return GeneratorSet::Minimal;
    if (s == "full") return GeneratorSet::Full;
    throw ConfigError("generators must be 'minimal' or 'full'");
}

NuPolicy nu_policy_from(const Json& req, NuPolicy fallback) {
    std::string s = req.value("nu_policy", std::string());
    if (s.empty()) return fallback;
    if (s == "all") return NuPolicy::All;
    if (s == "balanced") return NuPolicy::Balanced;
    throw ConfigError("nu_policy must be 'all' or 'balanced'");
}

std::string format_from(const Json& req) {
    std::string f = req.value("format", "json");
    if (f != "json" && f != "tsv") throw ConfigError("format must be 'json' or 'tsv'");
    return f;
}

// Classification landmarks attached to reports so regression diffs read as
// statements about the classified operators.
std::vector<std::string> solve_fixture_ids(int n, int d, const Weight& w1, const Weight& w2,
                                           const Weight& nu) {
    struct Landmark {
        int n, d;
        Weight w1, w2, nu;
        const char* id;
    };
    static const std::vector<Landmark> table = {
        {1, 3, {rat(0)}, {rat(0)}, {rat(-3)}, "n1.d3.point(0,0)"},
        {1, 3, {rat(0)}, {rat(2)}, {rat(-1)}, "n1.d3.point(0,2)"},
        {1, 3, {rat(2)}, {rat(0)}, {rat(-1)}, "n1.d3.point(2,0)"},
        {1, 3, {rat(2, 3)}, {rat(2, 3)}, {rat(-5, 3)}, "n1.d3.point(2/3,2/3).T2-dual"},
        {1, 1, {rat(0)}, {rat(0)}, {rat(-1)}, "n1.d1.origin-pair"},
        {2, 3, {rat(0), rat(-1)}, {rat(0), rat(-1)}, {rat(-2), rat(-3)}, "n2.d3.T1"},
        {2, 3, {rat(0), rat(-1)}, {rat(2), rat(1)}, {rat(0), rat(-1)}, "n2.d3.T1s1"},
        {2, 2, {rat(0), rat(0)}, {rat(0), rat(0)}, {rat(-1), rat(-1)}, "n2.d2.row1"},
        {2, 2, {rat(0), rat(0)}, {rat(0), rat(0)}, {rat(0), rat(-2)}, "n2.d2.row2"},
    };
    std::vector<std::string> out;
    for (const auto& lm : table)
        if (lm.n == n && lm.d == d && lm.w1 == w1 && lm.w2 == w2 && lm.nu == nu)
            out.push_back(lm.id);
    return out;
}

Json envelope(const std::string& command, Json config, Json results,
              std::vector<std::string> fixture_ids = {}) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = command;
    out["config"] = std::move(config);
    if (!fixture_ids.empty()) out["fixture_ids"] = fixture_ids;
    out["results"] = std::move(results);
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json cmd_solve(const Json& req, const EngineOptions& opts, std::string* tsv) {
    int n = req.at("n").get<int>();
    Weight w1, w2;
    if (req.contains("weights")) {
        auto both = weight_from_json(req.at("weights"));
        if (n != 1 || both.size() != 2)
            throw ConfigError("'weights' is the n=1 shorthand [l, m]");
        w1 = {both[0]};
        w2 = {both[1]};
    } else {
        w1 = weight_from_json(req.at("w1"));
        w2 = weight_from_json(req.at("w2"));
    }
    if (static_cast<int>(w1.size()) != n || static_cast<int>(w2.size()) != n)
        throw ConfigError("weight arity does not match n");
    int d = req.at("degree").get<int>();
    if (d < 0) throw ConfigError("degree must be >= 0");
    int trunc = req.value("truncation", -1);
    GeneratorSet gen = generators_from(req, GeneratorSet::Full);
    IrredFiber f1 = make_fiber(n, w1, trunc >= 0 ? trunc : default_truncation(d));
    IrredFiber f2 = make_fiber(n, w2, trunc >= 0 ? trunc : default_truncation(d));

    std::vector<Weight> nus;
    if (req.contains("nu")) {
        nus.push_back(weight_from_json(req.at("nu")));
        if (static_cast<int>(nus[0].size()) != n) throw ConfigError("nu arity mismatch");
    } else {
        nus = admissible_nu(f1, f2, d, NuPolicy::Balanced);
    }

    Json entries = Json::array();
    std::vector<std::string> ids;
    std::ostringstream tsv_out;
    tsv_out << "w1\tw2\tnu\tkernel_dim\n";
    for (const auto& nu : nus) {
        auto basis = singular_vectors(f1, f2, d, nu, gen);
        Json e;
        e["nu"] = weight_to_json(nu);
        e["kernel_dim"] = basis.size();
        Json bj = Json::array();
        for (const auto& v : basis) bj.push_back(jet_vector_to_json(v));
        e["basis"] = std::move(bj);
        entries.push_back(std::move(e));
        for (auto& id : solve_fixture_ids(n, d, w1, w2, nu)) ids.push_back(id);
        tsv_out << weight_str(w1) << "\t" << weight_str(w2) << "\t" << weight_str(nu) << "\t"
                << basis.size() << "\n";
    }
    if (tsv) *tsv = tsv_out.str();

    Json config;
    config["n"] = n;
    config["w1"] = weight_to_json(w1);
    config["w2"] = weight_to_json(w2);
    config["degree"] = d;
    config["generators"] = gen == GeneratorSet::Full ? "full" : "minimal";
    config["truncation"] = trunc >= 0 ? trunc : default_truncation(d);
    config["parallelism"] = opts.parallelism;
    Json results;
    results["fibers"] = Json::array({fiber_to_json(f1), fiber_to_json(f2)});
    // Constant weight vectors are density modules; report the dual density
    // twist (solver weight -t corresponds to operators on vol^t).
    auto constant_weight = [](const Weight& w) {
        for (const auto& c : w)
            if (c != w[0]) return false;
        return true;
    };
    if (constant_weight(w1) && constant_weight(w2))
        results["density_twists"] =
            Json::array({rational_to_json(-w1[0]), rational_to_json(-w2[0])});
    results["entries"] = std::move(entries);
    return envelope("solve", std::move(config), std::move(results), std::move(ids));
}

Json cmd_scan(const Json& req, const EngineOptions& opts, std::string* tsv) {
    int n = req.at("n").get<int>();
    int d = req.at("degree").get<int>();
    if (d < 0) throw ConfigError("degree must be >= 0");
    std::vector<std::pair<Weight, Weight>> grid;
    Json config;
    config["n"] = n;
    config["degree"] = d;
    if (n == 1) {
        auto values = range_values(req.at("grid"));
        for (const auto& l : values)
            for (const auto& m : values) grid.push_back({{l}, {m}});
        config["grid"] = range_echo(req.at("grid"));
    } else if (n == 2) {
        auto sl1 = range_values(req.at("sl1"));
        auto sh1 = range_values(req.at("shift1"));
        auto sl2 = range_values(req.at("sl2"));
        auto sh2 = range_values(req.at("shift2"));
        for (const auto& a : sl1)
            for (const auto& s : sh1)
                for (const auto& b : sl2)
                    for (const auto& t : sh2)
                        grid.push_back({{a + s, s}, {b + t, t}});
        config["sl1"] = range_echo(req.at("sl1"));
        config["shift1"] = range_echo(req.at("shift1"));
        config["sl2"] = range_echo(req.at("sl2"));
        config["shift2"] = range_echo(req.at("shift2"));
    } else {
        throw ConfigError("scan supports n in {1,2}");
    }
    bool allow_large = req.value("allow_large_grid", false);
    if (!allow_large && static_cast<long>(grid.size()) > kGridLimit)
        throw ConfigError("grid has " + std::to_string(grid.size()) +
                          " points; pass allow_large_grid to override");

    NuPolicy policy = nu_policy_from(req, NuPolicy::Balanced);
    GeneratorSet gen = generators_from(req, n == 1 ? GeneratorSet::Full
                                                   : GeneratorSet::Minimal);
    int trunc = req.value("truncation", -1);
    bool timing = req.value("timing", false);

    auto t0 = std::chrono::steady_clock::now();
    ScanReport rep = scan(n, d, grid, policy, gen, trunc, opts.parallelism);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();

    Json points = Json::array();
    std::ostringstream tsv_out;
    tsv_out << "w1\tw2\tnu\tkernel_dim\n";
    long total_nonzero = 0;
    for (const auto& pt : rep.points) {
        Json p;
        p["w1"] = weight_to_json(pt.w1);
        p["w2"] = weight_to_json(pt.w2);
        if (!pt.error.empty()) {
            p["error"] = pt.error;
            points.push_back(std::move(p));
            continue;
        }
        Json entries = Json::array();
        for (const auto& e : pt.entries) {
            Json ej;
            ej["nu"] = weight_to_json(e.nu);
            ej["kernel_dim"] = e.kernel_dim;
            if (e.kernel_dim > 0) {
                Json bj = Json::array();
                for (const auto& v : e.basis) bj.push_back(jet_vector_to_json(v));
                ej["basis"] = std::move(bj);
                ++total_nonzero;
            }
            entries.push_back(std::move(ej));
            tsv_out << weight_str(pt.w1) << "\t" << weight_str(pt.w2) << "\t"
                    << weight_str(e.nu) << "\t" << e.kernel_dim << "\n";
        }
        p["entries"] = std::move(entries);
        points.push_back(std::move(p));
    }
    if (tsv) *tsv = tsv_out.str();

    config["nu_policy"] = policy == NuPolicy::All ? "all" : "balanced";
    config["generators"] = gen == GeneratorSet::Full ? "full" : "minimal";
    config["truncation"] = trunc >= 0 ? trunc : default_truncation(d);
    config["parallelism"] = opts.parallelism;
    Json results;
    results["grid_points"] = grid.size();
    results["entries_with_kernel"] = total_nonzero;
    results["points"] = std::move(points);
    Json out = envelope("scan", std::move(config), std::move(results));
    if (timing) out["timing_ms"] = elapsed;
    return out;
}

Json cmd_locus(const Json& req, const EngineOptions& opts) {
    int d = req.at("degree").get<int>();
    N1Locus locus = n1_parametric_locus(d);
    Json config;
    config["degree"] = d;
    config["parallelism"] = opts.parallelism;
    Json results = locus_to_json(locus.locus);
    Json certs = Json::array();
    for (size_t i = 0; i < locus.locus.points.size(); ++i) {
        Json c;
        c["point"] = Json::array({rational_to_json(locus.locus.points[i].first),
                                  rational_to_json(locus.locus.points[i].second)});
        Json basis = Json::array();
        for (const auto& v : locus.point_kernels[i]) basis.push_back(jet_vector_to_json(v));
        c["kernel_basis"] = std::move(basis);
        certs.push_back(std::move(c));
    }
    results["certificates"] = std::move(certs);
    std::vector<std::string> ids;
    for (const auto& l : locus.locus.lines)
        ids.push_back("n1.d" + std::to_string(d) + ".line(" + l.str() + ")");
    for (const auto& [l, m] : locus.locus.points)
        ids.push_back("n1.d" + std::to_string(d) + ".point(" + to_string(l) + "," +
                      to_string(m) + ")");
    return envelope("locus", std::move(config), std::move(results), std::move(ids));
}

Json witness_to_json(const Residual& w) {
    Json out;
    out["xi"] = w.xi.str();
    out["s1"] = tensor_field_to_json(w.s1);
    out["s2"] = tensor_field_to_json(w.s2);
    out["residual"] = tensor_field_to_json(w.field);
    return out;
}

Json cmd_verify(const Json& req, const EngineOptions& opts) {
    OpId op;
    op.tag = op_tag_from_name(req.at("op").get<std::string>());
    if (req.contains("a")) op.a = rational_from_json(req.at("a"));
    if (req.contains("b")) op.b = rational_from_json(req.at("b"));
    int n = req.at("n").get<int>();
    int dmax = req.value("dmax", 3);
    int K = req.value("K", 3);
    VerifyResult r = verify(op, n, dmax, K, opts.parallelism);

    Json config;
    config["op"] = op_name(op.tag);
    if (op.tag == OpTag::P5) {
        config["a"] = rational_to_json(op.a);
        config["b"] = rational_to_json(op.b);
    }
    config["n"] = n;
    config["dmax"] = dmax;
    config["K"] = K;
    config["parallelism"] = opts.parallelism;
    Json results;
    results["pass"] = r.pass;
    results["tests_run"] = r.tests_run;
    if (r.witness) results["witness"] = witness_to_json(*r.witness);
    return envelope("verify", std::move(config), std::move(results));
}

Json cmd_fit(const Json& req, const EngineOptions& opts) {
    std::string tpl_name = req.at("template").get<std::string>();
    int n = req.value("n", 1);
    int dmax = req.value("dmax", 3);
    OpTemplate tpl;
    Json config;
    config["template"] = tpl_name;
    if (tpl_name == "density") {
        int d = req.at("degree").get<int>();
        if (n != 1) throw ConfigError("the density template is defined on the line");
        if (d < 0) throw ConfigError("degree must be >= 0");
        Rational a = rational_from_json(req.at("a"));
        Rational b = rational_from_json(req.at("b"));
        tpl = density_template(d, a, b);
        config["degree"] = d;
        config["a"] = rational_to_json(a);
        config["b"] = rational_to_json(b);
    } else if (tpl_name == "p5") {
        int p = req.value("p", 0), q = req.value("q", 0);
        tpl = p5_template(n, p, q);
        config["p"] = p;
        config["q"] = q;
    } else {
        throw ConfigError("unknown template '" + tpl_name + "' (density, p5)");
    }
    int K = req.value("K", std::max(3, req.value("degree", 0) + 1));
    auto basis = fit_coefficients(tpl, n, dmax, K, opts.parallelism);

    config["n"] = n;
    config["dmax"] = dmax;
    config["K"] = K;
    config["parallelism"] = opts.parallelism;
    Json results;
    results["dimension"] = basis.size();
    results["labels"] = tpl.labels;
    Json bj = Json::array();
    for (const auto& v : basis) {
        Json row = Json::array();
        for (const auto& c : v) row.push_back(rational_to_json(c));
        bj.push_back(std::move(row));
    }
    results["basis"] = std::move(bj);

    // The indecomposable third-order operator on the line: name which of the
    // two classically printed coefficient patterns the fitted line matches.
    if (tpl_name == "density" && req.value("degree", 0) == 3 && basis.size() == 1) {
        // labels: f'''g, f''g', f'g'', fg'''
        std::vector<Rational> dir = basis[0];
        Rational scale = 0;
        for (const auto& c : dir)
            if (c != 0) {
                scale = rat(2) / c;
                break;
            }
        std::vector<Rational> scaled;
        for (const auto& c : dir) scaled.push_back(c * scale);
        bool matches = scaled == std::vector<Rational>{rat(2), rat(3), rat(-3), rat(-2)} ||
                       scaled == std::vector<Rational>{rat(-2), rat(-3), rat(3), rat(2)};
        Json t2;
        t2["variant_a"] = "2f'''g - 2fg''' + 3f''g' - 3f'g''";
        t2["variant_b"] = "2(f'''g - fg''') - 3(f'g'' - f''g')";
        t2["note"] =
            "the two printed variants expand to the same coefficients (2,3,-3,-2)";
        t2["matches_both"] = matches;
        results["t2_resolution"] = std::move(t2);
    }
    return envelope("fit", std::move(config), std::move(results));
}

Json cmd_catalog_apply(const Json& req, const EngineOptions& opts) {
    OpId op;
    op.tag = op_tag_from_name(req.at("op").get<std::string>());
    if (req.contains("a")) op.a = rational_from_json(req.at("a"));
    if (req.contains("b")) op.b = rational_from_json(req.at("b"));
    TensorField in1 = tensor_field_from_json(req.at("in1"));
    TensorField in2 = tensor_field_from_json(req.at("in2"));
    TensorField out = apply(op, in1, in2);
    Json config;
    config["op"] = op_name(op.tag);
    if (op.tag == OpTag::P5) {
        config["a"] = rational_to_json(op.a);
        config["b"] = rational_to_json(op.b);
    }
    config["parallelism"] = opts.parallelism;
    Json results;
    results["field"] = tensor_field_to_json(out);
    return envelope("catalog_apply", std::move(config), std::move(results));
}

Json cmd_catalog_list(const EngineOptions& opts) {
    Json ops = Json::array();
    for (const auto& info : catalog_registry()) {
        Json o;
        o["id"] = info.name;
        o["order"] = info.order;
        o["signature"] = info.signature;
        o["formula"] = info.formula;
        o["invariant"] = info.invariant;
        o["min_n"] = info.min_n;
        if (info.max_n) o["max_n"] = info.max_n;
        ops.push_back(std::move(o));
    }
    Json config;
    config["parallelism"] = opts.parallelism;
    Json results;
    results["operators"] = std::move(ops);
    return envelope("catalog_list", std::move(config), std::move(results));
}

}  // namespace

std::string run_command(const std::string& request_json, const EngineOptions& opts) {
    Json req;
    try {
        req = Json::parse(request_json);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("request is not valid JSON: ") + e.what());
    }
    if (!req.is_object() || !req.contains("command"))
        throw ConfigError("request must be an object with a 'command' field");
    std::string command = req.at("command").get<std::string>();
    std::string format = format_from(req);

    try {
        if (command == "solve") {
            std::string tsv;
            Json out = cmd_solve(req, opts, &tsv);
            return format == "tsv" ? tsv : dump(out);
        }
        if (command == "scan") {
            std::string tsv;
            Json out = cmd_scan(req, opts, &tsv);
            return format == "tsv" ? tsv : dump(out);
        }
        if (format == "tsv")
            throw ConfigError("tsv output is defined for solve and scan only");
        if (command == "locus") return dump(cmd_locus(req, opts));
        if (command == "verify") return dump(cmd_verify(req, opts));
        if (command == "fit") return dump(cmd_fit(req, opts));
        if (command == "catalog_apply") return dump(cmd_catalog_apply(req, opts));
        if (command == "catalog_list") return dump(cmd_catalog_list(opts));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed request: ") + e.what());
    }
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace bilops
