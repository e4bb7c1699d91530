#include "bohr/cli.hpp"

#include "bohr/bohr_solver.hpp"
#include "bohr/errors.hpp"
#include "bohr/extremal.hpp"
#include "bohr/phi_catalog.hpp"
#include "bohr/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace bohr {

namespace {

using json = nlohmann::json;

struct RunConfig {
    std::string command;
    std::string phi;
    std::vector<std::string> params;
    std::string klass = "starlike";
    double tol = 1e-12;
    int order = kDefaultOrder;
    std::uint64_t seed = 0x42;
    int samples = 200;
    std::string format = "text";
    std::string out;
    bool self_check = false;
    std::vector<double> points;
    int count = 10;
    std::optional<double> lo;
    std::optional<double> hi;
};

// A command's output: flat records plus the column order used by CSV/text.
struct Output {
    std::vector<std::string> columns;
    json records = json::array();
    int exit_code = kExitOk;
};

const std::vector<std::string> kTableColumns{"kernel", "params",    "h_one_third", "h_minus1",
                                             "threshold", "radius", "capped"};

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json num(double x) {
    if (!std::isfinite(x))
        return nullptr;
    return round12(x);
}

json num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParamOutOfRange, what); }

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, double> out;
    for (const std::string& p : raw) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            bad("--param expects key=value, got '" + p + "'");
        const std::string key = p.substr(0, eq);
        const std::string value = p.substr(eq + 1);
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v))
            bad("--param " + key + " has a non-numeric value '" + value + "'");
        if (out.contains(key))
            bad("--param " + key + " given twice");
        out[key] = v;
    }
    return out;
}

ClassKind parse_class(const RunConfig& c) {
    auto k = class_from_name(c.klass);
    if (!k)
        bad("--class must be starlike, convex, boundary_starlike or galpha, got '" + c.klass + "'");
    return *k;
}

PhiSpec make_spec(const RunConfig& c) {
    if (c.phi.empty())
        bad("--phi is required (halfplane, janowski, exponential, cardioid, rational, booth, "
            "lens, ucv)");
    PhiSpec spec = PhiSpec::from_name(c.phi, parse_params(c.params));
    validate_positivity(spec, c.order);
    return spec;
}

double galpha_alpha(const RunConfig& c) {
    const auto params = parse_params(c.params);
    for (const auto& [key, value] : params)
        if (key != "alpha")
            bad("class galpha takes only parameter 'alpha', got '" + key + "'");
    const auto it = params.find("alpha");
    if (it == params.end())
        bad("class galpha needs --param alpha=<value>");
    return it->second;
}

void check_ranges(const RunConfig& c) {
    if (!(c.tol >= kMinTolerance && c.tol <= kMaxTolerance))
        bad("--tol must lie in [1e-14, 1e-6], got " + fmt12(c.tol));
    if (c.order < 8 || c.order > kMaxOrder)
        bad("--order must lie in [8, 1024], got " + std::to_string(c.order));
    if (c.samples < 1)
        bad("--samples must be positive");
    if (c.format != "json" && c.format != "csv" && c.format != "text")
        bad("--format must be json, csv or text, got '" + c.format + "'");
}

json bohr_record(const PhiSpec& spec, const BohrResult& r, int order) {
    BuildOptions options;
    options.compute_k_minus1 = r.class_kind == ClassKind::Convex;
    const ExtremalPair pair = build_extremal(spec, order, options);
    json rec;
    rec["kernel"] = spec.name();
    rec["params"] = spec.param_string();
    rec["class"] = std::string(to_string(r.class_kind));
    rec["h_one_third"] = num(eval_h(pair, kBohrCap));
    rec["h_minus1"] = num(pair.h_minus1);
    if (r.class_kind == ClassKind::Convex) {
        rec["k_one_third"] = num(eval_k(pair, kBohrCap));
        rec["k_minus1"] = num(pair.k_minus1);
    }
    rec["threshold"] = nullptr;
    rec["radius"] = num(r.radius);
    rec["root"] = num(r.root);
    rec["capped"] = r.capped;
    rec["residual"] = num(r.residual);
    rec["bracket"] = json::array({num(r.bracket.first), num(r.bracket.second)});
    rec["order_used"] = r.order_used;
    return rec;
}

Output cmd_radius(const RunConfig& c) {
    Output o;
    o.columns = kTableColumns;
    o.columns.push_back("root");
    const ClassKind kind = parse_class(c);
    if (kind == ClassKind::BoundaryStarlike) {
        const double alpha = galpha_alpha(c);
        const BohrResult r = galpha_result(alpha);
        json rec;
        rec["kernel"] = "galpha";
        rec["params"] = "alpha=" + fmt12(alpha);
        rec["class"] = "boundary_starlike";
        rec["h_one_third"] = nullptr;
        rec["h_minus1"] = nullptr;
        rec["threshold"] = nullptr;
        rec["radius"] = num(r.radius);
        rec["root"] = num(r.root);
        rec["capped"] = false;
        rec["residual"] = num(r.residual);
        o.records.push_back(rec);
        return o;
    }
    const PhiSpec spec = make_spec(c);
    const BohrResult r = kind == ClassKind::Starlike ? starlike_bohr_radius(spec, c.tol, c.order)
                                                     : convex_bohr_radius(spec, c.tol, c.order);
    o.records.push_back(bohr_record(spec, r, c.order));
    return o;
}

Output cmd_coeffs(const RunConfig& c) {
    Output o;
    o.columns = {"n", "phi", "h", "k"};
    const PhiSpec spec = make_spec(c);
    const int count = std::min(std::max(c.count, 0), c.order);
    const TruncatedSeries phi = phi_coefficients(spec, c.order);
    const TruncatedSeries h = extremal_h_series(spec, c.order);
    const TruncatedSeries k = extremal_k_series(h);
    for (int n = 0; n <= count; ++n)
        o.records.push_back({{"n", n}, {"phi", num(phi[n])}, {"h", num(h[n])}, {"k", num(k[n])}});
    return o;
}

Output cmd_eval(const RunConfig& c) {
    Output o;
    o.columns = {"r", "h", "k", "method"};
    const PhiSpec spec = make_spec(c);
    const ExtremalPair pair = build_extremal(spec, c.order);
    std::vector<double> points = c.points;
    if (points.empty())
        points = {kBohrCap, -1.0};
    for (double r : points) {
        if (r == -1.0) {
            const BoundaryValue h = eval_h_minus1(spec, c.order);
            const BoundaryValue k = eval_k_minus1(spec, c.order);
            o.records.push_back({{"r", -1.0},
                                 {"h", num(h.value)},
                                 {"k", num(k.value)},
                                 {"method", std::string(to_string(h.method)) + "/" +
                                                std::string(to_string(k.method))}});
            continue;
        }
        o.records.push_back({{"r", num(r)},
                             {"h", num(eval_h(pair, r))},
                             {"k", num(eval_k(pair, r))},
                             {"method", has_closed_form(spec) ? "closed_form/series" : "series"}});
    }
    return o;
}

struct FamilyInfo {
    SpecFamily family;
    std::string parameter;
    double lo;
    double hi;
    std::string fixed;
};

FamilyInfo family_for(const RunConfig& c) {
    const auto params = parse_params(c.params);
    auto no_params = [&] {
        if (!params.empty())
            bad("scan over " + c.phi + " takes no --param");
    };
    if (c.phi == "exponential") {
        no_params();
        return {exponential_family(), "alpha", 0.0, 0.2, ""};
    }
    if (c.phi == "lens") {
        no_params();
        return {lens_family(), "s", 0.01, std::numbers::sqrt2 / 2.0, ""};
    }
    if (c.phi == "booth") {
        no_params();
        return {booth_family(), "alpha", 0.0, 0.99, ""};
    }
    if (c.phi == "janowski") {
        const auto it = params.find("A");
        if (it == params.end() || params.size() != 1)
            bad("scan over janowski needs exactly --param A=<value>; B is scanned");
        if (!(it->second > 0.0 && it->second <= 1.0))
            bad("scan over janowski needs 0 < A <= 1");
        return {janowski_family_b(it->second), "B", -1.0, 0.0, "A=" + fmt12(it->second)};
    }
    bad("scan supports exponential, lens, booth and janowski, got '" + c.phi + "'");
}

Output cmd_scan(const RunConfig& c) {
    Output o;
    o.columns = {"kernel", "fixed", "parameter", "threshold", "lo", "hi"};
    const ClassKind kind = parse_class(c);
    if (kind == ClassKind::BoundaryStarlike)
        bad("scan is defined for the starlike and convex classes");
    const FamilyInfo info = family_for(c);
    const double lo = c.lo.value_or(info.lo);
    const double hi = c.hi.value_or(info.hi);
    const ThresholdResult t = threshold_scan(info.family, lo, hi, c.tol, kind);
    json rec{{"kernel", c.phi},   {"fixed", info.fixed}, {"parameter", info.parameter},
             {"threshold", num(t.parameter)}, {"lo", num(lo)}, {"hi", num(hi)},
             {"increasing", t.increasing}, {"class", std::string(to_string(kind))}};
    if (c.phi == "janowski" && kind == ClassKind::Starlike) {
        const auto params = parse_params(c.params);
        const ExponentConventionReport rep = janowski_exponent_convention(params.at("A"), c.tol);
        rec["convention"] = rep.convention;
        rec["relation_residual_b_over_b_minus_a"] = num(rep.relation_residual_b_over_b_minus_a);
        rec["relation_residual_b_minus_a_over_b"] = num(rep.relation_residual_b_minus_a_over_b);
        rec["printed_root_b_over_b_minus_a"] = num(rep.printed_root_b_over_b_minus_a);
        rec["printed_root_b_minus_a_over_b"] = num(rep.printed_root_b_minus_a_over_b);
    }
    o.records.push_back(rec);
    return o;
}

Output cmd_verify(const RunConfig& c) {
    Output o;
    o.columns = {"check", "samples", "failures", "worst_margin"};
    VerifyOptions options;
    options.seed = c.seed;
    options.samples = c.samples;
    options.order = c.order;
    const ClassKind kind = parse_class(c);
    VerificationReport report;
    if (kind == ClassKind::BoundaryStarlike) {
        report = verify_galpha(galpha_alpha(c), options);
    } else {
        const PhiSpec spec = make_spec(c);
        report = kind == ClassKind::Starlike ? verify_starlike(spec, options)
                                             : verify_convex(spec, options);
    }
    for (const CheckRecord& r : report.checks)
        o.records.push_back({{"check", r.name},
                             {"samples", r.samples},
                             {"failures", r.failures},
                             {"worst_margin", num(r.worst_margin)}});
    if (!report.passed())
        o.exit_code = kExitVerification;
    return o;
}

Output cmd_table(const RunConfig& c) {
    Output o;
    o.columns = kTableColumns;
    struct Row {
        PhiSpec spec;
        std::optional<std::function<double()>> threshold;
    };
    const double tol = c.tol;
    std::vector<Row> rows{
        {certified(PhiSpec::booth(0.5)), std::nullopt},
        {certified(PhiSpec::cardioid()), std::nullopt},
        {certified(PhiSpec::exponential(0.0)),
         [tol] { return threshold_scan(exponential_family(), 0.0, 0.2, tol).parameter; }},
        {certified(PhiSpec::janowski(0.5, -0.5)),
         [tol] { return threshold_scan(janowski_family_b(0.5), -1.0, 0.0, tol).parameter; }},
        {certified(PhiSpec::lens(std::numbers::sqrt2 / 2.0)),
         [tol] {
             return threshold_scan(lens_family(), 0.01, std::numbers::sqrt2 / 2.0, tol).parameter;
         }},
        {certified(PhiSpec::rational()), std::nullopt},
    };
    for (const Row& row : rows) {
        const BohrResult r = starlike_bohr_radius(row.spec, c.tol, c.order);
        json rec = bohr_record(row.spec, r, c.order);
        rec["threshold"] = row.threshold ? num((*row.threshold)()) : json(nullptr);
        o.records.push_back(rec);
    }
    return o;
}

Output cmd_self_check() {
    Output o;
    o.columns = {"kernel", "params", "quantity", "max_abs_diff", "passed"};
    const auto records = dual_path_self_check(default_catalog(),
                                              {0.05, 0.1, 0.15, 0.2, 0.25, 0.3});
    for (const DualPathRecord& r : records) {
        o.records.push_back({{"kernel", r.kernel},
                             {"params", r.params},
                             {"quantity", r.quantity},
                             {"max_abs_diff", num(r.max_abs_diff)},
                             {"passed", r.passed}});
        if (!r.passed)
            o.exit_code = kExitNumerical;
    }
    return o;
}

std::string cell(const json& v) {
    if (v.is_null())
        return "";
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number())
        return fmt12(v.get<double>());
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

json config_json(const RunConfig& c) {
    json params = json::object();
    for (const auto& [k, v] : parse_params(c.params))
        params[k] = num(v);
    return {{"phi", c.phi.empty() ? json(nullptr) : json(c.phi)},
            {"params", params},
            {"class", c.klass},
            {"tol", num(c.tol)},
            {"order", c.order},
            {"samples", c.samples},
            {"format", c.format},
            {"self_check", c.self_check}};
}

void render(const RunConfig& c, const Output& o, std::ostream& os) {
    if (c.format == "json") {
        json doc{{"command", c.command},
                 {"config", config_json(c)},
                 {"results", o.records},
                 {"version", kVersion},
                 {"seed", c.seed}};
        os << doc.dump(2) << '\n';
        return;
    }
    const bool csv = c.format == "csv";
    if (csv) {
        for (std::size_t i = 0; i < o.columns.size(); ++i)
            os << (i ? "," : "") << o.columns[i];
        os << '\n';
    }
    for (const json& rec : o.records) {
        for (std::size_t i = 0; i < o.columns.size(); ++i) {
            const json& v = rec.contains(o.columns[i]) ? rec.at(o.columns[i]) : json(nullptr);
            if (csv)
                os << (i ? "," : "") << cell(v);
            else
                os << (i ? "  " : "") << o.columns[i] << '=' << (v.is_null() ? "-" : cell(v));
        }
        os << '\n';
    }
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParamOutOfRange:
    case ErrorKind::DomainError:
    case ErrorKind::UncertifiedSchwarz: return kExitBadParams;
    case ErrorKind::PositivityRequired: return kExitPositivity;
    default: return kExitNumerical;
    }
}

} // namespace

double round12(double x) {
    if (!std::isfinite(x))
        return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Bohr radii for Ma-Minda starlike and convex classes", "bohr"};
    app.fallthrough();
    app.add_option("--phi", c.phi, "kernel name");
    app.add_option("--param", c.params, "kernel parameter key=value (repeatable)");
    app.add_option("--class", c.klass, "starlike, convex, boundary_starlike (alias galpha)");
    app.add_option("--tol", c.tol, "root / scan tolerance in [1e-14, 1e-6]");
    app.add_option("--order", c.order, "truncation order in [8, 1024]");
    app.add_option("--seed", c.seed, "sampling seed");
    app.add_option("--samples", c.samples, "samples per verification check");
    app.add_option("--format", c.format, "json, csv or text");
    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_flag("--self-check", c.self_check, "compare closed forms with series across the catalog");
    app.add_option("--r", c.points, "evaluation points for eval (repeatable, -1 for the boundary)");
    app.add_option("--count", c.count, "number of coefficients printed by coeffs");
    app.add_option("--lo", c.lo, "scan lower bound");
    app.add_option("--hi", c.hi, "scan upper bound");
    app.add_flag_function(
        "--version", [&](std::int64_t) { throw CLI::Success(); }, "print version");

    std::map<std::string, std::function<Output(const RunConfig&)>> commands{
        {"radius", cmd_radius}, {"coeffs", cmd_coeffs}, {"eval", cmd_eval},
        {"scan", cmd_scan},     {"verify", cmd_verify}, {"table", cmd_table}};
    for (const auto& [name, fn] : commands)
        app.add_subcommand(name, name + " command");
    app.require_subcommand(0, 1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::Success&) {
        out << "bohr " << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadParams;
    }
    for (const auto* sub : app.get_subcommands())
        c.command = sub->get_name();

    try {
        check_ranges(c);
        if (c.command.empty() && !c.self_check) {
            err << "error: a command is required (radius, coeffs, eval, scan, verify, table)\n";
            return kExitBadParams;
        }
        Output o;
        if (c.self_check) {
            Output sc = cmd_self_check();
            if (sc.exit_code != kExitOk) {
                err << "error: dual-path self-check failed:\n";
                for (const json& r : sc.records)
                    if (!r.at("passed").get<bool>())
                        err << "  " << cell(r.at("kernel")) << " " << cell(r.at("params")) << " "
                            << cell(r.at("quantity")) << " diff " << cell(r.at("max_abs_diff"))
                            << '\n';
                return kExitNumerical;
            }
            if (c.command.empty()) {
                c.command = "self_check";
                o = std::move(sc);
            }
        }
        if (c.command != "self_check")
            o = commands.at(c.command)(c);

        if (c.out.empty()) {
            render(c, o, out);
        } else {
            std::ofstream file(c.out);
            if (!file) {
                err << "error: cannot open output file '" << c.out << "'\n";
                return kExitBadParams;
            }
            render(c, o, file);
        }
        if (o.exit_code == kExitVerification)
            err << "error: verification reported failures\n";
        return o.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}

} // namespace bohr
