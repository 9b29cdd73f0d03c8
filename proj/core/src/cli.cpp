#include "mslab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mslab/arith.hpp"
#include "mslab/constants.hpp"
#include "mslab/errors.hpp"
#include "mslab/estermann.hpp"
#include "mslab/parallel.hpp"
#include "mslab/report.hpp"
#include "mslab/version.hpp"
#include "mslab/zeta.hpp"
#include "verify_internal.hpp"

namespace mslab::cli {

namespace {

using nlohmann::ordered_json;

const char* kCommandNames[] = {"sum", "scan", "constants", "moments", "estermann", "verify",
                               "report"};

std::string hex16(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("invalid unsigned integer for ") + what + ": " + s);
    }
}

double parse_f64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("invalid number for ") + what + ": " + s);
    }
}

// "<re>+<im>i" with optional sign and exponent, e.g. "0.5+14.134725i",
// "-0.5+2i", "0.3-2i", "2+0i".
complex parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace((unsigned char)c)) s.push_back(c);
    if (s.empty()) throw ValidationError("empty complex literal");
    if (s.back() != 'i') return complex(parse_f64(s, "complex"), 0.0);
    s.pop_back();
    // split at the last '+'/'-' that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw ValidationError("complex literal must look like <re>+<im>i: " + raw);
    double re = parse_f64(s.substr(0, split), "complex real part");
    std::string im_part = s.substr(split);
    if (im_part == "+" || im_part == "-") im_part += "1";
    double im = parse_f64(im_part, "complex imaginary part");
    return complex(re, im);
}

struct Handled {
    ordered_json results;
    ReportArtifact artifact;
    std::string primary_stdout;  // if non-empty, printed instead of the summary
};

Handled cmd_sum(const RunConfig& cfg) {
    const std::string kind = cfg.params.at("kind");
    uint64_t x = parse_u64(cfg.params.at("x"), "--x");
    std::string method = cfg.params.count("method") ? cfg.params.at("method") : std::string();
    if (method.empty()) method = kind == "dcube" ? "direct" : "sublinear";

    int128 value = 0;
    if (kind == "d2") {
        value = method == "direct" ? summatory_direct(x, SumKind::d2) : summatory_d2(x);
    } else if (kind == "d4") {
        value = method == "direct" ? summatory_direct(x, SumKind::d4) : summatory_d4(x);
    } else if (kind == "dcube") {
        if (method != "direct")
            throw ValidationError("sum: kind dcube has no sublinear method");
        value = summatory_direct(x, SumKind::d_cube);
    } else {
        throw ValidationError("sum: --kind must be d2, d4 or dcube");
    }
    Handled h;
    h.results["kind"] = kind;
    h.results["x"] = x;
    h.results["method"] = method;
    h.results["value"] = to_string(value);
    h.primary_stdout = to_string(value) + "\n";
    return h;
}

Series series_from(const std::string& s, const char* who) {
    if (s == "d2") return Series::d2;
    if (s == "dcube") return Series::d_cube;
    throw ValidationError(std::string(who) + ": series/kind must be d2 or dcube");
}

Handled cmd_scan(const RunConfig& cfg) {
    Series series = series_from(cfg.params.at("kind"), "scan");
    uint64_t from = parse_u64(cfg.params.at("from"), "--from");
    uint64_t to = parse_u64(cfg.params.at("to"), "--to");
    uint64_t points = parse_u64(cfg.params.at("points"), "--points");
    if (points < 2 || points > 100000) throw ValidationError("scan: points must be in [2, 1e5]");
    std::string out = cfg.params.at("out");

    std::string checkpoint =
        (std::filesystem::path(cfg.cache_dir) / ("scan-" + hex16(config_key(cfg)) + ".jsonl"))
            .string();
    auto rows = scan_error_term(from, to, unsigned(points), series, checkpoint, cfg.threads);
    emit_scan_csv(rows, out);

    double max_abs_ratio = 0;
    for (const auto& r : rows) max_abs_ratio = std::max(max_abs_ratio, std::abs(r.ratio));
    Handled h;
    h.results["kind"] = cfg.params.at("kind");
    h.results["rows"] = rows.size();
    h.results["max_abs_ratio"] = max_abs_ratio;
    h.results["csv"] = out;
    h.results["checkpoint"] = checkpoint;
    h.artifact.csv_path = out;
    return h;
}

std::string sig_digits(double v, unsigned digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", int(digits), v);
    return buf;
}

Handled cmd_constants(const RunConfig& cfg) {
    Series series = series_from(cfg.params.at("series"), "constants");
    unsigned digits = 12;
    if (cfg.params.count("digits"))
        digits = unsigned(std::clamp<uint64_t>(parse_u64(cfg.params.at("digits"), "--digits"), 1, 17));

    MainTermPoly poly = main_term_coefficients(series);
    Handled h;
    h.results["series"] = cfg.params.at("series");
    h.results["A"] = poly.a;
    h.results["B"] = poly.b;
    h.results["C"] = poly.c;
    h.results["D"] = poly.d;
    h.results["digits_valid"] = poly.digits_valid;
    h.results["display"] = {{"A", sig_digits(poly.a, digits)},
                            {"B", sig_digits(poly.b, digits)},
                            {"C", sig_digits(poly.c, digits)},
                            {"D", sig_digits(poly.d, digits)}};
    if (series == Series::d2) {
        double pi = 3.141592653589793238462643383279502884;
        double gamma = stieltjes(0);
        double zp2 = zeta_derivatives(2.0)[1];
        double ref_a = 1.0 / (pi * pi);
        double ref_b = (12.0 * gamma - 3.0) / (pi * pi) - 36.0 * zp2 / (pi * pi * pi * pi);
        h.results["reference_A"] = ref_a;
        h.results["reference_B"] = ref_b;
        h.results["delta_A"] = poly.a - ref_a;
        h.results["delta_B"] = poly.b - ref_b;
    }
    return h;
}

Handled cmd_moments(const RunConfig& cfg) {
    const std::string which = cfg.params.at("which");
    double t_max = parse_f64(cfg.params.at("t-max"), "--t-max");
    double k = cfg.params.count("k") ? parse_f64(cfg.params.at("k"), "--k") : 1.0;
    IntegralEstimate est;
    if (which == "fourth") {
        k = 0.0;
        est = fourth_moment(t_max, 1e-4, cfg.threads);
    } else if (which == "ratio") {
        est = ratio_moment(t_max, k, 1e-4, cfg.threads);
    } else {
        throw ValidationError("moments: --which must be fourth or ratio");
    }
    double lt = std::log(t_max);
    double normalized = est.value / (t_max * lt * lt * lt * lt);

    std::string out = cfg.params.at("out");
    std::string csv = "t_max,k,value,abs_err,panels,normalized\n";
    csv += format_double(t_max) + "," + format_double(k) + "," + format_double(est.value) + "," +
           format_double(est.abs_err) + "," + std::to_string(est.panels) + "," +
           format_double(normalized) + "\n";
    atomic_write_file(out, csv);

    Handled h;
    h.results["which"] = which;
    h.results["t_max"] = t_max;
    h.results["k"] = k;
    h.results["value"] = est.value;
    h.results["abs_err"] = est.abs_err;
    h.results["panels"] = est.panels;
    h.results["normalized"] = normalized;
    h.results["csv"] = out;
    h.artifact.csv_path = out;
    return h;
}

Handled cmd_estermann(const RunConfig& cfg) {
    complex s = parse_complex(cfg.params.at("s"));
    int64_t hh = 0;
    try {
        std::size_t pos = 0;
        hh = std::stoll(cfg.params.at("h"), &pos);
        if (pos != cfg.params.at("h").size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ValidationError("invalid integer for --h: " + cfg.params.at("h"));
    }
    uint64_t k = parse_u64(cfg.params.at("k"), "--k");
    FareyArg arg(hh, k);
    const std::string check = cfg.params.at("check");

    Handled h;
    h.results["s"] = {{"re", s.real()}, {"im", s.imag()}};
    h.results["h"] = arg.h;
    h.results["k"] = arg.k;
    h.results["h_bar"] = arg.h_bar;
    h.results["check"] = check;
    if (check == "value") {
        complex v = estermann_hurwitz(s, arg);
        h.results["value"] = {{"re", v.real()}, {"im", v.imag()}};
        if (s.real() >= 1.25) {
            EstermannValue dir = estermann_dirichlet(s, arg, 20000);
            h.results["dirichlet"] = {{"re", dir.value.real()},
                                      {"im", dir.value.imag()},
                                      {"tail_bound", dir.tail_bound},
                                      {"agreement", std::abs(dir.value - v)}};
        }
    } else if (check == "functional") {
        double res = functional_equation_residual(s, arg);
        h.results["residual"] = res;
        h.results["pass"] = res < 1e-6;
    } else if (check == "laurent") {
        LaurentData ld = laurent_at_one(arg);
        double gamma = stieltjes(0);
        double want_m2 = 1.0 / double(arg.k);
        double want_m1 = 2.0 * (gamma - std::log(double(arg.k))) / double(arg.k);
        h.results["c_m2"] = ld.c_m2;
        h.results["c_m1"] = ld.c_m1;
        h.results["expected_c_m2"] = want_m2;
        h.results["expected_c_m1"] = want_m1;
        h.results["pass"] =
            std::abs(ld.c_m2 - want_m2) < 1e-6 && std::abs(ld.c_m1 - want_m1) < 1e-6;
    } else {
        throw ValidationError("estermann: --check must be value, functional or laurent");
    }
    return h;
}

Handled cmd_verify(const RunConfig& cfg) {
    uint64_t trials = parse_u64(cfg.params.at("trials"), "--trials");
    Handled h;
    h.results = verify::run_suite(cfg.params.at("suite"), trials, cfg.seed, cfg.threads);
    return h;
}

Handled cmd_report(const RunConfig& cfg) {
    std::string in = cfg.params.at("in");
    std::string svg = cfg.params.at("svg");
    std::string field = cfg.params.count("y-field") ? cfg.params.at("y-field") : "ratio";
    auto rows = read_scan_csv(in);
    emit_svg_plot(rows, field, svg);
    Handled h;
    h.results["in"] = in;
    h.results["rows"] = rows.size();
    h.results["y_field"] = field;
    h.results["svg"] = svg;
    h.artifact.svg_path = svg;
    return h;
}

}  // namespace

const char* command_name(Command c) { return kCommandNames[int(c)]; }

uint64_t config_key(const RunConfig& config) {
    uint64_t hash = 1469598103934665603ull;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            hash ^= c;
            hash *= 1099511628211ull;
        }
        hash ^= 0xff;
        hash *= 1099511628211ull;
    };
    feed(command_name(config.command));
    for (const auto& [k, v] : config.params) {
        feed(k);
        feed(v);
    }
    feed(kVersion);
    return hash;
}

RunConfig parse_command_line(const std::vector<std::string>& args) {
    CLI::App app{"divisor mean-square laboratory"};
    app.fallthrough();

    std::string config_file, cache_dir_flag, summary_flag;
    uint64_t seed_flag = 0;
    unsigned threads_flag = 0;
    auto* config_opt = app.add_option("--config", config_file, "JSON config file");
    auto* cache_opt = app.add_option("--cache-dir", cache_dir_flag, "checkpoint/cache directory");
    auto* threads_opt = app.add_option("--threads", threads_flag, "worker pool size");
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed for randomized suites");
    app.add_option("--summary", summary_flag, "JSON summary output path");

    std::map<std::string, std::string> p;

    auto* sum = app.add_subcommand("sum", "summatory function value");
    sum->add_option("--kind", p["sum.kind"], "d2|d4|dcube")->required();
    sum->add_option("--x", p["sum.x"], "upper limit")->required();
    sum->add_option("--method", p["sum.method"], "direct|sublinear");

    auto* scan = app.add_subcommand("scan", "error-term scan over a geometric grid");
    scan->add_option("--kind", p["scan.kind"], "d2|dcube")->required();
    scan->add_option("--from", p["scan.from"], "grid start")->required();
    scan->add_option("--to", p["scan.to"], "grid end")->required();
    scan->add_option("--points", p["scan.points"], "grid points")->required();
    scan->add_option("--out", p["scan.out"], "CSV output path")->required();

    auto* consts = app.add_subcommand("constants", "main-term polynomial coefficients");
    consts->add_option("--series", p["constants.series"], "d2|dcube")->required();
    consts->add_option("--digits", p["constants.digits"], "display digits");

    auto* moments = app.add_subcommand("moments", "zeta moment integrals");
    moments->add_option("--which", p["moments.which"], "fourth|ratio")->required();
    moments->add_option("--k", p["moments.k"], "denominator exponent (ratio)");
    moments->add_option("--t-max", p["moments.t-max"], "integration endpoint")->required();
    moments->add_option("--out", p["moments.out"], "CSV output path")->required();

    auto* est = app.add_subcommand("estermann", "twisted divisor Dirichlet series");
    est->set_help_flag("--help", "print help");  // frees -h for the numerator flag
    est->add_option("--s", p["estermann.s"], "complex point, <re>+<im>i")->required();
    est->add_option("--h", p["estermann.h"], "numerator")->required();
    est->add_option("--k", p["estermann.k"], "denominator")->required();
    est->add_option("--check", p["estermann.check"], "value|functional|laurent")->required();

    auto* verify = app.add_subcommand("verify", "randomized verifier suites");
    verify->add_option("--suite", p["verify.suite"], "suite name")->required();
    verify->add_option("--trials", p["verify.trials"], "trial count")->required();

    auto* report = app.add_subcommand("report", "render a scan CSV as SVG");
    report->add_option("--in", p["report.in"], "input CSV")->required();
    report->add_option("--svg", p["report.svg"], "SVG output path")->required();
    report->add_option("--y-field", p["report.y-field"], "sum|main_term|error_term|ratio");

    std::vector<std::string> argv_vec = args;
    std::vector<const char*> argv;
    argv.push_back("mslab");
    for (const auto& a : argv_vec) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        throw;  // handled by the binary
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }

    RunConfig cfg;
    CLI::App* chosen = nullptr;
    if (sum->parsed()) cfg.command = Command::sum, chosen = sum;
    else if (scan->parsed()) cfg.command = Command::scan, chosen = scan;
    else if (consts->parsed()) cfg.command = Command::constants, chosen = consts;
    else if (moments->parsed()) cfg.command = Command::moments, chosen = moments;
    else if (est->parsed()) cfg.command = Command::estermann, chosen = est;
    else if (verify->parsed()) cfg.command = Command::verify, chosen = verify;
    else if (report->parsed()) cfg.command = Command::report, chosen = report;
    if (!chosen) throw ValidationError("a subcommand is required (see --help)");

    std::string prefix = std::string(command_name(cfg.command)) + ".";
    for (auto& [key, value] : p) {
        if (key.rfind(prefix, 0) == 0 && !value.empty())
            cfg.params[key.substr(prefix.size())] = value;
    }
    if (!summary_flag.empty()) cfg.params["summary"] = summary_flag;

    // precedence: flag > config file > environment > default
    nlohmann::json file_cfg;
    if (config_opt->count()) {
        std::ifstream in(config_file);
        if (!in) throw ValidationError("cannot open config file: " + config_file);
        try {
            in >> file_cfg;
        } catch (const std::exception& e) {
            throw ValidationError(std::string("config file parse error: ") + e.what());
        }
    }

    if (threads_opt->count()) {
        cfg.threads = threads_flag;
    } else if (file_cfg.contains("threads")) {
        cfg.threads = file_cfg["threads"].get<unsigned>();
    } else if (const char* env = std::getenv("MSLAB_THREADS")) {
        cfg.threads = unsigned(parse_u64(env, "MSLAB_THREADS"));
    } else {
        cfg.threads = hardware_threads();
    }
    if (cfg.threads < 1) throw ValidationError("threads must be >= 1");

    if (cache_opt->count()) {
        cfg.cache_dir = cache_dir_flag;
    } else if (file_cfg.contains("cache_dir")) {
        cfg.cache_dir = file_cfg["cache_dir"].get<std::string>();
    } else if (const char* env = std::getenv("MSLAB_CACHE_DIR")) {
        cfg.cache_dir = env;
    } else {
        cfg.cache_dir = ".mslab-cache";
    }

    if (seed_opt->count()) cfg.seed = seed_flag;
    else if (file_cfg.contains("seed")) cfg.seed = file_cfg["seed"].get<uint64_t>();

    return cfg;
}

ReportArtifact run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    auto start = std::chrono::steady_clock::now();
    std::error_code ec;
    std::filesystem::create_directories(config.cache_dir, ec);
    if (ec) throw ValidationError("cannot create cache dir: " + config.cache_dir);

    Handled h;
    switch (config.command) {
        case Command::sum: h = cmd_sum(config); break;
        case Command::scan: h = cmd_scan(config); break;
        case Command::constants: h = cmd_constants(config); break;
        case Command::moments: h = cmd_moments(config); break;
        case Command::estermann: h = cmd_estermann(config); break;
        case Command::verify: h = cmd_verify(config); break;
        case Command::report: h = cmd_report(config); break;
    }

    ordered_json summary;
    summary["version"] = kVersion;
    summary["command"] = command_name(config.command);
    ordered_json params;
    for (const auto& [k, v] : config.params) params[k] = v;
    params["seed"] = config.seed;
    summary["params"] = params;
    summary["results"] = h.results;
    // byte-identical reruns are a contract; measured wall time goes to the
    // diagnostic stream instead.
    summary["wall_ms"] = 0;
    summary["warnings"] = ordered_json::array();

    std::string summary_path = config.params.count("summary")
                                   ? config.params.at("summary")
                                   : (std::filesystem::path(config.cache_dir) /
                                      ("summary-" + std::string(command_name(config.command)) +
                                       "-" + hex16(config_key(config)) + ".json"))
                                         .string();
    atomic_write_file(summary_path, summary.dump(2) + "\n");
    h.artifact.json_summary_path = summary_path;

    if (!h.primary_stdout.empty())
        out << h.primary_stdout;
    else
        out << summary.dump(2) << "\n";

    auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    ordered_json d;
    d["event"] = "run";
    d["command"] = command_name(config.command);
    d["wall_ms"] = wall;
    diag << d.dump() << "\n";
    return h.artifact;
}

}  // namespace mslab::cli
