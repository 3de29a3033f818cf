#include "ptorsion/cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptorsion/acceptance.hpp"
#include "ptorsion/chowring.hpp"
#include "ptorsion/scurrent.hpp"
#include "ptorsion/torsion.hpp"
#include "ptorsion/torsionform.hpp"

namespace ptorsion::cli {

namespace {

namespace bmp = boost::multiprecision;
using Json = nlohmann::ordered_json;

constexpr unsigned kMinDigits = 20;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    unsigned digits = kDefaultDigits;
    int order = series::kDefaultOrder;
    int degree = chowring::kDefaultDegree;
    std::string tol = "1e-20";
    std::string format = "json";
};

// A JSON document and, for csv output, an optional table; without a table the
// scalar fields become key,value rows.
struct Report {
    Json json;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void write_csv(const Report& r, std::ostream& out) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
        out << '\n';
    };
    if (!r.header.empty()) {
        line(r.header);
        for (const auto& row : r.rows) line(row);
        return;
    }
    line({"key", "value"});
    for (const auto& [k, v] : r.json.items())
        if (v.is_primitive()) line({k, scalar_text(v)});
}

Json header(const std::string& command, const Config& cfg) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["precision"] = cfg.digits;
    return j;
}

std::string num(const BigReal& x, const Config& cfg) { return to_decimal(x, cfg.digits); }

BigReal parse_value(const std::string& text, const char* what) {
    try {
        return parse_big(text);
    } catch (const std::exception&) {
        throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    }
}

void series_table(Report& r, const Json& coeffs) {
    r.header = {"degree", "expr", "numeric"};
    for (const auto& c : coeffs)
        r.rows.push_back({c["deg"].dump(), c["pretty"].get<std::string>(), c["numeric"].is_null() ? "" : scalar_text(c["numeric"])});
}

void class_table(Report& r, const Json& cls) {
    r.header = {"monomial", "coefficient"};
    for (const auto& [k, v] : cls.items()) r.rows.push_back({k, v.get<std::string>()});
}

Report torsion_series(int ell, const Config& cfg) {
    Report r{header("torsion", cfg)};
    torsion::TorsionResult res = torsion::torsion_infinitesimal(ell, cfg.order);
    r.json["ell"] = ell;
    r.json["order"] = res.order;
    r.json["path"] = torsion::path_name(res.path);
    r.json["constant_term"] = res.series().coeff(0).to_string();
    Json s = series::to_json(res.series(), std::nullopt, cfg.digits);
    series_table(r, s["coeffs"]);
    r.json["series"] = std::move(s);
    return r;
}

Report torsion_at(int ell, const std::string& t_text, const Config& cfg) {
    BigReal t = parse_value(t_text, "--t");
    if (t <= 0 || t >= 2 * pi_big()) throw UsageError("--t must lie in (0, 2 pi)");
    BigReal tol = parse_value(cfg.tol, "--tol");
    Report r{header("torsion", cfg)};
    BigReal value = series::evaluate(torsion::torsion_infinitesimal(ell, cfg.order).series(), t);
    BigReal group = torsion::torsion_group(ell, t);
    BigReal tdchs = torsion::tdchs_value(ell, t, tol);
    BigReal iclass = torsion::i_class_value(ell, t);
    r.json["ell"] = ell;
    r.json["t"] = t_text;
    r.json["order"] = cfg.order;
    r.json["value"] = num(value, cfg);
    r.json["torsion_group"] = num(group, cfg);
    r.json["tdchs"] = num(tdchs, cfg);
    r.json["i_class"] = num(iclass, cfg);
    r.json["chain_residual"] = to_decimal(bmp::abs(group - tdchs + iclass - value), 5);
    return r;
}

Report torsion_form_cmd(int ell, int degree, const Config& cfg) {
    Report r{header("torsion-form", cfg)};
    torsionform::TorsionFormClass f = torsionform::torsion_form(ell, degree);
    r.json["ell"] = ell;
    r.json["degree"] = degree;
    r.json["order"] = f.order;
    r.json["pretty"] = f.value.to_string();
    Json cls = chowring::to_json(f.value);
    class_table(r, cls);
    r.json["class"] = std::move(cls);
    return r;
}

Report height_cmd(const Config& cfg) {
    Report r{header("height", cfg)};
    torsionform::HeightResult h = torsionform::height_p1z();
    r.json["value"] = h.value.to_string();
    r.json["log_t_residue"] = rational_string(h.log_t_residue);
    r.json["gamma_residue"] = rational_string(h.gamma_residue);
    r.json["r_class_term"] = h.r_class_term.to_string();
    r.json["s_term"] = h.s_term.to_string();
    return r;
}

Report grr_cmd(int ell, int degree, const Config& cfg) {
    Report r{header("grr-check", cfg)};
    chowring::GrrResidual g = chowring::check_grr_cancellation(ell, degree);
    r.json["ell"] = ell;
    r.json["degree"] = degree;
    r.json["residual"] = g.residual.to_string();
    r.json["offending_degree"] = g.offending_degree < 0 ? Json(nullptr) : Json(g.offending_degree);
    r.json["r_term"] = chowring::to_json(chowring::grr_r_term(ell, degree));
    r.ok = g.offending_degree < 0;
    return r;
}

Report scurrent_cmd(const std::string& profile, const std::optional<std::string>& t_text, bool symbolic,
                    const Config& cfg) {
    scurrent::TestProfile g;
    try {
        g = scurrent::TestProfile::parse(profile);
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    }
    Report r{header("scurrent", cfg)};
    r.json["profile"] = profile;
    if (symbolic) {
        series::LaurentSeries s = scurrent::s_pairing_series_symbolic(g);
        r.json["coefficient_t^-2"] = s.coeff(-2).to_string();
        return r;
    }
    if (!t_text) throw UsageError("scurrent needs --t or --symbolic");
    BigReal t = parse_value(*t_text, "--t");
    if (t == 0) throw UsageError("--t must be nonzero");
    BigReal integral = scurrent::s_pairing_integral(g, t, parse_value(cfg.tol, "--tol"));
    BigReal ser = scurrent::s_pairing_series(g, t);
    r.json["t"] = *t_text;
    r.json["integral"] = num(integral, cfg);
    r.json["series"] = num(ser, cfg);
    r.json["difference"] = to_decimal(bmp::abs(integral - ser), 5);
    return r;
}

Report two_param_cmd(int ell, const std::string& s_text, const std::string& t_text, const Config& cfg) {
    BigReal s = parse_value(s_text, "--s");
    BigReal t = parse_value(t_text, "--t");
    BigReal tol = parse_value(cfg.tol, "--tol");
    torsion::TwoParamResult res = torsion::torsion_two_param(ell, s, t, bmp::max(tol, BigReal("1e-12")));
    Report r{header("two-param", cfg)};
    r.json["ell"] = ell;
    r.json["s"] = s_text;
    r.json["t"] = t_text;
    r.json["value"] = num(res.value, cfg);
    r.json["bilateral"] = num(res.bilateral, cfg);
    r.json["cross_checked"] = res.cross_checked;
    if (res.cross_checked)
        r.json["discrepancy"] = to_decimal(res.discrepancy, 5);
    else
        r.json["discrepancy"] = nullptr;
    return r;
}

Report selftest_cmd(const Config& cfg, std::ostream& err) {
    Report r{header("selftest", cfg)};
    Json list = Json::array();
    int passed = 0;
    r.header = {"id", "title", "pass", "detail"};
    for (const auto& c : acceptance::run_all([&](const acceptance::CriterionResult& c) {
             err << acceptance::format_line(c, true) << '\n';
         })) {
        Json item;
        item["id"] = c.id;
        item["title"] = c.title;
        item["pass"] = c.pass;
        item["detail"] = c.detail;
        list.push_back(std::move(item));
        r.rows.push_back({std::to_string(c.id), c.title, c.pass ? "true" : "false", c.detail});
        if (c.pass) ++passed;
    }
    r.json["passed"] = passed;
    r.json["total"] = acceptance::kCriteria;
    r.json["criteria"] = std::move(list);
    r.ok = passed == acceptance::kCriteria;
    return r;
}

unsigned default_digits() {
    const char* env = std::getenv(kPrecisionEnv);
    if (!env || !*env) return kDefaultDigits;
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw UsageError(std::string(kPrecisionEnv) + " is not a digit count: '" + env + "'");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    try {
        cfg.digits = default_digits();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"Equivariant torsion, torsion forms and the height of P^1 over Z"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--precision", cfg.digits, "working precision in decimal digits")->check(CLI::Range(kMinDigits, 100000u));
    app.add_option("--order", cfg.order, "series order")->check(CLI::Range(4, 400));
    app.add_option("--tol", cfg.tol, "quadrature and path-agreement tolerance");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));

    int ell = 0;
    int degree = chowring::kDefaultDegree;
    std::optional<std::string> t_text, s_text;
    std::string profile;
    bool want_series = false, symbolic = false;

    auto* torsion_cmd = app.add_subcommand("torsion", "infinitesimal torsion of O(l) on P^1");
    torsion_cmd->add_option("--ell", ell, "line bundle degree l")->required();
    auto* t_opt = torsion_cmd->add_option("--t", t_text, "evaluate at t in (0, 2 pi)");
    auto* series_opt = torsion_cmd->add_flag("--series", want_series, "print the even power series");
    t_opt->excludes(series_opt);

    auto* form_cmd = app.add_subcommand("torsion-form", "torsion form class over the base");
    form_cmd->add_option("--ell", ell)->required();
    form_cmd->add_option("--degree", degree, "total degree cap D (even)");

    auto* height_sub = app.add_subcommand("height", "height of P^1 over Z");

    auto* grr_sub = app.add_subcommand("grr-check", "R-term cancellation in the GRR comparison");
    grr_sub->add_option("--ell", ell)->required();
    grr_sub->add_option("--degree", degree, "total degree cap D (even)");

    auto* sc_sub = app.add_subcommand("scurrent", "pairing of the Bott-Chern current with a profile");
    sc_sub->add_option("--profile", profile, "even polynomial profile in r, e.g. \"r^2\"")->required();
    auto* sc_t = sc_sub->add_option("--t", t_text, "nonzero t");
    auto* sc_sym = sc_sub->add_flag("--symbolic", symbolic, "exact series coefficient");
    sc_t->excludes(sc_sym);

    auto* tp_sub = app.add_subcommand("two-param", "torsion for the pair (e^{sX}, tX)");
    tp_sub->add_option("--ell", ell)->required();
    tp_sub->add_option("--s", s_text)->required();
    tp_sub->add_option("--t", t_text)->required();

    auto* self_sub = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    if (torsion_cmd->parsed() && !want_series && !t_text) {
        err << "error: torsion needs --t or --series\n";
        return 2;
    }
    if (degree < 0 || degree % 2 != 0) {
        err << "error: --degree must be even and nonnegative\n";
        return 2;
    }
    if (cfg.digits < kMinDigits) {
        err << "error: precision must be at least " << kMinDigits << " digits\n";
        return 2;
    }

    WorkingPrecision guard(cfg.digits);
    Report report;
    try {
        if (torsion_cmd->parsed())
            report = want_series ? torsion_series(ell, cfg) : torsion_at(ell, *t_text, cfg);
        else if (form_cmd->parsed())
            report = torsion_form_cmd(ell, degree, cfg);
        else if (height_sub->parsed())
            report = height_cmd(cfg);
        else if (grr_sub->parsed())
            report = grr_cmd(ell, degree, cfg);
        else if (sc_sub->parsed())
            report = scurrent_cmd(profile, t_text, symbolic, cfg);
        else if (tp_sub->parsed())
            report = two_param_cmd(ell, *s_text, *t_text, cfg);
        else if (self_sub->parsed())
            report = selftest_cmd(cfg, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const AccuracyError& e) {
        err << "numeric failure: " << e.what() << " (partial " << e.partial() << ", error " << e.error_estimate()
            << ")\n";
        return 1;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 1;
    }

    if (cfg.format == "csv")
        write_csv(report, out);
    else
        out << report.json.dump(2) << '\n';
    return report.ok ? 0 : 1;
}

}  // namespace ptorsion::cli
