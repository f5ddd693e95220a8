#include "nodal/app.hpp"

#include "nodal/cobordism.hpp"
#include "nodal/errors.hpp"
#include "nodal/json_io.hpp"
#include "nodal/quasimodular.hpp"
#include "nodal/severi.hpp"
#include "nodal/universal.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <thread>

namespace nodal {

namespace {

using nlohmann::json;

constexpr const char* cache_env = "NODAL_SEVERI_CACHE";

const char* format_name(OutputFormat f)
{
    switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::pretty: return "pretty";
    }
    return "json";
}

unsigned worker_count(unsigned requested)
{
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json class_json(const PairClass& v)
{
    return json::array({v.L2, v.LK, v.c1sq, v.c2});
}

PairClass class_from_list(const std::vector<long>& v, const char* name)
{
    if (v.size() != 4) throw ValidationError(std::string(name) + " needs four integers L2,LK,c1sq,c2");
    return class_of(surfaces::Raw{{v[0], v[1], v[2], v[3]}});
}

json polynomial_json(const UniversalPolynomial& t)
{
    json terms = json::array();
    for (const auto& [e, c] : t.polynomial.terms())
        terms.push_back({{"exponents", json::array({e[0], e[1], e[2], e[3]})}, {"coeff", to_string(c)}});
    return {{"r", t.r}, {"terms", std::move(terms)}};
}

std::string polynomial_text(const UniversalPolynomial& t)
{
    static const char* names[] = {"L2", "LK", "c1sq", "c2"};
    if (t.polynomial.is_zero()) return "0";
    std::string out;
    // Highest total degree first, then lexicographic.
    std::vector<std::pair<Polynomial4::Exponents, Rational>> terms(t.polynomial.terms().begin(), t.polynomial.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        const auto da = a.first[0] + a.first[1] + a.first[2] + a.first[3];
        const auto db = b.first[0] + b.first[1] + b.first[2] + b.first[3];
        if (da != db) return da > db;
        return a.first > b.first;
    });
    for (const auto& [e, c] : terms) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < 4; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + "*" + mono;
    }
    return out;
}

std::string series_text(const PowerSeries& s, int valuation = 0)
{
    std::ostringstream os;
    bool first = true;
    for (int n = 0; n <= s.order(); ++n) {
        if (s[n] == 0) continue;
        const int e = n + valuation;
        const bool negative = s[n] < 0;
        const Rational mag = negative ? Rational(-s[n]) : s[n];
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        first = false;
        if (e == 0 || mag != 1) os << to_string(mag);
        if (e != 0) {
            if (mag != 1) os << '*';
            os << s.variable();
            if (e != 1) os << '^' << e;
        }
    }
    if (first) os << '0';
    os << " + O(" << s.variable() << '^' << (s.order() + valuation + 1) << ')';
    return os.str();
}

std::string series_csv(const PowerSeries& s, int valuation = 0)
{
    std::string out = "exponent,coefficient\n";
    for (int n = 0; n <= s.order(); ++n) out += std::to_string(n + valuation) + ',' + to_string(s[n]) + '\n';
    return out;
}

FitConfig fit_config(const RunConfig& c)
{
    auto cfg = FitConfig::defaults(c.order);
    if (c.degrees) {
        cfg.d1 = c.degrees->first;
        cfg.d2 = c.degrees->second;
    }
    if (c.k3) {
        cfg.s1 = c.k3->first;
        cfg.s2 = c.k3->second;
    }
    cfg.unsafe = c.unsafe;
    return cfg;
}

struct Emitted {
    json result;
    std::string csv;
    std::string pretty;
    int exit_code = exit_ok;
};

class Session {
public:
    explicit Session(const RunConfig& c) : config_(c), threads_(worker_count(c.threads))
    {
        if (c.cache_path)
            cache_ = *c.cache_path;
        else if (const char* env = std::getenv(cache_env); env != nullptr && *env != '\0')
            cache_ = env;
        if (cache_) table_.load(*cache_);
    }

    ~Session()
    {
        try {
            if (cache_) table_.save(*cache_);
        } catch (...) {
        }
    }

    Emitted dispatch()
    {
        const auto& cmd = config_.command;
        if (cmd == "severi") return severi_cmd();
        if (cmd == "severi-table") return severi_table_cmd();
        if (cmd == "fit") return fit_cmd();
        if (cmd == "evaluate") return evaluate_cmd();
        if (cmd == "decompose") return decompose_cmd();
        if (cmd == "close-relation") return close_relation_cmd();
        if (cmd == "genus-series") return genus_series_cmd();
        if (cmd == "validate") return validate_cmd();
        if (cmd == "forms") return forms_cmd();
        throw ValidationError("unknown command \"" + cmd + "\"");
    }

private:
    Emitted severi_cmd()
    {
        SeveriKey key = config_.beta || !config_.alpha.empty()
                            ? SeveriKey{config_.d, config_.delta, TangencyProfile::parse(config_.alpha),
                                        TangencyProfile::parse(config_.beta.value_or(""))}
                            : SeveriKey::plain(config_.d, config_.delta);
        if (key.d < 1) throw ValidationError("degree must be positive");
        const auto value = severi_relative(key, table_);
        Emitted e;
        e.result = {{"key", key.canonical()}, {"value", to_string(value)}};
        e.csv = "key,value\n" + key.canonical() + ',' + to_string(value) + '\n';
        e.pretty = to_string(value) + '\n';
        return e;
    }

    Emitted severi_table_cmd()
    {
        if (config_.dmax < 1 || config_.deltamax < 0) throw ValidationError("need dmax >= 1 and deltamax >= 0");
        std::vector<SeveriKey> keys;
        for (int d = 1; d <= config_.dmax; ++d)
            for (int k = 0; k <= config_.deltamax; ++k) keys.push_back(SeveriKey::plain(d, k));
        const auto values = severi_many(keys, table_, threads_);
        Emitted e;
        e.result = json::array();
        e.csv = "d,delta,N\n";
        for (std::size_t i = 0; i < keys.size(); ++i) {
            e.result.push_back({{"d", keys[i].d}, {"delta", keys[i].delta}, {"N", to_string(values[i])}});
            e.csv += std::to_string(keys[i].d) + ',' + std::to_string(keys[i].delta) + ',' + to_string(values[i]) + '\n';
        }
        e.pretty = e.csv;
        return e;
    }

    Emitted fit_cmd()
    {
        const auto fit = fit_A(fit_config(config_), table_, threads_);
        const auto gyz = fit_B(fit, fit.order());
        const auto ts = universal_Ts(fit);

        Emitted e;
        json A = json::array(), logA = json::array(), T = json::array(), residuals = json::array();
        for (std::size_t j = 0; j < 4; ++j) {
            A.push_back(series_to_json(fit.A[j]));
            logA.push_back(series_to_json(fit.logA[j]));
        }
        for (const auto& t : ts) T.push_back(polynomial_json(t));
        for (const auto& r : gyz.residuals)
            residuals.push_back({{"identity", r.identity}, {"holds", r.holds()}, {"difference", series_to_json(r.difference)}});
        e.result = {{"fit",
                     {{"order", fit.order()},
                      {"degrees", {fit.config.d1, fit.config.d2}},
                      {"k3_squares", {fit.config.s1, fit.config.s2}},
                      {"unsafe", fit.config.unsafe}}},
                    {"A", std::move(A)},
                    {"logA", std::move(logA)},
                    {"B",
                     {{"B1", series_to_json(gyz.B1)},
                      {"B2", series_to_json(gyz.B2)},
                      {"B3", series_to_json(gyz.B3)},
                      {"B4", series_to_json(gyz.B4)}}},
                    {"residuals", std::move(residuals)},
                    {"consistent", gyz.consistent()},
                    {"T", std::move(T)}};

        std::ostringstream os;
        for (std::size_t j = 0; j < 4; ++j) os << "A" << j + 1 << " = " << series_text(fit.A[j]) << '\n';
        os << "B1 = " << series_text(gyz.B1) << '\n' << "B2 = " << series_text(gyz.B2) << '\n';
        for (const auto& t : ts) os << "T_" << t.r << " = " << polynomial_text(t) << '\n';
        for (const auto& r : gyz.residuals) os << (r.holds() ? "ok    " : "FAILED") << "  " << r.identity << '\n';
        e.pretty = os.str();
        if (!gyz.consistent()) e.exit_code = exit_inconsistent;
        return e;
    }

    Emitted evaluate_cmd()
    {
        const auto v = class_of(surfaces::Raw{{config_.L2, config_.LK, config_.c1sq, config_.c2}});
        const auto fit = fit_A(fit_config(config_), table_, threads_);
        const auto series = evaluate(v, fit, config_.order);
        Emitted e;
        e.result = {{"class", class_json(v)}, {"series", series_to_json(series)}};
        e.csv = series_csv(series);
        e.pretty = series_text(series) + '\n';
        return e;
    }

    Emitted decompose_cmd()
    {
        const auto v = class_of(surfaces::Raw{{config_.L2, config_.LK, config_.c1sq, config_.c2}});
        const auto a = decompose(v);
        Emitted e;
        e.result = {{"a1", a.a1}, {"a2", a.a2}, {"a3", a.a3}, {"a4", a.a4}};
        if (config_.alt) {
            const auto w = convert(v);
            e.result["alt"] = {{"LK", w.LK}, {"chiL", w.chiL}, {"chiO", w.chiO}, {"Ksq", w.Ksq}};
        }
        e.csv = "a1,a2,a3,a4\n" + std::to_string(a.a1) + ',' + std::to_string(a.a2) + ',' + std::to_string(a.a3) + ','
                + std::to_string(a.a4) + '\n';
        e.pretty = "a1 = " + std::to_string(a.a1) + "\na2 = " + std::to_string(a.a2) + "\na3 = " + std::to_string(a.a3)
                   + "\na4 = " + std::to_string(a.a4) + '\n';
        return e;
    }

    Emitted close_relation_cmd()
    {
        const auto v1 = class_from_list(config_.v1, "--v1");
        const auto v2 = class_from_list(config_.v2, "--v2");
        if (config_.gD < 0) throw ValidationError("genus of D must be nonnegative");
        const auto closed = close_relation(v1, v2, {config_.gD, config_.degLD});
        Emitted e;
        e.result = {{"v3", class_json(closed.v3)}, {"v0", class_json(closed.v0)}};
        e.csv = "term,L2,LK,c1sq,c2\nv3," + std::to_string(closed.v3.L2) + ',' + std::to_string(closed.v3.LK) + ','
                + std::to_string(closed.v3.c1sq) + ',' + std::to_string(closed.v3.c2) + "\nv0,"
                + std::to_string(closed.v0.L2) + ',' + std::to_string(closed.v0.LK) + ','
                + std::to_string(closed.v0.c1sq) + ',' + std::to_string(closed.v0.c2) + '\n';
        e.pretty = "v3 = " + closed.v3.to_string() + "\nv0 = " + closed.v0.to_string() + '\n';
        return e;
    }

    Emitted genus_series_cmd()
    {
        std::optional<GYZFit> gyz;
        if (config_.Ksq != 0 || config_.m != 0) {
            const auto fit = fit_A(fit_config(config_), table_, threads_);
            gyz = fit_B(fit, config_.order);
        }
        const auto g = genus_series(config_.r, config_.Ksq, config_.m, config_.chiO, config_.order,
                                    gyz ? &*gyz : nullptr);
        Emitted e;
        e.result = {{"valuation", g.valuation},
                    {"first_l", g.valuation - config_.chiO},
                    {"series", series_to_json(g.series)}};
        e.csv = series_csv(g.series, g.valuation);
        e.pretty = series_text(g.series, g.valuation) + '\n';
        return e;
    }

    Emitted validate_cmd()
    {
        const auto fit = fit_A(fit_config(config_), table_, threads_);
        const auto report = validate_p2(config_.d, fit, config_.order, table_, threads_);
        Emitted e;
        e.result = {{"d", report.d},
                    {"order", report.order},
                    {"held_out", report.held_out},
                    {"matches", report.matches},
                    {"first_difference", report.first_difference ? json(*report.first_difference) : json(nullptr)},
                    {"expected", series_to_json(report.expected)},
                    {"predicted", series_to_json(report.predicted)}};
        e.pretty = std::string(report.matches ? "match" : "MISMATCH") + "  d=" + std::to_string(report.d)
                   + "\n  recursion: " + series_text(report.expected) + "\n  fit:       " + series_text(report.predicted)
                   + '\n';
        if (!report.matches) e.exit_code = exit_inconsistent;
        return e;
    }

    Emitted forms_cmd()
    {
        const auto cat = FormCatalog::build(config_.order);
        Emitted e;
        e.result = cat.to_json();
        e.pretty = "G2      = " + series_text(cat.g2) + "\nDG2     = " + series_text(cat.dg2)
                   + "\nD^2G2   = " + series_text(cat.d2g2) + "\nDelta   = " + series_text(cat.delta) + '\n';
        return e;
    }

    const RunConfig& config_;
    unsigned threads_;
    std::optional<std::string> cache_;
    SeveriTable table_;
};

json error_document(const RunConfig& config, const char* kind, const std::string& message)
{
    return {{"schema_version", RunConfig::schema_version},
            {"command", config.command},
            {"config", config.to_json()},
            {"error", {{"kind", kind}, {"message", message}}}};
}

std::pair<long, long> parse_pair(const std::string& text, const char* flag)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ValidationError(std::string(flag) + " expects two comma-separated integers");
    try {
        std::size_t p1 = 0, p2 = 0;
        const long a = std::stol(text.substr(0, comma), &p1);
        const long b = std::stol(text.substr(comma + 1), &p2);
        if (p1 != comma || p2 != text.size() - comma - 1) throw std::invalid_argument("trailing");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError(std::string(flag) + " expects two comma-separated integers, got \"" + text + "\"");
    }
}

std::vector<long> parse_vector(const std::string& text, const char* flag)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stol(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw ValidationError(std::string(flag) + " expects comma-separated integers, got \"" + text + "\"");
        }
    }
    return out;
}

} // namespace

json RunConfig::to_json() const
{
    json j = {{"command", command}, {"format", format_name(format)}};
    if (command == "severi") {
        j["d"] = d;
        j["delta"] = delta;
        j["alpha"] = alpha;
        j["beta"] = beta ? json(*beta) : json(nullptr);
    } else if (command == "severi-table") {
        j["dmax"] = dmax;
        j["deltamax"] = deltamax;
    } else if (command == "decompose") {
        j["class"] = {L2, LK, c1sq, c2};
        j["alt"] = alt;
    } else if (command == "close-relation") {
        j["v1"] = v1;
        j["v2"] = v2;
        j["gD"] = gD;
        j["degLD"] = degLD;
    } else if (command == "forms") {
        j["order"] = order;
    } else {
        const auto cfg = fit_config(*this);
        j["order"] = order;
        j["degrees"] = {cfg.d1, cfg.d2};
        j["k3"] = {cfg.s1, cfg.s2};
        j["unsafe"] = unsafe;
        if (command == "evaluate") j["class"] = {L2, LK, c1sq, c2};
        if (command == "validate") j["d"] = d;
        if (command == "genus-series") {
            j["r"] = r;
            j["Ksq"] = Ksq;
            j["m"] = m;
            j["chiO"] = chiO;
        }
    }
    return j;
}

RunResult run(const RunConfig& config)
{
    RunResult out;
    json doc;
    Emitted emitted;
    try {
        if (config.format == OutputFormat::csv
            && (config.command == "fit" || config.command == "validate" || config.command == "forms"))
            throw ValidationError("csv output is not available for " + config.command);
        Session session(config);
        emitted = session.dispatch();
        out.exit_code = emitted.exit_code;
        doc = {{"schema_version", RunConfig::schema_version},
               {"command", config.command},
               {"config", config.to_json()},
               {"result", emitted.result}};
    } catch (const ValidationError& e) {
        out.exit_code = exit_validation;
        doc = error_document(config, "validation", e.what());
    } catch (const SeriesError& e) {
        out.exit_code = exit_validation;
        doc = error_document(config, "series", e.what());
    } catch (const ConsistencyError& e) {
        out.exit_code = exit_inconsistent;
        doc = error_document(config, "consistency", e.what());
    } catch (const std::exception& e) {
        out.exit_code = exit_inconsistent;
        doc = error_document(config, "internal", e.what());
    }

    const bool failed_before_output = doc.contains("error");
    if (config.format == OutputFormat::json || failed_before_output) {
        if (config.timestamp) doc["timestamp"] = utc_timestamp();
        out.output = doc.dump(2) + '\n';
    } else if (config.format == OutputFormat::csv) {
        out.output = emitted.csv;
    } else {
        out.output = emitted.pretty;
    }
    return out;
}

std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::string& help)
{
    RunConfig c;
    CLI::App app{"Exact nodal curve counting: Severi degrees, universal series, and the closed q-form"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    std::string cache;
    bool no_timestamp = false;
    app.add_option("--format", format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
    app.add_option("--threads", c.threads, "worker threads for Severi evaluation (0 = all cores)");
    app.add_option("--cache", cache, std::string("Severi cache file (default: $") + cache_env + ")");

    std::string degrees, k3, v1, v2, beta;

    auto* severi = app.add_subcommand("severi", "generalized Severi degree N^{d,delta}(alpha, beta)");
    severi->add_option("--d", c.d, "degree")->required();
    severi->add_option("--delta", c.delta, "cogenus")->required();
    severi->add_option("--alpha", c.alpha, "assigned tangencies, e.g. 1^2,2^1");
    severi->add_option("--beta", beta, "unassigned tangencies (default d points of order 1)");

    auto* table = app.add_subcommand("severi-table", "CSV table of N^{d,delta}");
    table->add_option("--dmax", c.dmax)->required();
    table->add_option("--deltamax", c.deltamax)->required();

    const auto add_fit_options = [&](CLI::App* sub) {
        sub->add_option("--order", c.order, "truncation order");
        sub->add_option("--degrees", degrees, "plane degrees d1,d2");
        sub->add_option("--k3", k3, "K3 squares s1,s2");
        sub->add_flag("--unsafe", c.unsafe, "skip the very-ampleness threshold");
    };
    auto* fit = app.add_subcommand("fit", "solve for A1..A4, B1, B2 and T_r");
    add_fit_options(fit);

    auto* evaluate = app.add_subcommand("evaluate", "T(S,L) for a class");
    add_fit_options(evaluate);
    for (auto* sub : {evaluate}) {
        sub->add_option("--L2", c.L2)->required();
        sub->add_option("--LK", c.LK)->required();
        sub->add_option("--c1sq", c.c1sq)->required();
        sub->add_option("--c2", c.c2)->required();
    }

    auto* decompose = app.add_subcommand("decompose", "coefficients against the standard basis");
    decompose->add_option("--L2", c.L2)->required();
    decompose->add_option("--LK", c.LK)->required();
    decompose->add_option("--c1sq", c.c1sq)->required();
    decompose->add_option("--c2", c.c2)->required();
    decompose->add_flag("--alt", c.alt, "also print (LK, chi(L), chi(O), K^2)");

    auto* close = app.add_subcommand("close-relation", "complete a double point relation");
    close->add_option("--v1", v1, "L2,LK,c1sq,c2")->required();
    close->add_option("--v2", v2, "L2,LK,c1sq,c2")->required();
    close->add_option("--gD", c.gD, "genus of D")->required();
    close->add_option("--degLD", c.degLD, "degree of L on D")->required();

    auto* genus = app.add_subcommand("genus-series", "genus-indexed generating series");
    add_fit_options(genus);
    genus->add_option("--r", c.r)->required();
    genus->add_option("--Ksq", c.Ksq)->required();
    genus->add_option("--m", c.m)->required();
    genus->add_option("--chiO", c.chiO)->required();

    auto* validate = app.add_subcommand("validate", "compare the fit with the recursion at a plane degree");
    add_fit_options(validate);
    validate->add_option("--d", c.d, "plane degree")->required();

    auto* forms = app.add_subcommand("forms", "q-expansions of G2, DG2, D^2G2, Delta");
    forms->add_option("--order", c.order)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        help = app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        help = app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }

    c.command = app.get_subcommands().front()->get_name();
    c.format = format == "csv" ? OutputFormat::csv : format == "pretty" ? OutputFormat::pretty : OutputFormat::json;
    c.timestamp = !no_timestamp;
    if (!cache.empty()) c.cache_path = cache;
    if (!beta.empty()) c.beta = beta;
    if (!degrees.empty()) {
        auto [a, b] = parse_pair(degrees, "--degrees");
        c.degrees = std::pair<int, int>(static_cast<int>(a), static_cast<int>(b));
    }
    if (!k3.empty()) c.k3 = parse_pair(k3, "--k3");
    if (!v1.empty()) c.v1 = parse_vector(v1, "--v1");
    if (!v2.empty()) c.v2 = parse_vector(v2, "--v2");
    return c;
}

} // namespace nodal
