#include "maxmart/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "maxmart/azema.hpp"
#include "maxmart/decomposition.hpp"
#include "maxmart/hedging.hpp"
#include "maxmart/maxtime.hpp"
#include "maxmart/stats.hpp"
#include "maxmart/summary.hpp"

namespace maxmart {

using nlohmann::json;

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{
        "doob",         "rho-identity", "azema",    "azema-before-rho", "conditional-doob",
        "decomposition", "d-uniform",   "hedge",    "kardaras",         "additive"};
    return names;
}

namespace {

constexpr std::uint64_t kAzemaTag = 0x617a656d;       // "azem"
constexpr std::uint64_t kBeforeRhoTag = 0x6272686f;   // "brho"
constexpr std::uint64_t kCondDoobTag = 0x63646f62;    // "cdob"
constexpr std::uint64_t kAdditiveTag = 0x61646469;    // "addi"
constexpr double kGapTolerance = 1e-9;

bool is_m0(const ModelSpec& m) { return has_continuous_sup(m); }

bool needs_m0(const std::string& check) {
    return check == "rho-identity" || check == "decomposition" || check == "d-uniform" ||
           check == "additive";
}

bool nested(const std::string& check) {
    return check == "azema" || check == "azema-before-rho" || check == "conditional-doob" ||
           check == "additive";
}

bool batch_statistic(const std::string& check) {
    return check == "doob" || check == "d-uniform" || check == "hedge" || check == "decomposition";
}

template <class T>
T read(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

ModelSpec parse_model(const json& j) {
    if (!j.is_object()) throw ConfigError("config key 'model' must be an object");
    if (!j.contains("name")) throw ConfigError("config key 'model.name' is missing");
    const auto name = read<std::string>(j.at("name"), "model.name");
    auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : j.items()) {
            if (key == "name") continue;
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                throw ConfigError("unknown config key 'model." + key + "' for " + name);
        }
    };
    auto number = [&](const char* key, double fallback) {
        return j.contains(key) ? read<double>(j.at(key), std::string("model.") + key) : fallback;
    };
    if (name == "PoissonDeath") {
        reject_unknown({"lambda"});
        return PoissonDeath{number("lambda", 1.0)};
    }
    if (name == "ContinuousExp") {
        reject_unknown({"sigma", "dt", "stop_gap_C", "bridge_max"});
        ContinuousExp m;
        m.sigma = number("sigma", m.sigma);
        m.dt = number("dt", m.dt);
        m.stop_gap = number("stop_gap_C", m.stop_gap);
        if (j.contains("bridge_max")) m.bridge_max = read<bool>(j.at("bridge_max"), "model.bridge_max");
        return m;
    }
    if (name == "PoissonUp") {
        reject_unknown({"lambda", "stop_gap_C"});
        PoissonUp m;
        m.lambda = number("lambda", m.lambda);
        m.stop_gap = number("stop_gap_C", m.stop_gap);
        return m;
    }
    throw ConfigError("unknown model '" + name + "' in config key 'model.name'");
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

void validate_config(const RunConfig& c) {
    try {
        validate(c.model);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("config key 'model': ") + e.what());
    }
    if (c.n_paths == 0) throw ConfigError("config key 'n_paths' must be at least 1");
    for (const auto& check : c.checks) {
        const auto& known = known_checks();
        if (std::find(known.begin(), known.end(), check) == known.end())
            throw ConfigError("unknown check '" + check + "' in config key 'checks'");
        if (needs_m0(check) && !is_m0(c.model))
            throw ConfigError("check '" + check + "' needs a model with continuous running sup, not " +
                              std::string(model_name(c.model)));
        if (nested(check) && c.n_inner < kMinInner)
            throw ConfigError("config key 'n_inner' must be at least 100 for check '" + check + "'");
        if (check == "additive" && c.n_inner < 1000)
            throw ConfigError("config key 'n_inner' must be at least 1000 for check 'additive'");
        if (batch_statistic(check) && c.n_paths < 1000)
            throw ConfigError("config key 'n_paths' must be at least 1000 for check '" + check + "'");
        if ((check == "conditional-doob") && c.n_outer < kMinInner)
            throw ConfigError("config key 'n_outer' must be at least 100 for check 'conditional-doob'");
        if ((check == "azema" || check == "additive") && c.n_states == 0)
            throw ConfigError("config key 'n_states' must be at least 1");
    }
    for (double x : c.strikes)
        if (!(x > 1.0) || !std::isfinite(x))
            throw ConfigError("config key 'strikes': every strike must be a finite number above 1, got " + fmt(x));
    for (double t : c.checkpoints)
        if (!(t > 0.0) || !std::isfinite(t))
            throw ConfigError("config key 'checkpoints': every checkpoint must be a positive finite time");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("config key 'alpha' must lie in (0, 1)");
    if (!(c.eps > 0.0)) throw ConfigError("config key 'eps' must be positive");
    if (c.n_path_checks > c.n_paths) throw ConfigError("config key 'n_path_checks' exceeds 'n_paths'");
}

RunConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    bool checks_given = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "model") c.model = parse_model(value);
        else if (key == "n_paths") c.n_paths = read<std::size_t>(value, key);
        else if (key == "master_seed") c.master_seed = read<std::uint64_t>(value, key);
        else if (key == "checks") { c.checks = read<std::vector<std::string>>(value, key); checks_given = true; }
        else if (key == "strikes") c.strikes = read<std::vector<double>>(value, key);
        else if (key == "checkpoints") c.checkpoints = read<std::vector<double>>(value, key);
        else if (key == "n_inner") c.n_inner = read<std::size_t>(value, key);
        else if (key == "alpha") c.alpha = read<double>(value, key);
        else if (key == "output_dir") c.output_dir = read<std::string>(value, key);
        else if (key == "n_states") c.n_states = read<std::size_t>(value, key);
        else if (key == "n_outer") c.n_outer = read<std::size_t>(value, key);
        else if (key == "n_path_checks") c.n_path_checks = read<std::size_t>(value, key);
        else if (key == "before_rho_paths") c.before_rho_paths = read<std::size_t>(value, key);
        else if (key == "eps") c.eps = read<double>(value, key);
        else if (key == "max_csv_rows") c.max_csv_rows = read<std::size_t>(value, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (!checks_given)
        for (const auto& check : known_checks())
            if (is_m0(c.model) || !needs_m0(check)) c.checks.push_back(check);
    if (c.checks.empty()) throw ConfigError("config key 'checks' is empty");
    validate_config(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

// Everything the pathwise checks need from one materialized path.
struct PathFacts {
    bool truncated = false;
    bool rho_identity = false;
    bool lstar_at_rho = false;
    double rho = 0.0;
    bool d_ok = false;
    double a_error = 0.0;
    bool a_matches_closed_form = true;
    bool kardaras = false;
    std::optional<double> left_ratio;
    std::string record_row;
};

class Runner {
public:
    Runner(const RunConfig& c, unsigned jobs) : c_(c), jobs_(jobs) {
        want_ = std::set<std::string>(c.checks.begin(), c.checks.end());
        report_.model = std::string(model_name(c.model));
        report_.n_paths = c.n_paths;
        report_.seed = c.master_seed;
    }

    RunReport run() {
        validate_config(c_);
        if (any_of({"doob", "d-uniform", "hedge", "decomposition"})) compute_summaries();
        if (any_of({"rho-identity", "azema-before-rho", "decomposition", "kardaras"})) compute_facts();
        for (const auto& check : known_checks()) {
            if (!want_.count(check)) continue;
            if (check == "doob") doob();
            else if (check == "rho-identity") rho_identity();
            else if (check == "azema") azema();
            else if (check == "azema-before-rho") azema_before_rho();
            else if (check == "conditional-doob") conditional_doob();
            else if (check == "decomposition") decomposition();
            else if (check == "d-uniform") d_uniform();
            else if (check == "hedge") hedge();
            else if (check == "kardaras") kardaras();
            else if (check == "additive") additive();
        }
        return std::move(report_);
    }

private:
    bool any_of(std::initializer_list<const char*> names) const {
        return std::any_of(names.begin(), names.end(), [&](const char* n) { return want_.count(n) > 0; });
    }

    void add(const std::string& name, const std::string& metric, double value, std::string target,
             double tolerance, bool pass) {
        report_.checks.push_back({name, metric, value, std::move(target), tolerance, pass});
    }

    std::size_t path_checks() const { return c_.n_path_checks == 0 ? c_.n_paths : c_.n_path_checks; }
    double bias() const { return truncation_bias(c_.model); }

    void compute_summaries() {
        const std::vector<double> strikes = want_.count("hedge") ? c_.strikes : std::vector<double>{};
        summaries_ = summary_map(c_.model, c_.n_paths, c_.master_seed, jobs_, strikes,
                                 [](std::size_t, const PathSummary& s) { return s; });
    }

    void compute_facts() {
        const bool exact = std::holds_alternative<PoissonDeath>(c_.model);
        const double dt = exact ? 0.0 : std::visit([](const auto& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ContinuousExp>) return m.dt;
            else return 0.0;
        }, c_.model);
        const bool decomposition = want_.count("decomposition") > 0;
        const std::optional<double> lambda =
            exact ? std::optional<double>(std::get<PoissonDeath>(c_.model).lambda) : std::nullopt;
        facts_ = batch_map(c_.model, path_checks(), c_.master_seed, jobs_, [&](std::size_t i, const CadlagPath& p) {
            PathFacts f;
            const MaxRecord rec = max_record(p);
            if (i < c_.max_csv_rows) f.record_row = to_csv_row(rec);
            f.truncated = rec.truncated_before_jump;
            f.rho = sup_is_continuous(p) ? rec.rho_left : rec.rho_right;
            f.rho_identity = std::abs(rec.rho_left - rec.rho_right) <= dt;
            const double tol = exact ? 0.0 : kGridEqualityTolerance * rec.l_star_inf;
            f.lstar_at_rho = !rec.truncated_before_jump && std::abs(rec.left_at_rho - rec.l_star_inf) <= tol;
            f.kardaras = kardaras_condition(p, kGridEqualityTolerance * rec.l_star_inf);
            f.left_ratio = ratio_at_rho_left_limit(p);
            if (decomposition) {
                const DecompositionCheck d = check_decomposition(p);
                f.d_ok = d.d_starts_at_one && d.d_nonincreasing && d.d_in_unit_interval && d.d_continuous;
                f.a_error = d.max_a_error;
                if (lambda) f.a_matches_closed_form = stieltjes_a(p).values == compensator_poisson_death(p, *lambda).a;
            }
            return f;
        });
        if (decomposition) first_path_decomposition_ = decomposition_csv(simulate(c_.model, Seed{c_.master_seed, 0}), lambda);
    }

    void doob() {
        std::vector<double> u;
        u.reserve(summaries_.size());
        for (const auto& s : summaries_) u.push_back(1.0 / s.record.l_star_inf);
        if (is_m0(c_.model)) {
            const KsVerdict v = ks_uniform(u, c_.alpha, bias());
            add("doob", "ks_d", v.d_stat, "<" + fmt(kolmogorov_critical_value(c_.alpha)) + "/sqrt(n)+" + fmt(bias()),
                v.threshold, v.pass);
        } else {
            const KsVerdict v = ks_dominates_uniform(u, c_.alpha, 0.0);
            add("doob", "ks_d_plus", v.d_stat, "<sqrt(-ln(alpha)/2)/sqrt(n)", v.threshold, v.pass);
        }
        std::string csv = max_record_csv_header() + '\n';
        for (std::size_t i = 0; i < std::min(c_.max_csv_rows, summaries_.size()); ++i)
            csv += to_csv_row(summaries_[i].record) + '\n';
        report_.files.emplace_back("doob_records.csv", std::move(csv));
    }

    void d_uniform() {
        std::vector<MaxRecord> records;
        records.reserve(summaries_.size());
        for (const auto& s : summaries_) records.push_back(s.record);
        const auto d = d_at_rho_samples(records);
        const KsVerdict v = ks_uniform(d, c_.alpha, bias());
        add("d-uniform", "ks_d", v.d_stat, "<" + fmt(kolmogorov_critical_value(c_.alpha)) + "/sqrt(n)+" + fmt(bias()),
            v.threshold, v.pass);
    }

    void rho_identity() {
        std::size_t same = 0, at_max = 0, usable = 0;
        std::string csv = max_record_csv_header() + '\n';
        for (const auto& f : facts_) {
            same += f.rho_identity ? 1 : 0;
            if (!f.truncated) {
                ++usable;
                at_max += f.lstar_at_rho ? 1 : 0;
            }
            if (!f.record_row.empty()) csv += f.record_row + '\n';
        }
        const double n = static_cast<double>(facts_.size());
        add("rho-identity", "rho_left_eq_rho_right_fraction", static_cast<double>(same) / n, "1", 0.0,
            same == facts_.size());
        add("rho-identity", "left_limit_at_rho_eq_lstar_fraction",
            usable ? static_cast<double>(at_max) / static_cast<double>(usable) : 0.0, "1", 0.0,
            usable > 0 && at_max == usable);
        report_.files.emplace_back("rho_records.csv", std::move(csv));
    }

    void kardaras() {
        const bool expected = !std::holds_alternative<PoissonDeath>(c_.model);
        std::size_t match = 0;
        for (const auto& f : facts_) match += f.kardaras == expected ? 1 : 0;
        add("kardaras", expected ? "condition_true_fraction" : "condition_false_fraction",
            static_cast<double>(match) / static_cast<double>(facts_.size()), "1", 0.0, match == facts_.size());
    }

    void decomposition() {
        bool d_ok = true, closed = true;
        double worst = 0.0;
        for (const auto& f : facts_) {
            d_ok = d_ok && f.d_ok;
            closed = closed && f.a_matches_closed_form;
            worst = std::max(worst, f.a_error);
        }
        const bool exact = std::holds_alternative<PoissonDeath>(c_.model);
        const double a_tol = exact ? 1e-15 : 1e-6;
        add("decomposition", "d_nonincreasing_from_one", d_ok ? 1.0 : 0.0, "1", 0.0, d_ok);
        add("decomposition", "max_rel_error_a_vs_log_lstar", worst, "<=" + fmt(a_tol), a_tol, worst <= a_tol);
        if (exact) add("decomposition", "a_equals_compensator", closed ? 1.0 : 0.0, "1", 0.0, closed);
        std::vector<MaxRecord> records;
        for (const auto& s : summaries_) records.push_back(s.record);
        const MeanCi m = log_lstar_mean(records, 1000);
        const double tol = m.halfwidth + bias();
        add("decomposition", "mean_log_lstar", m.mean, "1", tol, std::abs(m.mean - 1.0) <= tol);
        report_.files.emplace_back("decomposition_path0.csv", first_path_decomposition_);
    }

    void hedge() {
        const bool m0 = is_m0(c_.model);
        double min_gap = kInfinity, max_abs_gap = 0.0;
        std::string csv = hedge_csv_header() + '\n';
        for (std::size_t i = 0; i < summaries_.size(); ++i) {
            for (const auto& h : summaries_[i].hedges) {
                min_gap = std::min(min_gap, h.gap);
                max_abs_gap = std::max(max_abs_gap, std::abs(h.gap));
                if (i < c_.max_csv_rows) csv += to_csv_row(h) + '\n';
            }
        }
        for (std::size_t j = 0; j < c_.strikes.size(); ++j) {
            const double x = c_.strikes[j];
            std::size_t hits = 0;
            for (const auto& s : summaries_) hits += s.hedges[j].payoff_ge;
            const Proportion p = proportion(hits, summaries_.size());
            const std::string at = "@x=" + fmt(x);
            if (m0) {
                const double tol = 3.0 * p.std_error + bias();
                add("hedge", "digital_price" + at, p.p, fmt(1.0 / x), tol, std::abs(p.p - 1.0 / x) <= tol);
            } else {
                add("hedge", "digital_price" + at, p.p, "<=" + fmt(1.0 / x), 3.0 * p.std_error,
                    p.p - 3.0 * p.std_error <= 1.0 / x);
                add("hedge", "price_deficit" + at, 1.0 / x - p.p, "reported", 3.0 * p.std_error, true);
            }
        }
        add("hedge", "min_pathwise_gap", min_gap, ">=-1e-9", kGapTolerance, min_gap >= -kGapTolerance);
        if (m0) add("hedge", "max_abs_pathwise_gap", max_abs_gap, "<=1e-9", kGapTolerance, max_abs_gap <= kGapTolerance);
        report_.files.emplace_back("hedge.csv", std::move(csv));
    }

    void azema() {
        const bool death = std::holds_alternative<PoissonDeath>(c_.model);
        const Seed base{c_.master_seed, kAzemaTag};
        std::string csv = "t,current,runsup,z_hat,stderr,z_ratio,violation_flag\n";
        for (std::size_t ci = 0; ci < c_.checkpoints.size(); ++ci) {
            const double t = c_.checkpoints[ci];
            const Seed seed = derive_seed(base, ci, 0);
            const auto estimates = parallel_map<AzemaEstimate>(c_.n_states, jobs_, [&](std::size_t i) {
                const MarkovState s = sample_state(c_.model, t, derive_seed(seed, 1, i));
                return nested_z_estimate(s, c_.n_inner, derive_seed(seed, 2, i));
            });
            std::size_t ok = 0;
            double worst = 0.0;
            for (const auto& e : estimates) {
                const double tol = azema_tolerance(e);
                const double excess = is_m0(c_.model) ? std::abs(e.z_hat - e.z_ratio) - tol
                                                      : e.z_hat - e.z_ratio - tol;
                bool good = excess <= 0.0;
                if (death) {
                    const double alive = e.state.alive ? 1.0 : 0.0;
                    good = e.z_hat == alive && e.z_hat_strict == alive;
                }
                ok += good ? 1 : 0;
                worst = std::max(worst, excess);
                csv += fmt(t) + ',' + fmt(e.state.current) + ',' + fmt(e.state.runsup) + ',' + fmt(e.z_hat) +
                       ',' + fmt(e.std_error) + ',' + fmt(e.z_ratio) + ',' + (good ? "0" : "1") + '\n';
            }
            const std::string at = "@t=" + fmt(t);
            add("azema", "states_within_tolerance" + at, static_cast<double>(ok), fmt(static_cast<double>(c_.n_states)),
                0.0, ok == c_.n_states);
            add("azema", (is_m0(c_.model) ? "max_abs_excess" : "max_excess") + at, worst, "<=0", 0.0, worst <= 0.0);
        }
        report_.files.emplace_back("azema.csv", std::move(csv));
    }

    void azema_before_rho() {
        std::size_t used = 0, below = 0;
        for (const auto& f : facts_) {
            if (!f.left_ratio) continue;
            ++used;
            below += *f.left_ratio < 1.0 ? 1 : 0;
        }
        const double frac = used ? static_cast<double>(below) / static_cast<double>(used) : 0.0;
        if (is_m0(c_.model)) {
            add("azema-before-rho", "left_ratio_below_one_fraction", frac, "0", 0.0, used > 0 && below == 0);
        } else {
            add("azema-before-rho", "left_ratio_below_one_fraction", frac, "1", 0.0, used > 0 && below == used);
        }
        const std::size_t n_probe = std::min(c_.before_rho_paths, c_.n_paths);
        if (n_probe == 0) return;
        const auto paths = batch_simulate(c_.model, n_probe, c_.master_seed, jobs_);
        const BeforeRhoSummary s =
            z_before_rho(paths, c_.model, c_.eps, c_.n_inner, Seed{c_.master_seed, kBeforeRhoTag}, jobs_);
        const bool death = std::holds_alternative<PoissonDeath>(c_.model);
        // Only the jump-free closed form pins the probe value; the rest is reported.
        add("azema-before-rho", "mean_ratio_at_rho_minus_eps", s.mean_ratio, death ? "1" : "reported", 0.0,
            !death || (s.n_used > 0 && s.mean_ratio == 1.0));
        add("azema-before-rho", "mean_z_hat_at_rho_minus_eps", s.mean_z_hat, "reported", 0.0, true);
    }

    void conditional_doob() {
        const Seed base{c_.master_seed, kCondDoobTag};
        for (std::size_t ci = 0; ci < c_.checkpoints.size(); ++ci) {
            const double t = c_.checkpoints[ci];
            const auto r = conditional_doob_check(c_.model, t, c_.n_outer, c_.n_inner, derive_seed(base, ci, 0), jobs_);
            const std::string at = "@t=" + fmt(t);
            add("conditional-doob", "violations" + at, static_cast<double>(r.violations), "0", 0.0, r.violations == 0);
            if (is_m0(c_.model)) {
                const double n = static_cast<double>(r.rows.size());
                const double eq = static_cast<double>(r.equalities) / n;
                const double strict = static_cast<double>(r.strict_equalities) / n;
                add("conditional-doob", "equality_fraction" + at, eq, ">=0.99", 0.0, eq >= 0.99);
                add("conditional-doob", "strict_equality_fraction" + at, strict, ">=0.99", 0.0, strict >= 0.99);
            }
            report_.files.emplace_back("conditional_doob_t=" + fmt(t) + ".csv", conditional_doob_csv(r));
        }
    }

    void additive() {
        const Seed base{c_.master_seed, kAdditiveTag};
        std::string csv = "t,current,runsup,estimate,stderr,z_ratio,pass\n";
        for (std::size_t ci = 0; ci < c_.checkpoints.size(); ++ci) {
            const double t = c_.checkpoints[ci];
            const auto rows = additive_check(c_.model, t, c_.n_states, c_.n_inner, derive_seed(base, ci, 0), jobs_);
            std::size_t ok = 0;
            for (const auto& r : rows) {
                ok += r.pass ? 1 : 0;
                csv += fmt(t) + ',' + fmt(r.state.current) + ',' + fmt(r.state.runsup) + ',' + fmt(r.estimate) +
                       ',' + fmt(r.std_error) + ',' + fmt(r.z_ratio) + ',' + (r.pass ? "1" : "0") + '\n';
            }
            add("additive", "states_within_tolerance@t=" + fmt(t), static_cast<double>(ok),
                fmt(static_cast<double>(rows.size())), 0.0, ok == rows.size());
        }
        report_.files.emplace_back("additive.csv", std::move(csv));
    }

    const RunConfig& c_;
    unsigned jobs_;
    std::set<std::string> want_;
    RunReport report_;
    std::vector<PathSummary> summaries_;
    std::vector<PathFacts> facts_;
    std::string first_path_decomposition_;
};

}  // namespace

RunReport run(const RunConfig& config, unsigned jobs) { return Runner(config, jobs).run(); }

std::string summary_json(const RunReport& report) {
    if (report.checks.empty()) throw StructuralError("report has no check results");
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"metric", c.metric}, {"value", c.value},
                          {"target", c.target}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    json j = {{"model", report.model}, {"n_paths", report.n_paths}, {"seed", report.seed},
              {"checks", checks}};
    return j.dump(2) + '\n';
}

std::string summary_table(const RunReport& report) {
    if (report.checks.empty()) throw StructuralError("report has no check results");
    std::ostringstream out;
    out << report.model << "  n_paths=" << report.n_paths << "  seed=" << report.seed << '\n';
    out << std::left << std::setw(18) << "check" << std::setw(42) << "metric" << std::setw(24) << "value"
        << std::setw(28) << "target" << std::setw(24) << "tolerance" << "result\n";
    for (const auto& c : report.checks)
        out << std::left << std::setw(18) << c.name << std::setw(42) << c.metric << std::setw(24) << fmt(c.value)
            << std::setw(28) << c.target << std::setw(24) << fmt(c.tolerance) << (c.pass ? "PASS" : "FAIL") << '\n';
    return out.str();
}

int exit_status(const RunReport& report) {
    if (report.checks.empty()) throw StructuralError("report has no check results");
    return std::all_of(report.checks.begin(), report.checks.end(), [](const CheckEntry& c) { return c.pass; }) ? 0 : 1;
}

void write_report(const RunReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
        out << text;
    };
    write("summary.json", summary_json(report));
    for (const auto& [name, text] : report.files) write(name, text);
}

}  // namespace maxmart
