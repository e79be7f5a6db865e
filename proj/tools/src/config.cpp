#include "scg/reports/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "scg/equilibrium_nd.hpp"

namespace scg::reports {

namespace {

// Integers built in code are signed; parsed ones are unsigned when non-negative.
bool is_count(const Json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0); }

// Walks a JSON object, remembering which keys were consumed.
class Reader {
public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("expected an object");
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError((path_.empty() ? std::string("config") : path_) + ": " + what);
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return j_.contains(key); }

    const Json& get(const std::string& key) {
        if (!j_.contains(key)) fail("missing required key '" + key + "'");
        seen_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key) { return as_number(get(key), at(key)); }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::size_t count_or(const std::string& key, std::size_t fallback) {
        if (!has(key)) return fallback;
        const auto& v = get(key);
        if (!is_count(v)) throw ConfigError(at(key) + ": expected a non-negative integer");
        return v.get<std::size_t>();
    }

    std::string text(const std::string& key) {
        const auto& v = get(key);
        if (!v.is_string()) throw ConfigError(at(key) + ": expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        const auto& v = get(key);
        if (!v.is_array()) throw ConfigError(at(key) + ": expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], at(key) + "[" + std::to_string(i) + "]"));
        return out;
    }

    void finish() const {
        for (const auto& [k, _] : j_.items()) {
            if (!seen_.count(k)) fail("unknown key '" + k + "'");
        }
    }

    static double as_number(const Json& v, const std::string& where) {
        if (!v.is_number()) throw ConfigError(where + ": expected a number");
        return v.get<double>();
    }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

DistributionSpec parse_distribution(const Json& j, const std::string& path) {
    Reader r(j, path);
    const auto type = r.text("type");
    DistributionSpec d;
    if (type == "piecewise_linear") {
        const auto& knots = r.get("knots");
        if (!knots.is_array()) r.fail("knots: expected an array of [x, density] pairs");
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const auto where = r.at("knots") + "[" + std::to_string(i) + "]";
            if (!knots[i].is_array() || knots[i].size() != 2) throw ConfigError(where + ": expected [x, density]");
            d.knots.emplace_back(Reader::as_number(knots[i][0], where), Reader::as_number(knots[i][1], where));
        }
        if (d.knots.empty()) r.fail("knots: must not be empty");
    } else if (type != "uniform") {
        r.fail("unknown distribution type '" + type + "' (uniform | piecewise_linear)");
    }
    r.finish();
    return d;
}

cost::Family parse_cost(const Json& j, const std::string& path) {
    Reader r(j, path);
    const auto type = r.text("type");
    cost::Family out;
    if (type == "linear") {
        out = cost::Linear{r.number("slope")};
    } else if (type == "sqrt_linear") {
        out = cost::SqrtLinear{r.number_or("sqrt_coeff", 0.0), r.number_or("lin_coeff", 0.0)};
    } else if (type == "power_sum") {
        const auto& terms = r.get("terms");
        if (!terms.is_array()) r.fail("terms: expected an array");
        cost::PowerSum ps;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            Reader t(terms[i], r.at("terms") + "[" + std::to_string(i) + "]");
            ps.terms.push_back({t.number("coeff"), t.number("exponent")});
            t.finish();
        }
        out = ps;
    } else if (type == "tabulated") {
        out = cost::Tabulated{r.numbers("xs"), r.numbers("values")};
    } else {
        r.fail("unknown cost type '" + type + "' (linear | sqrt_linear | power_sum | tabulated)");
    }
    r.finish();
    return out;
}

GroupSpec parse_group(const Json& j, const std::string& path) {
    Reader r(j, path);
    GroupSpec g;
    if (r.has("distribution")) g.distribution = parse_distribution(r.get("distribution"), r.at("distribution"));
    g.cost = parse_cost(r.get("cost"), r.at("cost"));
    g.tau = r.number("tau");
    r.finish();
    return g;
}

GroupNDSpec parse_group_nd(const Json& j, const std::string& path) {
    Reader r(j, path);
    GroupNDSpec g;
    g.costs = r.numbers("costs");
    g.weights = r.numbers("weights");
    g.tau = r.number("tau");
    if (r.has("marginals")) {
        const auto& m = r.get("marginals");
        if (!m.is_array()) r.fail("marginals: expected an array");
        for (std::size_t i = 0; i < m.size(); ++i) {
            g.marginals.push_back(parse_distribution(m[i], r.at("marginals") + "[" + std::to_string(i) + "]"));
        }
    } else {
        g.marginals.assign(g.costs.size(), DistributionSpec{});
    }
    r.finish();
    return g;
}

RunOptions parse_run(const Json& j) {
    Reader r(j, "run");
    RunOptions o;
    o.sigma_grid = r.count_or("sigma_grid", o.sigma_grid);
    o.subsidy_grid = r.count_or("subsidy_grid", o.subsidy_grid);
    o.delta_grid = r.count_or("delta_grid", o.delta_grid);
    o.mc_samples = r.count_or("mc_samples", o.mc_samples);
    o.offset_steps = r.count_or("offset_steps", o.offset_steps);
    if (r.has("seed")) {
        const auto& v = r.get("seed");
        if (!is_count(v)) r.fail("seed: expected a non-negative integer");
        o.seed = v.get<std::uint64_t>();
    }
    if (r.has("output_dir")) o.output_dir = r.text("output_dir");
    r.finish();
    for (auto [name, v] : {std::pair{"sigma_grid", o.sigma_grid}, {"subsidy_grid", o.subsidy_grid},
                           {"mc_samples", o.mc_samples}, {"offset_steps", o.offset_steps}}) {
        if (v == 0) throw ConfigError(std::string("run.") + name + ": must be > 0");
    }
    return o;
}

LearnerMode parse_mode(const std::string& s) {
    if (s == "minimize_penalty") return LearnerMode::MinimizePenalty;
    if (s == "equalize_errors") return LearnerMode::EqualizeErrors;
    throw ConfigError("learner_mode: unknown mode '" + s + "' (minimize_penalty | equalize_errors)");
}

Json distribution_json(const DistributionSpec& d) {
    if (d.knots.empty()) return Json{{"type", "uniform"}};
    Json knots = Json::array();
    for (const auto& [x, f] : d.knots) knots.push_back({x, f});
    return Json{{"type", "piecewise_linear"}, {"knots", knots}};
}

Json cost_json(const cost::Family& f) {
    return std::visit(
        [](const auto& c) -> Json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, cost::Linear>) {
                return {{"type", "linear"}, {"slope", c.slope}};
            } else if constexpr (std::is_same_v<T, cost::SqrtLinear>) {
                return {{"type", "sqrt_linear"}, {"sqrt_coeff", c.sqrt_coeff}, {"lin_coeff", c.lin_coeff}};
            } else if constexpr (std::is_same_v<T, cost::PowerSum>) {
                Json terms = Json::array();
                for (const auto& t : c.terms) terms.push_back({{"coeff", t.coeff}, {"exponent", t.exponent}});
                return {{"type", "power_sum"}, {"terms", terms}};
            } else {
                return {{"type", "tabulated"}, {"xs", c.xs}, {"values", c.values}};
            }
        },
        f);
}

CostFunction build_cost(const cost::Family& f) {
    return std::visit(
        [](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, cost::Linear>) {
                return CostFunction::linear(c.slope);
            } else if constexpr (std::is_same_v<T, cost::SqrtLinear>) {
                return CostFunction::sqrt_linear(c.sqrt_coeff, c.lin_coeff);
            } else if constexpr (std::is_same_v<T, cost::PowerSum>) {
                return CostFunction::power_sum(c.terms);
            } else {
                return CostFunction::tabulated(c.xs, c.values);
            }
        },
        f);
}

Group1D build_group(const GroupSpec& g) { return {g.distribution.build(), build_cost(g.cost), {g.tau}}; }

GroupND build_group_nd(const GroupNDSpec& g) {
    GroupND out;
    for (const auto& m : g.marginals) out.marginals.push_back(m.build());
    out.costs = {g.costs};
    out.rule = {g.weights, g.tau};
    return out;
}

template <class F>
auto rethrow_as_config(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ConfigError(where + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

}  // namespace

Distribution DistributionSpec::build() const {
    return knots.empty() ? Distribution::uniform() : Distribution::piecewise_linear(knots);
}

std::string to_string(LearnerMode m) {
    return m == LearnerMode::EqualizeErrors ? "equalize_errors" : "minimize_penalty";
}

Scenario ScenarioConfig::scenario() const {
    const auto* m = std::get_if<Model1D>(&model);
    if (!m) throw ConfigError("model: command needs a 1-D scenario, config is 'nd'");
    return rethrow_as_config("scenario", [&] {
        ScenarioParams p;
        p.group_a = build_group(m->a);
        p.group_b = build_group(m->b);
        p.p_a = p_a;
        p.p_b = p_b;
        p.c_fp = c_fp;
        p.c_fn = c_fn;
        p.lambda = lambda;
        p.mode = m->mode;
        return Scenario(std::move(p));
    });
}

ScenarioND ScenarioConfig::scenario_nd() const {
    const auto* m = std::get_if<ModelND>(&model);
    if (!m) throw ConfigError("model: command needs a d-D scenario, config is '1d'");
    return rethrow_as_config("scenario", [&] {
        ScenarioNDParams p;
        p.group_a = build_group_nd(m->a);
        p.group_b = build_group_nd(m->b);
        p.p_a = p_a;
        p.p_b = p_b;
        p.c_fp = c_fp;
        p.c_fn = c_fn;
        p.lambda = lambda;
        return ScenarioND(std::move(p));
    });
}

std::vector<double> ScenarioConfig::direction() const {
    const auto& m = std::get<ModelND>(model);
    return m.direction ? *m.direction : m.a.weights;
}

ScenarioConfig parse_config(const Json& j) {
    Reader r(j, "");
    ScenarioConfig c;
    if (r.has("name")) c.name = r.text("name");
    const std::string kind = r.has("model") ? r.text("model") : "1d";
    if (kind == "1d") {
        Model1D m;
        m.a = parse_group(r.get("group_a"), "group_a");
        m.b = parse_group(r.get("group_b"), "group_b");
        if (r.has("learner_mode")) m.mode = parse_mode(r.text("learner_mode"));
        c.model = std::move(m);
    } else if (kind == "nd") {
        ModelND m;
        m.a = parse_group_nd(r.get("group_a"), "group_a");
        m.b = parse_group_nd(r.get("group_b"), "group_b");
        if (r.has("direction")) m.direction = r.numbers("direction");
        c.model = std::move(m);
    } else {
        r.fail("model: unknown model '" + kind + "' (1d | nd)");
    }
    c.p_a = r.number_or("p_a", c.p_a);
    c.p_b = r.number_or("p_b", c.p_b);
    c.c_fp = r.number_or("c_fp", c.c_fp);
    c.c_fn = r.number_or("c_fn", c.c_fn);
    c.lambda = r.number_or("lambda", c.lambda);
    if (r.has("run")) c.run = parse_run(r.get("run"));
    r.finish();

    // Building validates; only the error matters here.
    if (c.is_nd()) {
        const auto s = c.scenario_nd();
        const auto dir = c.direction();
        if (dir.size() != s.dim()) throw ConfigError("direction: length must equal the dimension");
        rethrow_as_config("direction", [&] {
            Hyperplane{dir, 0.0}.validate();
            return 0;
        });
    } else {
        (void)c.scenario();
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": malformed JSON: " + e.what());
    }
    return parse_config(j);
}

Json to_json(const ScenarioConfig& c) {
    Json j;
    j["name"] = c.name;
    if (const auto* m = std::get_if<Model1D>(&c.model)) {
        j["model"] = "1d";
        for (auto [key, g] : {std::pair{"group_a", &m->a}, {"group_b", &m->b}}) {
            j[key] = {{"distribution", distribution_json(g->distribution)}, {"cost", cost_json(g->cost)}, {"tau", g->tau}};
        }
        j["learner_mode"] = to_string(m->mode);
    } else {
        const auto& n = std::get<ModelND>(c.model);
        j["model"] = "nd";
        for (auto [key, g] : {std::pair{"group_a", &n.a}, {"group_b", &n.b}}) {
            Json marg = Json::array();
            for (const auto& d : g->marginals) marg.push_back(distribution_json(d));
            j[key] = {{"marginals", marg}, {"costs", g->costs}, {"weights", g->weights}, {"tau", g->tau}};
        }
        if (n.direction) j["direction"] = *n.direction;
    }
    j["p_a"] = c.p_a;
    j["p_b"] = c.p_b;
    j["c_fp"] = c.c_fp;
    j["c_fn"] = c.c_fn;
    j["lambda"] = c.lambda;
    Json run{{"sigma_grid", c.run.sigma_grid},     {"subsidy_grid", c.run.subsidy_grid},
             {"delta_grid", c.run.delta_grid},     {"mc_samples", c.run.mc_samples},
             {"seed", c.run.seed},                 {"offset_steps", c.run.offset_steps}};
    if (c.run.output_dir) run["output_dir"] = *c.run.output_dir;
    j["run"] = run;
    return j;
}

ScenarioConfig config_from(const Scenario& s, std::string name) {
    ScenarioConfig c;
    c.name = std::move(name);
    Model1D m;
    for (auto [spec, g] : {std::pair{&m.a, &s.a()}, {&m.b, &s.b()}}) {
        if (!g->distribution.is_uniform()) spec->distribution.knots = g->distribution.knots();
        spec->cost = g->cost.family();
        spec->tau = g->tau();
    }
    m.mode = s.mode();
    c.model = std::move(m);
    c.p_a = s.p_a();
    c.p_b = s.p_b();
    c.c_fp = s.c_fp();
    c.c_fn = s.c_fn();
    c.lambda = s.lambda();
    return c;
}

}  // namespace scg::reports
