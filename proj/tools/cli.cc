// Copyright 2026 The cosetmoe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cosetmoe/acceptance.h"
#include "cosetmoe/ecc.h"
#include "cosetmoe/info.h"
#include "cosetmoe/moe.h"
#include "cosetmoe/proto.h"
#include "cosetmoe/report.h"
#include "cosetmoe/rng.h"
#include "cosetmoe/trials.h"

namespace cosetmoe::cli {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kExperiments = {"moe", "qecm", "urbc", "qkd", "tfkw"};

const std::vector<std::string> kSweepHeader = {"command", "param",  "value", "metric", "count",
                                               "trials",  "estimate", "ci_lo", "ci_hi",  "bound"};

// ---- config plumbing ----

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) {
        out.push_back(part);
    }
    return out;
}

CodeSpec parse_code(const json &j) {
    if (j.is_object()) {
        return CodeSpec::from_json(j);
    }
    if (!j.is_string()) {
        throw ConfigError("code must be a string or an object");
    }
    auto parts = split(j.get<std::string>(), ':');
    auto num = [&](size_t i) -> size_t {
        if (i >= parts.size()) {
            throw ConfigError("code '" + j.get<std::string>() + "': missing parameter");
        }
        return std::stoull(parts[i]);
    };
    const std::string &kind = parts.empty() ? "" : parts[0];
    if (kind == "hamming74" && parts.size() == 1) {
        return CodeSpec::hamming74();
    }
    if (kind == "repetition" && parts.size() == 2) {
        return CodeSpec::repetition(num(1));
    }
    if (kind == "block_repeat" && parts.size() == 3) {
        return CodeSpec::block_repeat(num(1), num(2));
    }
    if (kind == "random_linear" && (parts.size() == 3 || parts.size() == 4)) {
        return CodeSpec::random_linear(num(1), num(2), parts.size() == 4 ? num(3) : 0);
    }
    throw ConfigError("unknown code: " + j.get<std::string>());
}

std::optional<StrategySpec> parse_adversary(const json &j) {
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "none")) {
        return std::nullopt;
    }
    return StrategySpec::parse(j.get<std::string>());
}

template <class T>
std::optional<T> opt(const json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<T>();
}

bool is_integral(const json &v) {
    if (v.is_number_integer()) {
        return true;
    }
    return v.is_number_float() && std::isfinite(v.get<double>()) &&
           v.get<double>() == std::floor(v.get<double>());
}

// Checks `value` against the default's type and normalises integral floats.
json coerce(const std::string &key, const json &def, const json &value) {
    if (key == "code") {
        if (!value.is_string() && !value.is_object()) {
            throw ConfigError("config key 'code' expects a string or an object");
        }
        return value;
    }
    if (def.is_null() || value.is_null()) {
        return value;
    }
    if (def.is_boolean()) {
        if (!value.is_boolean()) {
            throw ConfigError("config key '" + key + "' expects a boolean");
        }
        return value;
    }
    if (def.is_number_integer()) {
        if (!is_integral(value) || value.get<double>() < 0) {
            throw ConfigError("config key '" + key + "' expects a non-negative integer");
        }
        return json(static_cast<uint64_t>(value.get<double>()));
    }
    if (def.is_number()) {
        if (!value.is_number()) {
            throw ConfigError("config key '" + key + "' expects a number");
        }
        return json(value.get<double>());
    }
    if (def.is_string() && !value.is_string()) {
        throw ConfigError("config key '" + key + "' expects a string");
    }
    return value;
}

json parse_value(const std::string &text) {
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) {
        return json(text);
    }
    return v;
}

// "key=value"; the value is read as JSON when it parses, else as a string.
std::pair<std::string, json> parse_assignment(const std::string &text) {
    size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("expected key=value, got '" + text + "'");
    }
    return {text.substr(0, eq), parse_value(text.substr(eq + 1))};
}

}  // namespace

json default_config(const std::string &command) {
    if (command == "bounds") {
        return {{"n", nullptr},     {"d", nullptr},   {"s", nullptr},  {"eta", nullptr},
                {"gamma", nullptr}, {"delta", nullptr}, {"kappa", nullptr}, {"ell", nullptr},
                {"m", 0},           {"mp", 0}};
    }
    if (command == "moe") {
        return {{"n", 4},          {"family", "register"}, {"m", 0},
                {"mp", 0},         {"strategy", "bob_all"}, {"trials", 10000},
                {"blind_charlie", false}, {"trace", nullptr}};
    }
    if (command == "qecm") {
        return {{"experiment", "correctness"}, {"n", 8},          {"ell", 2},
                {"family", "register"},        {"adversary", nullptr}, {"message_p0", nullptr},
                {"kappa", nullptr},            {"trials", 10000},  {"transcript", nullptr}};
    }
    if (command == "urbc") {
        return {{"mode", "run"},        {"n", 14},          {"ell", 2},
                {"code", "hamming74"},  {"reveal_size", 2}, {"scheme", "ideal"},
                {"family", "register"}, {"binding_attack", false}, {"adversary", nullptr},
                {"trials", 10000},      {"transcript", nullptr}};
    }
    if (command == "qkd") {
        return {{"mode", "run"},          {"n", 16},           {"ell", 2},
                {"gamma", 0.0},           {"reveal_size", 2},  {"code", "block_repeat:4:2"},
                {"family", "register"},   {"dx", 0.0},         {"dz", 0.0},
                {"fault", "none"},        {"eve", nullptr},    {"exact", false},
                {"kappa", nullptr},       {"trials", 10000},   {"transcript", nullptr}};
    }
    if (command == "tfkw") {
        return {{"n", 16},        {"test_count", 4},        {"gamma", 0.1},
                {"ell", 2},       {"code", "block_repeat:3:4"}, {"dx", 0.0},
                {"dz", 0.0},      {"eve", "none"},          {"device_check", false},
                {"trials", 1000}};
    }
    throw ConfigError("no configuration for command '" + command + "'");
}

json merge_config(const std::string &command, const json &file, const json &overrides) {
    json cfg = default_config(command);
    for (const json *layer : {&file, &overrides}) {
        if (layer->is_null()) {
            continue;
        }
        if (!layer->is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        for (auto it = layer->begin(); it != layer->end(); ++it) {
            if (!cfg.contains(it.key())) {
                throw ConfigError("unknown config key '" + it.key() + "' for " + command);
            }
            cfg[it.key()] = coerce(it.key(), default_config(command)[it.key()], it.value());
        }
    }
    return cfg;
}

namespace {

// "-" goes to the caller's stream, anything else is a file path.
void emit(std::ostream &out, const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        out << content << std::flush;
    } else {
        write_output(path, content);
    }
}

json summary(const std::string &metric, uint64_t count, uint64_t trials,
             std::optional<double> bound) {
    Interval ci = wilson_interval(count, trials);
    double est = trials == 0 ? 0 : static_cast<double>(count) / static_cast<double>(trials);
    return {{"metric", metric},  {"count", count},  {"trials", trials},
            {"estimate", est},   {"ci_lo", ci.lo},  {"ci_hi", ci.hi},
            {"bound", bound ? json(*bound) : json(nullptr)}};
}

json exact_summary(const std::string &metric, double value, std::optional<double> bound) {
    return {{"metric", metric}, {"count", nullptr}, {"trials", nullptr}, {"estimate", value},
            {"ci_lo", value},   {"ci_hi", value},   {"bound", bound ? json(*bound) : json(nullptr)}};
}

// Count and trial fields of a {count, rate, ci95} object.
json summary_from_rate(const std::string &metric, const json &rate, uint64_t trials,
                       std::optional<double> bound) {
    return summary(metric, rate.at("count").get<uint64_t>(), trials, bound);
}

void write_text(const json &path, const std::string &content) {
    if (path.is_null()) {
        return;
    }
    std::ofstream f(path.get<std::string>(), std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.get<std::string>());
    }
    f << content;
}

json run_bounds(const json &c) {
    BoundsParams p;
    p.n = opt<uint64_t>(c["n"]);
    p.d = opt<uint64_t>(c["d"]);
    p.s = opt<uint64_t>(c["s"]);
    p.eta = opt<double>(c["eta"]);
    p.gamma = opt<double>(c["gamma"]);
    p.delta = opt<double>(c["delta"]);
    p.kappa = opt<double>(c["kappa"]);
    p.ell = opt<uint64_t>(c["ell"]);
    p.m = c["m"].get<uint64_t>();
    p.mp = c["mp"].get<uint64_t>();
    return protocol_bounds(p).to_json();
}

json trial_record_json(uint64_t trial, const TrialRecord &r) {
    return {{"trial", trial},
            {"a", r.challenge.a.to_json()},
            {"t", r.challenge.t.to_hex()},
            {"tp", r.challenge.tp.to_hex()},
            {"bob_t", r.bob.t.to_hex()},
            {"bob_tp", r.bob.tp.to_hex()},
            {"charlie", r.charlie.to_hex()},
            {"bob_ok", r.bob_ok},
            {"charlie_ok", r.charlie_ok}};
}

json run_moe(const json &c, uint64_t seed, int threads) {
    MoeParams p;
    p.n = c["n"].get<size_t>();
    p.family = parse_family(c["family"].get<std::string>());
    p.m = c["m"].get<size_t>();
    p.mp = c["mp"].get<size_t>();
    p.trials = c["trials"].get<uint64_t>();
    p.seed = seed;
    p.threads = threads;
    p.blind_charlie = c["blind_charlie"].get<bool>();
    StrategySpec spec = StrategySpec::parse(c["strategy"].get<std::string>());
    auto strategy = builtin_strategy(spec);
    GameResult g = play_leaky(p, *strategy);
    std::optional<double> bound;
    if (4 * p.m <= p.n && 4 * p.mp <= p.n) {
        bound = moe_bound(p.n, p.m, p.mp);
    }
    std::optional<double> analytic = p.blind_charlie ? std::nullopt : analytic_win(spec, p);
    if (!c["trace"].is_null()) {
        std::string lines;
        for (uint64_t i = 0; i < p.trials; i++) {
            lines += trial_record_json(i, play_trial(p, *strategy, i)).dump() + "\n";
        }
        write_text(c["trace"], lines);
    }
    return {{"strategy", spec.to_string()},
            {"params", p.to_json()},
            {"game", g.to_json()},
            {"moe_bound", bound ? json(*bound) : json(nullptr)},
            {"analytic_win", analytic ? json(*analytic) : json(nullptr)},
            {"summary", summary("win", g.wins, g.trials, bound)}};
}

json run_qecm(const json &c, uint64_t seed, int threads) {
    QecmExperimentConfig cfg;
    cfg.params.n = c["n"].get<size_t>();
    cfg.params.ell = c["ell"].get<size_t>();
    cfg.params.family = parse_family(c["family"].get<std::string>());
    cfg.adversary = parse_adversary(c["adversary"]);
    cfg.source = c["message_p0"].is_null()
                     ? MessageSource::uniform(cfg.params.ell)
                     : MessageSource::skewed(cfg.params.ell, c["message_p0"].get<double>());
    cfg.kappa = opt<double>(c["kappa"]);
    cfg.trials = c["trials"].get<uint64_t>();
    cfg.seed = seed;
    cfg.threads = threads;
    QecmExperimentKind kind = parse_qecm_experiment(c["experiment"].get<std::string>());
    json rep = qecm_experiment(kind, cfg);
    switch (kind) {
        case QecmExperimentKind::kIndistinguishable:
            rep["summary"] = exact_summary("trace_distance", rep["trace_distance"], 1e-9);
            break;
        case QecmExperimentKind::kCorrectness:
            rep["summary"] = summary_from_rate("disagreement", rep["disagreement"], cfg.trials, 0.0);
            break;
        default:
            rep["summary"] =
                summary_from_rate("win", rep["win"], cfg.trials, rep["bound"].get<double>());
    }
    if (!c["transcript"].is_null()) {
        auto adversary = cfg.adversary ? builtin_strategy(*cfg.adversary) : nullptr;
        TrialRng rng(seed, 0);
        Gf2Vec m = cfg.source.sample(rng);
        write_text(c["transcript"],
                   run_qecm_id(cfg.params, adversary.get(), m, rng).transcript.to_jsonl());
    }
    return rep;
}

json run_urbc_cmd(const json &c, uint64_t seed, int threads) {
    UrbcParams p;
    p.n = c["n"].get<size_t>();
    p.ell = c["ell"].get<size_t>();
    p.code = parse_code(c["code"]);
    p.reveal_size = c["reveal_size"].get<size_t>();
    p.scheme = parse_commitment_kind(c["scheme"].get<std::string>());
    p.family = parse_family(c["family"].get<std::string>());
    p.binding_attack = c["binding_attack"].get<bool>();
    const std::string mode = c["mode"].get<std::string>();
    if (mode == "hiding_exact") {
        double d = urbc_hiding_exact(p);
        return {{"mode", mode},
                {"params", p.to_json()},
                {"distance", d},
                {"pass", d <= 1e-9},
                {"summary", exact_summary("hiding_distance", d, 1e-9)}};
    }
    if (mode != "run") {
        throw ConfigError("urbc mode must be run or hiding_exact");
    }
    LinearCode code = LinearCode::make(p.code);
    p.validate(code);
    auto adv_spec = parse_adversary(c["adversary"]);
    auto adversary = adv_spec ? builtin_strategy(*adv_spec) : nullptr;
    const uint64_t trials = c["trials"].get<uint64_t>();
    auto counts = count_trials<5>(trials, threads, [&](uint64_t i, auto &acc) {
        TrialRng rng(seed, i);
        UrbcOutcome o = run_urbc(p, code, adversary.get(), rng);
        acc[0] += o.f;
        acc[1] += o.g;
        acc[2] += o.f && o.y_hat && *o.y_hat == o.y;
        acc[3] += o.f && o.y_claimed && o.y_hat && *o.y_hat == *o.y_claimed && !(*o.y_claimed == o.y);
        acc[4] += o.f && o.eve_guess && *o.eve_guess == o.y;
    });
    BoundsParams bp;
    bp.n = p.n;
    bp.d = code.distance();
    bp.eta = p.eta();
    bp.ell = p.ell;
    BoundsReport b = protocol_bounds(bp);
    auto rate = [&](uint64_t k) {
        Interval ci = wilson_interval(k, trials);
        return json{{"count", k},
                    {"rate", trials ? static_cast<double>(k) / static_cast<double>(trials) : 0.0},
                    {"ci95", {ci.lo, ci.hi}}};
    };
    json rep{{"mode", mode},
             {"params", p.to_json()},
             {"code", code.to_json()},
             {"adversary", adv_spec ? json(adv_spec->to_string()) : json(nullptr)},
             {"trials", trials},
             {"accept", rate(counts[0])},
             {"g", rate(counts[1])},
             {"opened_to_committed", rate(counts[2])},
             {"opened_to_claimed", rate(counts[3])},
             {"eve_guess_correct", rate(counts[4])},
             {"binding_bound", b.binding_bound ? json(*b.binding_bound) : json(nullptr)}};
    rep["summary"] = summary("accept", counts[0], trials,
                             p.binding_attack ? b.binding_bound : std::nullopt);
    if (!c["transcript"].is_null()) {
        TrialRng rng(seed, 0);
        write_text(c["transcript"], run_urbc(p, code, adversary.get(), rng).transcript.to_jsonl());
    }
    return rep;
}

QkdParams qkd_params(const json &c) {
    QkdParams p;
    p.n = c["n"].get<size_t>();
    p.ell = c["ell"].get<size_t>();
    p.gamma = c["gamma"].get<double>();
    p.reveal_size = c["reveal_size"].get<size_t>();
    p.code = parse_code(c["code"]);
    p.family = parse_family(c["family"].get<std::string>());
    p.dx = c["dx"].get<double>();
    p.dz = c["dz"].get<double>();
    p.fault = parse_device_fault(c["fault"].get<std::string>());
    return p;
}

json run_qkd(const json &c, uint64_t seed, int threads) {
    QkdParams p = qkd_params(c);
    const std::string mode = c["mode"].get<std::string>();
    auto eve_spec = parse_adversary(c["eve"]);
    if (mode == "secrecy") {
        SecrecyProbeConfig cfg;
        cfg.params = p;
        cfg.eve = eve_spec;
        cfg.trials = c["trials"].get<uint64_t>();
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.exact = c["exact"].get<bool>();
        cfg.kappa = opt<double>(c["kappa"]);
        json rep = secrecy_probe(cfg);
        if (cfg.exact) {
            rep["summary"] = exact_summary("trace_distance", rep["trace_distance"],
                                           opt<double>(rep["secrecy_bound"]));
        } else {
            rep["summary"] = summary_from_rate("guess_and_accept", rep["guess_and_accept"],
                                               cfg.trials, rep["bound"].get<double>());
        }
        return rep;
    }
    if (mode != "run") {
        throw ConfigError("qkd mode must be run or secrecy");
    }
    LinearCode code = LinearCode::make(p.code);
    p.validate(code);
    auto eve = eve_spec ? builtin_strategy(*eve_spec) : nullptr;
    const uint64_t trials = c["trials"].get<uint64_t>();
    auto counts = count_trials<5>(trials, threads, [&](uint64_t i, auto &acc) {
        TrialRng rng(seed, i);
        QkdOutcome o = run_riqkd(p, code, eve.get(), rng);
        acc[0] += !o.f;
        acc[1] += !o.pe_pass;
        acc[2] += o.pe_pass && !o.ir_pass;
        acc[3] += o.f && !(*o.k == *o.k_hat);
        acc[4] += o.f && o.eve_guess && *o.eve_guess == *o.k;
    });
    BoundsParams bp;
    bp.n = p.n;
    bp.d = code.distance();
    bp.gamma = p.gamma;
    bp.eta = p.eta();
    bp.ell = p.ell;
    bp.kappa = opt<double>(c["kappa"]);
    if (p.dx == p.dz) {
        bp.delta = p.dx;
    }
    BoundsReport b = protocol_bounds(bp);
    auto rate = [&](uint64_t k) {
        Interval ci = wilson_interval(k, trials);
        return json{{"count", k},
                    {"rate", trials ? static_cast<double>(k) / static_cast<double>(trials) : 0.0},
                    {"ci95", {ci.lo, ci.hi}}};
    };
    json rep{{"mode", mode},
             {"params", p.to_json()},
             {"code", code.to_json()},
             {"eve", eve_spec ? json(eve_spec->to_string()) : json(nullptr)},
             {"trials", trials},
             {"abort", rate(counts[0])},
             {"pe_abort", rate(counts[1])},
             {"ir_abort", rate(counts[2])},
             {"key_mismatch_and_accept", rate(counts[3])},
             {"eve_key_correct", rate(counts[4])},
             {"bounds", b.to_json()}};
    rep["summary"] = summary("abort", counts[0], trials, b.completeness_bound);
    if (!c["transcript"].is_null()) {
        TrialRng rng(seed, 0);
        write_text(c["transcript"], run_riqkd(p, code, eve.get(), rng).transcript.to_jsonl());
    }
    return rep;
}

json run_tfkw_cmd(const json &c, uint64_t seed, int threads) {
    TfkwParams p;
    p.n = c["n"].get<size_t>();
    p.test_count = c["test_count"].get<size_t>();
    p.gamma = c["gamma"].get<double>();
    p.ell = c["ell"].get<size_t>();
    p.code = parse_code(c["code"]);
    p.dx = c["dx"].get<double>();
    p.dz = c["dz"].get<double>();
    const std::string eve = c["eve"].get<std::string>();
    if (eve == "none") {
        p.eve = TfkwEve::kNone;
    } else if (eve == "substitute_zero") {
        p.eve = TfkwEve::kSubstituteZero;
    } else {
        throw ConfigError("tfkw eve must be none or substitute_zero");
    }
    p.device_check = c["device_check"].get<bool>();
    LinearCode code = LinearCode::make(p.code);
    p.validate(code);
    const uint64_t trials = c["trials"].get<uint64_t>();
    auto counts = count_trials<3>(trials, threads, [&](uint64_t i, auto &acc) {
        TrialRng rng(seed, i);
        QkdOutcome o = run_tfkw(p, code, rng);
        acc[0] += !o.f;
        acc[1] += o.f && o.eve_guess && *o.eve_guess == *o.k_hat;
        acc[2] += o.f && o.k && !(*o.k == *o.k_hat);
    });
    json rep{{"params", p.to_json()},
             {"trials", trials},
             {"aborts", counts[0]},
             {"eve_key_equals_device_key", counts[1]},
             {"key_mismatch_and_accept", counts[2]}};
    rep["summary"] = summary("eve_key_correct", counts[1], trials, std::nullopt);
    return rep;
}

// ---- output ----

void flatten(const json &j, const std::string &prefix, std::vector<std::vector<json>> &rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        }
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); i++) {
            flatten(j[i], prefix + "." + std::to_string(i), rows);
        }
    } else {
        rows.push_back({prefix, j});
    }
}

std::string render(const json &envelope, const std::string &format) {
    if (format == "json") {
        return render_json(envelope);
    }
    CsvTable t{{"key", "value"}, {}};
    flatten(round_floats(envelope), "", t.rows);
    return t.render();
}

struct CommonFlags {
    std::string config;
    uint64_t seed = 1;
    int threads = 0;
    std::string out = "-";
    std::string format = "json";
    std::vector<std::string> sets;
    std::map<std::string, std::string> keys;
};

void add_common(CLI::App *sub, CommonFlags &f, bool with_config) {
    if (with_config) {
        sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--set", f.sets, "Config override key=value (repeatable)");
    }
    sub->add_option("--seed", f.seed, "Base seed");
    sub->add_option("--threads", f.threads, "Worker threads (default: COSETMOE_THREADS)");
    sub->add_option("--out", f.out, "Output path, - for stdout");
    sub->add_option("--format", f.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

json read_config_file(const std::string &path) {
    if (path.empty()) {
        return nullptr;
    }
    std::ifstream in(path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ConfigError("cannot parse config file " + path);
    }
    return j;
}

json collect_overrides(const CommonFlags &f) {
    json o = json::object();
    for (const auto &[k, v] : f.keys) {
        o[k] = parse_value(v);
    }
    for (const std::string &s : f.sets) {
        auto [k, v] = parse_assignment(s);
        o[k] = v;
    }
    return o;
}

bool result_passes(const json &result) {
    return !result.is_object() || !result.contains("pass") || result["pass"].get<bool>();
}

}  // namespace

json run_command(const std::string &command, const json &config, uint64_t seed, int threads) {
    try {
        if (command == "bounds") {
            return run_bounds(config);
        }
        if (command == "moe") {
            return run_moe(config, seed, threads);
        }
        if (command == "qecm") {
            return run_qecm(config, seed, threads);
        }
        if (command == "urbc") {
            return run_urbc_cmd(config, seed, threads);
        }
        if (command == "qkd") {
            return run_qkd(config, seed, threads);
        }
        if (command == "tfkw") {
            return run_tfkw_cmd(config, seed, threads);
        }
    } catch (const json::exception &e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown command '" + command + "'");
}

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Coset-state monogamy games and protocol simulations", "cosetmoe"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::map<std::string, CommonFlags> flags;
    std::map<std::string, CLI::App *> subs;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"bounds", "Evaluate the closed-form bounds"},
        {"moe", "Play the monogamy game with a built-in strategy"},
        {"qecm", "Coset-state encryption experiments"},
        {"urbc", "Uncloneable bit-string commitment runs"},
        {"qkd", "Receiver-independent QKD runs and secrecy probes"},
        {"tfkw", "BB84-style one-sided device-independent protocol runs"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        CommonFlags &f = flags[name];
        add_common(sub, f, true);
        json defaults = default_config(name);
        for (auto it = defaults.begin(); it != defaults.end(); ++it) {
            const std::string key = it.key();
            sub->add_option_function<std::string>(
                "--" + key, [&f, key](const std::string &v) { f.keys[key] = v; },
                "Config key " + key);
        }
        subs[name] = sub;
    }

    CommonFlags sweep_flags;
    std::string sweep_command = "qkd";
    std::string sweep_param;
    double sweep_from = 0;
    double sweep_to = 0;
    size_t sweep_steps = 0;
    CLI::App *sweep = app.add_subcommand("sweep", "Grid over one config key, CSV rows");
    add_common(sweep, sweep_flags, true);
    sweep_flags.format = "csv";
    sweep->add_option("--command", sweep_command, "Experiment to sweep")
        ->check(CLI::IsMember(kExperiments));
    sweep->add_option("--param", sweep_param, "Config key to vary")->required();
    sweep->add_option("--from", sweep_from, "First value")->required();
    sweep->add_option("--to", sweep_to, "Last value")->required();
    sweep->add_option("--steps", sweep_steps, "Number of grid points")->required();

    CommonFlags self_flags;
    std::vector<int> only;
    CLI::App *selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    add_common(selftest, self_flags, false);
    self_flags.seed = AcceptanceOptions{}.seed;
    selftest->add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion &e) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (selftest->parsed()) {
            AcceptanceOptions opts;
            opts.seed = self_flags.seed;
            opts.threads = self_flags.threads;
            opts.only = only;
            auto results = run_acceptance(
                opts, [&](const CriterionResult &r) { err << criterion_line(r) << "\n"; });
            json config{{"only", only}};
            json report = acceptance_report(results);
            emit(out, self_flags.out, render(make_envelope("selftest", config, opts.seed, report),
                                               self_flags.format));
            return report["all_pass"].get<bool>() ? 0 : 1;
        }
        if (sweep->parsed()) {
            json file = read_config_file(sweep_flags.config);
            json base = merge_config(sweep_command, file, collect_overrides(sweep_flags));
            if (!base.contains(sweep_param)) {
                throw ConfigError("unknown sweep parameter '" + sweep_param + "'");
            }
            CsvTable table{kSweepHeader, {}};
            json rows = json::array();
            for (size_t i = 0; i < sweep_steps; i++) {
                double v = sweep_steps == 1 ? sweep_from
                                            : sweep_from + (sweep_to - sweep_from) *
                                                               static_cast<double>(i) /
                                                               static_cast<double>(sweep_steps - 1);
                json cfg = merge_config(sweep_command, base, json{{sweep_param, v}});
                json s = run_command(sweep_command, cfg, sweep_flags.seed, sweep_flags.threads)
                             .at("summary");
                table.rows.push_back({sweep_command, sweep_param, cfg[sweep_param], s["metric"],
                                      s["count"], s["trials"], s["estimate"], s["ci_lo"],
                                      s["ci_hi"], s["bound"]});
                json row = s;
                row["value"] = cfg[sweep_param];
                rows.push_back(row);
            }
            if (sweep_flags.format == "csv") {
                emit(out, sweep_flags.out, table.render());
            } else {
                json config{{"command", sweep_command}, {"base", base},   {"param", sweep_param},
                            {"from", sweep_from},       {"to", sweep_to}, {"steps", sweep_steps}};
                emit(out, sweep_flags.out,
                             render_json(make_envelope("sweep", config, sweep_flags.seed, rows)));
            }
            return 0;
        }
        for (const auto &[name, sub] : subs) {
            if (!sub->parsed()) {
                continue;
            }
            const CommonFlags &f = flags[name];
            json cfg = merge_config(name, read_config_file(f.config), collect_overrides(f));
            json result = run_command(name, cfg, f.seed, f.threads);
            emit(out, f.out, render(make_envelope(name, cfg, f.seed, result), f.format));
            return result_passes(result) ? 0 : 1;
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << app.help();
    return 2;
}

}  // namespace cosetmoe::cli
