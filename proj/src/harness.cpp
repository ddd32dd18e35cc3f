#include "assocmem/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "assocmem/errors.hpp"
#include "assocmem/holographic.hpp"
#include "assocmem/patterns.hpp"

namespace assocmem {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

// Independent streams inside one trial.
enum Stream : std::uint64_t { kPatterns = 1, kResponses = 2, kCorruption = 3, kCollapse = 4 };

double normalized_overlap(const ComplexState& target, const ComplexState& out) {
    const double nrm = out.norm();
    if (nrm == 0.0) return 0.0;
    return std::abs(inner(target, out)) / (nrm * target.norm());
}

TrialRecord hopfield_trial(const ExperimentConfig& cfg, std::size_t p, double level, std::uint64_t seed) {
    const auto set = generate_bipolar(cfg.n, p, mix(seed, kPatterns));
    const auto J = hebb_learn(set, cfg.zero_diagonal);
    const auto key = corrupt_flip(set[0], level, mix(seed, kCorruption));
    const auto r = recall_iterate(J, set, key, {cfg.activation, cfg.max_iters, cfg.tol});

    TrialRecord t;
    t.winner = r.winner;
    const double nrm = r.output.norm();
    t.target_overlap = nrm == 0.0 ? 0.0 : std::abs(set[0].dot(r.output)) / nrm;
    t.signal_A = r.signal_A;
    t.noise_B_norm = r.noise_B_norm;
    t.iterations = r.iterations;
    return t;
}

ComplexState corrupt(const ExperimentConfig& cfg, const ComplexState& s, double level, std::uint64_t seed) {
    return cfg.corruption == CorruptionKind::flip ? corrupt_flip(s, level, seed) : corrupt_phase(s, level, seed);
}

TrialRecord holographic_trial(const ExperimentConfig& cfg, std::size_t p, double level, std::uint64_t seed) {
    const auto stimuli = generate_phase_states(cfg.n, p, mix(seed, kPatterns));
    const auto responses = generate_phase_states(cfg.n, p, mix(seed, kResponses));
    std::vector<StimulusResponse> pairs;
    for (std::size_t k = 0; k < p; ++k) pairs.push_back({stimuli[k], responses[k]});
    const auto J = holo_learn(pairs);
    const auto r = holo_recall(J, corrupt(cfg, stimuli[0], level, mix(seed, kCorruption)));

    TrialRecord t;
    const auto pick = pick_winner(r.spectrum.coefficients);
    t.winner = pick.winner;
    t.target_overlap = normalized_overlap(responses[0], r.response);
    if (pick.winner) {
        const Complex c = r.spectrum.coefficients[*pick.winner];
        t.signal_A = std::abs(c);
        t.noise_B_norm = (r.response.values() - c * responses[*pick.winner].values()).norm();
    } else {
        t.noise_B_norm = r.response.norm();
    }
    t.iterations = 1;
    return t;
}

TrialRecord quantum_trial(const ExperimentConfig& cfg, std::size_t p, double level, std::uint64_t seed) {
    auto states = generate_phase_states(cfg.n, p, mix(seed, kPatterns), cfg.grid_weight);
    if (cfg.orthogonalize) states = orthogonalize(states);
    const auto G = green_learn(states);
    const auto key = corrupt(cfg, states[0], level, mix(seed, kCorruption));

    TrialRecord t;
    try {
        const auto r = recall(G, key, cfg.mode, mix(seed, kCollapse));
        t.winner = r.collapse ? std::optional<std::size_t>(r.collapse->winner) : r.winner;
        t.target_overlap = normalized_overlap(states[0], r.output);
        t.signal_A = r.signal_A;
        t.noise_B_norm = r.noise_B_norm;
    } catch (const NoRecallError&) {
        // Orthogonal key: counts as a failed trial.
    }
    t.iterations = 1;
    return t;
}

} // namespace

std::string to_string(Model m) {
    switch (m) {
    case Model::hopfield: return "hopfield";
    case Model::holographic: return "holographic";
    case Model::quantum: return "quantum";
    }
    return "?";
}

std::string to_string(CorruptionKind k) { return k == CorruptionKind::flip ? "flip" : "phase"; }

Model parse_model(const std::string& s) {
    if (s == "hopfield") return Model::hopfield;
    if (s == "holographic") return Model::holographic;
    if (s == "quantum") return Model::quantum;
    throw InvalidArgument("unknown model \"" + s + "\"");
}

CorruptionKind parse_corruption(const std::string& s) {
    if (s == "flip") return CorruptionKind::flip;
    if (s == "phase") return CorruptionKind::phase;
    throw InvalidArgument("unknown corruption kind \"" + s + "\"");
}

void ExperimentConfig::validate() const {
    if (n == 0) throw InvalidArgument("config: n must be positive");
    if (p_values.empty()) throw InvalidArgument("config: p_values is empty");
    if (levels.empty()) throw InvalidArgument("config: levels is empty");
    if (trials == 0) throw InvalidArgument("config: trials must be positive");
    for (auto p : p_values) {
        if (p == 0) throw InvalidArgument("config: p values must be positive");
        if (model == Model::quantum && orthogonalize && p > n) {
            throw InvalidArgument("config: orthogonalized quantum states need p <= n");
        }
    }
    for (auto l : levels) {
        if (corruption == CorruptionKind::flip && !(l >= 0.0 && l <= 1.0)) {
            throw InvalidArgument("config: flip levels must lie in [0, 1]");
        }
        if (corruption == CorruptionKind::phase && !(l >= 0.0)) {
            throw InvalidArgument("config: phase noise levels must be non-negative");
        }
    }
    if (model == Model::hopfield && corruption != CorruptionKind::flip) {
        throw InvalidArgument("config: hopfield patterns are real; only flip corruption applies");
    }
    if (max_iters == 0 || !(tol > 0.0)) throw InvalidArgument("config: need max_iters >= 1 and tol > 0");
    if (!(grid_weight > 0.0)) throw InvalidArgument("config: grid_weight must be positive");
}

Json to_json(const ExperimentConfig& cfg) {
    return Json{{"model", to_string(cfg.model)},
                {"n", cfg.n},
                {"p_values", cfg.p_values},
                {"corruption", {{"kind", to_string(cfg.corruption)}, {"levels", cfg.levels}}},
                {"trials", cfg.trials},
                {"base_seed", cfg.base_seed},
                {"activation", cfg.activation == Activation::sign ? "sign" : "linear"},
                {"zero_diagonal", cfg.zero_diagonal},
                {"max_iters", cfg.max_iters},
                {"tol", cfg.tol},
                {"mode", cfg.mode == RecallMode::sampled ? "sampled" : "deterministic"},
                {"orthogonalize", cfg.orthogonalize},
                {"grid_weight", cfg.grid_weight},
                {"success_threshold", cfg.success_threshold},
                {"output", cfg.output_path.string()},
                {"threads", cfg.threads}};
}

ExperimentConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    ExperimentConfig cfg;
    try {
        if (j.contains("model")) cfg.model = parse_model(j.at("model").get<std::string>());
        cfg.n = j.value("n", cfg.n);
        cfg.p_values = j.value("p_values", cfg.p_values);
        if (j.contains("corruption")) {
            const auto& c = j.at("corruption");
            if (c.contains("kind")) cfg.corruption = parse_corruption(c.at("kind").get<std::string>());
            if (c.contains("levels")) cfg.levels = c.at("levels").get<std::vector<double>>();
            if (c.contains("level")) cfg.levels = {c.at("level").get<double>()};
        }
        cfg.trials = j.value("trials", cfg.trials);
        cfg.base_seed = j.value("base_seed", cfg.base_seed);
        if (j.contains("activation")) {
            const auto a = j.at("activation").get<std::string>();
            if (a != "sign" && a != "linear") throw InvalidArgument("unknown activation \"" + a + "\"");
            cfg.activation = a == "sign" ? Activation::sign : Activation::linear;
        }
        cfg.zero_diagonal = j.value("zero_diagonal", cfg.zero_diagonal);
        cfg.max_iters = j.value("max_iters", cfg.max_iters);
        cfg.tol = j.value("tol", cfg.tol);
        if (j.contains("mode")) {
            const auto m = j.at("mode").get<std::string>();
            if (m != "deterministic" && m != "sampled") throw InvalidArgument("unknown mode \"" + m + "\"");
            cfg.mode = m == "sampled" ? RecallMode::sampled : RecallMode::deterministic;
        }
        cfg.orthogonalize = j.value("orthogonalize", cfg.orthogonalize);
        cfg.grid_weight = j.value("grid_weight", cfg.grid_weight);
        cfg.success_threshold = j.value("success_threshold", cfg.success_threshold);
        if (j.contains("output")) cfg.output_path = j.at("output").get<std::string>();
        cfg.threads = j.value("threads", cfg.threads);
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::uint64_t cell_seed(std::uint64_t base_seed, Model model, std::size_t n, std::size_t p,
                        double level, std::size_t trial) {
    std::uint64_t h = splitmix64(base_seed);
    h = mix(h, static_cast<std::uint64_t>(model));
    h = mix(h, n);
    h = mix(h, p);
    h = mix(h, std::bit_cast<std::uint64_t>(level));
    return mix(h, trial);
}

TrialRecord run_recall_trial(const ExperimentConfig& cfg, std::size_t p, double level, std::size_t trial) {
    const auto seed = cell_seed(cfg.base_seed, cfg.model, cfg.n, p, level, trial);
    TrialRecord t;
    switch (cfg.model) {
    case Model::hopfield: t = hopfield_trial(cfg, p, level, seed); break;
    case Model::holographic: t = holographic_trial(cfg, p, level, seed); break;
    case Model::quantum: t = quantum_trial(cfg, p, level, seed); break;
    }
    t.success = t.winner == std::optional<std::size_t>(0) && t.target_overlap > cfg.success_threshold;
    return t;
}

SweepTable capacity_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t cells = cfg.p_values.size() * cfg.levels.size();
    const std::size_t total = cells * cfg.trials;
    std::vector<TrialRecord> records(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t cell = idx / cfg.trials;
            const std::size_t trial = idx % cfg.trials;
            const std::size_t p = cfg.p_values[cell / cfg.levels.size()];
            const double level = cfg.levels[cell % cfg.levels.size()];
            try {
                records[idx] = run_recall_trial(cfg, p, level, trial);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    // Reduce each cell in trial order so the table is independent of scheduling.
    SweepTable table;
    table.rows.reserve(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::size_t p = cfg.p_values[cell / cfg.levels.size()];
        const double level = cfg.levels[cell % cfg.levels.size()];
        double hits = 0, signal = 0, noise = 0, iters = 0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const auto& r = records[cell * cfg.trials + t];
            hits += r.success ? 1.0 : 0.0;
            signal += r.signal_A;
            noise += r.noise_B_norm;
            iters += static_cast<double>(r.iterations);
        }
        const auto trials = static_cast<double>(cfg.trials);
        table.rows.push_back({cfg.model, cfg.n, p, static_cast<double>(p) / static_cast<double>(cfg.n), level,
                              cfg.trials, hits / trials, signal / trials, noise / trials, iters / trials});
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out = "model,n,p,load,level,trials,accuracy,mean_signal,mean_noise,mean_iters\n";
    for (const auto& r : table.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(r.model), r.n, r.p, r.load, r.level,
                           r.trials, r.accuracy, r.mean_signal, r.mean_noise, r.mean_iters);
    }
    return out;
}

Json to_json(const SweepTable& table) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        rows.push_back(Json{{"model", to_string(r.model)}, {"n", r.n}, {"p", r.p}, {"load", r.load},
                            {"level", r.level}, {"trials", r.trials}, {"accuracy", r.accuracy},
                            {"mean_signal", r.mean_signal}, {"mean_noise", r.mean_noise},
                            {"mean_iters", r.mean_iters}});
    }
    return rows;
}

void write_sweep(const ExperimentConfig& cfg, const SweepTable& table) {
    const auto& path = cfg.output_path;
    try {
        if (path.extension() == ".json") {
            write_text_file(path, to_json(table).dump(2) + "\n");
        } else {
            write_text_file(path, to_csv(table));
        }
        auto sidecar = path;
        sidecar += ".config.json";
        write_text_file(sidecar, to_json(cfg).dump(2) + "\n");
    } catch (const std::filesystem::filesystem_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

bool CorrespondenceReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<std::string> CorrespondenceReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

CorrespondenceReport correspondence_suite(std::size_t n, std::size_t p, std::uint64_t seed,
                                          double phase_sigma, double tolerance) {
    if (p == 0 || p > n) throw InvalidArgument("correspondence_suite: need 1 <= p <= n");
    const auto set = generate_bipolar(n, p, mix(seed, kPatterns));
    const auto J = hebb_learn(set, false);

    std::vector<ComplexState> states;
    for (std::size_t k = 0; k < p; ++k) {
        auto s = ComplexState::from_real(set[k]);
        if (phase_sigma > 0.0) s = corrupt_phase(s, phase_sigma, mix(mix(seed, kResponses), k));
        states.push_back(std::move(s));
    }
    const auto G = green_learn(states);

    CorrespondenceReport report;
    auto add = [&](std::string name, double diff, double tol) {
        report.checks.push_back({std::move(name), diff, diff <= tol});
    };

    // Hebb matrix vs real part of the Green kernel
    add("hebb_matrix_vs_green_kernel", (J.weights() - G.kernel().real()).cwiseAbs().maxCoeff(), tolerance);

    // One dynamics step on an arbitrary state
    RealVector probe = corrupt_flip(set[0], 0.5, mix(seed, kCorruption));
    const RealVector hop_step = recall_step(J, probe, Activation::linear);
    const ComplexState q_step = propagate(G, ComplexState::from_real(probe));
    add("dynamics_step", (hop_step.cast<Complex>() - q_step.values()).cwiseAbs().maxCoeff(), tolerance);

    // Recall of a corrupted key: output and signal/noise split
    const RealVector key = corrupt_flip(set[0], 0.1, mix(seed, kCollapse));
    const auto hop = recall_iterate(J, set, key, {Activation::linear, 1, 1e-9});
    const auto qr = recall(G, ComplexState::from_real(key));
    double recall_diff = (hop.output.cast<Complex>() - qr.output.values()).cwiseAbs().maxCoeff();
    if (hop.winner != qr.winner) {
        recall_diff = std::numeric_limits<double>::infinity();
    } else {
        recall_diff = std::max({recall_diff, std::abs(std::abs(hop.signal_A) - qr.signal_A),
                                std::abs(hop.noise_B_norm - qr.noise_B_norm)});
    }
    add("recall_output", recall_diff, tolerance);

    // Expansion coefficients of the key
    const auto hop_spec = signal_noise_decompose(set, key);
    const auto q_spec = decompose(states, ComplexState::from_real(key));
    double coeff_diff = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        coeff_diff = std::max(coeff_diff, std::abs(hop_spec.coefficients[k] - q_spec.coefficients[k]));
    }
    add("expansion_coefficients", coeff_diff, tolerance);

    // Holographic self-association reproduces the Hebb matrix exactly.
    std::vector<StimulusResponse> pairs;
    for (const auto& v : set.patterns()) {
        pairs.push_back({ComplexState::from_real(v), ComplexState::from_real(v)});
    }
    const auto H = holo_learn(pairs);
    const double holo_diff = std::max((H.weights().real() - J.weights()).cwiseAbs().maxCoeff(),
                                      H.weights().imag().cwiseAbs().maxCoeff());
    add("holographic_self_association", holo_diff, 0.0);
    return report;
}

Json to_json(const CorrespondenceReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"name", c.name},
                              {"max_abs_diff", std::isfinite(c.max_abs_diff) ? Json(c.max_abs_diff) : Json("inf")},
                              {"passed", c.passed}});
    }
    return Json{{"passed", report.passed()}, {"checks", std::move(checks)}, {"failures", report.failures()}};
}

} // namespace assocmem
