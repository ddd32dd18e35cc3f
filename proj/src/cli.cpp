#include "assocmem/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "assocmem/errors.hpp"
#include "assocmem/harness.hpp"

namespace assocmem::cli {

namespace {

Json complex_array(const ComplexVector& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(Json::array({z.real(), z.imag()}));
    return out;
}

Json coefficient_array(const std::vector<Complex>& cs) {
    Json out = Json::array();
    for (const auto& z : cs) out.push_back(Json::array({z.real(), z.imag()}));
    return out;
}

Json optional_index(const std::optional<std::size_t>& k) { return k ? Json(*k) : Json(nullptr); }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

struct GenOptions {
    std::string kind = "real";
    std::size_t n = 16;
    std::size_t p = 4;
    std::uint64_t seed = 1;
    bool orthogonalize = false;
    double grid_weight = 1.0;
    std::string from;
    std::size_t index = 0;
    double flip = 0.0;
    double phase_sigma = 0.0;
    std::string out;
};

Json run_gen(const GenOptions& o) {
    if (!o.from.empty()) {
        const Json src = read_json_file(o.from);
        if (pattern_kind(src) == "real") {
            const auto set = real_patterns_from_json(src);
            if (o.index >= set.p()) throw InvalidArgument("--index out of range");
            if (o.phase_sigma != 0.0) throw InvalidArgument("--phase-sigma needs complex patterns");
            return to_json(RealPatternSet({corrupt_flip(set[o.index], o.flip, o.seed)}, Normalization::keep));
        }
        const auto states = complex_states_from_json(src);
        if (o.index >= states.size()) throw InvalidArgument("--index out of range");
        // Separate streams so the two corruptions stay independent.
        auto key = corrupt_flip(states[o.index], o.flip, o.seed);
        key = corrupt_phase(key, o.phase_sigma, o.seed + 1);
        return to_json(std::vector<ComplexState>{key});
    }
    if (o.kind == "real") {
        auto set = generate_bipolar(o.n, o.p, o.seed);
        if (o.orthogonalize) set = orthogonalize(set);
        return to_json(set);
    }
    if (o.kind == "complex") {
        auto states = generate_phase_states(o.n, o.p, o.seed, o.grid_weight);
        if (o.orthogonalize) states = orthogonalize(states);
        return to_json(states);
    }
    throw InvalidArgument("--kind must be real or complex");
}

struct LearnOptions {
    std::string model = "hopfield";
    std::string patterns;
    std::string responses;
    bool zero_diagonal = false;
    std::string out;
};

Json run_learn(const LearnOptions& o) {
    const Json src = read_json_file(o.patterns);
    switch (parse_model(o.model)) {
    case Model::hopfield: {
        const auto set = real_patterns_from_json(src);
        return to_json(hebb_learn(set, o.zero_diagonal), set);
    }
    case Model::holographic: {
        const auto stimuli = complex_states_from_json(src);
        const auto responses = o.responses.empty() ? stimuli : complex_states_from_json(read_json_file(o.responses));
        if (stimuli.size() != responses.size()) throw InvalidArgument("stimulus and response counts differ");
        std::vector<StimulusResponse> pairs;
        for (std::size_t k = 0; k < stimuli.size(); ++k) pairs.push_back({stimuli[k], responses[k]});
        return to_json(holo_learn(pairs));
    }
    case Model::quantum:
        return to_json(green_learn(complex_states_from_json(src)));
    }
    throw InvalidArgument("unknown model");
}

struct RecallOptionsCli {
    std::string model = "hopfield";
    std::string memory;
    std::string key;
    std::size_t index = 0;
    std::string activation = "sign";
    std::size_t max_iters = 100;
    double tol = 1e-9;
    std::string mode = "deterministic";
    std::uint64_t seed = 1;
};

Json run_recall(const RecallOptionsCli& o) {
    const Json mem = read_json_file(o.memory);
    const Json key_json = read_json_file(o.key);
    switch (parse_model(o.model)) {
    case Model::hopfield: {
        const auto stored = hebb_from_json(mem);
        const auto keys = real_patterns_from_json(key_json);
        if (o.index >= keys.p()) throw InvalidArgument("--index out of range");
        if (o.activation != "sign" && o.activation != "linear") throw InvalidArgument("--activation must be sign or linear");
        const RecallOptions ro{o.activation == "sign" ? Activation::sign : Activation::linear, o.max_iters, o.tol};
        const auto r = recall_iterate(stored.matrix, stored.patterns, keys[o.index], ro);
        if (!r.winner) throw NoRecallError();
        return recall_report(r);
    }
    case Model::holographic: {
        const auto J = holo_from_json(mem);
        const auto keys = complex_states_from_json(key_json);
        if (o.index >= keys.size()) throw InvalidArgument("--index out of range");
        const auto r = holo_recall(J, keys[o.index]);
        if (!pick_winner(r.spectrum.coefficients).winner) throw NoRecallError();
        return recall_report(r);
    }
    case Model::quantum: {
        const auto G = green_from_json(mem);
        const auto keys = complex_states_from_json(key_json);
        if (o.index >= keys.size()) throw InvalidArgument("--index out of range");
        if (o.mode != "deterministic" && o.mode != "sampled") throw InvalidArgument("--mode must be deterministic or sampled");
        const auto r = recall(G, keys[o.index], o.mode == "sampled" ? RecallMode::sampled : RecallMode::deterministic, o.seed);
        if (!r.winner) throw NoRecallError();
        return recall_report(r);
    }
    }
    throw InvalidArgument("unknown model");
}

void maybe_write(const std::string& path, const Json& j) {
    if (!path.empty()) write_text_file(path, j.dump(2) + "\n");
}

} // namespace

Json recall_report(const RecallResult& r) {
    return Json{{"model", "hopfield"},
                {"winner", optional_index(r.winner)},
                {"ambiguous", r.ambiguous},
                {"signal_A", r.signal_A},
                {"noise_B", r.noise_B_norm},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"output", std::vector<double>(r.output.begin(), r.output.end())}};
}

Json recall_report(const HoloRecall& r) {
    const auto pick = pick_winner(r.spectrum.coefficients);
    double signal = 0.0;
    if (pick.winner) signal = std::abs(r.spectrum.coefficients[*pick.winner]);
    return Json{{"model", "holographic"},
                {"winner", optional_index(pick.winner)},
                {"ambiguous", pick.ambiguous},
                {"signal_A", signal},
                {"coefficients", coefficient_array(r.spectrum.coefficients)},
                {"residual_norm", r.spectrum.residual_norm},
                {"output", complex_array(r.response.values())}};
}

Json recall_report(const QuantumRecall& r) {
    Json j{{"model", "quantum"},
           {"winner", optional_index(r.winner)},
           {"ambiguous", r.ambiguous},
           {"signal_A", r.signal_A},
           {"noise_B", r.noise_B_norm},
           {"coefficients", coefficient_array(r.spectrum.coefficients)},
           {"in_span_norm", r.spectrum.in_span_norm},
           {"residual_norm", r.spectrum.residual_norm},
           {"output", complex_array(r.output.values())}};
    if (r.collapse) {
        j["collapse"] = Json{{"winner", r.collapse->winner},
                             {"probability", r.collapse->probability},
                             {"seed", r.collapse->seed}};
    }
    return j;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Associative memory models: Hebbian, holographic and Green-function recall"};
    app.require_subcommand(1, 1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a pattern set, or derive a corrupted key from one");
    gen_cmd->add_option("--kind", gen.kind, "real | complex")->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Sites per pattern")->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--p", gen.p, "Pattern count")->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_flag("--orthogonalize", gen.orthogonalize, "Gram-Schmidt the generated set");
    gen_cmd->add_option("--grid-weight", gen.grid_weight)->capture_default_str();
    gen_cmd->add_option("--from", gen.from, "Derive a key from this pattern file instead");
    gen_cmd->add_option("--index", gen.index, "Pattern to derive the key from")->capture_default_str();
    gen_cmd->add_option("--flip", gen.flip, "Fraction of sites to sign-flip")->capture_default_str();
    gen_cmd->add_option("--phase-sigma", gen.phase_sigma, "Gaussian phase noise (radians)")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Also write the result here");

    LearnOptions learn;
    auto* learn_cmd = app.add_subcommand("learn", "Build a memory matrix from a pattern file");
    learn_cmd->add_option("--model", learn.model)->check(CLI::IsMember({"hopfield", "holographic", "quantum"}))->capture_default_str();
    learn_cmd->add_option("--patterns", learn.patterns, "Pattern (or stimulus) file")->required();
    learn_cmd->add_option("--responses", learn.responses, "Holographic response file (default: self-association)");
    learn_cmd->add_flag("--zero-diagonal", learn.zero_diagonal, "Drop Hebbian self-coupling");
    learn_cmd->add_option("--out", learn.out, "Also write the memory here");

    RecallOptionsCli rec;
    auto* recall_cmd = app.add_subcommand("recall", "Recall a stored pattern from a key");
    recall_cmd->add_option("--model", rec.model)->check(CLI::IsMember({"hopfield", "holographic", "quantum"}))->capture_default_str();
    recall_cmd->add_option("--memory", rec.memory)->required();
    recall_cmd->add_option("--key", rec.key)->required();
    recall_cmd->add_option("--index", rec.index, "Key pattern within the key file")->capture_default_str();
    recall_cmd->add_option("--activation", rec.activation)->check(CLI::IsMember({"sign", "linear"}))->capture_default_str();
    recall_cmd->add_option("--max-iters", rec.max_iters)->check(CLI::PositiveNumber)->capture_default_str();
    recall_cmd->add_option("--tol", rec.tol)->check(CLI::PositiveNumber)->capture_default_str();
    recall_cmd->add_option("--mode", rec.mode)->check(CLI::IsMember({"deterministic", "sampled"}))->capture_default_str();
    recall_cmd->add_option("--seed", rec.seed)->capture_default_str();

    std::string config_path, sweep_out, format = "csv";
    unsigned threads = 0;
    bool threads_set = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a capacity / corruption sweep from a config file");
    sweep_cmd->add_option("--config", config_path)->required();
    sweep_cmd->add_option("--out", sweep_out, "Override the configured output path");
    sweep_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    auto* threads_opt = sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sweep_cmd->add_option("--seed", "Override base_seed");

    std::size_t cn = 16, cp = 4;
    std::uint64_t cseed = 1;
    double csigma = 0.0;
    auto* corr_cmd = app.add_subcommand("correspond", "Run the Hebbian / quantum correspondence checks");
    corr_cmd->add_option("--n", cn)->check(CLI::PositiveNumber)->capture_default_str();
    corr_cmd->add_option("--p", cp)->check(CLI::PositiveNumber)->capture_default_str();
    corr_cmd->add_option("--seed", cseed)->capture_default_str();
    corr_cmd->add_option("--phase-sigma", csigma, "Inject random phases (negative control)")->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }
    threads_set = threads_opt->count() > 0;

    err << "# resolved options\n" << app.config_to_str(true, false);

    try {
        if (gen_cmd->parsed()) {
            const auto j = run_gen(gen);
            maybe_write(gen.out, j);
            emit(out, j);
        } else if (learn_cmd->parsed()) {
            const auto j = run_learn(learn);
            maybe_write(learn.out, j);
            emit(out, j);
        } else if (recall_cmd->parsed()) {
            emit(out, run_recall(rec));
        } else if (sweep_cmd->parsed()) {
            auto cfg = config_from_json(read_json_file(config_path));
            if (!sweep_out.empty()) cfg.output_path = sweep_out;
            if (auto* s = sweep_cmd->get_option("--seed"); s->count() > 0) cfg.base_seed = s->as<std::uint64_t>();
            if (threads_set) cfg.threads = threads;
            if (format == "json" && cfg.output_path.extension() != ".json") cfg.output_path.replace_extension(".json");
            if (format == "csv" && cfg.output_path.extension() == ".json") cfg.output_path.replace_extension(".csv");
            err << "# resolved config\n" << to_json(cfg).dump(2) << '\n';
            const auto table = capacity_sweep(cfg);
            write_sweep(cfg, table);
            out << "wrote " << cfg.output_path.string() << '\n';
        } else if (corr_cmd->parsed()) {
            const auto report = correspondence_suite(cn, cp, cseed, csigma);
            emit(out, to_json(report));
            if (!report.passed()) {
                err << "error: correspondence mismatch:";
                for (const auto& f : report.failures()) err << ' ' << f;
                err << '\n';
                return kDomainError;
            }
        }
    } catch (const NoRecallError&) {
        err << "error: no-recall\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kOk;
}

} // namespace assocmem::cli
