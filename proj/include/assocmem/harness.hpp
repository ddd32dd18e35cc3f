#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "assocmem/hopfield.hpp"
#include "assocmem/quantum.hpp"
#include "assocmem/serialize.hpp"

namespace assocmem {

enum class Model { hopfield, holographic, quantum };
enum class CorruptionKind { flip, phase };

std::string to_string(Model m);
std::string to_string(CorruptionKind k);
Model parse_model(const std::string& s);
CorruptionKind parse_corruption(const std::string& s);

struct ExperimentConfig {
    Model model = Model::hopfield;
    std::size_t n = 100;
    std::vector<std::size_t> p_values{5};
    CorruptionKind corruption = CorruptionKind::flip;
    std::vector<double> levels{0.1};
    std::size_t trials = 100;
    std::uint64_t base_seed = 1;

    // hopfield
    Activation activation = Activation::sign;
    bool zero_diagonal = true;
    std::size_t max_iters = 100;
    double tol = 1e-9;

    // quantum
    RecallMode mode = RecallMode::deterministic;
    bool orthogonalize = true;
    double grid_weight = 1.0;

    // A trial succeeds when the right pattern wins and the output overlaps
    // the target by more than this.
    double success_threshold = 0.9;

    std::filesystem::path output_path = "sweep.csv";
    // 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;

    void validate() const;
};

Json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const Json& j);

// Deterministic per-cell seed mixing every grid coordinate.
std::uint64_t cell_seed(std::uint64_t base_seed, Model model, std::size_t n, std::size_t p,
                        double level, std::size_t trial);

struct TrialRecord {
    bool success = false;
    std::optional<std::size_t> winner;
    double target_overlap = 0.0;  // |<target, output>| / ||output||
    double signal_A = 0.0;
    double noise_B_norm = 0.0;
    std::size_t iterations = 0;
};

// Stores p patterns, corrupts pattern 0 by `level`, recalls, scores.
TrialRecord run_recall_trial(const ExperimentConfig& cfg, std::size_t p, double level, std::size_t trial);

struct SweepRow {
    Model model;
    std::size_t n;
    std::size_t p;
    double load;
    double level;
    std::size_t trials;
    double accuracy;
    double mean_signal;
    double mean_noise;
    double mean_iters;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

// Rows are ordered p-major, then level, matching the config lists.
SweepTable capacity_sweep(const ExperimentConfig& cfg);

std::string to_csv(const SweepTable& table);
Json to_json(const SweepTable& table);

// Writes the table to cfg.output_path (CSV, or JSON when the path ends in
// .json) plus a sidecar <output>.config.json holding the resolved config.
void write_sweep(const ExperimentConfig& cfg, const SweepTable& table);

struct CorrespondenceCheck {
    std::string name;
    double max_abs_diff = 0.0;
    bool passed = false;
};

struct CorrespondenceReport {
    std::vector<CorrespondenceCheck> checks;
    bool passed() const;
    std::vector<std::string> failures() const;
};

// Builds one real pattern set and runs it through the Hebbian (linear) and
// zero-phase quantum pipelines, checking matrices, recall outputs and
// expansion coefficients agree, plus holographic self-association against
// the Hebb matrix. phase_sigma > 0 injects random phases into the quantum
// eigenstates as a negative control.
CorrespondenceReport correspondence_suite(std::size_t n, std::size_t p, std::uint64_t seed,
                                          double phase_sigma = 0.0, double tolerance = 1e-12);

Json to_json(const CorrespondenceReport& report);

} // namespace assocmem
