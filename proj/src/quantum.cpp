#include "assocmem/quantum.hpp"

#include <cmath>
#include <random>
#include <string>

#include "assocmem/errors.hpp"

namespace assocmem {

namespace {

constexpr double kOrthonormalTol = 1e-8;

void check_consistent(const std::vector<ComplexState>& states, const char* what) {
    if (states.empty()) throw InvalidArgument(std::string(what) + ": no eigenstates");
    const auto& first = states.front();
    for (std::size_t k = 1; k < states.size(); ++k) {
        if (states[k].n() != first.n() || states[k].grid_weight() != first.grid_weight()) {
            throw InvalidArgument(std::string(what) + ": eigenstate " + std::to_string(k) +
                                  " differs in size or grid weight");
        }
    }
}

bool is_orthonormal(const std::vector<ComplexState>& states) {
    for (std::size_t a = 0; a < states.size(); ++a) {
        if (std::abs(inner(states[a], states[a]) - 1.0) >= kOrthonormalTol) return false;
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            if (std::abs(inner(states[a], states[b])) >= kOrthonormalTol) return false;
        }
    }
    return true;
}

} // namespace

GreenMemory::GreenMemory(ComplexMatrix kernel, std::vector<ComplexState> eigenstates,
                         double grid_weight, bool orthonormal_source)
    : kernel_(std::move(kernel)),
      eigenstates_(std::move(eigenstates)),
      grid_weight_(grid_weight),
      orthonormal_source_(orthonormal_source) {
    if (kernel_.rows() != kernel_.cols() || kernel_.rows() == 0) {
        throw InvalidArgument("Green kernel must be square and non-empty");
    }
    if (!(grid_weight_ > 0.0)) throw InvalidArgument("grid_weight must be positive");
    for (const auto& s : eigenstates_) {
        if (static_cast<Eigen::Index>(s.n()) != kernel_.rows()) {
            throw InvalidArgument("eigenstate length differs from the kernel dimension");
        }
    }
}

GreenMemory green_learn(const std::vector<ComplexState>& eigenstates) {
    check_consistent(eigenstates, "green_learn");
    const auto n = static_cast<Eigen::Index>(eigenstates.front().n());
    const double w = eigenstates.front().grid_weight();

    ComplexMatrix G(n, n);
    // Fill the upper triangle and mirror it so Hermiticity holds bitwise.
    for (Eigen::Index r1 = 0; r1 < n; ++r1) {
        for (Eigen::Index r2 = r1; r2 < n; ++r2) {
            Complex acc(0.0, 0.0);
            for (const auto& psi : eigenstates) {
                acc += std::conj(psi.values()[r1]) * psi.values()[r2];
            }
            if (r1 == r2) acc.imag(0.0);
            G(r1, r2) = acc;
            G(r2, r1) = std::conj(acc);
        }
    }
    return GreenMemory(std::move(G), eigenstates, w, is_orthonormal(eigenstates));
}

GreenMemory phase_hebb_kernel(const std::vector<RealVector>& amplitudes,
                              const std::vector<RealVector>& phases, double grid_weight) {
    if (amplitudes.size() != phases.size()) {
        throw InvalidArgument("phase_hebb_kernel: amplitude and phase lists differ in length");
    }
    std::vector<ComplexState> states;
    states.reserve(amplitudes.size());
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        if (amplitudes[k].size() != phases[k].size()) {
            throw InvalidArgument("phase_hebb_kernel: pattern " + std::to_string(k) +
                                  " amplitude/phase length mismatch");
        }
        states.push_back(ComplexState::from_polar(
            std::span<const double>(amplitudes[k].data(), static_cast<std::size_t>(amplitudes[k].size())),
            std::span<const double>(phases[k].data(), static_cast<std::size_t>(phases[k].size())),
            grid_weight));
    }
    return green_learn(states);
}

ComplexState propagate(const GreenMemory& G, const ComplexState& psi_prime) {
    if (psi_prime.n() != G.n()) {
        throw InvalidArgument("propagate: state length " + std::to_string(psi_prime.n()) +
                              " does not match kernel size " + std::to_string(G.n()));
    }
    if (psi_prime.grid_weight() != G.grid_weight()) {
        throw InvalidArgument("propagate: state grid weight differs from kernel grid weight");
    }
    // First kernel index contracts with the input.
    ComplexVector out = (G.kernel().transpose() * psi_prime.values()) * G.grid_weight();
    return ComplexState(std::move(out), G.grid_weight());
}

ComplexMatrix compose(const ComplexMatrix& a, const ComplexMatrix& b, double grid_weight) {
    if (a.cols() != b.rows()) throw InvalidArgument("compose: kernel sizes differ");
    return (a * b) * grid_weight;
}

OverlapSpectrum decompose(const std::vector<ComplexState>& eigenstates, const ComplexState& psi_prime) {
    check_consistent(eigenstates, "decompose");
    OverlapSpectrum spec;
    spec.coefficients.reserve(eigenstates.size());
    ComplexVector expansion = ComplexVector::Zero(static_cast<Eigen::Index>(psi_prime.n()));
    for (const auto& psi : eigenstates) {
        const Complex c = inner(psi, psi_prime);
        spec.coefficients.push_back(c);
        spec.in_span_norm += std::norm(c);
        expansion += c * psi.values();
    }
    spec.residual_norm = ComplexState(psi_prime.values() - expansion, psi_prime.grid_weight()).norm();
    spec.residual_exact = is_orthonormal(eigenstates);
    return spec;
}

CollapseOutcome collapse_readout(const OverlapSpectrum& spectrum,
                                 const std::vector<ComplexState>& eigenstates, std::uint64_t seed,
                                 double dead_threshold) {
    if (spectrum.coefficients.size() != eigenstates.size()) {
        throw InvalidArgument("collapse_readout: spectrum has " + std::to_string(spectrum.coefficients.size()) +
                              " coefficients for " + std::to_string(eigenstates.size()) + " eigenstates");
    }
    std::vector<double> weights(spectrum.coefficients.size());
    double total = 0.0;
    bool alive = false;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        weights[k] = std::norm(spectrum.coefficients[k]);
        total += weights[k];
        alive = alive || weights[k] > dead_threshold;
    }
    if (!alive) throw NoRecallError();

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> born(weights.begin(), weights.end());
    const std::size_t k = born(rng);
    return CollapseOutcome{k, weights[k] / total, eigenstates[k], seed};
}

QuantumRecall recall(const GreenMemory& G, const ComplexState& psi_prime, RecallMode mode,
                     std::uint64_t seed) {
    ComplexState output = propagate(G, psi_prime);
    OverlapSpectrum spectrum = decompose(G.eigenstates(), psi_prime);
    const auto pick = pick_winner(spectrum.coefficients);

    QuantumRecall r{std::move(output), std::move(spectrum), pick.winner, pick.ambiguous, 0.0, 0.0, std::nullopt};
    if (pick.winner) {
        const Complex c = r.spectrum.coefficients[*pick.winner];
        r.signal_A = std::abs(c);
        const auto& target = G.eigenstates()[*pick.winner].values();
        r.noise_B_norm = ComplexState(r.output.values() - c * target, G.grid_weight()).norm();
    } else {
        r.noise_B_norm = r.output.norm();
    }
    if (mode == RecallMode::sampled) {
        r.collapse = collapse_readout(r.spectrum, G.eigenstates(), seed);
    }
    return r;
}

} // namespace assocmem
