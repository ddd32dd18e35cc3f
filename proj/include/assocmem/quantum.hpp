#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "assocmem/patterns.hpp"
#include "assocmem/types.hpp"

namespace assocmem {

// Green-function memory G(r1, r2) = sum_k conj(psi^k(r1)) psi^k(r2) over a
// uniform grid with quadrature weight grid_weight. The kernel doubles as the
// one-step propagator and, for orthonormal eigenstates, the projector onto
// their span. It is related to the conventional Green function by G = -i G~.
class GreenMemory {
public:
    GreenMemory(ComplexMatrix kernel, std::vector<ComplexState> eigenstates, double grid_weight,
                bool orthonormal_source);

    std::size_t n() const noexcept { return static_cast<std::size_t>(kernel_.rows()); }
    const ComplexMatrix& kernel() const noexcept { return kernel_; }
    double grid_weight() const noexcept { return grid_weight_; }
    std::size_t eigenstate_count() const noexcept { return eigenstates_.size(); }
    const std::vector<ComplexState>& eigenstates() const noexcept { return eigenstates_; }
    bool orthonormal_source() const noexcept { return orthonormal_source_; }

private:
    ComplexMatrix kernel_;
    std::vector<ComplexState> eigenstates_;
    double grid_weight_;
    bool orthonormal_source_;
};

GreenMemory green_learn(const std::vector<ComplexState>& eigenstates);

// Builds psi^k = A^k exp(i phi^k) and delegates to green_learn. The kernel
// entries are A(r1) A(r2) exp(+i (phi(r2) - phi(r1))).
GreenMemory phase_hebb_kernel(const std::vector<RealVector>& amplitudes,
                              const std::vector<RealVector>& phases, double grid_weight = 1.0);

// Psi(r2) = sum_r1 G(r1, r2) Psi'(r1) dr. Not renormalized.
ComplexState propagate(const GreenMemory& G, const ComplexState& psi_prime);

// (A o B)(r1, r3) = sum_r2 A(r1, r2) B(r2, r3) dr
ComplexMatrix compose(const ComplexMatrix& a, const ComplexMatrix& b, double grid_weight);

// c'^k = sum_r conj(psi^k(r)) Psi'(r) dr. residual_exact is false unless the
// eigenstates are orthonormal.
OverlapSpectrum decompose(const std::vector<ComplexState>& eigenstates, const ComplexState& psi_prime);

struct CollapseOutcome {
    std::size_t winner = 0;
    double probability = 0.0;
    ComplexState post_state;
    std::uint64_t seed = 0;
};

// Born-rule draw of a stored eigenstate: P(k) = |c'^k|^2 / sum_j |c'^j|^2.
// Throws NoRecallError when every |c'^k|^2 is below dead_threshold.
CollapseOutcome collapse_readout(const OverlapSpectrum& spectrum,
                                 const std::vector<ComplexState>& eigenstates, std::uint64_t seed,
                                 double dead_threshold = kDeadThreshold);

enum class RecallMode { deterministic, sampled };

struct QuantumRecall {
    ComplexState output;
    OverlapSpectrum spectrum;
    std::optional<std::size_t> winner;
    bool ambiguous = false;
    double signal_A = 0.0;      // |c'^winner|
    double noise_B_norm = 0.0;  // ||output - c'^winner psi^winner||
    std::optional<CollapseOutcome> collapse;
};

QuantumRecall recall(const GreenMemory& G, const ComplexState& psi_prime,
                     RecallMode mode = RecallMode::deterministic, std::uint64_t seed = 0);

} // namespace assocmem
