#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "assocmem/patterns.hpp"
#include "assocmem/types.hpp"

namespace assocmem {

enum class Activation {
    linear,  // q(t+dt) = J q(t)
    sign,    // elementwise sign of J q(t), renormalized to unit norm
};

// Hebbian memory matrix J = sum_k v^k (v^k)^T.
class HebbMatrix {
public:
    HebbMatrix(RealMatrix weights, bool zero_diagonal, std::size_t source_count);

    std::size_t n() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
    const RealMatrix& weights() const noexcept { return weights_; }
    bool zero_diagonal() const noexcept { return zero_diagonal_; }
    std::size_t source_count() const noexcept { return source_count_; }

private:
    RealMatrix weights_;
    bool zero_diagonal_;
    std::size_t source_count_;
};

struct RecallOptions {
    Activation activation = Activation::sign;
    std::size_t max_iters = 100;
    double tol = 1e-9;
};

struct RecallResult {
    RealVector output;
    std::optional<std::size_t> winner;  // absent when the probe has no stored component
    bool ambiguous = false;
    double signal_A = 0.0;              // C'^winner of the state fed into the last step
    double noise_B_norm = 0.0;          // ||output - signal_A v^winner||
    std::size_t iterations = 0;
    bool converged = false;
};

HebbMatrix hebb_learn(const RealPatternSet& set, bool zero_diagonal = false);

RealVector recall_step(const HebbMatrix& J, const RealVector& q, Activation activation);

RecallResult recall_iterate(const HebbMatrix& J, const RealPatternSet& set, const RealVector& key,
                            const RecallOptions& options = {});

// H = -1/2 q^T J q
double energy(const HebbMatrix& J, const RealVector& q);

// C'^k = <v^k, probe> for every stored pattern; residual is the part of the
// probe orthogonal to span{v^k}.
OverlapSpectrum signal_noise_decompose(const RealPatternSet& set, const RealVector& probe);

struct AsyncTrajectory {
    RealVector final_state;
    std::vector<double> energies;  // energies[0] is the start; one entry per site visit after
    std::size_t sweeps = 0;
    bool converged = false;        // a full sweep changed no site
};

// Asynchronous single-site sign dynamics on the +-1/sqrt(n) lattice. Each
// sweep visits all sites in a fresh seeded random order; zero net input
// keeps the current sign.
AsyncTrajectory async_sign_descent(const HebbMatrix& J, const RealVector& start,
                                   std::uint64_t seed, std::size_t max_sweeps = 100);

} // namespace assocmem
