#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace assocmem {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// Probes whose every squared coefficient falls below this are treated as
// orthogonal to the memory rather than as carrying numerical dust.
inline constexpr double kDeadThreshold = 1e-12;

// Top-two |coefficient| gap below which a winner is reported as ambiguous.
inline constexpr double kTieGap = 1e-9;

// Coefficients of a probe against every stored pattern, plus what is left
// over outside their span.
struct OverlapSpectrum {
    std::vector<Complex> coefficients;
    double in_span_norm = 0.0;   // sum of |c_k|^2
    double residual_norm = 0.0;  // norm of probe minus its expansion
    // False when the basis was not orthonormal; residual_norm is then the
    // norm of probe - sum c_k v_k, which is not an orthogonal remainder.
    bool residual_exact = true;
};

// Index of the largest |coefficient|, lowest index on ties; nullopt when
// every |c_k|^2 is below the dead threshold.
struct WinnerPick {
    std::optional<std::size_t> winner;
    bool ambiguous = false;
};

WinnerPick pick_winner(const std::vector<Complex>& coefficients,
                       double dead_threshold = kDeadThreshold);

} // namespace assocmem
