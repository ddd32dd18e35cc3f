#pragma once

#include <optional>
#include <span>
#include <vector>

#include "assocmem/patterns.hpp"
#include "assocmem/types.hpp"

namespace assocmem {

// theta_h = 2*pi*x_h. Magnitudes default to 1/sqrt(N); given magnitudes are
// rescaled so the state has unit norm.
ComplexState encode_phase(std::span<const double> x,
                          std::optional<std::span<const double>> magnitudes = std::nullopt);

// phase / (2*pi), in [0, 1).
std::vector<double> decode_phase(const ComplexState& s);

struct StimulusResponse {
    ComplexState stimulus;
    ComplexState response;
};

// Complex interference memory J = sum_k o^k (s^k)^dagger, an n_out x n_in
// matrix. The learned pairs are kept so recall can report per-pattern
// contributions.
class HoloMatrix {
public:
    HoloMatrix(ComplexMatrix weights, std::vector<StimulusResponse> pairs);

    std::size_t n_in() const noexcept { return static_cast<std::size_t>(weights_.cols()); }
    std::size_t n_out() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
    std::size_t source_count() const noexcept { return pairs_.size(); }
    const ComplexMatrix& weights() const noexcept { return weights_; }
    const std::vector<StimulusResponse>& pairs() const noexcept { return pairs_; }

private:
    ComplexMatrix weights_;
    std::vector<StimulusResponse> pairs_;
};

HoloMatrix holo_learn(const std::vector<StimulusResponse>& pairs);

// Self-association over concatenated vectors: each vector is split at
// `boundary` into stimulus [0, boundary) and response [boundary, n). The
// stimulus half is renormalized to unit norm.
HoloMatrix holo_learn_concatenated(const std::vector<ComplexState>& vectors, std::size_t boundary);

struct HoloRecall {
    ComplexState response;
    // c_k = <s^k, key>; the k-th stored response enters with weight c_k.
    OverlapSpectrum spectrum;
};

HoloRecall holo_recall(const HoloMatrix& J, const ComplexState& key);

} // namespace assocmem
