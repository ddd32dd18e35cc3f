#include "assocmem/holographic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "assocmem/errors.hpp"

namespace assocmem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTol = 1e-10;

} // namespace

ComplexState encode_phase(std::span<const double> x, std::optional<std::span<const double>> magnitudes) {
    if (x.empty()) throw InvalidArgument("encode_phase: empty input");
    std::vector<double> amps(x.size(), 1.0 / std::sqrt(static_cast<double>(x.size())));
    if (magnitudes) {
        if (magnitudes->size() != x.size()) {
            throw InvalidArgument("encode_phase: magnitudes length does not match input length");
        }
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!((*magnitudes)[i] > 0.0)) {
                throw InvalidArgument("encode_phase: magnitude at " + std::to_string(i) + " is not positive");
            }
            sq += (*magnitudes)[i] * (*magnitudes)[i];
        }
        const double nrm = std::sqrt(sq);
        for (std::size_t i = 0; i < x.size(); ++i) amps[i] = (*magnitudes)[i] / nrm;
    }
    std::vector<double> phases(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
            throw InvalidArgument("encode_phase: entry " + std::to_string(i) + " outside [0, 1]");
        }
        phases[i] = kTwoPi * x[i];
    }
    return ComplexState::from_polar(amps, phases);
}

std::vector<double> decode_phase(const ComplexState& s) {
    std::vector<double> x(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) x[i] = s.phase(i) / kTwoPi;
    return x;
}

HoloMatrix::HoloMatrix(ComplexMatrix weights, std::vector<StimulusResponse> pairs)
    : weights_(std::move(weights)), pairs_(std::move(pairs)) {}

HoloMatrix holo_learn(const std::vector<StimulusResponse>& pairs) {
    if (pairs.empty()) throw InvalidArgument("holo_learn: no pairs");
    const std::size_t n_in = pairs.front().stimulus.n();
    const std::size_t n_out = pairs.front().response.n();
    ComplexMatrix J = ComplexMatrix::Zero(static_cast<Eigen::Index>(n_out), static_cast<Eigen::Index>(n_in));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [s, o] = pairs[k];
        if (s.n() != n_in || o.n() != n_out) {
            throw InvalidArgument("holo_learn: pair " + std::to_string(k) + " has inconsistent dimensions");
        }
        if (std::abs(s.values().norm() - 1.0) > kUnitTol) {
            throw InvalidArgument("holo_learn: stimulus " + std::to_string(k) + " is not unit-norm");
        }
        J.noalias() += o.values() * s.values().adjoint();
    }
    return HoloMatrix(std::move(J), pairs);
}

HoloMatrix holo_learn_concatenated(const std::vector<ComplexState>& vectors, std::size_t boundary) {
    std::vector<StimulusResponse> pairs;
    pairs.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (boundary == 0 || boundary >= v.n()) {
            throw InvalidArgument("holo_learn_concatenated: boundary must split the vector into two non-empty parts");
        }
        const auto b = static_cast<Eigen::Index>(boundary);
        ComplexVector s = v.values().head(b);
        const double nrm = s.norm();
        if (nrm == 0.0) throw InvalidArgument("holo_learn_concatenated: zero stimulus part");
        s /= nrm;
        pairs.push_back({ComplexState(std::move(s), v.grid_weight()),
                         ComplexState(v.values().tail(v.values().size() - b), v.grid_weight())});
    }
    return holo_learn(pairs);
}

HoloRecall holo_recall(const HoloMatrix& J, const ComplexState& key) {
    if (key.n() != J.n_in()) {
        throw InvalidArgument("holo_recall: key length " + std::to_string(key.n()) +
                              " does not match stimulus dimension " + std::to_string(J.n_in()));
    }
    ComplexVector response = J.weights() * key.values();

    OverlapSpectrum spec;
    spec.coefficients.reserve(J.source_count());
    ComplexVector expansion = ComplexVector::Zero(key.values().size());
    for (const auto& [s, o] : J.pairs()) {
        // Raw (unweighted) inner product, matching the J * key contraction.
        const Complex c = s.values().dot(key.values());
        spec.coefficients.push_back(c);
        spec.in_span_norm += std::norm(c);
        expansion += c * s.values();
    }
    spec.residual_norm = (key.values() - expansion).norm();
    spec.residual_exact = true;
    const auto& pairs = J.pairs();
    for (std::size_t a = 0; a < pairs.size() && spec.residual_exact; ++a) {
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            if (std::abs(pairs[a].stimulus.values().dot(pairs[b].stimulus.values())) > 1e-8) {
                spec.residual_exact = false;
                break;
            }
        }
    }
    const double out_weight = J.pairs().front().response.grid_weight();
    return {ComplexState(std::move(response), out_weight), std::move(spec)};
}

} // namespace assocmem
