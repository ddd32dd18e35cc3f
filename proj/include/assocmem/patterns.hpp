#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "assocmem/types.hpp"

namespace assocmem {

enum class Normalization {
    unit,  // rescale every pattern to unit norm on construction
    keep,  // store as given; normalized() reports whether they happen to be unit
};

// P real activity patterns v^k of N sites each.
class RealPatternSet {
public:
    explicit RealPatternSet(std::vector<RealVector> patterns,
                            Normalization mode = Normalization::unit);

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return patterns_.size(); }
    bool normalized() const noexcept { return normalized_; }

    const RealVector& operator[](std::size_t k) const { return patterns_[k]; }
    const std::vector<RealVector>& patterns() const noexcept { return patterns_; }

    bool operator==(const RealPatternSet&) const;

private:
    std::size_t n_ = 0;
    std::vector<RealVector> patterns_;
    bool normalized_ = false;
};

// A complex vector over sites or grid points. Integrals over the grid are
// Riemann sums with the scalar quadrature weight grid_weight.
class ComplexState {
public:
    explicit ComplexState(ComplexVector values, double grid_weight = 1.0);

    static ComplexState from_polar(std::span<const double> amplitudes,
                                   std::span<const double> phases,
                                   double grid_weight = 1.0);
    static ComplexState from_real(const RealVector& values, double grid_weight = 1.0);

    std::size_t n() const noexcept { return static_cast<std::size_t>(values_.size()); }
    double grid_weight() const noexcept { return grid_weight_; }
    const ComplexVector& values() const noexcept { return values_; }
    Complex operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

    double amplitude(std::size_t i) const;
    // In [0, 2*pi).
    double phase(std::size_t i) const;

    // sqrt(sum |psi|^2 * grid_weight)
    double norm() const;

    bool operator==(const ComplexState& other) const {
        return grid_weight_ == other.grid_weight_ && values_ == other.values_;
    }

private:
    ComplexVector values_;
    double grid_weight_;
};

struct PatternDistance {
    Complex overlap;
    // Fraction of sites whose signs differ; only for real inputs with no zero entries.
    std::optional<double> hamming_fraction;
};

// Sum a_i b_i.
PatternDistance overlap(const RealVector& a, const RealVector& b);
// Sum conj(a_i) b_i * grid_weight.
PatternDistance overlap(const ComplexState& a, const ComplexState& b);

double inner(const RealVector& a, const RealVector& b);
Complex inner(const ComplexState& a, const ComplexState& b);

// Unit-norm bipolar patterns with entries +-1/sqrt(n).
RealPatternSet generate_bipolar(std::size_t n, std::size_t p, std::uint64_t seed);

// Unit-norm states with uniform amplitude and independent uniform phases.
std::vector<ComplexState> generate_phase_states(std::size_t n, std::size_t p, std::uint64_t seed,
                                                double grid_weight = 1.0);

// Maps +-1/sqrt(n) entries back to +-1 for display.
std::vector<int> to_raw_bipolar(const RealVector& v);

RealPatternSet orthogonalize(const RealPatternSet& set);
std::vector<ComplexState> orthogonalize(const std::vector<ComplexState>& states);

RealVector corrupt_flip(const RealVector& v, double fraction, std::uint64_t seed);
ComplexState corrupt_flip(const ComplexState& s, double fraction, std::uint64_t seed);
ComplexState corrupt_phase(const ComplexState& s, double sigma, std::uint64_t seed);

} // namespace assocmem
