#include "assocmem/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "assocmem/errors.hpp"

namespace assocmem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTol = 1e-12;
constexpr double kDegenerate = 1e-10;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod of a value just below 0 can round back up to exactly 2*pi
    if (w >= kTwoPi) w = 0.0;
    return w;
}

std::vector<std::size_t> pick_sites(std::size_t n, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("flip fraction must lie in [0, 1], got " + std::to_string(fraction));
    }
    const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(count);
    return idx;
}

} // namespace

WinnerPick pick_winner(const std::vector<Complex>& coefficients, double dead_threshold) {
    WinnerPick pick;
    double best = -1.0;
    double second = -1.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        const double mag = std::abs(coefficients[k]);
        if (mag > best) {
            second = best;
            best = mag;
            pick.winner = k;
        } else if (mag > second) {
            second = mag;
        }
    }
    if (!pick.winner || best * best <= dead_threshold) {
        return {};
    }
    pick.ambiguous = second >= 0.0 && best - second < kTieGap;
    return pick;
}

RealPatternSet::RealPatternSet(std::vector<RealVector> patterns, Normalization mode)
    : patterns_(std::move(patterns)) {
    if (patterns_.empty()) throw InvalidArgument("pattern set must hold at least one pattern");
    n_ = static_cast<std::size_t>(patterns_.front().size());
    if (n_ == 0) throw InvalidArgument("patterns must have at least one site");
    for (std::size_t k = 0; k < patterns_.size(); ++k) {
        if (static_cast<std::size_t>(patterns_[k].size()) != n_) {
            throw InvalidArgument("pattern " + std::to_string(k) + " has length " +
                                  std::to_string(patterns_[k].size()) + ", expected " +
                                  std::to_string(n_));
        }
    }
    if (mode == Normalization::unit) {
        for (std::size_t k = 0; k < patterns_.size(); ++k) {
            const double nrm = patterns_[k].norm();
            if (nrm == 0.0) throw InvalidArgument("pattern " + std::to_string(k) + " is zero");
            if (std::abs(nrm - 1.0) > kUnitTol) patterns_[k] /= nrm;
        }
        normalized_ = true;
    } else {
        normalized_ = std::all_of(patterns_.begin(), patterns_.end(), [](const RealVector& v) {
            return std::abs(v.norm() - 1.0) <= kUnitTol;
        });
    }
}

bool RealPatternSet::operator==(const RealPatternSet& other) const {
    return normalized_ == other.normalized_ && patterns_ == other.patterns_;
}

ComplexState::ComplexState(ComplexVector values, double grid_weight)
    : values_(std::move(values)), grid_weight_(grid_weight) {
    if (!(grid_weight_ > 0.0) || !std::isfinite(grid_weight_)) {
        throw InvalidArgument("grid_weight must be positive and finite");
    }
}

ComplexState ComplexState::from_polar(std::span<const double> amplitudes,
                                      std::span<const double> phases, double grid_weight) {
    if (amplitudes.size() != phases.size()) {
        throw InvalidArgument("amplitude and phase vectors differ in length");
    }
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (amplitudes[i] < 0.0) {
            throw InvalidArgument("negative amplitude at site " + std::to_string(i));
        }
        v[static_cast<Eigen::Index>(i)] = std::polar(amplitudes[i], phases[i]);
    }
    return ComplexState(std::move(v), grid_weight);
}

ComplexState ComplexState::from_real(const RealVector& values, double grid_weight) {
    return ComplexState(values.cast<Complex>(), grid_weight);
}

double ComplexState::amplitude(std::size_t i) const { return std::abs((*this)[i]); }

double ComplexState::phase(std::size_t i) const { return wrap_phase(std::arg((*this)[i])); }

double ComplexState::norm() const { return std::sqrt(values_.squaredNorm() * grid_weight_); }

double inner(const RealVector& a, const RealVector& b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("overlap: length mismatch " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    }
    return a.dot(b);
}

Complex inner(const ComplexState& a, const ComplexState& b) {
    if (a.n() != b.n()) {
        throw InvalidArgument("overlap: length mismatch " + std::to_string(a.n()) + " vs " +
                              std::to_string(b.n()));
    }
    if (a.grid_weight() != b.grid_weight()) {
        throw InvalidArgument("overlap: grid weights differ");
    }
    // Eigen's dot conjugates its first argument.
    return a.values().dot(b.values()) * a.grid_weight();
}

PatternDistance overlap(const RealVector& a, const RealVector& b) {
    PatternDistance d{Complex(inner(a, b), 0.0), std::nullopt};
    bool bipolar = true;
    std::size_t differing = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0 || b[i] == 0.0) {
            bipolar = false;
            break;
        }
        if ((a[i] > 0.0) != (b[i] > 0.0)) ++differing;
    }
    if (bipolar && a.size() > 0) {
        d.hamming_fraction = static_cast<double>(differing) / static_cast<double>(a.size());
    }
    return d;
}

PatternDistance overlap(const ComplexState& a, const ComplexState& b) {
    return {inner(a, b), std::nullopt};
}

RealPatternSet generate_bipolar(std::size_t n, std::size_t p, std::uint64_t seed) {
    if (n == 0 || p == 0) throw InvalidArgument("generate_bipolar: n and p must be positive");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    const double mag = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<RealVector> out;
    out.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        RealVector v(static_cast<Eigen::Index>(n));
        for (auto& x : v) x = coin(rng) ? mag : -mag;
        out.push_back(std::move(v));
    }
    // Entries are already +-1/sqrt(n); keep avoids a rescale that could
    // perturb the last bit.
    return RealPatternSet(std::move(out), Normalization::keep);
}

std::vector<ComplexState> generate_phase_states(std::size_t n, std::size_t p, std::uint64_t seed,
                                                double grid_weight) {
    if (n == 0 || p == 0) throw InvalidArgument("generate_phase_states: n and p must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n) * grid_weight);
    std::vector<ComplexState> out;
    out.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        ComplexVector v(static_cast<Eigen::Index>(n));
        for (auto& x : v) x = std::polar(amp, phase(rng));
        out.emplace_back(std::move(v), grid_weight);
    }
    return out;
}

std::vector<int> to_raw_bipolar(const RealVector& v) {
    std::vector<int> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(i)] = v[i] > 0.0 ? 1 : (v[i] < 0.0 ? -1 : 0);
    }
    return out;
}

namespace {

// Modified Gram-Schmidt with one reorthogonalization pass. Vectors are
// columns; inner_product/scale abstract over real vs grid-weighted complex.
template <typename Vec, typename Inner>
std::vector<Vec> gram_schmidt(std::vector<Vec> vs, Inner inner_product, double weight) {
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double original = std::sqrt(std::abs(inner_product(vs[k], vs[k])) * weight);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                vs[k] -= (inner_product(vs[j], vs[k]) * weight) * vs[j];
            }
        }
        const double residual = std::sqrt(std::abs(inner_product(vs[k], vs[k])) * weight);
        if (original == 0.0 || residual < kDegenerate * original) throw DegeneracyError(k);
        vs[k] /= residual;
    }
    return vs;
}

} // namespace

RealPatternSet orthogonalize(const RealPatternSet& set) {
    if (set.p() > set.n()) {
        throw DegeneracyError(set.n());
    }
    auto out = gram_schmidt(set.patterns(),
                            [](const RealVector& a, const RealVector& b) { return a.dot(b); }, 1.0);
    return RealPatternSet(std::move(out), Normalization::keep);
}

std::vector<ComplexState> orthogonalize(const std::vector<ComplexState>& states) {
    if (states.empty()) return {};
    const std::size_t n = states.front().n();
    const double w = states.front().grid_weight();
    std::vector<ComplexVector> vs;
    vs.reserve(states.size());
    for (const auto& s : states) {
        if (s.n() != n || s.grid_weight() != w) {
            throw InvalidArgument("orthogonalize: states differ in size or grid weight");
        }
        vs.push_back(s.values());
    }
    if (states.size() > n) throw DegeneracyError(n);
    auto out = gram_schmidt(std::move(vs),
                            [](const ComplexVector& a, const ComplexVector& b) { return a.dot(b); }, w);
    std::vector<ComplexState> result;
    result.reserve(out.size());
    for (auto& v : out) result.emplace_back(std::move(v), w);
    return result;
}

RealVector corrupt_flip(const RealVector& v, double fraction, std::uint64_t seed) {
    RealVector out = v;
    for (auto i : pick_sites(static_cast<std::size_t>(v.size()), fraction, seed)) {
        out[static_cast<Eigen::Index>(i)] = -out[static_cast<Eigen::Index>(i)];
    }
    return out;
}

ComplexState corrupt_flip(const ComplexState& s, double fraction, std::uint64_t seed) {
    ComplexVector out = s.values();
    for (auto i : pick_sites(s.n(), fraction, seed)) {
        out[static_cast<Eigen::Index>(i)] = -out[static_cast<Eigen::Index>(i)];
    }
    return ComplexState(std::move(out), s.grid_weight());
}

ComplexState corrupt_phase(const ComplexState& s, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw InvalidArgument("phase noise sigma must be non-negative");
    if (sigma == 0.0) return s;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    ComplexVector out(static_cast<Eigen::Index>(s.n()));
    for (std::size_t i = 0; i < s.n(); ++i) {
        out[static_cast<Eigen::Index>(i)] = std::polar(s.amplitude(i), wrap_phase(s.phase(i) + noise(rng)));
    }
    return ComplexState(std::move(out), s.grid_weight());
}

} // namespace assocmem
