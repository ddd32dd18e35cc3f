#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "assocmem/errors.hpp"
#include "assocmem/patterns.hpp"

using namespace assocmem;

namespace {

constexpr double pi = std::numbers::pi;

ComplexState random_state(std::size_t n, std::uint64_t seed, double w = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (auto& z : v) z = {g(rng), g(rng)};
    return ComplexState(v, w);
}

} // namespace

TEST_CASE("generate_bipolar produces unit +-1/sqrt(n) patterns") {
    const auto set = generate_bipolar(4, 2, 7);
    CHECK(set.n() == 4);
    CHECK(set.p() == 2);
    CHECK(set.normalized());
    for (const auto& v : set.patterns()) {
        for (double x : v) CHECK(std::abs(x) == 0.5);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(to_raw_bipolar(set[0]).size() == 4);
}

TEST_CASE("generate_bipolar is deterministic per seed") {
    CHECK(generate_bipolar(50, 5, 99) == generate_bipolar(50, 5, 99));
    CHECK_FALSE(generate_bipolar(50, 5, 99) == generate_bipolar(50, 5, 100));
}

TEST_CASE("random bipolar patterns are nearly orthogonal at n=1000") {
    const auto set = generate_bipolar(1000, 10, 1);
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t a = 0; a < set.p(); ++a)
        for (std::size_t b = a + 1; b < set.p(); ++b, ++pairs) sum += std::abs(inner(set[a], set[b]));
    CHECK(sum / pairs < 0.1);
}

TEST_CASE("generate rejects empty shapes") {
    CHECK_THROWS_AS(generate_bipolar(0, 3, 1), InvalidArgument);
    CHECK_THROWS_AS(generate_bipolar(3, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(generate_phase_states(0, 1, 1), InvalidArgument);
}

TEST_CASE("RealPatternSet validates and normalizes") {
    CHECK_THROWS_AS(RealPatternSet({}), InvalidArgument);
    CHECK_THROWS_AS(RealPatternSet({RealVector::Ones(3), RealVector::Ones(2)}), InvalidArgument);
    CHECK_THROWS_AS(RealPatternSet({RealVector::Zero(3)}), InvalidArgument);
    RealPatternSet raw({RealVector::Constant(4, 1.0)}, Normalization::keep);
    CHECK_FALSE(raw.normalized());
    RealPatternSet unit({RealVector::Constant(4, 1.0)});
    CHECK(unit.normalized());
    CHECK(unit[0][0] == doctest::Approx(0.5));
}

TEST_CASE("ComplexState polar decomposition") {
    const auto s = random_state(32, 3, 0.25);
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double phi = s.phase(i);
        CHECK(phi >= 0.0);
        CHECK(phi < 2 * pi);
        CHECK(std::abs(std::polar(s.amplitude(i), phi) - s[i]) < 1e-12);
    }
    CHECK_THROWS_AS(ComplexState(ComplexVector::Ones(2), 0.0), InvalidArgument);
    CHECK_THROWS_AS(ComplexState(ComplexVector::Ones(2), -1.0), InvalidArgument);
}

TEST_CASE("orthogonalize leaves an orthonormal basis unchanged") {
    RealPatternSet basis({RealVector::Unit(2, 0), RealVector::Unit(2, 1)});
    CHECK(orthogonalize(basis) == RealPatternSet(basis.patterns(), Normalization::keep));
}

TEST_CASE("orthogonalize matches hand Gram-Schmidt") {
    RealVector b(2);
    b << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto out = orthogonalize(RealPatternSet({RealVector::Unit(2, 0), b}));
    CHECK(std::abs(out[0][0] - 1.0) < 1e-15);
    CHECK(std::abs(out[0][1]) < 1e-15);
    CHECK(std::abs(out[1][0]) < 1e-15);
    CHECK(std::abs(out[1][1] - 1.0) < 1e-15);
}

TEST_CASE("orthogonalize yields an identity Gram matrix") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<RealVector> vs;
        for (int k = 0; k < 3; ++k) {
            RealVector v(3);
            for (auto& x : v) x = g(rng);
            vs.push_back(v);
        }
        const auto out = orthogonalize(RealPatternSet(vs));
        RealMatrix M(3, 3);
        for (int k = 0; k < 3; ++k) M.col(k) = out[static_cast<std::size_t>(k)];
        CHECK(((M.transpose() * M) - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
        // Span preserved: each input is reproduced by its projection.
        for (const auto& v : vs) CHECK((M * (M.transpose() * v) - v).norm() < 1e-10);
    }
}

TEST_CASE("orthogonalize reports the dependent index") {
    RealVector a = RealVector::Unit(3, 0);
    RealVector b = RealVector::Unit(3, 1);
    RealVector c = (a + b) / std::sqrt(2.0);
    try {
        orthogonalize(RealPatternSet({a, b, c}));
        FAIL("expected DegeneracyError");
    } catch (const DegeneracyError& e) {
        CHECK(e.index() == 2);
    }
}

TEST_CASE("complex orthogonalize uses the grid-weighted inner product") {
    const double w = 0.5;
    std::vector<ComplexState> states;
    for (std::uint64_t k = 0; k < 5; ++k) states.push_back(random_state(12, 100 + k, w));
    const auto out = orthogonalize(states);
    for (std::size_t a = 0; a < out.size(); ++a) {
        CHECK(out[a].grid_weight() == w);
        CHECK(std::abs(inner(out[a], out[a]) - 1.0) < 1e-10);
        for (std::size_t b = a + 1; b < out.size(); ++b) CHECK(std::abs(inner(out[a], out[b])) < 1e-10);
    }
    std::vector<ComplexState> dependent{states[0], ComplexState(states[0].values() * Complex(0.0, 2.0), w)};
    CHECK_THROWS_AS(orthogonalize(dependent), DegeneracyError);
}

TEST_CASE("corrupt_flip edge cases") {
    const auto v = generate_bipolar(100, 1, 5)[0];
    CHECK(corrupt_flip(v, 0.0, 1) == v);
    CHECK(corrupt_flip(v, 1.0, 1) == RealVector(-v));
    CHECK(corrupt_flip(v, 0.3, 8) == corrupt_flip(v, 0.3, 8));
    CHECK_THROWS_AS(corrupt_flip(v, -0.1, 1), InvalidArgument);
    CHECK_THROWS_AS(corrupt_flip(v, 1.1, 1), InvalidArgument);
}

TEST_CASE("corrupt_flip overlap is exactly 1 - 2f for bipolar unit patterns") {
    const auto v = generate_bipolar(100, 1, 5)[0];
    CHECK(inner(v, corrupt_flip(v, 0.1, 2)) == doctest::Approx(0.8).epsilon(1e-12));

    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> nd(1, 200);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = nd(rng);
        const std::size_t flips = std::uniform_int_distribution<std::size_t>(0, n)(rng);
        const double f = static_cast<double>(flips) / static_cast<double>(n);
        const auto u = generate_bipolar(n, 1, trial)[0];
        const auto c = corrupt_flip(u, f, trial);
        const auto d = overlap(u, c);
        CHECK(std::abs(d.overlap.real() - (1.0 - 2.0 * f)) < 1e-12);
        REQUIRE(d.hamming_fraction);
        CHECK(*d.hamming_fraction == doctest::Approx(f));
    }
}

TEST_CASE("corrupt_phase") {
    const auto s = generate_phase_states(1000, 1, 4)[0];
    CHECK(corrupt_phase(s, 0.0, 1) == s);
    CHECK_THROWS_AS(corrupt_phase(s, -0.5, 1), InvalidArgument);

    const auto noisy = corrupt_phase(s, pi, 9);
    CHECK(std::abs(inner(s, noisy)) < 0.2);
    for (std::size_t i = 0; i < s.n(); ++i) {
        // Re-polarizing can move the last bit of the modulus.
        CHECK(std::abs(noisy.amplitude(i) - s.amplitude(i)) <= 4e-16 * s.amplitude(i));
        CHECK(noisy.phase(i) < 2 * pi);
    }
    CHECK(corrupt_phase(s, 0.3, 5) == corrupt_phase(s, 0.3, 5));
}

TEST_CASE("overlap conventions") {
    const auto v = generate_bipolar(16, 1, 2)[0];
    CHECK(overlap(v, v).overlap.real() == doctest::Approx(1.0));

    RealVector a(2), b(2);
    a << 1, 1;
    b << 1, -1;
    a /= std::sqrt(2.0);
    b /= std::sqrt(2.0);
    CHECK(std::abs(overlap(a, b).overlap) < 1e-16);
    CHECK(*overlap(a, b).hamming_fraction == 0.5);
    CHECK_FALSE(overlap(RealVector::Unit(2, 0), a).hamming_fraction.has_value());

    // Conjugate lands on the first argument.
    const auto u = generate_phase_states(8, 1, 3)[0];
    const ComplexState iu(u.values() * Complex(0.0, 1.0));
    const Complex c = overlap(iu, u).overlap;
    CHECK(std::abs(c - Complex(0.0, -1.0)) < 1e-15);

    CHECK_THROWS_AS(overlap(RealVector::Ones(3), RealVector::Ones(2)), InvalidArgument);
    CHECK_THROWS_AS(overlap(ComplexState(ComplexVector::Ones(2), 1.0), ComplexState(ComplexVector::Ones(2), 0.5)),
                    InvalidArgument);
}

TEST_CASE("overlap is conjugate-symmetric") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = random_state(20, seed, 0.1);
        const auto b = random_state(20, seed + 1000, 0.1);
        CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-14);
    }
}
