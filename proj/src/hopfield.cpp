#include "assocmem/hopfield.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "assocmem/errors.hpp"

namespace assocmem {

namespace {

void require_dim(const HebbMatrix& J, const RealVector& q, const char* what) {
    if (static_cast<std::size_t>(q.size()) != J.n()) {
        throw InvalidArgument(std::string(what) + ": state has length " + std::to_string(q.size()) +
                              ", memory has dimension " + std::to_string(J.n()));
    }
}

} // namespace

HebbMatrix::HebbMatrix(RealMatrix weights, bool zero_diagonal, std::size_t source_count)
    : weights_(std::move(weights)), zero_diagonal_(zero_diagonal), source_count_(source_count) {
    if (weights_.rows() != weights_.cols() || weights_.rows() == 0) {
        throw InvalidArgument("Hebb matrix must be square and non-empty");
    }
    if (zero_diagonal_) weights_.diagonal().setZero();
}

HebbMatrix hebb_learn(const RealPatternSet& set, bool zero_diagonal) {
    const auto n = static_cast<Eigen::Index>(set.n());
    RealMatrix J = RealMatrix::Zero(n, n);
    for (const auto& v : set.patterns()) {
        J.noalias() += v * v.transpose();
    }
    return HebbMatrix(std::move(J), zero_diagonal, set.p());
}

RealVector recall_step(const HebbMatrix& J, const RealVector& q, Activation activation) {
    require_dim(J, q, "recall_step");
    RealVector field = J.weights() * q;
    if (activation == Activation::linear) return field;

    RealVector out(field.size());
    for (Eigen::Index i = 0; i < field.size(); ++i) {
        if (field[i] > 0.0) {
            out[i] = 1.0;
        } else if (field[i] < 0.0) {
            out[i] = -1.0;
        } else {
            out[i] = q[i] > 0.0 ? 1.0 : (q[i] < 0.0 ? -1.0 : 0.0);
        }
    }
    const double nrm = out.norm();
    if (nrm > 0.0) out /= nrm;
    return out;
}

RecallResult recall_iterate(const HebbMatrix& J, const RealPatternSet& set, const RealVector& key,
                            const RecallOptions& options) {
    require_dim(J, key, "recall_iterate");
    if (set.n() != J.n()) throw InvalidArgument("recall_iterate: pattern set and memory differ in dimension");
    if (options.max_iters < 1) throw InvalidArgument("recall_iterate: max_iters must be >= 1");
    if (!(options.tol > 0.0)) throw InvalidArgument("recall_iterate: tol must be positive");

    RecallResult result;
    RealVector q = key;
    RealVector last_input = key;
    for (std::size_t it = 0; it < options.max_iters; ++it) {
        RealVector next = recall_step(J, q, options.activation);
        const double change = (next - q).norm();
        last_input = std::move(q);
        q = std::move(next);
        result.iterations = it + 1;
        if (change < options.tol) {
            result.converged = true;
            break;
        }
    }

    std::vector<Complex> coeffs(set.p());
    // Overlaps of the state fed into the final step: J q' = A v^w + B.
    for (std::size_t k = 0; k < set.p(); ++k) coeffs[k] = set[k].dot(last_input);
    const auto pick = pick_winner(coeffs);
    result.winner = pick.winner;
    result.ambiguous = pick.ambiguous;
    if (pick.winner) {
        result.signal_A = coeffs[*pick.winner].real();
        result.noise_B_norm = (q - result.signal_A * set[*pick.winner]).norm();
    } else {
        result.signal_A = 0.0;
        result.noise_B_norm = q.norm();
    }
    result.output = std::move(q);
    return result;
}

double energy(const HebbMatrix& J, const RealVector& q) {
    require_dim(J, q, "energy");
    return -0.5 * q.dot(J.weights() * q);
}

OverlapSpectrum signal_noise_decompose(const RealPatternSet& set, const RealVector& probe) {
    if (static_cast<std::size_t>(probe.size()) != set.n()) {
        throw InvalidArgument("signal_noise_decompose: probe length " + std::to_string(probe.size()) +
                              " does not match pattern length " + std::to_string(set.n()));
    }
    OverlapSpectrum spec;
    spec.coefficients.resize(set.p());
    RealMatrix V(static_cast<Eigen::Index>(set.n()), static_cast<Eigen::Index>(set.p()));
    for (std::size_t k = 0; k < set.p(); ++k) {
        const double c = set[k].dot(probe);
        spec.coefficients[k] = c;
        spec.in_span_norm += c * c;
        V.col(static_cast<Eigen::Index>(k)) = set[k];
    }
    // Least-squares projection so the residual is orthogonal to the span
    // even when the stored patterns are not.
    const RealVector projected = V * V.colPivHouseholderQr().solve(probe);
    spec.residual_norm = (probe - projected).norm();
    spec.residual_exact = true;
    return spec;
}

AsyncTrajectory async_sign_descent(const HebbMatrix& J, const RealVector& start,
                                   std::uint64_t seed, std::size_t max_sweeps) {
    require_dim(J, start, "async_sign_descent");
    const auto n = static_cast<Eigen::Index>(J.n());
    const double mag = 1.0 / std::sqrt(static_cast<double>(n));

    AsyncTrajectory traj;
    RealVector q(n);
    for (Eigen::Index i = 0; i < n; ++i) q[i] = start[i] >= 0.0 ? mag : -mag;
    traj.energies.push_back(energy(J, q));

    std::mt19937_64 rng(seed);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        bool changed = false;
        for (auto i : order) {
            const double field = J.weights().row(i).dot(q);
            const double next = field > 0.0 ? mag : (field < 0.0 ? -mag : q[i]);
            if (next != q[i]) {
                q[i] = next;
                changed = true;
            }
            traj.energies.push_back(energy(J, q));
        }
        traj.sweeps = sweep + 1;
        if (!changed) {
            traj.converged = true;
            break;
        }
    }
    traj.final_state = std::move(q);
    return traj;
}

} // namespace assocmem
