#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "expm.hpp"
#include "matrix.hpp"
#include "signal.hpp"
#include "state_space.hpp"

namespace lti {

/// Default Simpson subintervals per grid step for the convolution
/// integral of smooth inputs.
inline constexpr std::size_t kDefaultQuadPanels = 8;

/**
 * @brief Sampled solution: time grid with state and output vectors.
 *
 * outputs[k] is always C * states[k]; both endpoints of the simulation
 * window are included in the grid.
 */
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> outputs;

    std::size_t size() const noexcept { return times.size(); }

    const Vector& final_state() const { return states.back(); }
    const Vector& final_output() const { return outputs.back(); }
};

namespace detail {

inline void append_point(Trajectory& traj, const StateSpaceModel& model, double t, const Vector& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.outputs.push_back(matvec(model.C, x));
}

/// Advances the state across one grid interval under a piecewise-constant
/// input, splitting exactly at hold boundaries.
inline Vector zoh_step(const StateSpaceModel& model, const InputSignal& u,
                       Vector x, double t_begin, double t_end) {
    std::vector<double> cuts{t_begin};
    for (double ts : u.sample_times()) {
        if (ts > t_begin && ts < t_end) cuts.push_back(ts);
    }
    cuts.push_back(t_end);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double h = cuts[s + 1] - cuts[s];
        const auto [ad, bd] = zoh_discretize(model.A, model.B, h);
        x = add(matvec(ad, x), matvec(bd, u.at(cuts[s])));
    }
    return x;
}

} // namespace detail

/**
 * @brief Variation-of-constants solution of a continuous LTI system on a
 *        uniform grid of `steps` intervals over [t0, t1].
 *
 * Smooth inputs are integrated with composite Simpson quadrature
 * (panels_per_step subintervals per grid step); zero-order-hold sample
 * tables are integrated exactly per hold interval through the augmented
 * matrix exponential.
 */
inline Trajectory simulate_continuous(const StateSpaceModel& model, const Vector& x0,
                                      const InputSignal& u, double t0, double t1,
                                      std::size_t steps,
                                      std::size_t panels_per_step = kDefaultQuadPanels) {
    if (!model.is_continuous()) {
        throw TimeDomainMismatch("simulate_continuous: model is discrete");
    }
    if (!(t1 > t0)) throw InvalidGrid("simulate_continuous: need t1 > t0");
    if (steps < 1) throw InvalidGrid("simulate_continuous: need steps >= 1");
    if (panels_per_step < 2 || panels_per_step % 2 != 0) {
        throw InvalidGrid("simulate_continuous: panels_per_step must be even and >= 2");
    }
    if (x0.size() != model.order()) {
        throw DimensionMismatch("simulate_continuous: x0 length must equal the model order");
    }
    u.require_channels(model.inputs(), "simulate_continuous");

    const double h = (t1 - t0) / static_cast<double>(steps);
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.outputs.reserve(steps + 1);

    Vector x = x0;
    detail::append_point(traj, model, t0, x);

    if (u.kind() == InputSignal::Kind::Samples) {
        for (std::size_t k = 0; k < steps; ++k) {
            const double ta = t0 + h * static_cast<double>(k);
            const double tb = (k + 1 == steps) ? t1 : t0 + h * static_cast<double>(k + 1);
            x = detail::zoh_step(model, u, x, ta, tb);
            detail::append_point(traj, model, tb, x);
        }
        return traj;
    }

    // Precompute transition matrices at the Simpson nodes; every step of a
    // uniform grid reuses them.
    const std::size_t P = panels_per_step;
    const Matrix e_h = expm(model.A, h);
    std::vector<Matrix> node_input(P + 1);   // exp(A (h - s_j)) * B
    std::vector<double> node_weight(P + 1);
    const double sub = h / static_cast<double>(P);
    for (std::size_t j = 0; j <= P; ++j) {
        node_input[j] = expm(model.A, h - sub * static_cast<double>(j)) * model.B;
        const double w = (j == 0 || j == P) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        node_weight[j] = w * sub / 3.0;
    }

    for (std::size_t k = 0; k < steps; ++k) {
        const double ta = t0 + h * static_cast<double>(k);
        Vector next = matvec(e_h, x);
        for (std::size_t j = 0; j <= P; ++j) {
            const Vector uj = u.at(ta + sub * static_cast<double>(j));
            const Vector forced = matvec(node_input[j], uj);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] += node_weight[j] * forced[i];
        }
        x = std::move(next);
        detail::append_point(traj, model, (k + 1 == steps) ? t1 : ta + h, x);
    }
    return traj;
}

/**
 * @brief Forward recursion x(t+1) = A x(t) + B u(t) for t = 0..t1.
 */
inline Trajectory simulate_discrete(const StateSpaceModel& model, const Vector& x0,
                                    const InputSignal& u, long t1) {
    if (!model.is_discrete()) {
        throw TimeDomainMismatch("simulate_discrete: model is continuous");
    }
    if (t1 < 0) throw InvalidHorizon("simulate_discrete: horizon must be non-negative");
    if (x0.size() != model.order()) {
        throw DimensionMismatch("simulate_discrete: x0 length must equal the model order");
    }
    u.require_channels(model.inputs(), "simulate_discrete");

    Trajectory traj;
    Vector x = x0;
    detail::append_point(traj, model, 0.0, x);
    for (long t = 0; t < t1; ++t) {
        x = add(matvec(model.A, x), matvec(model.B, u.at(static_cast<double>(t))));
        detail::append_point(traj, model, static_cast<double>(t + 1), x);
    }
    return traj;
}

/**
 * @brief Discrete state at time t by the convolution sum
 *        x(t) = phi(t,0) x0 + sum_{tau=0}^{t-1} phi(t, tau+1) B u(tau).
 *
 * Kept alongside the forward recursion as an independent route to the
 * same values.
 */
inline Vector discrete_state_by_convolution(const StateSpaceModel& model, const Vector& x0,
                                            const InputSignal& u, long t) {
    if (!model.is_discrete()) {
        throw TimeDomainMismatch("discrete_state_by_convolution: model is continuous");
    }
    if (t < 0) throw InvalidHorizon("discrete_state_by_convolution: time must be non-negative");
    if (x0.size() != model.order()) {
        throw DimensionMismatch("discrete_state_by_convolution: x0 length must equal the model order");
    }
    u.require_channels(model.inputs(), "discrete_state_by_convolution");

    Vector x = matvec(matrix_power(model.A, static_cast<unsigned long long>(t)), x0);
    for (long tau = 0; tau < t; ++tau) {
        const Matrix phi = matrix_power(model.A, static_cast<unsigned long long>(t - tau - 1));
        const Vector forced = matvec(phi * model.B, u.at(static_cast<double>(tau)));
        x = add(x, forced);
    }
    return x;
}

} // namespace lti
