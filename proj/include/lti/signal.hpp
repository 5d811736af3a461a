#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace lti {

/**
 * @brief Declarative input u(t): zero, constant level, sinusoid, or a
 *        zero-order-hold sample table.
 *
 * A signal has a channel count that must match the model input count
 * when the two are bound together.
 */
class InputSignal {
public:
    enum class Kind { Zero, Constant, Sinusoid, Samples };

    static InputSignal zero(std::size_t channels = 1) {
        InputSignal s;
        s.kind_ = Kind::Zero;
        s.channels_ = channels;
        return s;
    }

    static InputSignal constant(Vector levels) {
        if (levels.empty()) throw DimensionMismatch("constant signal: need at least one channel");
        InputSignal s;
        s.kind_ = Kind::Constant;
        s.channels_ = levels.size();
        s.levels_ = std::move(levels);
        return s;
    }

    /// amplitude * sin(omega t + phase) on every channel.
    static InputSignal sinusoid(double amplitude, double omega, double phase, std::size_t channels = 1) {
        InputSignal s;
        s.kind_ = Kind::Sinusoid;
        s.channels_ = channels;
        s.amplitude_ = amplitude;
        s.omega_ = omega;
        s.phase_ = phase;
        return s;
    }

    /// Zero-order hold over a strictly increasing sample table; the signal
    /// is zero before the first sample time.
    static InputSignal samples(std::vector<double> times, std::vector<Vector> values) {
        if (times.size() != values.size() || times.empty()) {
            throw DimensionMismatch("samples signal: times and values must align and be nonempty");
        }
        const std::size_t m = values.front().size();
        if (m == 0) throw DimensionMismatch("samples signal: need at least one channel");
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i > 0 && !(times[i] > times[i - 1])) {
                throw InvalidGrid("samples signal: times must be strictly increasing");
            }
            if (values[i].size() != m) {
                throw DimensionMismatch("samples signal: inconsistent channel counts");
            }
        }
        InputSignal s;
        s.kind_ = Kind::Samples;
        s.channels_ = m;
        s.times_ = std::move(times);
        s.values_ = std::move(values);
        return s;
    }

    Kind kind() const noexcept { return kind_; }
    std::size_t channels() const noexcept { return channels_; }

    const std::vector<double>& sample_times() const noexcept { return times_; }
    const std::vector<Vector>& sample_values() const noexcept { return values_; }
    const Vector& levels() const noexcept { return levels_; }
    double amplitude() const noexcept { return amplitude_; }
    double omega() const noexcept { return omega_; }
    double phase() const noexcept { return phase_; }

    Vector at(double t) const {
        switch (kind_) {
            case Kind::Zero:
                return Vector(channels_, 0.0);
            case Kind::Constant:
                return levels_;
            case Kind::Sinusoid:
                return Vector(channels_, amplitude_ * std::sin(omega_ * t + phase_));
            case Kind::Samples: {
                if (times_.empty() || t < times_.front()) return Vector(channels_, 0.0);
                std::size_t idx = 0;
                for (std::size_t i = 0; i < times_.size(); ++i) {
                    if (times_[i] <= t) idx = i;
                    else break;
                }
                return values_[idx];
            }
        }
        return Vector(channels_, 0.0);
    }

    /// True when the signal is constant between consecutive hold times
    /// (Zero and Constant trivially, Samples by construction).
    bool piecewise_constant() const noexcept {
        return kind_ != Kind::Sinusoid;
    }

    void require_channels(std::size_t m, const std::string& where) const {
        if (channels_ != m) {
            throw DimensionMismatch(where + ": signal has " + std::to_string(channels_) +
                                    " channels, model expects " + std::to_string(m));
        }
    }

private:
    Kind kind_ = Kind::Zero;
    std::size_t channels_ = 1;
    Vector levels_;
    double amplitude_ = 0.0;
    double omega_ = 0.0;
    double phase_ = 0.0;
    std::vector<double> times_;
    std::vector<Vector> values_;
};

} // namespace lti
