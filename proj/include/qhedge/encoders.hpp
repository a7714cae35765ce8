#pragma once

// Classical image <-> quantum state encodings.
//
//   QPIE : intensities as normalized amplitudes over 2n position qubits.
//   FRQI : one color qubit (qubit 2n, most significant) rotated by theta_i
//          on each position |i>; built gate-by-gate from H and C^{2n}Ry.
//   NEQR : 8 value qubits (2n..2n+7) holding the gray level of each position.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhedge/errors.hpp"
#include "qhedge/image.hpp"
#include "qhedge/statevector.hpp"

namespace qhedge {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Per-pixel FRQI angles, each in [0, pi/2], count 4^n with n >= 1.
class AngleVector {
  public:
    explicit AngleVector(std::vector<double> angles) : angles_(std::move(angles)) {
        const std::size_t len = angles_.size();
        if (len < 4 || !std::has_single_bit(len) || (std::countr_zero(len) % 2) != 0)
            throw SizeError("angle count " + std::to_string(len) + " is not 4^n with n >= 1");
        for (std::size_t i = 0; i < len; ++i)
            if (!(angles_[i] >= 0.0 && angles_[i] <= kHalfPi))
                throw ValidationError("angle " + std::to_string(i) + " = " +
                                      std::to_string(angles_[i]) + " outside [0, pi/2]");
    }

    [[nodiscard]] std::size_t size() const noexcept { return angles_.size(); }
    /// Image side exponent n (count = 4^n).
    [[nodiscard]] std::size_t exponent() const noexcept {
        return static_cast<std::size_t>(std::countr_zero(angles_.size())) / 2;
    }
    [[nodiscard]] const std::vector<double> &values() const noexcept { return angles_; }
    [[nodiscard]] double operator[](std::size_t i) const { return angles_[i]; }

  private:
    std::vector<double> angles_;
};

// ---------------------------------------------------------------------------
// QPIE

inline StateVector qpie_encode(const GrayImage &img) {
    double sum_sq = 0.0;
    for (double v : img.pixels())
        sum_sq += v * v;
    if (!(sum_sq > 0.0))
        throw DegenerateInputError("all-zero image has no amplitude normalization");
    const std::size_t qubits = 2 * img.exponent();
    if (qubits > kMaxQubits)
        throw SizeError("QPIE of a " + std::to_string(img.side()) + "-wide image needs " +
                        std::to_string(qubits) + " qubits (limit " +
                        std::to_string(kMaxQubits) + ")");
    const double inv = 1.0 / std::sqrt(sum_sq);
    std::vector<Complex> amps;
    amps.reserve(img.size());
    for (double v : img.pixels())
        amps.emplace_back(v * inv, 0.0);
    return StateVector::from_amplitudes(std::move(amps));
}

/// Inverse of qpie_encode up to the lost global scale: the result is
/// rescaled so its brightest pixel is 1.
inline GrayImage qpie_decode(const StateVector &state) {
    const std::size_t m = state.num_qubits();
    if (m % 2 != 0)
        throw ContractError("QPIE state needs an even qubit count, got " + std::to_string(m));
    double peak = 0.0;
    for (const auto &a : state.amplitudes()) {
        if (std::abs(a.imag()) > kStateTolerance || a.real() < -kStateTolerance)
            throw ContractError("QPIE amplitudes must be real and non-negative");
        peak = std::max(peak, a.real());
    }
    const std::size_t side = std::size_t{1} << (m / 2);
    std::vector<double> px;
    px.reserve(state.size());
    for (const auto &a : state.amplitudes())
        px.push_back(std::clamp(a.real() / peak, 0.0, 1.0));
    return GrayImage(side, std::move(px));
}

// ---------------------------------------------------------------------------
// Angle maps

/// theta_i = arccos(I_i), so that cos(theta_i) reproduces the intensity.
inline AngleVector intensities_to_angles(const GrayImage &img) {
    std::vector<double> th;
    th.reserve(img.size());
    for (double v : img.pixels())
        th.push_back(std::acos(v));
    return AngleVector(std::move(th));
}

/// theta = arccos(r/256 + g/256^2 + b/256^3).
inline double rgb_to_angle(int r, int g, int b) {
    for (int ch : {r, g, b})
        if (ch < 0 || ch > 255)
            throw ValidationError("channel value " + std::to_string(ch) + " outside [0, 255]");
    const double x = r / 256.0 + g / 65536.0 + b / 16777216.0;
    return std::acos(x);
}

inline double rgb_to_angle(Rgb px) { return rgb_to_angle(px.r, px.g, px.b); }

/// Base-256 digits of round(256^3 cos(theta)).
inline Rgb angle_to_rgb(double angle) {
    constexpr std::int64_t kScale = std::int64_t{1} << 24;
    std::int64_t v = std::llround(static_cast<double>(kScale) * std::cos(angle));
    v = std::clamp<std::int64_t>(v, 0, kScale - 1);
    return Rgb{static_cast<int>(v >> 16), static_cast<int>((v >> 8) & 0xff),
               static_cast<int>(v & 0xff)};
}

inline AngleVector rgb_image_to_angles(const RgbImage &img) {
    std::vector<double> th;
    th.reserve(img.pixels().size());
    for (const auto &p : img.pixels())
        th.push_back(rgb_to_angle(p));
    return AngleVector(std::move(th));
}

// ---------------------------------------------------------------------------
// FRQI circuit

struct CircuitGate {
    enum class Kind { hadamard, pauli_x, controlled_ry };
    Kind kind;
    QubitIndex target;
    std::vector<QubitIndex> controls{}; ///< controlled_ry only
    double angle = 0.0;                 ///< controlled_ry only
};

struct Circuit {
    std::size_t num_qubits = 0;
    std::vector<CircuitGate> gates;
};

/// Position qubits that need an X so that the all-ones control pattern
/// selects |position>, i.e. P_i |4^n - 1> = |i>.
inline std::vector<QubitIndex> conjugation_pattern(std::size_t position, std::size_t n) {
    std::vector<QubitIndex> xs;
    for (std::size_t q = 0; q < 2 * n; ++q)
        if (((position >> q) & 1u) == 0)
            xs.emplace_back(q);
    return xs;
}

/// H on every position qubit, then for each position i the conjugated
/// rotation P_i . C^{2n}Ry(2 theta_i) . P_i. With merge_x, the X gates of
/// consecutive conjugations that cancel (X.X = I) are dropped.
inline Circuit frqi_circuit(const AngleVector &angles, bool merge_x = true) {
    const std::size_t n = angles.exponent();
    const std::size_t pos_qubits = 2 * n;
    Circuit c;
    c.num_qubits = pos_qubits + 1;
    const QubitIndex color{pos_qubits};

    std::vector<QubitIndex> controls;
    for (std::size_t q = 0; q < pos_qubits; ++q) {
        c.gates.push_back({CircuitGate::Kind::hadamard, QubitIndex{q}});
        controls.emplace_back(q);
    }

    auto emit_x = [&](std::size_t mask) {
        for (std::size_t q = 0; q < pos_qubits; ++q)
            if ((mask >> q) & 1u)
                c.gates.push_back({CircuitGate::Kind::pauli_x, QubitIndex{q}});
    };
    const std::size_t all_ones = (std::size_t{1} << pos_qubits) - 1;

    std::size_t pending = 0; // X mask currently applied but not yet undone
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const std::size_t pattern = all_ones & ~i;
        if (merge_x) {
            emit_x(pending ^ pattern);
        } else {
            emit_x(pattern);
        }
        c.gates.push_back(
            {CircuitGate::Kind::controlled_ry, color, controls, 2.0 * angles[i]});
        if (merge_x) {
            pending = pattern;
        } else {
            emit_x(pattern);
        }
    }
    emit_x(pending);
    return c;
}

inline StateVector run_circuit(const Circuit &circuit, StateVector state) {
    if (state.num_qubits() != circuit.num_qubits)
        throw SizeError("circuit width " + std::to_string(circuit.num_qubits) +
                        " does not match state width " + std::to_string(state.num_qubits()));
    const Gate2 h = gates::hadamard();
    const Gate2 x = gates::pauli_x();
    for (const auto &g : circuit.gates) {
        switch (g.kind) {
        case CircuitGate::Kind::hadamard:
            state.apply_single_qubit(g.target, h);
            break;
        case CircuitGate::Kind::pauli_x:
            state.apply_single_qubit(g.target, x);
            break;
        case CircuitGate::Kind::controlled_ry:
            state.apply_multi_controlled_ry(g.controls, g.target, g.angle);
            break;
        }
    }
    return state;
}

inline StateVector frqi_encode(const AngleVector &angles) {
    const std::size_t qubits = 2 * angles.exponent() + 1;
    if (qubits > kMaxQubits)
        throw SizeError("FRQI needs " + std::to_string(qubits) + " qubits (limit " +
                        std::to_string(kMaxQubits) + ")");
    const Circuit c = frqi_circuit(angles);
    return run_circuit(c, StateVector::zero(c.num_qubits));
}

/// theta_i = atan2(amp(1, i), amp(0, i)) for an FRQI-structured state.
inline AngleVector frqi_decode(const StateVector &state) {
    const std::size_t m = state.num_qubits();
    if (m < 3 || m % 2 == 0)
        throw ContractError("FRQI state needs 2n+1 qubits with n >= 1, got " +
                            std::to_string(m));
    const std::size_t count = state.size() / 2;
    const double expected = 1.0 / static_cast<double>(count);
    const auto amps = state.amplitudes();
    std::vector<double> th(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Complex a0 = amps[i];
        const Complex a1 = amps[i + count];
        if (std::abs(std::norm(a0) + std::norm(a1) - expected) > 1e-8)
            throw ContractError("position " + std::to_string(i) +
                                " does not carry weight 1/4^n");
        if (std::abs(a0.imag()) > kStateTolerance || std::abs(a1.imag()) > kStateTolerance)
            throw ContractError("FRQI amplitudes must be real");
        th[i] = std::clamp(std::atan2(a1.real(), a0.real()), 0.0, kHalfPi);
    }
    return AngleVector(std::move(th));
}

// ---------------------------------------------------------------------------
// NEQR

inline constexpr std::size_t kNeqrValueQubits = 8;

/// NEQR state: gray level on qubits 2n..2n+7, position on qubits 0..2n-1.
class Neqr8State {
  public:
    Neqr8State(StateVector state, std::size_t n) : state_(std::move(state)), n_(n) {
        if (n_ < 1 || state_.num_qubits() != kNeqrValueQubits + 2 * n_)
            throw SizeError("NEQR state over " + std::to_string(state_.num_qubits()) +
                            " qubits does not match position size n = " + std::to_string(n_));
    }

    [[nodiscard]] const StateVector &state() const noexcept { return state_; }
    [[nodiscard]] std::size_t exponent() const noexcept { return n_; }

  private:
    StateVector state_;
    std::size_t n_;
};

inline Neqr8State neqr_encode(const ByteImage &img) {
    const std::size_t n = img.exponent();
    const std::size_t qubits = kNeqrValueQubits + 2 * n;
    if (qubits > kMaxQubits)
        throw SizeError("NEQR of a " + std::to_string(img.side()) + "-wide image needs " +
                        std::to_string(qubits) + " qubits (limit " +
                        std::to_string(kMaxQubits) + ")");
    const std::size_t positions = img.pixels().size();
    std::vector<Complex> amps(std::size_t{1} << qubits, Complex{0.0});
    const double a = 1.0 / static_cast<double>(std::size_t{1} << n);
    for (std::size_t p = 0; p < positions; ++p)
        amps[(static_cast<std::size_t>(img.pixels()[p]) << (2 * n)) | p] = a;
    return Neqr8State(StateVector::from_amplitudes(std::move(amps)), n);
}

/// Validating overload for raw levels: every value must be an integer in [0, 255].
inline Neqr8State neqr_encode(std::size_t side, std::span<const double> levels) {
    std::vector<std::uint8_t> px;
    px.reserve(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double v = levels[i];
        if (!(v >= 0.0 && v <= 255.0) || std::floor(v) != v)
            throw ValidationError("pixel " + std::to_string(i) + " value " + std::to_string(v) +
                                  " is not an integer in [0, 255]");
        px.push_back(static_cast<std::uint8_t>(v));
    }
    return neqr_encode(ByteImage(side, std::move(px)));
}

inline ByteImage neqr_decode(const Neqr8State &neqr) {
    const std::size_t n = neqr.exponent();
    const std::size_t positions = std::size_t{1} << (2 * n);
    const auto amps = neqr.state().amplitudes();
    std::vector<int> level(positions, -1);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (std::abs(amps[idx]) < kStateTolerance)
            continue;
        const std::size_t p = idx & (positions - 1);
        const int value = static_cast<int>(idx >> (2 * n));
        if (level[p] != -1)
            throw ContractError("position " + std::to_string(p) + " holds levels " +
                                std::to_string(level[p]) + " and " + std::to_string(value));
        level[p] = value;
    }
    std::vector<std::uint8_t> px(positions);
    for (std::size_t p = 0; p < positions; ++p) {
        if (level[p] < 0)
            throw ContractError("position " + std::to_string(p) + " holds no level");
        px[p] = static_cast<std::uint8_t>(level[p]);
    }
    return ByteImage(std::size_t{1} << n, std::move(px));
}

} // namespace qhedge
