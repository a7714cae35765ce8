#pragma once

// Dense statevector simulator with just the gate set the image pipelines need.
//
// Ordering convention: bit k of an amplitude index is qubit k (little-endian),
// so qubit 0 is the least significant bit.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhedge/errors.hpp"

namespace qhedge {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;
/// Tolerance for state contracts (norm, basis-state checks).
inline constexpr double kStateTolerance = 1e-10;
/// Tolerance for algebraic identities.
inline constexpr double kIdentityTolerance = 1e-12;
/// Outcomes at or below this probability cannot be forced.
inline constexpr double kMinBranchProbability = 1e-12;

struct QubitIndex {
    std::size_t value = 0;
    constexpr explicit QubitIndex(std::size_t v) noexcept : value(v) {}
    friend constexpr bool operator==(QubitIndex, QubitIndex) = default;
};

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Gate2 = std::array<Complex, 4>;

namespace gates {

inline Gate2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {Complex{s}, Complex{s}, Complex{s}, Complex{-s}};
}

inline Gate2 pauli_x() { return {Complex{0}, Complex{1}, Complex{1}, Complex{0}}; }

/// exp(-i angle Y / 2).
inline Gate2 ry(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

inline bool is_unitary(const Gate2 &g, double tol = kStateTolerance) {
    // G^dagger G == I
    const Complex a = std::conj(g[0]) * g[0] + std::conj(g[2]) * g[2];
    const Complex b = std::conj(g[0]) * g[1] + std::conj(g[2]) * g[3];
    const Complex d = std::conj(g[1]) * g[1] + std::conj(g[3]) * g[3];
    return std::abs(a - 1.0) <= tol && std::abs(b) <= tol && std::abs(d - 1.0) <= tol;
}

} // namespace gates

class StateVector {
  public:
    /// |0...0> over m qubits, 1 <= m <= kMaxQubits.
    static StateVector zero(std::size_t num_qubits) {
        check_qubit_count(num_qubits);
        std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0});
        amps[0] = 1.0;
        return StateVector(num_qubits, std::move(amps));
    }

    /// Wraps an explicit amplitude array. Length must be 2^m with
    /// 1 <= m <= kMaxQubits and the squared norm must be 1 within kStateTolerance.
    static StateVector from_amplitudes(std::vector<Complex> amps) {
        const std::size_t len = amps.size();
        if (len < 2 || !std::has_single_bit(len))
            throw SizeError("amplitude count " + std::to_string(len) +
                            " is not a power of two >= 2");
        const auto m = static_cast<std::size_t>(std::countr_zero(len));
        check_qubit_count(m);
        StateVector s(m, std::move(amps));
        if (std::abs(s.norm_squared() - 1.0) > kStateTolerance)
            throw ValidationError("state is not normalized (|psi|^2 = " +
                                  std::to_string(s.norm_squared()) + ")");
        return s;
    }

    static StateVector from_amplitudes(std::span<const double> real_amps) {
        return from_amplitudes(std::vector<Complex>(real_amps.begin(), real_amps.end()));
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double acc = 0.0;
        for (const auto &a : amps_)
            acc += std::norm(a);
        return acc;
    }

    /// Born probability that qubit q reads `outcome`.
    [[nodiscard]] double probability(QubitIndex q, int outcome) const {
        check_qubit(q);
        const std::size_t bit = std::size_t{1} << q.value;
        const std::size_t want = outcome ? bit : 0;
        double p = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if ((i & bit) == want)
                p += std::norm(amps_[i]);
        return p;
    }

    void apply_single_qubit(QubitIndex q, const Gate2 &g) {
        check_qubit(q);
        if (!gates::is_unitary(g))
            throw ValidationError("single-qubit gate is not unitary");
        const std::size_t bit = std::size_t{1} << q.value;
        const std::size_t n = amps_.size();
        for (std::size_t base = 0; base < n; base += 2 * bit) {
            for (std::size_t off = 0; off < bit; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 | bit;
                const Complex a0 = amps_[i0];
                const Complex a1 = amps_[i1];
                amps_[i0] = g[0] * a0 + g[1] * a1;
                amps_[i1] = g[2] * a0 + g[3] * a1;
            }
        }
    }

    /// Ry(angle) on `target`, restricted to the subspace where every control is 1.
    void apply_multi_controlled_ry(std::span<const QubitIndex> controls, QubitIndex target,
                                   double angle) {
        check_qubit(target);
        std::size_t control_mask = 0;
        for (const auto c : controls) {
            check_qubit(c);
            const std::size_t bit = std::size_t{1} << c.value;
            if (c == target)
                throw ValidationError("control qubit " + std::to_string(c.value) +
                                      " coincides with the target");
            if (control_mask & bit)
                throw ValidationError("duplicate control qubit " + std::to_string(c.value));
            control_mask |= bit;
        }
        const double cs = std::cos(angle / 2.0);
        const double sn = std::sin(angle / 2.0);
        const std::size_t target_bit = std::size_t{1} << target.value;
        const std::size_t fixed = control_mask | target_bit;
        const std::size_t free_mask = (amps_.size() - 1) & ~fixed;
        const std::size_t free_count = std::size_t{1} << std::popcount(free_mask);
        // Enumerate only the indices with all controls set and target clear.
        for (std::size_t j = 0; j < free_count; ++j) {
            const std::size_t i0 = deposit_bits(j, free_mask) | control_mask;
            const std::size_t i1 = i0 | target_bit;
            const Complex a0 = amps_[i0];
            const Complex a1 = amps_[i1];
            amps_[i0] = cs * a0 - sn * a1;
            amps_[i1] = sn * a0 + cs * a1;
        }
    }

    /// new[k] = old[(k + 1) mod 2^m]: the cyclic shift-down permutation.
    void apply_decrement_permutation() noexcept {
        std::rotate(amps_.begin(), amps_.begin() + 1, amps_.end());
    }

    /// Projects qubit q onto `outcome` and renormalizes. Returns the Born
    /// probability of the outcome before collapse.
    double collapse(QubitIndex q, int outcome) {
        const double p = probability(q, outcome);
        if (p <= kMinBranchProbability)
            throw MeasurementError("outcome " + std::to_string(outcome) + " on qubit " +
                                   std::to_string(q.value) + " has probability " +
                                   std::to_string(p));
        const std::size_t bit = std::size_t{1} << q.value;
        const std::size_t keep = outcome ? bit : 0;
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < amps_.size(); ++i)
            amps_[i] = ((i & bit) == keep) ? amps_[i] * scale : Complex{0.0};
        return p;
    }

  private:
    StateVector(std::size_t m, std::vector<Complex> amps)
        : num_qubits_(m), amps_(std::move(amps)) {}

    static void check_qubit_count(std::size_t m) {
        if (m < 1 || m > kMaxQubits)
            throw SizeError("qubit count " + std::to_string(m) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }

    void check_qubit(QubitIndex q) const {
        if (q.value >= num_qubits_)
            throw IndexError("qubit " + std::to_string(q.value) + " out of range for " +
                             std::to_string(num_qubits_) + "-qubit state");
    }

    // Scatters the low bits of `value` into the set positions of `mask`.
    static std::size_t deposit_bits(std::size_t value, std::size_t mask) noexcept {
        std::size_t out = 0;
        while (mask) {
            const std::size_t low = mask & (~mask + 1);
            if (value & 1)
                out |= low;
            value >>= 1;
            mask &= mask - 1;
        }
        return out;
    }

    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

// Value-returning forms of the in-place operations.

inline StateVector zero_state(std::size_t num_qubits) { return StateVector::zero(num_qubits); }

inline StateVector apply_single_qubit(StateVector state, QubitIndex q, const Gate2 &g) {
    state.apply_single_qubit(q, g);
    return state;
}

inline StateVector apply_multi_controlled_ry(StateVector state,
                                             std::span<const QubitIndex> controls,
                                             QubitIndex target, double angle) {
    state.apply_multi_controlled_ry(controls, target, angle);
    return state;
}

inline StateVector apply_decrement_permutation(StateVector state) {
    state.apply_decrement_permutation();
    return state;
}

enum class BranchPolicy { forced_0, forced_1, max_prob, sampled };

struct MeasurementPolicy {
    BranchPolicy kind = BranchPolicy::max_prob;
    std::uint64_t seed = 0; ///< used only by BranchPolicy::sampled
};

struct MeasurementRecord {
    QubitIndex qubit{0};
    int outcome = 0;
    double probability = 0.0; ///< pre-collapse Born probability of `outcome`
};

/// Projective Z measurement of one qubit. max_prob breaks ties toward 0.
inline std::pair<MeasurementRecord, StateVector>
partial_measure(StateVector state, QubitIndex q, MeasurementPolicy policy = {}) {
    const double p0 = state.probability(q, 0);
    const double p1 = state.probability(q, 1);
    int outcome = 0;
    switch (policy.kind) {
    case BranchPolicy::forced_0:
        outcome = 0;
        break;
    case BranchPolicy::forced_1:
        outcome = 1;
        break;
    case BranchPolicy::max_prob:
        outcome = p1 > p0 ? 1 : 0;
        break;
    case BranchPolicy::sampled: {
        std::mt19937_64 gen(policy.seed);
        // 53-bit uniform in [0, 1); avoids distribution implementation differences.
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        outcome = u * (p0 + p1) < p0 ? 0 : 1;
        break;
    }
    }
    MeasurementRecord rec{q, outcome, 0.0};
    rec.probability = state.collapse(q, outcome);
    return {rec, std::move(state)};
}

/// Removes a qubit that is in a computational basis state, returning the
/// renormalized state over the remaining m-1 qubits (higher qubits shift down).
inline StateVector discard_qubit(const StateVector &state, QubitIndex q) {
    const std::size_t m = state.num_qubits();
    if (q.value >= m)
        throw IndexError("qubit " + std::to_string(q.value) + " out of range");
    if (m < 2)
        throw SizeError("cannot discard the only qubit of a state");
    const std::size_t bit = std::size_t{1} << q.value;
    const std::size_t low_mask = bit - 1;
    const auto amps = state.amplitudes();

    double weight[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < amps.size(); ++i)
        weight[(i & bit) ? 1 : 0] += std::norm(amps[i]);
    const int value = weight[1] > weight[0] ? 1 : 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const int b = (i & bit) ? 1 : 0;
        if (b != value && std::abs(amps[i]) >= kStateTolerance)
            throw ContractError("qubit " + std::to_string(q.value) +
                                " is not in a computational basis state");
    }

    std::vector<Complex> out(amps.size() / 2);
    double norm = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t src = ((k & ~low_mask) << 1) | (value ? bit : 0) | (k & low_mask);
        out[k] = amps[src];
        norm += std::norm(out[k]);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &a : out)
        a *= scale;
    return StateVector::from_amplitudes(std::move(out));
}

/// Tensors a fresh |0> qubit in at position 0; existing qubits move up by one.
inline StateVector add_low_qubit(const StateVector &state) {
    const auto amps = state.amplitudes();
    std::vector<Complex> out(amps.size() * 2, Complex{0.0});
    for (std::size_t k = 0; k < amps.size(); ++k)
        out[2 * k] = amps[k];
    return StateVector::from_amplitudes(std::move(out));
}

} // namespace qhedge
