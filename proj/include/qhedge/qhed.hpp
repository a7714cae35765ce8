#pragma once

// Quantum Hadamard edge detection scan: ancilla H -> decrement permutation
// -> ancilla H, then read the ancilla-|1> half of the amplitudes, which holds
// the neighbour differences (c_i - c_{i+1}) / 2 in row-major scan order.

#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qhedge/encoders.hpp"
#include "qhedge/errors.hpp"
#include "qhedge/image.hpp"
#include "qhedge/statevector.hpp"

namespace qhedge {

enum class ScanDirection { horizontal, vertical };

/// clipped drops every pair that straddles a row end, including the cyclic
/// c_{N-1} - c_0 term; cyclic keeps the raw circuit output.
enum class BoundaryMode { clipped, cyclic };

/// State of the ancilla before its first Hadamard. `plus` prepares |0>
/// (H gives |+>); `minus` prepares |1> (H gives |->), which moves
/// the differences into the ancilla-|0> half with flipped sign.
enum class AncillaPrep { plus, minus };

enum class EncodingMethod { qpie, frqi };

/// Signed neighbour differences (c_i - c_{i+1}) / 2, stored in image
/// orientation (row-major) regardless of scan direction.
class DifferenceGrid {
  public:
    DifferenceGrid(std::size_t side, std::vector<double> values, ScanDirection direction,
                   BoundaryMode boundary)
        : side_(side), values_(std::move(values)), direction_(direction), boundary_(boundary) {
        detail::check_square_side(side_, values_.size());
    }

    [[nodiscard]] std::size_t side() const noexcept { return side_; }
    [[nodiscard]] std::size_t exponent() const noexcept {
        return static_cast<std::size_t>(std::countr_zero(side_));
    }
    [[nodiscard]] const std::vector<double> &values() const noexcept { return values_; }
    [[nodiscard]] ScanDirection direction() const noexcept { return direction_; }
    [[nodiscard]] BoundaryMode boundary() const noexcept { return boundary_; }

    [[nodiscard]] double at(std::size_t row, std::size_t col) const {
        return values_.at(row * side_ + col);
    }

    /// Row-major image index of the scan-order position (scan_row, scan_col).
    [[nodiscard]] std::size_t image_index(std::size_t scan_row, std::size_t scan_col) const noexcept {
        return direction_ == ScanDirection::horizontal ? scan_row * side_ + scan_col
                                                       : scan_col * side_ + scan_row;
    }

    /// Value at the scan-order position.
    [[nodiscard]] double scan_at(std::size_t scan_row, std::size_t scan_col) const {
        return values_[image_index(scan_row, scan_col)];
    }

    /// True for entries whose pair straddles a row end of the scan (always
    /// zero in clipped mode).
    [[nodiscard]] bool is_row_end(std::size_t image_idx) const noexcept {
        const std::size_t r = image_idx / side_;
        const std::size_t c = image_idx % side_;
        return (direction_ == ScanDirection::horizontal ? c : r) == side_ - 1;
    }

  private:
    std::size_t side_;
    std::vector<double> values_;
    ScanDirection direction_;
    BoundaryMode boundary_;
};

/// Adds the ancilla as qubit 0 and applies H, decrement, H. For an input
/// (c_0 .. c_{N-1}) with AncillaPrep::plus, the result is
/// (c_0+c_1, c_0-c_1, c_1+c_2, ..., c_{N-1}+c_0, c_{N-1}-c_0) / 2.
inline StateVector qhed_core(const StateVector &image_state, AncillaPrep prep = AncillaPrep::plus) {
    StateVector s = add_low_qubit(image_state);
    const QubitIndex ancilla{0};
    if (prep == AncillaPrep::minus)
        s.apply_single_qubit(ancilla, gates::pauli_x());
    s.apply_single_qubit(ancilla, gates::hadamard());
    s.apply_decrement_permutation();
    s.apply_single_qubit(ancilla, gates::hadamard());
    return s;
}

inline DifferenceGrid extract_differences(const StateVector &state, std::size_t side,
                                          ScanDirection direction, BoundaryMode boundary,
                                          AncillaPrep prep = AncillaPrep::plus) {
    const std::size_t count = side * side;
    if (state.size() != 2 * count)
        throw SizeError("post-scan state of " + std::to_string(state.num_qubits()) +
                        " qubits does not match a " + std::to_string(side) + "-wide image");
    const auto amps = state.amplitudes();
    // plus: d_k sits at the ancilla-|1> slot 2k+1; minus: at 2k, negated.
    const std::size_t slot = prep == AncillaPrep::plus ? 1 : 0;
    const double sign = prep == AncillaPrep::plus ? 1.0 : -1.0;
    std::vector<double> scan(count);
    for (std::size_t k = 0; k < count; ++k) {
        const Complex a = amps[2 * k + slot];
        if (std::abs(a.imag()) >= kStateTolerance)
            throw ContractError("difference amplitude " + std::to_string(k) +
                                " has an imaginary part");
        scan[k] = (boundary == BoundaryMode::clipped && k % side == side - 1) ? 0.0
                                                                               : sign * a.real();
    }
    if (direction == ScanDirection::vertical)
        scan = detail::transpose_square(scan, side);
    return DifferenceGrid(side, std::move(scan), direction, boundary);
}

inline DifferenceGrid scan_qpie(const GrayImage &img, ScanDirection direction,
                                BoundaryMode boundary = BoundaryMode::clipped,
                                AncillaPrep prep = AncillaPrep::plus) {
    const GrayImage oriented = direction == ScanDirection::vertical ? img.transposed() : img;
    const StateVector out = qhed_core(qpie_encode(oriented), prep);
    return extract_differences(out, img.side(), direction, boundary, prep);
}

/// FRQI-encodes arccos(I), measures the color qubit (qubit 2n) and removes
/// it. Outcome 0 leaves the QPIE state of I; outcome 1 the QPIE state of
/// sqrt(1 - I^2).
inline std::pair<MeasurementRecord, StateVector>
frqi_measure_and_prepare(const GrayImage &img, MeasurementPolicy policy = {}) {
    const StateVector encoded = frqi_encode(intensities_to_angles(img));
    const QubitIndex color{2 * img.exponent()};
    auto [record, collapsed] = partial_measure(encoded, color, policy);
    return {record, discard_qubit(collapsed, color)};
}

struct PipelineConfig {
    EncodingMethod method = EncodingMethod::frqi;
    MeasurementPolicy branch{};
    BoundaryMode boundary = BoundaryMode::clipped;
    AncillaPrep ancilla = AncillaPrep::plus;
};

struct FrqiScan {
    DifferenceGrid grid;
    MeasurementRecord record;
};

/// The measured color qubit is reset (conditional X) and reused as the
/// scan ancilla; qhed_core re-attaches it as qubit 0.
inline FrqiScan scan_frqi(const GrayImage &img, ScanDirection direction,
                          const PipelineConfig &config = {}) {
    const GrayImage oriented = direction == ScanDirection::vertical ? img.transposed() : img;
    auto [record, data] = frqi_measure_and_prepare(oriented, config.branch);
    const StateVector out = qhed_core(data, config.ancilla);
    return {extract_differences(out, img.side(), direction, config.boundary, config.ancilla),
            record};
}

} // namespace qhedge
