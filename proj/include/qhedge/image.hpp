#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qhedge/errors.hpp"

namespace qhedge {

namespace detail {

inline void check_square_side(std::size_t side, std::size_t pixel_count) {
    if (side < 2 || !std::has_single_bit(side))
        throw SizeError("image side " + std::to_string(side) +
                        " is not a power of two >= 2");
    if (pixel_count != side * side)
        throw SizeError("expected " + std::to_string(side * side) + " pixels, got " +
                        std::to_string(pixel_count));
}

template <class T>
std::vector<T> transpose_square(const std::vector<T> &px, std::size_t side) {
    std::vector<T> out(px.size());
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c)
            out[c * side + r] = px[r * side + c];
    return out;
}

} // namespace detail

/// Square 2^n x 2^n grayscale image, row-major, intensities in [0, 1].
class GrayImage {
  public:
    GrayImage(std::size_t side, std::vector<double> pixels)
        : side_(side), pixels_(std::move(pixels)) {
        detail::check_square_side(side_, pixels_.size());
        for (std::size_t i = 0; i < pixels_.size(); ++i) {
            const double v = pixels_[i];
            if (!(v >= 0.0 && v <= 1.0))
                throw ValidationError("pixel " + std::to_string(i) + " intensity " +
                                      std::to_string(v) + " outside [0, 1]");
        }
    }

    static GrayImage filled(std::size_t side, double value) {
        return GrayImage(side, std::vector<double>(side * side, value));
    }

    [[nodiscard]] std::size_t side() const noexcept { return side_; }
    /// log2(side)
    [[nodiscard]] std::size_t exponent() const noexcept {
        return static_cast<std::size_t>(std::countr_zero(side_));
    }
    [[nodiscard]] std::size_t size() const noexcept { return pixels_.size(); }
    [[nodiscard]] const std::vector<double> &pixels() const noexcept { return pixels_; }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const {
        return pixels_.at(row * side_ + col);
    }

    [[nodiscard]] GrayImage transposed() const {
        return GrayImage(side_, detail::transpose_square(pixels_, side_));
    }

    friend bool operator==(const GrayImage &, const GrayImage &) = default;

  private:
    std::size_t side_;
    std::vector<double> pixels_;
};

struct Rgb {
    int r = 0;
    int g = 0;
    int b = 0;
    friend constexpr bool operator==(Rgb, Rgb) = default;
};

/// Square 2^n x 2^n color image, row-major, channels in [0, 255].
class RgbImage {
  public:
    RgbImage(std::size_t side, std::vector<Rgb> pixels) : side_(side), pixels_(std::move(pixels)) {
        detail::check_square_side(side_, pixels_.size());
        for (const auto &p : pixels_)
            for (int ch : {p.r, p.g, p.b})
                if (ch < 0 || ch > 255)
                    throw ValidationError("channel value " + std::to_string(ch) +
                                          " outside [0, 255]");
    }

    [[nodiscard]] std::size_t side() const noexcept { return side_; }
    [[nodiscard]] const std::vector<Rgb> &pixels() const noexcept { return pixels_; }

  private:
    std::size_t side_;
    std::vector<Rgb> pixels_;
};

/// Square 2^n x 2^n image of 8-bit gray levels.
class ByteImage {
  public:
    ByteImage(std::size_t side, std::vector<std::uint8_t> pixels)
        : side_(side), pixels_(std::move(pixels)) {
        detail::check_square_side(side_, pixels_.size());
    }

    [[nodiscard]] std::size_t side() const noexcept { return side_; }
    [[nodiscard]] std::size_t exponent() const noexcept {
        return static_cast<std::size_t>(std::countr_zero(side_));
    }
    [[nodiscard]] const std::vector<std::uint8_t> &pixels() const noexcept { return pixels_; }

    friend bool operator==(const ByteImage &, const ByteImage &) = default;

  private:
    std::size_t side_;
    std::vector<std::uint8_t> pixels_;
};

} // namespace qhedge
