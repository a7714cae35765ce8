#pragma once

// Image file I/O. Reads PGM (P2/P5), PPM (P3/P6) and 8-bit PNG; writes
// 8-bit PGM (P5) or PNG, chosen by file extension.
//
// Link against libpng (PNG::PNG) when including this header.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <png.h>

#include "qhedge/encoders.hpp"
#include "qhedge/errors.hpp"
#include "qhedge/image.hpp"
#include "qhedge/postprocess.hpp"

namespace qhedge::io {

/// Decoded file contents before any conversion: 1 (gray) or 3 (RGB)
/// interleaved channels, samples in [0, maxval].
struct Raster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 1;
    unsigned maxval = 255;
    std::vector<std::uint16_t> samples;

    [[nodiscard]] std::uint16_t sample(std::size_t x, std::size_t y, std::size_t ch) const {
        return samples[(y * width + x) * channels + ch];
    }
};

enum class FitMode { zero_pad, center_crop };

struct LoadOptions {
    FitMode fit = FitMode::zero_pad;
    /// Map color pixels through theta = arccos(r/256 + g/256^2 + b/256^3)
    /// (stored as the intensity cos(theta)) instead of Rec.601 luminance.
    bool rgb_angle = false;
};

namespace detail {

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path &path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw InputError("failed writing " + path.string());
}

class PnmCursor {
  public:
    explicit PnmCursor(std::string_view data) : data_(data) {}

    // Next whitespace-separated token, skipping '#' comments.
    unsigned long next_number(const char *what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_])))
            ++pos_;
        if (start == pos_)
            throw InputError(std::string("corrupt PNM: expected ") + what);
        if (pos_ - start > 9)
            throw InputError(std::string("corrupt PNM: ") + what + " too large");
        return std::stoul(std::string(data_.substr(start, pos_ - start)));
    }

    // Exactly one whitespace byte separates the header from binary data.
    void end_of_header() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
            throw InputError("corrupt PNM: missing whitespace after header");
        ++pos_;
    }

    [[nodiscard]] std::string_view rest() const { return data_.substr(pos_); }

  private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char ch = data_[pos_];
            if (ch == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view data_;
    std::size_t pos_ = 2; // after the magic
};

inline Raster parse_pnm(std::string_view data) {
    if (data.size() < 2 || data[0] != 'P')
        throw InputError("not a PNM file");
    const char kind = data[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        throw InputError(std::string("unsupported PNM variant P") + kind);
    const bool ascii = kind == '2' || kind == '3';
    PnmCursor cur(data);
    Raster r;
    r.channels = (kind == '3' || kind == '6') ? 3 : 1;
    r.width = cur.next_number("width");
    r.height = cur.next_number("height");
    const unsigned long maxval = cur.next_number("maxval");
    if (r.width == 0 || r.height == 0)
        throw InputError("zero-sized image");
    if (maxval == 0 || maxval > 65535)
        throw InputError("corrupt PNM: maxval " + std::to_string(maxval) + " outside [1, 65535]");
    r.maxval = static_cast<unsigned>(maxval);
    const std::size_t count = r.width * r.height * r.channels;
    r.samples.resize(count);

    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned long v = cur.next_number("sample");
            if (v > maxval)
                throw InputError("corrupt PNM: sample exceeds maxval");
            r.samples[i] = static_cast<std::uint16_t>(v);
        }
        return r;
    }

    cur.end_of_header();
    const std::string_view body = cur.rest();
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    if (body.size() < count * bytes_per)
        throw InputError("corrupt PNM: truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
        unsigned v = static_cast<unsigned char>(body[i * bytes_per]);
        if (bytes_per == 2)
            v = (v << 8) | static_cast<unsigned char>(body[i * 2 + 1]);
        if (v > maxval)
            throw InputError("corrupt PNM: sample exceeds maxval");
        r.samples[i] = static_cast<std::uint16_t>(v);
    }
    return r;
}

inline bool is_png(std::string_view data) {
    static constexpr unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    return data.size() >= 8 && std::memcmp(data.data(), sig, 8) == 0;
}

inline Raster parse_png(std::string_view data) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, data.data(), data.size()))
        throw InputError(std::string("corrupt PNG: ") + image.message);
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    Raster r;
    r.width = image.width;
    r.height = image.height;
    r.channels = color ? 3 : 1;
    r.maxval = 255;
    std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
        png_image_free(&image);
        throw InputError(std::string("corrupt PNG: ") + image.message);
    }
    if (r.width == 0 || r.height == 0)
        throw InputError("zero-sized image");
    r.samples.assign(buf.begin(), buf.end());
    return r;
}

inline std::string encode_png_gray(std::size_t width, std::size_t height,
                                   const std::vector<std::uint8_t> &pixels) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = PNG_FORMAT_GRAY;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), 0, nullptr))
        throw InputError(std::string("PNG encode failed: ") + image.message);
    std::string out(size, '\0');
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr))
        throw InputError(std::string("PNG encode failed: ") + image.message);
    out.resize(size);
    return out;
}

struct Window {
    std::size_t side;
    std::size_t x0;
    std::size_t y0;
};

inline Window fit_window(std::size_t width, std::size_t height, FitMode fit) {
    if (fit == FitMode::zero_pad)
        return {std::max<std::size_t>(2, std::bit_ceil(std::max(width, height))), 0, 0};
    const std::size_t side = std::bit_floor(std::min(width, height));
    if (side < 2)
        throw InputError("image too small to crop to a 2x2 square");
    return {side, (width - side) / 2, (height - side) / 2};
}

inline bool has_png_extension(const std::filesystem::path &path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png";
}

} // namespace detail

inline Raster read_raster(const std::filesystem::path &path) {
    const std::string data = detail::read_file(path);
    if (detail::is_png(data))
        return detail::parse_png(data);
    if (data.size() >= 2 && data[0] == 'P')
        return detail::parse_pnm(data);
    throw InputError("unsupported image format: " + path.string());
}

/// Converts to [0, 1] intensities and fits the result into a power-of-two
/// square: zero_pad keeps the original at the top-left of the smallest
/// enclosing 2^n square (n >= 1); center_crop keeps the centered largest
/// 2^n square that fits.
inline GrayImage raster_to_gray(const Raster &r, const LoadOptions &opts = {}) {
    if (r.width == 0 || r.height == 0)
        throw InputError("zero-sized image");
    auto intensity = [&](std::size_t x, std::size_t y) -> double {
        const double maxval = r.maxval;
        if (r.channels == 1 && !opts.rgb_angle)
            return r.sample(x, y, 0) / maxval;
        auto channel8 = [&](std::size_t ch) {
            const std::size_t src = r.channels == 1 ? 0 : ch;
            return static_cast<int>(std::lround(r.sample(x, y, src) * 255.0 / maxval));
        };
        if (opts.rgb_angle)
            return std::cos(rgb_to_angle(channel8(0), channel8(1), channel8(2)));
        const double y601 = 0.299 * r.sample(x, y, 0) + 0.587 * r.sample(x, y, 1) +
                            0.114 * r.sample(x, y, 2);
        return y601 / maxval;
    };

    const auto [side, x0, y0] = detail::fit_window(r.width, r.height, opts.fit);

    std::vector<double> px(side * side, 0.0);
    for (std::size_t row = 0; row < side; ++row) {
        for (std::size_t col = 0; col < side; ++col) {
            const std::size_t x = x0 + col;
            const std::size_t y = y0 + row;
            if (x < r.width && y < r.height)
                px[row * side + col] = std::clamp(intensity(x, y), 0.0, 1.0);
        }
    }
    return GrayImage(side, std::move(px));
}

inline GrayImage load_image(const std::filesystem::path &path, const LoadOptions &opts = {}) {
    return raster_to_gray(read_raster(path), opts);
}

/// Color view of a file fitted like load_image; gray sources replicate into
/// all three channels.
inline RgbImage load_rgb_image(const std::filesystem::path &path, FitMode fit = FitMode::zero_pad) {
    const Raster r = read_raster(path);
    const auto [side, x0, y0] = detail::fit_window(r.width, r.height, fit);
    std::vector<Rgb> px(side * side);
    for (std::size_t row = 0; row < side; ++row) {
        for (std::size_t col = 0; col < side; ++col) {
            const std::size_t x = x0 + col;
            const std::size_t y = y0 + row;
            if (x >= r.width || y >= r.height)
                continue;
            auto ch8 = [&](std::size_t ch) {
                const std::size_t src = r.channels == 1 ? 0 : ch;
                return static_cast<int>(std::lround(r.sample(x, y, src) * 255.0 / r.maxval));
            };
            px[row * side + col] = Rgb{ch8(0), ch8(1), ch8(2)};
        }
    }
    return RgbImage(side, std::move(px));
}

/// Writes 8-bit gray pixels as PNG if the extension is .png, else PGM P5.
inline void save_gray8(const std::filesystem::path &path, std::size_t width, std::size_t height,
                       const std::vector<std::uint8_t> &pixels) {
    if (pixels.size() != width * height)
        throw SizeError("pixel buffer does not match " + std::to_string(width) + "x" +
                        std::to_string(height));
    if (detail::has_png_extension(path)) {
        detail::write_file(path, detail::encode_png_gray(width, height, pixels));
        return;
    }
    std::string bytes = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    bytes.append(reinterpret_cast<const char *>(pixels.data()), pixels.size());
    detail::write_file(path, bytes);
}

inline std::vector<std::uint8_t> to_gray8(const GrayImage &img) {
    std::vector<std::uint8_t> out;
    out.reserve(img.size());
    for (double v : img.pixels())
        out.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
    return out;
}

inline std::vector<std::uint8_t> to_gray8(const EdgeMap &map) {
    std::vector<std::uint8_t> out;
    out.reserve(map.bits().size());
    for (auto b : map.bits())
        out.push_back(b ? 255 : 0);
    return out;
}

inline void save_gray(const GrayImage &img, const std::filesystem::path &path) {
    save_gray8(path, img.side(), img.side(), to_gray8(img));
}

/// Edges as 255 on a 0 background.
inline void save_edge_map(const EdgeMap &map, const std::filesystem::path &path) {
    save_gray8(path, map.side(), map.side(), to_gray8(map));
}

/// Reads an edge map written by save_edge_map (any nonzero sample is an edge).
inline EdgeMap load_edge_map(const std::filesystem::path &path) {
    const Raster r = read_raster(path);
    if (r.width != r.height || r.channels != 1)
        throw InputError("edge map must be a square gray image");
    std::vector<std::uint8_t> bits(r.samples.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = r.samples[i] ? 1 : 0;
    return EdgeMap(r.width, std::move(bits));
}

} // namespace qhedge::io
