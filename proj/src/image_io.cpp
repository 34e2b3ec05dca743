#include "stereotk/image.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

#include <png.h>

#include "stereotk/error.hpp"

namespace stereotk {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    if (in.bad()) {
        throw IoError("read failed: " + path);
    }
    return bytes;
}

bool is_pnm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
}

struct PnmHeader {
    int channels = 0;
    int width = 0;
    int height = 0;
    std::size_t data_offset = 0;
};

// Parse a P5/P6 header.  Only 8-bit rasters (maxval <= 255) are accepted.
// Comment lines between header fields are collected into `comments` with
// the '#' and one following space stripped.
PnmHeader parse_pnm_header(const std::vector<std::uint8_t>& bytes,
                           const std::string& path,
                           std::vector<std::string>* comments) {
    if (bytes.size() < 2 || bytes[0] != 'P' ||
        (bytes[1] != '5' && bytes[1] != '6')) {
        throw FormatError(path + ": not a binary PGM/PPM file");
    }
    PnmHeader header;
    header.channels = bytes[1] == '6' ? 3 : 1;
    std::size_t pos = 2;
    long fields[3] = {0, 0, 0};
    for (long& field : fields) {
        for (;;) {
            while (pos < bytes.size() && is_pnm_space(bytes[pos])) {
                ++pos;
            }
            if (pos < bytes.size() && bytes[pos] == '#') {
                std::size_t start = ++pos;
                while (pos < bytes.size() && bytes[pos] != '\n') {
                    ++pos;
                }
                if (comments) {
                    std::string line(bytes.begin() + start, bytes.begin() + pos);
                    if (!line.empty() && line.front() == ' ') {
                        line.erase(0, 1);
                    }
                    comments->push_back(line);
                }
            } else {
                break;
            }
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
            throw FormatError(path + ": malformed PNM header");
        }
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            field = field * 10 + (bytes[pos] - '0');
            if (field > (1L << 30)) {
                throw FormatError(path + ": PNM header value out of range");
            }
            ++pos;
        }
    }
    if (pos >= bytes.size() || !is_pnm_space(bytes[pos])) {
        throw FormatError(path + ": malformed PNM header");
    }
    ++pos; // exactly one whitespace byte separates header from raster
    if (fields[0] <= 0 || fields[1] <= 0) {
        throw FormatError(path + ": bad PNM dimensions");
    }
    if (fields[2] <= 0 || fields[2] > 255) {
        throw FormatError(path + ": only 8-bit PNM rasters are supported");
    }
    header.width = static_cast<int>(fields[0]);
    header.height = static_cast<int>(fields[1]);
    header.data_offset = pos;
    return header;
}

bool has_png_signature(const std::vector<std::uint8_t>& bytes) {
    static const std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G',
                                               '\r', '\n', 0x1a, '\n'};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), kSignature, 8) == 0;
}

// Decode a PNG from memory into 8-bit RGB via the libpng simplified API,
// which folds palette, grey and 16-bit variants down for us.
RgbImage decode_png(const std::vector<std::uint8_t>& bytes,
                    const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        throw FormatError(path + ": " + png.message);
    }
    png.format = PNG_FORMAT_RGB;
    RgbImage image(static_cast<int>(png.width), static_cast<int>(png.height));
    if (!png_image_finish_read(&png, nullptr, image.data.data(), 0, nullptr)) {
        std::string message = png.message;
        png_image_free(&png);
        throw FormatError(path + ": " + message);
    }
    return image;
}

std::string lowercase_extension(const std::string& path) {
    std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) {
        return "";
    }
    std::string ext = path.substr(dot);
    for (char& c : ext) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return ext;
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

} // namespace

RgbImage load_image(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    if (has_png_signature(bytes)) {
        return decode_png(bytes, path);
    }
    const PnmHeader header = parse_pnm_header(bytes, path, nullptr);
    const std::size_t expected = static_cast<std::size_t>(header.width) *
                                 header.height * header.channels;
    if (bytes.size() - header.data_offset < expected) {
        throw FormatError(path + ": truncated PNM raster");
    }
    const std::uint8_t* raster = bytes.data() + header.data_offset;
    RgbImage image(header.width, header.height);
    if (header.channels == 3) {
        std::memcpy(image.data.data(), raster, expected);
    } else {
        for (std::size_t i = 0; i < expected; ++i) {
            image.data[i * 3 + 0] = raster[i];
            image.data[i * 3 + 1] = raster[i];
            image.data[i * 3 + 2] = raster[i];
        }
    }
    return image;
}

GrayImage load_gray(const std::string& path,
                    std::vector<std::string>* comments) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    if (has_png_signature(bytes)) {
        const RgbImage rgb = decode_png(bytes, path);
        GrayImage image(rgb.width, rgb.height);
        for (std::size_t i = 0; i < image.data.size(); ++i) {
            const std::uint8_t r = rgb.data[i * 3 + 0];
            if (r != rgb.data[i * 3 + 1] || r != rgb.data[i * 3 + 2]) {
                throw FormatError(path + ": PNG has colour pixels, expected a "
                                         "single-channel image");
            }
            image.data[i] = r;
        }
        return image;
    }
    const PnmHeader header = parse_pnm_header(bytes, path, comments);
    if (header.channels != 1) {
        throw FormatError(path + ": expected a single-channel (P5) file");
    }
    const std::size_t expected =
        static_cast<std::size_t>(header.width) * header.height;
    if (bytes.size() - header.data_offset < expected) {
        throw FormatError(path + ": truncated PGM raster");
    }
    GrayImage image(header.width, header.height);
    std::memcpy(image.data.data(), bytes.data() + header.data_offset, expected);
    return image;
}

void save_gray(const GrayImage& image, const std::string& path,
               const std::vector<std::string>& comments) {
    std::string header = "P5\n";
    for (const std::string& comment : comments) {
        header += "# " + comment + "\n";
    }
    header += std::to_string(image.width) + " " + std::to_string(image.height) +
              "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.insert(bytes.end(), image.data.begin(), image.data.end());
    write_file(path, bytes.data(), bytes.size());
}

void save_rgb(const RgbImage& image, const std::string& path) {
    if (lowercase_extension(path) == ".png") {
        png_image png;
        std::memset(&png, 0, sizeof png);
        png.version = PNG_IMAGE_VERSION;
        png.width = static_cast<png_uint_32>(image.width);
        png.height = static_cast<png_uint_32>(image.height);
        png.format = PNG_FORMAT_RGB;
        if (!png_image_write_to_file(&png, path.c_str(), 0, image.data.data(),
                                     0, nullptr)) {
            throw IoError(path + ": " + png.message);
        }
        return;
    }
    std::string header = "P6\n" + std::to_string(image.width) + " " +
                         std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.insert(bytes.end(), image.data.begin(), image.data.end());
    write_file(path, bytes.data(), bytes.size());
}

} // namespace stereotk
