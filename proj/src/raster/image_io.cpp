#include "svgbench/image_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "svgbench/error.hpp"

namespace svgbench::raster {

namespace {

std::uint8_t quantize(float v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f)); }

}  // namespace

std::string write_ppm(const RasterImage& img) {
    std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    out.reserve(out.size() + img.data().size());
    for (float v : img.data()) out.push_back(static_cast<char>(quantize(v)));
    return out;
}

RasterImage read_ppm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') throw MalformedPpm("not a binary P6 PPM");
    std::size_t pos = 2;
    auto skip_space = [&] {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&]() -> long {
        skip_space();
        const std::size_t begin = pos;
        long v = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + (bytes[pos] - '0');
            if (v > (1L << 24)) throw MalformedPpm("PPM header value out of range");
            ++pos;
        }
        if (pos == begin) throw MalformedPpm("bad PPM header");
        return v;
    };
    const long w = read_int();
    const long h = read_int();
    const long maxval = read_int();
    if (maxval != 255) throw MalformedPpm("unsupported PPM maxval " + std::to_string(maxval));
    if (pos >= bytes.size() || !(bytes[pos] == ' ' || bytes[pos] == '\n' || bytes[pos] == '\r' || bytes[pos] == '\t'))
        throw MalformedPpm("bad PPM header");
    ++pos;
    const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
    if (bytes.size() - pos < need) throw MalformedPpm("short PPM payload");
    RasterImage img(static_cast<int>(w), static_cast<int>(h));
    auto data = img.data();
    for (std::size_t i = 0; i < need; ++i)
        data[i] = static_cast<std::uint8_t>(bytes[pos + i]) / 255.0f;
    return img;
}

namespace {

std::uint32_t be32(const unsigned char* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

std::string inflate_all(const std::string& compressed, std::size_t expected) {
    std::string out(expected, '\0');
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw MalformedPng("zlib init failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    zs.avail_in = static_cast<uInt>(compressed.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const std::size_t produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END && !(rc == Z_BUF_ERROR && produced == expected))
        throw MalformedPng("corrupt image data stream");
    if (produced != expected) throw MalformedPng("image data has wrong size");
    return out;
}

}  // namespace

RasterImage read_png(std::string_view bytes) {
    static constexpr unsigned char kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (bytes.size() < 8 || !std::equal(kSig, kSig + 8, p)) throw MalformedPng("bad PNG signature");

    std::size_t pos = 8;
    std::uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = -1, interlace = 0;
    bool have_header = false, have_end = false;
    std::vector<std::array<std::uint8_t, 4>> palette;
    std::vector<std::uint8_t> trns;
    std::string idat;

    while (pos < bytes.size()) {
        if (bytes.size() - pos < 12) throw MalformedPng("truncated chunk");
        const std::uint32_t len = be32(p + pos);
        if (len > bytes.size() - pos - 12) throw MalformedPng("chunk length exceeds file");
        const unsigned char* type = p + pos + 4;
        const unsigned char* body = p + pos + 8;
        const std::uint32_t crc = be32(body + len);
        if (crc32(0, type, len + 4) != crc) throw MalformedPng("chunk CRC mismatch");
        const std::string_view tag(reinterpret_cast<const char*>(type), 4);
        if (!have_header && tag != "IHDR") throw MalformedPng("first chunk is not IHDR");
        if (tag == "IHDR") {
            if (len != 13 || have_header) throw MalformedPng("bad IHDR");
            width = be32(body);
            height = be32(body + 4);
            bit_depth = body[8];
            color_type = body[9];
            interlace = body[12];
            have_header = true;
            if (width == 0 || height == 0 || width > (1u << 15) || height > (1u << 15))
                throw MalformedPng("bad PNG dimensions");
            if (body[10] != 0 || body[11] != 0) throw MalformedPng("unknown compression or filter method");
            if (color_type != 0 && color_type != 2 && color_type != 3 && color_type != 4 && color_type != 6)
                throw MalformedPng("bad color type");
            if (bit_depth != 8) throw UnsupportedPng("only 8-bit PNG is supported (got " + std::to_string(bit_depth) + ")");
            if (interlace != 0) throw UnsupportedPng("interlaced PNG is not supported");
        } else if (tag == "PLTE") {
            if (len % 3 != 0 || len / 3 > 256) throw MalformedPng("bad PLTE");
            palette.resize(len / 3);
            for (std::size_t i = 0; i < palette.size(); ++i)
                palette[i] = {body[i * 3], body[i * 3 + 1], body[i * 3 + 2], 255};
        } else if (tag == "tRNS") {
            trns.assign(body, body + len);
        } else if (tag == "IDAT") {
            idat.append(reinterpret_cast<const char*>(body), len);
        } else if (tag == "IEND") {
            have_end = true;
            break;
        } else if (!(type[0] & 0x20)) {
            throw UnsupportedPng("unknown critical chunk " + std::string(tag));
        }
        pos += 12 + len;
    }
    if (!have_header) throw MalformedPng("missing IHDR");
    if (!have_end) throw MalformedPng("missing IEND");
    if (idat.empty()) throw MalformedPng("missing IDAT");
    if (color_type == 3) {
        if (palette.empty()) throw MalformedPng("palette image without PLTE");
        for (std::size_t i = 0; i < trns.size() && i < palette.size(); ++i) palette[i][3] = trns[i];
    }

    const int channels = color_type == 0 ? 1 : color_type == 2 ? 3 : color_type == 3 ? 1 : color_type == 4 ? 2 : 4;
    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    std::string raw = inflate_all(idat, (stride + 1) * height);

    std::vector<std::uint8_t> cur(stride), prev(stride, 0);
    RasterImage img(static_cast<int>(width), static_cast<int>(height));
    const int bpp = channels;
    for (std::uint32_t y = 0; y < height; ++y) {
        const auto* line = reinterpret_cast<const std::uint8_t*>(raw.data()) + y * (stride + 1);
        const int filter = line[0];
        for (std::size_t i = 0; i < stride; ++i) {
            const int x = line[1 + i];
            const int a = i >= static_cast<std::size_t>(bpp) ? cur[i - bpp] : 0;
            const int b = prev[i];
            const int c = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
            int v;
            switch (filter) {
                case 0: v = x; break;
                case 1: v = x + a; break;
                case 2: v = x + b; break;
                case 3: v = x + (a + b) / 2; break;
                case 4: v = x + paeth(a, b, c); break;
                default: throw MalformedPng("bad filter type " + std::to_string(filter));
            }
            cur[i] = static_cast<std::uint8_t>(v & 0xff);
        }
        for (std::uint32_t x = 0; x < width; ++x) {
            const std::uint8_t* px = &cur[static_cast<std::size_t>(x) * channels];
            int r, g, bl, alpha = 255;
            switch (color_type) {
                case 0:
                    r = g = bl = px[0];
                    if (trns.size() >= 2 && trns[0] == 0 && trns[1] == px[0])
                        alpha = 0;
                    break;
                case 2:
                    r = px[0], g = px[1], bl = px[2];
                    if (trns.size() >= 6 && trns[1] == r && trns[3] == g && trns[5] == bl && trns[0] == 0 &&
                        trns[2] == 0 && trns[4] == 0)
                        alpha = 0;
                    break;
                case 3: {
                    if (px[0] >= palette.size()) throw MalformedPng("palette index out of range");
                    const auto& e = palette[px[0]];
                    r = e[0], g = e[1], bl = e[2], alpha = e[3];
                    break;
                }
                case 4: r = g = bl = px[0], alpha = px[1]; break;
                default: r = px[0], g = px[1], bl = px[2], alpha = px[3]; break;
            }
            const float af = alpha / 255.0f;
            img.set_rgb(static_cast<int>(x), static_cast<int>(y), af * (r / 255.0f) + 1.0f - af,
                        af * (g / 255.0f) + 1.0f - af, af * (bl / 255.0f) + 1.0f - af);
        }
        std::swap(cur, prev);
    }
    return img;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("cannot read " + path.string());
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

namespace {

std::string lower_ext(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

}  // namespace

RasterImage load_image(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    const std::string ext = lower_ext(path);
    if (ext == ".png") return read_png(bytes);
    if (ext == ".ppm") return read_ppm(bytes);
    throw std::runtime_error("unknown image extension: " + path.string());
}

void save_image(const std::filesystem::path& path, const RasterImage& img) {
    const std::string ext = lower_ext(path);
    if (ext != ".ppm") throw std::runtime_error("only .ppm output is supported: " + path.string());
    write_file(path, write_ppm(img));
}

}  // namespace svgbench::raster
