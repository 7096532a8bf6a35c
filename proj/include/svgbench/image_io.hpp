#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "svgbench/raster.hpp"

namespace svgbench::raster {

// Binary P6, maxval 255, channels quantized as round(v * 255).
std::string write_ppm(const RasterImage& img);
// Throws MalformedPpm.
RasterImage read_ppm(std::string_view bytes);

// 8-bit, non-interlaced PNG of any color type; alpha is composited onto
// white. Throws MalformedPng or UnsupportedPng.
RasterImage read_png(std::string_view bytes);

// Extension selects the codec (.png, .ppm). Reading throws on I/O errors
// with std::runtime_error; only PPM can be written.
RasterImage load_image(const std::filesystem::path& path);
void save_image(const std::filesystem::path& path, const RasterImage& img);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace svgbench::raster
