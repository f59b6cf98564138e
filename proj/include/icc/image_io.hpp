#pragma once

#include "icc/imaging.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace icc {

/// PNG or JPEG, converted to 8-bit RGB. Throws IOError.
RasterImage read_image(const std::filesystem::path& path);
RasterImage decode_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_png(const RasterImage& img);
/// Masks are stored as single-channel PNG with values {0, 255}.
std::vector<std::uint8_t> encode_mask_png(const BinaryMask& mask);
BinaryMask read_mask(const std::filesystem::path& path);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace icc
