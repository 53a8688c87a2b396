#pragma once

#include <string>

#include "sarnav/backprojection.hpp"
#include "sarnav/waveform.hpp"

namespace sarnav {

// Binary container, shared by .sarc (data matrices) and .sari (images):
//   magic "SARNAV1\0" (8 bytes)
//   u32 little-endian header length
//   header text, "key=value\n" lines
//   payload: row-major little-endian IEEE-754 float64, complex interleaved
//   (re, im); images append one float64 skipped-fraction per pixel.
// All writes go through a temp file + rename.

void save_data_matrix(const DataMatrix& dm, const std::string& path);
DataMatrix load_data_matrix(const std::string& path);

void save_image(const ComplexImage& img, const std::string& path);
ComplexImage load_image(const std::string& path);

// 8-bit PGM of 20 log10 |value| relative to the image peak, clipped to
// [db_floor, 0]. db_floor is negative (e.g. -40).
void render_image_pgm(const ComplexImage& img, const std::string& path, double db_floor);

// Atomic small-text-file write used for reports.
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace sarnav
