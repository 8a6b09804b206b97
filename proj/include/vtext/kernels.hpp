#pragma once

// Per-pixel kernels behind change detection and edge mapping.
//
// Two implementations are kept side by side: kernels::serial is the plain
// single-threaded reference used by the tests as ground truth, and the
// functions directly in kernels:: are the OpenMP versions the pipeline runs.
// Both must produce bit-identical output for every input.

#include <array>
#include <cstdint>
#include <span>

namespace vtext::kernels {

using HistogramBins = std::array<std::uint64_t, 256>;

namespace serial {

HistogramBins histogram(std::span<const std::uint8_t> pixels);

// 3x3 Sobel magnitude with replicate padding. `out` has width*height entries.
void sobel_magnitude(std::span<const std::uint8_t> pixels, int width, int height,
                     std::span<float> out);

float max_value(std::span<const float> values);

// Linear rescale of [0, max] onto 0..255 with rounding; max <= 0 maps to 0.
void quantize(std::span<const float> values, float max, std::span<std::uint8_t> out);

// out[i] = levels[i] > t
void threshold(std::span<const std::uint8_t> levels, int t, std::span<std::uint8_t> out);

// out[i] = next[i] && !prev[i]
void and_not(std::span<const std::uint8_t> prev, std::span<const std::uint8_t> next,
             std::span<std::uint8_t> out);

}  // namespace serial

HistogramBins histogram(std::span<const std::uint8_t> pixels);
void sobel_magnitude(std::span<const std::uint8_t> pixels, int width, int height,
                     std::span<float> out);
float max_value(std::span<const float> values);
void quantize(std::span<const float> values, float max, std::span<std::uint8_t> out);
void threshold(std::span<const std::uint8_t> levels, int t, std::span<std::uint8_t> out);
void and_not(std::span<const std::uint8_t> prev, std::span<const std::uint8_t> next,
             std::span<std::uint8_t> out);

// Worker count used by the parallel kernels and the pipeline (omp_set_num_threads).
void set_worker_count(int workers);
int worker_count();

}  // namespace vtext::kernels
