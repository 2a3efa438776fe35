#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parabolica/locus.hpp"

namespace parabolica {

struct Window {
  double center_re = 0.0;
  double center_im = 0.0;
  double width = 5.0;
};

struct LocusImage {
  Window window;
  int resolution = 0;
  std::vector<uint8_t> codes;      // packed class codes, row-major, top row first
  std::vector<int> aux;            // per-pixel auxiliary (escape iters / m / depth)

  uint8_t code(int x, int y) const { return codes[size_t(y) * resolution + x]; }
};

/// Deterministic row-striped multithreaded classification of a parameter
/// window. Worker count from PARABOLICA_THREADS or hardware concurrency.
LocusImage render_locus(const Slice& s, const Window& win, int resolution,
                        const ClassifyBudget& budget = {}, int threads = 0);

/// P6 PPM with the fixed class palette; byte-exact across runs.
std::string encode_ppm(const LocusImage& img);
void write_ppm(const LocusImage& img, const std::string& path);
void write_class_csv(const LocusImage& img, const std::string& path);

int worker_count(int requested = 0);

}  // namespace parabolica
