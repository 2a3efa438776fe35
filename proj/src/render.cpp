#include "parabolica/render.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace parabolica {

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PARABOLICA_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 4 : static_cast<int>(hc);
}

LocusImage render_locus(const Slice& s, const Window& win, int resolution,
                        const ClassifyBudget& budget, int threads) {
  if (resolution < 16) throw std::invalid_argument("render_locus: resolution must be >= 16");
  LocusImage img;
  img.window = win;
  img.resolution = resolution;
  img.codes.assign(size_t(resolution) * resolution, 0);
  img.aux.assign(size_t(resolution) * resolution, 0);

  ClassifyContext ctx = ClassifyContext::make(s);
  const double step = win.width / resolution;
  const double x0 = win.center_re - 0.5 * win.width + 0.5 * step;
  const double y0 = win.center_im + 0.5 * win.width - 0.5 * step;

  const int nthreads = worker_count(threads);
  auto work = [&](int tid) {
    for (int y = tid; y < resolution; y += nthreads) {
      for (int x = 0; x < resolution; ++x) {
        cplx a(x0 + x * step, y0 - y * step);
        ParamClass pc = classify_param(ctx, a, budget);
        size_t idx = size_t(y) * resolution + x;
        img.codes[idx] = static_cast<uint8_t>(pc.tag);
        switch (pc.tag) {
          case ParamTag::Exterior: img.aux[idx] = pc.escape_iterations; break;
          case ParamTag::Bitransitive: img.aux[idx] = pc.bitransitive_m; break;
          case ParamTag::Capture: img.aux[idx] = pc.capture_depth; break;
          default: img.aux[idx] = 0; break;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int tIdx = 1; tIdx < nthreads; ++tIdx) pool.emplace_back(work, tIdx);
  work(0);
  for (auto& th : pool) th.join();
  return img;
}

namespace {

struct Rgb {
  uint8_t r, g, b;
};

// class code -> fixed palette; Exterior shaded by iteration count.
Rgb pixel_color(uint8_t code, int aux) {
  switch (static_cast<ParamTag>(code)) {
    case ParamTag::Exterior: {
      int band = aux % 24;
      uint8_t v = static_cast<uint8_t>(40 + band * 9);
      return {v, v, static_cast<uint8_t>(90 + band * 6)};
    }
    case ParamTag::Adjacent:
      return {30, 150, 60};
    case ParamTag::Bitransitive: {
      uint8_t g = static_cast<uint8_t>(110 + 30 * (aux % 5));
      return {20, g, 90};
    }
    case ParamTag::Capture: {
      uint8_t t = static_cast<uint8_t>(70 + 40 * (aux % 4));
      return {t, 200, 180};
    }
    case ParamTag::DoubleParabolicNear:
      return {220, 40, 40};
    case ParamTag::MisiurewiczParabolicNear:
      return {230, 140, 30};
    case ParamTag::Undecided:
    default:
      return {0, 0, 0};
  }
}

}  // namespace

std::string encode_ppm(const LocusImage& img) {
  std::string out;
  char header[64];
  int n = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", img.resolution, img.resolution);
  out.append(header, n);
  out.reserve(out.size() + img.codes.size() * 3);
  for (size_t i = 0; i < img.codes.size(); ++i) {
    Rgb c = pixel_color(img.codes[i], img.aux[i]);
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

void write_ppm(const LocusImage& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_ppm: cannot open " + path);
  std::string data = encode_ppm(img);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void write_class_csv(const LocusImage& img, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_class_csv: cannot open " + path);
  for (int y = 0; y < img.resolution; ++y) {
    for (int x = 0; x < img.resolution; ++x) {
      if (x) f << ',';
      f << int(img.code(x, y));
    }
    f << '\n';
  }
}

}  // namespace parabolica
