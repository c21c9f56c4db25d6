#include "entire_dynamics/raster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "entire_dynamics/error.hpp"
#include "entire_dynamics/pnm.hpp"

namespace ed {

void GridSpec::validate() const {
  std::ostringstream problem;
  if (!(width > 0.0) || !std::isfinite(width)) problem << "width must be positive; ";
  if (px_w < 1 || px_h < 1) problem << "pixel dimensions must be positive; ";
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) problem << "center must be finite; ";
  const std::string text = problem.str();
  if (!text.empty()) throw Error(ErrorCode::Config, "invalid grid: " + text.substr(0, text.size() - 2));
}

Complex GridSpec::pixel_center(Pixel p) const {
  // Offsets are formed as exact integer ratios so that refined grids sharing a pixel center
  // (e.g. tripled resolution) produce bit-identical plane points.
  const double tx = static_cast<double>(2 * p.x + 1 - px_w) / (2.0 * px_w);
  const double ty = static_cast<double>(px_h - 2 * p.y - 1) / (2.0 * px_w);
  return {center.real() + width * tx, center.imag() + width * ty};
}

std::optional<Pixel> GridSpec::pixel_of(Complex z) const {
  const double fx = (z.real() - (center.real() - 0.5 * width)) / pixel_width();
  const double fy = ((center.imag() + 0.5 * height()) - z.imag()) / pixel_height();
  if (!(fx >= 0.0 && fx < px_w && fy >= 0.0 && fy < px_h)) return std::nullopt;
  return Pixel{static_cast<int>(fx), static_cast<int>(fy)};
}

GridSpec reference_viewport(int px) { return {reference_params().fixed_point(), 8.0, px, px}; }

std::array<std::size_t, kOrbitTagCount> ClassificationRaster::counts() const {
  std::array<std::size_t, kOrbitTagCount> out{};
  for (OrbitTag t : cells) ++out[static_cast<int>(t)];
  return out;
}

std::vector<std::uint8_t> class_boundary_mask(const GridSpec& grid, std::span<const OrbitTag> cells) {
  const int w = grid.px_w;
  const int h = grid.px_h;
  std::vector<std::uint8_t> mask(cells.size(), 0);
  const auto bit = [](OrbitTag t) -> unsigned {
    switch (t) {
      case OrbitTag::Escaping:
      case OrbitTag::FastEscaping: return 1u;
      case OrbitTag::Bounded: return 2u;
      case OrbitTag::Bungee: return 4u;
      case OrbitTag::Undetermined: return 0u;
    }
    return 0u;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      unsigned seen = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          seen |= bit(cells[static_cast<std::size_t>(ny) * w + nx]);
        }
      }
      mask[static_cast<std::size_t>(y) * w + x] = (seen & (seen - 1)) != 0 ? 1 : 0;
    }
  }
  return mask;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ED_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min<long>(n, 1024));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ClassificationRaster rasterize(const DynamicalMap& map, const GridSpec& grid, const ClassifierConfig& cfg,
                               int threads) {
  grid.validate();
  cfg.validate();

  ClassificationRaster raster;
  raster.grid = grid;
  raster.cells.assign(grid.size(), OrbitTag::Undetermined);

  std::atomic<int> next_row{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    try {
      for (int y = next_row++; y < grid.px_h; y = next_row++) {
        for (int x = 0; x < grid.px_w; ++x) {
          const Pixel p{x, y};
          raster.cells[raster.index(p)] = classify(map, grid.pixel_center(p), cfg).tag;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_row = grid.px_h;
    }
  };

  const int workers = std::min(resolve_thread_count(threads), grid.px_h);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  raster.julia_mask = class_boundary_mask(grid, raster.cells);
  return raster;
}

Palette default_palette() {
  Palette p;
  p[static_cast<int>(OrbitTag::Escaping)] = {246, 232, 196};
  p[static_cast<int>(OrbitTag::Bounded)] = {94, 145, 214};
  p[static_cast<int>(OrbitTag::Bungee)] = {214, 69, 65};
  p[static_cast<int>(OrbitTag::FastEscaping)] = {255, 255, 255};
  p[static_cast<int>(OrbitTag::Undetermined)] = {150, 150, 150};
  return p;
}

Rgb RgbImage::at(Pixel p) const {
  const std::size_t i = 3 * (static_cast<std::size_t>(p.y) * width + p.x);
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

RgbImage render_image(const ClassificationRaster& raster, const RenderOptions& options) {
  const GridSpec& g = raster.grid;
  RgbImage image{g.px_w, g.px_h, std::vector<std::uint8_t>(3 * g.size())};
  const auto put = [&](std::size_t i, Rgb c) {
    image.pixels[3 * i] = c.r;
    image.pixels[3 * i + 1] = c.g;
    image.pixels[3 * i + 2] = c.b;
  };
  for (std::size_t i = 0; i < raster.cells.size(); ++i) {
    const bool on_julia = options.draw_julia && !raster.julia_mask.empty() && raster.julia_mask[i] != 0;
    put(i, on_julia ? options.julia_color : options.palette[static_cast<int>(raster.cells[i])]);
  }
  for (const Marker& m : options.markers) {
    const auto c = g.pixel_of(m.position);
    if (!c) continue;
    const int r = std::max(0, m.radius_px);
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const int x = c->x + dx;
        const int y = c->y + dy;
        if (dx * dx + dy * dy > r * r || x < 0 || y < 0 || x >= g.px_w || y >= g.px_h) continue;
        put(static_cast<std::size_t>(y) * g.px_w + x, m.color);
      }
    }
  }
  return image;
}

void render(const ClassificationRaster& raster, const RenderOptions& options, const std::filesystem::path& out) {
  const RgbImage image = render_image(raster, options);
  pnm::write_file(out, pnm::encode_ppm(image.width, image.height, image.pixels));
}

int RefineResult::distinct_classes() const {
  return static_cast<int>(std::count_if(votes.begin(), votes.end(), [](int v) { return v > 0; }));
}

RefineResult subsample_refine(const ClassificationRaster& raster, const DynamicalMap& map,
                              const ClassifierConfig& cfg, Pixel cell, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "subsample_refine: k must be at least 2");
  const GridSpec& g = raster.grid;
  if (cell.x < 0 || cell.y < 0 || cell.x >= g.px_w || cell.y >= g.px_h) {
    throw Error(ErrorCode::InvalidArgument, "subsample_refine: cell outside the raster");
  }
  const Complex center = g.pixel_center(cell);
  RefineResult out;
  for (int b = 0; b < k; ++b) {
    for (int a = 0; a < k; ++a) {
      const double ox = ((a + 0.5) / k - 0.5) * g.pixel_width();
      const double oy = ((b + 0.5) / k - 0.5) * g.pixel_height();
      ++out.votes[static_cast<int>(classify(map, center + Complex(ox, -oy), cfg).tag)];
    }
  }
  const auto best = std::max_element(out.votes.begin(), out.votes.end());
  out.tag = static_cast<OrbitTag>(best - out.votes.begin());
  return out;
}

}  // namespace ed
