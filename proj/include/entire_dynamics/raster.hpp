#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entire_dynamics/classifier.hpp"

namespace ed {

struct Pixel {
  int x = 0;  // column, left to right
  int y = 0;  // row, top to bottom

  bool operator==(const Pixel&) const = default;
};

/// Viewport: `width` plane units across px_w columns; the plane height follows from the
/// aspect ratio. Row 0 is the top of the image.
struct GridSpec {
  Complex center{0.0, 0.0};
  double width = 4.0;
  int px_w = 400;
  int px_h = 400;

  void validate() const;  // Throws Error(Config)
  double height() const { return width * px_h / px_w; }
  std::size_t size() const { return static_cast<std::size_t>(px_w) * px_h; }
  /// Plane point at the center of pixel p.
  Complex pixel_center(Pixel p) const;
  /// Pixel whose cell contains z, if z lies inside the viewport.
  std::optional<Pixel> pixel_of(Complex z) const;
  /// Plane size of one pixel.
  double pixel_width() const { return width / px_w; }
  double pixel_height() const { return height() / px_h; }
};

/// Default viewport for the erf family: centered on the parabolic fixed point, 8 units wide.
GridSpec reference_viewport(int px);

struct ClassificationRaster {
  GridSpec grid;
  std::vector<OrbitTag> cells;           // row-major, px_w * px_h
  std::vector<std::uint8_t> julia_mask;  // 1 on the class-boundary proxy for J(f)

  OrbitTag at(Pixel p) const { return cells[index(p)]; }
  bool julia(Pixel p) const { return julia_mask[index(p)] != 0; }
  std::size_t index(Pixel p) const { return static_cast<std::size_t>(p.y) * grid.px_w + p.x; }
  std::array<std::size_t, kOrbitTagCount> counts() const;
};

/// A pixel lies on the mask iff its 3x3 neighbourhood (clipped at the frame) holds at least
/// two distinct classes among Escaping (FastEscaping counted as Escaping), Bounded and Bungee.
std::vector<std::uint8_t> class_boundary_mask(const GridSpec& grid, std::span<const OrbitTag> cells);

/// Worker count: `requested` if positive, else ED_THREADS if set, else the hardware count.
int resolve_thread_count(int requested = 0);

/// Classifies every pixel center. The result does not depend on the worker count.
ClassificationRaster rasterize(const DynamicalMap& map, const GridSpec& grid, const ClassifierConfig& cfg,
                               int threads = 0);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

using Palette = std::array<Rgb, kOrbitTagCount>;  // indexed by OrbitTag

Palette default_palette();

struct Marker {
  Complex position;
  int radius_px = 4;
  Rgb color{0, 0, 0};
};

struct RenderOptions {
  Palette palette = default_palette();
  bool draw_julia = true;
  Rgb julia_color{0, 0, 0};
  std::vector<Marker> markers;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB triples, top row first

  Rgb at(Pixel p) const;
};

RgbImage render_image(const ClassificationRaster& raster, const RenderOptions& options = {});

/// Writes the raster as a binary PPM. Throws Error(Io) naming the path on failure.
void render(const ClassificationRaster& raster, const RenderOptions& options, const std::filesystem::path& out);

struct RefineResult {
  OrbitTag tag = OrbitTag::Undetermined;
  std::array<int, kOrbitTagCount> votes{};

  int distinct_classes() const;
};

/// Reclassifies a cell by majority vote over k x k evenly spaced sub-pixel samples. Ties go
/// to the tag listed first in OrbitTag. Requires k >= 2.
RefineResult subsample_refine(const ClassificationRaster& raster, const DynamicalMap& map,
                              const ClassifierConfig& cfg, Pixel cell, int k);

}  // namespace ed
