#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "entire_dynamics/raster.hpp"

// Discrete topology on pixel sets. Set pixels are 8-connected and complement pixels
// 4-connected throughout, so a closed digital curve separates the plane the way a Jordan
// curve does. Infinity is modelled by a virtual node adjacent to every pixel on the frame.
// All verdicts hold at raster scale only.

namespace ed {

struct PixelSet {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> mask;  // row-major, 1 = in the set
  std::optional<GridSpec> grid;

  PixelSet() = default;
  PixelSet(int w, int h) : width(w), height(h), mask(static_cast<std::size_t>(w) * h, 0) {}

  bool contains(Pixel p) const { return mask[index(p)] != 0; }
  void set(Pixel p, bool value = true) { mask[index(p)] = value ? 1 : 0; }
  bool inside(Pixel p) const { return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height; }
  bool on_frame(Pixel p) const { return p.x == 0 || p.y == 0 || p.x == width - 1 || p.y == height - 1; }
  std::size_t index(Pixel p) const { return static_cast<std::size_t>(p.y) * width + p.x; }
  std::size_t count() const;
};

/// Pixels whose class is one of `tags`.
PixelSet class_mask(const ClassificationRaster& raster, std::initializer_list<OrbitTag> tags);
PixelSet escaping_mask(const ClassificationRaster& raster);  // Escaping and FastEscaping
PixelSet bounded_mask(const ClassificationRaster& raster);
PixelSet bungee_mask(const ClassificationRaster& raster);
PixelSet julia_proxy_mask(const ClassificationRaster& raster);
PixelSet complement(const PixelSet& set);

/// Any nonzero pixel of a PPM/PGM file is in the set.
PixelSet load_pixel_set(const std::filesystem::path& path);

/// Component labels (-1 outside the selection) and the component count.
struct Labeling {
  std::vector<int> labels;
  int count = 0;
};

/// Labels pixels whose mask value equals `value`, with 8-connectivity if `eight` else 4.
Labeling label_components(const PixelSet& set, std::uint8_t value, bool eight);

/// True iff the 4-connected complement component of p never reaches the frame.
/// Throws Error(PointInSet) if p belongs to the set.
bool separates_from_infinity(const PixelSet& set, Pixel p);

struct SpiderwebResult {
  bool candidate = false;
  int nested_domain_count = 0;        // longest chain G1 ⊊ G2 ⊊ ... of enclosed domains
  int set_components = 0;             // 8-connected, ignoring infinity
  int bounded_complementary_components = 0;
};

/// Finite-window spider's-web surrogate. Every bounded complementary component H yields a
/// domain G(H): H together with everything its outer boundary in the set encloses. The set
/// is a candidate iff it is 8-connected and at least two such domains nest strictly.
SpiderwebResult spiderweb_detect(const PixelSet& set);

/// Number of components of the set plus a virtual infinity node joined to every set pixel
/// on the frame (8-connectivity). The infinity node counts even when nothing touches it, so
/// a single interior blob gives 2. Throws Error(EmptySet) for an empty set.
int connected_with_infinity(const PixelSet& set);

struct SeparationSample {
  Pixel pixel;
  bool separated = false;
};

struct TopologyReport {
  std::vector<SeparationSample> separated_points;
  SpiderwebResult spiderweb;
  int components_with_infinity = 0;  // 0 when the set is empty
};

/// Separation is evaluated for each probe that lies outside the set; probes in the set or
/// off the raster are skipped.
TopologyReport analyze_set(const PixelSet& set, std::span<const Pixel> probes = {});

struct CorollaryVerdict {
  SpiderwebResult escaping_spiderweb;       // side 1: is the escaping set a spider's web?
  int bounded_or_bungee_components = 0;     // side 2: components of (BO ∪ BU) ∪ {∞}
  bool bounded_or_bungee_disconnected = false;
  bool consistent = false;                  // both sides agree
};

/// Evaluates both sides of "the escaping set is a spider's web iff BO ∪ BU ∪ {∞} is
/// disconnected" on the raster's masks. Disagreement points at resolution artifacts.
CorollaryVerdict corollary_check(const ClassificationRaster& raster);

}  // namespace ed
