#include "entire_dynamics/topology.hpp"

#include <algorithm>
#include <numeric>

#include "entire_dynamics/error.hpp"
#include "entire_dynamics/pnm.hpp"

namespace ed {

namespace {

constexpr int kDx4[] = {1, -1, 0, 0};
constexpr int kDy4[] = {0, 0, 1, -1};
constexpr int kDx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy8[] = {0, 0, 1, -1, 1, -1, 1, -1};

// Domain enclosed by the outer boundary of one bounded complementary component, stored as a
// bitmap over its bounding box.
struct Domain {
  int hole = -1;
  int x0 = 0, y0 = 0, w = 0, h = 0;
  std::vector<std::uint8_t> bits;
  std::size_t area = 0;
  std::vector<int> enclosed_holes;

  bool contains(int x, int y) const {
    return x >= x0 && y >= y0 && x < x0 + w && y < y0 + h && bits[static_cast<std::size_t>(y - y0) * w + (x - x0)];
  }
};

bool is_subset(const Domain& inner, const Domain& outer) {
  for (int y = 0; y < inner.h; ++y) {
    for (int x = 0; x < inner.w; ++x) {
      if (inner.bits[static_cast<std::size_t>(y) * inner.w + x] && !outer.contains(inner.x0 + x, inner.y0 + y)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::size_t PixelSet::count() const {
  return static_cast<std::size_t>(std::count_if(mask.begin(), mask.end(), [](std::uint8_t v) { return v != 0; }));
}

PixelSet class_mask(const ClassificationRaster& raster, std::initializer_list<OrbitTag> tags) {
  PixelSet out(raster.grid.px_w, raster.grid.px_h);
  out.grid = raster.grid;
  for (std::size_t i = 0; i < raster.cells.size(); ++i) {
    out.mask[i] = std::find(tags.begin(), tags.end(), raster.cells[i]) != tags.end() ? 1 : 0;
  }
  return out;
}

PixelSet escaping_mask(const ClassificationRaster& raster) {
  return class_mask(raster, {OrbitTag::Escaping, OrbitTag::FastEscaping});
}
PixelSet bounded_mask(const ClassificationRaster& raster) { return class_mask(raster, {OrbitTag::Bounded}); }
PixelSet bungee_mask(const ClassificationRaster& raster) { return class_mask(raster, {OrbitTag::Bungee}); }

PixelSet julia_proxy_mask(const ClassificationRaster& raster) {
  PixelSet out(raster.grid.px_w, raster.grid.px_h);
  out.grid = raster.grid;
  out.mask = raster.julia_mask;
  return out;
}

PixelSet complement(const PixelSet& set) {
  PixelSet out = set;
  for (auto& v : out.mask) v = v ? 0 : 1;
  return out;
}

PixelSet load_pixel_set(const std::filesystem::path& path) {
  pnm::GrayImage image = pnm::read_nonzero(path);
  PixelSet out(image.width, image.height);
  out.mask = std::move(image.nonzero);
  return out;
}

Labeling label_components(const PixelSet& set, std::uint8_t value, bool eight) {
  Labeling out;
  out.labels.assign(set.mask.size(), -1);
  const int neighbours = eight ? 8 : 4;
  const int* dx = eight ? kDx8 : kDx4;
  const int* dy = eight ? kDy8 : kDy4;
  std::vector<Pixel> stack;
  for (int y = 0; y < set.height; ++y) {
    for (int x = 0; x < set.width; ++x) {
      const Pixel start{x, y};
      const std::size_t si = set.index(start);
      if ((set.mask[si] != 0) != (value != 0) || out.labels[si] >= 0) continue;
      const int label = out.count++;
      out.labels[si] = label;
      stack.push_back(start);
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        for (int k = 0; k < neighbours; ++k) {
          const Pixel q{p.x + dx[k], p.y + dy[k]};
          if (!set.inside(q)) continue;
          const std::size_t qi = set.index(q);
          if ((set.mask[qi] != 0) != (value != 0) || out.labels[qi] >= 0) continue;
          out.labels[qi] = label;
          stack.push_back(q);
        }
      }
    }
  }
  return out;
}

bool separates_from_infinity(const PixelSet& set, Pixel p) {
  if (!set.inside(p)) throw Error(ErrorCode::InvalidArgument, "separates_from_infinity: pixel outside the raster");
  if (set.contains(p)) throw Error(ErrorCode::PointInSet, "separates_from_infinity: pixel lies in the set");
  std::vector<std::uint8_t> seen(set.mask.size(), 0);
  std::vector<Pixel> stack{p};
  seen[set.index(p)] = 1;
  while (!stack.empty()) {
    const Pixel q = stack.back();
    stack.pop_back();
    if (set.on_frame(q)) return false;
    for (int k = 0; k < 4; ++k) {
      const Pixel r{q.x + kDx4[k], q.y + kDy4[k]};
      if (!set.inside(r)) continue;
      const std::size_t ri = set.index(r);
      if (set.mask[ri] || seen[ri]) continue;
      seen[ri] = 1;
      stack.push_back(r);
    }
  }
  return true;
}

SpiderwebResult spiderweb_detect(const PixelSet& set) {
  SpiderwebResult result;
  result.set_components = label_components(set, 1, true).count;

  const Labeling holes = label_components(set, 0, false);
  std::vector<std::vector<Pixel>> members(holes.count);
  std::vector<std::uint8_t> bounded(holes.count, 1);
  for (int y = 0; y < set.height; ++y) {
    for (int x = 0; x < set.width; ++x) {
      const int label = holes.labels[set.index({x, y})];
      if (label < 0) continue;
      members[label].push_back({x, y});
      if (set.on_frame({x, y})) bounded[label] = 0;
    }
  }

  std::vector<Domain> domains;
  std::vector<std::uint32_t> stamp(set.mask.size(), 0);
  std::uint32_t current = 0;
  for (int h = 0; h < holes.count; ++h) {
    if (!bounded[h]) continue;
    ++result.bounded_complementary_components;
    ++current;

    // Outer boundary candidates: set pixels 4-adjacent to the hole.
    std::vector<Pixel> barrier;
    int x0 = set.width, y0 = set.height, x1 = -1, y1 = -1;
    for (const Pixel& p : members[h]) {
      for (int k = 0; k < 4; ++k) {
        const Pixel q{p.x + kDx4[k], p.y + kDy4[k]};
        if (!set.inside(q) || !set.contains(q) || stamp[set.index(q)] == current) continue;
        stamp[set.index(q)] = current;
        barrier.push_back(q);
        x0 = std::min(x0, q.x);
        y0 = std::min(y0, q.y);
        x1 = std::max(x1, q.x);
        y1 = std::max(y1, q.y);
      }
    }

    // Flood the padded bounding box from its border, blocked only by the barrier; whatever
    // stays unreached is enclosed.
    const int lw = x1 - x0 + 3;
    const int lh = y1 - y0 + 3;
    std::vector<std::uint8_t> local(static_cast<std::size_t>(lw) * lh, 0);  // 1 barrier, 2 reached
    for (const Pixel& b : barrier) local[static_cast<std::size_t>(b.y - y0 + 1) * lw + (b.x - x0 + 1)] = 1;
    std::vector<Pixel> stack;
    for (int x = 0; x < lw; ++x) {
      stack.push_back({x, 0});
      stack.push_back({x, lh - 1});
    }
    for (int y = 0; y < lh; ++y) {
      stack.push_back({0, y});
      stack.push_back({lw - 1, y});
    }
    for (const Pixel& s : stack) local[static_cast<std::size_t>(s.y) * lw + s.x] = 2;
    while (!stack.empty()) {
      const Pixel q = stack.back();
      stack.pop_back();
      for (int k = 0; k < 4; ++k) {
        const int nx = q.x + kDx4[k];
        const int ny = q.y + kDy4[k];
        if (nx < 0 || ny < 0 || nx >= lw || ny >= lh) continue;
        auto& cell = local[static_cast<std::size_t>(ny) * lw + nx];
        if (cell != 0) continue;
        cell = 2;
        stack.push_back({nx, ny});
      }
    }

    Domain d;
    d.hole = h;
    d.x0 = x0;
    d.y0 = y0;
    d.w = lw - 2;
    d.h = lh - 2;
    d.bits.assign(static_cast<std::size_t>(d.w) * d.h, 0);
    ++current;
    for (int y = 0; y < d.h; ++y) {
      for (int x = 0; x < d.w; ++x) {
        if (local[static_cast<std::size_t>(y + 1) * lw + (x + 1)] == 2) continue;
        d.bits[static_cast<std::size_t>(y) * d.w + x] = 1;
        ++d.area;
        const std::size_t gi = set.index({x0 + x, y0 + y});
        const int other = holes.labels[gi];
        if (other >= 0 && other != h && stamp[gi] != current) {
          // mark every pixel of that hole so it is recorded once
          for (const Pixel& m : members[other]) stamp[set.index(m)] = current;
          d.enclosed_holes.push_back(other);
        }
      }
    }
    domains.push_back(std::move(d));
  }

  // Longest strictly nested chain, building up from the smallest domains.
  std::vector<int> order(domains.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return domains[a].area < domains[b].area; });
  std::vector<int> domain_of_hole(holes.count, -1);
  for (std::size_t i = 0; i < domains.size(); ++i) domain_of_hole[domains[i].hole] = static_cast<int>(i);
  std::vector<int> chain(domains.size(), 1);
  for (int i : order) {
    const Domain& outer = domains[i];
    for (int hole : outer.enclosed_holes) {
      const int j = domain_of_hole[hole];
      if (j < 0) continue;
      const Domain& inner = domains[j];
      if (inner.area >= outer.area || !is_subset(inner, outer)) continue;
      chain[i] = std::max(chain[i], chain[j] + 1);
    }
    result.nested_domain_count = std::max(result.nested_domain_count, chain[i]);
  }

  result.candidate = result.set_components == 1 && result.nested_domain_count >= 2;
  return result;
}

int connected_with_infinity(const PixelSet& set) {
  const Labeling comps = label_components(set, 1, true);
  if (comps.count == 0) throw Error(ErrorCode::EmptySet, "connected_with_infinity: the set is empty");
  std::vector<std::uint8_t> touches_frame(comps.count, 0);
  for (int x = 0; x < set.width; ++x) {
    for (int y : {0, set.height - 1}) {
      const int l = comps.labels[set.index({x, y})];
      if (l >= 0) touches_frame[l] = 1;
    }
  }
  for (int y = 0; y < set.height; ++y) {
    for (int x : {0, set.width - 1}) {
      const int l = comps.labels[set.index({x, y})];
      if (l >= 0) touches_frame[l] = 1;
    }
  }
  const int interior = static_cast<int>(std::count(touches_frame.begin(), touches_frame.end(), 0));
  return interior + 1;  // every frame-touching component merges into the infinity node
}

TopologyReport analyze_set(const PixelSet& set, std::span<const Pixel> probes) {
  TopologyReport report;
  for (const Pixel& p : probes) {
    if (!set.inside(p) || set.contains(p)) continue;
    report.separated_points.push_back({p, separates_from_infinity(set, p)});
  }
  report.spiderweb = spiderweb_detect(set);
  report.components_with_infinity = set.count() == 0 ? 0 : connected_with_infinity(set);
  return report;
}

CorollaryVerdict corollary_check(const ClassificationRaster& raster) {
  CorollaryVerdict v;
  v.escaping_spiderweb = spiderweb_detect(escaping_mask(raster));
  const PixelSet rest = class_mask(raster, {OrbitTag::Bounded, OrbitTag::Bungee});
  v.bounded_or_bungee_components = rest.count() == 0 ? 1 : connected_with_infinity(rest);
  v.bounded_or_bungee_disconnected = v.bounded_or_bungee_components > 1;
  v.consistent = v.escaping_spiderweb.candidate == v.bounded_or_bungee_disconnected;
  return v;
}

}  // namespace ed
