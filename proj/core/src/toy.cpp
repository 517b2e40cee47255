#include "mpcaps/toy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpcaps/rng.hpp"

namespace mpcaps {

namespace {

// Canonical face layout on a 64x64 canvas, scaled linearly for other sizes.
struct Layout {
    double eye_l_x, eye_l_y, eye_r_x, eye_r_y;
    double eye_radius;        // outer radius of the eye glyph at scale 1
    double nose_x, nose_y0, nose_y1;
    double mouth_y, mouth_x0, mouth_x1;
    double stroke;
};

Layout make_layout(std::size_t size) {
    const double u = static_cast<double>(size) / 64.0;
    Layout L;
    L.eye_l_x = 20.0 * u;
    L.eye_l_y = 24.0 * u;
    L.eye_r_x = 44.0 * u;
    L.eye_r_y = 24.0 * u;
    L.eye_radius = 9.0 * u;
    L.nose_x = 32.0 * u;
    L.nose_y0 = 30.0 * u;
    L.nose_y1 = 38.0 * u;
    L.mouth_y = 46.0 * u;
    L.mouth_x0 = 22.0 * u;
    L.mouth_x1 = 42.0 * u;
    L.stroke = std::max(1.0, 1.3 * u);
    return L;
}

void put(std::vector<double>& img, std::size_t size, long x, long y, double v) {
    if (x < 0 || y < 0 || x >= static_cast<long>(size) || y >= static_cast<long>(size)) return;
    double& p = img[static_cast<std::size_t>(y) * size + static_cast<std::size_t>(x)];
    p = std::max(p, v);
}

// Paints all pixels within `thick` of the segment (x0,y0)-(x1,y1).
void draw_segment(std::vector<double>& img, std::size_t size, double x0, double y0, double x1,
                  double y1, double thick) {
    const long lo_x = static_cast<long>(std::floor(std::min(x0, x1) - thick - 1));
    const long hi_x = static_cast<long>(std::ceil(std::max(x0, x1) + thick + 1));
    const long lo_y = static_cast<long>(std::floor(std::min(y0, y1) - thick - 1));
    const long hi_y = static_cast<long>(std::ceil(std::max(y0, y1) + thick + 1));
    const double dx = x1 - x0, dy = y1 - y0;
    const double len2 = dx * dx + dy * dy;
    for (long y = lo_y; y <= hi_y; ++y)
        for (long x = lo_x; x <= hi_x; ++x) {
            const double px = x - x0, py = y - y0;
            double t = len2 > 0.0 ? std::clamp((px * dx + py * dy) / len2, 0.0, 1.0) : 0.0;
            const double ex = px - t * dx, ey = py - t * dy;
            if (ex * ex + ey * ey <= thick * thick) put(img, size, x, y, 1.0);
        }
}

// Ring of radius r and the given stroke width around (cx, cy).
void draw_ring(std::vector<double>& img, std::size_t size, double cx, double cy, double r,
               double thick) {
    const long lo = static_cast<long>(std::floor(-r - thick - 1));
    const long hi = static_cast<long>(std::ceil(r + thick + 1));
    for (long dy = lo; dy <= hi; ++dy)
        for (long dx = lo; dx <= hi; ++dx) {
            const double x = cx + dx, y = cy + dy;
            const double d = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
            if (std::fabs(d - r) <= thick)
                put(img, size, static_cast<long>(std::lround(x)),
                    static_cast<long>(std::lround(y)), 1.0);
        }
}

void draw_disc(std::vector<double>& img, std::size_t size, double cx, double cy, double r) {
    const long lo = static_cast<long>(std::floor(-r - 1));
    const long hi = static_cast<long>(std::ceil(r + 1));
    for (long dy = lo; dy <= hi; ++dy)
        for (long dx = lo; dx <= hi; ++dx) {
            if (dx * dx + dy * dy <= r * r)
                put(img, size, static_cast<long>(std::lround(cx)) + dx,
                    static_cast<long>(std::lround(cy)) + dy, 1.0);
        }
}

// Prototype 0: a filled pupil disc plus a horizontal eyelid bar, both in the
// centre of the eye area. Prototype 1: an open ring drawn as two half arcs,
// with no energy in the centre. The two glyphs occupy nearly disjoint pixel
// support (centre vs. periphery of the eye area), so they activate different
// primary capsules, not merely the same capsules at different strengths.
void draw_eye(std::vector<double>& img, std::size_t size, const Layout& L, double cx, double cy,
              double scale, std::uint8_t prototype) {
    const double r = L.eye_radius * scale;
    const double thick = std::max(0.9, L.stroke * scale);
    if (prototype == 0) {
        draw_disc(img, size, cx, cy, std::max(1.0, 0.55 * r));
        draw_segment(img, size, cx - 0.8 * r, cy, cx + 0.8 * r, cy, thick);
    } else {
        draw_ring(img, size, cx, cy, r, 1.25 * thick);
    }
}

}  // namespace

EyeRegion toy_eye_region(const ToyConfig& cfg) {
    const Layout L = make_layout(cfg.image_size);
    const double reach = L.eye_radius * cfg.scale_max + L.stroke + cfg.shift_max + 1.0;
    const long x0 = std::max(0L, static_cast<long>(std::floor(L.eye_l_x - reach)));
    const long y0 = std::max(0L, static_cast<long>(std::floor(L.eye_l_y - reach)));
    const long x1 = std::min<long>(cfg.image_size, static_cast<long>(std::ceil(L.eye_l_x + reach)) + 1);
    const long y1 = std::min<long>(cfg.image_size, static_cast<long>(std::ceil(L.eye_l_y + reach)) + 1);
    return EyeRegion{static_cast<std::size_t>(x0), static_cast<std::size_t>(y0),
                     static_cast<std::size_t>(x1 - x0), static_cast<std::size_t>(y1 - y0)};
}

Dataset generate_toy(const ToyConfig& cfg, std::vector<EyeJitter>* jitters) {
    if (cfg.patch_size > cfg.image_size)
        throw std::invalid_argument("generate_toy: patch larger than image");
    if (!(cfg.scale_min <= cfg.scale_max))
        throw std::invalid_argument("generate_toy: bad scale range");

    const std::size_t size = cfg.image_size;
    const Layout L = make_layout(size);
    Rng rng(cfg.seed);

    Dataset ds;
    ds.count = 2 * cfg.per_class;
    ds.channels = 1;
    ds.height = size;
    ds.width = size;
    ds.num_classes = 2;
    ds.pixels.assign(ds.count * size * size, 0.0);
    ds.labels.assign(ds.count, 0);
    ds.part_labels.assign(ds.count, kNoPartLabel);

    std::vector<double> img(size * size);
    for (std::size_t i = 0; i < cfg.per_class; ++i) {
        std::fill(img.begin(), img.end(), 0.0);
        const std::uint8_t proto = rng.uniform() < 0.5 ? 0 : 1;

        for (int eye = 0; eye < 2; ++eye) {
            const double cx = (eye == 0 ? L.eye_l_x : L.eye_r_x) +
                              rng.uniform(-cfg.shift_max, cfg.shift_max);
            const double cy = (eye == 0 ? L.eye_l_y : L.eye_r_y) +
                              rng.uniform(-cfg.shift_max, cfg.shift_max);
            const double scale = rng.uniform(cfg.scale_min, cfg.scale_max);
            if (jitters)
                jitters->push_back({cx - (eye == 0 ? L.eye_l_x : L.eye_r_x),
                                    cy - (eye == 0 ? L.eye_l_y : L.eye_r_y), scale});
            draw_eye(img, size, L, cx, cy, scale, proto);
        }
        // Nose and mouth stay thin so that most of a face's pixel energy, and
        // hence most of its primary-capsule activity, comes from the eyes.
        const double thin = std::max(0.8, 0.6 * L.stroke);
        draw_segment(img, size, L.nose_x, L.nose_y0, L.nose_x, L.nose_y1, thin);
        draw_segment(img, size, L.mouth_x0, L.mouth_y, L.mouth_x1, L.mouth_y, thin);

        // Dropout: patches overwrite with the background value 0.
        for (std::size_t p = 0; p < cfg.dropout_patches; ++p) {
            const std::size_t px = rng.uniform_index(size - cfg.patch_size + 1);
            const std::size_t py = rng.uniform_index(size - cfg.patch_size + 1);
            for (std::size_t y = 0; y < cfg.patch_size; ++y)
                std::fill_n(img.begin() + (py + y) * size + px, cfg.patch_size, 0.0);
        }

        std::copy(img.begin(), img.end(), ds.pixels.begin() + i * size * size);
        ds.labels[i] = kToyFaceClass;
        ds.part_labels[i] = proto;
    }
    for (std::size_t i = 0; i < cfg.per_class; ++i) {
        const std::size_t idx = cfg.per_class + i;
        double* dst = ds.pixels.data() + idx * size * size;
        for (std::size_t k = 0; k < size * size; ++k) dst[k] = rng.uniform();
        ds.labels[idx] = kToyNoiseClass;
    }
    ds.validate();
    return ds;
}

}  // namespace mpcaps
