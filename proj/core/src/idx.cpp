#include "mpcaps/idx.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mpcaps/errors.hpp"
#include "mpcaps/serialize.hpp"

namespace mpcaps {

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw FormatError("load_idx: cannot open " + images_path);
    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw FormatError("load_idx: cannot open " + labels_path);
    return load_idx(img, lab);
}

Dataset load_idx(std::istream& images, std::istream& labels) {
    const std::uint32_t img_magic = read_u32_be(images);
    if (img_magic != kIdxImageMagic) throw FormatError("load_idx: bad image-file magic");
    const std::uint32_t n_img = read_u32_be(images);
    const std::uint32_t rows = read_u32_be(images);
    const std::uint32_t cols = read_u32_be(images);

    const std::uint32_t lab_magic = read_u32_be(labels);
    if (lab_magic != kIdxLabelMagic) throw FormatError("load_idx: bad label-file magic");
    const std::uint32_t n_lab = read_u32_be(labels);
    if (n_img != n_lab) throw FormatError("load_idx: image/label count mismatch");

    Dataset ds;
    ds.count = n_img;
    ds.channels = 1;
    ds.height = rows;
    ds.width = cols;
    ds.pixels.resize(std::size_t(n_img) * rows * cols);
    std::vector<std::uint8_t> raw(std::size_t(rows) * cols);
    for (std::uint32_t i = 0; i < n_img; ++i) {
        read_bytes(images, raw.data(), raw.size());
        double* dst = ds.pixels.data() + std::size_t(i) * raw.size();
        for (std::size_t k = 0; k < raw.size(); ++k) dst[k] = raw[k] / 255.0;
    }
    ds.labels.resize(n_lab);
    read_bytes(labels, ds.labels.data(), n_lab);
    ds.num_classes = 0;
    for (std::uint8_t l : ds.labels) ds.num_classes = std::max<std::size_t>(ds.num_classes, l + 1);
    ds.validate();
    return ds;
}

void write_idx(const Dataset& ds, std::ostream& images, std::ostream& labels) {
    write_u32_be(images, kIdxImageMagic);
    write_u32_be(images, static_cast<std::uint32_t>(ds.count));
    write_u32_be(images, static_cast<std::uint32_t>(ds.height));
    write_u32_be(images, static_cast<std::uint32_t>(ds.width));
    for (double v : ds.pixels) {
        const double c = std::clamp(v, 0.0, 1.0);
        write_u8(images, static_cast<std::uint8_t>(std::lround(c * 255.0)));
    }
    write_u32_be(labels, kIdxLabelMagic);
    write_u32_be(labels, static_cast<std::uint32_t>(ds.count));
    for (std::uint8_t l : ds.labels) write_u8(labels, l);
}

}  // namespace mpcaps
