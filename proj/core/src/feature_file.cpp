#include "mpcaps/feature_file.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "mpcaps/errors.hpp"
#include "mpcaps/serialize.hpp"

namespace mpcaps {

Tensor load_features(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_features: cannot open " + path);
    char magic[4];
    read_bytes(in, magic, 4);
    if (std::memcmp(magic, kFeatureMagic, 4) != 0)
        throw FormatError("load_features: bad magic");
    const std::uint32_t version = read_u32(in);
    if (version != kFeatureVersion) throw FormatError("load_features: unsupported version");
    const std::uint8_t dtype = read_u8(in);
    if (dtype != 0) throw FormatError("load_features: unsupported dtype");
    const std::uint8_t rank = read_u8(in);
    if (rank == 0) throw FormatError("load_features: zero rank");
    std::vector<std::size_t> shape(rank);
    for (auto& e : shape) {
        e = read_u32(in);
        if (e == 0) throw FormatError("load_features: zero extent");
    }
    Tensor t = Tensor::zeros(shape);
    for (double& v : t.data) {
        float f;
        in.read(reinterpret_cast<char*>(&f), 4);
        if (!in) throw FormatError("load_features: payload shorter than extents product");
        v = f;
    }
    return t;
}

void save_features(const Tensor& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_features: cannot open " + path);
    write_bytes(out, kFeatureMagic, 4);
    write_u32(out, kFeatureVersion);
    write_u8(out, 0);  // f32
    write_u8(out, static_cast<std::uint8_t>(t.rank()));
    for (std::size_t e : t.shape) write_u32(out, static_cast<std::uint32_t>(e));
    for (double v : t.data) write_f32(out, static_cast<float>(v));
}

void save_label_sidecar(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_label_sidecar: cannot open " + path);
    write_u32(out, static_cast<std::uint32_t>(ds.count));
    for (std::uint8_t l : ds.labels) write_u8(out, l);
    for (std::size_t i = 0; i < ds.count; ++i)
        write_u8(out, ds.part_labels.empty() ? kNoPartLabel : ds.part_labels[i]);
}

void load_label_sidecar(Dataset& ds, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_label_sidecar: cannot open " + path);
    const std::uint32_t count = read_u32(in);
    if (count != ds.count) throw FormatError("load_label_sidecar: count mismatch with images");
    ds.labels.resize(count);
    read_bytes(in, ds.labels.data(), count);
    ds.part_labels.resize(count);
    read_bytes(in, ds.part_labels.data(), count);
    ds.num_classes = 0;
    for (std::uint8_t l : ds.labels) ds.num_classes = std::max<std::size_t>(ds.num_classes, l + 1);
}

void save_toy_dataset(const Dataset& ds, const std::string& images_path,
                      const std::string& labels_path) {
    Tensor t = Tensor::zeros({ds.count, ds.channels, ds.height, ds.width});
    std::copy(ds.pixels.begin(), ds.pixels.end(), t.data.begin());
    save_features(t, images_path);
    save_label_sidecar(ds, labels_path);
}

Dataset load_toy_dataset(const std::string& images_path, const std::string& labels_path) {
    Tensor t = load_features(images_path);
    if (t.rank() != 4) throw FormatError("load_toy_dataset: expected rank-4 image container");
    Dataset ds;
    ds.count = t.shape[0];
    ds.channels = t.shape[1];
    ds.height = t.shape[2];
    ds.width = t.shape[3];
    ds.pixels.assign(t.data.begin(), t.data.end());
    load_label_sidecar(ds, labels_path);
    ds.validate();
    return ds;
}

}  // namespace mpcaps
