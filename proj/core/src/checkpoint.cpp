#include "mpcaps/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "mpcaps/errors.hpp"
#include "mpcaps/serialize.hpp"

namespace mpcaps {

namespace {

void write_tensor(std::ostream& out, const Tensor& t) {
    write_u32(out, static_cast<std::uint32_t>(t.rank()));
    for (std::size_t e : t.shape) write_u32(out, static_cast<std::uint32_t>(e));
    for (double v : t.data) write_f64(out, v);
}

Tensor read_tensor(std::istream& in) {
    const std::uint32_t rank = read_u32(in);
    std::vector<std::size_t> shape(rank);
    for (auto& e : shape) e = read_u32(in);
    Tensor t = Tensor::zeros(shape);
    for (double& v : t.data) v = read_f64(in);
    return t;
}

void write_config(std::ostream& out, const NetworkConfig& cfg) {
    write_u32(out, static_cast<std::uint32_t>(cfg.in_channels));
    write_u32(out, static_cast<std::uint32_t>(cfg.in_h));
    write_u32(out, static_cast<std::uint32_t>(cfg.in_w));
    write_u32(out, static_cast<std::uint32_t>(cfg.conv.size()));
    for (const auto& c : cfg.conv) {
        write_u32(out, static_cast<std::uint32_t>(c.in_channels));
        write_u32(out, static_cast<std::uint32_t>(c.out_channels));
        write_u32(out, static_cast<std::uint32_t>(c.kernel_size));
        write_u32(out, static_cast<std::uint32_t>(c.stride));
    }
    write_u32(out, static_cast<std::uint32_t>(cfg.primary_dim));
    write_u32(out, static_cast<std::uint32_t>(cfg.primary_groups_per_position));
    write_u32(out, static_cast<std::uint32_t>(cfg.layers.size()));
    for (const auto& layer : cfg.layers) {
        write_u32(out, static_cast<std::uint32_t>(layer.dim));
        write_u32(out, static_cast<std::uint32_t>(layer.group_sizes.size()));
        for (std::size_t g : layer.group_sizes) write_u32(out, static_cast<std::uint32_t>(g));
    }
    write_u32(out, static_cast<std::uint32_t>(cfg.routing_iters));
    write_u32(out, static_cast<std::uint32_t>(cfg.num_classes));
    write_u8(out, cfg.predict_rule == PredictRule::SumGroupNorms ? 0 : 1);
    write_u8(out, cfg.freeze_coupling ? 1 : 0);
    write_f64(out, cfg.init_sigma);
    write_f64(out, cfg.reg.beta);
    write_f64(out, cfg.reg.sigma);
}

NetworkConfig read_config(std::istream& in) {
    NetworkConfig cfg;
    cfg.in_channels = read_u32(in);
    cfg.in_h = read_u32(in);
    cfg.in_w = read_u32(in);
    const std::uint32_t nconv = read_u32(in);
    for (std::uint32_t i = 0; i < nconv; ++i) {
        ConvLayerConfig c;
        c.in_channels = read_u32(in);
        c.out_channels = read_u32(in);
        c.kernel_size = read_u32(in);
        c.stride = read_u32(in);
        cfg.conv.push_back(c);
    }
    cfg.primary_dim = read_u32(in);
    cfg.primary_groups_per_position = read_u32(in);
    const std::uint32_t nlayers = read_u32(in);
    for (std::uint32_t i = 0; i < nlayers; ++i) {
        CapsLayerSpec layer;
        layer.dim = read_u32(in);
        const std::uint32_t ng = read_u32(in);
        layer.group_sizes.resize(ng);
        for (auto& g : layer.group_sizes) g = read_u32(in);
        cfg.layers.push_back(std::move(layer));
    }
    cfg.routing_iters = read_u32(in);
    cfg.num_classes = read_u32(in);
    cfg.predict_rule = read_u8(in) == 0 ? PredictRule::SumGroupNorms : PredictRule::MaxGroupNorm;
    cfg.freeze_coupling = read_u8(in) != 0;
    cfg.init_sigma = read_f64(in);
    cfg.reg.beta = read_f64(in);
    cfg.reg.sigma = read_f64(in);
    return cfg;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    std::ostringstream buf(std::ios::binary);
    write_bytes(buf, kCheckpointMagic, 4);
    write_u32(buf, kCheckpointVersion);
    write_config(buf, ckpt.net.cfg);
    write_u32(buf, static_cast<std::uint32_t>(ckpt.net.conv_w.size()));
    for (std::size_t i = 0; i < ckpt.net.conv_w.size(); ++i) {
        write_tensor(buf, ckpt.net.conv_w[i]);
        write_tensor(buf, ckpt.net.conv_b[i]);
    }
    write_u32(buf, static_cast<std::uint32_t>(ckpt.net.banks.size()));
    for (const auto& bank : ckpt.net.banks) {
        write_f64(buf, bank.sigma);
        write_tensor(buf, bank.W);
    }
    write_u32(buf, static_cast<std::uint32_t>(ckpt.optimizer.size()));
    for (const auto& s : ckpt.optimizer) {
        write_u64(buf, s.step);
        write_f64(buf, s.cfg.lr);
        write_f64(buf, s.cfg.beta1);
        write_f64(buf, s.cfg.beta2);
        write_f64(buf, s.cfg.eps);
        write_tensor(buf, s.m);
        write_tensor(buf, s.v);
    }
    write_u64(buf, ckpt.epoch);
    ckpt.rng.save(buf);

    const std::string payload = buf.str();
    const std::uint32_t checksum = crc32(payload.data(), payload.size());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_checkpoint: cannot open " + path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    write_u32(out, checksum);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw FormatError("load_checkpoint: cannot open " + path);
    std::ostringstream whole;
    whole << file.rdbuf();
    const std::string bytes = whole.str();
    if (bytes.size() < 12) throw FormatError("load_checkpoint: truncated file");

    const std::string payload = bytes.substr(0, bytes.size() - 4);
    std::uint32_t stored;
    std::memcpy(&stored, bytes.data() + bytes.size() - 4, 4);
    if (crc32(payload.data(), payload.size()) != stored)
        throw FormatError("load_checkpoint: checksum mismatch");

    std::istringstream in(payload, std::ios::binary);
    char magic[4];
    read_bytes(in, magic, 4);
    if (std::memcmp(magic, kCheckpointMagic, 4) != 0)
        throw FormatError("load_checkpoint: bad magic");
    const std::uint32_t version = read_u32(in);
    if (version != kCheckpointVersion) throw FormatError("load_checkpoint: version mismatch");

    Checkpoint ckpt;
    ckpt.version = version;
    ckpt.net.cfg = read_config(in);
    ckpt.net.cfg.validate();
    const std::uint32_t nconv = read_u32(in);
    for (std::uint32_t i = 0; i < nconv; ++i) {
        ckpt.net.conv_w.push_back(read_tensor(in));
        ckpt.net.conv_b.push_back(read_tensor(in));
    }
    const std::uint32_t nbanks = read_u32(in);

    // Rebuild the derived group specs, then overwrite parameters.
    ckpt.net.specs.push_back(ckpt.net.cfg.primary_group_spec());
    for (std::size_t l = 0; l < ckpt.net.cfg.layers.size(); ++l)
        ckpt.net.specs.push_back(GroupSpec::from_sizes(l + 2, ckpt.net.cfg.layers[l].group_sizes));

    std::size_t d_in = ckpt.net.cfg.primary_dim;
    for (std::uint32_t i = 0; i < nbanks; ++i) {
        const double sigma = read_f64(in);
        Tensor W = read_tensor(in);
        if (W.rank() != 4) throw FormatError("load_checkpoint: bad bank tensor");
        TransformBank bank = TransformBank::zeros(W.shape[0], W.shape[1], W.shape[3], W.shape[2]);
        bank.sigma = sigma;
        bank.W = std::move(W);
        if (bank.parts != ckpt.net.specs[i].group_count() || bank.d_in != d_in)
            throw FormatError("load_checkpoint: bank shape inconsistent with config");
        ckpt.net.banks.push_back(std::move(bank));
        d_in = ckpt.net.cfg.layers[i].dim;
    }

    const std::uint32_t nopt = read_u32(in);
    for (std::uint32_t i = 0; i < nopt; ++i) {
        AdamState s;
        s.step = read_u64(in);
        s.cfg.lr = read_f64(in);
        s.cfg.beta1 = read_f64(in);
        s.cfg.beta2 = read_f64(in);
        s.cfg.eps = read_f64(in);
        s.m = read_tensor(in);
        s.v = read_tensor(in);
        ckpt.optimizer.push_back(std::move(s));
    }
    ckpt.epoch = read_u64(in);
    ckpt.rng.load(in);
    return ckpt;
}

}  // namespace mpcaps
