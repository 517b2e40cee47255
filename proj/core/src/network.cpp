#include "mpcaps/network.hpp"

#include <cmath>
#include <stdexcept>

namespace mpcaps {

void NetworkConfig::validate() const {
    if (layers.empty()) throw std::invalid_argument("network: need at least 2 capsule layers");
    if (layers.back().group_sizes.size() != num_classes)
        throw std::invalid_argument("network: final layer must have one group per class");
    for (const auto& layer : layers) {
        if (layer.dim == 0) throw std::invalid_argument("network: zero capsule dim");
        for (std::size_t g : layer.group_sizes)
            if (g == 0) throw std::invalid_argument("network: zero group size");
    }
    std::size_t depth, h, w;
    feature_shape(depth, h, w);
    if (depth % primary_dim != 0)
        throw std::invalid_argument("network: feature depth not divisible by primary dim");
    if (primary_groups_per_position > depth / primary_dim)
        throw std::invalid_argument("network: more primary groups than capsules per position");
    if (routing_iters < 1) throw std::invalid_argument("network: routing iterations must be >= 1");
}

void NetworkConfig::feature_shape(std::size_t& depth, std::size_t& h, std::size_t& w) const {
    depth = in_channels;
    h = in_h;
    w = in_w;
    for (const auto& c : conv) {
        h = conv_output_extent(h, c.kernel_size, c.stride);
        w = conv_output_extent(w, c.kernel_size, c.stride);
        depth = c.out_channels;
    }
}

std::size_t NetworkConfig::primary_capsule_count() const {
    std::size_t depth, h, w;
    feature_shape(depth, h, w);
    return h * w * (depth / primary_dim);
}

GroupSpec NetworkConfig::primary_group_spec() const {
    std::size_t depth, h, w;
    feature_shape(depth, h, w);
    const std::size_t blocks = depth / primary_dim;
    GroupSpec spec;
    spec.layer = 1;
    if (primary_groups_per_position == 0) {
        spec = GroupSpec::singletons(1, h * w * blocks);
        return spec;
    }
    const std::size_t g = primary_groups_per_position;
    const std::size_t base = blocks / g;
    const std::size_t rem = blocks % g;
    for (std::size_t pos = 0; pos < h * w; ++pos) {
        const std::size_t offset = pos * blocks;
        std::vector<std::vector<std::size_t>> local(g);
        std::size_t next = 0;
        for (std::size_t gi = 0; gi < g; ++gi)
            for (std::size_t k = 0; k < base; ++k) local[gi].push_back(offset + next++);
        for (std::size_t r = 0; r < rem; ++r) local[r].push_back(offset + next++);
        for (auto& grp : local) spec.groups.push_back(std::move(grp));
    }
    return spec;
}

Network Network::init(const NetworkConfig& cfg, Rng& rng) {
    cfg.validate();
    Network net;
    net.cfg = cfg;

    std::size_t in_c = cfg.in_channels;
    for (const auto& c : cfg.conv) {
        if (c.in_channels != in_c)
            throw std::invalid_argument("network: conv in_channels chain mismatch");
        net.conv_w.push_back(init_normal({c.out_channels, c.in_channels, c.kernel_size,
                                          c.kernel_size},
                                         cfg.init_sigma, rng));
        net.conv_b.push_back(Tensor::zeros({c.out_channels}));  // biases start at zero
        in_c = c.out_channels;
    }

    net.specs.push_back(cfg.primary_group_spec());
    for (std::size_t l = 0; l < cfg.layers.size(); ++l) {
        GroupSpec s = GroupSpec::from_sizes(l + 2, cfg.layers[l].group_sizes);
        net.specs.push_back(std::move(s));
    }

    std::size_t d_in = cfg.primary_dim;
    for (std::size_t l = 0; l < cfg.layers.size(); ++l) {
        const std::size_t parts = net.specs[l].group_count();
        const std::size_t parents = net.specs[l + 1].total();
        net.banks.push_back(
            TransformBank::init(parts, parents, d_in, cfg.layers[l].dim, cfg.init_sigma, rng));
        d_in = cfg.layers[l].dim;
    }
    return net;
}

ForwardCache Network::forward(const Tensor& input) const {
    ForwardCache cache;
    cache.input = input;

    const Tensor* features = &cache.input;
    for (std::size_t i = 0; i < cfg.conv.size(); ++i) {
        cache.conv_out.push_back(conv_forward(*features, cfg.conv[i], conv_w[i], conv_b[i]));
        features = &cache.conv_out.back();
    }

    cache.primary = form_primary_capsules(*features, cfg.primary_dim);
    cache.layer_caps.push_back(cache.primary.squashed);

    for (std::size_t l = 0; l < banks.size(); ++l) {
        cache.selections.push_back(winner_select(cache.layer_caps[l], specs[l]));
        cache.votes.push_back(shared_votes(cache.selections.back().selected, banks[l]));
        RoutingResult r = dynamic_routing(cache.votes.back(), cfg.routing_iters);
        cache.layer_caps.push_back(std::move(r.parents));
        cache.routing.push_back(std::move(r.cache));
        cache.routing_state.push_back(std::move(r.state));
    }
    return cache;
}

double Network::sample_loss(const ForwardCache& cache, std::size_t label) const {
    const CapsuleTensor& fc = final_caps(cache);
    const auto y = output_distribution(fc);
    const auto tau = target_distribution(fc, label, final_spec());
    return cce_loss(y, tau);
}

double Network::backward(const ForwardCache& cache, std::size_t label, Gradients& accum) const {
    const CapsuleTensor& fc = final_caps(cache);
    const auto y = output_distribution(fc);
    const auto tau = target_distribution(fc, label, final_spec());
    const double loss = cce_loss(y, tau);

    CapsuleTensor grad_caps = cce_backward(fc, y, tau);

    for (std::size_t l = banks.size(); l-- > 0;) {
        const VoteTensor grad_votes = dynamic_routing_backward(
            cache.votes[l], cache.routing[l], grad_caps, cfg.freeze_coupling);
        CapsuleTensor grad_selected;
        compute_votes_backward(cache.selections[l].selected, banks[l], grad_votes,
                               accum.banks[l], grad_selected);
        grad_caps = winner_select_backward(cache.layer_caps[l], specs[l],
                                           cache.selections[l].winners, grad_selected);
    }

    Tensor grad_features = form_primary_capsules_backward(
        cache.primary,
        cache.conv_out.empty() ? cache.input : cache.conv_out.back(), grad_caps);

    for (std::size_t i = cfg.conv.size(); i-- > 0;) {
        const Tensor& in = i == 0 ? cache.input : cache.conv_out[i - 1];
        Tensor grad_in;
        conv_backward(in, cfg.conv[i], conv_w[i], cache.conv_out[i], grad_features, grad_in,
                      accum.conv_w[i], accum.conv_b[i]);
        grad_features = std::move(grad_in);
    }
    return loss;
}

std::vector<double> Network::regularizer_terms() const {
    std::vector<double> terms;
    RegConfig rc = cfg.reg;
    for (const auto& bank : banks) {
        rc.sigma = cfg.init_sigma;
        terms.push_back(frobenius_reg(bank, rc));
    }
    return terms;
}

void Network::regularizer_backward(Gradients& accum) const {
    RegConfig rc = cfg.reg;
    rc.sigma = cfg.init_sigma;
    for (std::size_t l = 0; l < banks.size(); ++l)
        frobenius_reg_backward(banks[l], rc, accum.banks[l]);
}

std::size_t Network::predict_class(const ForwardCache& cache) const {
    return predict(final_caps(cache), final_spec(), cfg.predict_rule);
}

Gradients Network::zero_gradients() const {
    Gradients g;
    for (const auto& w : conv_w) g.conv_w.push_back(Tensor::zeros(w.shape));
    for (const auto& b : conv_b) g.conv_b.push_back(Tensor::zeros(b.shape));
    for (const auto& bank : banks) g.banks.push_back(Tensor::zeros(bank.W.shape));
    return g;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const auto& w : conv_w) n += w.numel();
    for (const auto& b : conv_b) n += b.numel();
    for (const auto& bank : banks) n += bank.W.numel();
    return n;
}

std::vector<Network::ParamRef> Network::parameters() {
    std::vector<ParamRef> refs;
    for (std::size_t i = 0; i < conv_w.size(); ++i) {
        refs.push_back({"conv" + std::to_string(i + 1) + ".w", &conv_w[i]});
        refs.push_back({"conv" + std::to_string(i + 1) + ".b", &conv_b[i]});
    }
    for (std::size_t i = 0; i < banks.size(); ++i)
        refs.push_back({"bank" + std::to_string(i + 1) + ".W", &banks[i].W});
    return refs;
}

std::vector<Network::ParamRef> Network::gradient_refs(Gradients& g) const {
    std::vector<ParamRef> refs;
    for (std::size_t i = 0; i < g.conv_w.size(); ++i) {
        refs.push_back({"conv" + std::to_string(i + 1) + ".w", &g.conv_w[i]});
        refs.push_back({"conv" + std::to_string(i + 1) + ".b", &g.conv_b[i]});
    }
    for (std::size_t i = 0; i < g.banks.size(); ++i)
        refs.push_back({"bank" + std::to_string(i + 1) + ".W", &g.banks[i]});
    return refs;
}

void Gradients::add(const Gradients& other) {
    for (std::size_t i = 0; i < conv_w.size(); ++i) conv_w[i] += other.conv_w[i];
    for (std::size_t i = 0; i < conv_b.size(); ++i) conv_b[i] += other.conv_b[i];
    for (std::size_t i = 0; i < banks.size(); ++i) banks[i] += other.banks[i];
}

void Gradients::scale(double s) {
    for (auto& t : conv_w) t *= s;
    for (auto& t : conv_b) t *= s;
    for (auto& t : banks) t *= s;
}

double Gradients::max_abs() const {
    double m = 0.0;
    for (const auto& t : conv_w) m = std::max(m, t.max_abs());
    for (const auto& t : conv_b) m = std::max(m, t.max_abs());
    for (const auto& t : banks) m = std::max(m, t.max_abs());
    return m;
}

double Gradients::global_norm() const {
    double acc = 0.0;
    auto accum = [&acc](const Tensor& t) {
        for (double v : t.data) acc += v * v;
    };
    for (const auto& t : conv_w) accum(t);
    for (const auto& t : conv_b) accum(t);
    for (const auto& t : banks) accum(t);
    return std::sqrt(acc);
}

bool Gradients::all_finite() const {
    for (const auto& t : conv_w)
        if (!t.all_finite()) return false;
    for (const auto& t : conv_b)
        if (!t.all_finite()) return false;
    for (const auto& t : banks)
        if (!t.all_finite()) return false;
    return true;
}

}  // namespace mpcaps
