#include "mpcaps/transform_bank.hpp"

#include <stdexcept>

namespace mpcaps {

VoteTensor VoteTensor::zeros(std::size_t children, std::size_t parents, std::size_t dim) {
    VoteTensor v;
    v.children = children;
    v.parents = parents;
    v.dim = dim;
    v.votes = Tensor::zeros({children, parents, dim});
    return v;
}

TransformBank TransformBank::init(std::size_t parts, std::size_t parents, std::size_t d_in,
                                  std::size_t d_out, double sigma, Rng& rng) {
    TransformBank b = zeros(parts, parents, d_in, d_out);
    b.sigma = sigma;
    b.W = init_normal({parts, parents, d_out, d_in}, sigma, rng);
    return b;
}

TransformBank TransformBank::zeros(std::size_t parts, std::size_t parents, std::size_t d_in,
                                   std::size_t d_out) {
    TransformBank b;
    b.parts = parts;
    b.parents = parents;
    b.d_in = d_in;
    b.d_out = d_out;
    b.W = Tensor::zeros({parts, parents, d_out, d_in});
    return b;
}

VoteTensor compute_votes(const CapsuleTensor& children, const TransformBank& bank) {
    if (children.count != bank.parts)
        throw std::invalid_argument("compute_votes: child count != bank parts");
    if (children.dim != bank.d_in)
        throw std::invalid_argument("compute_votes: child dim != bank d_in");
    VoteTensor out = VoteTensor::zeros(bank.parts, bank.parents, bank.d_out);
    for (std::size_t p = 0; p < bank.parts; ++p) {
        const double* u = children.capsule(p);
        for (std::size_t j = 0; j < bank.parents; ++j) {
            const double* w = bank.matrix(p, j);
            double* v = out.vote(p, j);
            for (std::size_t o = 0; o < bank.d_out; ++o) {
                double acc = 0.0;
                const double* wrow = w + o * bank.d_in;
                for (std::size_t in = 0; in < bank.d_in; ++in) acc += wrow[in] * u[in];
                v[o] = acc;
            }
        }
    }
    return out;
}

void compute_votes_backward(const CapsuleTensor& children, const TransformBank& bank,
                            const VoteTensor& grad_votes, Tensor& grad_W,
                            CapsuleTensor& grad_children) {
    if (!grad_W.same_shape(bank.W)) grad_W = Tensor::zeros(bank.W.shape);
    grad_children = CapsuleTensor::zeros(children.count, children.dim);
    for (std::size_t p = 0; p < bank.parts; ++p) {
        const double* u = children.capsule(p);
        double* gu = grad_children.capsule(p);
        for (std::size_t j = 0; j < bank.parents; ++j) {
            const double* w = bank.matrix(p, j);
            double* gw = grad_W.data.data() + (p * bank.parents + j) * bank.d_out * bank.d_in;
            const double* gv = grad_votes.vote(p, j);
            for (std::size_t o = 0; o < bank.d_out; ++o) {
                const double g = gv[o];
                if (g == 0.0) continue;
                const double* wrow = w + o * bank.d_in;
                double* gwrow = gw + o * bank.d_in;
                for (std::size_t in = 0; in < bank.d_in; ++in) {
                    gwrow[in] += g * u[in];
                    gu[in] += g * wrow[in];
                }
            }
        }
    }
}

}  // namespace mpcaps
