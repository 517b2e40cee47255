#pragma once

#include <cstddef>

#include "mpcaps/capsules.hpp"
#include "mpcaps/rng.hpp"
#include "mpcaps/tensor.hpp"

namespace mpcaps {

/// Votes from child capsules to parent capsules:
/// vote[i][j] in R^{d_out}, stored as [children, parents, d_out].
struct VoteTensor {
    std::size_t children = 0;
    std::size_t parents = 0;
    std::size_t dim = 0;
    Tensor votes;

    static VoteTensor zeros(std::size_t children, std::size_t parents, std::size_t dim);

    double* vote(std::size_t i, std::size_t j) {
        return votes.data.data() + (i * parents + j) * dim;
    }
    const double* vote(std::size_t i, std::size_t j) const {
        return votes.data.data() + (i * parents + j) * dim;
    }
};

/// Shared mapping matrices between consecutive capsule layers: exactly one
/// d_out x d_in matrix per (part, parent) pair, so parts x parents matrices in
/// total no matter how many prototypes each part has.
struct TransformBank {
    std::size_t parts = 0;     // S^l
    std::size_t parents = 0;   // n^{l+1}
    std::size_t d_in = 0;      // d_l
    std::size_t d_out = 0;     // d_{l+1}
    double sigma = 0.0;        // init standard deviation
    Tensor W;                  // [parts, parents, d_out, d_in]

    static TransformBank init(std::size_t parts, std::size_t parents, std::size_t d_in,
                              std::size_t d_out, double sigma, Rng& rng);
    static TransformBank zeros(std::size_t parts, std::size_t parents, std::size_t d_in,
                               std::size_t d_out);

    std::size_t matrix_count() const { return parts * parents; }

    double* matrix(std::size_t p, std::size_t j) {
        return W.data.data() + (p * parents + j) * d_out * d_in;
    }
    const double* matrix(std::size_t p, std::size_t j) const {
        return W.data.data() + (p * parents + j) * d_out * d_in;
    }
};

/// vote[i][j] = W[i][j] . u_i for one matrix per (child, parent) pair; the
/// children here are whatever feeds the bank (one capsule per part after
/// winner selection). Requires bank.parts == children.count.
VoteTensor compute_votes(const CapsuleTensor& children, const TransformBank& bank);

/// Same computation named for the winner-selected path: all prototypes of a
/// part share the part's matrices.
inline VoteTensor shared_votes(const CapsuleTensor& selected, const TransformBank& bank) {
    return compute_votes(selected, bank);
}

/// Accumulates grad_W and writes grad w.r.t. the child activities.
void compute_votes_backward(const CapsuleTensor& children, const TransformBank& bank,
                            const VoteTensor& grad_votes, Tensor& grad_W,
                            CapsuleTensor& grad_children);

}  // namespace mpcaps
