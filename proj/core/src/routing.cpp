#include "mpcaps/routing.hpp"

#include <cmath>
#include <stdexcept>

namespace mpcaps {

Tensor coupling_from_logits(const Tensor& logits) {
    if (logits.rank() != 2) throw std::invalid_argument("coupling_from_logits: rank != 2");
    const std::size_t n = logits.shape[0], m = logits.shape[1];
    Tensor c = Tensor::zeros(logits.shape);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = logits.data.data() + i * m;
        double* out = c.data.data() + i * m;
        double mx = row[0];
        for (std::size_t j = 1; j < m; ++j) mx = std::max(mx, row[j]);
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            out[j] = std::exp(row[j] - mx);
            sum += out[j];
        }
        for (std::size_t j = 0; j < m; ++j) out[j] /= sum;
    }
    return c;
}

RoutingResult dynamic_routing(const VoteTensor& votes, std::size_t iterations) {
    if (iterations < 1) throw std::invalid_argument("dynamic_routing: iterations must be >= 1");
    const std::size_t n = votes.children, m = votes.parents, d = votes.dim;

    RoutingResult r;
    r.cache.iterations = iterations;
    Tensor b = Tensor::zeros({n, m});
    for (std::size_t t = 0; t < iterations; ++t) {
        Tensor c = coupling_from_logits(b);
        CapsuleTensor s = CapsuleTensor::zeros(m, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double cij = c.data[i * m + j];
                const double* v = votes.vote(i, j);
                double* sj = s.capsule(j);
                for (std::size_t k = 0; k < d; ++k) sj[k] += cij * v[k];
            }
        CapsuleTensor v = squash_all(s);
        if (t + 1 < iterations) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const double* vj = v.capsule(j);
                    const double* vt = votes.vote(i, j);
                    double agree = 0.0;
                    for (std::size_t k = 0; k < d; ++k) agree += vj[k] * vt[k];
                    b.data[i * m + j] += agree;
                }
        }
        r.cache.coupling.push_back(c);
        r.cache.pre.push_back(std::move(s));
        r.cache.post.push_back(v);
        if (t + 1 == iterations) {
            r.parents = std::move(v);
            r.state.logits = b;
            r.state.coupling = std::move(c);
            r.state.iterations = iterations;
        }
    }
    return r;
}

VoteTensor dynamic_routing_backward(const VoteTensor& votes, const RoutingCache& cache,
                                    const CapsuleTensor& grad_parents, bool freeze_coupling) {
    const std::size_t n = votes.children, m = votes.parents, d = votes.dim;
    const std::size_t r = cache.iterations;

    VoteTensor grad_votes = VoteTensor::zeros(n, m, d);
    Tensor grad_b = Tensor::zeros({n, m});  // grad w.r.t. b entering iteration t+1
    std::vector<double> grad_s(d);

    for (std::size_t ti = r; ti-- > 0;) {
        const Tensor& c = cache.coupling[ti];
        const CapsuleTensor& s = cache.pre[ti];
        const CapsuleTensor& v = cache.post[ti];

        // grad w.r.t. v_t: the network output at the last iteration, plus the
        // agreement update b_{t+1} = b_t + <v_t, vote> on earlier ones.
        CapsuleTensor grad_v = CapsuleTensor::zeros(m, d);
        if (ti + 1 == r) {
            grad_v = grad_parents;
        } else if (!freeze_coupling) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const double gb = grad_b.data[i * m + j];
                    if (gb == 0.0) continue;
                    const double* vt = votes.vote(i, j);
                    const double* vj = v.capsule(j);
                    double* gv = grad_v.capsule(j);
                    double* gvote = grad_votes.vote(i, j);
                    for (std::size_t k = 0; k < d; ++k) {
                        gv[k] += gb * vt[k];
                        gvote[k] += gb * vj[k];
                    }
                }
        }

        // v_t = squash(s_t); s_t[j] = sum_i c[i][j] vote[i][j]
        Tensor grad_c = Tensor::zeros({n, m});
        for (std::size_t j = 0; j < m; ++j) {
            squash_backward(s.capsule(j), grad_v.capsule(j), grad_s.data(), d);
            for (std::size_t i = 0; i < n; ++i) {
                const double cij = c.data[i * m + j];
                const double* vt = votes.vote(i, j);
                double* gvote = grad_votes.vote(i, j);
                double gc = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    gvote[k] += cij * grad_s[k];
                    gc += grad_s[k] * vt[k];
                }
                grad_c.data[i * m + j] = gc;
            }
        }

        // c_t = softmax_rows(b_t); b_t also carries straight through to b_{t+1}
        if (!freeze_coupling) {
            for (std::size_t i = 0; i < n; ++i) {
                double dot = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                    dot += c.data[i * m + j] * grad_c.data[i * m + j];
                for (std::size_t j = 0; j < m; ++j)
                    grad_b.data[i * m + j] +=
                        c.data[i * m + j] * (grad_c.data[i * m + j] - dot);
            }
        }
        // at ti == 0, b_0 = 0 is a constant; grad_b is dropped
    }
    return grad_votes;
}

}  // namespace mpcaps
