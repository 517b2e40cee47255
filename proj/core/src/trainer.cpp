#include "mpcaps/trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "mpcaps/errors.hpp"

namespace mpcaps {

namespace {

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

// Static contiguous chunks; each worker accumulates its own gradient buffer
// and the buffers are reduced in worker order, so the result does not depend
// on scheduling.
template <typename Fn>
void parallel_chunks(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        fn(0, 0, count);
        return;
    }
    const std::size_t workers = std::min(threads, count);
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<AdamState> make_optimizer(Network& net, const AdamConfig& cfg) {
    std::vector<AdamState> states;
    for (auto& p : net.parameters()) states.push_back(AdamState::fresh(*p.tensor, cfg));
    return states;
}

RunReport train(Network& net, std::vector<AdamState>& opt, const Dataset& data,
                const Dataset* eval_data, const TrainConfig& cfg) {
    data.validate();
    if (data.num_classes != net.cfg.num_classes)
        throw std::invalid_argument("train: dataset class count does not match network");
    auto params = net.parameters();
    if (opt.size() != params.size()) throw std::invalid_argument("train: optimizer state mismatch");

    const std::size_t workers = std::max<std::size_t>(1, cfg.threads);

    RunReport report;
    report.num_classes = net.cfg.num_classes;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto batches = batch_iter(data.count, cfg.batch_size, cfg.shuffle, cfg.seed, epoch);

        double epoch_loss = 0.0;
        std::size_t correct = 0;
        for (std::size_t bi = 0; bi < batches.size(); ++bi) {
            const auto& batch = batches[bi];
            std::vector<Gradients> partial(std::min(workers, batch.size()));
            std::vector<double> losses(batch.size());
            std::vector<std::size_t> predicted(batch.size());

            parallel_chunks(batch.size(), workers, [&](std::size_t w, std::size_t lo,
                                                       std::size_t hi) {
                partial[w] = net.zero_gradients();
                for (std::size_t s = lo; s < hi; ++s) {
                    const std::size_t idx = batch[s];
                    ForwardCache cache = net.forward(data.image_tensor(idx));
                    losses[s] = net.backward(cache, data.labels[idx], partial[w]);
                    predicted[s] = net.predict_class(cache);
                }
            });

            Gradients grads = std::move(partial[0]);
            for (std::size_t w = 1; w < partial.size(); ++w) grads.add(partial[w]);
            grads.scale(1.0 / static_cast<double>(batch.size()));

            double batch_loss = 0.0;
            for (std::size_t s = 0; s < batch.size(); ++s) {
                batch_loss += losses[s];
                if (predicted[s] == data.labels[batch[s]]) ++correct;
            }
            batch_loss /= static_cast<double>(batch.size());
            const double reg = total_loss(0.0, net.regularizer_terms());
            net.regularizer_backward(grads);
            const double full_loss = batch_loss + reg;
            epoch_loss += full_loss * static_cast<double>(batch.size());

            if (!std::isfinite(full_loss) || !grads.all_finite())
                throw NumericError("train: non-finite loss at epoch " +
                                   std::to_string(epoch + 1) + " batch " + std::to_string(bi) +
                                   " (max |grad| = " + fmt_double(grads.max_abs()) + ")");

            if (cfg.grad_clip_norm > 0.0) {
                const double norm = grads.global_norm();
                if (norm > cfg.grad_clip_norm) grads.scale(cfg.grad_clip_norm / norm);
            }

            auto grad_refs = net.gradient_refs(grads);
            for (std::size_t p = 0; p < params.size(); ++p)
                adam_step(*params[p].tensor, *grad_refs[p].tensor, opt[p]);
        }

        EpochRecord rec;
        rec.epoch = epoch + 1;
        rec.train_loss = epoch_loss / static_cast<double>(data.count);
        rec.train_acc = static_cast<double>(correct) / static_cast<double>(data.count);
        if (eval_data) {
            rec.has_test = true;
            rec.test_acc = evaluate(net, *eval_data, workers).accuracy;
        }
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cfg.verbose)
            std::fprintf(stderr, "epoch %zu/%zu loss %.6f train_acc %.4f%s%.4f (%.1fs)\n",
                         rec.epoch, cfg.epochs, rec.train_loss, rec.train_acc,
                         rec.has_test ? " test_acc " : " test_acc -", rec.test_acc,
                         rec.wall_seconds);
        report.epochs.push_back(rec);
    }

    const Dataset& final_data = eval_data ? *eval_data : data;
    EvalResult ev = evaluate(net, final_data, workers);
    report.final_accuracy = ev.accuracy;
    report.has_final_accuracy = true;
    report.confusion = std::move(ev.confusion);
    return report;
}

EvalResult evaluate(const Network& net, const Dataset& data, std::size_t threads) {
    data.validate();
    if (data.num_classes != net.cfg.num_classes)
        throw std::invalid_argument("evaluate: dataset class count does not match network");
    const std::size_t k = net.cfg.num_classes;
    std::vector<std::size_t> predictions(data.count);
    parallel_chunks(data.count, std::max<std::size_t>(1, threads),
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i) {
                            ForwardCache cache = net.forward(data.image_tensor(i));
                            predictions[i] = net.predict_class(cache);
                        }
                    });
    EvalResult r;
    r.num_classes = k;
    r.confusion.assign(k * k, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.count; ++i) {
        r.confusion[data.labels[i] * k + predictions[i]] += 1;
        if (predictions[i] == data.labels[i]) ++correct;
    }
    r.accuracy = static_cast<double>(correct) / static_cast<double>(data.count);
    return r;
}

void RunReport::write(std::ostream& out) const {
    for (const auto& e : epochs) {
        out << "epoch=" << e.epoch << " train_loss=" << fmt_double(e.train_loss)
            << " train_acc=" << fmt_double(e.train_acc);
        if (e.has_test) out << " test_acc=" << fmt_double(e.test_acc);
        out << "\n";
    }
    out << "summary epochs=" << epochs.size();
    if (has_final_accuracy) out << " final_acc=" << fmt_double(final_accuracy);
    out << "\n";
    for (std::size_t row = 0; row < num_classes; ++row) {
        out << "confusion class=" << row << " counts=";
        for (std::size_t col = 0; col < num_classes; ++col) {
            if (col) out << ",";
            out << confusion[row * num_classes + col];
        }
        out << "\n";
    }
}

}  // namespace mpcaps
