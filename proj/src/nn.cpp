#include "newstraject/nn.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "newstraject/errors.hpp"
#include "newstraject/rng.hpp"

namespace newstraject {

namespace {

bool finite_all(const Eigen::MatrixXd& m) { return m.allFinite(); }
bool finite_all(const Eigen::VectorXd& v) { return v.allFinite(); }

void fill_uniform(Eigen::MatrixXd& m, std::mt19937_64& rng, double lo, double hi) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = uniform(rng, lo, hi);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Parameters Parameters::zeros(const NetShape& s) {
    Parameters p;
    p.embedding = Eigen::MatrixXd::Zero(s.vocab, s.embed_dim);
    p.w1 = Eigen::MatrixXd::Zero(s.embed_dim, s.hidden);
    p.b1 = Eigen::VectorXd::Zero(s.hidden);
    p.w2 = Eigen::MatrixXd::Zero(s.hidden, s.labels);
    p.b2 = Eigen::VectorXd::Zero(s.labels);
    return p;
}

Parameters Parameters::init(const NetShape& s, std::mt19937_64& rng) {
    Parameters p = zeros(s);
    fill_uniform(p.embedding, rng, -0.05, 0.05);
    fill_uniform(p.w1, rng, -0.05, 0.05);
    fill_uniform(p.w2, rng, -0.05, 0.05);
    return p;
}

NetShape Parameters::shape(int seq_len) const {
    NetShape s;
    s.vocab = static_cast<int>(embedding.rows());
    s.embed_dim = static_cast<int>(embedding.cols());
    s.hidden = static_cast<int>(w1.cols());
    s.labels = static_cast<int>(w2.cols());
    s.seq_len = seq_len;
    return s;
}

bool Parameters::all_finite() const {
    return finite_all(embedding) && finite_all(w1) && finite_all(b1) && finite_all(w2) &&
           finite_all(b2);
}

bool Parameters::bitwise_equal(const Parameters& o) const {
    auto eq = [](const auto& a, const auto& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() &&
               std::memcmp(a.data(), b.data(),
                           sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
    };
    return eq(embedding, o.embedding) && eq(w1, o.w1) && eq(b1, o.b1) && eq(w2, o.w2) &&
           eq(b2, o.b2);
}

AdamState AdamState::zeros(const NetShape& s) {
    AdamState state;
    state.m = Parameters::zeros(s);
    state.v = Parameters::zeros(s);
    state.t = 0;
    return state;
}

Eigen::MatrixXd forward(const Parameters& params, const Eigen::MatrixXi& batch,
                        double dropout_rate, RunMode mode, std::mt19937_64& rng,
                        ForwardCache* cache) {
    const Eigen::Index batch_size = batch.rows();
    const Eigen::Index seq_len = batch.cols();
    const Eigen::Index vocab = params.embedding.rows();
    const Eigen::Index embed_dim = params.embedding.cols();
    const Eigen::Index hidden = params.w1.cols();

    if (params.w1.rows() != embed_dim || params.b1.size() != hidden ||
        params.w2.rows() != hidden || params.b2.size() != params.w2.cols())
        throw DataError("forward: inconsistent parameter shapes");
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
        throw DataError("forward: dropout rate must be in [0,1)");

    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(batch_size, embed_dim);
    Eigen::MatrixXi argmax = Eigen::MatrixXi::Constant(batch_size, embed_dim, -1);
    for (Eigen::Index b = 0; b < batch_size; ++b) {
        bool any = false;
        for (Eigen::Index pos = 0; pos < seq_len; ++pos) {
            const std::int32_t idx = batch(b, pos);
            if (idx < 0 || idx >= vocab)
                throw DataError("forward: token index " + std::to_string(idx) +
                                " out of range for vocabulary of " + std::to_string(vocab));
            if (idx == 0) continue;  // padding takes no part in the pool
            if (!any) {
                pooled.row(b) = params.embedding.row(idx);
                argmax.row(b).setConstant(static_cast<int>(pos));
                any = true;
                continue;
            }
            for (Eigen::Index j = 0; j < embed_dim; ++j) {
                // Strict > keeps the lowest position on exact ties.
                if (params.embedding(idx, j) > pooled(b, j)) {
                    pooled(b, j) = params.embedding(idx, j);
                    argmax(b, j) = static_cast<int>(pos);
                }
            }
        }
    }

    Eigen::MatrixXd preact = (pooled * params.w1).rowwise() + params.b1.transpose();
    Eigen::MatrixXd activated = preact.cwiseMax(0.0);

    Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(batch_size, hidden);
    if (mode == RunMode::train && dropout_rate > 0.0) {
        const double keep_scale = 1.0 / (1.0 - dropout_rate);
        for (Eigen::Index b = 0; b < batch_size; ++b)
            for (Eigen::Index j = 0; j < hidden; ++j)
                mask(b, j) = uniform01(rng) < dropout_rate ? 0.0 : keep_scale;
    }
    Eigen::MatrixXd hidden_out = activated.cwiseProduct(mask);

    Eigen::MatrixXd logits = (hidden_out * params.w2).rowwise() + params.b2.transpose();
    Eigen::MatrixXd probs = logits.unaryExpr([](double z) {
        double p = sigmoid(z);
        if (p < kProbClamp) return kProbClamp;
        if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
        return p;
    });

    if (cache != nullptr) {
        cache->indices = batch;
        cache->pooled = std::move(pooled);
        cache->argmax = std::move(argmax);
        cache->preact = std::move(preact);
        cache->hidden = std::move(hidden_out);
        cache->dropout_mask = std::move(mask);
        cache->probs = probs;
    }
    return probs;
}

double bce_loss(const Eigen::MatrixXd& probs, const Eigen::MatrixXd& targets) {
    if (probs.rows() != targets.rows() || probs.cols() != targets.cols())
        throw DataError("bce_loss: shape mismatch");
    if (probs.size() == 0) throw DataError("bce_loss: empty batch");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        for (Eigen::Index k = 0; k < probs.cols(); ++k) {
            const double y = targets(i, k);
            const double p = probs(i, k);
            sum += y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
        }
    }
    return -sum / static_cast<double>(probs.size());
}

Gradients backward(const ForwardCache& cache, const Parameters& params,
                   const Eigen::MatrixXd& targets) {
    if (cache.probs.size() == 0) throw DataError("backward: empty or missing forward cache");
    if (cache.probs.rows() != targets.rows() || cache.probs.cols() != targets.cols())
        throw DataError("backward: target shape does not match cached batch");

    const Eigen::Index batch_size = cache.probs.rows();
    const double denom = static_cast<double>(cache.probs.size());

    Gradients grads = Parameters::zeros(params.shape());

    Eigen::MatrixXd dlogits = (cache.probs - targets) / denom;  // B x K
    grads.w2 = cache.hidden.transpose() * dlogits;
    grads.b2 = dlogits.colwise().sum();

    Eigen::MatrixXd dhidden = (dlogits * params.w2.transpose()).cwiseProduct(cache.dropout_mask);
    Eigen::MatrixXd relu_gate = (cache.preact.array() > 0.0).cast<double>();
    Eigen::MatrixXd dpreact = dhidden.cwiseProduct(relu_gate);

    grads.w1 = cache.pooled.transpose() * dpreact;
    grads.b1 = dpreact.colwise().sum();

    Eigen::MatrixXd dpooled = dpreact * params.w1.transpose();  // B x d_e
    for (Eigen::Index b = 0; b < batch_size; ++b) {
        for (Eigen::Index j = 0; j < dpooled.cols(); ++j) {
            const int pos = cache.argmax(b, j);
            if (pos < 0) continue;  // all-padding row pooled to zero
            const std::int32_t idx = cache.indices(b, pos);
            grads.embedding(idx, j) += dpooled(b, j);
        }
    }
    grads.embedding.row(0).setZero();
    return grads;
}

void adam_step(Parameters& params, const Gradients& grads, AdamState& state, double lr) {
    if (!(lr > 0.0)) throw DataError("adam_step: learning rate must be positive");
    if (!grads.all_finite()) throw DataError("adam_step: non-finite gradient, step aborted");

    state.t += 1;
    const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(state.t));
    const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(state.t));

    auto update = [&](Eigen::MatrixXd& theta, const Eigen::MatrixXd& g, Eigen::MatrixXd& m,
                      Eigen::MatrixXd& v) {
        m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * g;
        v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * g.cwiseProduct(g);
        for (Eigen::Index i = 0; i < theta.rows(); ++i) {
            for (Eigen::Index j = 0; j < theta.cols(); ++j) {
                const double m_hat = m(i, j) / bias1;
                const double v_hat = v(i, j) / bias2;
                theta(i, j) -= lr * m_hat / (std::sqrt(v_hat) + kAdamEps);
            }
        }
    };
    auto update_vec = [&](Eigen::VectorXd& theta, const Eigen::VectorXd& g, Eigen::VectorXd& m,
                          Eigen::VectorXd& v) {
        m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * g;
        v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * g.cwiseProduct(g);
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
            const double m_hat = m(i) / bias1;
            const double v_hat = v(i) / bias2;
            theta(i) -= lr * m_hat / (std::sqrt(v_hat) + kAdamEps);
        }
    };

    update(params.embedding, grads.embedding, state.m.embedding, state.v.embedding);
    update(params.w1, grads.w1, state.m.w1, state.v.w1);
    update_vec(params.b1, grads.b1, state.m.b1, state.v.b1);
    update(params.w2, grads.w2, state.m.w2, state.v.w2);
    update_vec(params.b2, grads.b2, state.m.b2, state.v.b2);
}

namespace {

constexpr char kModelMagic[8] = {'N', 'T', 'N', 'N', 'M', '0', '0', '1'};

void put_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t get_u64(std::ifstream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

void put_matrix(std::ofstream& out, const Eigen::MatrixXd& m) {
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

void get_matrix(std::ifstream& in, Eigen::MatrixXd& m) {
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

}  // namespace

void write_model(const std::string& path, const ModelFile& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open model file for writing: " + path);
    out.write(kModelMagic, sizeof(kModelMagic));
    const Parameters& p = model.params;
    put_u64(out, static_cast<std::uint64_t>(p.embedding.rows()));
    put_u64(out, static_cast<std::uint64_t>(p.embedding.cols()));
    put_u64(out, static_cast<std::uint64_t>(p.w1.cols()));
    put_u64(out, static_cast<std::uint64_t>(p.w2.cols()));
    put_u64(out, static_cast<std::uint64_t>(model.seq_len));
    double dropout = model.dropout;
    out.write(reinterpret_cast<const char*>(&dropout), sizeof(dropout));
    put_u64(out, model.seed);
    put_matrix(out, p.embedding);
    put_matrix(out, p.w1);
    Eigen::MatrixXd b1 = p.b1;
    put_matrix(out, b1);
    put_matrix(out, p.w2);
    Eigen::MatrixXd b2 = p.b2;
    put_matrix(out, b2);
    if (!out) throw IoError("write failed: " + path);
}

ModelFile read_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
        throw DataError("model file " + path + ": bad magic (wrong or corrupt file)");

    ModelFile model;
    const auto vocab = static_cast<Eigen::Index>(get_u64(in));
    const auto embed_dim = static_cast<Eigen::Index>(get_u64(in));
    const auto hidden = static_cast<Eigen::Index>(get_u64(in));
    const auto labels = static_cast<Eigen::Index>(get_u64(in));
    model.seq_len = static_cast<int>(get_u64(in));
    in.read(reinterpret_cast<char*>(&model.dropout), sizeof(model.dropout));
    model.seed = get_u64(in);

    if (vocab < 2 || embed_dim < 1 || hidden < 1 || labels < 1 || model.seq_len < 1)
        throw DataError("model file " + path + ": implausible shape header");

    Parameters& p = model.params;
    p.embedding.resize(vocab, embed_dim);
    p.w1.resize(embed_dim, hidden);
    p.w2.resize(hidden, labels);
    Eigen::MatrixXd b1(hidden, 1), b2(labels, 1);
    get_matrix(in, p.embedding);
    get_matrix(in, p.w1);
    get_matrix(in, b1);
    get_matrix(in, p.w2);
    get_matrix(in, b2);
    if (!in) throw DataError("model file " + path + ": truncated");
    p.b1 = b1.col(0);
    p.b2 = b2.col(0);
    return model;
}

}  // namespace newstraject
