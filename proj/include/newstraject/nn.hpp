#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace newstraject {

// Network dimensions: vocabulary V, embedding width d_e, hidden width h,
// label count K, padded sequence length L.
struct NetShape {
    int vocab = 0;
    int embed_dim = 0;
    int hidden = 0;
    int labels = 0;
    int seq_len = 0;

    bool operator==(const NetShape&) const = default;
};

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;
inline constexpr double kProbClamp = 1e-7;  // keeps ln(p) and ln(1-p) finite

// Embedding -> global max pool -> dense ReLU -> dropout -> dense sigmoid.
struct Parameters {
    Eigen::MatrixXd embedding;  // V x d_e, row 0 is the padding row
    Eigen::MatrixXd w1;         // d_e x h
    Eigen::VectorXd b1;         // h
    Eigen::MatrixXd w2;         // h x K
    Eigen::VectorXd b2;         // K

    static Parameters zeros(const NetShape& shape);
    // Weights ~ U(-0.05, 0.05), biases zero.
    static Parameters init(const NetShape& shape, std::mt19937_64& rng);

    NetShape shape(int seq_len = 0) const;
    bool all_finite() const;
    bool bitwise_equal(const Parameters& other) const;
};

using Gradients = Parameters;

struct AdamState {
    Parameters m;
    Parameters v;
    long t = 0;

    static AdamState zeros(const NetShape& shape);
};

enum class RunMode { train, infer };

// Per-batch intermediates needed for exact backprop.
struct ForwardCache {
    Eigen::MatrixXi indices;        // B x L token indices
    Eigen::MatrixXd pooled;         // B x d_e
    Eigen::MatrixXi argmax;         // B x d_e winning position, -1 if all padding
    Eigen::MatrixXd preact;         // B x h, before ReLU
    Eigen::MatrixXd hidden;         // B x h, after ReLU and dropout
    Eigen::MatrixXd dropout_mask;   // B x h, 0 or 1/(1-rate)
    Eigen::MatrixXd probs;          // B x K, clamped sigmoid outputs
};

// Max pooling skips padding positions; an all-padding row pools to zero.
// Dropout is inverted (survivors scaled by 1/(1-rate)) and only active in
// train mode. Output probabilities are clamped to [1e-7, 1-1e-7].
Eigen::MatrixXd forward(const Parameters& params, const Eigen::MatrixXi& batch,
                        double dropout_rate, RunMode mode, std::mt19937_64& rng,
                        ForwardCache* cache = nullptr);

// Mean binary cross-entropy over all B*K cells.
double bce_loss(const Eigen::MatrixXd& probs, const Eigen::MatrixXd& targets);

// Exact gradients for the sigmoid+BCE composite: dL/dz2 = (p - y) / (B*K).
// Max-pool routes each dimension's gradient to its argmax position only,
// and the padding row of the embedding never receives gradient.
Gradients backward(const ForwardCache& cache, const Parameters& params,
                   const Eigen::MatrixXd& targets);

// Adam with bias correction; β1=0.9, β2=0.999, eps=1e-8. Throws on
// non-finite gradients without touching the parameters.
void adam_step(Parameters& params, const Gradients& grads, AdamState& state, double lr);

// Versioned binary container: shape + dropout + seed + all matrices.
// Write/read round-trips bit-exactly.
struct ModelFile {
    Parameters params;
    int seq_len = 0;
    double dropout = 0.0;
    std::uint64_t seed = 0;
};

void write_model(const std::string& path, const ModelFile& model);
ModelFile read_model(const std::string& path);

}  // namespace newstraject
