#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecpart/graph.hpp"
#include "vecpart/matrix.hpp"
#include "vecpart/parallel.hpp"
#include "vecpart/rng.hpp"

// Forward-only message-passing encoder. Per layer, every vertex averages its
// neighbors' previous representations and mixes them with its own through
// two linear maps and a tanh:
//
//   a_v = mean{ h_u : u in N(v) }          (zero vector if N(v) is empty)
//   h_v = tanh(h_v_prev * W_self + a_v * W_neigh)
//
// Weights are drawn once from a seeded generator and never optimized; the
// forward pass still mixes features with graph structure, which is all the
// downstream clustering needs. Final rows are L2-normalized.

namespace vecpart {

struct EncoderWeights {
  struct Layer {
    Matrix self_weight;      // d_{l-1} x d_l
    Matrix neighbor_weight;  // d_{l-1} x d_l
  };

  std::uint32_t input_dim = 0;
  std::uint32_t hidden_dim = 0;
  std::uint64_t seed = 0;
  std::vector<Layer> layers;

  bool operator==(const EncoderWeights& other) const {
    if (input_dim != other.input_dim || hidden_dim != other.hidden_dim || seed != other.seed ||
        layers.size() != other.layers.size()) {
      return false;
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
      if (layers[l].self_weight.values != other.layers[l].self_weight.values ||
          layers[l].neighbor_weight.values != other.layers[l].neighbor_weight.values) {
        return false;
      }
    }
    return true;
  }
};

// Uniform in [-s, s] with s = sqrt(6 / (fan_in + fan_out)), which keeps the
// tanh units out of saturation regardless of depth.
inline EncoderWeights init_weights(std::uint32_t input_dim, std::uint32_t hidden_dim,
                                   std::uint32_t num_layers, std::uint64_t seed) {
  if (input_dim < 1 || hidden_dim < 1) {
    throw std::invalid_argument("init_weights: dimensions must be >= 1");
  }
  EncoderWeights w;
  w.input_dim = input_dim;
  w.hidden_dim = hidden_dim;
  w.seed = seed;
  Rng rng(seed);
  auto fill = [&rng](Matrix& m, std::size_t fan_in, std::size_t fan_out) {
    m = Matrix(fan_in, fan_out);
    const double s = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : m.values) v = (2.0 * rng.next_double() - 1.0) * s;
  };
  std::size_t d_prev = input_dim;
  for (std::uint32_t l = 0; l < num_layers; ++l) {
    EncoderWeights::Layer layer;
    fill(layer.self_weight, d_prev, hidden_dim);
    fill(layer.neighbor_weight, d_prev, hidden_dim);
    w.layers.push_back(std::move(layer));
    d_prev = hidden_dim;
  }
  return w;
}

namespace detail {

// out += row * W, with row of length W.rows.
inline void add_row_times_matrix(const double* row, const Matrix& w, double* out) {
  const std::size_t cols = w.cols;
  for (std::size_t i = 0; i < w.rows; ++i) {
    const double c = row[i];
    const double* wrow = w.values.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] += c * wrow[j];
  }
}

}  // namespace detail

// Pure function of (graph, features, weights); per-vertex outputs are
// independent, so the parallel split cannot change the result.
inline EmbeddingMatrix forward_embed(const Graph& graph, const FeatureMatrix& features,
                                     const EncoderWeights& weights, std::size_t threads = 1) {
  if (features.rows != graph.n) {
    throw std::invalid_argument("forward_embed: feature rows do not match vertex count");
  }
  if (features.cols != weights.input_dim) {
    throw std::invalid_argument("forward_embed: feature dim does not match encoder input dim");
  }
  if (!features.all_finite()) {
    throw std::invalid_argument("forward_embed: non-finite feature values");
  }

  Matrix h = features;
  for (const auto& layer : weights.layers) {
    const std::size_t d_prev = h.cols;
    const std::size_t d_next = layer.self_weight.cols;
    Matrix next(graph.n, d_next);
    parallel_for(graph.n, threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> agg(d_prev);
      for (std::size_t v = begin; v < end; ++v) {
        const auto nb = graph.neighbors_of(static_cast<VertexId>(v));
        std::fill(agg.begin(), agg.end(), 0.0);
        if (!nb.empty()) {
          for (VertexId u : nb) {
            const double* hu = h.values.data() + static_cast<std::size_t>(u) * d_prev;
            for (std::size_t j = 0; j < d_prev; ++j) agg[j] += hu[j];
          }
          const double inv = 1.0 / static_cast<double>(nb.size());
          for (std::size_t j = 0; j < d_prev; ++j) agg[j] *= inv;
        }
        double* out = next.values.data() + v * d_next;
        detail::add_row_times_matrix(h.values.data() + v * d_prev, layer.self_weight, out);
        detail::add_row_times_matrix(agg.data(), layer.neighbor_weight, out);
        for (std::size_t j = 0; j < d_next; ++j) out[j] = std::tanh(out[j]);
      }
    });
    h = std::move(next);
  }

  // L2-normalize; all-zero rows (possible for isolated vertices with zero
  // features) stay zero instead of going NaN.
  parallel_for(graph.n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      double* row = h.values.data() + v * h.cols;
      double sq = 0.0;
      for (std::size_t j = 0; j < h.cols; ++j) sq += row[j] * row[j];
      if (sq > 0.0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (std::size_t j = 0; j < h.cols; ++j) row[j] *= inv;
      }
    }
  });
  return h;
}

// Re-embeds an updated graph with previously stored weights. The encoder is
// inductive: it never depends on vertex identity, only on features and
// neighborhoods, so new or modified vertices just flow through the same pass.
inline EmbeddingMatrix inductive_embed(const Graph& updated_graph, const FeatureMatrix& updated_features,
                                       const EncoderWeights& stored_weights, std::size_t threads = 1) {
  return forward_embed(updated_graph, updated_features, stored_weights, threads);
}

// Externally trained embeddings enter here: TSV, one row per vertex in id
// order.
inline EmbeddingMatrix load_embeddings(const std::string& path, std::size_t n) {
  return load_matrix_tsv(path, n);
}

namespace detail {

constexpr char kWeightsMagic[8] = {'V', 'P', 'W', 'T', 'S', '0', '0', '1'};

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class ByteReader {
 public:
  ByteReader(const std::string& data, std::string path) : data_(data), path_(std::move(path)) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  std::uint64_t u64() { return raw(8); }
  double f64() { return std::bit_cast<double>(raw(8)); }

  void expect_end() const {
    if (pos_ != data_.size()) throw std::runtime_error(path_ + ": trailing bytes after weight data");
  }

 private:
  std::uint64_t raw(std::size_t bytes) {
    if (pos_ + bytes > data_.size()) throw std::runtime_error(path_ + ": truncated weights file");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bytes; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += bytes;
    return v;
  }

  const std::string& data_;
  std::string path_;
  std::size_t pos_ = sizeof(kWeightsMagic);
};

}  // namespace detail

// Binary snapshot: magic, dims, layer count, seed, then the raw matrices as
// little-endian doubles. Round-trips bit-exactly.
inline void save_weights(const EncoderWeights& w, const std::string& path) {
  std::string out;
  out.append(detail::kWeightsMagic, sizeof(detail::kWeightsMagic));
  detail::put_u32(out, w.input_dim);
  detail::put_u32(out, w.hidden_dim);
  detail::put_u32(out, static_cast<std::uint32_t>(w.layers.size()));
  detail::put_u64(out, w.seed);
  for (const auto& layer : w.layers) {
    for (double v : layer.self_weight.values) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
    for (double v : layer.neighbor_weight.values) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  detail::write_file(path, out);
}

inline EncoderWeights load_weights(const std::string& path) {
  const std::string data = detail::read_file(path);
  if (data.size() < sizeof(detail::kWeightsMagic) ||
      std::memcmp(data.data(), detail::kWeightsMagic, sizeof(detail::kWeightsMagic)) != 0) {
    throw std::runtime_error(path + ": bad magic (not a weights file)");
  }
  detail::ByteReader reader(data, path);
  EncoderWeights w;
  w.input_dim = reader.u32();
  w.hidden_dim = reader.u32();
  const std::uint32_t num_layers = reader.u32();
  w.seed = reader.u64();
  std::size_t d_prev = w.input_dim;
  for (std::uint32_t l = 0; l < num_layers; ++l) {
    EncoderWeights::Layer layer;
    layer.self_weight = Matrix(d_prev, w.hidden_dim);
    layer.neighbor_weight = Matrix(d_prev, w.hidden_dim);
    for (double& v : layer.self_weight.values) v = reader.f64();
    for (double& v : layer.neighbor_weight.values) v = reader.f64();
    w.layers.push_back(std::move(layer));
    d_prev = w.hidden_dim;
  }
  reader.expect_end();
  return w;
}

}  // namespace vecpart
