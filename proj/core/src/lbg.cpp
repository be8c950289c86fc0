/*
Copyright 2026 The CQNV Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cqnv/lbg.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "cqnv/errors.hpp"
#include "cqnv/vq.hpp"

namespace cqnv {

double DistortionWeights::weight(FrameClass c) const {
  switch (c) {
    case FrameClass::StationaryVoiced: return stationary_voiced;
    case FrameClass::Voiced: return voiced;
    case FrameClass::Unvoiced: return unvoiced;
  }
  return unvoiced;
}

FrameClass classify_stationarity(bool voiced, double wo, bool prev_voiced,
                                 double prev_wo) {
  if (!voiced) return FrameClass::Unvoiced;
  if (prev_voiced && prev_wo > 0.0 && std::abs(wo - prev_wo) < 0.05 * prev_wo) {
    return FrameClass::StationaryVoiced;
  }
  return FrameClass::Voiced;
}

namespace {

class LloydTrainer {
 public:
  LloydTrainer(std::span<const double> data, std::size_t dim,
               std::span<const double> weights, const LbgOptions& opt)
      : data_(data),
        dim_(dim),
        n_(data.size() / dim),
        weights_(weights),
        opt_(opt),
        rng_(opt.seed),
        assignment_(n_, 0),
        vec_dist_(n_, 0.0) {
    total_weight_ = 0.0;
    for (std::size_t i = 0; i < n_; ++i) total_weight_ += weight(i);
  }

  void run(std::size_t target, std::vector<LbgIteration>& log) {
    codewords_ = centroid_and_spread();
    std::size_t size = 1;
    lloyd(size, log);
    while (size < target) {
      std::vector<double> next(2 * size * dim_);
      for (std::size_t c = 0; c < size; ++c) {
        for (std::size_t d = 0; d < dim_; ++d) {
          const double v = codewords_[c * dim_ + d];
          next[(2 * c) * dim_ + d] = v + perturb_[d];
          next[(2 * c + 1) * dim_ + d] = v - perturb_[d];
        }
      }
      codewords_ = std::move(next);
      size *= 2;
      lloyd(size, log);
    }
  }

  const std::vector<double>& codewords() const { return codewords_; }

 private:
  double weight(std::size_t i) const {
    return weights_.empty() ? 1.0 : weights_[i];
  }
  const double* vec(std::size_t i) const { return data_.data() + i * dim_; }

  std::vector<double> centroid_and_spread() {
    std::vector<double> mean(dim_, 0.0), var(dim_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t d = 0; d < dim_; ++d) mean[d] += weight(i) * vec(i)[d];
    }
    for (auto& m : mean) m /= total_weight_;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t d = 0; d < dim_; ++d) {
        const double e = vec(i)[d] - mean[d];
        var[d] += weight(i) * e * e;
      }
    }
    perturb_.assign(dim_, 0.0);
    for (std::size_t d = 0; d < dim_; ++d) {
      perturb_[d] = opt_.split_epsilon * std::sqrt(var[d] / total_weight_);
    }
    return mean;
  }

  // Nearest codeword for every vector; returns weighted mean distortion.
  double assign(std::size_t size) {
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double* x = vec(i);
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < size; ++c) {
        const double* cw = codewords_.data() + c * dim_;
        double d = 0.0;
        for (std::size_t k = 0; k < dim_ && d < best_d; ++k) {
          const double e = x[k] - cw[k];
          d += e * e;
        }
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assignment_[i] = best;
      vec_dist_[i] = best_d;
      total += weight(i) * best_d;
    }
    return total / total_weight_;
  }

  // Weighted centroids; empty cells take a random member of the cell with
  // the largest total distortion. Returns the number of empty cells moved.
  std::size_t update(std::size_t size) {
    std::vector<double> sums(size * dim_, 0.0), mass(size, 0.0), cell_dist(size, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t c = assignment_[i];
      const double w = weight(i);
      mass[c] += w;
      cell_dist[c] += w * vec_dist_[i];
      for (std::size_t d = 0; d < dim_; ++d) sums[c * dim_ + d] += w * vec(i)[d];
    }
    std::size_t fixed = 0;
    std::vector<bool> taken(n_, false);
    for (std::size_t c = 0; c < size; ++c) {
      if (mass[c] > 0.0) {
        for (std::size_t d = 0; d < dim_; ++d) {
          codewords_[c * dim_ + d] = sums[c * dim_ + d] / mass[c];
        }
      }
    }
    for (std::size_t c = 0; c < size; ++c) {
      if (mass[c] > 0.0) continue;
      std::size_t worst = 0;
      for (std::size_t k = 1; k < size; ++k) {
        if (cell_dist[k] > cell_dist[worst]) worst = k;
      }
      if (!(cell_dist[worst] > 0.0)) continue;
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n_; ++i) {
        if (assignment_[i] == worst && vec_dist_[i] > 0.0 && !taken[i]) members.push_back(i);
      }
      if (members.empty()) {
        cell_dist[worst] = 0.0;
        continue;
      }
      const std::size_t pick = members[rng_() % members.size()];
      taken[pick] = true;
      cell_dist[worst] -= weight(pick) * vec_dist_[pick];
      for (std::size_t d = 0; d < dim_; ++d) codewords_[c * dim_ + d] = vec(pick)[d];
      ++fixed;
    }
    return fixed;
  }

  void lloyd(std::size_t size, std::vector<LbgIteration>& log) {
    double dist = assign(size);
    log.push_back({size, 0, dist, 0});
    for (std::size_t it = 1; it <= opt_.max_iterations; ++it) {
      if (dist == 0.0) break;
      const auto previous = codewords_;
      const auto prev_assignment = assignment_;
      const auto prev_dist = vec_dist_;
      const std::size_t fixed = update(size);
      const double next = assign(size);
      if (next > dist) {
        // Rounding only; keep the better codebook.
        codewords_ = previous;
        assignment_ = prev_assignment;
        vec_dist_ = prev_dist;
        break;
      }
      log.push_back({size, it, next, fixed});
      const bool converged = fixed == 0 && (dist - next) <= opt_.relative_tolerance * dist;
      dist = next;
      if (converged) break;
    }
  }

  std::span<const double> data_;
  std::size_t dim_;
  std::size_t n_;
  std::span<const double> weights_;
  LbgOptions opt_;
  std::mt19937_64 rng_;
  double total_weight_ = 0.0;
  std::vector<double> codewords_;
  std::vector<double> perturb_;
  std::vector<std::size_t> assignment_;
  std::vector<double> vec_dist_;
};

}  // namespace

LbgResult lbg_train(std::span<const double> data, std::size_t dim,
                    std::size_t target_size, std::span<const double> weights,
                    const LbgOptions& options) {
  if (dim == 0) throw InvalidArgument("lbg_train: dimension must be positive");
  if (data.empty()) throw EmptyInputError("lbg_train: empty training data");
  if (data.size() % dim != 0) {
    throw InvalidArgument("lbg_train: data length is not a multiple of dim");
  }
  if (target_size == 0 || !std::has_single_bit(target_size)) {
    throw InvalidArgument("lbg_train: target size must be a power of two");
  }
  const std::size_t n = data.size() / dim;
  if (n < target_size) {
    throw InvalidArgument("lbg_train: insufficient data (" + std::to_string(n) +
                          " vectors for " + std::to_string(target_size) + " codewords)");
  }
  if (!weights.empty()) {
    if (weights.size() != n) throw DimensionError("lbg_train weights", n, weights.size());
    for (double w : weights) {
      if (!(w > 0.0)) throw InvalidArgument("lbg_train: weights must be positive");
    }
  }

  LbgResult out;
  LloydTrainer trainer(data, dim, weights, options);
  trainer.run(target_size, out.log);

  std::vector<float> values(trainer.codewords().size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<float>(trainer.codewords()[i]);
  }
  out.codebook = Codebook(dim, std::move(values));

  double total = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    total += w * nearest_code(out.codebook, data.subspan(i * dim, dim)).distortion;
    mass += w;
  }
  out.final_distortion = total / mass;
  return out;
}

std::string format_training_log(const std::vector<LbgIteration>& log) {
  std::string s;
  char line[128];
  for (const auto& e : log) {
    std::snprintf(line, sizeof line, "size=%zu iter=%zu distortion=%.12g empty_fixed=%zu\n",
                  e.codebook_size, e.iteration, e.distortion, e.empty_cells_fixed);
    s += line;
  }
  return s;
}

}  // namespace cqnv
