#include "simplify/sentence_cnn.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "adam.h"
#include "simplify/complexity.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/rng.h"

namespace simplify {
namespace {

constexpr std::string_view kCnnHeader = "simplify-sentence-cnn v1";

}  // namespace

// Per-filter pre-activation maximum and where it occurred.
struct SentenceComplexityModel::Activation {
  std::vector<double> pooled;
  std::vector<size_t> argmax;
  std::vector<bool> active;
};

SentenceComplexityModel::SentenceComplexityModel(
    std::shared_ptr<const EmbeddingTable> embeddings, CnnConfig config)
    : embeddings_(std::move(embeddings)), config_(std::move(config)) {
  if (!embeddings_ || embeddings_->dimension() == 0) {
    throw ConfigError("sentence CNN needs a non-empty embedding table");
  }
  if (config_.widths.empty() || config_.filters_per_width < 1) {
    throw ConfigError("sentence CNN needs at least one filter");
  }
  for (int w : config_.widths) {
    if (w < 1) throw ConfigError("filter widths must be positive");
  }
  const size_t d = embeddings_->dimension();
  const size_t f = static_cast<size_t>(config_.filters_per_width);
  size_t offset = 0;
  for (int w : config_.widths) {
    const size_t weights = f * static_cast<size_t>(w) * d;
    groups_.push_back({"conv" + std::to_string(w) + ".weight", offset, weights});
    offset += weights;
    groups_.push_back({"conv" + std::to_string(w) + ".bias", offset, f});
    offset += f;
  }
  const size_t features = f * config_.widths.size();
  groups_.push_back({"head.weight", offset, features});
  offset += features;
  groups_.push_back({"head.bias", offset, 1});
  offset += 1;
  params_.assign(offset, 0.0);
}

void SentenceComplexityModel::initialize(double output_bias) {
  Rng rng(config_.seed);
  const size_t d = embeddings_->dimension();
  for (size_t g = 0; g < config_.widths.size(); ++g) {
    const double fan_in = static_cast<double>(config_.widths[g]) * d;
    const double stddev = std::sqrt(2.0 / fan_in);
    const auto& wg = groups_[2 * g];
    for (size_t i = 0; i < wg.size; ++i) params_[wg.offset + i] = rng.normal(0.0, stddev);
    const auto& bg = groups_[2 * g + 1];
    for (size_t i = 0; i < bg.size; ++i) params_[bg.offset + i] = 0.01;
  }
  const auto& head = groups_[groups_.size() - 2];
  const double head_std = 1.0 / std::sqrt(static_cast<double>(head.size));
  for (size_t i = 0; i < head.size; ++i) {
    params_[head.offset + i] = rng.normal(0.0, head_std);
  }
  params_[head_bias_offset()] = output_bias;
}

std::vector<std::vector<double>> SentenceComplexityModel::embed(
    std::span<const std::string> tokens) const {
  std::vector<std::vector<double>> x;
  for (const auto& t : tokens) {
    if (t == kPadToken) continue;
    const auto v = embeddings_->lookup(t);
    x.emplace_back(v.begin(), v.end());
  }
  if (x.empty()) throw DataError("sentence complexity: empty sentence");
  const size_t widest =
      static_cast<size_t>(*std::max_element(config_.widths.begin(), config_.widths.end()));
  while (x.size() < widest) x.emplace_back(embeddings_->dimension(), 0.0);
  return x;
}

double SentenceComplexityModel::forward_impl(
    const std::vector<std::vector<double>>& x, Activation* act) const {
  const size_t d = embeddings_->dimension();
  const size_t f = static_cast<size_t>(config_.filters_per_width);
  const size_t len = x.size();
  const size_t features = f * config_.widths.size();
  std::vector<double> pooled(features, 0.0);
  if (act) {
    act->pooled.assign(features, 0.0);
    act->argmax.assign(features, 0);
    act->active.assign(features, false);
  }
  for (size_t g = 0; g < config_.widths.size(); ++g) {
    const size_t w = static_cast<size_t>(config_.widths[g]);
    const double* weight = params_.data() + conv_weight_offset(g);
    const double* bias = params_.data() + conv_bias_offset(g);
    for (size_t k = 0; k < f; ++k) {
      const double* filter = weight + k * w * d;
      double best = -HUGE_VAL;
      size_t best_pos = 0;
      for (size_t p = 0; p + w <= len; ++p) {
        double a = bias[k];
        for (size_t r = 0; r < w; ++r) {
          const double* row = filter + r * d;
          const auto& xv = x[p + r];
          for (size_t j = 0; j < d; ++j) a += row[j] * xv[j];
        }
        if (a > best) {
          best = a;
          best_pos = p;
        }
      }
      const size_t idx = g * f + k;
      pooled[idx] = std::max(best, 0.0);
      if (act) {
        act->pooled[idx] = pooled[idx];
        act->argmax[idx] = best_pos;
        act->active[idx] = best > 0.0;
      }
    }
  }
  const double* head = params_.data() + head_weight_offset();
  double out = params_[head_bias_offset()];
  for (size_t i = 0; i < features; ++i) out += head[i] * pooled[i];
  return out;
}

double SentenceComplexityModel::forward(std::span<const std::string> tokens) const {
  return forward_impl(embed(tokens), nullptr);
}

double SentenceComplexityModel::loss_and_gradient(
    std::span<const LabeledSentence> batch, std::vector<double>& gradient) const {
  gradient.assign(params_.size(), 0.0);
  if (batch.empty()) return 0.0;
  const size_t d = embeddings_->dimension();
  const size_t f = static_cast<size_t>(config_.filters_per_width);
  const double scale = 1.0 / static_cast<double>(batch.size());
  const double* head = params_.data() + head_weight_offset();
  double loss = 0.0;
  Activation act;
  for (const auto& item : batch) {
    const auto x = embed(item.tokens);
    const double out = forward_impl(x, &act);
    const double err = out - item.level;
    loss += err * err * scale;
    const double dout = 2.0 * err * scale;

    gradient[head_bias_offset()] += dout;
    double* dhead = gradient.data() + head_weight_offset();
    for (size_t i = 0; i < act.pooled.size(); ++i) {
      dhead[i] += dout * act.pooled[i];
    }
    for (size_t g = 0; g < config_.widths.size(); ++g) {
      const size_t w = static_cast<size_t>(config_.widths[g]);
      double* dweight = gradient.data() + conv_weight_offset(g);
      double* dbias = gradient.data() + conv_bias_offset(g);
      for (size_t k = 0; k < f; ++k) {
        const size_t idx = g * f + k;
        if (!act.active[idx]) continue;
        const double da = dout * head[idx];
        dbias[k] += da;
        double* dfilter = dweight + k * w * d;
        const size_t p = act.argmax[idx];
        for (size_t r = 0; r < w; ++r) {
          const auto& xv = x[p + r];
          double* drow = dfilter + r * d;
          for (size_t j = 0; j < d; ++j) drow[j] += da * xv[j];
        }
      }
    }
  }
  return loss;
}

std::string SentenceComplexityModel::serialize() const {
  std::ostringstream out;
  out << kCnnHeader << '\n';
  out << "dimension " << embeddings_->dimension() << '\n';
  out << "widths";
  for (int w : config_.widths) out << ' ' << w;
  out << '\n';
  out << "filters " << config_.filters_per_width << '\n';
  out << "final_loss " << io::format_double(final_loss_) << '\n';
  for (const auto& g : groups_) {
    out << g.name;
    for (size_t i = 0; i < g.size; ++i) {
      out << ' ' << io::format_double(params_[g.offset + i]);
    }
    out << '\n';
  }
  return out.str();
}

SentenceComplexityModel SentenceComplexityModel::deserialize(
    std::string_view text, std::shared_ptr<const EmbeddingTable> embeddings) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCnnHeader) {
    throw DataError("not a sentence CNN checkpoint");
  }
  std::map<std::string, std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = io::split_whitespace(line);
    const std::string key = fields[0];
    fields.erase(fields.begin());
    rows[key] = std::move(fields);
  }
  auto row = [&](const std::string& key) -> const std::vector<std::string>& {
    auto it = rows.find(key);
    if (it == rows.end()) throw DataError("sentence CNN checkpoint lacks '" + key + "'");
    return it->second;
  };
  if (static_cast<size_t>(io::parse_int(row("dimension").at(0))) !=
      embeddings->dimension()) {
    throw DataError("sentence CNN checkpoint: embedding dimension mismatch");
  }
  CnnConfig config;
  config.widths.clear();
  for (const auto& w : row("widths")) config.widths.push_back(static_cast<int>(io::parse_int(w)));
  config.filters_per_width = static_cast<int>(io::parse_int(row("filters").at(0)));
  SentenceComplexityModel model(std::move(embeddings), config);
  model.final_loss_ = io::parse_double(row("final_loss").at(0));
  for (const auto& g : model.groups_) {
    const auto& values = row(g.name);
    if (values.size() != g.size) {
      throw DataError("sentence CNN checkpoint: '" + g.name + "' has wrong size");
    }
    for (size_t i = 0; i < g.size; ++i) {
      model.params_[g.offset + i] = io::parse_double(values[i]);
    }
  }
  return model;
}

SentenceComplexityModel fit_sentence_cnn(
    std::span<const LabeledSentence> sentences,
    std::shared_ptr<const EmbeddingTable> embeddings, const CnnConfig& config) {
  if (sentences.size() < 10) {
    throw DataError("sentence CNN needs at least 10 labeled sentences");
  }
  if (config.epochs < 1 || config.batch_size < 1 || !(config.learning_rate > 0.0)) {
    throw ConfigError("sentence CNN: epochs, batch size and learning rate must be positive");
  }
  SentenceComplexityModel model(std::move(embeddings), config);
  double mean_level = 0.0;
  for (const auto& s : sentences) mean_level += s.level;
  mean_level /= static_cast<double>(sentences.size());
  model.initialize(mean_level);

  std::vector<LabeledSentence> data(sentences.begin(), sentences.end());
  Rng rng(mix64(config.seed));
  detail::Adam adam(model.parameters().size(), config.learning_rate);
  std::vector<double> gradient;
  double epoch_loss = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<LabeledSentence>(data));
    epoch_loss = 0.0;
    for (size_t start = 0; start < data.size(); start += config.batch_size) {
      const size_t end = std::min(data.size(), start + config.batch_size);
      std::span<const LabeledSentence> batch(data.data() + start, end - start);
      const double loss = model.loss_and_gradient(batch, gradient);
      if (!std::isfinite(loss)) {
        throw NumericError("sentence CNN: non-finite loss at epoch " +
                           std::to_string(epoch) + ", batch starting at " +
                           std::to_string(start));
      }
      epoch_loss += loss * static_cast<double>(batch.size());
      adam.step(model.parameters(), gradient);
    }
    epoch_loss /= static_cast<double>(data.size());
  }
  model.set_final_training_loss(epoch_loss);
  return model;
}

double predict_sentence_complexity(const SentenceComplexityModel& model,
                                   std::span<const std::string> sentence) {
  return clamp_complexity(model.forward(sentence));
}

}  // namespace simplify
