#include "simplify/toy_scorer.h"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <sstream>

#include "adam.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/rng.h"

namespace simplify {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstMatMap = Eigen::Map<const RowMatrix>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

constexpr std::string_view kHeader = "simplify-toy-scorer v1";

void check_config(const ToyScorerConfig& c) {
  if (c.embedding_dim < 1 || c.hidden_dim < 1) {
    throw ConfigError("toy scorer dimensions must be >= 1");
  }
  if (c.epochs < 0 || c.batch_size < 1) {
    throw ConfigError("toy scorer needs epochs >= 0 and batch_size >= 1");
  }
  if (!(c.learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
}

}  // namespace

ToyScorer::ToyScorer(Vocabulary vocab, const ToyScorerConfig& config)
    : vocab_(std::move(vocab)), config_(config) {
  check_config(config_);
  params_.assign(b2_offset() + vocab_.size(), 0.0);
}

void ToyScorer::initialize(uint64_t seed) {
  Rng rng(seed);
  const double embed_sd = 0.1;
  const double w1_sd = 1.0 / std::sqrt(2.0 * static_cast<double>(d()));
  const double w2_sd = 1.0 / std::sqrt(static_cast<double>(h()));
  for (size_t i = 0; i < w1_offset(); ++i) params_[i] = rng.normal(0.0, embed_sd);
  for (size_t i = w1_offset(); i < b1_offset(); ++i) params_[i] = rng.normal(0.0, w1_sd);
  for (size_t i = b1_offset(); i < w2_offset(); ++i) params_[i] = 0.0;
  for (size_t i = w2_offset(); i < b2_offset(); ++i) params_[i] = rng.normal(0.0, w2_sd);
  for (size_t i = b2_offset(); i < params_.size(); ++i) params_[i] = 0.0;
}

void ToyScorer::set_output_shift(std::vector<double> shift) {
  if (!shift.empty() && shift.size() != vocab_.size()) {
    throw ConfigError("output shift size does not match the vocabulary");
  }
  shift_ = std::move(shift);
}

std::vector<double> ToyScorer::source_vector(std::span<const int> source) const {
  std::vector<double> out(d(), 0.0);
  if (source.empty()) return out;
  ConstMatMap emb(params_.data(), static_cast<long>(vocab_.size()), static_cast<long>(d()));
  VecMap v(out.data(), static_cast<long>(d()));
  for (int id : source) v += emb.row(id).transpose();
  v /= static_cast<double>(source.size());
  return out;
}

std::vector<double> ToyScorer::logits(std::span<const double> source_vec,
                                      int previous,
                                      std::vector<double>& hidden) const {
  const long V = static_cast<long>(vocab_.size());
  const long D = static_cast<long>(d());
  const long H = static_cast<long>(h());
  ConstMatMap emb(params_.data(), V, D);
  ConstMatMap w1(params_.data() + w1_offset(), H, 2 * D);
  ConstVecMap b1(params_.data() + b1_offset(), H);
  ConstMatMap w2(params_.data() + w2_offset(), V, H);
  ConstVecMap b2(params_.data() + b2_offset(), V);

  Eigen::VectorXd x(2 * D);
  x.head(D) = emb.row(previous).transpose();
  x.tail(D) = ConstVecMap(source_vec.data(), D);
  hidden.resize(static_cast<size_t>(H));
  VecMap hv(hidden.data(), H);
  hv = (w1 * x + b1).array().tanh().matrix();
  std::vector<double> out(static_cast<size_t>(V));
  VecMap(out.data(), V) = w2 * hv + b2;
  return out;
}

std::vector<double> ToyScorer::log_probs(std::span<const int> source,
                                         std::span<const int> prefix) const {
  const std::vector<double> src = source_vector(source);
  const int previous = prefix.empty() ? Vocabulary::kBos : prefix.back();
  std::vector<double> hidden;
  std::vector<double> z = logits(src, previous, hidden);
  if (!shift_.empty()) {
    for (size_t v = 0; v < z.size(); ++v) z[v] += shift_[v];
  }
  return log_softmax(z);
}

double ToyScorer::loss_and_gradient(std::span<const ToyExample> batch,
                                    LossMode mode, const VocabWeights* weights,
                                    std::vector<double>& gradient) const {
  if (mode == LossMode::kWeighted &&
      (weights == nullptr || weights->size() != vocab_.size())) {
    throw ConfigError("weighted loss needs weights aligned with the vocabulary");
  }
  const long V = static_cast<long>(vocab_.size());
  const long D = static_cast<long>(d());
  const long H = static_cast<long>(h());
  gradient.assign(params_.size(), 0.0);
  ConstMatMap w1(params_.data() + w1_offset(), H, 2 * D);
  ConstMatMap w2(params_.data() + w2_offset(), V, H);
  MatMap g_emb(gradient.data(), V, D);
  MatMap g_w1(gradient.data() + w1_offset(), H, 2 * D);
  VecMap g_b1(gradient.data() + b1_offset(), H);
  MatMap g_w2(gradient.data() + w2_offset(), V, H);
  VecMap g_b2(gradient.data() + b2_offset(), V);
  ConstMatMap emb(params_.data(), V, D);

  double total = 0.0;
  size_t count = 0;
  std::vector<double> hidden;
  for (const ToyExample& ex : batch) {
    const std::vector<double> src = source_vector(ex.source);
    Eigen::VectorXd g_src = Eigen::VectorXd::Zero(D);
    int previous = Vocabulary::kBos;
    for (int target : ex.target) {
      const std::vector<double> z = logits(src, previous, hidden);
      const LossResult r =
          mode == LossMode::kWeighted
              ? weighted_cross_entropy(z, static_cast<size_t>(target), *weights)
              : cross_entropy(z, static_cast<size_t>(target));
      total += r.loss;
      ++count;
      ConstVecMap gz(r.gradient_wrt_logits.data(), V);
      ConstVecMap hv(hidden.data(), H);
      g_w2 += gz * hv.transpose();
      g_b2 += gz;
      const Eigen::VectorXd dh = w2.transpose() * gz;
      const Eigen::VectorXd da = dh.array() * (1.0 - hv.array().square());
      Eigen::VectorXd x(2 * D);
      x.head(D) = emb.row(previous).transpose();
      x.tail(D) = ConstVecMap(src.data(), D);
      g_w1 += da * x.transpose();
      g_b1 += da;
      const Eigen::VectorXd dx = w1.transpose() * da;
      g_emb.row(previous) += dx.head(D).transpose();
      g_src += dx.tail(D);
      previous = target;
    }
    if (!ex.source.empty()) {
      const Eigen::VectorXd share = g_src / static_cast<double>(ex.source.size());
      for (int id : ex.source) g_emb.row(id) += share.transpose();
    }
  }
  if (count == 0) return 0.0;
  const double scale = 1.0 / static_cast<double>(count);
  for (double& g : gradient) g *= scale;
  return total * scale;
}

std::string ToyScorer::serialize() const {
  std::ostringstream out;
  out << kHeader << '\n';
  out << "embedding_dim " << config_.embedding_dim << '\n';
  out << "hidden_dim " << config_.hidden_dim << '\n';
  out << "vocab " << vocab_.size() << '\n' << vocab_.serialize();
  out << "params " << params_.size() << '\n';
  for (double p : params_) out << io::format_double(p) << '\n';
  out << "shift " << shift_.size() << '\n';
  for (double s : shift_) out << io::format_double(s) << '\n';
  return out.str();
}

ToyScorer ToyScorer::deserialize(std::string_view text) {
  const auto lines = io::split(text, '\n');
  size_t pos = 0;
  auto next = [&]() -> std::string_view {
    if (pos >= lines.size()) throw DataError("truncated toy scorer dump");
    return lines[pos++];
  };
  auto field = [&](std::string_view name) {
    const auto parts = io::split_whitespace(next());
    if (parts.size() != 2 || parts[0] != name) {
      throw DataError("toy scorer dump: expected '" + std::string(name) + "'");
    }
    return io::parse_int(parts[1]);
  };
  if (next() != kHeader) throw DataError("not a toy scorer dump");
  ToyScorerConfig config;
  config.embedding_dim = static_cast<int>(field("embedding_dim"));
  config.hidden_dim = static_cast<int>(field("hidden_dim"));
  const auto vocab_size = field("vocab");
  std::string vocab_text;
  for (long long i = 0; i < vocab_size; ++i) {
    vocab_text += next();
    vocab_text += '\n';
  }
  ToyScorer scorer(Vocabulary::deserialize(vocab_text), config);
  const auto n = field("params");
  if (static_cast<size_t>(n) != scorer.params_.size()) {
    throw DataError("toy scorer dump has the wrong parameter count");
  }
  for (auto& p : scorer.params_) p = io::parse_double(next());
  std::vector<double> shift(static_cast<size_t>(field("shift")));
  for (auto& s : shift) s = io::parse_double(next());
  scorer.set_output_shift(std::move(shift));
  return scorer;
}

std::vector<ToyExample> make_examples(std::span<const AlignedPair> pairs,
                                      const Vocabulary& vocab) {
  std::vector<ToyExample> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    ToyExample ex;
    ex.source = vocab.encode(p.complex_sentence);
    ex.target = vocab.encode(p.simple_sentence);
    ex.target.push_back(Vocabulary::kEos);
    out.push_back(std::move(ex));
  }
  return out;
}

ToyScorer train_toy_scorer(std::span<const AlignedPair> pairs,
                           const Vocabulary& vocab, LossMode mode,
                           const VocabWeights* weights,
                           const ToyScorerConfig& config) {
  if (pairs.empty()) throw DataError("toy scorer needs at least one training pair");
  if (mode == LossMode::kWeighted) {
    if (weights == nullptr || weights->vocab != vocab.tokens()) {
      throw ConfigError("weighted loss needs weights aligned with the vocabulary");
    }
  }
  ToyScorer scorer(vocab, config);
  scorer.initialize(config.seed);
  std::vector<ToyExample> examples = make_examples(pairs, vocab);
  detail::Adam adam(scorer.parameters().size(), config.learning_rate);
  Rng rng(mix64(config.seed));
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> gradient;
  std::vector<ToyExample> batch;
  const size_t bs = static_cast<size_t>(config.batch_size);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<size_t>(order));
    for (size_t start = 0; start < order.size(); start += bs) {
      batch.clear();
      for (size_t i = start; i < std::min(order.size(), start + bs); ++i) {
        batch.push_back(examples[order[i]]);
      }
      const double loss = scorer.loss_and_gradient(batch, mode, weights, gradient);
      if (!std::isfinite(loss)) {
        throw NumericError("toy scorer loss became non-finite at epoch " +
                           std::to_string(epoch + 1));
      }
      adam.step(scorer.parameters(), gradient);
    }
  }
  if (mode == LossMode::kWeighted && config.reweight_at_inference) {
    scorer.set_output_shift(weights->log_weight);
  }
  return scorer;
}

}  // namespace simplify
