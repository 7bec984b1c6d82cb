#include "simplify/complexity.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simplify/error.h"
#include "simplify/io.h"

namespace simplify {
namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

std::vector<double> parse_doubles(const std::vector<std::string>& fields,
                                  size_t from) {
  std::vector<double> out;
  for (size_t i = from; i < fields.size(); ++i) {
    out.push_back(io::parse_double(fields[i]));
  }
  return out;
}

std::string format_row(std::string_view key, std::span<const double> values) {
  std::string out(key);
  for (double v : values) {
    out += ' ';
    out += io::format_double(v);
  }
  out += '\n';
  return out;
}

constexpr std::string_view kLinearHeader = "simplify-linear-model v1";

}  // namespace

double clamp_complexity(double value) {
  return std::clamp(value, kMinComplexity, kMaxComplexity);
}

int count_syllables(std::string_view word) {
  std::string w = to_lower(word);
  if (w.empty()) return 1;
  for (char c : w) {
    if (c < 'a' || c > 'z') return 1;
  }
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const size_t n = w.size();
  if (n >= 2 && w[n - 1] == 'e' && !is_vowel(w[n - 2]) && groups > 1) {
    --groups;
  }
  return std::max(groups, 1);
}

int utf8_length(std::string_view word) {
  int n = 0;
  for (unsigned char c : word) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<double> WordFeatures::as_vector() const {
  std::vector<double> out;
  out.reserve(3 + embedding.size());
  out.push_back(length);
  out.push_back(syllables);
  out.push_back(log_frequency);
  out.insert(out.end(), embedding.begin(), embedding.end());
  return out;
}

WordFeatures extract_word_features(std::string_view word, int64_t frequency,
                                   const EmbeddingTable& embeddings) {
  WordFeatures f;
  f.length = std::max(1, utf8_length(word));
  f.syllables = count_syllables(word);
  f.log_frequency = std::log(static_cast<double>(std::max<int64_t>(frequency, 0)) + 1.0);
  const auto e = embeddings.lookup(word);
  f.embedding.assign(e.begin(), e.end());
  return f;
}

WordFeatures extract_word_features(std::string_view word,
                                   const WordLevelCounts& counts,
                                   const EmbeddingTable& embeddings) {
  return extract_word_features(word, counts.total(word), embeddings);
}

LinearModel::LinearModel(std::vector<double> weights, double bias,
                         std::vector<double> feature_means,
                         std::vector<double> feature_scales,
                         double ridge_lambda)
    : weights_(std::move(weights)),
      bias_(bias),
      means_(std::move(feature_means)),
      scales_(std::move(feature_scales)),
      lambda_(ridge_lambda) {
  if (means_.size() != weights_.size() || scales_.size() != weights_.size()) {
    throw DataError("linear model: parameter vectors differ in length");
  }
  for (double s : scales_) {
    if (!(s > 0.0)) throw DataError("linear model: feature scale must be > 0");
  }
  if (lambda_ < 0.0) throw DataError("linear model: lambda must be >= 0");
}

std::vector<double> LinearModel::raw_weights() const {
  std::vector<double> out(weights_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = weights_[i] / scales_[i];
  return out;
}

double LinearModel::raw_bias() const {
  double b = bias_;
  for (size_t i = 0; i < weights_.size(); ++i) {
    b -= weights_[i] * means_[i] / scales_[i];
  }
  return b;
}

double LinearModel::predict_unclamped(std::span<const double> x) const {
  if (x.size() != weights_.size()) {
    throw DataError("linear model expects " + std::to_string(weights_.size()) +
                    " features, got " + std::to_string(x.size()));
  }
  double y = bias_;
  for (size_t i = 0; i < x.size(); ++i) {
    y += weights_[i] * (x[i] - means_[i]) / scales_[i];
  }
  return y;
}

double LinearModel::predict(std::span<const double> x) const {
  return clamp_complexity(predict_unclamped(x));
}

std::string LinearModel::serialize() const {
  std::string out(kLinearHeader);
  out += '\n';
  out += "dimension " + std::to_string(weights_.size()) + '\n';
  out += format_row("lambda", std::span<const double>(&lambda_, 1));
  out += format_row("bias", std::span<const double>(&bias_, 1));
  out += format_row("means", means_);
  out += format_row("scales", scales_);
  out += format_row("weights", weights_);
  return out;
}

LinearModel LinearModel::deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kLinearHeader) {
    throw DataError("not a linear model checkpoint");
  }
  std::map<std::string, std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = io::split_whitespace(line);
    rows[fields[0]] = parse_doubles(fields, 1);
  }
  for (const char* key : {"dimension", "lambda", "bias", "means", "scales", "weights"}) {
    if (!rows.contains(key)) {
      throw DataError(std::string("linear model checkpoint lacks '") + key + "'");
    }
  }
  const auto dim = static_cast<size_t>(rows["dimension"].at(0));
  if (rows["weights"].size() != dim) {
    throw DataError("linear model checkpoint: dimension mismatch");
  }
  return LinearModel(rows["weights"], rows["bias"].at(0), rows["means"],
                     rows["scales"], rows["lambda"].at(0));
}

LinearModel fit_ridge_regression(const Eigen::MatrixXd& features,
                                 std::span<const double> labels,
                                 double lambda) {
  const auto n = features.rows();
  const auto d = features.cols();
  if (n < 2) throw DataError("ridge regression needs at least 2 rows");
  if (static_cast<size_t>(n) != labels.size()) {
    throw DataError("ridge regression: feature rows and labels differ");
  }
  if (lambda < 0.0) throw ConfigError("ridge lambda must be >= 0");
  if (!features.allFinite()) throw DataError("ridge regression: non-finite feature");
  for (double y : labels) {
    if (!std::isfinite(y)) throw DataError("ridge regression: non-finite label");
  }

  std::vector<double> means(d), scales(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mean = features.col(j).mean();
    const double var = (features.col(j).array() - mean).square().mean();
    means[j] = mean;
    scales[j] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  LinearModel shape(std::vector<double>(d, 0.0), 0.0, means, scales, lambda);
  const Eigen::MatrixXd z = standardize(shape, features);

  const Eigen::Map<const Eigen::VectorXd> y(labels.data(), n);
  const double y_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - y_mean;

  Eigen::MatrixXd gram = z.transpose() * z;
  gram.diagonal().array() += lambda;
  const Eigen::VectorXd rhs = z.transpose() * yc;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
  qr.setThreshold(1e-12);
  if (qr.rank() < d) {
    throw NumericError(
        "ridge regression system is singular; use a ridge lambda > 0");
  }
  const Eigen::VectorXd w = qr.solve(rhs);
  if (!w.allFinite()) throw NumericError("ridge regression produced non-finite weights");

  return LinearModel(std::vector<double>(w.data(), w.data() + d), y_mean,
                     std::move(means), std::move(scales), lambda);
}

Eigen::MatrixXd standardize(const LinearModel& model,
                            const Eigen::MatrixXd& features) {
  Eigen::MatrixXd z(features.rows(), features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    z.col(j) = (features.col(j).array() - model.feature_means()[j]) /
               model.feature_scales()[j];
  }
  return z;
}

double predict_word_complexity(const LinearModel& model,
                               const WordFeatures& features) {
  return model.predict(features.as_vector());
}

double baseline_feature(BaselineKind kind, const WordFeatures& features) {
  return kind == BaselineKind::kLength ? features.length
                                       : features.log_frequency;
}

BaselineStats fit_baseline(BaselineKind kind,
                           std::span<const WordFeatures> training_words) {
  if (training_words.empty()) throw DataError("baseline needs training words");
  BaselineStats stats{kind, HUGE_VAL, -HUGE_VAL};
  for (const auto& w : training_words) {
    const double v = baseline_feature(kind, w);
    stats.min = std::min(stats.min, v);
    stats.max = std::max(stats.max, v);
  }
  return stats;
}

double minmax_to_levels(double value, double min, double max) {
  if (max == min) return 2.0;
  return clamp_complexity(kMaxComplexity * (value - min) / (max - min));
}

double baseline_predict(const BaselineStats& stats,
                        const WordFeatures& features) {
  return minmax_to_levels(baseline_feature(stats.kind, features), stats.min,
                          stats.max);
}

RegressionReport evaluate_predictor(std::span<const double> predictions,
                                    std::span<const double> gold) {
  if (predictions.size() != gold.size()) {
    throw DataError("evaluate_predictor: length mismatch");
  }
  if (gold.size() < 2) throw DataError("evaluate_predictor: need at least 2 items");
  const double n = static_cast<double>(gold.size());
  double mp = 0.0, mg = 0.0;
  for (size_t i = 0; i < gold.size(); ++i) {
    mp += predictions[i];
    mg += gold[i];
  }
  mp /= n;
  mg /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0, se = 0.0;
  for (size_t i = 0; i < gold.size(); ++i) {
    const double dp = predictions[i] - mp;
    const double dg = gold[i] - mg;
    sxy += dp * dg;
    sxx += dp * dp;
    syy += dg * dg;
    se += (predictions[i] - gold[i]) * (predictions[i] - gold[i]);
  }
  if (syy == 0.0) throw DataError("evaluate_predictor: gold labels have zero variance");
  RegressionReport report;
  report.pearson = sxx == 0.0 ? 0.0 : std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  report.mse = se / n;
  return report;
}

std::string format_lexicon(const std::map<std::string, double>& scores) {
  std::string out;
  for (const auto& [word, score] : scores) {
    out += word + '\t' + io::format_double(score) + '\n';
  }
  return out;
}

std::map<std::string, double> parse_lexicon(
    const std::vector<std::string>& lines) {
  std::map<std::string, double> out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 2) {
      throw DataError("lexicon line " + std::to_string(i + 1) +
                      ": expected word<TAB>score");
    }
    out[std::string(fields[0])] = io::parse_double(fields[1]);
  }
  return out;
}

}  // namespace simplify
