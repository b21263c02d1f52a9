#include "ajam/demod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "ajam/channel.hpp"
#include "ajam/error.hpp"
#include "ajam/rng.hpp"

namespace ajam {

Dataset generate_dataset(const ConstellationSpec& spec, std::size_t per_class, double snr_db,
                         std::uint64_t seed) {
  if (per_class == 0) {
    throw InvalidArgument("per_class must be at least 1");
  }
  const double noise_power = std::isinf(snr_db) && snr_db > 0 ? 0.0 : db_to_ratio(-snr_db);
  const double sigma = std::sqrt(noise_power / 2.0);

  Rng rng(seed);
  Dataset data;
  data.snr_db = snr_db;
  data.seed = seed;
  data.inputs.reserve(per_class * spec.order());
  data.targets.reserve(per_class * spec.order());
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    for (std::size_t n = 0; n < per_class; ++n) {
      IQSample x = spec.point(s);
      if (sigma > 0.0) {
        x.i += sigma * rng.gaussian();
        x.q += sigma * rng.gaussian();
      }
      data.inputs.push_back(x);
      data.targets.push_back(s);
    }
  }
  // Fisher-Yates on our own bounded draw so the order is platform independent.
  for (std::size_t n = data.inputs.size(); n > 1; --n) {
    const std::size_t j = rng.below(n);
    std::swap(data.inputs[n - 1], data.inputs[j]);
    std::swap(data.targets[n - 1], data.targets[j]);
  }
  return data;
}

DemodModel::DemodModel(std::size_t order, std::size_t hidden, std::uint64_t seed_) {
  if (order < 2 || hidden == 0) {
    throw InvalidArgument("model needs at least 2 classes and 1 hidden unit");
  }
  seed = seed_;
  Rng rng(seed_);
  const auto init = [&](std::vector<double>& w, std::size_t n, std::size_t fan_in) {
    const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
    w.resize(n);
    for (auto& v : w) {
      v = (rng.uniform() - 0.5) * s;
    }
  };
  init(w1, hidden * 2, 2);
  init(b1, hidden, 2);
  init(w2, order * hidden, hidden);
  init(b2, order, hidden);
}

void DemodModel::hidden_layer(IQSample x, std::vector<double>& h) const {
  const std::size_t nh = hidden();
  h.resize(nh);
  for (std::size_t j = 0; j < nh; ++j) {
    h[j] = std::tanh(w1[2 * j] * x.i + w1[2 * j + 1] * x.q + b1[j]);
  }
}

std::vector<double> DemodModel::scores(IQSample x) const {
  std::vector<double> h;
  hidden_layer(x, h);
  const std::size_t nh = hidden();
  std::vector<double> z(b2);
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double* row = &w2[k * nh];
    for (std::size_t j = 0; j < nh; ++j) {
      z[k] += row[j] * h[j];
    }
  }
  return z;
}

SymbolIndex DemodModel::predict(IQSample x) const {
  const auto z = scores(x);
  // max_element keeps the first maximum, which is the lowest index.
  return static_cast<SymbolIndex>(std::max_element(z.begin(), z.end()) - z.begin());
}

namespace {

// -log softmax(z)[target], accurate when the softmax is saturated.
double cross_entropy(std::span<const double> z, SymbolIndex target) {
  const double zt = z[target];
  double rest = 0.0;
  const double zmax = *std::max_element(z.begin(), z.end());
  if (zmax == zt) {
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (k != target) {
        rest += std::exp(z[k] - zt);
      }
    }
    return std::log1p(rest);
  }
  for (double v : z) {
    rest += std::exp(v - zmax);
  }
  return zmax - zt + std::log(rest);
}

// d loss / d z = softmax(z) - onehot(target). The target entry is formed as the
// negated sum of the others so it keeps precision when p_target rounds to 1.
void softmax_delta(std::span<const double> z, SymbolIndex target, std::vector<double>& dz) {
  const double zmax = *std::max_element(z.begin(), z.end());
  dz.resize(z.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    dz[k] = std::exp(z[k] - zmax);
    sum += dz[k];
  }
  double others = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    dz[k] /= sum;
    if (k != target) {
      others += dz[k];
    }
  }
  dz[target] = -others;
}

}  // namespace

double DemodModel::loss(IQSample x, SymbolIndex target) const {
  return cross_entropy(scores(x), target);
}

IQSample DemodModel::input_gradient(IQSample x, SymbolIndex target) const {
  std::vector<double> h;
  hidden_layer(x, h);
  const std::size_t nh = hidden();
  const auto z = scores(x);
  std::vector<double> dz;
  softmax_delta(z, target, dz);
  IQSample g;
  for (std::size_t j = 0; j < nh; ++j) {
    double dh = 0.0;
    for (std::size_t k = 0; k < dz.size(); ++k) {
      dh += w2[k * nh + j] * dz[k];
    }
    const double da = dh * (1.0 - h[j] * h[j]);
    g.i += w1[2 * j] * da;
    g.q += w1[2 * j + 1] * da;
  }
  return g;
}

double mean_loss(const DemodModel& model, const Dataset& data) {
  double acc = 0.0;
  for (std::size_t n = 0; n < data.inputs.size(); ++n) {
    acc += model.loss(data.inputs[n], data.targets[n]);
  }
  return acc / static_cast<double>(data.inputs.size());
}

double accuracy(const DemodModel& model, const Dataset& data) {
  std::size_t ok = 0;
  for (std::size_t n = 0; n < data.inputs.size(); ++n) {
    ok += model.predict(data.inputs[n]) == data.targets[n] ? 1 : 0;
  }
  return static_cast<double>(ok) / static_cast<double>(data.inputs.size());
}

namespace {

struct AdamState {
  std::vector<double> m, v;
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

}  // namespace

DemodModel train(const Dataset& data, std::size_t order, const TrainConfig& cfg) {
  if (data.inputs.empty() || data.inputs.size() != data.targets.size()) {
    throw InvalidArgument("training set must be non-empty with one target per input");
  }
  std::vector<std::size_t> counts(order, 0);
  for (SymbolIndex t : data.targets) {
    if (t >= order) {
      throw InvalidArgument("target index out of range for the model order");
    }
    ++counts[t];
  }
  if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) {
    throw InvalidArgument("training set is not class balanced");
  }
  if (!(cfg.learning_rate > 0.0) || cfg.epochs == 0) {
    throw InvalidArgument("learning rate must be positive and epochs at least 1");
  }

  DemodModel model(order, cfg.hidden, cfg.seed);
  model.epochs = cfg.epochs;
  model.learning_rate = cfg.learning_rate;
  model.train_snr_db = data.snr_db;
  model.optimizer = cfg.optimizer == Optimizer::kAdam ? "adam" : "gd";

  const std::size_t nh = cfg.hidden;
  const double inv_n = 1.0 / static_cast<double>(data.inputs.size());
  std::vector<double> gw1(model.w1.size()), gb1(model.b1.size()), gw2(model.w2.size()),
      gb2(model.b2.size());
  std::vector<double> h, z(order), dz, da(nh);

  std::vector<std::vector<double>*> params{&model.w1, &model.b1, &model.w2, &model.b2};
  std::vector<std::vector<double>*> grads{&gw1, &gb1, &gw2, &gb2};
  std::vector<AdamState> adam;
  for (auto* p : params) {
    adam.emplace_back(p->size());
  }
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (auto* g : grads) {
      std::fill(g->begin(), g->end(), 0.0);
    }
    double total = 0.0;
    for (std::size_t n = 0; n < data.inputs.size(); ++n) {
      const IQSample x = data.inputs[n];
      const SymbolIndex y = data.targets[n];
      h.resize(nh);
      for (std::size_t j = 0; j < nh; ++j) {
        h[j] = std::tanh(model.w1[2 * j] * x.i + model.w1[2 * j + 1] * x.q + model.b1[j]);
      }
      for (std::size_t k = 0; k < order; ++k) {
        double acc = model.b2[k];
        for (std::size_t j = 0; j < nh; ++j) {
          acc += model.w2[k * nh + j] * h[j];
        }
        z[k] = acc;
      }
      total += cross_entropy(z, y);
      softmax_delta(z, y, dz);
      std::fill(da.begin(), da.end(), 0.0);
      for (std::size_t k = 0; k < order; ++k) {
        gb2[k] += dz[k];
        for (std::size_t j = 0; j < nh; ++j) {
          gw2[k * nh + j] += dz[k] * h[j];
          da[j] += model.w2[k * nh + j] * dz[k];
        }
      }
      for (std::size_t j = 0; j < nh; ++j) {
        const double d = da[j] * (1.0 - h[j] * h[j]);
        gw1[2 * j] += d * x.i;
        gw1[2 * j + 1] += d * x.q;
        gb1[j] += d;
      }
    }
    if (!std::isfinite(total)) {
      throw TrainingDiverged("training loss became non-finite at epoch " + std::to_string(epoch));
    }
    const double t = static_cast<double>(epoch + 1);
    for (std::size_t p = 0; p < params.size(); ++p) {
      auto& w = *params[p];
      const auto& g = *grads[p];
      for (std::size_t k = 0; k < w.size(); ++k) {
        const double gk = g[k] * inv_n;
        if (cfg.optimizer == Optimizer::kAdam) {
          auto& st = adam[p];
          st.m[k] = kBeta1 * st.m[k] + (1.0 - kBeta1) * gk;
          st.v[k] = kBeta2 * st.v[k] + (1.0 - kBeta2) * gk * gk;
          const double mhat = st.m[k] / (1.0 - std::pow(kBeta1, t));
          const double vhat = st.v[k] / (1.0 - std::pow(kBeta2, t));
          w[k] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + kEps);
        } else {
          w[k] -= cfg.learning_rate * gk;
        }
      }
    }
  }
  for (auto* p : params) {
    if (!std::all_of(p->begin(), p->end(), [](double v) { return std::isfinite(v); })) {
      throw TrainingDiverged("training produced non-finite weights");
    }
  }
  return model;
}

SymbolIndex min_distance_demod(IQSample x, const ConstellationSpec& spec) {
  return nearest_point(x, spec);
}

namespace {

constexpr const char* kMagic = "AJDEMOD";
constexpr int kFormatVersion = 1;

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    throw FormatError("model file: bad number '" + tok + "'");
  }
  return v;
}

void write_vector(std::ostringstream& os, const char* name, const std::vector<double>& v) {
  os << name << ' ' << v.size();
  for (double x : v) {
    os << ' ' << hex(x);
  }
  os << '\n';
}

std::vector<double> read_vector(std::istringstream& is, const char* name, std::size_t expected) {
  std::string key;
  std::size_t n = 0;
  if (!(is >> key >> n) || key != name) {
    throw FormatError(std::string("model file: expected '") + name + "' record");
  }
  if (n != expected) {
    throw FormatError(std::string("model file: '") + name + "' has " + std::to_string(n) +
                      " values, expected " + std::to_string(expected));
  }
  std::vector<double> v(n);
  for (auto& x : v) {
    std::string tok;
    if (!(is >> tok)) {
      throw FormatError(std::string("model file: truncated '") + name + "' record");
    }
    x = parse_double(tok);
  }
  return v;
}

template <typename T>
T read_field(std::istringstream& is, const char* name) {
  std::string key;
  std::string tok;
  if (!(is >> key >> tok) || key != name) {
    throw FormatError(std::string("model file: expected '") + name + "' field");
  }
  if constexpr (std::is_same_v<T, double>) {
    return parse_double(tok);
  } else if constexpr (std::is_same_v<T, std::string>) {
    return tok;
  } else {
    char* end = nullptr;
    const auto v = std::strtoull(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') {
      throw FormatError(std::string("model file: bad integer for '") + name + "'");
    }
    return static_cast<T>(v);
  }
}

}  // namespace

std::string serialize_model(const DemodModel& model) {
  std::ostringstream os;
  os << kMagic << ' ' << kFormatVersion << '\n';
  os << "layers 2 " << model.hidden() << ' ' << model.order() << '\n';
  os << "activation tanh\n";
  os << "optimizer " << model.optimizer << '\n';
  os << "epochs " << model.epochs << '\n';
  os << "learning_rate " << hex(model.learning_rate) << '\n';
  os << "seed " << model.seed << '\n';
  os << "train_snr_db " << hex(model.train_snr_db) << '\n';
  write_vector(os, "w1", model.w1);
  write_vector(os, "b1", model.b1);
  write_vector(os, "w2", model.w2);
  write_vector(os, "b2", model.b2);
  os << "end\n";
  return os.str();
}

DemodModel parse_model(const std::string& text) {
  std::istringstream is(text);
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != kMagic) {
    throw FormatError("model file: missing AJDEMOD header");
  }
  if (version != kFormatVersion) {
    throw FormatError("model file: unsupported version " + std::to_string(version));
  }
  std::string key;
  std::size_t in = 0, nh = 0, m = 0;
  if (!(is >> key >> in >> nh >> m) || key != "layers" || in != 2 || nh == 0 || m < 2) {
    throw FormatError("model file: bad 'layers' record");
  }
  if (read_field<std::string>(is, "activation") != "tanh") {
    throw FormatError("model file: unsupported activation");
  }
  DemodModel model;
  model.optimizer = read_field<std::string>(is, "optimizer");
  model.epochs = read_field<std::size_t>(is, "epochs");
  model.learning_rate = read_field<double>(is, "learning_rate");
  model.seed = read_field<std::uint64_t>(is, "seed");
  model.train_snr_db = read_field<double>(is, "train_snr_db");
  model.w1 = read_vector(is, "w1", nh * 2);
  model.b1 = read_vector(is, "b1", nh);
  model.w2 = read_vector(is, "w2", m * nh);
  model.b2 = read_vector(is, "b2", m);
  if (!(is >> key) || key != "end") {
    throw FormatError("model file: missing 'end' marker");
  }
  return model;
}

void save_model(const DemodModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << serialize_model(model);
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

DemodModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace ajam
