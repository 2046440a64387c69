#include "spde/study_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace spde {

namespace {

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string &token, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw ConfigError("line " + std::to_string(line) + ": cannot parse '" + token + "'");
  }
  return v;
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string &s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace

ConfigDocument parse_config_text(const std::string &text) {
  ConfigDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = trim(strip_comment(raw));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty key or value");
    }
    if (doc.contains(key)) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    }
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw ConfigError("line " + std::to_string(line) + ": unterminated string");
      }
      doc[key] = value.substr(1, value.size() - 2);
    } else if (value == "true" || value == "false") {
      doc[key] = value == "true";
    } else if (value.front() == '[') {
      if (value.back() != ']') {
        throw ConfigError("line " + std::to_string(line) + ": unterminated array");
      }
      std::vector<double> items;
      std::istringstream list(value.substr(1, value.size() - 2));
      std::string item;
      while (std::getline(list, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        items.push_back(parse_number(item, line));
      }
      doc[key] = std::move(items);
    } else {
      doc[key] = parse_number(value, line);
    }
  }
  return doc;
}

namespace {

class Reader {
 public:
  explicit Reader(const ConfigDocument &doc) : doc_(doc) {}

  template <typename T>
  const T *get(const std::string &key) {
    used_.insert(key);
    const auto it = doc_.find(key);
    if (it == doc_.end()) return nullptr;
    const T *v = std::get_if<T>(&it->second);
    if (v == nullptr) throw ConfigError("key '" + key + "' has the wrong type");
    return v;
  }

  int integer(const std::string &key, int fallback) {
    const double *v = get<double>(key);
    if (v == nullptr) return fallback;
    if (*v != std::floor(*v)) throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<int>(*v);
  }

  double real(const std::string &key, double fallback) {
    const double *v = get<double>(key);
    return v == nullptr ? fallback : *v;
  }

  std::string text(const std::string &key, const std::string &fallback) {
    const std::string *v = get<std::string>(key);
    return v == nullptr ? fallback : *v;
  }

  std::vector<double> list(const std::string &key) {
    const auto *v = get<std::vector<double>>(key);
    return v == nullptr ? std::vector<double>{} : *v;
  }

  void reject_unknown() const {
    for (const auto &[key, value] : doc_) {
      if (!used_.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
  }

 private:
  const ConfigDocument &doc_;
  std::set<std::string> used_;
};

}  // namespace

StudyConfig study_config_from_document(const ConfigDocument &doc) {
  StudyConfig cfg;
  Reader r(doc);
  try {
    cfg.axis = parse_axis(r.text("axis", to_string(cfg.axis)));
    if (const auto *levels = r.get<std::vector<double>>("levels")) {
      cfg.levels.clear();
      for (double v : *levels) {
        if (v != std::floor(v)) throw ConfigError("levels must be integers");
        cfg.levels.push_back(static_cast<int>(v));
      }
    }
    cfg.scheme.cutoff = r.integer("N", cfg.scheme.cutoff);
    cfg.scheme.steps = r.integer("n", cfg.scheme.steps);
    cfg.scheme.horizon = r.real("T", cfg.scheme.horizon);
    cfg.scheme.sigma = r.real("sigma", cfg.scheme.sigma);
    cfg.scheme.oversample = r.real("oversample", cfg.scheme.oversample);
    cfg.scheme.drift = parse_drift_variant(r.text("drift_variant", "integrated"));
    cfg.scheme.nonlinearity =
        NonlinearitySpec::parse(r.text("nonlinearity", "zero"), r.list("nonlinearity_params"));
    cfg.scheme.initial =
        InitialProfile::parse(r.text("initial", "zero"), r.list("initial_params"));
    cfg.ref_cutoff = r.integer("N_ref", cfg.ref_cutoff);
    cfg.ref_steps = r.integer("n_ref", cfg.ref_steps);
    cfg.samples = r.integer("samples", cfg.samples);
    if (const double *seed = r.get<double>("seed")) {
      if (*seed < 0 || *seed != std::floor(*seed) || *seed > 9007199254740992.0) {
        throw ConfigError("seed must be a non-negative integer below 2^53 in config files");
      }
      cfg.seed = static_cast<std::uint64_t>(*seed);
    }
    cfg.output_dir = r.text("output_dir", cfg.output_dir.string());
    cfg.workers = r.integer("workers", cfg.workers);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  r.reject_unknown();
  cfg.validate();
  return cfg;
}

StudyConfig load_study_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return study_config_from_document(parse_config_text(text.str()));
}

void StudyConfig::validate() const {
  try {
    scheme.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (ref_cutoff < 1 || ref_steps < 1) throw ConfigError("reference levels must be >= 1");
  if (levels.empty()) throw ConfigError("level ladder is empty");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) throw ConfigError("level ladder must be strictly increasing");
  }
  if (levels.front() < 1) throw ConfigError("levels must be >= 1");
  if (axis == StudyAxis::temporal) {
    for (int n : levels) {
      if (ref_steps % n != 0 || n >= ref_steps) {
        throw ConfigError("temporal level " + std::to_string(n) +
                          " must be a proper divisor of n_ref");
      }
    }
    if (scheme.cutoff > ref_cutoff) throw ConfigError("N must not exceed N_ref");
  } else {
    if (levels.back() >= ref_cutoff) throw ConfigError("spatial levels must lie below N_ref");
    if (ref_steps % scheme.steps != 0) throw ConfigError("n must divide n_ref");
  }
}

SchemeConfig StudyConfig::level_config(int level) const {
  SchemeConfig c = scheme;
  if (axis == StudyAxis::temporal) {
    c.steps = level;
  } else {
    c.cutoff = level;
  }
  return c;
}

std::string StudyConfig::canonical() const {
  std::ostringstream out;
  out << "axis=" << to_string(axis) << ";levels=";
  for (std::size_t i = 0; i < levels.size(); ++i) out << (i ? "," : "") << levels[i];
  out << ";N=" << scheme.cutoff << ";n=" << scheme.steps << ";T=" << format_real(scheme.horizon)
      << ";sigma=" << format_real(scheme.sigma) << ";oversample=" << format_real(scheme.oversample)
      << ";G=" << scheme.nonlinearity.to_string() << ";u0=" << scheme.initial.to_string()
      << ";drift=" << to_string(scheme.drift) << ";N_ref=" << ref_cutoff << ";n_ref=" << ref_steps
      << ";samples=" << samples << ";seed=" << seed;
  return out.str();
}

std::string StudyConfig::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace spde
