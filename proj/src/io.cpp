#include "nucpath/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <vector>

namespace nucpath {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw IoError(fmt::format("line {}: cannot parse '{}' as a number", line, token));
  }
  return value;
}

LoadedImpulse make_loaded(Eigen::VectorXd v) {
  if (v.size() == 0) throw IoError("impulse response is empty");
  if (!v.allFinite()) throw IoError("impulse response has non-finite entries");
  const bool even = v.size() % 2 == 0;
  return LoadedImpulse{ImpulseResponse::padded(std::move(v)), even};
}

nlohmann::json complex_list(const std::vector<std::complex<double>>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : values) out.push_back({{"re", z.real()}, {"im", z.imag()}});
  return out;
}

std::vector<std::complex<double>> parse_complex_list(const nlohmann::json& j,
                                                     const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw IoError(fmt::format("system JSON needs an array '{}'", key));
  }
  std::vector<std::complex<double>> out;
  for (const auto& item : j.at(key)) {
    out.emplace_back(item.at("re").get<double>(), item.value("im", 0.0));
  }
  return out;
}

const char* mode_name(SubgradientMode mode) {
  return mode == SubgradientMode::zero_w ? "zero_w" : "dual_aligned";
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

LoadedImpulse parse_impulse_csv(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> values;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    if (token.find(',') != std::string::npos) {
      throw IoError(fmt::format("line {}: expected one coefficient per line", number));
    }
    values.push_back(parse_number(token, number));
  }
  return make_loaded(Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size())));
}

LoadedImpulse impulse_from_json(const nlohmann::json& j) {
  try {
    const auto values = j.at("values").get<std::vector<double>>();
    LoadedImpulse loaded = make_loaded(Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size())));
    if (j.contains("k_max")) {
      const auto k_max = j.at("k_max").get<long long>();
      if (k_max != loaded.g.k_max() && k_max != static_cast<long long>(values.size())) {
        throw IoError(fmt::format("k_max {} does not match {} values", k_max,
                                  values.size()));
      }
    }
    return loaded;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed impulse response JSON: ") + e.what());
  }
}

nlohmann::json impulse_to_json(const ImpulseResponse& g) {
  const auto& v = g.values();
  return {{"k_max", g.k_max()},
          {"values", std::vector<double>(v.data(), v.data() + v.size())}};
}

std::string impulse_to_csv(const ImpulseResponse& g) {
  std::string out;
  for (Eigen::Index k = 0; k < g.k_max(); ++k) {
    out += format_double(g[k]);
    out += '\n';
  }
  return out;
}

LoadedImpulse read_impulse(const std::filesystem::path& file) {
  if (file.extension() == ".json") return impulse_from_json(read_json(file));
  return parse_impulse_csv(read_text(file));
}

void write_impulse_csv(const std::filesystem::path& file, const ImpulseResponse& g) {
  write_text(file, impulse_to_csv(g));
}

void write_impulse_json(const std::filesystem::path& file, const ImpulseResponse& g) {
  write_json(file, impulse_to_json(g));
}

nlohmann::json system_to_json(const SystemSpec& spec) {
  return {{"poles", complex_list(spec.poles)},
          {"residues", complex_list(spec.residues)}};
}

SystemSpec system_from_json(const nlohmann::json& j) {
  SystemSpec spec;
  try {
    spec.poles = parse_complex_list(j, "poles");
    spec.residues = parse_complex_list(j, "residues");
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed system JSON: ") + e.what());
  }
  return spec;
}

void write_system_json(const std::filesystem::path& file, const SystemSpec& spec) {
  write_json(file, system_to_json(spec));
}

nlohmann::json path_to_json(const PathResult& path) {
  nlohmann::json sv = nlohmann::json::array();
  for (const auto& s : path.singular_values) {
    sv.push_back(std::vector<double>(s.data(), s.data() + s.size()));
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : path.samples) {
    samples.push_back({{"t", s.t}, {"f_approx", s.f_approx}, {"gap", s.gap},
                       {"segment", s.segment}});
  }
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& s : path.exact_solutions) iterations.push_back(s.iterations);
  const std::string mode = path.certificates.empty()
                               ? "none"
                               : mode_name(path.certificates.front().mode);
  return {
      {"epsilon", path.epsilon},
      {"t_max", path.t_max},
      {"m", path.m()},
      {"partial", path.partial},
      {"breakpoints", path.breakpoints},
      {"objectives", path.objectives()},
      {"iterations", iterations},
      {"singular_values", sv},
      {"samples", samples},
      {"bootstrap",
       {{"t_end", path.bootstrap_end},
        {"rule", "zero model on [0, t_end], gap = |g_o|^2 - max(0, |g_o| - t)^2"}}},
      {"subgradient", mode},
  };
}

std::string samples_to_csv(const PathResult& path) {
  std::string out = "t,f_approx,gap,f_lower,segment\n";
  for (const auto& s : path.samples) {
    out += fmt::format("{},{},{},{},{}\n", format_double(s.t), format_double(s.f_approx),
                       format_double(s.gap), format_double(s.f_approx - s.gap),
                       s.segment);
  }
  return out;
}

std::string singular_values_to_csv(const PathResult& path) {
  Eigen::Index width = 0;
  for (const auto& s : path.singular_values) width = std::max(width, s.size());
  std::string out = "index,t";
  for (Eigen::Index j = 1; j <= width; ++j) out += fmt::format(",sigma_{}", j);
  out += '\n';
  for (std::size_t i = 0; i < path.singular_values.size(); ++i) {
    out += fmt::format("{},{}", i + 1, format_double(path.breakpoints[i]));
    const auto& s = path.singular_values[i];
    for (Eigen::Index j = 0; j < width; ++j) {
      out += ',';
      out += j < s.size() ? format_double(s[j]) : std::string("0");
    }
    out += '\n';
  }
  return out;
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + file.string());
  return buffer.str();
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + file.string());
}

nlohmann::json read_json(const std::filesystem::path& file) {
  try {
    return nlohmann::json::parse(read_text(file));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(file.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& file, const nlohmann::json& j) {
  write_text(file, j.dump(2) + "\n");
}

}  // namespace nucpath
