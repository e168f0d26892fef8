#pragma once

#include "nucpath/impulse_response.hpp"
#include "nucpath/path.hpp"
#include "nucpath/systems.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace nucpath {

/// File could not be opened, read or written, or its contents are malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf("%.17g"): enough digits to round-trip any double.
std::string format_double(double x);

struct LoadedImpulse {
  ImpulseResponse g;
  /// A trailing zero was appended to reach odd length.
  bool padded = false;
};

// Impulse responses: CSV with one coefficient per line, or JSON
// {"k_max": int, "values": [...]}.
LoadedImpulse parse_impulse_csv(const std::string& text);
LoadedImpulse impulse_from_json(const nlohmann::json& j);
nlohmann::json impulse_to_json(const ImpulseResponse& g);
std::string impulse_to_csv(const ImpulseResponse& g);

LoadedImpulse read_impulse(const std::filesystem::path& file);
void write_impulse_csv(const std::filesystem::path& file, const ImpulseResponse& g);
void write_impulse_json(const std::filesystem::path& file, const ImpulseResponse& g);

// SystemSpec: {"poles": [{"re", "im"}], "residues": [{"re", "im"}]}.
nlohmann::json system_to_json(const SystemSpec& spec);
SystemSpec system_from_json(const nlohmann::json& j);
void write_system_json(const std::filesystem::path& file, const SystemSpec& spec);

// PathResult: {epsilon, t_max, breakpoints, objectives, singular_values,
// samples: [{t, f_approx, gap}], ...}.
nlohmann::json path_to_json(const PathResult& path);
std::string samples_to_csv(const PathResult& path);
std::string singular_values_to_csv(const PathResult& path);

std::string read_text(const std::filesystem::path& file);
void write_text(const std::filesystem::path& file, const std::string& text);
nlohmann::json read_json(const std::filesystem::path& file);
void write_json(const std::filesystem::path& file, const nlohmann::json& j);

}  // namespace nucpath
