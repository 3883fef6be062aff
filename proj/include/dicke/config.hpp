#pragma once

#include "dicke/model.hpp"
#include "dicke/rabi.hpp"
#include "dicke/state.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicke {

/// Parse/validation failure; carries line/field diagnostics in what().
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value store with INI-style sections; keys are "section.key".
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<text>");

    /// Applies a "section.key=value" override string.
    void set_override(const std::string& assignment);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    cdouble get_complex(const std::string& key, cdouble fallback) const;  // "re" or "re,im"
    std::vector<double> get_double_list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

/// Fully resolved simulation configuration.
struct RunConfig {
    ModelParams model;

    // initial state: coherent (alpha, m0) unless an amplitude CSV is given
    cdouble alpha{5.0, 0.0};
    int m0 = 0;
    std::string amplitudes_csv;

    double t_start = 0.0;
    double t_end = 10.0;
    int steps = 100;

    int workers = 0;      // 0 = available parallelism
    int p_max = -1;       // -1 = automatic coherent truncation
    double tol = 1e-12;

    std::string output_prefix = "dicke_out";

    // qfunc grid
    std::optional<cdouble> grid_center;  // default: alpha
    double grid_half_width = 0.0;        // 0 = automatic (|center| + 4)
    int grid_resolution = 73;
    std::vector<double> snapshot_times;  // empty = auto (entropy min, /2, /4)

    std::vector<double> time_grid() const;
    int resolved_workers() const;

    static RunConfig from_config(const Config& cfg);
};

/// Rabi mapping inputs for the map-rabi command.
struct RabiConfig {
    RabiParams rabi;
    double threshold = 0.1;

    static RabiConfig from_config(const Config& cfg);
};

AmplitudeTable load_amplitudes_csv(const std::string& path, int n_qubits);
AmplitudeTable initial_state(const RunConfig& run);

/// FNV-1a hash over the canonical key=value listing, for reproducibility
/// metadata in output files.
std::string config_hash(const Config& cfg);

}  // namespace dicke
