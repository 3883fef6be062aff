#include "dicke/config.hpp"

#include "dicke/parallel.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dicke {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("field '" + key + "': cannot parse '" + raw + "' as a number");
    }
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(origin + ":" + std::to_string(lineno) +
                                   ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw config_error(origin + ":" + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw config_error(origin + ":" + std::to_string(lineno) +
                               ": key '" + key + "' outside any [section]");
        cfg.values_[section + "." + key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

void Config::set_override(const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw config_error("override '" + assignment + "' must have the form section.key=value");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.find('.') == std::string::npos)
        throw config_error("override key '" + key + "' must be section.key");
    values_[key] = trim(assignment.substr(eq + 1));
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double v = parse_double(key, it->second);
    const int i = static_cast<int>(std::llround(v));
    if (v != static_cast<double>(i))
        throw config_error("field '" + key + "': expected an integer, got '" + it->second + "'");
    return i;
}

cdouble Config::get_complex(const std::string& key, cdouble fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& raw = it->second;
    const std::size_t comma = raw.find(',');
    if (comma == std::string::npos) return {parse_double(key, raw), 0.0};
    return {parse_double(key, trim(raw.substr(0, comma))),
            parse_double(key, trim(raw.substr(comma + 1)))};
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    auto it = values_.find(key);
    std::vector<double> out;
    if (it == values_.end()) return out;
    std::istringstream in(it->second);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse_double(key, tok));
    }
    return out;
}

std::vector<double> RunConfig::time_grid() const {
    if (steps < 1) throw config_error("time.steps must be >= 1");
    std::vector<double> ts(steps);
    if (steps == 1) {
        ts[0] = t_start;
        return ts;
    }
    if (!(t_end > t_start)) throw config_error("time grid must be strictly increasing");
    for (int i = 0; i < steps; ++i)
        ts[i] = t_start + (t_end - t_start) * i / (steps - 1);
    return ts;
}

int RunConfig::resolved_workers() const { return workers > 0 ? workers : default_workers(); }

RunConfig RunConfig::from_config(const Config& cfg) {
    RunConfig run;
    run.model.n_qubits = cfg.get_int("model.n_qubits", 1);
    run.model.detuning = cfg.get_double("model.detuning", 0.0);
    run.model.kerr = cfg.get_double("model.kerr", 0.0);
    run.model.qubit_qubit = cfg.get_double("model.qubit_qubit", 0.0);
    run.model.coupling = cfg.get_double("model.coupling", 1.0);
    try {
        run.model.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("section [model]: ") + e.what());
    }

    run.alpha = cfg.get_complex("initial.alpha", {5.0, 0.0});
    if (!std::isfinite(run.alpha.real()) || !std::isfinite(run.alpha.imag()))
        throw config_error("field 'initial.alpha': must be finite");
    run.m0 = cfg.get_int("initial.m0", 0);
    run.amplitudes_csv = cfg.get_string("initial.amplitudes_csv", "");

    run.t_start = cfg.get_double("time.start", 0.0);
    run.t_end = cfg.get_double("time.end", 10.0);
    run.steps = cfg.get_int("time.steps", 100);
    run.time_grid();  // validates

    run.workers = cfg.get_int("run.workers", 0);
    run.p_max = cfg.get_int("run.p_max", -1);
    run.tol = cfg.get_double("run.tol", 1e-12);
    if (run.tol <= 0.0) throw config_error("field 'run.tol': must be positive");

    run.output_prefix = cfg.get_string("output.prefix", "dicke_out");

    if (cfg.has("grid.center"))
        run.grid_center = cfg.get_complex("grid.center", {0.0, 0.0});
    run.grid_half_width = cfg.get_double("grid.half_width", 0.0);
    run.grid_resolution = cfg.get_int("grid.resolution", 73);
    const std::string snaps = cfg.get_string("grid.snapshots", "auto");
    if (snaps != "auto" && !snaps.empty()) run.snapshot_times = cfg.get_double_list("grid.snapshots");
    return run;
}

RabiConfig RabiConfig::from_config(const Config& cfg) {
    RabiConfig rc;
    rc.rabi.n_qubits = cfg.get_int("rabi.n_qubits", 1);
    rc.rabi.omega_f = cfg.get_double("rabi.omega_f", 1.0);
    rc.rabi.omega_q = cfg.get_double("rabi.omega_q", 1.0);
    rc.rabi.kerr = cfg.get_double("rabi.kerr", 0.0);
    rc.rabi.two_photon = cfg.get_double("rabi.two_photon", 0.0);
    rc.rabi.collective = cfg.get_double("rabi.collective", 0.0);
    rc.rabi.dipole = cfg.get_double("rabi.dipole", 0.0);
    rc.threshold = cfg.get_double("rabi.threshold", 0.1);
    try {
        rc.rabi.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("section [rabi]: ") + e.what());
    }
    return rc;
}

AmplitudeTable load_amplitudes_csv(const std::string& path, int n_qubits) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open amplitudes file '" + path + "'");
    // columns: p, m, re, im ; header row required
    std::string line;
    if (!std::getline(in, line)) throw config_error(path + ": empty amplitudes file");
    struct Entry {
        int p, m;
        cdouble c;
    };
    std::vector<Entry> entries;
    int p_max = 0, lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(trim(tok));
        if (cols.size() != 4)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 4 columns p,m,re,im");
        Entry e;
        e.p = static_cast<int>(parse_double("p", cols[0]));
        e.m = static_cast<int>(parse_double("m", cols[1]));
        e.c = {parse_double("re", cols[2]), parse_double("im", cols[3])};
        if (e.p < 0 || e.m < 0 || e.m > n_qubits)
            throw config_error(path + ":" + std::to_string(lineno) + ": index out of range");
        p_max = std::max(p_max, e.p);
        entries.push_back(e);
    }
    AmplitudeTable state(n_qubits, p_max);
    for (const Entry& e : entries) state.at(e.p, e.m) = e.c;
    if (std::abs(state.norm_sq() - 1.0) > 1e-9) state.normalize();
    return state;
}

AmplitudeTable initial_state(const RunConfig& run) {
    if (!run.amplitudes_csv.empty())
        return load_amplitudes_csv(run.amplitudes_csv, run.model.n_qubits);
    if (run.m0 < 0 || run.m0 > run.model.n_qubits)
        throw config_error("field 'initial.m0': outside 0..N");
    return coherent_dicke_state(run.alpha, run.m0, run.model.n_qubits, run.p_max);
}

std::string config_hash(const Config& cfg) {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [k, v] : cfg.values()) {
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dicke
