#include "dicke/emit.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace dicke {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_series_csv(const std::string& path, const std::vector<ObservableRow>& rows) {
    std::ofstream out = open_out(path);
    out << "t,jz,mean_n,purity_deficit,entropy\n";
    for (const ObservableRow& r : rows)
        out << num(r.t) << ',' << num(r.jz) << ',' << num(r.mean_n) << ','
            << num(r.purity_deficit) << ',' << num(r.entropy) << '\n';
}

void write_spectrum_csv(const std::string& path, const std::vector<Eigensystem>& sectors,
                        const ModelParams& params) {
    std::ofstream out = open_out(path);
    out << "s,index,eigenvalue,sector_trace_residual\n";
    for (const Eigensystem& eig : sectors) {
        const SectorMatrix matrix = build_sector(eig.s, params);
        const double tr = matrix.trace();
        const double sum =
            std::accumulate(eig.eigenvalues.begin(), eig.eigenvalues.end(), 0.0);
        const double residual = std::abs(sum - tr) / std::max(1.0, std::abs(tr));
        for (int k = 0; k < eig.dim(); ++k)
            out << eig.s << ',' << k << ',' << num(eig.eigenvalues[k]) << ',' << num(residual)
                << '\n';
    }
}

void write_qgrid(const std::string& csv_path, const std::string& json_path, const QGrid& grid,
                 double t) {
    std::ofstream out = open_out(csv_path);
    const std::size_t nr = grid.re_axis.size();
    for (std::size_t i = 0; i < grid.im_axis.size(); ++i) {
        for (std::size_t k = 0; k < nr; ++k) {
            if (k) out << ',';
            out << num(grid.values[i * nr + k]);
        }
        out << '\n';
    }
    nlohmann::json meta;
    meta["t"] = t;
    meta["center_re"] = grid.spec.center.real();
    meta["center_im"] = grid.spec.center.imag();
    meta["half_width"] = grid.spec.half_width;
    meta["resolution"] = grid.spec.resolution;
    meta["re_axis"] = grid.re_axis;
    meta["im_axis"] = grid.im_axis;
    meta["values_csv"] = csv_path;
    open_out(json_path) << meta.dump(2) << '\n';
}

void write_run_json(const std::string& path, const Config& cfg,
                    const std::map<std::string, double>& extras) {
    nlohmann::json doc;
    doc["version"] = "dicke_sg 1.0.0";
    doc["config"] = cfg.values();
    doc["config_hash"] = config_hash(cfg);
    for (const auto& [k, v] : extras) doc["results"][k] = v;
    open_out(path) << doc.dump(2) << '\n';
}

}  // namespace dicke
