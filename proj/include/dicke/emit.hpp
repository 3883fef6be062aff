#pragma once

#include "dicke/config.hpp"
#include "dicke/observables.hpp"
#include "dicke/tridiag.hpp"

#include <map>
#include <string>
#include <vector>

namespace dicke {

/// One row of the observable time series.
struct ObservableRow {
    double t = 0.0;
    double jz = 0.0;
    double mean_n = 0.0;
    double purity_deficit = 0.0;
    double entropy = 0.0;
};

/// CSV with header "t,jz,mean_n,purity_deficit,entropy"; %.17g, '.' decimal.
void write_series_csv(const std::string& path, const std::vector<ObservableRow>& rows);

/// CSV with header "s,index,eigenvalue,sector_trace_residual"; the residual
/// column repeats |sum eigenvalues - tr H| / max(1, |tr H|) for the sector.
void write_spectrum_csv(const std::string& path, const std::vector<Eigensystem>& sectors,
                        const ModelParams& params);

/// Row-major Q values, one grid row per line; axes and grid spec go to a
/// JSON sidecar next to it.
void write_qgrid(const std::string& csv_path, const std::string& json_path, const QGrid& grid,
                 double t);

/// JSON run sidecar: resolved configuration values, config hash, and any
/// extra scalar results the command wants to record.
void write_run_json(const std::string& path, const Config& cfg,
                    const std::map<std::string, double>& extras);

}  // namespace dicke
