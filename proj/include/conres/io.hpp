#pragma once

#include <complex>
#include <string>
#include <vector>

#include "conres/geodesics.hpp"
#include "conres/models.hpp"

namespace conres {

// All numeric CSV fields are written with 17 significant digits so that
// doubles round-trip exactly.
std::string format_double(double v);

// Columns: from,to,length,reflections,theta_in,theta_out. The reflections
// field is the edge-index sequence joined with ';' (empty = straight).
std::string segments_to_csv(const std::vector<GeodesicSegment>& segments);

// Columns: model,mode,re_lambda,im_lambda,multiplicity,residual.
std::string resonances_to_csv(const std::vector<Resonance>& resonances);
std::vector<Resonance> resonances_from_csv(const std::string& text);

struct KernelSample {
    double rho = 0.0;
    double s = 0.0;
    std::complex<double> value;
};

// Columns: rho,s,re,im.
std::string kernel_table_to_csv(const std::vector<KernelSample>& samples);

// Columns: t,abs_s.
std::string trace_to_csv(const std::vector<double>& t_grid,
                         const std::vector<std::complex<double>>& samples);

// A chain as a JSON array of segment ids.
std::string chain_ids_to_json(const std::vector<int>& segment_ids);

}  // namespace conres
