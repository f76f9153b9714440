// Command-line front end: scene documents in, CSV tables and JSON
// reports out. Subcommands: geodesics, resonances, verify, trace.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "conres/analysis.hpp"
#include "conres/diffraction.hpp"
#include "conres/geodesics.hpp"
#include "conres/io.hpp"
#include "conres/models.hpp"
#include "conres/scene.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw conres::MalformedDocument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw conres::MalformedDocument("cannot write file: " + path);
    out << text;
}

int thread_count() {
    if (const char* env = std::getenv("CONRES_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// A human-friendly number that always shows a decimal point.
std::string pretty(double v) {
    std::string s = conres::format_double(v);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::string& scene_path,
                    const nlohmann::json& params, unsigned long long seed,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["scene"] = scene_path;
    j["parameters"] = params;
    j["seed"] = seed;
    j["tool_version"] = kVersion;
    j["outputs"] = outputs;
    write_file(out_path, j.dump(2) + "\n");
}

bool junction_admissible(double rho, double s) {
    try {
        return std::abs(conres::diffraction_kernel(rho, s)) >
               conres::kKernelZeroThreshold;
    } catch (const conres::GeometricSingularity&) {
        return false;  // singular = geometric relation, not in SD+
    }
}

int run_geodesics(const std::string& scene_path, int max_reflections,
                  const std::string& out_path, unsigned long long seed) {
    const auto scene = conres::parse_scene(read_file(scene_path));
    if (!std::holds_alternative<conres::PolygonScene>(scene))
        throw conres::UnknownModel("geodesics requires a polygon scene");
    const auto& poly = std::get<conres::PolygonScene>(scene);

    const auto report = conres::validate(scene);
    for (const auto& c : report.checks)
        if (c.status == conres::CheckStatus::Violated)
            throw conres::InvariantViolation(c.name + ": " + c.details);

    const auto straight = conres::visibility_geodesics(poly);
    const auto segments = conres::reflected_geodesics(poly, max_reflections);

    if (!out_path.empty()) {
        write_file(out_path, conres::segments_to_csv(segments));
        write_manifest(out_path + ".manifest.json", "geodesics", scene_path,
                       {{"max_reflections", max_reflections}}, seed, {out_path});
    } else {
        std::cout << conres::segments_to_csv(segments);
    }

    std::cout << "D_max_straight>=" << pretty(conres::d_max(straight)) << "\n";
    std::cout << "D_max>=" << pretty(conres::d_max(segments))
              << " (cap=" << max_reflections << ")\n";
    const double dplus =
        conres::d_plus_max(poly, segments, junction_admissible);
    if (std::isinf(dplus) && dplus < 0.0)
        std::cout << "D_plus=-inf\n";
    else
        std::cout << "D_plus>=" << pretty(dplus)
                  << " (cap=" << max_reflections << ")\n";
    return 0;
}

int run_resonances(const std::string& scene_path, double re_lo, double re_hi,
                   double im_lo, double im_hi, double tol, int mode_max,
                   const std::string& out_path, unsigned long long seed) {
    const auto scene = conres::parse_scene(read_file(scene_path));
    conres::SearchBox box{re_lo, re_hi, im_lo, im_hi};
    conres::ResonanceSearchOptions opt;
    opt.tol = tol;
    opt.mode_max = mode_max;
    opt.seed = seed;
    opt.threads = thread_count();
    const auto resonances = conres::find_resonances(scene, box, opt);
    const std::string csv = conres::resonances_to_csv(resonances);
    if (!out_path.empty()) {
        write_file(out_path, csv);
        write_manifest(out_path + ".manifest.json", "resonances", scene_path,
                       {{"re", {re_lo, re_hi}},
                        {"im", {im_lo, im_hi}},
                        {"tol", tol},
                        {"mode_max", mode_max}},
                       seed, {out_path});
    } else {
        std::cout << csv;
    }
    std::cerr << resonances.size() << " resonance(s) found\n";
    return 0;
}

conres::StripPrediction prediction_for(const conres::Scene& scene,
                                       const std::string& source, double delta,
                                       double scale, int max_reflections) {
    using conres::StripPrediction;
    if (source == "delta_obstacle") {
        double diam = 0.0;
        if (std::holds_alternative<conres::DeltaLineScene>(scene)) {
            const auto& line = std::get<conres::DeltaLineScene>(scene);
            if (line.positions.size() < 2)
                throw conres::InvariantViolation(
                    "delta_obstacle needs at least two deltas");
            diam = line.positions.back() - line.positions.front();
        } else if (std::holds_alternative<conres::DeltaCircleScene>(scene)) {
            diam = std::get<conres::DeltaCircleScene>(scene).diameter();
        } else {
            throw conres::UnknownModel("delta_obstacle needs a delta scene");
        }
        StripPrediction p = conres::delta_obstacle_strip(diam, delta);
        p.width *= scale;
        return p;
    }
    if (source == "conic_free" || source == "conic_band") {
        if (!std::holds_alternative<conres::PolygonScene>(scene))
            throw conres::UnknownModel(source + " needs a polygon scene");
        const auto& poly = std::get<conres::PolygonScene>(scene);
        const auto segments = conres::reflected_geodesics(poly, max_reflections);
        if (source == "conic_free") {
            StripPrediction p = conres::conic_strip(
                2, conres::d_max(segments), delta, true);
            p.width *= scale;
            return p;
        }
        const double dplus =
            conres::d_plus_max(poly, segments, junction_admissible);
        StripPrediction p = conres::conic_band(2, dplus, delta);
        p.width *= scale;
        return p;
    }
    throw conres::UnknownModel("unknown prediction source: " + source);
}

int run_verify(const std::string& scene_path, const std::string& csv_path,
               const std::string& source, double delta, double scale,
               double lambda0, int max_reflections,
               const std::string& report_path, const std::string& plot_path,
               unsigned long long seed) {
    const auto scene = conres::parse_scene(read_file(scene_path));
    const auto resonances = conres::resonances_from_csv(read_file(csv_path));
    const auto prediction =
        prediction_for(scene, source, delta, scale, max_reflections);

    const auto report = conres::verify_band(resonances, prediction, lambda0);
    const std::string json = conres::band_verification_to_json(report);
    if (!report_path.empty()) {
        write_file(report_path, json + "\n");
    } else {
        std::cout << json << "\n";
    }

    if (!plot_path.empty()) {
        std::ostringstream plot;
        plot << "re,neg_im,bound_curve\n";
        for (const auto& r : resonances) {
            const double re = r.lambda.real();
            const double bound =
                re > 1.0 ? prediction.width * std::log(re) : 0.0;
            plot << conres::format_double(re) << ','
                 << conres::format_double(-r.lambda.imag()) << ','
                 << conres::format_double(bound) << '\n';
        }
        write_file(plot_path, plot.str());
    }
    if (!report_path.empty())
        write_manifest(report_path + ".manifest.json", "verify", scene_path,
                       {{"resonances", csv_path},
                        {"prediction", source},
                        {"delta", delta},
                        {"scale", scale},
                        {"lambda0", lambda0},
                        {"max_reflections", max_reflections}},
                       seed,
                       plot_path.empty()
                           ? std::vector<std::string>{report_path}
                           : std::vector<std::string>{report_path, plot_path});

    std::cout << (report.passed() ? "PASS" : "FAIL") << "\n";
    return 0;
}

int run_trace(const std::string& csv_path, double tmax, double dt,
              const std::string& out_path, unsigned long long seed) {
    if (!(tmax > 0.0 && dt > 0.0))
        throw conres::InvariantViolation("tmax and dt must be positive");
    const auto resonances = conres::resonances_from_csv(read_file(csv_path));
    std::vector<double> grid;
    for (double t = dt; t <= tmax + 1e-12; t += dt) grid.push_back(t);
    const auto samples = conres::poisson_trace(resonances, grid);
    const std::string csv = conres::trace_to_csv(grid, samples);
    if (!out_path.empty()) {
        write_file(out_path, csv);
        write_manifest(out_path + ".manifest.json", "trace", csv_path,
                       {{"tmax", tmax}, {"dt", dt}}, seed, {out_path});
    } else {
        std::cout << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonance-free strip and band toolkit"};
    app.require_subcommand(1);

    unsigned long long seed = 0;
    app.add_option("--seed", seed, "Seed for all randomized numerics");

    auto* geo = app.add_subcommand("geodesics",
                                   "Enumerate geodesic segments, report "
                                   "D_max and D_plus");
    std::string geo_scene, geo_out;
    int geo_cap = conres::kDefaultReflectionCap;
    geo->add_option("scene", geo_scene, "Scene JSON document")->required();
    geo->add_option("--max-reflections", geo_cap, "Reflection cap (hard limit 12)");
    geo->add_option("-o,--output", geo_out, "Segments CSV path");

    auto* res = app.add_subcommand("resonances", "Locate resonances in a box");
    std::string res_scene, res_out;
    std::pair<double, double> res_re{0.0, 0.0}, res_im{0.0, 0.0};
    double res_tol = 1e-10;
    int res_modes = 20;
    res->add_option("scene", res_scene, "Scene JSON document")->required();
    res->add_option("--re", res_re, "Real-part window a b")->required();
    res->add_option("--im", res_im, "Imaginary-part window c d")->required();
    res->add_option("--tol", res_tol, "Residual tolerance");
    res->add_option("--mode-max", res_modes, "Largest angular mode (circle)");
    res->add_option("-o,--output", res_out, "Resonance CSV path");

    auto* ver = app.add_subcommand("verify", "Check a strip/band prediction "
                                             "against computed resonances");
    std::string ver_scene, ver_csv, ver_source = "delta_obstacle";
    std::string ver_report, ver_plot;
    double ver_delta = 0.0, ver_scale = 1.0, ver_lambda0 = 1.0;
    int ver_cap = conres::kDefaultReflectionCap;
    ver->add_option("scene", ver_scene, "Scene JSON document")->required();
    ver->add_option("resonances", ver_csv, "Resonance CSV path")->required();
    ver->add_option("--prediction", ver_source,
                    "delta_obstacle | conic_free | conic_band");
    ver->add_option("--delta", ver_delta, "Slack subtracted from the width");
    ver->add_option("--scale", ver_scale, "Width scale factor");
    ver->add_option("--lambda0", ver_lambda0, "Onset threshold");
    ver->add_option("--max-reflections", ver_cap, "Reflection cap for conic sources");
    ver->add_option("-o,--output", ver_report, "JSON report path");
    ver->add_option("--plot", ver_plot, "Plot-data CSV path");

    auto* trc = app.add_subcommand("trace", "Poisson trace |s(t)| from a "
                                            "resonance CSV");
    std::string trc_csv, trc_out;
    double trc_tmax = 10.0, trc_dt = 0.01;
    trc->add_option("resonances", trc_csv, "Resonance CSV path")->required();
    trc->add_option("--tmax", trc_tmax, "Largest time");
    trc->add_option("--dt", trc_dt, "Time step");
    trc->add_option("-o,--output", trc_out, "Trace CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (geo->parsed())
            return run_geodesics(geo_scene, geo_cap, geo_out, seed);
        if (res->parsed())
            return run_resonances(res_scene, res_re.first, res_re.second,
                                  res_im.first, res_im.second, res_tol,
                                  res_modes, res_out, seed);
        if (ver->parsed())
            return run_verify(ver_scene, ver_csv, ver_source, ver_delta,
                              ver_scale, ver_lambda0, ver_cap, ver_report,
                              ver_plot, seed);
        if (trc->parsed()) return run_trace(trc_csv, trc_tmax, trc_dt, trc_out, seed);
    } catch (const conres::NumericalError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const conres::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
