#include "conres/io.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace conres {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw MalformedDocument("trailing junk in number: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw MalformedDocument("not a number: " + s);
    } catch (const std::out_of_range&) {
        throw MalformedDocument("number out of range: " + s);
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string segments_to_csv(const std::vector<GeodesicSegment>& segments) {
    std::ostringstream out;
    out << "from,to,length,reflections,theta_in,theta_out\n";
    for (const auto& s : segments) {
        out << s.from_cone << ',' << s.to_cone << ',' << format_double(s.length)
            << ',';
        for (std::size_t i = 0; i < s.reflection_edges.size(); ++i) {
            if (i) out << ';';
            out << s.reflection_edges[i];
        }
        out << ',' << format_double(s.arrival_angle) << ','
            << format_double(s.departure_angle) << '\n';
    }
    return out.str();
}

std::string resonances_to_csv(const std::vector<Resonance>& resonances) {
    std::ostringstream out;
    out << "model,mode,re_lambda,im_lambda,multiplicity,residual\n";
    for (const auto& r : resonances) {
        out << r.model_tag << ',' << r.mode_index << ','
            << format_double(r.lambda.real()) << ','
            << format_double(r.lambda.imag()) << ',' << r.multiplicity << ','
            << format_double(r.residual) << '\n';
    }
    return out.str();
}

std::vector<Resonance> resonances_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw MalformedDocument("resonance CSV is empty");
    if (line == "model,mode,re_lambda,im_lambda,multiplicity,residual\r")
        line.pop_back();
    if (line != "model,mode,re_lambda,im_lambda,multiplicity,residual")
        throw MalformedDocument("unexpected resonance CSV header: " + line);

    std::vector<Resonance> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 6)
            throw MalformedDocument("resonance CSV row needs 6 fields: " + line);
        Resonance r;
        r.model_tag = fields[0];
        r.mode_index = static_cast<int>(parse_double(fields[1]));
        r.lambda = {parse_double(fields[2]), parse_double(fields[3])};
        r.multiplicity = static_cast<int>(parse_double(fields[4]));
        r.residual = parse_double(fields[5]);
        if (r.multiplicity < 1)
            throw MalformedDocument("multiplicity must be positive: " + line);
        out.push_back(std::move(r));
    }
    return out;
}

std::string kernel_table_to_csv(const std::vector<KernelSample>& samples) {
    std::ostringstream out;
    out << "rho,s,re,im\n";
    for (const auto& k : samples)
        out << format_double(k.rho) << ',' << format_double(k.s) << ','
            << format_double(k.value.real()) << ','
            << format_double(k.value.imag()) << '\n';
    return out.str();
}

std::string trace_to_csv(const std::vector<double>& t_grid,
                         const std::vector<std::complex<double>>& samples) {
    if (t_grid.size() != samples.size())
        throw InvariantViolation("trace grid and sample sizes differ");
    std::ostringstream out;
    out << "t,abs_s\n";
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        out << format_double(t_grid[i]) << ','
            << format_double(std::abs(samples[i])) << '\n';
    return out.str();
}

std::string chain_ids_to_json(const std::vector<int>& segment_ids) {
    return nlohmann::json(segment_ids).dump();
}

}  // namespace conres
