#include "vfl/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>

#include "vfl/rng.hpp"
#include <json.hpp>

namespace vfl {

namespace {

using nlohmann::json;

// shortest exact decimal round-trip, locale-independent
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

const char* convention_name(RConvention c) {
    return c == RConvention::ch1_minus ? "ch1_minus" : "ch4_plus";
}

json trace_json(const std::vector<TracePoint>& trace) {
    json arr = json::array();
    for (const auto& p : trace) arr.push_back({p.budget, p.value});
    return arr;
}

void write_le(std::ostream& os, const void* p, std::size_t bytes) {
    // the project targets little-endian hosts; serialize raw
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

void write_u64(std::ostream& os, std::uint64_t v) { write_le(os, &v, 8); }
void write_f64(std::ostream& os, double v) { write_le(os, &v, 8); }

}  // namespace

void write_resolvent_csv(const ResolventGrid& grid, std::ostream& os) {
    os << "# kernel=" << grid.kernel_name << " quantity=" << grid.quantity
       << " convention=" << convention_name(grid.convention) << " tol=" << num(grid.tol)
       << " residual_max=" << num(grid.residual_max) << "\n";
    os << "t";
    for (double mu : grid.mu_list) os << "," << grid.quantity << "_mu=" << num(mu);
    os << "\n";
    for (std::size_t i = 0; i < grid.grid.count(); ++i) {
        os << num(grid.grid.node(i));
        for (const auto& col : grid.values) os << "," << num(col[i]);
        os << "\n";
    }
}

void write_yosida_csv(const YosidaSweep& sweep, std::ostream& os) {
    os << "n,gamma_n,sup_distance\n";
    for (std::size_t j = 0; j < sweep.n_list.size(); ++j)
        os << sweep.n_list[j] << "," << num(sweep.gamma_n[j]) << ","
           << num(sweep.sup_distances[j]) << "\n";
}

std::string yosida_summary_json(const YosidaSweep& sweep) {
    json j;
    j["kernel"] = sweep.kernel.name();
    j["gamma"] = sweep.gamma;
    j["n_first"] = sweep.n_list.front();
    j["n_last"] = sweep.n_list.back();
    j["fitted_slope"] = sweep.fitted_slope;
    j["final_distance"] = sweep.sup_distances.back();
    j["completely_positive_hypothesis"] = sweep.hypothesis_ok;
    return j.dump(2);
}

void write_field_csv(const FieldPath& path, std::ostream& os) {
    os << "t,mode,X1,X2\n";
    for (std::size_t i = 0; i < path.grid.count(); ++i) {
        const std::string t = num(path.grid.node(i));
        os << t << ",0," << num(path.x0[i]) << ",0\n";
        for (std::size_t m = 0; m < path.modes.size(); ++m)
            os << t << "," << (m + 1) << "," << num(path.x1[m][i]) << ","
               << num(path.x2[m][i]) << "\n";
    }
}

void write_field_binary(const FieldPath& path, std::ostream& os) {
    os.write("VFLD1", 5);
    write_u64(os, path.d);
    write_u64(os, static_cast<std::uint64_t>(path.N));
    write_f64(os, path.grid.t_max);
    write_f64(os, path.grid.h);
    write_u64(os, path.modes.size());
    write_u64(os, path.grid.count());
    for (const auto& n : path.modes)
        for (int c : n) write_u64(os, static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
    for (double v : path.x0) write_f64(os, v);
    for (const auto& row : path.x1)
        for (double v : row) write_f64(os, v);
    for (const auto& row : path.x2)
        for (double v : row) write_f64(os, v);
}

std::string regularity_json(const RegularityReport& report, const std::string& inputs_desc) {
    json j;
    j["criterion"] = report.criterion;
    j["inputs_hash"] = inputs_hash(inputs_desc);
    j["verdict"] = to_string(report.verdict);
    j["witness"] = report.witness;
    j["trace"] = trace_json(report.trace);
    j["fitted_exponent"] = report.fitted_exponent;
    j["horizon"] = report.horizon;
    if (report.analytic_available) j["analytic_verdict"] = to_string(report.analytic_verdict);
    return j.dump(2);
}

std::string limit_measure_json(const LimitMeasureReport& report, const std::string& inputs_desc) {
    json j;
    j["criterion"] = "limit_measure";
    j["inputs_hash"] = inputs_hash(inputs_desc);
    j["verdict"] = to_string(report.verdict);
    j["slowly_increasing"] = report.slowly_increasing;
    j["witness_k"] = report.witness_k;
    j["note"] = report.note;
    j["lambda"] = report.lambdas;
    json g = json::array();
    for (double v : report.g_inf) {
        if (std::isfinite(v))
            g.push_back(v);
        else
            g.push_back(nullptr);
    }
    j["g_inf"] = g;
    return j.dump(2);
}

std::string admissible_json(const AdmissibleTable& table, const std::string& inputs_desc) {
    json j;
    j["criterion"] = "admissible_constant";
    j["inputs_hash"] = inputs_hash(inputs_desc);
    j["n2"] = table.n2;
    j["scaled_tail_integral"] = table.scaled;
    j["c_b"] = table.c_b;
    return j.dump(2);
}

std::string mc_report_json(const std::vector<MCResult>& results, const CLTSummary& summary) {
    json arr = json::array();
    for (const auto& r : results) {
        json e;
        e["label"] = r.label;
        e["estimate"] = r.estimate;
        e["std_error"] = r.std_error;
        e["target"] = r.target;
        e["z"] = r.z;
        e["reps"] = r.reps;
        e["level"] = r.level;
        e["pass"] = r.pass;
        arr.push_back(e);
    }
    json j;
    j["results"] = arr;
    j["total"] = summary.total;
    j["passes"] = summary.passes;
    j["worst_z"] = summary.worst_z;
    j["worst_label"] = summary.worst_label;
    j["suite_pass"] = summary.pass;
    return j.dump(2);
}

void write_svg_lines(std::ostream& os, const std::string& title,
                     const std::vector<double>& x,
                     const std::vector<std::vector<double>>& series,
                     const std::vector<std::string>& labels) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const double W = 800, H = 500, ml = 60, mr = 20, mt = 40, mb = 40;
    double xmin = x.empty() ? 0 : x.front(), xmax = x.empty() ? 1 : x.back();
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& s : series)
        for (double v : s) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(ymin < ymax)) {
        ymin = ymin - 1.0;
        ymax = ymax + 1.0;
    }
    if (!(xmin < xmax)) xmax = xmin + 1.0;
    const auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto py = [&](double v) { return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
       << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    char buf[64];
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[s % 8] << "\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < series[s].size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x[i]), py(series[s][i]));
            os << buf;
        }
        os << "\"/>\n";
        if (s < labels.size())
            os << "<text x=\"" << W - mr - 150 << "\" y=\"" << mt + 18 * (s + 1)
               << "\" font-size=\"12\" fill=\"" << colors[s % 8] << "\">" << labels[s]
               << "</text>\n";
    }
    std::snprintf(buf, sizeof(buf), "%.4g", xmin);
    os << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">" << buf
       << "</text>\n";
    std::snprintf(buf, sizeof(buf), "%.4g", xmax);
    os << "<text x=\"" << W - mr - 30 << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">"
       << buf << "</text>\n";
    std::snprintf(buf, sizeof(buf), "%.4g", ymin);
    os << "<text x=\"4\" y=\"" << H - mb << "\" font-size=\"11\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof(buf), "%.4g", ymax);
    os << "<text x=\"4\" y=\"" << mt + 4 << "\" font-size=\"11\">" << buf << "</text>\n";
    os << "</svg>\n";
}

std::string inputs_hash(const std::string& desc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : desc) h = detail::mix64(h ^ c);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace vfl
