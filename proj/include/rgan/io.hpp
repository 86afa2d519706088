// Copyright 2026 The rgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RGAN_IO_HPP
#define RGAN_IO_HPP

// JSON, CSV and SVG artifacts. Numbers are printed with 17 significant
// digits (CSV) or shortest round-trip form (JSON), so outputs are bit-stable
// and table-based maps round-trip exactly.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgan/bounds.hpp"
#include "rgan/density.hpp"
#include "rgan/error.hpp"
#include "rgan/hypothesis.hpp"
#include "rgan/learning.hpp"
#include "rgan/rosenblatt.hpp"

namespace rgan {

using Json = nlohmann::ordered_json;

/// Writes `content` to a temporary sibling and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            fail(ErrorKind::Io, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorKind::Io, "cannot open " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            fail(ErrorKind::Io, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        fail(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
    }
}

inline std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& what)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigInvalid, what + ": " + e.what());
    }
}

/// 17-significant-digit decimal; "nan" / "inf" spelled out.
inline std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// JSON number, or null for non-finite values.
inline Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json json_optional(const std::optional<double>& v) { return v ? json_number(*v) : Json(nullptr); }

/// Rejects keys outside `allowed`.
inline void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!j.is_object()) {
        fail(ErrorKind::ConfigInvalid, where + " must be a JSON object");
    }
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || item.key() == a;
        }
        if (!ok) {
            fail(ErrorKind::ConfigInvalid, "unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <class T>
T get_as(const Json& j, const char* key, const std::string& where)
{
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigInvalid, where + "." + key + ": " + e.what());
    }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const std::string& where)
{
    return j.contains(key) ? get_as<T>(j, key, where) : fallback;
}

// ---- densities --------------------------------------------------------------

inline Json to_json(const GridDensity& d)
{
    Json j;
    j["dim"] = d.dim();
    j["resolution"] = d.resolution();
    j["quad_rule"] = std::string(to_string(d.quad_rule()));
    j["kappa"] = d.kappa();
    j["values"] = std::vector<double>(d.values().begin(), d.values().end());
    return j;
}

inline GridDensity density_from_json(const Json& j)
{
    check_keys(j, {"dim", "resolution", "quad_rule", "kappa", "values"}, "density");
    const auto rule = parse_quad_rule(get_or<std::string>(j, "quad_rule", "trapezoid", "density"));
    return GridDensity(get_as<std::size_t>(j, "dim", "density"), get_as<std::size_t>(j, "resolution", "density"),
                       get_as<std::vector<double>>(j, "values", "density"), rule);
}

// ---- hypothesis configuration -----------------------------------------------

inline Json to_json(const HypothesisConfig& c)
{
    Json j;
    j["dim"] = c.dim;
    j["k"] = c.k;
    j["alpha"] = c.alpha;
    j["K"] = c.K;
    j["family"] = std::string(to_string(c.family));
    j["degree"] = c.degree;
    j["interior_knots"] = c.interior_knots;
    j["coupling_degree"] = c.coupling_degree;
    j["half_width"] = c.half_width;
    return j;
}

inline HypothesisConfig hypothesis_from_json(const Json& j)
{
    const std::string w = "hypothesis";
    check_keys(j, {"dim", "k", "alpha", "K", "family", "degree", "interior_knots", "coupling_degree", "half_width"}, w);
    HypothesisConfig c;
    c.dim = get_or<std::size_t>(j, "dim", c.dim, w);
    c.k = get_or<int>(j, "k", c.k, w);
    c.alpha = get_or<double>(j, "alpha", c.alpha, w);
    c.K = get_or<double>(j, "K", c.K, w);
    c.family = parse_family(get_or<std::string>(j, "family", std::string(to_string(c.family)), w));
    c.degree = get_or<int>(j, "degree", c.degree, w);
    c.interior_knots = get_or<std::size_t>(j, "interior_knots", c.interior_knots, w);
    c.coupling_degree = get_or<std::size_t>(j, "coupling_degree", c.coupling_degree, w);
    c.half_width = get_or<double>(j, "half_width", c.half_width, w);
    return c;
}

inline Json to_json(const Certificate& c)
{
    Json j;
    j["spread"] = c.spread;
    j["jac_lower"] = c.jac_lower;
    j["jac_upper"] = c.jac_upper;
    j["c1_upper"] = c.c1_upper;
    j["norm_upper"] = c.norm_upper;
    return j;
}

inline Json to_json(const GeneratorParams& p)
{
    Json j;
    j["coefficients"] = p.coefficients;
    j["certificate"] = to_json(p.certificate);
    return j;
}

inline Json net_to_json(const EpsNet& net)
{
    Json j;
    j["epsilon"] = net.epsilon;
    j["points_per_param"] = net.points_per_param;
    j["members"] = net.members;
    return j;
}

// ---- maps -------------------------------------------------------------------

/// Descriptor of a Rosenblatt map (density + order + direction) or of a
/// family generator (configuration + parameters).
inline Json map_descriptor(const TriangularMap& map, const HypothesisConfig* config = nullptr)
{
    Json j;
    j["direction"] = map.direction() == Direction::forward ? "forward" : "inverse";
    j["order"] = std::vector<std::size_t>(map.order().begin(), map.order().end());
    const MapComponents& comp = map.components();
    if (const auto* r = dynamic_cast<const RosenblattComponents*>(&comp)) {
        j["kind"] = "rosenblatt";
        j["density"] = to_json(r->density());
    } else if (const auto* g = dynamic_cast<const GeneratorComponents*>(&comp)) {
        if (config == nullptr) {
            fail(ErrorKind::ConfigInvalid, "generator descriptor needs its hypothesis configuration");
        }
        j["kind"] = "generator";
        j["hypothesis"] = to_json(*config);
        j["theta"] = std::vector<double>(g->parameters().begin(), g->parameters().end());
    } else if (comp.kind() == "identity") {
        j["kind"] = "identity";
        j["dim"] = map.dim();
    } else {
        fail(ErrorKind::ConfigInvalid, "map kind '" + comp.kind() + "' has no descriptor");
    }
    return j;
}

inline TriangularMap map_from_descriptor(const Json& j)
{
    check_keys(j, {"kind", "direction", "order", "density", "hypothesis", "theta", "dim"}, "map");
    const auto kind = get_as<std::string>(j, "kind", "map");
    const auto dir = get_or<std::string>(j, "direction", "forward", "map");
    if (dir != "forward" && dir != "inverse") {
        fail(ErrorKind::ConfigInvalid, "map.direction must be forward or inverse");
    }
    TriangularMap map = identity_map(1);
    if (kind == "rosenblatt") {
        const GridDensity permuted = density_from_json(j.at("density"));
        map = TriangularMap(std::make_shared<RosenblattComponents>(permuted), Direction::forward,
                            get_or<std::vector<std::size_t>>(j, "order", {}, "map"));
    } else if (kind == "generator") {
        const GeneratorFamily family(hypothesis_from_json(j.at("hypothesis")));
        map = family.make(get_as<std::vector<double>>(j, "theta", "map"));
    } else if (kind == "identity") {
        map = identity_map(get_as<std::size_t>(j, "dim", "map"));
    } else {
        fail(ErrorKind::ConfigInvalid, "unknown map kind '" + kind + "'");
    }
    const bool want_inverse = dir == "inverse";
    return (map.direction() == Direction::inverse) == want_inverse ? map : map.inverse();
}

// ---- reports ----------------------------------------------------------------

inline Json to_json(const BoundReport& r)
{
    Json in;
    in["d"] = r.inputs.d;
    in["alpha"] = r.inputs.alpha;
    in["k"] = r.inputs.k;
    in["K"] = r.inputs.K;
    in["n"] = r.inputs.n;
    in["delta"] = r.inputs.delta;
    in["delta1"] = r.inputs.delta1;
    in["c1_star"] = r.inputs.c1_star;
    in["exact_integral"] = r.inputs.exact_integral;
    Json j;
    j["inputs"] = in;
    j["constants_scale"] = "up to c1_star";
    j["B1"] = r.B1;
    j["B2"] = r.B2;
    j["C1"] = r.C1;
    j["C2"] = r.C2;
    j["C3"] = json_optional(r.C3);
    j["gamma"] = json_optional(r.gamma);
    j["C"] = json_optional(r.C);
    j["dudley_value"] = json_optional(r.dudley_value);
    j["mcdiarmid_tail"] = json_optional(r.mcdiarmid_tail);
    j["thm54_threshold"] = json_optional(r.tail_threshold);
    j["thm54_probability"] = json_optional(r.tail_probability);
    j["thm54_log_probability"] = json_optional(r.tail_log_probability);
    j["regularity_ok"] = r.regularity_ok;
    return j;
}

/// Two-column text table of a bound report.
inline std::string format_bound_table(const BoundReport& r)
{
    std::ostringstream os;
    auto line = [&](const char* name, const std::string& value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-22s", name);
        os << buf << value << '\n';
    };
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("n/a"); };
    line("d", std::to_string(r.inputs.d));
    line("alpha", format_number(r.inputs.alpha));
    line("k", std::to_string(r.inputs.k));
    line("K", format_number(r.inputs.K));
    line("n", format_number(r.inputs.n));
    line("delta", format_number(r.inputs.delta));
    line("delta1", format_number(r.inputs.delta1));
    line("regularity_ok", r.regularity_ok ? "true" : "false");
    line("B1", format_number(r.B1));
    line("B2", format_number(r.B2));
    line("C1", format_number(r.C1));
    line("C2", format_number(r.C2));
    line("C3", opt(r.C3));
    line("gamma", opt(r.gamma));
    line("C", opt(r.C));
    line("dudley_value", opt(r.dudley_value));
    line("mcdiarmid_tail", opt(r.mcdiarmid_tail));
    line("thm54_threshold", opt(r.tail_threshold));
    line("thm54_probability", opt(r.tail_probability));
    line("thm54_log_probability", opt(r.tail_log_probability));
    return os.str();
}

inline Json to_json(const SamplingErrorSummary& s, bool with_values = true)
{
    Json j;
    j["n"] = s.n;
    j["trials"] = s.trials;
    j["mean"] = s.mean;
    j["std"] = s.stddev;
    j["q05"] = s.q05;
    j["q50"] = s.q50;
    j["q95"] = s.q95;
    if (with_values) {
        j["values"] = s.values;
    }
    return j;
}

inline Json to_json(const MinimaxResult& r)
{
    Json j;
    j["best_generator"] = to_json(r.best_generator);
    j["discriminator"] = {{"theta_a", r.discriminator_a}, {"theta_b", r.discriminator_b}};
    j["inner_values"] = r.inner_values;
    j["achieved_value"] = r.achieved_value;
    j["js_to_target"] = r.js_to_target;
    j["optimization_gap"] = r.optimization_gap;
    j["converged"] = r.converged;
    Json trace = Json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"iteration", t.iteration}, {"value", t.value}, {"step", t.step}});
    }
    j["trace"] = trace;
    return j;
}

// ---- CSV and SVG ------------------------------------------------------------

/// Header "y1,...,yd" and one point per row.
inline std::string samples_csv(std::span<const double> points, std::size_t dim)
{
    std::string out;
    for (std::size_t a = 0; a < dim; ++a) {
        out += (a ? ",y" : "y") + std::to_string(a + 1);
    }
    out += '\n';
    for (std::size_t i = 0; i < points.size() / dim; ++i) {
        for (std::size_t a = 0; a < dim; ++a) {
            if (a) {
                out += ',';
            }
            out += format_number(points[i * dim + a]);
        }
        out += '\n';
    }
    return out;
}

inline std::string rate_csv(const RateReport& rep)
{
    std::string out = "n,trials,mean,std,q05,q50,q95,bound_C_over_sqrt_n,thm54_threshold,exceed_frac\n";
    for (const auto& r : rep.rows) {
        const auto& s = r.summary;
        out += std::to_string(s.n) + ',' + std::to_string(s.trials) + ',' + format_number(s.mean) + ',' +
               format_number(s.stddev) + ',' + format_number(s.q05) + ',' + format_number(s.q50) + ',' +
               format_number(s.q95) + ',' + format_number(r.bound_C_over_sqrt_n) + ',' +
               format_number(r.tail_threshold) + ',' + format_number(r.exceed_frac) + '\n';
    }
    return out;
}

/// Log-log plot: empirical mean with q05-q95 bars, bound envelope, and a
/// reference line of slope -1/2 through the first mean.
inline std::string rate_svg(const RateReport& rep)
{
    const double width = 640.0;
    const double height = 440.0;
    const double left = 70.0;
    const double right = 20.0;
    const double top = 30.0;
    const double bottom = 50.0;
    std::vector<double> ys;
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    for (const auto& r : rep.rows) {
        const double n = static_cast<double>(r.summary.n);
        xmin = std::min(xmin, n);
        xmax = std::max(xmax, n);
        for (double v : {r.summary.mean, r.summary.q05, r.summary.q95, r.bound_C_over_sqrt_n}) {
            if (std::isfinite(v) && v > 0.0) {
                ys.push_back(v);
            }
        }
    }
    if (ys.empty() || !(xmin > 0.0)) {
        ys = {1e-3, 1.0};
        xmin = xmax = 1.0;
    }
    const double lx0 = std::log10(xmin) - 0.1;
    const double lx1 = std::log10(xmax) + 0.1;
    const double ly0 = std::floor(std::log10(*std::min_element(ys.begin(), ys.end())));
    const double ly1 = std::ceil(std::log10(*std::max_element(ys.begin(), ys.end())));
    const double ly_span = std::max(ly1 - ly0, 1.0);
    auto px = [&](double n) { return left + (std::log10(n) - lx0) / (lx1 - lx0) * (width - left - right); };
    auto py = [&](double v) { return height - bottom - (std::log10(v) - ly0) / ly_span * (height - top - bottom); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(height - bottom) << "\" x2=\"" << num(width - right)
       << "\" y2=\"" << num(height - bottom) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
       << num(height - bottom) << "\" stroke=\"black\"/>\n";
    for (double e = ly0; e <= ly1; e += 1.0) {
        const double y = py(std::pow(10.0, e));
        os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << e
           << "</text>\n";
    }
    for (const auto& r : rep.rows) {
        const double x = px(static_cast<double>(r.summary.n));
        os << "<text x=\"" << num(x) << "\" y=\"" << num(height - bottom + 18) << "\" text-anchor=\"middle\">"
           << r.summary.n << "</text>\n";
    }
    os << "<text x=\"" << num(0.5 * (left + width - right)) << "\" y=\"" << num(height - 8)
       << "\" text-anchor=\"middle\">n</text>\n";
    os << "<text x=\"" << num(left) << "\" y=\"" << num(top - 10) << "\">sampling error (mean, q05-q95)";
    if (rep.slope) {
        os << ", slope " << num(*rep.slope);
    }
    os << "</text>\n";
    std::string mean_path;
    std::string bound_path;
    std::string ref_path;
    const double ref0 = rep.rows.empty() ? 0.0 : rep.rows.front().summary.mean;
    const double n0 = rep.rows.empty() ? 1.0 : static_cast<double>(rep.rows.front().summary.n);
    for (const auto& r : rep.rows) {
        const double n = static_cast<double>(r.summary.n);
        const double x = px(n);
        if (r.summary.q05 > 0.0 && r.summary.q95 > 0.0) {
            os << "<line x1=\"" << num(x) << "\" y1=\"" << num(py(r.summary.q05)) << "\" x2=\"" << num(x)
               << "\" y2=\"" << num(py(r.summary.q95)) << "\" stroke=\"steelblue\"/>\n";
        }
        if (r.summary.mean > 0.0) {
            mean_path += (mean_path.empty() ? "M" : " L") + num(x) + ',' + num(py(r.summary.mean));
            os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(py(r.summary.mean))
               << "\" r=\"3\" fill=\"steelblue\"/>\n";
        }
        if (std::isfinite(r.bound_C_over_sqrt_n) && r.bound_C_over_sqrt_n > 0.0) {
            bound_path += (bound_path.empty() ? "M" : " L") + num(x) + ',' + num(py(r.bound_C_over_sqrt_n));
        }
        if (ref0 > 0.0) {
            ref_path += (ref_path.empty() ? "M" : " L") + num(x) + ',' + num(py(ref0 * std::sqrt(n0 / n)));
        }
    }
    if (!mean_path.empty()) {
        os << "<path d=\"" << mean_path << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
    }
    if (!ref_path.empty()) {
        os << "<path d=\"" << ref_path << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>\n";
    }
    if (!bound_path.empty()) {
        os << "<path d=\"" << bound_path << "\" fill=\"none\" stroke=\"firebrick\"/>\n";
        os << "<text x=\"" << num(width - right) << "\" y=\"" << num(top + 4)
           << "\" text-anchor=\"end\" fill=\"firebrick\">C/sqrt(n)</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace rgan

#endif // RGAN_IO_HPP
