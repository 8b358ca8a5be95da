#include "sigstar/io.hpp"

#include "sigstar/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace sigstar::io {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json matrix_to_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

// JSON has no infinity; unbounded coordinates are written as strings.
json bound_value(double v)
{
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return v;
}

double number_from(const json& j, const std::string& field)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    fail(ErrorCode::Parse, field + ": expected a number");
}

Eigen::VectorXd vector_from(const json& j, const std::string& field)
{
    if (!j.is_array()) fail(ErrorCode::Parse, field + ": expected an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = number_from(j[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
}

Eigen::MatrixXd matrix_from(const json& j, const std::string& field, Eigen::Index cols_if_empty = 0)
{
    if (!j.is_array()) fail(ErrorCode::Parse, field + ": expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Eigen::MatrixXd(0, cols_if_empty);
    if (!j[0].is_array()) fail(ErrorCode::Parse, field + "[0]: expected an array");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        const std::string where = field + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            fail(ErrorCode::Parse, where + ": expected " + std::to_string(cols) + " entries");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number_from(row[static_cast<std::size_t>(c)], where);
    }
    return m;
}

const json& member(const json& j, const char* key, const std::string& context)
{
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, context + ": missing field '" + key + "'");
    return j.at(key);
}

json parse_json(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Parse, source + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

json load_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

void save_json(const json& j, const std::filesystem::path& path) { write_file_atomic(path, j.dump(2) + "\n"); }

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, const std::string& where)
{
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail(ErrorCode::Parse, where + ": cannot parse '" + cell + "'");
    if (!std::isfinite(v)) fail(ErrorCode::Parse, where + ": non-finite value '" + cell + "'");
    return v;
}

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string format_double(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

Eigen::VectorXd minmax_normalize(const Eigen::VectorXd& samples, double orig_min, double orig_max)
{
    if (!(orig_max > orig_min)) fail(ErrorCode::InvalidArgument, "min-max normalization needs orig_max > orig_min");
    return (samples.array() - orig_min) / (orig_max - orig_min);
}

Eigen::VectorXd minmax_denormalize(const Eigen::VectorXd& normalized, double orig_min, double orig_max)
{
    if (!(orig_max > orig_min)) fail(ErrorCode::InvalidArgument, "min-max normalization needs orig_max > orig_min");
    return normalized.array() * (orig_max - orig_min) + orig_min;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            fail(ErrorCode::Io, "write failed for " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorCode::Io, "cannot move " + tmp.string() + " to " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- models -----------------------------------------------------------------

json model_to_json(const Network& net)
{
    json layers = json::array();
    for (const auto& layer : net.layers) {
        if (const auto* dense = std::get_if<DenseLayer>(&layer)) {
            layers.push_back({{"type", "dense"}, {"weights", matrix_to_json(dense->weights)},
                              {"bias", vector_to_json(dense->bias)}});
        } else {
            layers.push_back({{"type", "relu"}, {"width", std::get<ReluLayer>(layer).width}});
        }
    }
    return {{"format_version", kFormatVersion}, {"name", net.name},   {"input_dim", net.input_dim},
            {"output_dim", net.output_dim},     {"layers", layers}};
}

Network model_from_json(const json& j)
{
    const std::string ctx = "model";
    const auto& version = member(j, "format_version", ctx);
    if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
        fail(ErrorCode::Parse, "unsupported model format_version " + version.dump() + " (this build reads \"" +
                                   kFormatVersion + "\")");
    }
    Network net;
    net.name = j.value("name", std::string{});
    net.input_dim = member(j, "input_dim", ctx).get<Eigen::Index>();
    net.output_dim = member(j, "output_dim", ctx).get<Eigen::Index>();
    const auto& layers = member(j, "layers", ctx);
    if (!layers.is_array()) fail(ErrorCode::Parse, "model.layers: expected an array");

    Eigen::Index width = net.input_dim;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& lj = layers[i];
        const std::string where = "layers[" + std::to_string(i) + "]";
        const auto type = member(lj, "type", where).get<std::string>();
        if (type == "dense") {
            DenseLayer d;
            d.weights = matrix_from(member(lj, "weights", where), where + ".weights", width);
            d.bias = vector_from(member(lj, "bias", where), where + ".bias");
            width = d.weights.rows();
            net.layers.emplace_back(std::move(d));
        } else if (type == "relu") {
            ReluLayer r{lj.value("width", width)};
            width = r.width;
            net.layers.emplace_back(r);
        } else {
            fail(ErrorCode::Parse, where + ": unsupported layer type '" + type +
                                       "'; only 'dense' and 'relu' layers can be verified");
        }
    }
    require_valid(net);
    return net;
}

Network load_model(const std::filesystem::path& path)
{
    const json j = load_json(path);
    try {
        return model_from_json(j);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, path.string() + ": " + e.what());
    }
}

void save_model(const Network& net, const std::filesystem::path& path)
{
    require_valid(net);
    save_json(model_to_json(net), path);
}

// ---- signals ----------------------------------------------------------------

const Signal& SignalSet::find(const std::string& id) const
{
    for (const auto& s : signals) {
        if (s.id == id) return s;
    }
    fail(ErrorCode::InvalidArgument, "no signal with id '" + id + "'");
}

std::vector<std::string> SignalSet::ids() const
{
    std::vector<std::string> out;
    out.reserve(signals.size());
    for (const auto& s : signals) out.push_back(s.id);
    return out;
}

SignalSet parse_signals_csv(const std::string& text, const std::string& source)
{
    SignalSet set;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no);
        if (line[0] == '#') {
            const auto cells = split_csv(trim(line.substr(1)));
            if (!have_header && cells.size() == 3 && cells[0] == "minmax") {
                set.normalization = MinMax{parse_cell(cells[1], where), parse_cell(cells[2], where)};
            }
            continue;
        }
        const auto cells = split_csv(line);
        if (!have_header) {
            if (cells.empty() || cells[0] != "id") fail(ErrorCode::Parse, where + ": header must start with 'id'");
            set.length = static_cast<Eigen::Index>(cells.size()) - 1;
            if (set.length <= 0) fail(ErrorCode::Parse, where + ": header declares no samples");
            have_header = true;
            continue;
        }
        if (static_cast<Eigen::Index>(cells.size()) != set.length + 1) {
            fail(ErrorCode::Parse, where + ": row has " + std::to_string(cells.size() - 1) + " samples, expected " +
                                       std::to_string(set.length));
        }
        Signal sig;
        sig.id = cells[0];
        sig.samples.resize(set.length);
        for (Eigen::Index k = 0; k < set.length; ++k) {
            sig.samples[k] = parse_cell(cells[static_cast<std::size_t>(k) + 1], where);
        }
        set.signals.push_back(std::move(sig));
    }
    if (!have_header) fail(ErrorCode::Parse, source + ": missing header");
    return set;
}

SignalSet load_signals(const std::filesystem::path& path) { return parse_signals_csv(read_file(path), path.string()); }

std::string signals_to_csv(const SignalSet& set)
{
    std::string out;
    if (set.normalization) {
        out += "# minmax," + format_double(set.normalization->orig_min) + "," +
               format_double(set.normalization->orig_max) + "\n";
    }
    out += "id";
    for (Eigen::Index k = 0; k < set.length; ++k) out += ",s" + std::to_string(k);
    out += "\n";
    for (const auto& s : set.signals) {
        require_dims(s.samples.size() == set.length, "signal '" + s.id + "' length",
                     static_cast<std::size_t>(set.length), static_cast<std::size_t>(s.samples.size()));
        out += s.id;
        for (Eigen::Index k = 0; k < s.samples.size(); ++k) out += "," + format_double(s.samples[k]);
        out += "\n";
    }
    return out;
}

void save_signals(const SignalSet& set, const std::filesystem::path& path)
{
    write_file_atomic(path, signals_to_csv(set));
}

// ---- campaigns, bounds, stars ---------------------------------------------------

json campaign_to_json(const Campaign& campaign)
{
    json entries = json::array();
    for (const auto& e : campaign.entries) {
        entries.push_back({{"signal_id", e.signal_id},
                           {"location", e.fault.location},
                           {"amp_lower", e.fault.amp_lower},
                           {"amp_upper", e.fault.amp_upper}});
    }
    return {{"format_version", kFormatVersion},
            {"seed", campaign.seed},
            {"amp_magnitude", campaign.amp_magnitude},
            {"signal_length", campaign.signal_length},
            {"entries", entries}};
}

Campaign campaign_from_json(const json& j)
{
    try {
        Campaign c;
        c.seed = member(j, "seed", "campaign").get<std::uint64_t>();
        c.amp_magnitude = member(j, "amp_magnitude", "campaign").get<double>();
        c.signal_length = j.value("signal_length", Eigen::Index{0});
        for (const auto& e : member(j, "entries", "campaign")) {
            SpikeFault f{e.at("location").get<Eigen::Index>(), e.at("amp_lower").get<double>(),
                         e.at("amp_upper").get<double>()};
            if (f.amp_lower > f.amp_upper) fail(ErrorCode::Parse, "campaign entry with inverted amplitude interval");
            c.entries.push_back({e.at("signal_id").get<std::string>(), f});
        }
        return c;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("campaign: ") + e.what());
    }
}

Campaign load_campaign(const std::filesystem::path& path) { return campaign_from_json(load_json(path)); }

void save_campaign(const Campaign& campaign, const std::filesystem::path& path)
{
    save_json(campaign_to_json(campaign), path);
}

json bounds_to_json(const Bounds& bounds)
{
    json lo = json::array();
    json hi = json::array();
    for (Eigen::Index i = 0; i < bounds.size(); ++i) {
        lo.push_back(bound_value(bounds.lower[i]));
        hi.push_back(bound_value(bounds.upper[i]));
    }
    return {{"lower", lo}, {"upper", hi}};
}

Bounds bounds_from_json(const json& j)
{
    Bounds b{vector_from(member(j, "lower", "bounds"), "lower"), vector_from(member(j, "upper", "bounds"), "upper")};
    require_dims(b.lower.size() == b.upper.size(), "bounds.upper", static_cast<std::size_t>(b.lower.size()),
                 static_cast<std::size_t>(b.upper.size()));
    return b;
}

Bounds load_bounds(const std::filesystem::path& path) { return bounds_from_json(load_json(path)); }

SignalStar star_from_json(const json& j)
{
    try {
        const auto kind = member(j, "kind", "star").get<std::string>();
        if (kind == "point") return SignalStar::point(vector_from(member(j, "signal", "star"), "signal"));
        if (kind == "box") {
            return SignalStar::from_bounds(vector_from(member(j, "lower", "star"), "lower"),
                                           vector_from(member(j, "upper", "star"), "upper"));
        }
        if (kind == "spike") {
            return SignalStar::from_spike_fault(vector_from(member(j, "signal", "star"), "signal"),
                                                member(j, "location", "star").get<Eigen::Index>(),
                                                member(j, "amp_lower", "star").get<double>(),
                                                member(j, "amp_upper", "star").get<double>());
        }
        if (kind == "star") {
            Eigen::VectorXd lower = vector_from(member(j, "pred_lower", "star"), "pred_lower");
            const auto m = lower.size();
            Eigen::VectorXd center = vector_from(member(j, "center", "star"), "center");
            Eigen::MatrixXd basis = matrix_from(member(j, "basis", "star"), "basis", m);
            if (basis.rows() == 0) basis.resize(center.size(), m);
            return SignalStar(std::move(center), std::move(basis),
                              matrix_from(j.value("pred_matrix", json::array()), "pred_matrix", m),
                              vector_from(j.value("pred_rhs", json::array()), "pred_rhs"), std::move(lower),
                              vector_from(member(j, "pred_upper", "star"), "pred_upper"));
        }
        fail(ErrorCode::Parse, "unknown star kind '" + kind + "' (expected point, box, spike or star)");
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("star spec: ") + e.what());
    }
}

json star_to_json(const SignalStar& star)
{
    json lo = json::array();
    json hi = json::array();
    for (Eigen::Index i = 0; i < star.num_generators(); ++i) {
        lo.push_back(bound_value(star.pred_lower()[i]));
        hi.push_back(bound_value(star.pred_upper()[i]));
    }
    return {{"kind", "star"},
            {"center", vector_to_json(star.center())},
            {"basis", matrix_to_json(star.basis())},
            {"pred_matrix", matrix_to_json(star.pred_matrix())},
            {"pred_rhs", vector_to_json(star.pred_rhs())},
            {"pred_lower", lo},
            {"pred_upper", hi}};
}

// ---- reports & plots --------------------------------------------------------

json report_to_json(const RobustnessReport& report, GradeVariant variant)
{
    json rows = json::array();
    for (const auto& r : report.per_instance) {
        rows.push_back({{"index", r.index},
                        {"out_lower", bound_value(r.out_lower)},
                        {"out_upper", bound_value(r.out_upper)},
                        {"band_lower", r.band_lower},
                        {"band_upper", r.band_upper},
                        {"within", r.within},
                        {"exceedance", bound_value(r.exceedance)}});
    }
    return {{"verdict", to_string(report.verdict)},
            {"percentage_robustness", report.percentage_robustness},
            {"grade_variant", to_string(variant)},
            {"grade", bound_value(report.grade(variant))},
            {"grade_band_exceedance", bound_value(report.grade_band_exceedance)},
            {"grade_from_reference", bound_value(report.grade_from_reference)},
            {"worst_index", variant == GradeVariant::BandExceedance ? report.worst_index
                                                                    : report.worst_index_from_reference},
            {"tau", report.tau},
            {"per_instance", rows}};
}

void write_report(const RobustnessReport& report, GradeVariant variant, const json& config,
                  const std::filesystem::path& path)
{
    json j = report_to_json(report, variant);
    j["config"] = config;
    save_json(j, path);
}

std::string render_plot(const Bounds& bounds, const ThresholdBand& band, const PlotOptions& options)
{
    require_dims(bounds.size() == band.size(), "bounds", static_cast<std::size_t>(band.size()),
                 static_cast<std::size_t>(bounds.size()));
    const Eigen::Index n = band.size();
    const double W = options.width;
    const double H = options.height;
    const double left = 60.0, right = 20.0, top = 36.0, bottom = 40.0;
    const double pw = W - left - right;
    const double ph = H - top - bottom;

    double ymin = band.lower().size() ? band.lower().minCoeff() : 0.0;
    double ymax = band.upper().size() ? band.upper().maxCoeff() : 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::isfinite(bounds.lower[i])) ymin = std::min(ymin, bounds.lower[i]);
        if (std::isfinite(bounds.upper[i])) ymax = std::max(ymax, bounds.upper[i]);
    }
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto xs = [&](Eigen::Index i) { return left + (n > 1 ? pw * static_cast<double>(i) / static_cast<double>(n - 1) : pw / 2); };
    auto ys = [&](double v) {
        v = std::clamp(v, ymin, ymax);
        return top + ph * (ymax - v) / (ymax - ymin);
    };
    auto region = [&](const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
        std::string pts;
        for (Eigen::Index i = 0; i < n; ++i) pts += fixed6(xs(i)) + "," + fixed6(ys(hi[i])) + " ";
        for (Eigen::Index i = n - 1; i >= 0; --i) pts += fixed6(xs(i)) + "," + fixed6(ys(lo[i])) + " ";
        if (!pts.empty()) pts.pop_back();
        return pts;
    };

    const RobustnessReport report = build_report(bounds, band);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << fixed6(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"14\">" << xml_escape(options.title) << "</text>\n";
    }
    // axes
    svg << "<g stroke=\"#444\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << fixed6(left) << "\" y1=\"" << fixed6(top + ph) << "\" x2=\"" << fixed6(left + pw)
        << "\" y2=\"" << fixed6(top + ph) << "\"/>\n";
    svg << "<line x1=\"" << fixed6(left) << "\" y1=\"" << fixed6(top) << "\" x2=\"" << fixed6(left)
        << "\" y2=\"" << fixed6(top + ph) << "\"/>\n";
    svg << "</g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#444\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = ymin + (ymax - ymin) * k / 4.0;
        svg << "<text x=\"" << fixed6(left - 6) << "\" y=\"" << fixed6(ys(v) + 3)
            << "\" text-anchor=\"end\">" << fixed6(v) << "</text>\n";
    }
    for (int k = 0; k <= 4 && n > 0; ++k) {
        const auto i = static_cast<Eigen::Index>((n - 1) * k / 4);
        svg << "<text x=\"" << fixed6(xs(i)) << "\" y=\"" << fixed6(top + ph + 16)
            << "\" text-anchor=\"middle\">" << i << "</text>\n";
    }
    svg << "</g>\n";

    if (n > 0) {
        svg << "<polygon class=\"band\" points=\"" << region(band.lower(), band.upper())
            << "\" fill=\"#1f4fd6\" fill-opacity=\"0.30\" stroke=\"#1f4fd6\" stroke-width=\"0.8\"/>\n";
        svg << "<polygon class=\"output-bounds\" points=\"" << region(bounds.lower, bounds.upper)
            << "\" fill=\"#d62728\" fill-opacity=\"0.45\" stroke=\"#d62728\" stroke-width=\"0.8\"/>\n";
        std::string ref;
        for (Eigen::Index i = 0; i < n; ++i) ref += fixed6(xs(i)) + "," + fixed6(ys(band.reference()[i])) + " ";
        ref.pop_back();
        svg << "<polyline class=\"reference\" points=\"" << ref
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    }

    for (const auto& r : report.per_instance) {
        if (r.within) continue;
        const bool below = r.band_lower - r.out_lower >= r.out_upper - r.band_upper;
        const double y = below ? ys(r.out_lower) : ys(r.out_upper);
        svg << "<circle class=\"violation\" data-index=\"" << r.index << "\" cx=\"" << fixed6(xs(r.index))
            << "\" cy=\"" << fixed6(y) << "\" r=\"3.000000\" fill=\"none\" stroke=\"#8b0000\" stroke-width=\"1.2\"/>\n";
    }
    if (report.verdict == Verdict::Violated) {
        const auto& w = report.per_instance[static_cast<std::size_t>(report.worst_index)];
        svg << "<text class=\"worst\" x=\"" << fixed6(xs(w.index)) << "\" y=\"" << fixed6(top + 12)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#8b0000\">t="
            << w.index << "</text>\n";
    }
    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<text x=\"" << fixed6(left + 8) << "\" y=\"" << fixed6(top + ph - 8)
        << "\" fill=\"#1f4fd6\">reference +/- " << fixed6(band.tau()) << "</text>\n"
        << "<text x=\"" << fixed6(left + 8) << "\" y=\"" << fixed6(top + ph - 22)
        << "\" fill=\"#d62728\">output bounds</text>\n"
        << "</g>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_plot(const Bounds& bounds, const ThresholdBand& band, const std::filesystem::path& path,
                const PlotOptions& options)
{
    write_file_atomic(path, render_plot(bounds, band, options));
}

} // namespace sigstar::io
