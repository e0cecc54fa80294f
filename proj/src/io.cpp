#include "gsum/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace gsum::io {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json num(double v) {
    if (std::isinf(v))
        return v > 0 ? ordered_json("+inf") : ordered_json("-inf");
    return ordered_json(v);
}

double num_from(const ordered_json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "+inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw DomainError("json: unexpected numeric sentinel '" + s + "'");
    }
    return j.get<double>();
}

void emit(const ordered_json& j, std::string& out) {
    switch (j.type()) {
    case ordered_json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            out += ordered_json(it.key()).dump();
            out += ':';
            emit(it.value(), out);
        }
        out += '}';
        break;
    }
    case ordered_json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first)
                out += ',';
            first = false;
            emit(v, out);
        }
        out += ']';
        break;
    }
    case ordered_json::value_t::number_float: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        out += buf;
        break;
    }
    default:
        out += j.dump();
        break;
    }
}

std::string emit_text(const ordered_json& j) {
    std::string out;
    emit(j, out);
    out += '\n';
    return out;
}

ordered_json mixture_to_dom(const ExponentialMixture& mix) {
    ordered_json m;
    m["name"] = mix.name;
    ordered_json atoms = ordered_json::array();
    for (const auto& at : mix.atoms) {
        ordered_json pair = ordered_json::array();
        pair.push_back(num(at.weight));
        pair.push_back(num(at.rate));
        atoms.push_back(pair);
    }
    m["atoms"] = atoms;
    m["power_q"] = mix.power_q ? num(*mix.power_q) : ordered_json(nullptr);
    return m;
}

ExponentialMixture mixture_from_dom(const ordered_json& m) {
    ExponentialMixture mix;
    mix.name = m.at("name").get<std::string>();
    for (const auto& pair : m.at("atoms"))
        mix.atoms.push_back({num_from(pair.at(0)), num_from(pair.at(1))});
    if (!m.at("power_q").is_null())
        mix.power_q = num_from(m.at("power_q"));
    return mix;
}

ordered_json vec_to_dom(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v)
        arr.push_back(num(x));
    return arr;
}

std::vector<double> vec_from_dom(const ordered_json& arr) {
    std::vector<double> v;
    for (const auto& x : arr)
        v.push_back(num_from(x));
    return v;
}

ordered_json case_input_to_dom(const CaseInput& in) {
    ordered_json j;
    j["suite"] = in.suite;
    j["gamma"] = num(in.gamma);
    j["n"] = in.n;
    j["c"] = num(in.c);
    j["alpha"] = num(in.alpha);
    j["m"] = in.m;
    j["k"] = in.k;
    j["x"] = num(in.x);
    j["max_order"] = in.max_order;
    j["coord_i"] = static_cast<long long>(in.coord_i);
    j["coord_j"] = static_cast<long long>(in.coord_j);
    j["variant"] = in.variant;
    j["a"] = vec_to_dom(in.a);
    j["b"] = vec_to_dom(in.b);
    j["point"] = vec_to_dom(in.point);
    ordered_json mixtures = ordered_json::array();
    for (const auto& m : in.mixtures)
        mixtures.push_back(mixture_to_dom(m));
    j["mixtures"] = mixtures;
    return j;
}

CaseInput case_input_from_dom(const ordered_json& j) {
    CaseInput in;
    in.suite = j.at("suite").get<std::string>();
    in.gamma = num_from(j.at("gamma"));
    in.n = j.at("n").get<int>();
    in.c = num_from(j.at("c"));
    in.alpha = num_from(j.at("alpha"));
    in.m = j.at("m").get<int>();
    in.k = j.at("k").get<int>();
    in.x = num_from(j.at("x"));
    in.max_order = j.at("max_order").get<int>();
    in.coord_i = j.at("coord_i").get<std::size_t>();
    in.coord_j = j.at("coord_j").get<std::size_t>();
    in.variant = j.at("variant").get<std::string>();
    in.a = vec_from_dom(j.at("a"));
    in.b = vec_from_dom(j.at("b"));
    in.point = vec_from_dom(j.at("point"));
    for (const auto& m : j.at("mixtures"))
        in.mixtures.push_back(mixture_from_dom(m));
    return in;
}

ordered_json report_to_dom(const CertificateReport& report) {
    ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = static_cast<long long>(report.seed);
    j["trials"] = report.trials;
    j["tolerance"] = num(report.tolerance);
    j["min_margin"] = num(report.min_margin);
    j["verdict"] = report.pass ? "pass" : "fail";
    ordered_json notes = ordered_json::array();
    for (const auto& nn : report.notes)
        notes.push_back(nn);
    j["notes"] = notes;
    ordered_json cases = ordered_json::array();
    for (const CaseResult& cr : report.cases) {
        ordered_json c;
        c["index"] = cr.index;
        c["pass"] = cr.pass;
        c["tag"] = cr.tag;
        c["lhs"] = num(cr.lhs);
        c["rhs"] = num(cr.rhs);
        c["margin"] = num(cr.margin);
        c["err_est"] = num(cr.err_est);
        c["derived"] = num(cr.derived);
        c["input"] = case_input_to_dom(cr.input);
        cases.push_back(c);
    }
    j["cases"] = cases;
    return j;
}

} // namespace

std::string format_double(double v) {
    if (std::isinf(v))
        return v > 0 ? "+inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string reserialize_json(const std::string& text) {
    return emit_text(ordered_json::parse(text));
}

std::string report_to_json(const CertificateReport& report) {
    return emit_text(report_to_dom(report));
}

CertificateReport report_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    CertificateReport report;
    report.suite = j.at("suite").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.trials = j.at("trials").get<long>();
    report.tolerance = num_from(j.at("tolerance"));
    report.min_margin = num_from(j.at("min_margin"));
    report.pass = j.at("verdict").get<std::string>() == "pass";
    for (const auto& nn : j.at("notes"))
        report.notes.push_back(nn.get<std::string>());
    for (const auto& c : j.at("cases")) {
        CaseResult cr;
        cr.index = c.at("index").get<long>();
        cr.pass = c.at("pass").get<bool>();
        cr.tag = c.at("tag").get<std::string>();
        cr.lhs = num_from(c.at("lhs"));
        cr.rhs = num_from(c.at("rhs"));
        cr.margin = num_from(c.at("margin"));
        cr.err_est = num_from(c.at("err_est"));
        cr.derived = num_from(c.at("derived"));
        cr.input = case_input_from_dom(c.at("input"));
        report.cases.push_back(std::move(cr));
    }
    return report;
}

std::string case_to_json(const CaseInput& input) {
    return emit_text(case_input_to_dom(input));
}

CaseInput case_from_json(const std::string& text) {
    return case_input_from_dom(ordered_json::parse(text));
}

std::string curve_to_csv(const DensityCurve& curve) {
    ordered_json header;
    header["gamma"] = num(curve.shape);
    header["weights"] = vec_to_dom(curve.weights);
    header["engine"] = curve.engine;
    if (!curve.config.empty()) {
        ordered_json cfg;
        for (const auto& [key, value] : curve.config)
            cfg[key] = value;
        header["config"] = cfg;
    }
    std::string head;
    emit(header, head);

    std::string out = "# " + head + "\n";
    out += "x,density,err_est\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out += format_double(curve.grid[i]);
        out += ',';
        out += format_double(curve.values[i]);
        out += ',';
        out += format_double(curve.err[i]);
        out += '\n';
    }
    return out;
}

DensityCurve curve_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw DomainError("curve csv: missing JSON header line");
    const ordered_json header = ordered_json::parse(line.substr(2));
    DensityCurve curve;
    curve.shape = num_from(header.at("gamma"));
    curve.weights = vec_from_dom(header.at("weights"));
    curve.engine = header.at("engine").get<std::string>();
    if (header.contains("config"))
        for (auto it = header.at("config").begin(); it != header.at("config").end(); ++it)
            curve.config.emplace_back(it.key(), it.value().get<std::string>());
    if (!std::getline(in, line) || line != "x,density,err_est")
        throw DomainError("curve csv: missing column header");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(row, cell, ','))
                throw DomainError("curve csv: short row");
            vals[i] = std::strtod(cell.c_str(), nullptr);
        }
        curve.grid.push_back(vals[0]);
        curve.values.push_back(vals[1]);
        curve.err.push_back(vals[2]);
    }
    return curve;
}

std::string entropy_results_json(const std::vector<EntropyResult>& results) {
    ordered_json arr = ordered_json::array();
    for (const EntropyResult& r : results) {
        ordered_json j;
        j["order"] = num(r.order);
        j["value"] = num(r.value);
        j["err_est"] = num(r.err_est);
        j["engine"] = r.engine;
        arr.push_back(j);
    }
    std::string out;
    emit(arr, out);
    return out;
}

std::string moment_table_json(const MomentTable& table) {
    ordered_json j;
    j["gamma"] = num(table.shape);
    j["weights"] = vec_to_dom(table.weights);
    j["max_order"] = table.max_order;
    ordered_json cum = ordered_json::array();
    for (int k = 2; k <= table.max_order; ++k)
        cum.push_back(num(table.cumulants[static_cast<std::size_t>(k)]));
    j["cumulants"] = cum;
    j["central_moments"] = vec_to_dom(table.central_moments);
    std::string out;
    emit(j, out);
    return out;
}

std::string max_density_json(const MaxDensityResult& result) {
    ordered_json j;
    j["m"] = result.infinite ? ordered_json("+inf") : num(result.m);
    j["argmax"] = num(result.argmax);
    j["err_est"] = num(result.err_est);
    j["engine"] = result.engine;
    j["h_inf"] = result.infinite ? ordered_json("-inf") : num(-std::log(result.m));
    std::string out;
    emit(j, out);
    return out;
}

std::string run_record(const std::string& command,
                       const std::vector<std::pair<std::string, std::string>>& config,
                       const std::string& results_json) {
    ordered_json cfg;
    cfg["command"] = command;
    for (const auto& [key, value] : config)
        cfg[key] = value;
    std::string out = "{\"version\":\"";
    out += kVersion;
    out += "\",\"config\":";
    emit(cfg, out);
    out += ",\"results\":";
    out += results_json;
    out += "}\n";
    return out;
}

} // namespace gsum::io
