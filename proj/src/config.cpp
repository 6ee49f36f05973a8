#include "waveguide/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_doubles(const std::string& v) {
    std::istringstream is(v);
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    if (out.empty()) throw std::runtime_error("config error: expected numbers, got '" + v + "'");
    return out;
}

double parse_double(const std::string& v) {
    const auto xs = parse_doubles(v);
    if (xs.size() != 1)
        throw std::runtime_error("config error: expected one number, got '" + v + "'");
    return xs[0];
}

int parse_int(const std::string& v) { return static_cast<int>(std::lround(parse_double(v))); }

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw std::runtime_error("config error: expected boolean, got '" + v + "'");
}

// "a b : c0 c1 ..." -> polynomial piece on [a,b]
PolyPiece parse_piece(const std::string& v) {
    const auto colon = v.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("config error: piece needs 'a b : c0 c1 ...', got '" + v + "'");
    const auto ab = parse_doubles(v.substr(0, colon));
    if (ab.size() != 2)
        throw std::runtime_error("config error: piece interval needs two endpoints");
    PolyPiece p;
    p.a = ab[0];
    p.b = ab[1];
    p.coeff = parse_doubles(v.substr(colon + 1));
    return p;
}

void set_key(ExperimentConfig& c, const std::string& section, const std::string& key,
             const std::string& value) {
    auto unknown = [&]() -> std::runtime_error {
        return std::runtime_error("config error: unknown key '" + section + "." + key + "'");
    };
    if (section == "cross_section") {
        if (key == "n") c.n = parse_int(value);
        else if (key == "x1_min") c.x1_min = parse_double(value);
        else if (key == "x1_max") c.x1_max = parse_double(value);
        else if (key == "x2_min") c.x2_min = parse_double(value);
        else if (key == "x2_max") c.x2_max = parse_double(value);
        else throw unknown();
    } else if (section == "potential") {
        if (key == "name") c.pot_name = value;
        else if (key == "amplitude_re") c.amplitude.real(parse_double(value));
        else if (key == "amplitude_im") c.amplitude.imag(parse_double(value));
        else if (key == "halfwidth1") c.halfwidth[0] = parse_double(value);
        else if (key == "halfwidth2") c.halfwidth[1] = parse_double(value);
        else if (key == "halfwidth3") c.halfwidth[2] = parse_double(value);
        else if (key == "mean_zero") c.mean_zero = parse_bool(value);
        else if (key == "x1_piece" || key == "x2_piece" || key == "x3_piece") {
            const int axis = key[1] - '1';
            if (static_cast<int>(c.axes.size()) <= axis) c.axes.resize(axis + 1);
            c.axes[axis].pieces.push_back(parse_piece(value));
        } else throw unknown();
    } else if (section == "scaling") {
        if (key == "alpha") c.alpha = parse_double(value);
        else if (key == "h") c.h_list = parse_doubles(value);
        else if (key == "h_geometric") {
            const auto v = parse_doubles(value);
            if (v.size() != 3)
                throw std::runtime_error("config error: h_geometric needs 'start stop count'");
            const int count = static_cast<int>(std::lround(v[2]));
            if (count < 2) throw std::runtime_error("config error: h_geometric count >= 2");
            c.h_list.clear();
            for (int i = 0; i < count; ++i)
                c.h_list.push_back(v[0] * std::pow(v[1] / v[0], double(i) / (count - 1)));
        } else throw unknown();
    } else if (section == "solver") {
        if (key == "j_max") c.disc.j_max = parse_int(value);
        else if (key == "nodes_per_panel") c.disc.nodes_per_panel = parse_int(value);
        else if (key == "series_order") c.disc.series_order = parse_int(value);
        else if (key == "tol_k") c.disc.tol_k = parse_double(value);
        else if (key == "max_iter") c.disc.max_iter = parse_int(value);
        else throw unknown();
    } else if (section == "oracle") {
        if (key == "enabled") c.oracle_enabled = parse_bool(value);
        else if (key == "half_length") c.oracle_half_length = parse_double(value);
        else if (key == "delta") c.oracle_delta = parse_double(value);
        else if (key == "modes") c.oracle_modes = parse_int(value);
        else throw unknown();
    } else if (section == "output") {
        if (key == "csv") c.csv_path = value;
        else if (key == "json") c.json_path = value;
        else if (key == "emit") {
            if (value != "csv" && value != "json" && value != "both")
                throw std::runtime_error("config error: emit must be csv|json|both");
            c.emit = value;
        } else throw unknown();
    } else {
        throw std::runtime_error("config error: unknown section '" + section + "'");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config error: bad section header at line " +
                                         std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config error: expected key = value at line " +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw std::runtime_error("config error: key outside any section at line " +
                                     std::to_string(lineno));
        set_key(cfg, section, key, value);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config error: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("config error: override needs section.key=value");
    const std::string path = assignment.substr(0, eq);
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw std::runtime_error("config error: override needs section.key=value");
    set_key(cfg, path.substr(0, dot), path.substr(dot + 1), assignment.substr(eq + 1));
    cfg.validate();
}

CrossSection ExperimentConfig::cross_section() const {
    if (n == 2) return CrossSection::interval(x1_min, x1_max);
    if (n == 3) return CrossSection::rectangle(x1_min, x1_max, x2_min, x2_max);
    throw std::runtime_error("config error: n must be 2 or 3");
}

PotentialSpec ExperimentConfig::potential() const {
    return make_catalog_potential(pot_name, n, amplitude, halfwidth, axes, mean_zero);
}

void ExperimentConfig::validate() const {
    if (n != 2 && n != 3) throw std::runtime_error("config error: n must be 2 or 3");
    if (h_list.empty()) throw std::runtime_error("config error: h list must be nonempty");
    for (double h : h_list)
        if (!(h > 0.0 && h < 1.0)) throw std::runtime_error("config error: each h must lie in (0,1)");
    if (!(alpha < 1.0)) throw std::runtime_error("config error: alpha must be < 1");
}

}  // namespace wg
