#include "uavnoma/scenario_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uavnoma {

using nlohmann::json;

namespace {

json vec3(const Position3D& p) { return json::array({p(0), p(1), p(2)}); }

Position3D to_vec3(const json& j, const std::string& key)
{
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("scenario: '" + key + "' must be an array of 3 numbers");
    Position3D p;
    for (int i = 0; i < 3; ++i) {
        if (!j[static_cast<std::size_t>(i)].is_number())
            throw std::invalid_argument("scenario: '" + key + "' must be numeric");
        p(i) = j[static_cast<std::size_t>(i)].get<double>();
    }
    return p;
}

template <class T>
void read(const json& j, const char* key, T& out)
{
    auto it = j.find(key);
    if (it == j.end()) return;
    if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer())
            throw std::invalid_argument(std::string("scenario: '") + key + "' must be an integer");
    } else {
        if (!it->is_number())
            throw std::invalid_argument(std::string("scenario: '") + key + "' must be a number");
    }
    out = it->get<T>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where)
{
    if (!j.is_object()) throw std::invalid_argument("scenario: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("scenario: unknown key '" + where + it.key() + "'");
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix + it.key();
        if (it->is_object()) {
            flatten(*it, key + ".", out);
        } else {
            out.emplace_back(key, it->dump());
        }
    }
}

} // namespace

Scenario scenario_from_json(const json& j)
{
    static const std::set<std::string> top = {
        "topology", "rate_c", "rate_e", "xi_u", "xi_f", "m_cf", "b_cf", "omega_cf",
        "m_cu", "m_eu", "m_uf", "eta_los_db", "eta_nlos_db", "carrier_freq_hz",
        "gain_c_dbi", "gain_f_dbi", "noise_density_dbm_hz", "bandwidth_hz",
        "p_max1_dbm", "p_max2_dbm", "theta1", "theta2", "network_dim"};
    static const std::set<std::string> topo = {"pos_c", "pos_e", "pos_f", "pos_u",
                                               "mobility_radius"};
    reject_unknown(j, top, "");

    Scenario s;
    if (auto it = j.find("topology"); it != j.end()) {
        reject_unknown(*it, topo, "topology.");
        Topology& t = s.topology;
        if (it->contains("pos_c")) t.pos_c = to_vec3(it->at("pos_c"), "pos_c");
        if (it->contains("pos_e")) t.pos_e = to_vec3(it->at("pos_e"), "pos_e");
        if (it->contains("pos_f")) t.pos_f = to_vec3(it->at("pos_f"), "pos_f");
        if (it->contains("pos_u")) t.pos_u = to_vec3(it->at("pos_u"), "pos_u");
        if (it->contains("mobility_radius")) {
            read(*it, "mobility_radius", t.mobility_radius);
        } else {
            t.mobility_radius = distance(t.pos_c, t.pos_f) / 2.0;
        }
    }
    read(j, "rate_c", s.rate_c);
    read(j, "rate_e", s.rate_e);
    read(j, "xi_u", s.xi_u);
    read(j, "xi_f", s.xi_f);
    read(j, "m_cf", s.m_cf);
    read(j, "b_cf", s.b_cf);
    read(j, "omega_cf", s.omega_cf);
    read(j, "m_cu", s.m_cu);
    read(j, "m_eu", s.m_eu);
    read(j, "m_uf", s.m_uf);
    read(j, "eta_los_db", s.eta_los_db);
    read(j, "eta_nlos_db", s.eta_nlos_db);
    read(j, "carrier_freq_hz", s.carrier_freq_hz);
    read(j, "gain_c_dbi", s.gain_c_dbi);
    read(j, "gain_f_dbi", s.gain_f_dbi);
    read(j, "noise_density_dbm_hz", s.noise_density_dbm_hz);
    read(j, "bandwidth_hz", s.bandwidth_hz);
    read(j, "p_max1_dbm", s.p_max1_dbm);
    read(j, "p_max2_dbm", s.p_max2_dbm);
    read(j, "theta1", s.theta1);
    read(j, "theta2", s.theta2);
    read(j, "network_dim", s.network_dim);
    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s)
{
    const Topology& t = s.topology;
    return json{
        {"topology", {{"pos_c", vec3(t.pos_c)}, {"pos_e", vec3(t.pos_e)},
                      {"pos_f", vec3(t.pos_f)}, {"pos_u", vec3(t.pos_u)},
                      {"mobility_radius", t.mobility_radius}}},
        {"rate_c", s.rate_c},
        {"rate_e", s.rate_e},
        {"xi_u", s.xi_u},
        {"xi_f", s.xi_f},
        {"m_cf", s.m_cf},
        {"b_cf", s.b_cf},
        {"omega_cf", s.omega_cf},
        {"m_cu", s.m_cu},
        {"m_eu", s.m_eu},
        {"m_uf", s.m_uf},
        {"eta_los_db", s.eta_los_db},
        {"eta_nlos_db", s.eta_nlos_db},
        {"carrier_freq_hz", s.carrier_freq_hz},
        {"gain_c_dbi", s.gain_c_dbi},
        {"gain_f_dbi", s.gain_f_dbi},
        {"noise_density_dbm_hz", s.noise_density_dbm_hz},
        {"bandwidth_hz", s.bandwidth_hz},
        {"p_max1_dbm", s.p_max1_dbm},
        {"p_max2_dbm", s.p_max2_dbm},
        {"theta1", s.theta1},
        {"theta2", s.theta2},
        {"network_dim", s.network_dim},
    };
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("scenario file '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

std::vector<std::pair<std::string, std::string>> scenario_meta(const Scenario& s)
{
    std::vector<std::pair<std::string, std::string>> out;
    flatten(scenario_to_json(s), "", out);
    return out;
}

CsvWriter::CsvWriter(std::ostream& os,
                     const std::vector<std::pair<std::string, std::string>>& meta,
                     const std::vector<std::string>& header)
    : os_(os), width_(header.size())
{
    os_ << "# schema=1\n";
    for (const auto& [k, v] : meta) os_ << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells)
{
    if (cells.size() != width_) throw std::invalid_argument("csv: row width mismatch");
    std::ostringstream line;
    line << std::setprecision(9);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line << ',';
        std::visit([&](const auto& v) { line << v; }, cells[i]);
    }
    os_ << line.str() << '\n';
}

} // namespace uavnoma
