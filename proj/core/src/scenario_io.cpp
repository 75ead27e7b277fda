#include "satnoma/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "satnoma/errors.hpp"

namespace satnoma {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct KeyValue {
    std::string value;
    int line = 0;
};

std::vector<double> parse_numbers(const std::string& value, const std::string& key, int line) {
    std::string normalized = value;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<double> out;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ValidationError("line " + std::to_string(line) + ": key '" + key +
                                  "': cannot parse number '" + token + "'");
        }
    }
    if (out.empty())
        throw ValidationError("line " + std::to_string(line) + ": key '" + key + "': empty value");
    return out;
}

// Scalar broadcasts to every user; otherwise the list length must match.
std::vector<double> per_user(const std::vector<double>& v, int users, const std::string& key, int line) {
    if (static_cast<int>(v.size()) == 1) return std::vector<double>(users, v[0]);
    if (static_cast<int>(v.size()) != users)
        throw ValidationError("line " + std::to_string(line) + ": key '" + key + "' has " +
                              std::to_string(v.size()) + " entries for " + std::to_string(users) +
                              " users");
    return v;
}

} // namespace

NomaScenario parse_scenario(std::istream& in, const std::string& source_name) {
    std::map<std::string, KeyValue> kv;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ValidationError(source_name + ":" + std::to_string(line) +
                                  ": expected 'key = value', got '" + text + "'");
        const std::string key = lower(trim(text.substr(0, eq)));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError(source_name + ":" + std::to_string(line) + ": empty key or value");
        if (kv.count(key))
            throw ValidationError(source_name + ":" + std::to_string(line) + ": duplicate key '" + key + "'");
        kv[key] = {value, line};
    }

    auto take = [&](const std::string& key) -> std::optional<KeyValue> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        KeyValue v = it->second;
        kv.erase(it);
        return v;
    };
    auto require = [&](const std::string& key) -> KeyValue {
        auto v = take(key);
        if (!v) throw ValidationError(source_name + ": missing required key '" + key + "'");
        return *v;
    };

    const KeyValue alloc_kv = require("alloc");
    const std::vector<double> alloc = parse_numbers(alloc_kv.value, "alloc", alloc_kv.line);
    const int users = static_cast<int>(alloc.size());

    if (auto u = take("users")) {
        const auto n = parse_numbers(u->value, "users", u->line);
        if (n.size() != 1 || n[0] != users)
            throw ValidationError(source_name + ":" + std::to_string(u->line) +
                                  ": 'users' disagrees with the alloc list length");
    }

    const KeyValue rates_kv = require("rates_bpcu");
    const std::vector<double> rates =
        per_user(parse_numbers(rates_kv.value, "rates_bpcu", rates_kv.line), users, "rates_bpcu", rates_kv.line);

    ShadowedRicianParams fading;
    if (auto f = take("fading")) {
        fading = ShadowedRicianParams::preset(trim(f->value));
        if (kv.count("fading_b") || kv.count("fading_m") || kv.count("fading_omega"))
            throw ValidationError(source_name + ": give either 'fading' or the fading_b/m/omega triple, not both");
    } else {
        const KeyValue b = require("fading_b");
        const KeyValue m = require("fading_m");
        const KeyValue om = require("fading_omega");
        fading.b = parse_numbers(b.value, "fading_b", b.line)[0];
        fading.m = parse_numbers(m.value, "fading_m", m.line)[0];
        fading.omega = parse_numbers(om.value, "fading_omega", om.line)[0];
    }

    SicMode sic;
    {
        const KeyValue s = require("sic");
        const std::string kind = lower(trim(s.value));
        if (kind == "psic") {
            sic = SicMode::psic();
            if (kv.count("omega_i_db"))
                throw ValidationError(source_name + ": 'omega_i_db' is only meaningful with sic = ipsic");
        } else if (kind == "ipsic") {
            const KeyValue o = require("omega_i_db");
            sic = SicMode::ipsic(std::pow(10.0, parse_numbers(o.value, "omega_i_db", o.line)[0] / 10.0));
        } else {
            throw ValidationError(source_name + ":" + std::to_string(s.line) +
                                  ": sic must be 'psic' or 'ipsic', got '" + s.value + "'");
        }
    }

    LinkGeometry base;
    auto scalar = [&](const std::string& key, double fallback) {
        if (auto v = take(key)) return parse_numbers(v->value, key, v->line)[0];
        return fallback;
    };
    base.carrier_hz = scalar("carrier_hz", base.carrier_hz);
    base.angle3db_deg = scalar("angle3db_deg", base.angle3db_deg);
    base.sat_gain_dbi = scalar("sat_gain_dbi", base.sat_gain_dbi);
    base.user_gain_dbi = scalar("user_gain_dbi", base.user_gain_dbi);

    std::vector<double> distances(users, base.distance_m);
    if (auto v = take("distance_m"))
        distances = per_user(parse_numbers(v->value, "distance_m", v->line), users, "distance_m", v->line);
    std::vector<double> angles(users, base.angle_deg);
    if (auto v = take("angle_deg"))
        angles = per_user(parse_numbers(v->value, "angle_deg", v->line), users, "angle_deg", v->line);

    SnrReference ref = SnrReference::transmit;
    if (auto v = take("snr_ref")) {
        const std::string r = lower(trim(v->value));
        if (r == "transmit") ref = SnrReference::transmit;
        else if (r == "boresight") ref = SnrReference::boresight;
        else
            throw ValidationError(source_name + ":" + std::to_string(v->line) +
                                  ": snr_ref must be 'transmit' or 'boresight'");
    }

    if (!kv.empty())
        throw ValidationError(source_name + ":" + std::to_string(kv.begin()->second.line) +
                              ": unknown key '" + kv.begin()->first + "'");

    std::vector<NomaUser> list;
    list.reserve(users);
    for (int i = 0; i < users; ++i) {
        NomaUser u;
        u.alloc = alloc[i];
        u.rate_bpcu = rates[i];
        u.geometry = base;
        u.geometry.distance_m = distances[i];
        u.geometry.angle_deg = angles[i];
        u.fading = fading;
        list.push_back(u);
    }
    return NomaScenario::validated(std::move(list), sic, ref);
}

NomaScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    return parse_scenario(in, path);
}

std::string to_string(SweepMode m) {
    switch (m) {
        case SweepMode::exact: return "exact";
        case SweepMode::asymptote: return "asymptote";
        case SweepMode::floor: return "floor";
        case SweepMode::mc: return "mc";
        case SweepMode::oma: return "oma";
    }
    return "unknown";
}

SweepMode parse_sweep_mode(const std::string& name) {
    const std::string n = lower(trim(name));
    if (n == "exact") return SweepMode::exact;
    if (n == "asymptote") return SweepMode::asymptote;
    if (n == "floor") return SweepMode::floor;
    if (n == "mc") return SweepMode::mc;
    if (n == "oma") return SweepMode::oma;
    throw ValidationError("unknown mode '" + name + "' (expected exact|asymptote|floor|mc|oma)");
}

std::vector<double> SweepSpec::snr_grid_db() const {
    std::vector<double> grid;
    // A half-step slack keeps the stop point on the grid despite rounding.
    for (double v = snr_db_start; v <= snr_db_stop + 0.5 * snr_db_step; v += snr_db_step)
        grid.push_back(v);
    return grid;
}

void SweepSpec::validate(int user_count) const {
    if (!(snr_db_step > 0.0)) throw ValidationError("sweep: snr step must be > 0");
    if (snr_db_start > snr_db_stop) throw ValidationError("sweep: snr start must be <= stop");
    for (int u : users)
        if (u < 1 || u > user_count)
            throw ValidationError("sweep: user index " + std::to_string(u) + " out of range");
    if (modes.empty()) throw ValidationError("sweep: at least one mode required");
}

namespace {

NomaScenario recipe_scenario(const std::string& preset, const std::vector<double>& angles,
                             SicMode sic) {
    std::vector<NomaUser> users;
    const double alloc[] = {0.5, 0.4, 0.1};
    const double rates[] = {0.1, 0.5, 1.0};
    for (int i = 0; i < 3; ++i) {
        NomaUser u;
        u.alloc = alloc[i];
        u.rate_bpcu = rates[i];
        u.geometry = LinkGeometry{};
        u.geometry.angle_deg = angles[i];
        u.fading = ShadowedRicianParams::preset(preset);
        users.push_back(u);
    }
    return NomaScenario::validated(std::move(users), sic, SnrReference::boresight);
}

} // namespace

Recipe figure_recipe(const std::string& name, std::optional<double> omega_i_db_override) {
    const std::string which = lower(trim(name));
    Recipe recipe;
    recipe.name = which;
    recipe.sweep.users = {1, 2, 3};
    if (which == "fig1") {
        const double omega_i_db = omega_i_db_override.value_or(-30.0);
        recipe.runs.push_back(
            {"", recipe_scenario("fhs", {0.1, 0.1, 0.1},
                                 SicMode::ipsic(std::pow(10.0, omega_i_db / 10.0)))});
        recipe.sweep.snr_db_start = 0.0;
        recipe.sweep.snr_db_stop = 50.0;
        recipe.sweep.snr_db_step = 5.0;
        recipe.sweep.modes = {SweepMode::exact, SweepMode::asymptote, SweepMode::floor,
                              SweepMode::mc, SweepMode::oma};
        return recipe;
    }
    if (which == "fig2") {
        for (const char* preset : {"fhs", "as", "ils"})
            recipe.runs.push_back({preset, recipe_scenario(preset, {0.1, 0.2, 0.3}, SicMode::psic())});
        recipe.sweep.snr_db_start = 0.0;
        recipe.sweep.snr_db_stop = 40.0;
        recipe.sweep.snr_db_step = 5.0;
        recipe.sweep.modes = {SweepMode::exact, SweepMode::mc};
        return recipe;
    }
    if (which == "fig3") {
        for (double angle : {0.1, 0.2, 0.3}) {
            std::ostringstream label;
            label << "angle" << angle << "deg";
            recipe.runs.push_back(
                {label.str(), recipe_scenario("fhs", {angle, angle, angle}, SicMode::psic())});
        }
        recipe.sweep.snr_db_start = 0.0;
        recipe.sweep.snr_db_stop = 40.0;
        recipe.sweep.snr_db_step = 5.0;
        recipe.sweep.modes = {SweepMode::exact, SweepMode::mc};
        return recipe;
    }
    throw ValidationError("unknown preset '" + name + "' (expected fig1|fig2|fig3)");
}

} // namespace satnoma
