#include "freenoise/error.hpp"
#include "freenoise/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace freenoise {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double number(const std::map<std::string, std::string>& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) {
            throw std::invalid_argument(it->second);
        }
        return v;
    } catch (const std::exception&) {
        throw ValidationError("density config: '" + key + "' is not a number: " + it->second);
    }
}

}  // namespace

SpectralDensity parse_density_config(std::string_view text) {
    static const char* const kKeys[] = {"kind", "H", "N", "gamma", "scale", "C1", "C2", "u_max", "tol"};
    std::map<std::string, std::string> kv;
    std::string normalized(text);
    for (char& c : normalized) {
        if (c == ',' || c == ';') {
            c = '\n';
        }
    }
    std::istringstream lines(normalized);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        // Allow several `k=v` tokens on one line.
        std::istringstream tokens(line);
        std::string token;
        std::string pending;
        while (tokens >> token) {
            pending += token;
            if (pending.back() == '=' || pending.find('=') == std::string::npos) {
                continue;
            }
            const auto eq = pending.find('=');
            const std::string key = trim(pending.substr(0, eq));
            const std::string value = trim(pending.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ValidationError("density config: malformed entry '" + pending + "'");
            }
            if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
                throw ValidationError("density config: unknown key '" + key + "'");
            }
            kv[key] = value;
            pending.clear();
        }
        if (!pending.empty()) {
            throw ValidationError("density config: malformed entry '" + pending + "'");
        }
    }
    for (const auto& [key, value] : kv) {
        if (key != "kind") {
            number(kv, key, 0.0);
        }
    }
    const std::string kind = kv.count("kind") ? kv.at("kind") : "lebesgue";
    const double scale = number(kv, "scale", 1.0);
    SpectralDensity d;
    if (kind == "lebesgue") {
        d = SpectralDensity::lebesgue();
    } else if (kind == "fbm") {
        d = SpectralDensity::fbm(number(kv, "H", 0.5), scale);
    } else if (kind == "poly") {
        const double n = number(kv, "N", 0.0);
        if (n < 0 || n != std::floor(n)) {
            throw ValidationError("density config: N must be a non-negative integer");
        }
        d = SpectralDensity::poly(static_cast<unsigned>(n), scale);
    } else if (kind == "powerlaw") {
        d = SpectralDensity::power_law(number(kv, "gamma", 0.0), scale);
    } else if (kind == "exp" || kind == "exponential") {
        d = SpectralDensity::exponential(number(kv, "C1", 1.0), number(kv, "C2", 1.0));
    } else {
        throw ValidationError("density config: unknown kind '" + kind + "' (lebesgue|fbm|poly|powerlaw|exp)");
    }
    d.u_max = number(kv, "u_max", 0.0);
    d.tol = number(kv, "tol", 1e-9);
    if (d.u_max < 0.0 || !(d.tol > 0.0)) {
        throw ValidationError("density config: u_max must be >= 0 and tol > 0");
    }
    return d;
}

SpectralDensity load_density_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open density config " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_density_config(buf.str());
}

}  // namespace freenoise
