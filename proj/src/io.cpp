#include "kf/io.hpp"

#include <cmath>
#include <fstream>

#include "kf/errors.hpp"

namespace kf {

namespace {

std::pair<double, double> weights_of(const nlohmann::json& j) {
    if (!j.contains("weights")) return {0.5, 0.5};
    const auto& w = j.at("weights");
    if (!w.is_array() || w.size() != 2) throw ConfigError("weights must be a [w1, w2] pair");
    return {w[0].get<double>(), w[1].get<double>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_num(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ConfigError("trailing characters in number: " + s);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("invalid number: " + s);
    }
}

}  // namespace

Measure measure_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type")) {
        throw ConfigError("measure description needs a \"type\" field");
    }
    std::string type = j.at("type").get<std::string>();
    if (type == "lebesgue") return Measure::lebesgue();
    if (type == "cantor") {
        auto [w1, w2] = weights_of(j);
        return Measure::cantor(w1, w2);
    }
    if (type == "cantor_approx") {
        auto [w1, w2] = weights_of(j);
        if (!j.contains("level")) throw ConfigError("cantor_approx needs a \"level\" field");
        return Measure::cantor_approx(w1, w2, j.at("level").get<int>());
    }
    if (type == "mixture") {
        if (!j.contains("base") || !j.contains("epsilon")) {
            throw ConfigError("mixture needs \"base\" and \"epsilon\" fields");
        }
        return Measure::mixture(measure_from_json(j.at("base")), j.at("epsilon").get<double>());
    }
    if (type == "tabulated") {
        if (!j.contains("samples")) throw ConfigError("tabulated measure needs \"samples\"");
        std::vector<std::pair<double, double>> samples;
        for (const auto& row : j.at("samples")) {
            if (!row.is_array() || row.size() != 2) {
                throw ConfigError("tabulated samples must be [x, F] pairs");
            }
            samples.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        return Measure::tabulated(std::move(samples));
    }
    throw ConfigError("unknown measure type: " + type);
}

FamilySpec family_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        throw ConfigError("family description needs a \"kind\" field");
    }
    FamilySpec spec;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cantor_levels") {
        spec.kind = FamilyKind::CantorLevels;
    } else if (kind == "epsilon_mixture") {
        spec.kind = FamilyKind::EpsilonMixture;
    } else if (kind == "composed") {
        spec.kind = FamilyKind::Composed;
    } else {
        throw ConfigError("unknown family kind: " + kind);
    }
    std::tie(spec.w1, spec.w2) = weights_of(j);
    if (j.contains("levels")) spec.levels = j.at("levels").get<std::vector<int>>();
    if (j.contains("epsilons")) spec.epsilons = j.at("epsilons").get<std::vector<double>>();
    if (j.contains("base")) spec.base = measure_from_json(j.at("base"));
    return spec;
}

GridFunction rhs_from_descriptor(const std::string& desc, GridPtr grid) {
    auto head = desc.substr(0, desc.find(':'));
    std::string args = desc.find(':') == std::string::npos ? "" : desc.substr(desc.find(':') + 1);

    if (head == "const") {
        double c = args.empty() ? 1.0 : parse_num(args);
        return GridFunction::sample(std::move(grid), [c](double) { return c; });
    }
    if (head == "x" && args.empty()) {
        return GridFunction::sample(std::move(grid), [](double x) { return x; });
    }
    if (head == "x1mx" && args.empty()) {
        return GridFunction::sample(std::move(grid), [](double x) { return x * (1.0 - x); });
    }
    if (head == "sin") {
        double k = args.empty() ? 1.0 : parse_num(args);
        return GridFunction::sample(std::move(grid),
                                    [k](double x) { return std::sin(k * M_PI * x); });
    }
    if (head == "hat") {
        auto parts = split(args, ',');
        if (parts.size() != 3) throw ConfigError("hat descriptor needs a,b,c");
        double a = parse_num(parts[0]), b = parse_num(parts[1]), c = parse_num(parts[2]);
        if (!(0.0 <= a && a < b && b < c && c <= 1.0)) {
            throw ConfigError("hat knots must satisfy 0 <= a < b < c <= 1");
        }
        std::vector<double> pts(grid->begin(), grid->end());
        pts.insert(pts.end(), {a, b, c});
        auto g = make_grid_points(std::move(pts));
        return GridFunction::sample(std::move(g), [a, b, c](double x) {
            if (x <= a || x >= c) return 0.0;
            return x <= b ? (x - a) / (b - a) : (c - x) / (c - b);
        });
    }
    throw ConfigError("unknown rhs descriptor: " + desc);
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

}  // namespace kf
