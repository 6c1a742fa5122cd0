#include <cmath>
#include <fstream>

#include "json.hpp"
#include "sdym/gauge.hpp"
#include "sdym/probes.hpp"

namespace sdym {

std::vector<Vec4> family_probes(const FamilyInfo& meta, uint64_t seed, int count, double radius) {
    std::vector<Vec4> exclusions;
    double excl_radius = 0.0;
    for (const auto& p : meta.poles) {
        exclusions.push_back(p.center);
        excl_radius = std::max(excl_radius, 0.1 * std::sqrt(p.weight));
    }
    if (!exclusions.empty()) excl_radius = std::max(excl_radius, 0.1 * meta.scale);
    return sample_ball(seed, count, meta.center, radius, exclusions, excl_radius);
}

GaugePotential potential_from_family(const FamilyInfo& meta) {
    if (meta.family == "bpst")
        return meta.anti ? anti_bpst_instanton(meta.center, meta.scale, meta.n)
                         : bpst_instanton(meta.center, meta.scale, meta.n);
    if (meta.family == "thooft")
        return meta.anti ? anti_thooft_ansatz(meta.poles, meta.n) : thooft_ansatz(meta.poles, meta.n);
    if (meta.family == "zero") return zero_potential(meta.n);
    throw std::invalid_argument("potential_from_family: unknown family " + meta.family);
}

std::vector<GaugePotential> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_fixtures: cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw std::runtime_error("load_fixtures: expected a JSON array");
    std::vector<GaugePotential> out;
    for (const auto& rec : doc) {
        FamilyInfo meta;
        meta.family = rec.at("family").get<std::string>();
        meta.n = rec.value("n", 2);
        if (rec.contains("center")) {
            auto c = rec.at("center");
            for (int i = 0; i < 4; ++i) meta.center[i] = c.at(i).get<double>();
        }
        meta.scale = rec.value("scale", 1.0);
        meta.anti = rec.value("anti", false);
        if (rec.contains("poles")) {
            for (const auto& p : rec.at("poles")) {
                PolePoint pp;
                auto c = p.at("center");
                for (int i = 0; i < 4; ++i) pp.center[i] = c.at(i).get<double>();
                pp.weight = p.at("weight").get<double>();
                meta.poles.push_back(pp);
            }
        }
        out.push_back(potential_from_family(meta));
    }
    return out;
}

void save_fixtures(const std::string& path, const std::vector<FamilyInfo>& families) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& meta : families) {
        nlohmann::ordered_json rec;
        rec["family"] = meta.family;
        rec["n"] = meta.n;
        rec["center"] = {meta.center[0], meta.center[1], meta.center[2], meta.center[3]};
        rec["scale"] = meta.scale;
        rec["anti"] = meta.anti;
        auto poles = nlohmann::ordered_json::array();
        for (const auto& p : meta.poles)
            poles.push_back({{"center", {p.center[0], p.center[1], p.center[2], p.center[3]}},
                             {"weight", p.weight}});
        rec["poles"] = poles;
        doc.push_back(rec);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_fixtures: cannot open " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace sdym
