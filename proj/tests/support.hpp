#pragma once
// Shared fixtures: completed diagrams and superpotentials per preset, random Kahler classes.

#include "ghk/cli.hpp"

#include <map>
#include <random>
#include <string>

namespace ghk::testing {

struct PresetData {
    ToricModel model;
    KahlerClass omega;
    ScatteringDiagram diagram;
    Superpotential W;
};

// computed once per process
inline const PresetData& preset(const std::string& name) {
    static std::map<std::string, PresetData> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    PresetData d;
    d.model = make_model(name);
    d.omega = default_omega(name);
    Rat h = default_spacing(d.model, d.omega);
    ScatteringDiagram d0 = initial_walls(d.model, d.omega, h);
    d.diagram = complete(d0, d0.theta);
    d.W = superpotential(d.model, d.omega, d.diagram, default_basepoints(h)[0], d.diagram.theta);
    return cache.emplace(name, std::move(d)).first->second;
}

// random valid omega near the preset default, small denominators
inline KahlerClass random_omega(const ToricModel& m, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 11);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        KahlerClass w;
        for (int i = 0; i < m.n(); ++i) w.lambdas.push_back(Rat(1) + ratio(num(rng) - 6, 12));
        for (int i = 0; i < m.n(); ++i) {
            std::vector<Rat> cs;
            for (int j = 0; j < m.blowups[static_cast<std::size_t>(i)]; ++j)
                cs.push_back(w.lambdas[static_cast<std::size_t>(i)] * ratio(num(rng), 12));
            w.c.push_back(cs);
        }
        if (validate_omega(m, w).ok()) return w;
    }
    throw std::runtime_error("no valid random omega found");
}

// random toric class with small integer coefficients
inline DivisorClass random_toric(const ToricModel& m, std::mt19937& rng) {
    std::uniform_int_distribution<int> k(-3, 3);
    DivisorClass L = DivisorClass::zero(m);
    for (int i = 0; i < m.n(); ++i) L = L + DivisorClass::total(m, i) * Rat(k(rng));
    return L;
}

}  // namespace ghk::testing
