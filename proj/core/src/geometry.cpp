// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include "sac/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace sac {

std::string to_string(GeometryKind kind)
{
    switch (kind) {
    case GeometryKind::ula: return "ula";
    case GeometryKind::nested: return "nested";
    case GeometryKind::dilated: return "dilated";
    case GeometryKind::custom: return "custom";
    }
    return "custom";
}

GeometryKind geometry_kind_from_string(const std::string &name)
{
    if (name == "ula") return GeometryKind::ula;
    if (name == "nested") return GeometryKind::nested;
    if (name == "dilated") return GeometryKind::dilated;
    if (name == "custom") return GeometryKind::custom;
    throw std::invalid_argument("unknown geometry kind: " + name);
}

SensorSet make_geometry(GeometryKind kind, int sensors, int dilation)
{
    if (sensors < 2)
        throw std::invalid_argument("geometry needs at least 2 sensors");

    SensorSet set;
    set.label = to_string(kind);
    switch (kind) {
    case GeometryKind::ula:
        for (int i = 0; i < sensors; ++i)
            set.positions.push_back(i);
        break;
    case GeometryKind::nested: {
        if (sensors % 2 != 0)
            throw std::invalid_argument("nested geometry requires even P");
        const int m = sensors / 2;
        if (m < 2)
            throw std::invalid_argument("nested geometry requires P >= 4");
        // U_M followed by (M+1) U_M + M; the union is already sorted
        for (int i = 0; i < m; ++i)
            set.positions.push_back(i);
        for (int i = 0; i < m; ++i)
            set.positions.push_back((m + 1) * i + m);
        break;
    }
    case GeometryKind::dilated:
        if (dilation < 1)
            throw std::invalid_argument("dilation must be >= 1");
        for (int i = 0; i < sensors; ++i)
            set.positions.push_back(dilation * i);
        break;
    case GeometryKind::custom:
        throw std::invalid_argument("custom geometries are built from JSON, not make_geometry");
    }
    return set;
}

std::vector<cd> steering_vector(const SensorSet &geometry, double sin_theta)
{
    std::vector<cd> a;
    a.reserve(geometry.positions.size());
    for (int d : geometry.positions)
        a.push_back(std::polar(1.0, std::numbers::pi * d * sin_theta));
    return a;
}

Measurement synthesize(const SourceScene &scene, const SensorSet &geometry, Rng &rng)
{
    if (scene.alpha <= 0.0)
        throw std::invalid_argument("source amplitude must be positive");
    if (scene.epsilon < 0.0)
        throw std::invalid_argument("noise bound must be nonnegative");

    const int sensors = geometry.size();
    const double scale = scene.epsilon / std::sqrt(2.0 * sensors);

    Measurement meas;
    meas.geometry = geometry;
    meas.epsilon = scene.epsilon;
    meas.truth = scene;
    meas.y = steering_vector(geometry, scene.sin_theta);
    for (auto &yi : meas.y) {
        const double re = scale * rng.uniform_sym();
        const double im = scale * rng.uniform_sym();
        yi = scene.alpha * yi + cd(re, im);
    }
    return meas;
}

std::string SensorSet::to_json() const
{
    nlohmann::json j;
    j["label"] = label;
    j["positions"] = positions;
    return j.dump();
}

SensorSet SensorSet::from_json(const std::string &text)
{
    const auto j = nlohmann::json::parse(text);
    SensorSet set;
    set.label = j.at("label").get<std::string>();
    set.positions = j.at("positions").get<std::vector<int>>();
    if (set.positions.size() < 2)
        throw std::invalid_argument("geometry needs at least 2 sensors");
    if (set.positions.front() != 0)
        throw std::invalid_argument("first sensor position must be 0");
    for (std::size_t i = 1; i < set.positions.size(); ++i)
        if (set.positions[i] <= set.positions[i - 1])
            throw std::invalid_argument("sensor positions must be strictly increasing");
    return set;
}

} // namespace sac
